//! Command-line front end. Results go to stdout or `--out`, chatter to
//! stderr.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::apolarity_engine::{certify, generate_110_candidates, Certificate, Conclusion, Problem, TensorId};
use crate::checks::{run_all, CheckConfig};
use crate::mamu_bounds::{bound_at, lickteig_shift, search_bound, theorem_bound, Family};

/// Worker-count override read when `--workers` is absent.
pub const WORKERS_ENV: &str = "APOLAR_WORKERS";

pub const EXIT_EXCEEDS: i32 = 0;
pub const EXIT_SURVIVORS: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "apolar", version, about = "Border apolarity certificates and matrix multiplication bounds")]
pub struct Cli {
    /// Worker threads (default: $APOLAR_WORKERS, then all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether border rank exceeds r.
    Certify {
        /// `mamu:l,m,n` or `det3`.
        #[arg(long)]
        tensor: TensorId,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 3)]
        degree_cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for ideals of unresolved branches.
        #[arg(long)]
        ideals: Option<PathBuf>,
    },
    /// Lower bounds for `M⟨2,n,n⟩` or `M⟨3,n,n⟩`.
    Bounds {
        #[arg(long)]
        family: Family,
        /// Inclusive range `lo..hi` or a single `n`.
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        /// Lift to `M⟨m,n,n⟩` with one per extra row.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value_t = Method::Tableau)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the Borel-fixed (110) candidate families.
    Candidates {
        #[arg(long)]
        tensor: TensorId,
        #[arg(long)]
        rank: usize,
    },
    /// Run the reproduction suite.
    CheckPaper {
        /// Subset of check ids.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<u8>>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Exhaustive grid-tableau search.
    Tableau,
    /// Closed-form ladder over the contribution terms.
    ClosedForm,
    /// Stated values.
    Theorem,
}

pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: usize = lo.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let hi: usize = hi.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

/// One line of the bounds table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundLine {
    pub n: usize,
    pub family: String,
    pub bound: usize,
    /// Border ranks `lo..=hi` refuted on the way.
    pub refuted: Option<(usize, usize)>,
}

pub fn bound_lines(family: Family, ns: RangeInclusive<usize>, m: Option<usize>, method: Method) -> Result<Vec<BoundLine>, String> {
    let table = family.table();
    let mut out = Vec::new();
    for n in ns {
        let (bound, refuted) = match method {
            Method::Tableau => {
                let row = search_bound(n, &table);
                (row.bound, Some(row.refuted))
            }
            Method::ClosedForm => (bound_at(n, family), None),
            Method::Theorem => (theorem_bound(n, family).ok_or_else(|| format!("no stated value for n={n}"))?, None),
        };
        let (bound, name) = match m {
            Some(m) if m != family.m() => {
                let b = lickteig_shift(bound, family.m(), m).map_err(|e| e.to_string())?;
                (b, format!("{m}nn"))
            }
            _ => (bound, family.to_string()),
        };
        out.push(BoundLine { n, family: name, bound, refuted });
    }
    Ok(out)
}

pub fn render_tsv(lines: &[BoundLine]) -> String {
    let mut s = String::from("n\tfamily\tbound\trefuted\n");
    for l in lines {
        let refuted = l.refuted.map(|(a, b)| format!("{a}..{b}")).unwrap_or_else(|| "-".into());
        let _ = writeln!(s, "{}\t{}\t{}\t{}", l.n, l.family, l.bound, refuted);
    }
    s
}

/// Text view of a certificate, produced from its JSON form.
pub fn render_text(cert: &Certificate) -> String {
    let json = serde_json::to_value(cert).expect("certificate serializes");
    let mut s = String::new();
    let _ = writeln!(s, "tensor {} r={} cap={} arrangement {}", json["tensor"].as_str().unwrap_or("?"), json["r"], json["degree_cap"], json["arrangement"]);
    for st in json["stages"].as_array().into_iter().flatten() {
        let _ = writeln!(
            s,
            "stage {}: {} candidates, {} passed, {} undecided",
            st["grading"].as_str().unwrap_or("?"),
            st["candidates"],
            st["passed"],
            st["undecided"]
        );
        for d in st["details"].as_array().into_iter().flatten() {
            let tests: Vec<String> = d["tests"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|t| format!("{} ker={} need {} {}", t["test"].as_str().unwrap_or("?"), t.get("kernel").map_or("?".into(), |k| k.to_string()), t["threshold"], t["outcome"].as_str().unwrap_or("?")))
                .collect();
            let _ = writeln!(s, "  #{} params={} {}", d["index"], d["params"], tests.join(", "));
        }
    }
    let t = &json["triples"];
    let _ = writeln!(s, "triples: {} total, {} up to symmetry, {} pass", t["total"], t["mod_symmetry"], t["passed"]);
    let _ = writeln!(s, "conclusion: {}", json["conclusion"].as_str().unwrap_or("?"));
    let _ = writeln!(s, "hash: {}", cert.hash);
    s
}

fn emit(out: Option<&Path>, body: &str) -> std::io::Result<()> {
    match out {
        Some(p) => fs::write(p, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    }
}

fn exit_code(c: Conclusion) -> i32 {
    match c {
        Conclusion::BorderRankExceedsR => EXIT_EXCEEDS,
        Conclusion::SurvivorsRemain => EXIT_SURVIVORS,
        Conclusion::UndecidedBranches => EXIT_UNDECIDED,
    }
}

fn export_ideals(cert: &Certificate, dir: &Path) -> std::io::Result<usize> {
    fs::create_dir_all(dir)?;
    let mut count = 0;
    for (si, st) in cert.stages.iter().enumerate() {
        for d in &st.details {
            for t in &d.tests {
                for locus in t.loci.iter().filter_map(|l| l.strip_prefix("unresolved\n")) {
                    fs::write(dir.join(format!("stage{si}-cand{}-{count}.ideal", d.index)), locus)?;
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

fn configure_workers(flag: Option<usize>) {
    let n = flag.or_else(|| std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse().ok()));
    if let Some(n) = n.filter(|&n| n > 0) {
        // fails only if a pool exists already, which keeps the earlier size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Parses `args` and runs; returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    configure_workers(cli.workers);
    match execute(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn execute(cmd: Command) -> Result<i32, String> {
    match cmd {
        Command::Certify { tensor, rank, degree_cap, format, out, ideals } => {
            let problem = Problem::new(tensor);
            eprintln!("certifying {tensor} at r={rank}");
            let cert = certify(&problem, rank, degree_cap).map_err(|e| e.to_string())?;
            let body = match format {
                Format::Json => serde_json::to_string_pretty(&cert).map_err(|e| e.to_string())? + "\n",
                Format::Text => render_text(&cert),
                Format::Tsv => return Err("certificates come as json or text".into()),
            };
            emit(out.as_deref(), &body).map_err(|e| e.to_string())?;
            if cert.conclusion == Conclusion::UndecidedBranches {
                let dir = ideals.unwrap_or_else(|| PathBuf::from("ideals"));
                let k = export_ideals(&cert, &dir).map_err(|e| e.to_string())?;
                eprintln!("wrote {k} unresolved ideal(s) to {}", dir.display());
            }
            eprintln!("conclusion: {:?}", cert.conclusion);
            Ok(exit_code(cert.conclusion))
        }
        Command::Bounds { family, n, m, method, format, out } => {
            let lines = bound_lines(family, n, m, method)?;
            let body = match format {
                Format::Tsv | Format::Text => render_tsv(&lines),
                Format::Json => serde_json::to_string_pretty(&lines).map_err(|e| e.to_string())? + "\n",
            };
            emit(out.as_deref(), &body).map_err(|e| e.to_string())?;
            Ok(0)
        }
        Command::Candidates { tensor, rank } => {
            let problem = Problem::new(tensor);
            let (families, _) = generate_110_candidates(&problem, rank);
            let mut body = String::new();
            for (i, f) in families.iter().enumerate() {
                let _ = writeln!(body, "{}", serde_json::json!({"index": i, "params": f.params.len(), "dim": f.dim, "dims": f.dims}));
            }
            emit(None, &body).map_err(|e| e.to_string())?;
            eprintln!("{} families", families.len());
            Ok(0)
        }
        Command::CheckPaper { only, format } => {
            let results = run_all(&CheckConfig::default(), only.as_deref());
            let body = match format {
                Format::Json => serde_json::to_string_pretty(&results).map_err(|e| e.to_string())? + "\n",
                _ => results
                    .iter()
                    .map(|r| format!("{} {:>2} {:<34} {:>8}ms  {}\n", if r.passed { "PASS" } else { "FAIL" }, r.id, r.name, r.millis, r.detail))
                    .collect(),
            };
            emit(None, &body).map_err(|e| e.to_string())?;
            Ok(if results.iter().all(|r| r.passed) { 0 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4..10"), Ok(4..=10));
        assert_eq!(parse_range("4..=10"), Ok(4..=10));
        assert_eq!(parse_range("7"), Ok(7..=7));
        assert!(parse_range("9..3").is_err());
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(["apolar", "certify", "--tensor", "cube", "--rank", "3"]), EXIT_USAGE);
        assert_eq!(run(["apolar", "bounds"]), EXIT_USAGE);
    }

    #[test]
    fn small_two_nn_prefix() {
        let lines = bound_lines(Family::TwoNN, 4..=7, None, Method::Tableau).unwrap();
        let b: Vec<usize> = lines.iter().map(|l| l.bound).collect();
        assert_eq!(b, vec![22, 32, 44, 58]);
        assert!(render_tsv(&lines).starts_with("n\tfamily\tbound\trefuted\n4\t2nn\t22\t16..21\n"));
    }

    #[test]
    fn shift_adds_one_per_row() {
        let base = bound_lines(Family::TwoNN, 5..=5, None, Method::Theorem).unwrap();
        let lifted = bound_lines(Family::TwoNN, 5..=5, Some(3), Method::Theorem).unwrap();
        assert_eq!(lifted[0].bound, base[0].bound + 1);
        assert_eq!(lifted[0].family, "3nn");
    }
}
