fn main() {
    std::process::exit(apolar::cli::run(std::env::args_os()));
}
