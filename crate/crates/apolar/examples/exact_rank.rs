//! Exact rank, kernel and annihilator over the rationals, including the
//! column-block split the engine uses on skew maps.
//!
//!     cargo run --release --example exact_rank

use apolar::exact_linalg::{rank_by_blocks, SparseMatrix, Subspace};
use apolar::rep_tensor::maps::{skew_kernel, Side};

fn main() {
    // rank 2: the third row is the sum of the first two
    let m = SparseMatrix::from_dense(&[vec![1, 2, 0, 3], vec![0, 1, 1, -1], vec![1, 3, 1, 2]]);
    println!("{}x{} matrix of rank {}", m.nrows(), m.ncols(), m.rank());
    let ker = m.kernel_basis();
    println!("kernel dim {}:", ker.dim());
    for v in ker.basis() {
        let shown: Vec<String> = v.iter().map(|(i, x)| format!("e{i}*{x}")).collect();
        println!("  {}", shown.join(" + "));
    }
    let row_space = Subspace::span(4, m.rows().to_vec());
    let ann = row_space.annihilator();
    println!("row space dim {}, annihilator dim {}", row_space.dim(), ann.dim());
    println!("blockwise rank {}", rank_by_blocks(m.rows()));

    // a single rank-one element of A⊗B with dim A = dim B = 2
    let e = vec![vec![(0, apolar::exact_linalg::rat(1))]];
    for side in [Side::S210, Side::S120] {
        println!("skew kernel {} of a⊗b: {}", side.name(), skew_kernel(2, 2, &e, side));
    }
}
