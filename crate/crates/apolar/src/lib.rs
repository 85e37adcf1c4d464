pub mod exact_linalg;
pub mod poly;
pub mod poly_rank;
pub mod rep_tensor;
pub mod apolarity_engine;
pub mod mamu_bounds;
pub mod checks;
pub mod cli;
