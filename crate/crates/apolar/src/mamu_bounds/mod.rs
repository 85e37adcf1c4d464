//! Kernel contributions on the grid, tableau search and closed-form bounds
//! for `M⟨m,n,n⟩`.

pub mod closed_form;
pub mod contributions;
pub mod hook;
pub mod partitions;
pub mod tableau;

pub use closed_form::*;
pub use contributions::*;
pub use hook::*;
pub use partitions::*;
pub use tableau::*;
