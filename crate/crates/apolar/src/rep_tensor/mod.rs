//! Weighted tensor spaces, the target tensors, Borel-fixed enumeration and
//! the skew and multiplication maps built on them.

pub mod maps;
pub mod module;
pub mod space;
pub mod tensors;

pub use module::{enumerate_borel_fixed, BorelFixedFamily, ModuleError, WeightModule};
pub use space::{FactorSpace, RaisingOp, SpaceExpr, TensorSpace, TorusBlock};
pub use tensors::{det3_tensor, mamu_tensor, Factor, TensorElement};
