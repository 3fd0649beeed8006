pub mod algebra;
pub mod auto;
pub mod chevalley;
pub mod cns;
mod error;
pub mod expauto;
pub mod extract;
pub mod extremal;
pub mod grading;
pub mod json;
pub mod qa;
pub mod report;
pub mod roots;
mod util;

pub use algebra::{Closure, LieAlgebra, LieCheck};
pub use error::{ExlieError, Result};
pub use report::{Check, Report, Sampling};
pub use roots::{CartanType, RootSystem};
