pub mod classgroup;
pub mod error;
pub mod expr;
pub mod factor;
pub mod geometry;
pub mod modulecheck;
pub mod poly;
pub mod susp;
mod upoly;

pub use error::{Error, Result};
pub use factor::{AbsoluteVerdict, FactorConfig, Factorization};
pub use poly::{MultiPoly, Rational, RingSpec};
pub use susp::{SuspElem, SuspFactorization, SuspTower};
