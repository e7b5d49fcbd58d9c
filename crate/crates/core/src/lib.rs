pub mod axioms;
pub mod braiding;
pub mod combin;
pub mod error;
pub mod knots;
pub mod lambda;
pub mod ring;
pub mod rmatrix;

pub use error::{Error, Result};
pub use ring::{LaurentPoly, RationalFn};
