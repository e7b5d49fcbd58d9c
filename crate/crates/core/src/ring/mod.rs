//! Exact arithmetic in `Z[p^±1, t^±1]` and its fraction field.

mod gcd;
mod laurent;
mod linsolve;
mod qcomb;
mod rational;

use std::fmt::{Debug, Display};

pub use gcd::poly_gcd;
pub use laurent::{LaurentPoly, Term};
pub use linsolve::{
    invert_matrix, solve_linear, solve_linear_with, LinearSolution, Matrix, PivotOrder,
};
pub use qcomb::{gauss_gamma, p_pochhammer, qbinom, qfactorial, qint, qpochhammer};
pub use rational::RationalFn;

/// Coefficient ring for tensors and operators.
pub trait Coeff: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_laurent(x: &LaurentPoly) -> Self;
    fn to_json(&self) -> serde_json::Value;
}

impl Coeff for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_laurent(x: &LaurentPoly) -> Self {
        x.clone()
    }
    fn to_json(&self) -> serde_json::Value {
        LaurentPoly::to_json(self)
    }
}

impl Coeff for RationalFn {
    fn zero() -> Self {
        RationalFn::zero()
    }
    fn one() -> Self {
        RationalFn::one()
    }
    fn is_zero(&self) -> bool {
        RationalFn::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_laurent(x: &LaurentPoly) -> Self {
        RationalFn::from(x)
    }
    /// `{"num": ..., "den": ...}`, or the bare numerator when the
    /// denominator is 1.
    fn to_json(&self) -> serde_json::Value {
        if self.is_laurent() {
            self.numerator().to_json()
        } else {
            serde_json::json!({ "num": self.numerator().to_json(), "den": self.denominator().to_json() })
        }
    }
}
