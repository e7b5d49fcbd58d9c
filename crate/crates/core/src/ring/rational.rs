use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

use super::gcd::{leading_negative, poly_gcd};
use super::laurent::LaurentPoly;

/// Quotient of two Laurent polynomials in lowest terms.
///
/// The denominator has no monomial factor, zero minimal exponents and a
/// positive leading coefficient, so equal fractions have equal fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn zero() -> Self {
        Self::from(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from(LaurentPoly::one())
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self {
                num,
                den: LaurentPoly::one(),
            };
        }
        let (mut num, mut den) = if den.as_monomial().is_some() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.exact_divide(&g).expect("gcd divides numerator"),
                    den.exact_divide(&g).expect("gcd divides denominator"),
                )
            }
        };
        if let Some((c, p, t)) = den.as_monomial() {
            // a monomial denominator only survives as an integer
            let c = c.clone();
            num = num.shift(-p, -t);
            let g = num_integer::Integer::gcd(&num.content(), &c);
            let sign = if num_traits::Signed::is_negative(&c) {
                -1
            } else {
                1
            };
            num = num
                .exact_divide(&LaurentPoly::constant(&g * sign))
                .expect("content divides");
            den = LaurentPoly::constant(&c / (&g * sign));
            return Self { num, den };
        }
        let (mp, mt) = den.min_exponents().expect("nonzero");
        num = num.shift(-mp, -mt);
        den = den.shift(-mp, -mt);
        if leading_negative(&den) {
            num = -num;
            den = -den;
        }
        Self { num, den }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// The Laurent polynomial this fraction equals, if any.
    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        if self.den.is_one() {
            Ok(self.num.clone())
        } else {
            Err(Error::NotLaurent(self.to_string()))
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, e: u32) -> Self {
        Self {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Result<Self> {
        Self::new(f(&self.num), f(&self.den))
    }
}

impl From<LaurentPoly> for RationalFn {
    fn from(num: LaurentPoly) -> Self {
        Self {
            num,
            den: LaurentPoly::one(),
        }
    }
}

impl From<&LaurentPoly> for RationalFn {
    fn from(num: &LaurentPoly) -> Self {
        Self::from(num.clone())
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.den == rhs.den {
            if self.den.is_one() {
                return RationalFn::from(&self.num + &rhs.num);
            }
            return RationalFn::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RationalFn::reduce(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Mul<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFn::from(&self.num * &rhs.num);
        }
        RationalFn::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    /// Panics on division by zero; see [`RationalFn::checked_div`].
    fn div(self, rhs: &RationalFn) -> RationalFn {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -self.num,
            den: self.den,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<RationalFn> for RationalFn {
            type Output = RationalFn;
            fn $method(self, rhs: RationalFn) -> RationalFn {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RationalFn> for RationalFn {
            type Output = RationalFn;
            fn $method(self, rhs: &RationalFn) -> RationalFn {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);
