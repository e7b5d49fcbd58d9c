//! Polynomial GCD in `Z[p, t]`, viewed as `Z[t][p]`, by subresultant
//! pseudo-remainder sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::laurent::LaurentPoly;

trait Domain: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Normalized gcd (positive leading coefficient).
    fn gcd(&self, rhs: &Self) -> Self;
    /// Exact quotient; callers guarantee divisibility.
    fn div_exact(&self, rhs: &Self) -> Self;
    fn lead_negative(&self) -> bool;
}

impl Domain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
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
    fn gcd(&self, rhs: &Self) -> Self {
        Integer::gcd(self, rhs)
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % rhs)));
        self / rhs
    }
    fn lead_negative(&self) -> bool {
        self.is_negative()
    }
}

/// Dense univariate polynomial, index = degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
struct Poly<D>(Vec<D>);

impl<D: Domain> Poly<D> {
    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(Domain::is_zero) {
            self.0.pop();
        }
        self
    }

    fn lead(&self) -> &D {
        self.0.last().expect("nonzero polynomial")
    }

    fn scale(&self, c: &D) -> Self {
        Poly(self.0.iter().map(|x| x.mul(c)).collect()).trim()
    }

    /// `self - c * x^shift * rhs`
    fn sub_shifted(&self, rhs: &Self, c: &D, shift: usize) -> Self {
        let mut out = self.0.clone();
        if out.len() < rhs.0.len() + shift {
            out.resize(rhs.0.len() + shift, D::zero());
        }
        for (i, b) in rhs.0.iter().enumerate() {
            out[i + shift] = out[i + shift].sub(&b.mul(c));
        }
        Poly(out).trim()
    }

    fn content(&self) -> D {
        let mut it = self.0.iter();
        let first = it.next().expect("nonzero polynomial").clone();
        let g = it.fold(first, |g, x| g.gcd(x));
        // gcd of a single element is itself, which may carry a sign
        if g.lead_negative() {
            g.neg()
        } else {
            g
        }
    }

    fn primitive(&self) -> Self {
        let c = self.content();
        Poly(self.0.iter().map(|x| x.div_exact(&c)).collect())
    }

    /// `lc(b)^(deg a - deg b + 1) a mod b`.
    fn pseudo_rem(&self, b: &Self) -> Self {
        let lc = b.lead().clone();
        let mut r = self.clone();
        let mut steps = self.0.len() + 1 - b.0.len();
        while !r.0.is_empty() && r.0.len() >= b.0.len() {
            let shift = r.0.len() - b.0.len();
            let lr = r.lead().clone();
            r = r.scale(&lc).sub_shifted(b, &lr, shift);
            steps -= 1;
        }
        r.scale(&pow(&lc, steps))
    }

    fn normalized(self) -> Self {
        if !self.0.is_empty() && self.lead().lead_negative() {
            self.neg()
        } else {
            self
        }
    }
}

impl<D: Domain> Domain for Poly<D> {
    fn zero() -> Self {
        Poly(Vec::new())
    }
    fn one() -> Self {
        Poly(vec![D::one()])
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn sub(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let out = (0..n)
            .map(|i| match (self.0.get(i), rhs.0.get(i)) {
                (Some(a), Some(b)) => a.sub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly(out).trim()
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.0.is_empty() || rhs.0.is_empty() {
            return Self::zero();
        }
        let mut out = vec![D::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = out[i + j].sub(&a.mul(b).neg());
            }
        }
        Poly(out).trim()
    }
    fn neg(&self) -> Self {
        Poly(self.0.iter().map(Domain::neg).collect())
    }
    fn gcd(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone().normalized();
        }
        if rhs.is_zero() {
            return self.clone().normalized();
        }
        let g = self.content().gcd(&rhs.content());
        let (mut a, mut b) = (self.primitive(), rhs.primitive());
        if a.0.len() < b.0.len() {
            std::mem::swap(&mut a, &mut b);
        }
        let (mut lead, mut h) = (D::one(), D::one());
        loop {
            let delta = a.0.len() - b.0.len();
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                break;
            }
            if r.0.len() == 1 {
                b = Self::one();
                break;
            }
            a = b;
            let divisor = lead.mul(&pow(&h, delta));
            b = Poly(r.0.iter().map(|x| x.div_exact(&divisor)).collect());
            lead = a.lead().clone();
            if delta > 0 {
                h = pow(&lead, delta).div_exact(&pow(&h, delta - 1));
            }
        }
        b.primitive().scale(&g).normalized()
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        let mut rem = self.clone();
        let mut q = vec![D::zero(); self.0.len().saturating_sub(rhs.0.len()) + 1];
        while !rem.is_zero() {
            assert!(rem.0.len() >= rhs.0.len(), "inexact polynomial division");
            let shift = rem.0.len() - rhs.0.len();
            let c = rem.lead().div_exact(rhs.lead());
            rem = rem.sub_shifted(rhs, &c, shift);
            q[shift] = c;
        }
        Poly(q).trim()
    }
    fn lead_negative(&self) -> bool {
        !self.0.is_empty() && self.lead().lead_negative()
    }
}

fn pow<D: Domain>(x: &D, e: usize) -> D {
    (0..e).fold(D::one(), |acc, _| acc.mul(x))
}

type Bivariate = Poly<Poly<BigInt>>;

fn to_bivariate(x: &LaurentPoly) -> Bivariate {
    let (mp, mt) = x.min_exponents().expect("nonzero");
    let (xp, xt) = x.max_exponents().expect("nonzero");
    let mut rows =
        vec![vec![<BigInt as Zero>::zero(); (xt - mt + 1) as usize]; (xp - mp + 1) as usize];
    for term in x.terms() {
        rows[(term.p - mp) as usize][(term.t - mt) as usize] = term.coeff.clone();
    }
    Poly(rows.into_iter().map(|r| Poly(r).trim()).collect()).trim()
}

fn from_bivariate(x: &Bivariate) -> LaurentPoly {
    LaurentPoly::from_terms(x.0.iter().enumerate().flat_map(|(i, row)| {
        row.0
            .iter()
            .enumerate()
            .map(move |(j, c)| (c.clone(), i as i32, j as i32))
    }))
}

/// GCD of the polynomial parts of `a` and `b` (monomial factors removed),
/// with zero minimal exponents and positive leading coefficient.
/// `gcd(0, 0)` is zero.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => LaurentPoly::zero(),
        (true, false) => from_bivariate(&to_bivariate(b).normalized()),
        (false, true) => from_bivariate(&to_bivariate(a).normalized()),
        (false, false) => {
            if a.is_unit() || b.is_unit() {
                return LaurentPoly::one();
            }
            from_bivariate(&to_bivariate(a).gcd(&to_bivariate(b)))
        }
    }
}

/// True when the leading term (canonical order) has a negative coefficient.
pub fn leading_negative(x: &LaurentPoly) -> bool {
    x.leading().is_some_and(|t| t.coeff.is_negative())
}
