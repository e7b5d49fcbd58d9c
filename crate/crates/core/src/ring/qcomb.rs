//! q-deformed special functions in the base `p`.

use crate::error::{Error, Result};

use super::laurent::LaurentPoly;

/// `(x; p)_n = (1 - x)(1 - x p) ... (1 - x p^(n-1))`.
pub fn qpochhammer(x: &LaurentPoly, n: usize) -> LaurentPoly {
    (0..n)
        .map(|i| &LaurentPoly::one() - &x.shift(i as i32, 0))
        .product()
}

/// `(p; p)_n`, written `(p)_n`.
pub fn p_pochhammer(n: usize) -> LaurentPoly {
    qpochhammer(&LaurentPoly::p(), n)
}

/// `[n]_p = 1 + p + ... + p^(n-1)`.
pub fn qint(n: usize) -> LaurentPoly {
    LaurentPoly::from_terms((0..n as i32).map(|i| (1, i, 0)))
}

/// `[n]_p! = [1]_p [2]_p ... [n]_p`.
pub fn qfactorial(n: usize) -> LaurentPoly {
    (1..=n).map(qint).product()
}

/// Gaussian binomial, obtained from `(p)_n / ((p)_k (p)_(n-k))` by exact
/// division.
pub fn qbinom(n: usize, k: usize) -> Result<LaurentPoly> {
    if k > n {
        return Err(Error::InvalidBinomial { n, k });
    }
    let den = &p_pochhammer(k) * &p_pochhammer(n - k);
    p_pochhammer(n).exact_divide(&den)
}

/// `gamma_k = (-1)^k p^(k(k-1)/2)`.
pub fn gauss_gamma(k: usize) -> LaurentPoly {
    let sign = if k % 2 == 0 { 1 } else { -1 };
    LaurentPoly::monomial(sign, (k * k.saturating_sub(1) / 2) as i32, 0)
}
