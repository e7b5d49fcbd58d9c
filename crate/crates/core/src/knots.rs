//! Knot invariants from the enhanced R-matrix `ρ`: braid words, the
//! enhancement `μ`, open-strand Markov traces and Alexander normalization.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lambda::{all_tuples, basis_to_string, Basis, Lambda, Operator, Pipeline, Tensor};
use crate::ring::{solve_linear_with, LaurentPoly, LinearSolution, PivotOrder, RationalFn};
use crate::rmatrix::{rho_inverse, rho_operator_form};

pub const DEFAULT_BUDGET: u128 = 1 << 20;

/// A braid word on `strands` strands; letter `i` is `σ_i`, `-i` is `σ_i^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidBraid(
                "a braid needs at least one strand".into(),
            ));
        }
        if let Some(&bad) = letters
            .iter()
            .find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands)
        {
            return Err(Error::InvalidBraid(format!(
                "letter {bad} is out of range for {strands} strands"
            )));
        }
        Ok(Self { strands, letters })
    }

    /// Parses a comma separated list such as `"1,-2,1"`.
    pub fn parse(strands: usize, word: &str) -> Result<Self> {
        let word = word.trim();
        let letters = if word.is_empty() {
            Vec::new()
        } else {
            word.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<i32>()
                        .map_err(|_| Error::InvalidBraid(format!("bad letter {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn positive(&self) -> usize {
        self.letters.iter().filter(|&&l| l > 0).count()
    }

    pub fn negative(&self) -> usize {
        self.letters.len() - self.positive()
    }

    pub fn writhe(&self) -> i64 {
        self.positive() as i64 - self.negative() as i64
    }

    /// Number of components of the closure.
    pub fn components(&self) -> usize {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            perm.swap(i - 1, i);
        }
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
        cycles
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        write!(f, "[{}] on {} strands", letters.join(","), self.strands)
    }
}

/// Diagonal `μ` with `μ_∅ = 1` and the stabilization constants `λ_±`.
#[derive(Clone, Debug, PartialEq)]
pub struct Enhancement {
    /// Indexed by subset bitmask.
    pub mu: Vec<RationalFn>,
    pub lambda_plus: RationalFn,
    pub lambda_minus: RationalFn,
}

/// `ptr_{2..n}((id ⊗ μ^{⊗(n-1)}) X)` as a matrix indexed by bitmask.
pub fn twisted_trace(op: &Operator<RationalFn>, mu: &[RationalFn]) -> Vec<Vec<RationalFn>> {
    let size = mu.len();
    let mut out = vec![vec![RationalFn::zero(); size]; size];
    for (input, image) in op.columns() {
        let weight = input[1..]
            .iter()
            .fold(RationalFn::one(), |acc, c| &acc * &mu[c.bits() as usize]);
        for (output, c) in image.iter() {
            if output[1..] == input[1..] {
                let (a, b) = (input[0].bits() as usize, output[0].bits() as usize);
                out[b][a] = &out[b][a] + &(&weight * c);
            }
        }
    }
    out
}

/// The common diagonal value of a scalar matrix.
fn scalar_of(m: &[Vec<RationalFn>]) -> Result<RationalFn> {
    let s = m[0][0].clone();
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let expected = if i == j { &s } else { &RationalFn::zero() };
            if x != expected {
                return Err(Error::NotScalar(format!(
                    "entry ({i}, {j}) is {x}, diagonal is {s}"
                )));
            }
        }
    }
    Ok(s)
}

fn solve_mu(rho: &Operator<RationalFn>, size: usize, order: PivotOrder) -> Result<Vec<RationalFn>> {
    // unknowns: μ_c for c = 1..size (bitmask), then λ_+; μ_0 = 1
    let unknowns = size;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let subsets: Vec<_> = all_tuples(rho.dim(), 1).into_iter().map(|b| b[0]).collect();
    for &a in &subsets {
        for &b in &subsets {
            let mut row = vec![RationalFn::zero(); unknowns];
            let mut constant = RationalFn::zero();
            for &c in &subsets {
                let x = rho.entry(&[a, c], &[b, c]);
                match c.bits() as usize {
                    0 => constant = &constant - &x,
                    k => row[k - 1] = &row[k - 1] + &x,
                }
            }
            if a == b {
                row[unknowns - 1] = RationalFn::from(LaurentPoly::constant(-1));
            }
            rows.push(row);
            rhs.push(constant);
        }
    }
    match solve_linear_with(&rows, &rhs, order)? {
        LinearSolution::Inconsistent => Err(Error::NoEnhancement),
        LinearSolution::Consistent { nullspace, .. } if !nullspace.is_empty() => {
            Err(Error::NonUniqueEnhancement(nullspace.len()))
        }
        LinearSolution::Consistent { particular, .. } => Ok(particular),
    }
}

/// Solves `ptr_2((id ⊗ μ) ρ) = λ_+ id` for diagonal `μ` with `μ_∅ = 1`,
/// along two pivot orders that must agree, then derives `λ_-` from `ρ^{-1}`
/// and checks that `μ ⊗ μ` commutes with `ρ`.
pub fn solve_enhancement(lambda: &Lambda) -> Result<Enhancement> {
    if lambda.dim() > 3 {
        return Err(Error::InvalidDimension(lambda.dim()));
    }
    let size = lambda.total_dim();
    let rho = rho_operator_form(lambda).map_coeffs(|c| RationalFn::from(c));
    let forward = solve_mu(&rho, size, PivotOrder::Forward)?;
    let reverse = solve_mu(&rho, size, PivotOrder::Reverse)?;
    if forward != reverse {
        return Err(Error::EnhancementCheck(
            "pivot orders give different solutions".into(),
        ));
    }
    let mut mu = vec![RationalFn::one()];
    mu.extend_from_slice(&forward[..size - 1]);
    let lambda_plus = forward[size - 1].clone();

    let inv = rho_inverse(lambda)?;
    let lambda_minus = scalar_of(&twisted_trace(&inv, &mu))
        .map_err(|e| Error::EnhancementCheck(format!("inverse trace: {e}")))?;
    if lambda_plus.is_zero() || lambda_minus.is_zero() {
        return Err(Error::EnhancementCheck(format!(
            "degenerate λ+ = {lambda_plus}, λ- = {lambda_minus}"
        )));
    }
    let mu2 = Operator::from_fn(lambda.dim(), 2, 2, |b| {
        Tensor::term(b, &mu[b[0].bits() as usize] * &mu[b[1].bits() as usize])
    });
    if let Some(m) = mu2.compose(&rho).diff(&rho.compose(&mu2)) {
        return Err(Error::EnhancementCheck(format!(
            "μ ⊗ μ does not commute with ρ on {}",
            basis_to_string(&m.input)
        )));
    }
    Ok(Enhancement {
        mu,
        lambda_plus,
        lambda_minus,
    })
}

/// `ρ`, `ρ^{-1}` and the enhancement for one dimension, computed once.
#[derive(Debug)]
pub struct KnotEngine {
    dim: usize,
    rho: Operator<RationalFn>,
    rho_inv: Operator<RationalFn>,
    enhancement: Enhancement,
}

impl KnotEngine {
    pub fn new(n: usize) -> Result<Self> {
        let lambda = Lambda::new(n)?;
        let enhancement = solve_enhancement(&lambda)?;
        Ok(Self {
            dim: n,
            rho: rho_operator_form(&lambda).map_coeffs(|c| RationalFn::from(c)),
            rho_inv: rho_inverse(&lambda)?,
            enhancement,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn enhancement(&self) -> &Enhancement {
        &self.enhancement
    }

    /// The crossings of `w` composed in word order, with `ρ^{±1}` on strands
    /// `i, i+1`. Fails if `(2^N)^n` basis tuples exceed `budget`.
    pub fn braid_operator(&self, w: &BraidWord, budget: u128) -> Result<Operator<RationalFn>> {
        let needed = 1u128
            .checked_shl((self.dim * w.strands()) as u32)
            .unwrap_or(u128::MAX);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let chain = w.letters().iter().fold(Pipeline::new(), |chain, &l| {
            let op = if l > 0 { &self.rho } else { &self.rho_inv };
            chain.then(op, l.unsigned_abs() as usize - 1)
        });
        Ok(Operator::from_fn(
            self.dim,
            w.strands(),
            w.strands(),
            |b: &Basis| chain.eval(&Tensor::basis(b)),
        ))
    }

    /// Open-strand endomorphism `T` of the closure of `w`, checked to be a
    /// scalar `s`, and the normalized value `s α^{-w} β^{1-n}` where
    /// `α^2 = λ_+ / λ_-` and `β^2 = λ_+ λ_-`. For a knot `w + n - 1` is even,
    /// so this is `s λ_+^{-(w+n-1)/2} λ_-^{(w-n+1)/2}`.
    pub fn invariant(&self, w: &BraidWord, budget: u128) -> Result<KnotInvariant> {
        let components = w.components();
        if components != 1 {
            return Err(Error::NotAKnot(components));
        }
        let op = self.braid_operator(w, budget)?;
        let scalar = scalar_of(&twisted_trace(&op, &self.enhancement.mu))?;
        let e = &self.enhancement;
        let (writhe, n) = (w.writhe(), w.strands() as i64);
        let factor = &powi(&e.lambda_plus, -(writhe + n - 1) / 2)
            * &powi(&e.lambda_minus, (writhe - n + 1) / 2);
        let value = (&scalar * &factor).to_laurent()?;
        Ok(KnotInvariant {
            dim: self.dim,
            scalar,
            value,
        })
    }
}

fn powi(x: &RationalFn, k: i64) -> RationalFn {
    let p = x.pow(k.unsigned_abs() as u32);
    if k < 0 {
        &RationalFn::one() / &p
    } else {
        p
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KnotInvariant {
    pub dim: usize,
    /// Open-strand scalar before framing correction.
    pub scalar: RationalFn,
    pub value: LaurentPoly,
}

pub fn knot_invariant(w: &BraidWord, n: usize) -> Result<KnotInvariant> {
    KnotEngine::new(n)?.invariant(w, DEFAULT_BUDGET)
}

/// Multiplies a one-variable Laurent polynomial in `t` by `±t^k` so that it
/// is palindromic and takes the value 1 at `t = 1`.
pub fn normalize_alexander(raw: &LaurentPoly) -> Result<LaurentPoly> {
    let unsym = || Error::NotSymmetrizable(raw.to_string());
    if raw.is_zero() || raw.depends_on_p() {
        return Err(unsym());
    }
    let (Some((_, lo)), Some((_, hi))) = (raw.min_exponents(), raw.max_exponents()) else {
        return Err(unsym());
    };
    if (lo + hi) % 2 != 0 {
        return Err(unsym());
    }
    let centered = raw.shift(0, -(lo + hi) / 2);
    if centered != centered.invert_t() {
        return Err(unsym());
    }
    let at_one = centered.sum_of_coefficients();
    if at_one.is_zero() {
        return Err(unsym());
    }
    let signed = if at_one.is_negative() {
        -centered
    } else {
        centered
    };
    if !signed.sum_of_coefficients().abs().is_one() {
        return Err(unsym());
    }
    Ok(signed)
}

impl FromStr for BraidWord {
    type Err = Error;

    /// `"<strands>:<letters>"`, e.g. `"2:1,1,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let (n, word) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidBraid(format!("expected strands:letters, got {s:?}")))?;
        let n = n
            .trim()
            .parse()
            .map_err(|_| Error::InvalidBraid(format!("bad strand count {n:?}")))?;
        Self::parse(n, word)
    }
}
