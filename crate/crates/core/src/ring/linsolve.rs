//! Exact Gaussian elimination over the fraction field `Q(p, t)`.

use crate::error::{Error, Result};

use super::rational::RationalFn;

pub type Matrix = Vec<Vec<RationalFn>>;

/// Order in which columns are scanned for pivots. Rows are always scanned
/// top to bottom and the first nonzero entry wins.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotOrder {
    #[default]
    Forward,
    Reverse,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Consistent {
        particular: Vec<RationalFn>,
        nullspace: Vec<Vec<RationalFn>>,
    },
    Inconsistent,
}

impl LinearSolution {
    pub fn is_unique(&self) -> bool {
        matches!(self, Self::Consistent { nullspace, .. } if nullspace.is_empty())
    }
}

fn check_shape(a: &[Vec<RationalFn>], rows: usize) -> Result<usize> {
    if a.len() != rows {
        return Err(Error::DimensionMismatch(format!(
            "{} rows but rhs of length {}",
            a.len(),
            rows
        )));
    }
    let cols = a.first().map_or(0, Vec::len);
    if let Some(bad) = a.iter().position(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch(format!(
            "row {bad} has length {}, expected {cols}",
            a[bad].len()
        )));
    }
    Ok(cols)
}

/// Reduces `[a | b]` in place; returns the pivot column of each pivot row.
fn row_reduce(
    a: &mut [Vec<RationalFn>],
    b: &mut [Vec<RationalFn>],
    order: PivotOrder,
) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let columns: Vec<usize> = match order {
        PivotOrder::Forward => (0..cols).collect(),
        PivotOrder::Reverse => (0..cols).rev().collect(),
    };
    let mut pivots = Vec::new();
    for c in columns {
        let rank = pivots.len();
        if rank == rows {
            break;
        }
        let Some(r) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, r);
        b.swap(rank, r);
        let inv = a[rank][c].inv().expect("nonzero pivot");
        for x in a[rank].iter_mut().chain(b[rank].iter_mut()) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for r2 in 0..rows {
            if r2 == rank || a[r2][c].is_zero() {
                continue;
            }
            let factor = a[r2][c].clone();
            for j in 0..cols {
                if !a[rank][j].is_zero() {
                    let d = &factor * &a[rank][j];
                    a[r2][j] = &a[r2][j] - &d;
                }
            }
            for j in 0..b[rank].len() {
                if !b[rank][j].is_zero() {
                    let d = &factor * &b[rank][j];
                    b[r2][j] = &b[r2][j] - &d;
                }
            }
        }
        pivots.push(c);
    }
    pivots
}

/// Solves `a x = b`.
pub fn solve_linear(a: &[Vec<RationalFn>], b: &[RationalFn]) -> Result<LinearSolution> {
    solve_linear_with(a, b, PivotOrder::Forward)
}

pub fn solve_linear_with(
    a: &[Vec<RationalFn>],
    b: &[RationalFn],
    order: PivotOrder,
) -> Result<LinearSolution> {
    let cols = check_shape(a, b.len())?;
    let mut m: Matrix = a.to_vec();
    let mut rhs: Matrix = b.iter().map(|x| vec![x.clone()]).collect();
    let pivots = row_reduce(&mut m, &mut rhs, order);
    if rhs[pivots.len()..].iter().any(|r| !r[0].is_zero()) {
        return Ok(LinearSolution::Inconsistent);
    }
    let mut particular = vec![RationalFn::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = rhs[i][0].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&f| {
            let mut v = vec![RationalFn::zero(); cols];
            v[f] = RationalFn::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -&m[i][f];
            }
            v
        })
        .collect();
    Ok(LinearSolution::Consistent {
        particular,
        nullspace,
    })
}

/// Two-sided inverse of a square matrix.
pub fn invert_matrix(a: &[Vec<RationalFn>]) -> Result<Matrix> {
    let n = a.len();
    check_shape(a, n)?;
    if a.first().is_some_and(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {n}x{} and not square",
            a[0].len()
        )));
    }
    let mut m: Matrix = a.to_vec();
    let mut inv: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        RationalFn::one()
                    } else {
                        RationalFn::zero()
                    }
                })
                .collect()
        })
        .collect();
    let pivots = row_reduce(&mut m, &mut inv, PivotOrder::Forward);
    if pivots.len() < n {
        return Err(Error::Singular(format!(
            "{n}x{n} matrix of rank {}",
            pivots.len()
        )));
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::LaurentPoly;

    fn r(s: &str) -> RationalFn {
        RationalFn::from(s.parse::<LaurentPoly>().unwrap())
    }

    #[test]
    fn identity_system() {
        let a = vec![vec![r("1"), r("0")], vec![r("0"), r("1")]];
        let b = vec![r("t"), r("1 - p")];
        let sol = solve_linear(&a, &b).unwrap();
        assert_eq!(
            sol,
            LinearSolution::Consistent {
                particular: b,
                nullspace: vec![]
            }
        );
    }

    #[test]
    fn scalar_division() {
        let sol = solve_linear(&[vec![r("1 - p")]], &[r("1 - p^2")]).unwrap();
        let LinearSolution::Consistent { particular, .. } = sol else {
            panic!()
        };
        assert_eq!(particular, vec![r("1 + p")]);
    }

    #[test]
    fn singular_nullspace() {
        let a = vec![vec![r("1"), r("1")], vec![r("1"), r("1")]];
        let sol = solve_linear(&a, &[r("0"), r("0")]).unwrap();
        let LinearSolution::Consistent {
            particular,
            nullspace,
        } = sol
        else {
            panic!()
        };
        assert_eq!(particular, vec![r("0"), r("0")]);
        assert_eq!(nullspace, vec![vec![r("-1"), r("1")]]);
        let rev = solve_linear_with(&a, &[r("0"), r("0")], PivotOrder::Reverse).unwrap();
        let LinearSolution::Consistent { nullspace, .. } = rev else {
            panic!()
        };
        assert_eq!(nullspace, vec![vec![r("1"), r("-1")]]);
    }

    #[test]
    fn inconsistent_and_mismatch() {
        let a = vec![vec![r("1"), r("1")], vec![r("1"), r("1")]];
        assert_eq!(
            solve_linear(&a, &[r("0"), r("1")]).unwrap(),
            LinearSolution::Inconsistent
        );
        assert!(matches!(
            solve_linear(&a, &[r("0")]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn inverse_of_two_by_two() {
        let a = vec![vec![r("1 - t"), r("t")], vec![r("1"), r("0")]];
        let inv = invert_matrix(&a).unwrap();
        assert_eq!(
            inv,
            vec![vec![r("0"), r("1")], vec![r("t^-1"), r("-t^-1 + 1")]]
        );
        assert!(invert_matrix(&[vec![r("1"), r("1")], vec![r("1"), r("1")]]).is_err());
    }
}
