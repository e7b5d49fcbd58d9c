#![allow(dead_code)]

use lambdap::lambda::{basis, Tensor};
use lambdap::ring::qpochhammer;
use lambdap::rmatrix::{ChannelKind, RhoChannels};
use lambdap::LaurentPoly;

pub fn lp(s: &str) -> LaurentPoly {
    s.parse().expect("polynomial literal")
}

/// `(x; p)_n`.
pub fn poch(x: &str, n: usize) -> LaurentPoly {
    qpochhammer(&lp(x), n)
}

pub fn mul(xs: &[LaurentPoly]) -> LaurentPoly {
    xs.iter().cloned().product()
}

/// A sum `Σ c f_{k,l}` in flat indices.
pub type Action = Vec<(LaurentPoly, usize, usize)>;

pub fn to_tensor(ch: &RhoChannels, terms: &Action) -> Tensor<LaurentPoly> {
    let mut out = Tensor::zero(2);
    for (c, k, l) in terms {
        out.add_term(basis(&[ch.flat[*k], ch.flat[*l]]), c.clone());
    }
    out
}

/// Compares `ρ_kind f_{i,j}` with the listed actions and requires the
/// channel to vanish on every other input.
pub fn check_listed(
    ch: &RhoChannels,
    kind: ChannelKind,
    listed: &[((usize, usize), Action)],
) -> Result<(), String> {
    let n = ch.flat.len();
    for i in 0..n {
        for j in 0..n {
            let got = ch.action(&[kind], i, j);
            let expected = listed
                .iter()
                .find(|(ij, _)| *ij == (i, j))
                .map(|(_, a)| to_tensor(ch, a))
                .unwrap_or_else(|| Tensor::zero(2));
            if got != expected {
                return Err(format!(
                    "{kind:?} on f_{{{i},{j}}}: got {got}, expected {expected}"
                ));
            }
        }
    }
    Ok(())
}

/// Scattering exponents `m` for dimensions 2 and 3.
pub fn exponents(n: usize) -> Vec<Vec<i32>> {
    match n {
        2 => vec![
            vec![0, 0, 0, 0],
            vec![0, 0, 0, 0],
            vec![0, 1, 0, 1],
            vec![0, 1, 0, 1],
        ],
        3 => vec![
            vec![0, 0, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 1, 1, 0, 1],
            vec![0, 1, 1, 0, 2, 1, 1, 2],
            vec![0, 1, 0, 0, 1, 1, 0, 1],
            vec![0, 1, 1, 0, 2, 1, 1, 2],
            vec![0, 2, 1, 0, 3, 2, 1, 3],
            vec![0, 2, 1, 0, 3, 2, 1, 3],
        ],
        _ => panic!("no table for dimension {n}"),
    }
}

/// Reflection coefficients `r` for dimensions 2 and 3, before the
/// `(-t)^{[i]} p^{δ_{[i],2}}` prefactor.
pub fn reflection(n: usize) -> Vec<Vec<LaurentPoly>> {
    let z = LaurentPoly::zero;
    let t1 = || poch("t", 1);
    let tp1 = || poch("t*p", 1);
    let p1 = || poch("p", 1);
    let tpp1 = || poch("t*p^2", 1);
    let t2 = || poch("t", 2);
    let tp2 = || poch("t*p", 2);
    match n {
        2 => vec![
            vec![z(), t1(), t1(), t2()],
            vec![z(), z(), z(), tp1()],
            vec![z(), p1(), z(), tp1()],
            vec![z(), z(), z(), z()],
        ],
        3 => {
            // (p;t)_2 = (1 - p)(1 - pt)
            let pt2 = mul(&[p1(), tp1()]);
            let pp1tp1 = mul(&[poch("p^2", 1), tp1()]);
            vec![
                vec![z(), t1(), t1(), t1(), t2(), t2(), t2(), poch("t", 3)],
                vec![z(), z(), z(), z(), tp1(), tp1(), z(), tp2()],
                vec![z(), p1(), z(), z(), tp1(), pt2, tp1(), tp2()],
                vec![z(), p1(), p1(), z(), pp1tp1, tp1(), tp1(), tp2()],
                vec![z(), z(), z(), z(), z(), z(), z(), tpp1()],
                vec![z(), z(), z(), z(), p1(), z(), z(), tpp1()],
                vec![z(), z(), z(), z(), p1(), p1(), z(), tpp1()],
                vec![z(), z(), z(), z(), z(), z(), z(), z()],
            ]
        }
        _ => panic!("no table for dimension {n}"),
    }
}

/// Full reflection coefficient `(-t)^{[i]} p^{δ_{[i],2}} r_{i,j}`.
pub fn reflection_coefficient(ch: &RhoChannels, r: &LaurentPoly, i: usize) -> LaurentPoly {
    let deg = ch.flat[i].len();
    let sign = if deg % 2 == 0 { 1 } else { -1 };
    let delta = i32::from(deg == 2 && ch.flat.len() == 8);
    &LaurentPoly::monomial(sign, delta, deg as i32) * r
}

fn term(c: LaurentPoly, k: usize, l: usize) -> (LaurentPoly, usize, usize) {
    (c, k, l)
}

/// `c (f_{a} - p f_{b})` style combinations: each entry is `(p-power, sign, k, l)`.
fn combo(c: &LaurentPoly, parts: &[(i32, i64, usize, usize)]) -> Action {
    parts
        .iter()
        .map(|&(e, s, k, l)| term(&LaurentPoly::monomial(s, e, 0) * c, k, l))
        .collect()
}

pub fn decay(n: usize) -> Vec<((usize, usize), Action)> {
    let t_t1 = &lp("t") * &poch("t", 1);
    match n {
        2 => vec![((0, 3), combo(&t_t1, &[(0, 1, 1, 2), (1, -1, 2, 1)]))],
        3 => {
            let mut out: Vec<_> = [(1, 2), (1, 3), (2, 3)]
                .into_iter()
                .map(|(i, j)| ((0, 1 + i + j), combo(&t_t1, &[(0, 1, i, j), (1, -1, j, i)])))
                .collect();
            let a = &lp("t") * &poch("t", 2);
            let b = &lp("t^2") * &poch("t", 1);
            let mut top = combo(&a, &[(0, 1, 1, 6), (1, -1, 2, 5), (2, 1, 3, 4)]);
            top.extend(combo(&b, &[(0, 1, 4, 3), (1, -1, 5, 2), (2, 1, 6, 1)]));
            out.push(((0, 7), top));
            out
        }
        _ => panic!("no table for dimension {n}"),
    }
}

pub fn fusion(n: usize) -> Vec<((usize, usize), Action)> {
    let tp1 = poch("t*p", 1);
    match n {
        2 => vec![
            ((1, 2), vec![term(tp1.clone(), 0, 3)]),
            ((2, 1), vec![term(-tp1, 0, 3)]),
        ],
        3 => {
            let mut out = Vec::new();
            for (i, j) in [(1, 2), (1, 3), (2, 3)] {
                out.push(((i, j), vec![term(tp1.clone(), 0, 1 + i + j)]));
                out.push(((j, i), vec![term(-tp1.clone(), 0, 1 + i + j)]));
            }
            for i in 1..=6 {
                let sign = if (i <= 3) == (i % 2 == 1) { 1 } else { -1 };
                let c = if i <= 3 {
                    poch("t*p", 2)
                } else {
                    poch("t*p^2", 1)
                };
                out.push(((i, 7 - i), vec![term(c.scale(sign), 0, 7)]));
            }
            out
        }
        _ => panic!("no table for dimension {n}"),
    }
}

/// The exchange actions listed for dimension 3; all others vanish.
pub fn exchange3() -> Vec<((usize, usize), Action)> {
    let tp1 = poch("t*p", 1);
    let p1 = poch("p", 1);
    let tpp1 = poch("t*p^2", 1);
    let c = |m: &str, x: &LaurentPoly| &lp(m) * x;
    let e16 = combo(&c("t*p", &tp1), &[(1, 1, 3, 4), (0, -1, 2, 5)]);
    let mut e25 = vec![term(c("t^2*p", &p1), 6, 1)];
    e25.extend(combo(&c("-t", &tp1), &[(0, 1, 1, 6), (2, 1, 3, 4)]));
    let mut e34 = combo(&c("t", &tp1), &[(0, 1, 1, 6), (1, -1, 2, 5)]);
    e34.extend(combo(&c("t^2", &p1), &[(0, 1, 5, 2), (1, -1, 6, 1)]));
    vec![
        ((1, 6), e16),
        (
            (1, 7),
            combo(&c("t^2*p", &tp1), &[(0, 1, 4, 5), (1, -1, 5, 4)]),
        ),
        ((2, 5), e25),
        (
            (2, 7),
            combo(&c("t^2", &tp1), &[(0, 1, 4, 6), (2, -1, 6, 4)]),
        ),
        ((3, 4), e34),
        (
            (3, 7),
            combo(&c("t^2", &tp1), &[(0, 1, 5, 6), (1, -1, 6, 5)]),
        ),
        ((4, 5), vec![term(c("t", &tpp1), 1, 7)]),
        ((4, 6), vec![term(c("t*p", &tpp1), 2, 7)]),
        ((5, 2), vec![term(c("t*p", &p1), 3, 4)]),
        // sign opposite to f_{4,5}; the other sign violates the braid relation
        ((5, 4), vec![term(c("-t", &tpp1), 1, 7)]),
        ((5, 6), vec![term(c("t*p", &tpp1), 3, 7)]),
        ((6, 1), combo(&c("t", &p1), &[(0, 1, 2, 5), (1, -1, 3, 4)])),
        ((6, 4), vec![term(c("-t", &tpp1), 2, 7)]),
        ((6, 5), vec![term(c("-t*p", &tpp1), 3, 7)]),
    ]
}

type Matrix = Vec<Vec<LaurentPoly>>;

fn identity(k: usize) -> Matrix {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        LaurentPoly::one()
                    } else {
                        LaurentPoly::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let k = a.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (0..k).map(|l| &a[i][l] * &b[l][j]).sum())
                .collect()
        })
        .collect()
}

fn det(m: &Matrix) -> LaurentPoly {
    match m.len() {
        0 => LaurentPoly::one(),
        1 => m[0][0].clone(),
        k => (0..k)
            .map(|j| {
                let minor: Matrix = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let x = &m[0][j] * &det(&minor);
                if j % 2 == 0 {
                    x
                } else {
                    -x
                }
            })
            .sum(),
    }
}

/// Reduced Burau matrix of `σ_i^{±1}` on `n` strands.
fn burau_generator(n: usize, letter: i32) -> Matrix {
    let k = n - 1;
    let i = letter.unsigned_abs() as usize - 1;
    let block: [[&str; 3]; 3] = if letter > 0 {
        [["1", "t", "0"], ["0", "-t", "0"], ["0", "1", "1"]]
    } else {
        [["1", "1", "0"], ["0", "-t^-1", "0"], ["0", "t^-1", "1"]]
    };
    let mut m = identity(k);
    for (r, row) in block.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            let (gr, gc) = (i + r, i + c);
            if (1..=k).contains(&gr) && (1..=k).contains(&gc) {
                m[gr - 1][gc - 1] = lp(x);
            }
        }
    }
    m
}

/// Alexander polynomial of a braid closure from the reduced Burau
/// representation, `det(I - B) / [n]_t`, up to a unit.
pub fn burau_alexander(n: usize, letters: &[i32]) -> LaurentPoly {
    let b = letters.iter().fold(identity(n - 1), |acc, &l| {
        matmul(&acc, &burau_generator(n, l))
    });
    let id = identity(n - 1);
    let diff: Matrix = (0..n - 1)
        .map(|i| (0..n - 1).map(|j| &id[i][j] - &b[i][j]).collect())
        .collect();
    let qint_t = LaurentPoly::from_terms((0..n as i32).map(|e| (1, 0, e)));
    det(&diff)
        .exact_divide(&qint_t)
        .expect("divisible by [n]_t")
}

/// Multiplies by `±t^k` to make the polynomial palindromic with value 1 at 1.
pub fn symmetrize(x: &LaurentPoly) -> LaurentPoly {
    let lo = x.terms().iter().map(|t| t.t).min().expect("nonzero");
    let hi = x.terms().iter().map(|t| t.t).max().expect("nonzero");
    assert_eq!((lo + hi) % 2, 0, "not symmetrizable: {x}");
    let y = x.shift(0, -(lo + hi) / 2);
    let sign = y.sum_of_coefficients();
    assert!(sign == 1.into() || sign == (-1).into(), "Δ(1) = {sign}");
    if sign == 1.into() {
        y
    } else {
        -y
    }
}
