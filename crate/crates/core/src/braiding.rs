//! The elementary Hecke-type braiding `τ` on `V ⊗ V` and the induced
//! braiding `τ̂` on `Λ_p(V)^{⊗2}`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::combin::{alpha, alpha_nonvanishing, k_subsets, subsets, theta, SubsetMask};
use crate::error::{Error, Result};
use crate::lambda::{basis, Basis, Lambda, Mover, Op, Operator, Tensor};
use crate::ring::{gauss_gamma, invert_matrix, LaurentPoly, RationalFn};

fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `τ(a ⊗ b)` for basis vectors `a, b` of `V`, as a combination of
/// `f_{{x}} ⊗ f_{{y}}`.
pub fn elementary_tau(a: usize, b: usize) -> Tensor<LaurentPoly> {
    let (sa, sb) = (SubsetMask::singleton(a), SubsetMask::singleton(b));
    let one = LaurentPoly::one();
    let p = LaurentPoly::p();
    match a.cmp(&b) {
        std::cmp::Ordering::Equal => Tensor::term(&[sa, sa], -&one),
        std::cmp::Ordering::Greater => Tensor::from_terms(
            2,
            [(basis(&[sa, sb]), &p - &one), (basis(&[sb, sa]), -&one)],
        ),
        std::cmp::Ordering::Less => Tensor::term(&[sb, sa], -&p),
    }
}

/// Singleton pairs `f_{{a}} ⊗ f_{{b}}`, the basis of `V ⊗ V`.
pub fn v_tuples(n: usize, arity: usize) -> Vec<Basis> {
    let mut out = vec![Basis::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=n).map(move |i| {
                    let mut b = prefix.clone();
                    b.push(SubsetMask::singleton(i));
                    b
                })
            })
            .collect();
    }
    out
}

/// `τ` as an operator on `V ⊗ V` (zero off the singleton pairs).
pub fn tau_operator(n: usize) -> Op {
    Operator::from_fn_on(n, 2, 2, v_tuples(n, 2), |b| {
        elementary_tau(b[0].max_element(), b[1].max_element())
    })
}

/// `τ̂ f_{E,F} = Σ_k γ_k L^{<|F|-k>} R^{<|E|-k>} f_{E,F}`.
pub fn hat_tau_moy(lambda: &Lambda) -> &Op {
    lambda.hat_tau.get_or_init(|| {
        Operator::from_fn(lambda.dim(), 2, 2, |b| {
            let (m, n) = (b[0].len(), b[1].len());
            let x = Tensor::basis(b);
            let mut out = Tensor::zero(2);
            for k in 0..=m.min(n) {
                let r = lambda.divided_power(Mover::R, m - k).apply(&x);
                let lr = lambda.divided_power(Mover::L, n - k).apply(&r);
                out.add_scaled(&lr, &gauss_gamma(k));
            }
            out
        })
    })
}

/// Data of one braiding coefficient: input `f_{E,F}`, exchanged sets
/// `G ⊆ E∖F`, `H ⊆ F∖E`, and the output `f_{F',E'}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Exchange {
    pub e: SubsetMask,
    pub f: SubsetMask,
    pub g: SubsetMask,
    pub h: SubsetMask,
}

impl Exchange {
    pub fn new(e: SubsetMask, f: SubsetMask, g: SubsetMask, h: SubsetMask) -> Self {
        debug_assert!(g.is_subset(e.difference(f)) && h.is_subset(f.difference(e)));
        Self { e, f, g, h }
    }

    /// `E' = (E ∖ G) ∪ H`.
    pub fn e_out(&self) -> SubsetMask {
        self.e.difference(self.g).union(self.h)
    }

    /// `F' = (F ∖ H) ∪ G`.
    pub fn f_out(&self) -> SubsetMask {
        self.f.difference(self.h).union(self.g)
    }

    /// The output basis pair `(F', E')`.
    pub fn output(&self) -> [SubsetMask; 2] {
        [self.f_out(), self.e_out()]
    }

    /// `β_{E,G;F,H} = (-1)^{θ_{F,E}+θ_{F',E'}} p^{θ_{G⊔C,E}+θ_{Ḟ,E'}} α_{G,H}`
    /// with `C = E ∩ F` and `Ḟ = (F ∖ E) ∖ H`.
    pub fn beta(&self) -> LaurentPoly {
        let (e, f, g, h) = (self.e, self.f, self.g, self.h);
        let c = e.intersection(f);
        let f_dot = f.difference(e).difference(h);
        let (e2, f2) = (self.e_out(), self.f_out());
        let s = sign(theta(f, e) + theta(f2, e2));
        let pe = theta(g.union(c), e) + theta(f_dot, e2);
        alpha(g, h).mul_monomial(&s.into(), pe as i32, 0)
    }

    /// `(-1)^{|E||F|}`.
    pub fn global_sign(&self) -> i64 {
        sign(self.e.len() * self.f.len())
    }
}

/// Exchanges `(G, H)` of size `k` for input `(E, F)`, in bitmask order.
pub fn exchanges(e: SubsetMask, f: SubsetMask, k: usize) -> Vec<Exchange> {
    let gs = k_subsets(e.difference(f), k);
    let hs = k_subsets(f.difference(e), k);
    gs.iter()
        .flat_map(|&g| hs.iter().map(move |&h| Exchange::new(e, f, g, h)))
        .collect()
}

/// `τ_k`: the size-`k` exchange channel of `τ̂`. With `skip_vanishing`,
/// pairs known to have `α_{G,H} = 0` are not evaluated.
pub fn channel(lambda: &Lambda, k: usize, skip_vanishing: bool) -> Op {
    Operator::from_fn(lambda.dim(), 2, 2, |b| {
        channel_image(b[0], b[1], k, skip_vanishing)
    })
}

fn channel_image(
    e: SubsetMask,
    f: SubsetMask,
    k: usize,
    skip_vanishing: bool,
) -> Tensor<LaurentPoly> {
    let mut out = Tensor::zero(2);
    for x in exchanges(e, f, k) {
        if skip_vanishing && !alpha_nonvanishing(x.g, x.h) {
            continue;
        }
        let c = x.beta().scale(x.global_sign());
        out.add_term(basis(&x.output()), c);
    }
    out
}

/// `τ̂` assembled from the coefficient formula `Σ_k τ_k`.
pub fn hat_tau_coeff(lambda: &Lambda) -> Op {
    hat_tau_coeff_with(lambda, true)
}

pub fn hat_tau_coeff_with(lambda: &Lambda, skip_vanishing: bool) -> Op {
    Operator::from_fn(lambda.dim(), 2, 2, |b| {
        let (e, f) = (b[0], b[1]);
        let kmax = e.difference(f).len().min(f.difference(e).len());
        let mut out = Tensor::zero(2);
        for k in 0..=kmax {
            out = out.add(&channel_image(e, f, k, skip_vanishing));
        }
        out
    })
}

/// `B f_{E,F} = (-1)^{|E||F|} Σ_{G ⊆ E∖F, H ⊆ F∖E} β_{E,G;F,H} f_{F',E'}`,
/// summing over all sizes of `G` and `H`.
pub fn op_b_coeff(lambda: &Lambda) -> Op {
    Operator::from_fn(lambda.dim(), 2, 2, |b| {
        let (e, f) = (b[0], b[1]);
        let mut out = Tensor::zero(2);
        for g in subsets(e.difference(f)) {
            for h in subsets(f.difference(e)) {
                let x = Exchange::new(e, f, g, h);
                out.add_term(basis(&x.output()), x.beta().scale(x.global_sign()));
            }
        }
        out
    })
}

/// Inverts an arity-2 operator block by block. Each block lists the domain
/// pairs and the codomain pairs their images live in.
pub(crate) fn invert_blockwise(
    op: &Operator<RationalFn>,
    blocks: Vec<(Vec<Basis>, Vec<Basis>)>,
    label: &str,
) -> Result<Operator<RationalFn>> {
    let inverses: Vec<Result<Vec<(Basis, Tensor<RationalFn>)>>> = blocks
        .into_par_iter()
        .map(|(domain, codomain)| {
            let index: BTreeMap<&Basis, usize> =
                codomain.iter().enumerate().map(|(i, b)| (b, i)).collect();
            // rows: codomain, columns: domain
            let mut m = vec![vec![RationalFn::zero(); domain.len()]; codomain.len()];
            for (j, d) in domain.iter().enumerate() {
                for (ob, c) in op.apply_basis(d).iter() {
                    let i = *index.get(ob).ok_or_else(|| {
                        Error::Singular(format!("{label}: image of {d:?} leaves its block"))
                    })?;
                    m[i][j] = c.clone();
                }
            }
            let inv = invert_matrix(&m).map_err(|e| Error::Singular(format!("{label}: {e}")))?;
            // inverse maps codomain basis j to Σ_i inv[i][j] domain_i
            Ok(codomain
                .iter()
                .enumerate()
                .map(|(j, cb)| {
                    let img = Tensor::from_terms(
                        2,
                        domain
                            .iter()
                            .enumerate()
                            .map(|(i, d)| (d.clone(), inv[i][j].clone())),
                    );
                    (cb.clone(), img)
                })
                .collect())
        })
        .collect();
    let mut columns = Vec::new();
    for block in inverses {
        columns.extend(block?);
    }
    Ok(Operator::from_columns(op.dim(), 2, 2, columns))
}

/// `τ̂^{-1}`, inverted per bidegree block. Its entries are Laurent
/// polynomials; anything else is reported as an error.
pub fn inverse_braiding(lambda: &Lambda) -> Result<Op> {
    let tau = hat_tau_moy(lambda).map_coeffs(|c| RationalFn::from(c));
    let n = lambda.dim();
    let blocks = (0..=n)
        .flat_map(|a| (0..=n).map(move |b| (a, b)))
        .map(|(a, b)| (lambda.bidegree_block(a, b), lambda.bidegree_block(b, a)))
        .collect();
    let inv = invert_blockwise(&tau, blocks, "braiding")?;
    inv.try_map_coeffs(|c| c.to_laurent())
}

/// Per-channel dump keyed by exchange size `k`.
pub fn channels_json(lambda: &Lambda) -> Value {
    let channels: Vec<Value> = (0..=lambda.dim() / 2)
        .map(|k| json!({ "k": k, "operator": channel(lambda, k, true).to_json() }))
        .collect();
    Value::Array(channels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(e: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(e).unwrap()
    }

    fn lp(x: &str) -> LaurentPoly {
        x.parse().unwrap()
    }

    #[test]
    fn elementary_cases() {
        assert_eq!(
            elementary_tau(1, 1),
            Tensor::term(&[s(&[1]), s(&[1])], lp("-1"))
        );
        assert_eq!(
            elementary_tau(1, 2),
            Tensor::term(&[s(&[2]), s(&[1])], lp("-p"))
        );
        let expected = Tensor::from_terms(
            2,
            [
                (basis(&[s(&[2]), s(&[1])]), lp("-1 + p")),
                (basis(&[s(&[1]), s(&[2])]), lp("-1")),
            ],
        );
        assert_eq!(elementary_tau(2, 1), expected);
    }

    #[test]
    fn moy_examples() {
        let l = Lambda::new(2).unwrap();
        let tau = hat_tau_moy(&l);
        for f in [s(&[]), s(&[1]), s(&[2]), s(&[1, 2])] {
            assert_eq!(tau.apply_basis(&[s(&[]), f]), Tensor::basis(&[f, s(&[])]));
        }
        assert_eq!(
            tau.apply_basis(&[s(&[1]), s(&[2])]),
            Tensor::term(&[s(&[2]), s(&[1])], lp("-p"))
        );
        assert_eq!(tau.apply_basis(&[s(&[2]), s(&[1])]), elementary_tau(2, 1));
    }

    #[test]
    fn beta_examples() {
        let x = Exchange::new(s(&[2]), s(&[1]), s(&[]), s(&[]));
        assert_eq!(x.beta(), lp("1"));
        assert_eq!(x.global_sign(), -1);
        let y = Exchange::new(s(&[2]), s(&[1]), s(&[2]), s(&[1]));
        assert_eq!(y.beta(), lp("1 - p"));
    }

    #[test]
    fn constructions_agree() {
        for n in 1..=3 {
            let l = Lambda::new(n).unwrap();
            let moy = hat_tau_moy(&l);
            assert!(moy.diff(&hat_tau_coeff(&l)).is_none(), "N={n}");
            assert!(
                moy.diff(&hat_tau_coeff_with(&l, false)).is_none(),
                "N={n} unskipped"
            );
        }
    }

    #[test]
    fn b_matches_coefficients() {
        for n in 1..=3 {
            let l = Lambda::new(n).unwrap();
            assert!(l.op_b_structure().diff(&op_b_coeff(&l)).is_none(), "N={n}");
        }
    }

    #[test]
    fn inverse_is_two_sided() {
        let l = Lambda::new(2).unwrap();
        let inv = inverse_braiding(&l).unwrap();
        let tau = hat_tau_moy(&l);
        assert!(inv.compose(tau).diff(&l.identity(2)).is_none());
        assert!(tau.compose(&inv).diff(&l.identity(2)).is_none());
        assert_eq!(
            inv.apply_basis(&[s(&[1, 2]), s(&[])]),
            Tensor::basis(&[s(&[]), s(&[1, 2])])
        );
    }
}
