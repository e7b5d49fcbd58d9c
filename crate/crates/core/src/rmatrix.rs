//! The right action `λ_R` and the two-parameter R-matrix `ρ`.

use serde_json::{json, Value};

use crate::braiding::{hat_tau_moy, invert_blockwise, Exchange};
use crate::combin::{subsets, SubsetMask};
use crate::error::{Error, Result};
use crate::lambda::{basis, Basis, Lambda, Mover, Op, Operator, Pipeline, Tensor};
use crate::ring::{gauss_gamma, qpochhammer, LaurentPoly, RationalFn};

fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `t p^k`.
fn tp(k: usize) -> LaurentPoly {
    LaurentPoly::monomial(1, k as i32, 1)
}

/// `f_E ◁ f_F = f_E f_F (t p^{|E|}; p)_{|F|}`.
pub fn right_action(e: SubsetMask, f: SubsetMask) -> Tensor<LaurentPoly> {
    match Lambda::product_basis(e, f) {
        Some((s, u)) => Tensor::term(&[u], qpochhammer(&tp(e.len()), f.len()).scale(s)),
        None => Tensor::zero(1),
    }
}

/// `λ_R` by its closed form.
pub fn right_action_op(lambda: &Lambda) -> Op {
    Operator::from_fn(lambda.dim(), 2, 1, |b| right_action(b[0], b[1]))
}

/// `λ_R = ∇^{(2)} ((S φ_t) ⊗ id ⊗ id)(τ̂ ⊗ id)(id ⊗ Δ)` from the raw maps.
pub fn right_action_raw(lambda: &Lambda) -> Op {
    let s_phi = lambda.antipode().compose(&lambda.phi(&LaurentPoly::t()));
    let tau = hat_tau_moy(lambda);
    let nabla = lambda.product();
    let chain = Pipeline::new()
        .then(lambda.coproduct(), 1)
        .then(tau, 0)
        .then(&s_phi, 0)
        .then(nabla, 1)
        .then(nabla, 0);
    Operator::from_fn(lambda.dim(), 2, 1, |b| chain.eval(&Tensor::basis(b)))
}

/// `ρ = (φ_t ⊗ λ_R)(τ̂ ⊗ id)(id ⊗ Δ)` from the raw maps.
pub fn rho_raw(lambda: &Lambda) -> Op {
    let phi_t = lambda.phi(&LaurentPoly::t());
    let lambda_r = right_action_raw(lambda);
    let chain = Pipeline::new()
        .then(lambda.coproduct(), 1)
        .then(hat_tau_moy(lambda), 0)
        .then(&lambda_r, 1)
        .then(&phi_t, 0);
    Operator::from_fn(lambda.dim(), 2, 2, |b| chain.eval(&Tensor::basis(b)))
}

/// `W_n(x, tL; p) = Σ_{i≤n} (x; p)_{n-i} t^i L^{<i>}` as an operator.
pub fn w_operator(lambda: &Lambda, n: usize, x: &LaurentPoly) -> Op {
    (0..=n).fold(Operator::zero(lambda.dim(), 2, 2), |acc, i| {
        let c = &qpochhammer(x, n - i) * &LaurentPoly::t_pow(i as i32);
        acc.add(&lambda.divided_power(Mover::L, i).scale(&c))
    })
}

/// `W_n(x, y; p)` for a scalar `y`, with `y^{<i>} = y^i / [i]_p!`.
pub fn w_scalar(n: usize, x: &LaurentPoly, y: &RationalFn) -> RationalFn {
    (0..=n).fold(RationalFn::zero(), |acc, i| {
        let fact = RationalFn::from(crate::ring::qfactorial(i));
        let term = &(&RationalFn::from(qpochhammer(x, n - i)) * &y.pow(i as u32)) / &fact;
        &acc + &term
    })
}

/// `ρ f_{E,F} = Σ_k t^k γ_k W_{|F|-k}(t p^{|E|}, tL; p) R^{<|E|-k>} f_{E,F}`.
pub fn rho_operator_form(lambda: &Lambda) -> &Op {
    lambda.rho.get_or_init(|| {
        Operator::from_fn(lambda.dim(), 2, 2, |b| {
            let (m, n) = (b[0].len(), b[1].len());
            let x = Tensor::basis(b);
            let mut out = Tensor::zero(2);
            for k in 0..=m.min(n) {
                let r = lambda.divided_power(Mover::R, m - k).apply(&x);
                let w = w_operator(lambda, n - k, &tp(m));
                let c = &gauss_gamma(k) * &LaurentPoly::t_pow(k as i32);
                out.add_scaled(&w.apply(&r), &c);
            }
            out
        })
    })
}

/// `r_{E,G;F,H} = t^{|F'|} (t p^{|E|}; p)_{|H|-|G|} β_{E,G;F,H}`, without
/// the global sign `(-1)^{|E||F|}`.
pub fn rho_coefficient(x: &Exchange) -> LaurentPoly {
    debug_assert!(x.h.len() >= x.g.len());
    let poch = qpochhammer(&tp(x.e.len()), x.h.len() - x.g.len());
    (&poch * &x.beta()).shift(0, x.f_out().len() as i32)
}

/// `ρ` from the coefficient formula.
pub fn rho_coeff_form(lambda: &Lambda) -> Op {
    Operator::from_fn(lambda.dim(), 2, 2, |b| {
        let (e, f) = (b[0], b[1]);
        let mut out = Tensor::zero(2);
        for g in subsets(e.difference(f)) {
            for h in subsets(f.difference(e)) {
                if h.len() < g.len() {
                    continue;
                }
                let x = Exchange::new(e, f, g, h);
                out.add_term(
                    basis(&x.output()),
                    rho_coefficient(&x).scale(x.global_sign()),
                );
            }
        }
        out
    })
}

/// Basis pairs of total degree `d`.
fn total_degree_block(lambda: &Lambda, d: usize) -> Vec<Basis> {
    (0..=d.min(lambda.dim()))
        .filter(|&m| d - m <= lambda.dim())
        .flat_map(|m| lambda.bidegree_block(m, d - m))
        .collect()
}

/// `ρ^{-1}`, inverted per total-degree block over the fraction field.
pub fn rho_inverse(lambda: &Lambda) -> Result<Operator<RationalFn>> {
    let rho = rho_operator_form(lambda).map_coeffs(|c| RationalFn::from(c));
    let blocks = (0..=2 * lambda.dim())
        .map(|d| {
            let b = total_degree_block(lambda, d);
            (b.clone(), b)
        })
        .collect();
    invert_blockwise(&rho, blocks, "R-matrix")
}

/// Named part of `ρ` an entry belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelKind {
    Scattering,
    Reflection,
    Decay,
    Fusion,
    Exchange,
}

impl ChannelKind {
    pub fn is_annihilation(self) -> bool {
        matches!(self, Self::Decay | Self::Fusion | Self::Exchange)
    }
}

/// One nonzero matrix entry of `ρ` with its exchanged sets.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelEntry {
    pub input: [SubsetMask; 2],
    pub output: [SubsetMask; 2],
    pub g: SubsetMask,
    pub h: SubsetMask,
    pub kind: ChannelKind,
    pub coeff: LaurentPoly,
}

/// Classifies an entry `f_{E,F} -> f_{F',E'}` of `ρ`. The exchanged sets
/// are recovered as `G = F' ∖ F` and `H = E' ∖ E`.
pub fn classify(
    input: [SubsetMask; 2],
    output: [SubsetMask; 2],
) -> (SubsetMask, SubsetMask, ChannelKind) {
    let [e, f] = input;
    let [f2, e2] = output;
    let g = f2.difference(f);
    let h = e2.difference(e);
    let kind = if g.is_empty() && h.is_empty() {
        ChannelKind::Scattering
    } else if input == output {
        ChannelKind::Reflection
    } else if e.is_empty() {
        ChannelKind::Decay
    } else if f2.is_empty() {
        ChannelKind::Fusion
    } else {
        ChannelKind::Exchange
    };
    (g, h, kind)
}

/// Channel decomposition of `ρ`, indexed by the flat basis order
/// `f_0, f_1, ...` (by degree, then lexicographic).
#[derive(Clone, Debug)]
pub struct RhoChannels {
    pub flat: Vec<SubsetMask>,
    pub entries: Vec<ChannelEntry>,
}

impl RhoChannels {
    pub fn new(lambda: &Lambda) -> Self {
        let flat = lambda.order().graded_subsets();
        let rho = rho_operator_form(lambda);
        let mut entries = Vec::new();
        for &e in &flat {
            for &f in &flat {
                for (out, c) in rho.apply_basis(&[e, f]).iter() {
                    let output = [out[0], out[1]];
                    let (g, h, kind) = classify([e, f], output);
                    entries.push(ChannelEntry {
                        input: [e, f],
                        output,
                        g,
                        h,
                        kind,
                        coeff: c.clone(),
                    });
                }
            }
        }
        Self { flat, entries }
    }

    pub fn index_of(&self, s: SubsetMask) -> usize {
        self.flat
            .iter()
            .position(|&x| x == s)
            .expect("subset in basis")
    }

    /// `ρ_kind f_{i,j}` in flat indices.
    pub fn action(&self, kinds: &[ChannelKind], i: usize, j: usize) -> Tensor<LaurentPoly> {
        let input = [self.flat[i], self.flat[j]];
        Tensor::from_terms(
            2,
            self.entries
                .iter()
                .filter(|x| x.input == input && kinds.contains(&x.kind))
                .map(|x| (basis(&x.output), x.coeff.clone())),
        )
    }

    /// `m_{a,b}` such that `ρ_s f_{i,j} = (-1)^{[i][j]} t^{[j]} p^{m_{j,i}} f_{j,i}`.
    /// Fails if a scattering coefficient is not of that shape.
    pub fn exponent_matrix(&self) -> Result<Vec<Vec<i32>>> {
        let n = self.flat.len();
        let mut m = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let x = self.action(&[ChannelKind::Scattering], i, j);
                let (ei, ej) = (self.flat[i], self.flat[j]);
                let c = x.coeff(&[ej, ei]);
                let bad = || {
                    Error::DimensionMismatch(format!("scattering coefficient {c} on f_{{{i},{j}}}"))
                };
                if x.len() != 1 {
                    return Err(bad());
                }
                let (coeff, pe, te) = c.as_monomial().ok_or_else(bad)?;
                let expected_sign = sign(ei.len() * ej.len());
                if *coeff != expected_sign.into() || te != ej.len() as i32 {
                    return Err(bad());
                }
                m[j][i] = pe;
            }
        }
        Ok(m)
    }

    /// Coefficient of `f_{i,j}` in `ρ_r f_{i,j}`, as a matrix.
    pub fn reflection_matrix(&self) -> Vec<Vec<LaurentPoly>> {
        let n = self.flat.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        self.action(&[ChannelKind::Reflection], i, j)
                            .coeff(&[self.flat[i], self.flat[j]])
                    })
                    .collect()
            })
            .collect()
    }

    /// Counts of nonzero entries by `(|G|, |H|)`.
    pub fn size_counts(&self) -> Vec<((usize, usize), usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for x in &self.entries {
            *counts.entry((x.g.len(), x.h.len())).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    pub fn to_json(&self) -> Result<Value> {
        let flat_json: Vec<Value> = self
            .flat
            .iter()
            .map(|s| serde_json::to_value(s).expect("subset"))
            .collect();
        let reflection: Vec<Vec<Value>> = self
            .reflection_matrix()
            .iter()
            .map(|r| r.iter().map(LaurentPoly::to_json).collect())
            .collect();
        let mut annihilation = Vec::new();
        let n = self.flat.len();
        for i in 0..n {
            for j in 0..n {
                for kind in [
                    ChannelKind::Decay,
                    ChannelKind::Fusion,
                    ChannelKind::Exchange,
                ] {
                    let x = self.action(&[kind], i, j);
                    if x.is_zero() {
                        continue;
                    }
                    let terms: Vec<Value> = x
                        .iter()
                        .map(|(b, c)| json!({ "coeff": c.to_json(), "out": [self.index_of(b[0]), self.index_of(b[1])] }))
                        .collect();
                    annihilation.push(json!({ "kind": kind, "in": [i, j], "terms": terms }));
                }
            }
        }
        let sizes: Vec<Value> = self
            .size_counts()
            .into_iter()
            .map(|((g, h), c)| json!({ "g": g, "h": h, "entries": c }))
            .collect();
        Ok(json!({
            "flat_basis": flat_json,
            "exponents": self.exponent_matrix()?,
            "reflection": reflection,
            "annihilation": annihilation,
            "by_exchange_size": sizes,
        }))
    }
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
    fn right_action_examples() {
        assert_eq!(right_action(s(&[]), s(&[])), Tensor::basis(&[s(&[])]));
        assert_eq!(
            right_action(s(&[]), s(&[1])),
            Tensor::term(&[s(&[1])], lp("1 - t"))
        );
        assert_eq!(
            right_action(s(&[1]), s(&[2])),
            Tensor::term(&[s(&[1, 2])], lp("1 - t*p"))
        );
        assert!(right_action(s(&[1]), s(&[1])).is_zero());
    }

    #[test]
    fn raw_right_action_matches_closed_form() {
        for n in 1..=3 {
            let l = Lambda::new(n).unwrap();
            assert!(
                right_action_raw(&l).diff(&right_action_op(&l)).is_none(),
                "N={n}"
            );
        }
    }

    #[test]
    fn n1_matrix() {
        let l = Lambda::new(1).unwrap();
        let rho = rho_operator_form(&l);
        let (e, one) = (s(&[]), s(&[1]));
        assert_eq!(rho.apply_basis(&[e, e]), Tensor::basis(&[e, e]));
        let expected = Tensor::from_terms(
            2,
            [(basis(&[e, one]), lp("1 - t")), (basis(&[one, e]), lp("t"))],
        );
        assert_eq!(rho.apply_basis(&[e, one]), expected);
        assert_eq!(rho.apply_basis(&[one, e]), Tensor::basis(&[e, one]));
        assert_eq!(
            rho.apply_basis(&[one, one]),
            Tensor::term(&[one, one], lp("-t"))
        );
    }

    #[test]
    fn three_constructions_agree() {
        for n in 1..=3 {
            let l = Lambda::new(n).unwrap();
            let op = rho_operator_form(&l);
            assert!(
                op.diff(&rho_coeff_form(&l)).is_none(),
                "coefficient form, N={n}"
            );
            if n <= 2 {
                assert!(op.diff(&rho_raw(&l)).is_none(), "raw definition, N={n}");
            }
        }
    }

    #[test]
    fn inverse_n1() {
        let l = Lambda::new(1).unwrap();
        let inv = rho_inverse(&l).unwrap();
        let one = s(&[1]);
        let expected = RationalFn::from(lp("-t^-1"));
        assert_eq!(
            inv.apply_basis(&[one, one]),
            Tensor::term(&[one, one], expected)
        );
        let rho = rho_operator_form(&l).map_coeffs(|c| RationalFn::from(c));
        assert!(inv.compose(&rho).diff(&Operator::identity(1, 2)).is_none());
    }

    #[test]
    fn w_operator_matches_powers() {
        let l = Lambda::new(3).unwrap();
        let x = lp("t*p");
        let lr = l.op_l().map_coeffs(|c| RationalFn::from(c));
        for n in 0..=3 {
            let mut expected = Operator::<RationalFn>::zero(3, 2, 2);
            let mut power = Operator::identity(3, 2);
            for i in 0..=n {
                let c = &RationalFn::from(&qpochhammer(&x, n - i) * &LaurentPoly::t_pow(i as i32))
                    / &RationalFn::from(crate::ring::qfactorial(i));
                expected = expected.add(&power.scale(&c));
                power = lr.compose(&power);
            }
            let got = w_operator(&l, n, &x).map_coeffs(|c| RationalFn::from(c));
            assert!(got.diff(&expected).is_none(), "n={n}");
        }
    }

    #[test]
    fn classification() {
        let (e, one, two, both) = (s(&[]), s(&[1]), s(&[2]), s(&[1, 2]));
        assert_eq!(classify([one, two], [two, one]).2, ChannelKind::Scattering);
        assert_eq!(classify([two, one], [two, one]).2, ChannelKind::Reflection);
        assert_eq!(classify([e, both], [one, two]).2, ChannelKind::Decay);
        assert_eq!(classify([one, two], [e, both]).2, ChannelKind::Fusion);
    }
}
