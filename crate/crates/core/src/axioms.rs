//! Exhaustive checks of the braided Hopf axioms, braid relations and the
//! combinatorial identities behind the constructions.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::braiding::{hat_tau_coeff, hat_tau_moy, inverse_braiding, tau_operator, v_tuples};
use crate::combin::{alpha, alpha_nonvanishing, k_subsets, subsets, theta, SubsetMask, MAX_DIM};
use crate::error::{Error, Result};
use crate::lambda::{
    all_tuples, basis_to_string, Basis, Lambda, Mover, Op, Operator, Pipeline, Tensor,
};
use crate::ring::{
    gauss_gamma, qbinom, qpochhammer, solve_linear, Coeff, LaurentPoly, LinearSolution, RationalFn,
};
use crate::rmatrix::{rho_coeff_form, rho_operator_form, right_action_op, right_action_raw};

/// Outcome of one identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, counterexample: Option<String>) -> Self {
        Self {
            name: name.into(),
            passed: counterexample.is_none(),
            counterexample,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub name: String,
    pub params: Value,
    pub checks: Vec<Check>,
    pub wall_time: Duration,
}

impl VerificationReport {
    fn timed(name: &str, params: Value, run: impl FnOnce() -> Vec<Check>) -> Self {
        let start = Instant::now();
        let checks = run();
        Self {
            name: name.to_string(),
            params,
            checks,
            wall_time: start.elapsed(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// First failing check, as `"name: detail"`.
    pub fn counterexample(&self) -> Option<String> {
        self.checks.iter().find(|c| !c.passed).map(|c| {
            format!(
                "{}: {}",
                c.name,
                c.counterexample.as_deref().unwrap_or("failed")
            )
        })
    }

    /// Wall time is left out unless asked for, so dumps are reproducible.
    pub fn to_json(&self, timings: bool) -> Value {
        let mut v = json!({
            "name": self.name,
            "params": self.params,
            "status": if self.passed() { "pass" } else { "fail" },
            "counterexample": self.counterexample(),
            "checks": self.checks,
        });
        if timings {
            v["wall_time_ms"] = json!(self.wall_time.as_secs_f64() * 1e3);
        }
        v
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(
            f,
            "{} {}: {status} ({} checks)",
            self.name,
            self.params,
            self.checks.len()
        )?;
        for c in self.checks.iter().filter(|c| !c.passed) {
            write!(
                f,
                "\n  {}: {}",
                c.name,
                c.counterexample.as_deref().unwrap_or("failed")
            )?;
        }
        Ok(())
    }
}

fn check_dim(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::InvalidDimension(n));
    }
    Ok(())
}

/// Basis tuples of the given arity, optionally capped in total degree.
pub fn domain(n: usize, arity: usize, cap: Option<usize>) -> Vec<Basis> {
    let mut tuples = all_tuples(n, arity);
    if let Some(cap) = cap {
        tuples.retain(|b| b.iter().map(|s| s.len()).sum::<usize>() <= cap);
    }
    tuples
}

/// First input (in domain order) on which the two maps differ.
pub fn compare<C: Coeff>(
    domain: &[Basis],
    lhs: impl Fn(&Tensor<C>) -> Tensor<C> + Sync,
    rhs: impl Fn(&Tensor<C>) -> Tensor<C> + Sync,
) -> Option<String> {
    domain.par_iter().find_map_first(|b| {
        let x = Tensor::basis(b);
        let (l, r) = (lhs(&x), rhs(&x));
        (l != r).then(|| format!("on {}: lhs {l}, rhs {r}", basis_to_string(b)))
    })
}

fn pipelines(
    name: &str,
    domain: &[Basis],
    lhs: Pipeline<'_, LaurentPoly>,
    rhs: Pipeline<'_, LaurentPoly>,
) -> Check {
    Check::new(name, compare(domain, |x| lhs.eval(x), |x| rhs.eval(x)))
}

fn ops<C: Coeff>(name: &str, lhs: &Operator<C>, rhs: &Operator<C>) -> Check {
    let cx = lhs.diff(rhs).map(|m| {
        format!(
            "on {}: lhs {}, rhs {}",
            basis_to_string(&m.input),
            m.lhs,
            m.rhs
        )
    });
    Check::new(name, cx)
}

fn scalars<C: PartialEq + fmt::Display>(
    name: &str,
    cases: impl IntoIterator<Item = (String, C, C)>,
) -> Check {
    let cx = cases
        .into_iter()
        .find(|(_, l, r)| l != r)
        .map(|(at, l, r)| format!("at {at}: lhs {l}, rhs {r}"));
    Check::new(name, cx)
}

/// Structure maps and braiding of a braided Hopf algebra on `Λ(V)`; the
/// fields are public so tests can corrupt them.
#[derive(Clone, Debug)]
pub struct HopfStructure {
    pub dim: usize,
    pub product: Op,
    pub coproduct: Op,
    pub antipode: Op,
    pub unit: Op,
    pub counit: Op,
    pub braiding: Op,
}

impl HopfStructure {
    pub fn new(lambda: &Lambda) -> Self {
        Self {
            dim: lambda.dim(),
            product: lambda.product().clone(),
            coproduct: lambda.coproduct().clone(),
            antipode: lambda.antipode().clone(),
            unit: lambda.unit().clone(),
            counit: lambda.counit().clone(),
            braiding: hat_tau_moy(lambda).clone(),
        }
    }
}

/// Associativity, coassociativity, (co)unitality, the antipode axiom and
/// braided compatibility of the coproduct with the product.
pub fn verify_hopf(n: usize) -> Result<VerificationReport> {
    check_dim(n, 3)?;
    let lambda = Lambda::new(n)?;
    Ok(verify_hopf_structure(&HopfStructure::new(&lambda)))
}

pub fn verify_hopf_structure(h: &HopfStructure) -> VerificationReport {
    let n = h.dim;
    let (m, d, s, u, e, b) = (
        &h.product,
        &h.coproduct,
        &h.antipode,
        &h.unit,
        &h.counit,
        &h.braiding,
    );
    let (d1, d2, d3) = (domain(n, 1, None), domain(n, 2, None), domain(n, 3, None));
    let p = Pipeline::new;
    VerificationReport::timed("hopf", json!({ "dim": n }), || {
        vec![
            pipelines(
                "associativity",
                &d3,
                p().then(m, 0).then(m, 0),
                p().then(m, 1).then(m, 0),
            ),
            pipelines(
                "coassociativity",
                &d1,
                p().then(d, 0).then(d, 0),
                p().then(d, 0).then(d, 1),
            ),
            pipelines("left unitality", &d1, p().then(u, 0).then(m, 0), p()),
            pipelines("right unitality", &d1, p().then(u, 1).then(m, 0), p()),
            pipelines("left counitality", &d1, p().then(d, 0).then(e, 0), p()),
            pipelines("right counitality", &d1, p().then(d, 0).then(e, 1), p()),
            pipelines(
                "right antipode",
                &d1,
                p().then(d, 0).then(s, 1).then(m, 0),
                p().then(e, 0).then(u, 0),
            ),
            pipelines(
                "left antipode",
                &d1,
                p().then(d, 0).then(s, 0).then(m, 0),
                p().then(e, 0).then(u, 0),
            ),
            pipelines(
                "compatibility",
                &d2,
                p().then(d, 0).then(d, 2).then(b, 1).then(m, 0).then(m, 1),
                p().then(m, 0).then(d, 0),
            ),
        ]
    })
}

/// Sliding of unit, counit, product, coproduct and antipode through the
/// braiding and its inverse, the fusion relation, the expression of the
/// braiding through structure maps, the antipode-braiding relation and
/// the action on `f_{E,F}` with `E < F`.
pub fn verify_naturality(n: usize) -> Result<VerificationReport> {
    check_dim(n, 3)?;
    let lambda = Lambda::new(n)?;
    let tau = hat_tau_moy(&lambda);
    let inv = inverse_braiding(&lambda)?;
    let (m, d, s, u, e) = (
        lambda.product(),
        lambda.coproduct(),
        lambda.antipode(),
        lambda.unit(),
        lambda.counit(),
    );
    let (d1, d2, d3) = (domain(n, 1, None), domain(n, 2, None), domain(n, 3, None));
    let d4 = domain(n, 4, Some(n));
    let p = Pipeline::new;
    Ok(VerificationReport::timed(
        "naturality",
        json!({ "dim": n, "fusion_degree_cap": n }),
        || {
            let mut checks = Vec::new();
            for (label, b) in [("braiding", tau), ("inverse braiding", &inv)] {
                checks.extend([
                    pipelines(
                        &format!("unit left, {label}"),
                        &d1,
                        p().then(u, 0).then(b, 0),
                        p().then(u, 1),
                    ),
                    pipelines(
                        &format!("unit right, {label}"),
                        &d1,
                        p().then(u, 1).then(b, 0),
                        p().then(u, 0),
                    ),
                    pipelines(
                        &format!("counit left, {label}"),
                        &d2,
                        p().then(b, 0).then(e, 0),
                        p().then(e, 1),
                    ),
                    pipelines(
                        &format!("counit right, {label}"),
                        &d2,
                        p().then(b, 0).then(e, 1),
                        p().then(e, 0),
                    ),
                    pipelines(
                        &format!("product left, {label}"),
                        &d3,
                        p().then(m, 0).then(b, 0),
                        p().then(b, 1).then(b, 0).then(m, 1),
                    ),
                    pipelines(
                        &format!("product right, {label}"),
                        &d3,
                        p().then(m, 1).then(b, 0),
                        p().then(b, 0).then(b, 1).then(m, 0),
                    ),
                    pipelines(
                        &format!("coproduct left, {label}"),
                        &d2,
                        p().then(b, 0).then(d, 0),
                        p().then(d, 1).then(b, 0).then(b, 1),
                    ),
                    pipelines(
                        &format!("coproduct right, {label}"),
                        &d2,
                        p().then(b, 0).then(d, 1),
                        p().then(d, 0).then(b, 1).then(b, 0),
                    ),
                    pipelines(
                        &format!("antipode left, {label}"),
                        &d2,
                        p().then(s, 0).then(b, 0),
                        p().then(b, 0).then(s, 1),
                    ),
                    pipelines(
                        &format!("antipode right, {label}"),
                        &d2,
                        p().then(s, 1).then(b, 0),
                        p().then(b, 0).then(s, 0),
                    ),
                ]);
            }
            checks.push(pipelines(
                "fusion",
                &d4,
                p().then(m, 0).then(m, 1).then(tau, 0),
                p().then(tau, 1)
                    .then(tau, 0)
                    .then(tau, 2)
                    .then(tau, 1)
                    .then(m, 0)
                    .then(m, 1),
            ));
            checks.push(pipelines(
                "structure-map expression",
                &d2,
                p().then(tau, 0),
                p().then(d, 0)
                    .then(d, 2)
                    .then(s, 0)
                    .then(m, 1)
                    .then(d, 1)
                    .then(s, 3)
                    .then(m, 0)
                    .then(m, 1),
            ));
            checks.push(pipelines(
                "antipode-braiding",
                &d2,
                p().then(m, 0).then(s, 0),
                p().then(s, 0).then(s, 1).then(tau, 0).then(m, 0),
            ));
            checks.push(ordered_pairs_check(&lambda));
            checks
        },
    ))
}

/// `τ̂ f_{E,F} = (-p)^{|E||F|} f_{F,E}` whenever `E < F`.
fn ordered_pairs_check(lambda: &Lambda) -> Check {
    let tau = hat_tau_moy(lambda);
    let subs: Vec<SubsetMask> = lambda.order().subsets().collect();
    let mut cases = Vec::new();
    for &e in &subs {
        for &f in &subs {
            if e.precedes(f) {
                let k = e.len() * f.len();
                let c = LaurentPoly::monomial(if k % 2 == 0 { 1 } else { -1 }, k as i32, 0);
                cases.push((
                    basis_to_string(&[e, f]),
                    tau.apply_basis(&[e, f]),
                    Tensor::term(&[f, e], c),
                ));
            }
        }
    }
    scalars("ordered pairs", cases)
}

/// `τ'τ''τ' = τ''τ'τ''` on the given arity-3 domain.
pub fn verify_ybe_on(name: &str, op: &Op, domain: &[Basis]) -> VerificationReport {
    assert_eq!(
        (op.domain_arity(), op.codomain_arity()),
        (2, 2),
        "braid relation needs an arity-2 operator"
    );
    VerificationReport::timed(
        "ybe",
        json!({ "operator": name, "dim": op.dim(), "inputs": domain.len() }),
        || {
            let p = Pipeline::new;
            vec![pipelines(
                "braid relation",
                domain,
                p().then(op, 0).then(op, 1).then(op, 0),
                p().then(op, 1).then(op, 0).then(op, 1),
            )]
        },
    )
}

pub fn verify_ybe(name: &str, op: &Op) -> VerificationReport {
    verify_ybe_on(name, op, &domain(op.dim(), 3, None))
}

/// Braid relations for `τ` on `V^{⊗3}`, and for `τ̂` and `ρ` on
/// `Λ^{⊗3}`, plus degree preservation and agreement of the two braiding
/// constructions.
pub fn verify_braidings(n: usize) -> Result<Vec<VerificationReport>> {
    check_dim(n, 3)?;
    let lambda = Lambda::new(n)?;
    let tau = hat_tau_moy(&lambda);
    let mut reports = vec![
        verify_ybe_on("tau", &tau_operator(n), &v_tuples(n, 3)),
        verify_ybe("hat_tau", tau),
        verify_ybe("rho", rho_operator_form(&lambda)),
    ];
    reports.push(VerificationReport::timed(
        "braiding constructions",
        json!({ "dim": n }),
        || {
            let degrees = lambda
                .order()
                .subsets()
                .flat_map(|e| lambda.order().subsets().map(move |f| (e, f)))
                .find_map(|(e, f)| {
                    let img = tau.apply_basis(&[e, f]);
                    let moved = img
                        .iter()
                        .any(|(b, _)| b[0].len() != f.len() || b[1].len() != e.len());
                    moved.then(|| format!("on {}: image {img}", basis_to_string(&[e, f])))
                });
            vec![
                Check::new("degree preservation", degrees),
                ops("hat_tau two ways", tau, &hat_tau_coeff(&lambda)),
                ops(
                    "rho two ways",
                    rho_operator_form(&lambda),
                    &rho_coeff_form(&lambda),
                ),
                ops(
                    "B two ways",
                    &lambda.op_b_structure(),
                    &lambda.op_b_exponential(),
                ),
            ]
        },
    ));
    Ok(reports)
}

/// `(τ + 1)(τ - p) = 0` on `V ⊗ V`, and the eigenvectors of `τ`.
pub fn verify_hecke(n: usize) -> Result<VerificationReport> {
    check_dim(n, 5)?;
    let tau = tau_operator(n);
    let pairs = v_tuples(n, 2);
    let minus_one = LaurentPoly::constant(-1);
    Ok(VerificationReport::timed(
        "hecke",
        json!({ "dim": n }),
        || {
            let quadratic = compare(
                &pairs,
                |x| {
                    let y = tau.apply(x).sub(&x.scale(&LaurentPoly::p()));
                    tau.apply(&y).add(&y)
                },
                |_| Tensor::zero(2),
            );
            let v = |i: usize| SubsetMask::singleton(i);
            let mut eigen = Vec::new();
            for a in 1..=n {
                eigen.push((Tensor::basis(&[v(a), v(a)]), minus_one.clone()));
                for b in a + 1..=n {
                    eigen.push((
                        Tensor::basis(&[v(a), v(b)]).add(&Tensor::basis(&[v(b), v(a)])),
                        minus_one.clone(),
                    ));
                    eigen.push((
                        Tensor::basis(&[v(a), v(b)])
                            .sub(&Tensor::term(&[v(b), v(a)], LaurentPoly::p())),
                        LaurentPoly::p(),
                    ));
                }
            }
            let eigen_cx = eigen
                .iter()
                .map(|(x, lam)| (format!("{x}"), tau.apply(x), x.scale(lam)))
                .collect::<Vec<_>>();
            vec![
                Check::new("quadratic relation", quadratic),
                scalars("eigenvectors", eigen_cx),
            ]
        },
    ))
}

/// Dimension of the space of primitive elements of degree `d`:
/// `Δx = x ⊗ f_∅ + f_∅ ⊗ x`, solved over the fraction field.
pub fn primitive_dimension(lambda: &Lambda, d: usize) -> Result<usize> {
    let unknowns = k_subsets(lambda.order().full(), d);
    let empty = SubsetMask::EMPTY;
    let images: Vec<Tensor<LaurentPoly>> = unknowns
        .iter()
        .map(|&e| {
            lambda
                .coproduct()
                .apply_basis(&[e])
                .sub(&Tensor::basis(&[e, empty]))
                .sub(&Tensor::basis(&[empty, e]))
        })
        .collect();
    let mut rows: Vec<Basis> = images
        .iter()
        .flat_map(|t| t.iter().map(|(b, _)| b.clone()))
        .collect();
    rows.sort();
    rows.dedup();
    if rows.is_empty() {
        return Ok(unknowns.len());
    }
    let a: Vec<Vec<RationalFn>> = rows
        .iter()
        .map(|r| {
            images
                .iter()
                .map(|t| RationalFn::from(t.coeff(r)))
                .collect()
        })
        .collect();
    match solve_linear(&a, &vec![RationalFn::zero(); rows.len()])? {
        LinearSolution::Consistent { nullspace, .. } => Ok(nullspace.len()),
        LinearSolution::Inconsistent => unreachable!("homogeneous systems are consistent"),
    }
}

/// No primitive elements in degrees `2..=N`.
pub fn verify_nichols_primitives(n: usize) -> Result<VerificationReport> {
    check_dim(n, 3)?;
    let lambda = Lambda::new(n)?;
    let dims = (2..=n)
        .map(|d| Ok((d, primitive_dimension(&lambda, d)?)))
        .collect::<Result<Vec<_>>>()?;
    let params = json!({
        "dim": n,
        "primitive_dimensions": dims.iter().map(|(d, k)| json!({ "degree": d, "dimension": k })).collect::<Vec<_>>(),
    });
    Ok(VerificationReport::timed("nichols", params, || {
        dims.iter()
            .map(|&(d, k)| {
                Check::new(
                    format!("degree {d}"),
                    (k != 0).then(|| format!("{k} primitive directions")),
                )
            })
            .collect()
    }))
}

/// Structural identities: the `U_q(gl_2)` relations of `T1, T2, L, R` and
/// the bubble identities.
pub fn verify_structure(n: usize) -> Result<VerificationReport> {
    check_dim(n, 4)?;
    let lambda = Lambda::new(n)?;
    Ok(VerificationReport::timed(
        "structure",
        json!({ "dim": n }),
        || {
            let mut checks = gl2_checks(&lambda);
            checks.push(bubble_check(&lambda));
            checks
        },
    ))
}

fn gl2_checks(lambda: &Lambda) -> Vec<Check> {
    let (t1, t2, l, r) = (lambda.op_t1(), lambda.op_t2(), lambda.op_l(), lambda.op_r());
    let p = LaurentPoly::p();
    let comm = r.compose(l).sub(&l.compose(r));
    // (1 - p)(RL - LR) = T1 - T2
    vec![
        ops("T1 L = p L T1", &t1.compose(l), &l.compose(&t1).scale(&p)),
        ops("L T2 = p T2 L", &l.compose(&t2), &t2.compose(l).scale(&p)),
        ops("T2 R = p R T2", &t2.compose(r), &r.compose(&t2).scale(&p)),
        ops("R T1 = p T1 R", &r.compose(&t1), &t1.compose(r).scale(&p)),
        ops("T1 T2 = T2 T1", &t1.compose(&t2), &t2.compose(&t1)),
        ops(
            "RL - LR",
            &comm.scale(&(&LaurentPoly::one() - &p)),
            &t1.sub(&t2),
        ),
    ]
}

/// `∇ Δ_{k)} π_n = qbinom(n, k) π_n = ∇ Δ_{(k} π_n`.
fn bubble_check(lambda: &Lambda) -> Check {
    let n = lambda.dim();
    let mut cases = Vec::new();
    for deg in 0..=n {
        let pi = lambda.projector(deg);
        for k in 0..=deg {
            let rhs = pi.scale(&qbinom(deg, k).expect("k <= n"));
            let left = lambda.product().compose(&lambda.delta_left(k)).compose(&pi);
            let right = lambda
                .product()
                .compose(&lambda.delta_right(k))
                .compose(&pi);
            cases.push((format!("n={deg} k={k} left"), left, rhs.clone()));
            cases.push((format!("n={deg} k={k} right"), right, rhs));
        }
    }
    let cx = cases.into_iter().find_map(|(at, l, r)| {
        l.diff(&r).map(|m| {
            format!(
                "at {at} on {}: lhs {}, rhs {}",
                basis_to_string(&m.input),
                m.lhs,
                m.rhs
            )
        })
    });
    Check::new(format!("bubble (N={n})"), cx)
}

/// `R^{<m>} L^{<n>} = Σ_k (1/(p)_k) L^{<n-k>} R^{<m-k>} ∏_j (T1 p^{k-m} - T2 p^{j-n})`.
fn rl_commutation_check(lambda: &Lambda, max: usize) -> Check {
    let dom = domain(lambda.dim(), 2, None);
    let cx = (0..=max)
        .flat_map(|m| (0..=max).map(move |n| (m, n)))
        .find_map(|(m, n)| {
            let lhs = lambda
                .divided_power(Mover::R, m)
                .compose(lambda.divided_power(Mover::L, n));
            let rhs = |x: &Tensor<RationalFn>| {
                let mut out = Tensor::zero(2);
                for (b, c) in x.iter() {
                    let (de, df) = (b[0].len() as i32, b[1].len() as i32);
                    for k in 0..=m.min(n) {
                        let ki = k as i32;
                        let diag: LaurentPoly = (1..=ki)
                            .map(|j| {
                                &LaurentPoly::p_pow(de + ki - m as i32)
                                    - &LaurentPoly::p_pow(df + j - n as i32)
                            })
                            .product();
                        let coeff = &(c * &RationalFn::from(diag))
                            / &RationalFn::from(qpochhammer(&LaurentPoly::p(), k));
                        let moved = lambda
                            .divided_power(Mover::L, n - k)
                            .compose(lambda.divided_power(Mover::R, m - k))
                            .apply_basis(b)
                            .map_coeffs(|c| RationalFn::from(c));
                        out.add_scaled(&moved, &coeff);
                    }
                }
                out
            };
            compare(
                &dom,
                |x| {
                    lhs.apply(&x.try_map_coeffs(|c| c.to_laurent()).expect("basis"))
                        .map_coeffs(|c| RationalFn::from(c))
                },
                rhs,
            )
            .map(|cx| format!("m={m} n={n} {cx}"))
        });
    Check::new(format!("RL commutation (N={})", lambda.dim()), cx)
}

/// Bounds for [`verify_lemma_suite`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaRanges {
    /// Subset q-binomial identity for `n` up to this.
    pub subset_n: usize,
    /// Bubble identities for `N` up to this.
    pub bubble_dim: usize,
    /// Double summation formula for `i, j` up to this.
    pub sum_max: usize,
    /// RL commutation for `m, n` up to this ...
    pub rl_max: usize,
    /// ... at `N` up to this.
    pub rl_dim: usize,
    /// Right-action identities for `N` up to this.
    pub action_dim: usize,
    /// θ-symbol identities and the α support exhaustively for `N` up to this.
    pub theta_dim: usize,
}

impl Default for LemmaRanges {
    fn default() -> Self {
        Self {
            subset_n: 8,
            bubble_dim: 4,
            sum_max: 6,
            rl_max: 3,
            rl_dim: 3,
            action_dim: 3,
            theta_dim: 6,
        }
    }
}

impl LemmaRanges {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str, v: usize, max: usize| {
            Err(Error::InvalidRange(format!(
                "{what} = {v} is outside the supported range 1..={max}"
            )))
        };
        let bounded = [
            ("subset_n", self.subset_n, MAX_DIM),
            ("bubble_dim", self.bubble_dim, 5),
            ("sum_max", self.sum_max, 12),
            ("rl_max", self.rl_max, 6),
            ("rl_dim", self.rl_dim, 4),
            ("action_dim", self.action_dim, 3),
            ("theta_dim", self.theta_dim, 8),
        ];
        for (what, v, max) in bounded {
            if v == 0 || v > max {
                return bad(what, v, max);
            }
        }
        Ok(())
    }
}

/// Individual families of the lemma suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    SubsetQBinomial,
    Bubble,
    SummationFormula,
    RlCommutation,
    RightAction,
    Theta,
}

impl Lemma {
    pub const ALL: [Lemma; 6] = [
        Lemma::SubsetQBinomial,
        Lemma::Bubble,
        Lemma::SummationFormula,
        Lemma::RlCommutation,
        Lemma::RightAction,
        Lemma::Theta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::SubsetQBinomial => "subset q-binomial",
            Lemma::Bubble => "bubble",
            Lemma::SummationFormula => "summation formula",
            Lemma::RlCommutation => "RL commutation",
            Lemma::RightAction => "right action",
            Lemma::Theta => "theta",
        }
    }

    fn checks(self, r: &LemmaRanges) -> Result<Vec<Check>> {
        Ok(match self {
            Lemma::SubsetQBinomial => vec![subset_qbinom_check(r.subset_n)],
            Lemma::Bubble => (1..=r.bubble_dim)
                .map(|n| Ok(bubble_check(&Lambda::new(n)?)))
                .collect::<Result<_>>()?,
            Lemma::SummationFormula => summation_checks(r.sum_max),
            Lemma::RlCommutation => (1..=r.rl_dim)
                .map(|n| Ok(rl_commutation_check(&Lambda::new(n)?, r.rl_max)))
                .collect::<Result<_>>()?,
            Lemma::RightAction => {
                let mut checks = vec![pochhammer_split_check(2 * r.action_dim + 2)];
                for n in 1..=r.action_dim {
                    checks.extend(right_action_checks(&Lambda::new(n)?));
                }
                checks
            }
            Lemma::Theta => theta_checks(r.theta_dim),
        })
    }
}

pub fn verify_lemma(lemma: Lemma, ranges: &LemmaRanges) -> Result<VerificationReport> {
    ranges.validate()?;
    let checks = lemma.checks(ranges)?;
    Ok(VerificationReport::timed(
        lemma.name(),
        json!(ranges),
        || checks,
    ))
}

pub fn verify_lemma_suite(ranges: &LemmaRanges) -> Result<VerificationReport> {
    ranges.validate()?;
    let start = Instant::now();
    let groups: Vec<Result<Vec<Check>>> = Lemma::ALL.par_iter().map(|l| l.checks(ranges)).collect();
    let mut checks = Vec::new();
    for g in groups {
        checks.extend(g?);
    }
    Ok(VerificationReport {
        name: "lemmas".into(),
        params: json!(ranges),
        checks,
        wall_time: start.elapsed(),
    })
}

/// `Σ_{A ⊆ E, |A| = k} p^{θ_{A, E∖A}} = qbinom(n, k)` with `|E| = n`.
fn subset_qbinom_check(max: usize) -> Check {
    let cases = (0..=max).flat_map(|n| {
        let e = SubsetMask::full(n);
        (0..=n).map(move |k| {
            let lhs: LaurentPoly = k_subsets(e, k)
                .into_iter()
                .map(|a| LaurentPoly::p_pow(theta(a, e.difference(a)) as i32))
                .sum();
            (format!("n={n} k={k}"), lhs, qbinom(n, k).expect("k <= n"))
        })
    });
    scalars("subset q-binomial", cases.collect::<Vec<_>>())
}

fn summation_checks(max: usize) -> Vec<Check> {
    let p = LaurentPoly::p();
    let r = |x: LaurentPoly| RationalFn::from(x);
    let poch = |k: usize| r(qpochhammer(&p, k));
    let mut lemma5 = Vec::new();
    for i in 0..=max {
        for j in 0..=max {
            let mut z = RationalFn::zero();
            for k in 0..=i {
                let outer = &qbinom(i, k).expect("k <= i") * &gauss_gamma(k);
                let x = LaurentPoly::p_pow(i as i32 - j as i32 - k as i32);
                for l in 0..=j {
                    let num = &(&outer * &qpochhammer(&x, l)) * &LaurentPoly::p_pow(l as i32);
                    z = &z + &(&r(num) / &poch(l));
                }
            }
            let expected = if i == j {
                RationalFn::one()
            } else {
                RationalFn::zero()
            };
            lemma5.push((format!("i={i} j={j}"), z, expected));
        }
    }
    let series = (0..=max).map(|n| {
        let lhs = (0..=n).fold(RationalFn::zero(), |acc, m| {
            &acc + &(&r(LaurentPoly::p_pow(m as i32)) / &poch(m))
        });
        (format!("n={n}"), lhs, &RationalFn::one() / &poch(n))
    });
    let x = LaurentPoly::t();
    let binomial = (0..=max).map(|n| {
        let rhs: LaurentPoly = (0..=n)
            .map(|m| &(&qbinom(n, m).expect("m <= n") * &gauss_gamma(m)) * &x.pow(m as u32))
            .sum();
        (format!("n={n}"), qpochhammer(&x, n), rhs)
    });
    vec![
        scalars("double summation", lemma5),
        scalars("summation formula", series.collect::<Vec<_>>()),
        scalars("q-binomial formula", binomial.collect::<Vec<_>>()),
    ]
}

/// `(x; p)_{m+n} = (x; p)_m (x p^m; p)_n`.
fn pochhammer_split_check(max: usize) -> Check {
    let t = LaurentPoly::t();
    let cases = (0..=max).flat_map(|m| {
        let t = t.clone();
        (0..=max - m).map(move |n| {
            let rhs = &qpochhammer(&t, m) * &qpochhammer(&t.shift(m as i32, 0), n);
            (format!("m={m} n={n}"), qpochhammer(&t, m + n), rhs)
        })
    });
    scalars("pochhammer splitting", cases.collect::<Vec<_>>())
}

/// `λ_R` from the structure maps equals its closed form, and it is a unital
/// right module action.
fn right_action_checks(lambda: &Lambda) -> Vec<Check> {
    let n = lambda.dim();
    let act = right_action_op(lambda);
    let m = lambda.product();
    let p = Pipeline::new;
    vec![
        ops(
            &format!("right action closed form (N={n})"),
            &right_action_raw(lambda),
            &act,
        ),
        pipelines(
            &format!("right action associativity (N={n})"),
            &domain(n, 3, None),
            p().then(&act, 0).then(&act, 0),
            p().then(m, 1).then(&act, 0),
        ),
        pipelines(
            &format!("right action unit (N={n})"),
            &domain(n, 1, None),
            p().then(lambda.unit(), 1).then(&act, 0),
            p(),
        ),
    ]
}

fn theta_checks(max: usize) -> Vec<Check> {
    let full = SubsetMask::full(max);
    let all = subsets(full);
    let symmetry = all
        .iter()
        .flat_map(|&a| all.iter().map(move |&b| (a, b)))
        .find_map(|(a, b)| {
            let lhs = theta(a, b) + theta(b, a);
            let rhs = a.len() * b.len() - a.intersection(b).len();
            (lhs != rhs).then(|| format!("A={a} B={b}: {lhs} vs {rhs}"))
        });
    // pairwise disjoint triples: base-4 digit per element, 3 meaning none
    let cocycle = (0..4usize.pow(max as u32))
        .map(|code| {
            let mut sets = [SubsetMask::EMPTY; 3];
            for i in 1..=max {
                let digit = (code >> (2 * (i - 1))) & 3;
                if digit < 3 {
                    sets[digit] = sets[digit].union(SubsetMask::singleton(i));
                }
            }
            sets
        })
        .find_map(|[a, b, c]| {
            let lhs = theta(a, b) + theta(a.union(b), c);
            let rhs = theta(a, b.union(c)) + theta(b, c);
            (lhs != rhs).then(|| format!("A={a} B={b} C={c}: {lhs} vs {rhs}"))
        });
    let support = all
        .iter()
        .flat_map(|&g| all.iter().map(move |&h| (g, h)))
        .filter(|(g, h)| g.is_disjoint(*h))
        .find_map(|(g, h)| {
            let nonzero = !alpha(g, h).is_zero();
            (nonzero != alpha_nonvanishing(g, h))
                .then(|| format!("G={g} H={h}: alpha = {}", alpha(g, h)))
        });
    vec![
        Check::new(format!("theta symmetry (N={max})"), symmetry),
        Check::new(format!("theta cocycle (N={max})"), cocycle),
        Check::new(format!("alpha support (N={max})"), support),
    ]
}

/// Which verification suite to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Hopf,
    Ybe,
    Hecke,
    Lemmas,
    Nichols,
    All,
}

/// Runs a suite at dimension `n`. Families whose dimension bound is below
/// `n` are run at their bound instead.
pub fn run_suite(suite: Suite, n: usize) -> Result<Vec<VerificationReport>> {
    check_dim(n, MAX_DIM)?;
    let mut reports = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Hopf {
        reports.push(verify_hopf(n.min(3))?);
        reports.push(verify_naturality(n.min(3))?);
        reports.push(verify_structure(n.min(3))?);
    }
    if all || suite == Suite::Ybe {
        reports.extend(verify_braidings(n.min(3))?);
    }
    if all || suite == Suite::Hecke {
        reports.push(verify_hecke(n.min(5))?);
    }
    if all || suite == Suite::Lemmas {
        reports.push(verify_lemma_suite(&LemmaRanges::default())?);
    }
    if all || suite == Suite::Nichols {
        reports.push(verify_nichols_primitives(n.min(3))?);
    }
    Ok(reports)
}
