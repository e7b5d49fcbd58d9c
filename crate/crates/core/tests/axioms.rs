use lambdap::axioms::{
    primitive_dimension, run_suite, verify_hopf, verify_hopf_structure, verify_lemma,
    HopfStructure, Lemma, LemmaRanges, Suite,
};
use lambdap::combin::{alpha, alpha_nonvanishing, subsets, theta, BasisOrder, SubsetMask};
use lambdap::lambda::{basis, Lambda, Operator, Tensor};
use lambdap::{Error, LaurentPoly};

/// Coproduct with `p` in place of `-p`.
fn unsigned_coproduct(n: usize) -> Operator<LaurentPoly> {
    Operator::from_fn(n, 1, 2, |b| {
        let e = b[0];
        Tensor::from_terms(
            2,
            subsets(e).into_iter().map(|a| {
                let rest = e.difference(a);
                (basis(&[a, rest]), LaurentPoly::p_pow(theta(a, rest) as i32))
            }),
        )
    })
}

#[test]
fn corrupted_coproduct_is_caught() {
    let lambda = Lambda::new(2).unwrap();
    let mut h = HopfStructure::new(&lambda);
    assert!(verify_hopf_structure(&h).passed());
    h.coproduct = unsigned_coproduct(2);
    let report = verify_hopf_structure(&h);
    assert!(!report.passed());
    let cx = report.counterexample().expect("counterexample");
    assert!(cx.contains("f["), "{cx}");
}

#[test]
fn hopf_axioms_hold() {
    for n in 1..=3 {
        let r = verify_hopf(n).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks.len(), 9);
    }
}

#[test]
fn alpha_support_matches_positivity_criterion() {
    for n in 1..=6 {
        let order = BasisOrder::new(n).unwrap();
        for g in order.subsets() {
            for h in order.subsets().filter(|h| h.is_disjoint(g)) {
                assert_eq!(
                    !alpha(g, h).is_zero(),
                    alpha_nonvanishing(g, h),
                    "G={g}, H={h}"
                );
            }
        }
    }
}

/// Injectivity of `a -> θ_{a,H}` on `G` as a nonvanishing test.
fn injective(g: SubsetMask, h: SubsetMask) -> bool {
    let mut seen: Vec<usize> = g.singletons().map(|a| theta(a, h)).collect();
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1])
}

#[test]
fn injectivity_alone_does_not_decide_alpha() {
    let g = SubsetMask::from_elements(&[3, 4]).unwrap();
    let h = SubsetMask::from_elements(&[1, 2]).unwrap();
    assert!(!injective(g, h));
    assert!(!alpha(g, h).is_zero());
}

#[test]
fn lemma_ranges_are_validated() {
    let bad = LemmaRanges {
        theta_dim: 9,
        ..LemmaRanges::default()
    };
    assert!(matches!(
        verify_lemma(Lemma::Theta, &bad),
        Err(Error::InvalidRange(_))
    ));
    let zero = LemmaRanges {
        subset_n: 0,
        ..LemmaRanges::default()
    };
    assert!(matches!(
        verify_lemma(Lemma::SubsetQBinomial, &zero),
        Err(Error::InvalidRange(_))
    ));
}

#[test]
fn small_lemma_ranges_pass() {
    let ranges = LemmaRanges {
        subset_n: 4,
        bubble_dim: 2,
        sum_max: 3,
        rl_max: 2,
        rl_dim: 2,
        action_dim: 2,
        theta_dim: 4,
    };
    for lemma in Lemma::ALL {
        let r = verify_lemma(lemma, &ranges).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn suites_pass_at_dimension_two() {
    for suite in [Suite::Hopf, Suite::Ybe, Suite::Hecke, Suite::Nichols] {
        for r in run_suite(suite, 2).unwrap() {
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn generators_are_the_only_primitives() {
    for n in 1..=3 {
        let lambda = Lambda::new(n).unwrap();
        assert_eq!(primitive_dimension(&lambda, 1).unwrap(), n);
        for d in 2..=n {
            assert_eq!(
                primitive_dimension(&lambda, d).unwrap(),
                0,
                "N={n}, degree {d}"
            );
        }
    }
}
