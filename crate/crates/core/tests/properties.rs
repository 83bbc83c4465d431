use proptest::prelude::*;
use qdeform::holstein::{hp_build, hp_gen_build, verify_hp};
use qdeform::linop::InteriorWindow;
use qdeform::qnum::{Deformation, GenBracketParams};
use qdeform::reps::{build_fock_osc, build_general_osc, verify_osc_relations, OscKind, OscParams, OscRep};
use qdeform::schwinger::{schwinger_build, schwinger_tilde_build, verify_schwinger, TildeDressing};
use qdeform::truncation::{check_positivity, TruncationProblem};
use qdeform::Complex64;

fn deformation(real: bool, x: f64) -> Deformation {
    if real {
        Deformation::real(1.05 + x).unwrap()
    } else {
        Deformation::unit_circle(0.2 + x).unwrap()
    }
}

fn kind_strategy() -> impl Strategy<Value = OscKind> {
    prop_oneof![Just(OscKind::MB), Just(OscKind::HY), Just(OscKind::GMB), Just(OscKind::GHY)]
}

fn osc(kind: OscKind, d: Deformation, alpha: f64, beta: f64, nu0: f64, c: f64, dim: usize) -> OscRep {
    let mut p = OscParams::new(kind, d, dim);
    if kind.is_generalized() {
        p = p.with_gen(GenBracketParams::real(alpha, beta));
    }
    build_general_osc(p.with_casimir(Complex64::new(nu0, 0.0), Complex64::new(c, 0.0)).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oscillator_relations_hold_on_the_interior(
        kind in kind_strategy(), real in any::<bool>(), x in 0.0f64..0.9,
        alpha in 0.5f64..1.5, beta in -1.0f64..0.4, nu0 in -0.5f64..0.5, c in -0.4f64..0.4,
    ) {
        let r = osc(kind, deformation(real, x), alpha, beta, nu0, c, 7);
        let rep = verify_osc_relations(&r, InteriorWindow::symmetric(1), 1e-9).unwrap();
        prop_assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn schwinger_identities(
        kind in kind_strategy(), x in 0.0f64..0.6, alpha in 0.6f64..1.4, beta in -0.5f64..0.4, c in -0.3f64..0.3,
    ) {
        let r = osc(kind, deformation(true, x), alpha, beta, 0.3, c, 6);
        let rep = verify_schwinger(&schwinger_build(&r, &r).unwrap(), InteriorWindow::symmetric(1), 1e-9).unwrap();
        prop_assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        if kind.is_generalized() {
            let t = schwinger_tilde_build(&r, &r, TildeDressing::Half).unwrap();
            let rep = verify_schwinger(&t, InteriorWindow::symmetric(1), 1e-9).unwrap();
            prop_assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn holstein_identities_at_generic_j(
        kind in kind_strategy(), real in any::<bool>(), x in 0.0f64..0.8, j in 1.0f64..6.0, c in -0.3f64..0.3,
    ) {
        let r = osc(kind, deformation(real, x), 1.2, 0.3, 0.3, c, 7);
        let h = if kind.is_generalized() { hp_gen_build(&r, j) } else { hp_build(&r, j) }.unwrap();
        let rep = verify_hp(&h, InteriorWindow::symmetric(1), 1e-9).unwrap();
        prop_assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn feasibility_matches_sign_of_margins(eps in 0.05f64..3.1, k in 1u32..7, ell in 0i64..2) {
        let p = check_positivity(&TruncationProblem::new(k, ell, eps).unwrap()).unwrap();
        prop_assert_eq!(p.feasible, p.margins.iter().all(|&m| m >= -1e-12));
    }
}

#[test]
fn top_closure_without_window() {
    for d in [Deformation::real(1.4).unwrap(), Deformation::unit_circle(0.9).unwrap()] {
        for two_j in 1..=6 {
            let j = two_j as f64 / 2.0;
            for kind in [OscKind::MB, OscKind::HY] {
                let h = hp_build(&build_fock_osc(kind, d, None, two_j + 1).unwrap(), j).unwrap();
                let rep = verify_hp(&h, InteriorWindow::FULL, 1e-10).unwrap();
                assert!(rep.passed(), "{kind} j={j}: {rep:?}");
            }
        }
    }
}

#[test]
fn margin_zero_failures_are_flagged() {
    let d = Deformation::unit_circle(0.7).unwrap();
    let r = osc(OscKind::HY, d, 1.0, -1.0, 0.3, 0.2, 8);
    let rep = verify_osc_relations(&r, InteriorWindow::FULL, 1e-10).unwrap();
    assert!(!rep.passed());
    assert!(rep.failures().all(|c| c.notes.iter().any(|n| n.contains("truncation artifact"))));
}
