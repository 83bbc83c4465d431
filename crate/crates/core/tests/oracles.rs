//! Closed-form oracles computed independently of the library's bracket code.

use qdeform::contraction::{build_aq_rep, ck_contract, CkPrefactor};
use qdeform::linop::InteriorWindow;
use qdeform::qnum::{Deformation, GenBracketParams};
use qdeform::reps::{build_fock_osc, build_spin_rep, OscKind, SpinBase};
use qdeform::schwinger::schwinger_build;
use qdeform::truncation::{check_positivity, lambda_seq, solve_truncation, TruncationProblem};
use qdeform::Complex64;

#[test]
fn brackets_match_trig_and_hyperbolic_forms() {
    for eps in [0.3, 0.7, 2.0, 4.0] {
        let d = Deformation::unit_circle(eps).unwrap();
        for x in [-2.5, 0.0, 0.4, 3.0, 7.25] {
            let oracle = (eps * x).sin() / eps.sin();
            assert!((d.bracket_re(x) - Complex64::new(oracle, 0.0)).norm() < 1e-12, "eps={eps} x={x}");
        }
    }
    let h = 1.3f64.ln();
    let d = Deformation::real(1.3).unwrap();
    for x in [-2.0, 0.5, 4.0] {
        assert!((d.bracket_re(x).re - (h * x).sinh() / h.sinh()).abs() < 1e-12);
    }
    let g = GenBracketParams::real(1.2, 0.3);
    for x in [0.0, 1.0, 2.5] {
        let oracle = (1.3f64.powf(1.2 * x) - 1.3f64.powf(0.3 * x)) / (1.3f64.powf(1.2) - 1.3f64.powf(0.3));
        assert!((d.bracket_gen(g, Complex64::new(x, 0.0)).unwrap().re - oracle).abs() < 1e-12);
    }
}

#[test]
fn schwinger_commutator_on_fock_states_by_hand() {
    // [J₊, J₋]|n_a, n_b⟩ = ([n_a][n_b + 1] − [n_a + 1][n_b])|n_a, n_b⟩ for Fock MB modes.
    let q: f64 = 1.3;
    let br = |x: f64| (q.powf(x) - q.powf(-x)) / (q - 1.0 / q);
    let d = Deformation::real(q).unwrap();
    let a = build_fock_osc(OscKind::MB, d, None, 5).unwrap();
    let s = schwinger_build(&a, &a).unwrap();
    let comm = &(&s.jp * &s.jm) - &(&s.jm * &s.jp);
    for na in 1..4 {
        for nb in 1..4 {
            let i = na * 5 + nb;
            let oracle = br(na as f64) * br(nb as f64 + 1.0) - br(na as f64 + 1.0) * br(nb as f64);
            assert!((comm.get(i, i).re - oracle).abs() < 1e-12);
            // and this is [2J₀] = [n_a − n_b]
            assert!((oracle - br(na as f64 - nb as f64)).abs() < 1e-12);
        }
    }
}

#[test]
fn spin_half_is_pauli_like() {
    let d = Deformation::real(1.7).unwrap();
    let s = build_spin_rep(0.5, SpinBase::Q(d)).unwrap();
    assert!((s.jp.get(1, 0) - 1.0).norm() < 1e-15);
    assert!((s.jm.get(0, 1) - 1.0).norm() < 1e-15);
}

#[test]
fn aq_coefficients_are_geometric_sums() {
    let q: f64 = 1.5;
    let aq = build_aq_rep(Deformation::real(q).unwrap(), 6).unwrap();
    for n in 1..6 {
        let oracle = (1.0 - q.powi(-2 * n as i32)) / (1.0 - q.powi(-2));
        assert!((aq.a.get(n - 1, n).re - oracle.sqrt()).abs() < 1e-13);
    }
}

#[test]
fn ck_residual_is_the_leftover_exponential() {
    let q: f64 = 1.5;
    let spin = build_spin_rep(3.0, SpinBase::Q(Deformation::real(q).unwrap())).unwrap();
    for (margin, m_low) in [(0usize, -3.0), (1, -2.0), (2, -1.0)] {
        let c = ck_contract(&spin, 10.0, CkPrefactor::Sqrt, InteriorWindow::symmetric(margin)).unwrap();
        let oracle = q.powf(-20.0 - 2.0 * m_low);
        assert!((c.residual - oracle).abs() < 1e-12, "margin {margin}: {} vs {oracle}", c.residual);
    }
}

#[test]
fn truncation_solution_and_margins() {
    let t = TruncationProblem::new(2, 0, 0.5).unwrap();
    let nu0 = solve_truncation(&t).unwrap();
    let br = |x: f64| (0.5 * x).sin() / 0.5f64.sin();
    assert!((br(nu0 + 3.0) - br(nu0)).abs() < 1e-12);
    let p = check_positivity(&t).unwrap();
    for (i, m) in p.margins.iter().enumerate() {
        assert!((m - (br(nu0 + i as f64 + 1.0) - br(nu0))).abs() < 1e-12);
    }
    let d = Deformation::unit_circle(0.5).unwrap();
    let l = lambda_seq(Complex64::new(nu0, 0.0), Complex64::new(0.0, 0.0), &d, 0..4).unwrap();
    assert!(l[3].norm() < 1e-12, "ladder closes after k = 2");
}
