//! Two-mode Schwinger constructions `J₊ = a†b`, `J₋ = b†a`,
//! `J₀ = (N_a − N_b)/2`, `𝒞 = (N_a + N_b)/2` built from a pair of oscillator
//! reps of the same kind, and the tilde variant dressed by powers of `q^{N_b}`.
//!
//! Mode `a` is the first tensor factor. The right-hand sides in the verifiers
//! are assembled from the diagonals of `N_a ⊗ 1` and `1 ⊗ N_b` only, never
//! from the ladder coefficients used to build the system.
//!
//! When the two modes carry different Casimir values the verifiers use the
//! general form (mode-a Casimir wherever the derivation pairs it with mode-a
//! operators) and flag the report with [`MIXED_CASIMIR_NOTE`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linop::{commutator, diag_fn, diag_fn2, interior_residual, qcommutator, tensor, try_diag_fn2, InteriorWindow, Op};
use crate::qnum::{Deformation, GenBracketParams};
use crate::report::{Check, VerificationReport};
use crate::reps::{annotate_window, OscKind, OscRep, ONE};
use crate::{Error, Result};

pub const MIXED_CASIMIR_NOTE: &str = "mixed per-mode Casimirs: general form, extension beyond the single-Casimir identity";

const CASIMIR_EQ_TOL: f64 = 1e-14;
const REDUCTION_TOL: f64 = 1e-12;

/// Exponent used in the tilde dressing `q^{−κ(α+β)N_b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TildeDressing {
    /// κ = 1/2. The q-commutator identities hold with this dressing.
    #[default]
    Half,
    /// κ = 1, the dressing exponent as originally printed; kept for comparison
    /// (the identities fail with it whenever α + β ≠ 0).
    AsPrinted,
}

impl TildeDressing {
    fn factor(self) -> f64 {
        match self {
            TildeDressing::Half => 0.5,
            TildeDressing::AsPrinted => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeSystem {
    pub rep_a: OscRep,
    pub rep_b: OscRep,
    pub jp: Op,
    pub jm: Op,
    pub j0: Op,
    pub cas: Op,
    /// `Some` when the tilde dressing was applied.
    pub tilde: Option<TildeDressing>,
}

impl TwoModeSystem {
    pub fn kind(&self) -> OscKind {
        self.rep_a.kind()
    }

    pub fn deformation(&self) -> &Deformation {
        self.rep_a.deformation()
    }

    pub fn is_tilde(&self) -> bool {
        self.tilde.is_some()
    }

    /// `(N_a ⊗ 1, 1 ⊗ N_b)`.
    pub fn mode_numbers(&self) -> (Op, Op) {
        (
            tensor(&self.rep_a.n_op, &self.rep_b.identity()),
            tensor(&self.rep_a.identity(), &self.rep_b.n_op),
        )
    }

    pub fn identity(&self) -> Op {
        Op::identity(self.j0.basis().clone())
    }

    pub fn casimirs(&self) -> (Complex64, Complex64) {
        (self.rep_a.casimir, self.rep_b.casimir)
    }

    fn gen(&self) -> GenBracketParams {
        self.rep_a.params.gen.unwrap_or_else(GenBracketParams::symmetric)
    }

    fn is_mixed(&self) -> bool {
        let (ca, cb) = self.casimirs();
        (ca - cb).norm() > CASIMIR_EQ_TOL
    }

    fn describe(&self, rep: &mut VerificationReport) {
        let p = &self.rep_a.params;
        rep.param("kind", p.kind.to_string());
        rep.param_complex("q", p.d.q());
        if let Some(e) = p.d.epsilon() {
            rep.param("epsilon", e);
        }
        rep.param("dims", format!("{}x{}", self.rep_a.params.dim, self.rep_b.params.dim));
        let (ca, cb) = self.casimirs();
        rep.param_complex("casimir_a", ca);
        rep.param_complex("casimir_b", cb);
        if p.kind.is_generalized() {
            let g = self.gen();
            rep.param_complex("alpha", g.alpha);
            rep.param_complex("beta", g.beta);
        }
        if let Some(t) = self.tilde {
            rep.param("tilde_dressing", format!("{t:?}"));
        }
        if self.is_mixed() {
            rep.notes.push(MIXED_CASIMIR_NOTE.to_string());
        }
    }
}

fn check_compatible(a: &OscRep, b: &OscRep) -> Result<()> {
    if a.kind() != b.kind() {
        return Err(Error::KindMismatch {
            expected: a.kind().to_string(),
            found: b.kind().to_string(),
        });
    }
    if a.deformation() != b.deformation() {
        return Err(Error::Mismatch("the two modes must share one deformation".into()));
    }
    if a.params.gen != b.params.gen {
        return Err(Error::Mismatch("the two modes must share (alpha, beta)".into()));
    }
    Ok(())
}

fn number_ops(a: &OscRep, b: &OscRep) -> (Op, Op) {
    let na = tensor(&a.n_op, &b.identity());
    let nb = tensor(&a.identity(), &b.n_op);
    let half = Complex64::new(0.5, 0.0);
    ((&na - &nb).scale(half), (&na + &nb).scale(half))
}

/// Plain construction from two reps of one kind.
pub fn schwinger_build(rep_a: &OscRep, rep_b: &OscRep) -> Result<TwoModeSystem> {
    check_compatible(rep_a, rep_b)?;
    let jp = tensor(&rep_a.adag, &rep_b.a);
    let jm = tensor(&rep_a.a, &rep_b.adag);
    let (j0, cas) = number_ops(rep_a, rep_b);
    Ok(TwoModeSystem {
        rep_a: rep_a.clone(),
        rep_b: rep_b.clone(),
        jp,
        jm,
        j0,
        cas,
        tilde: None,
    })
}

/// Tilde construction `J̃₊ = q^{−κ(α+β)N_b} a†b`, `J̃₋ = b†a q^{−κ(α+β)N_b}` (GMB/GHY only).
pub fn schwinger_tilde_build(rep_a: &OscRep, rep_b: &OscRep, dressing: TildeDressing) -> Result<TwoModeSystem> {
    check_compatible(rep_a, rep_b)?;
    if !rep_a.kind().is_generalized() {
        return Err(Error::KindMismatch {
            expected: "GMB or GHY".into(),
            found: rep_a.kind().to_string(),
        });
    }
    let d = *rep_a.deformation();
    let s = rep_a.params.gen.expect("generalized kinds carry (alpha, beta)").sum();
    let nb = tensor(&rep_a.identity(), &rep_b.n_op);
    let dress = diag_fn(|y| d.qpow(-dressing.factor() * s * y), &nb)?;
    let jp = &dress * &tensor(&rep_a.adag, &rep_b.a);
    let jm = &tensor(&rep_a.a, &rep_b.adag) * &dress;
    let (j0, cas) = number_ops(rep_a, rep_b);
    Ok(TwoModeSystem {
        rep_a: rep_a.clone(),
        rep_b: rep_b.clone(),
        jp,
        jm,
        j0,
        cas,
        tilde: Some(dressing),
    })
}

/// Grading `[J₀, J±] = ±J±` and centrality `[𝒞, J±] = 0`.
fn push_grading(rep: &mut VerificationReport, s: &TwoModeSystem, label: &str, w: InteriorWindow, tol: f64) -> Result<()> {
    let raise = interior_residual(&commutator(&s.j0, &s.jp)?, &s.jp, w)?;
    let lower = interior_residual(&commutator(&s.j0, &s.jm)?, &(-&s.jm), w)?;
    rep.record(&format!("{label}_a_raise"), raise, tol);
    rep.record(&format!("{label}_a_lower"), lower, tol);
    let zero = Op::zeros(s.j0.basis().clone());
    let central = interior_residual(&commutator(&s.cas, &s.jp)?, &zero, w)?
        .max(interior_residual(&commutator(&s.cas, &s.jm)?, &zero, w)?);
    rep.record("sch_central", central, tol);
    Ok(())
}

fn require(s: &TwoModeSystem, kinds: &[OscKind], tilde: bool) -> Result<()> {
    if !kinds.contains(&s.kind()) || s.is_tilde() != tilde {
        let expected: Vec<String> = kinds.iter().map(|k| k.to_string()).collect();
        return Err(Error::KindMismatch {
            expected: format!("{}{}", expected.join("/"), if tilde { " (tilde)" } else { "" }),
            found: format!("{}{}", s.kind(), if s.is_tilde() { " (tilde)" } else { "" }),
        });
    }
    Ok(())
}

/// RHS of `[J₊, J₋]` for MB modes with Casimirs `(c_a, c_b)`.
///
/// Equal Casimirs give `{−𝒞₁(q − q⁻¹) + 1}[2J₀]`; otherwise
/// `[2J₀] + c_a q^{−2J₀} − c_b q^{2J₀}`.
pub fn mb_schwinger_rhs(s: &TwoModeSystem, c_a: Complex64, c_b: Complex64) -> Result<Op> {
    let d = *s.deformation();
    let (na, nb) = s.mode_numbers();
    let two_j0 = &na - &nb;
    if (c_a - c_b).norm() <= CASIMIR_EQ_TOL {
        let factor = ONE - c_a * (d.qpow_re(1.0) - d.qpow_re(-1.0));
        return Ok(diag_fn(|z| d.bracket(z), &two_j0)?.scale(factor));
    }
    diag_fn(|z| d.bracket(z) + c_a * d.qpow(-z) - c_b * d.qpow(z), &two_j0)
}

/// `[J₊, J₋] = {−𝒞₁(q − q⁻¹) + 1}[2J₀]` (identity `maccontr_b`) plus gradings.
pub fn verify_mb_schwinger(s: &TwoModeSystem, w: InteriorWindow, tol: f64) -> Result<VerificationReport> {
    require(s, &[OscKind::MB], false)?;
    let mut rep = VerificationReport::new();
    s.describe(&mut rep);
    push_grading(&mut rep, s, "maccontr", w, tol)?;
    let (ca, cb) = s.casimirs();
    let lhs = commutator(&s.jp, &s.jm)?;
    rep.record("maccontr_b", interior_residual(&lhs, &mb_schwinger_rhs(s, ca, cb)?, w)?, tol);
    annotate_window(&mut rep, w);
    Ok(rep)
}

/// RHS of `[J₊, J₋]` for HY modes.
///
/// Equal Casimirs: `[2J₀] + 𝒞₂{[𝒞 − J₀ + 1] − [𝒞 − J₀] − [𝒞 + J₀ + 1] + [𝒞 + J₀]}`.
pub fn fujikawa_rhs(s: &TwoModeSystem, c_a: Complex64, c_b: Complex64) -> Result<Op> {
    let d = *s.deformation();
    let (na, nb) = s.mode_numbers();
    let half = Complex64::new(0.5, 0.0);
    let j0 = (&na - &nb).scale(half);
    let cas = (&na + &nb).scale(half);
    let br = |z: Complex64| d.bracket(z);
    if (c_a - c_b).norm() <= CASIMIR_EQ_TOL {
        return diag_fn2(
            |c, m| br(2.0 * m) + c_a * (br(c - m + 1.0) - br(c - m) - br(c + m + 1.0) + br(c + m)),
            &cas,
            &j0,
        );
    }
    diag_fn2(
        |x, y| br(x - y) + c_b * (br(x) - br(x + 1.0)) + c_a * (br(y + 1.0) - br(y)),
        &na,
        &nb,
    )
}

/// HY modes give the Fujikawa algebra (identity `fujio`).
pub fn verify_fujikawa(s: &TwoModeSystem, w: InteriorWindow, tol: f64) -> Result<VerificationReport> {
    require(s, &[OscKind::HY], false)?;
    let mut rep = VerificationReport::new();
    s.describe(&mut rep);
    push_grading(&mut rep, s, "maccontr", w, tol)?;
    let (ca, cb) = s.casimirs();
    let lhs = commutator(&s.jp, &s.jm)?;
    rep.record("fujio", interior_residual(&lhs, &fujikawa_rhs(s, ca, cb)?, w)?, tol);
    annotate_window(&mut rep, w);
    Ok(rep)
}

/// `(q^{αN_a + βN_b} − q^{αN_b + βN_a}) / (q^α − q^β)`.
pub fn mixed_exponent_term(s: &TwoModeSystem) -> Result<Op> {
    let d = *s.deformation();
    let g = s.gen();
    let denom = g.denominator(&d)?;
    let (na, nb) = s.mode_numbers();
    diag_fn2(
        |x, y| (d.qpow(g.alpha * x + g.beta * y) - d.qpow(g.alpha * y + g.beta * x)) / denom,
        &na,
        &nb,
    )
}

/// RHS of `[J₊, J₋]` for GMB (`gencon1`) or GHY (`gencon2`) modes.
pub fn gen_schwinger_rhs(s: &TwoModeSystem, c_a: Complex64, c_b: Complex64) -> Result<Op> {
    let d = *s.deformation();
    let g = s.gen();
    let denom = g.denominator(&d)?;
    let (na, nb) = s.mode_numbers();
    let mixed = mixed_exponent_term(s)?;
    let equal = (c_a - c_b).norm() <= CASIMIR_EQ_TOL;
    match s.kind() {
        OscKind::GMB if equal => Ok(mixed.scale(c_a * denom + 1.0)),
        OscKind::GMB => {
            let extra = diag_fn2(
                |x, y| c_a * d.qpow(g.alpha * x + g.beta * y) - c_b * d.qpow(g.alpha * y + g.beta * x),
                &na,
                &nb,
            )?;
            Ok(&mixed + &extra)
        }
        OscKind::GHY => {
            let gb = |z: Complex64| d.bracket_gen(g, z);
            let block = try_diag_fn2(
                |x, y| {
                    let b_part = gb(y + 1.0)? - gb(y)?;
                    let a_part = gb(x)? - gb(x + 1.0)?;
                    Ok(if equal { c_a * (b_part + a_part) } else { c_a * b_part + c_b * a_part })
                },
                &na,
                &nb,
            )?;
            Ok(&mixed + &block)
        }
        k => Err(Error::KindMismatch {
            expected: "GMB/GHY".into(),
            found: k.to_string(),
        }),
    }
}

/// `gencon1` (GMB) or `gencon2` (GHY); when β = −α also checks that the
/// mixed-exponent term equals `[2J₀]_{α,β}` (`gencon_mixed_term`).
pub fn verify_gen_schwinger(s: &TwoModeSystem, w: InteriorWindow, tol: f64) -> Result<VerificationReport> {
    require(s, &[OscKind::GMB, OscKind::GHY], false)?;
    let mut rep = VerificationReport::new();
    s.describe(&mut rep);
    push_grading(&mut rep, s, "maccontr", w, tol)?;
    let (ca, cb) = s.casimirs();
    let lhs = commutator(&s.jp, &s.jm)?;
    let label = if s.kind() == OscKind::GMB { "gencon1" } else { "gencon2" };
    rep.record(label, interior_residual(&lhs, &gen_schwinger_rhs(s, ca, cb)?, w)?, tol);

    let g = s.gen();
    if (g.alpha + g.beta).norm() < 1e-12 {
        let d = *s.deformation();
        let two_j0 = s.j0.scale(Complex64::new(2.0, 0.0));
        let bracket_2j0 = crate::linop::try_diag_fn(|z| d.bracket_gen(g, z), &two_j0)?;
        let r = interior_residual(&mixed_exponent_term(s)?, &bracket_2j0, w)?;
        rep.push(Check::new("gencon_mixed_term", r, REDUCTION_TOL));
    }
    annotate_window(&mut rep, w);
    Ok(rep)
}

/// RHS of `J̃₊J̃₋ − q^{−(α+β)}J̃₋J̃₊` for GMB (`gencon3`) or GHY (`gencon4`).
///
/// GMB: `{𝒞₃(q^α − q^β) + 1}[2J̃₀]_{α,β}`;
/// GHY: `q^{−(α+β)N_b}𝒞₄{[𝒞̃−J̃₀+1] − [𝒞̃−J̃₀] − [𝒞̃+J̃₀+1] + [𝒞̃+J̃₀]}_{α,β} + [2J̃₀]_{α,β}`.
pub fn gen_tilde_rhs(s: &TwoModeSystem, c_a: Complex64, c_b: Complex64) -> Result<Op> {
    let d = *s.deformation();
    let g = s.gen();
    let denom = g.denominator(&d)?;
    let (na, nb) = s.mode_numbers();
    let equal = (c_a - c_b).norm() <= CASIMIR_EQ_TOL;
    let gb = |z: Complex64| d.bracket_gen(g, z);
    match s.kind() {
        OscKind::GMB => try_diag_fn2(
            |x, y| {
                let z = x - y;
                Ok(if equal {
                    (c_a * denom + 1.0) * gb(z)?
                } else {
                    gb(z)? + c_a * d.qpow(g.alpha * z) - c_b * d.qpow(g.beta * z)
                })
            },
            &na,
            &nb,
        ),
        OscKind::GHY => try_diag_fn2(
            |x, y| {
                let (cas, m) = ((x + y) * 0.5, (x - y) * 0.5);
                let b_part = gb(cas - m + 1.0)? - gb(cas - m)?;
                let a_part = gb(cas + m)? - gb(cas + m + 1.0)?;
                let block = if equal { c_a * (b_part + a_part) } else { c_a * b_part + c_b * a_part };
                Ok(d.qpow(-g.sum() * y) * block + gb(2.0 * m)?)
            },
            &na,
            &nb,
        ),
        k => Err(Error::KindMismatch {
            expected: "GMB/GHY".into(),
            found: k.to_string(),
        }),
    }
}

/// The tilde q-commutator `J̃₊J̃₋ − q^{−(α+β)}J̃₋J̃₊`.
pub fn tilde_qcommutator(s: &TwoModeSystem) -> Result<Op> {
    let d = *s.deformation();
    qcommutator(&s.jp, &s.jm, d.qpow(-s.gen().sum()))
}

/// `gencon3` (GMB) or `gencon4` (GHY) on a tilde system; when α + β = 0 also
/// checks the q-commutator against the plain `[J₊, J₋]` (`gencon_tilde_reduction`).
pub fn verify_gen_tilde(s: &TwoModeSystem, w: InteriorWindow, tol: f64) -> Result<VerificationReport> {
    require(s, &[OscKind::GMB, OscKind::GHY], true)?;
    let mut rep = VerificationReport::new();
    s.describe(&mut rep);
    push_grading(&mut rep, s, "gensch", w, tol)?;
    let (ca, cb) = s.casimirs();
    let lhs = tilde_qcommutator(s)?;
    let label = if s.kind() == OscKind::GMB { "gencon3" } else { "gencon4" };
    rep.record(label, interior_residual(&lhs, &gen_tilde_rhs(s, ca, cb)?, w)?, tol);
    if s.tilde == Some(TildeDressing::AsPrinted) {
        rep.notes.push("dressing q^{-(alpha+beta) N_b} as printed; the identity needs the half exponent unless alpha + beta = 0".into());
    }

    if s.gen().sum().norm() < 1e-12 {
        let plain = schwinger_build(&s.rep_a, &s.rep_b)?;
        let plain_comm = commutator(&plain.jp, &plain.jm)?;
        rep.push(Check::new("gencon_tilde_reduction", interior_residual(&lhs, &plain_comm, w)?, REDUCTION_TOL));
    }
    annotate_window(&mut rep, w);
    Ok(rep)
}

/// Dispatch to the verifier matching the system's kind and dressing.
pub fn verify_schwinger(s: &TwoModeSystem, w: InteriorWindow, tol: f64) -> Result<VerificationReport> {
    match (s.kind(), s.is_tilde()) {
        (OscKind::MB, false) => verify_mb_schwinger(s, w, tol),
        (OscKind::HY, false) => verify_fujikawa(s, w, tol),
        (_, false) => verify_gen_schwinger(s, w, tol),
        (_, true) => verify_gen_tilde(s, w, tol),
    }
}
