//! One-mode q-Holstein–Primakoff realizations
//! `J₊ = a†√M(N)`, `J₋ = √M(N) a`, `J₀ = N − j`, with `M = [2j − N]` for MB/HY
//! and `M = [2j − N]_{α,β}` for GMB/GHY; the generalized version is dressed as
//! `J̃₊ = q^{−(α+β)N/2}a†√M`, `J̃₋ = √M a q^{−(α+β)N/2}`.
//!
//! Only `(√M)²` enters any verified identity, so the square-root branch is a
//! build option rather than a convention the verifiers depend on.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linop::{commutator, diag_fn, interior_residual, qcommutator, try_diag_fn, InteriorWindow, Op};
use crate::qnum::{Deformation, GenBracketParams};
use crate::report::{Check, VerificationReport};
use crate::reps::{annotate_window, re, OscKind, OscRep};
use crate::{Error, Result};

const FORMS_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SqrtBranch {
    #[default]
    Principal,
    /// The other root on every diagonal entry.
    Negated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HPSystem {
    pub osc: OscRep,
    pub j: f64,
    pub jp: Op,
    pub jm: Op,
    pub j0: Op,
    pub generalized: bool,
    pub branch: SqrtBranch,
}

impl HPSystem {
    pub fn kind(&self) -> OscKind {
        self.osc.kind()
    }

    pub fn deformation(&self) -> &Deformation {
        self.osc.deformation()
    }

    fn gen(&self) -> GenBracketParams {
        self.osc.params.gen.unwrap_or_else(GenBracketParams::symmetric)
    }

    fn describe(&self, rep: &mut VerificationReport) {
        self.osc.params.describe(rep);
        rep.param("j", self.j);
        rep.param("sqrt_branch", format!("{:?}", self.branch));
    }
}

fn sqrt_diag(m: &Op, branch: SqrtBranch) -> Result<Op> {
    diag_fn(
        |z| match branch {
            SqrtBranch::Principal => z.sqrt(),
            SqrtBranch::Negated => -z.sqrt(),
        },
        m,
    )
}

fn assemble(osc: &OscRep, j: f64, m: Op, dress: Option<Op>, generalized: bool, branch: SqrtBranch) -> Result<HPSystem> {
    if !j.is_finite() {
        return Err(Error::InvalidParams(format!("j = {j} is not finite")));
    }
    let root = sqrt_diag(&m, branch)?;
    let (mut jp, mut jm) = (&osc.adag * &root, &root * &osc.a);
    if let Some(dress) = dress {
        jp = &dress * &jp;
        jm = &jm * &dress;
    }
    let j0 = &osc.n_op - &osc.identity().scale(re(j));
    Ok(HPSystem {
        osc: osc.clone(),
        j,
        jp,
        jm,
        j0,
        generalized,
        branch,
    })
}

/// Plain realization on an MB or HY rep.
pub fn hp_build(osc: &OscRep, j: f64) -> Result<HPSystem> {
    hp_build_with_branch(osc, j, SqrtBranch::Principal)
}

pub fn hp_build_with_branch(osc: &OscRep, j: f64, branch: SqrtBranch) -> Result<HPSystem> {
    if osc.kind().is_generalized() {
        return Err(Error::KindMismatch {
            expected: "MB or HY".into(),
            found: osc.kind().to_string(),
        });
    }
    let d = *osc.deformation();
    let m = diag_fn(|x| d.bracket(2.0 * j - x), &osc.n_op)?;
    assemble(osc, j, m, None, false, branch)
}

/// Dressed realization on a GMB or GHY rep.
pub fn hp_gen_build(osc: &OscRep, j: f64) -> Result<HPSystem> {
    hp_gen_build_with_branch(osc, j, SqrtBranch::Principal)
}

pub fn hp_gen_build_with_branch(osc: &OscRep, j: f64, branch: SqrtBranch) -> Result<HPSystem> {
    let Some(g) = osc.params.gen.filter(|_| osc.kind().is_generalized()) else {
        return Err(Error::KindMismatch {
            expected: "GMB or GHY".into(),
            found: osc.kind().to_string(),
        });
    };
    let d = *osc.deformation();
    let m = try_diag_fn(|x| d.bracket_gen(g, 2.0 * j - x), &osc.n_op)?;
    let s = g.sum();
    let dress = diag_fn(|x| d.qpow(-0.5 * s * x), &osc.n_op)?;
    assemble(osc, j, m, Some(dress), true, branch)
}

fn push_grading(rep: &mut VerificationReport, h: &HPSystem, label: &str, w: InteriorWindow, tol: f64) -> Result<()> {
    rep.record(&format!("{label}_a_raise"), interior_residual(&commutator(&h.j0, &h.jp)?, &h.jp, w)?, tol);
    rep.record(&format!("{label}_a_lower"), interior_residual(&commutator(&h.j0, &h.jm)?, &(-&h.jm), w)?, tol);
    Ok(())
}

fn require(h: &HPSystem, kind: &[OscKind]) -> Result<()> {
    if !kind.contains(&h.kind()) {
        let names: Vec<String> = kind.iter().map(|k| k.to_string()).collect();
        return Err(Error::KindMismatch {
            expected: names.join("/"),
            found: h.kind().to_string(),
        });
    }
    Ok(())
}

/// `[2J₀] + c q^{−2J₀}`.
pub fn hol1_rhs(h: &HPSystem, c: Complex64) -> Result<Op> {
    let d = *h.deformation();
    diag_fn(|m| d.bracket(2.0 * m) + c * d.qpow(-2.0 * m), &h.j0)
}

/// `[J₊, J₋] = [2J₀] + 𝒞₁q^{−2J₀}` (identity `hol1`).
pub fn verify_hp_mb(h: &HPSystem, w: InteriorWindow, tol: f64) -> Result<VerificationReport> {
    require(h, &[OscKind::MB])?;
    let mut rep = VerificationReport::new();
    h.describe(&mut rep);
    push_grading(&mut rep, h, "hol1", w, tol)?;
    let lhs = commutator(&h.jp, &h.jm)?;
    rep.record("hol1", interior_residual(&lhs, &hol1_rhs(h, h.osc.casimir)?, w)?, tol);
    annotate_window(&mut rep, w);
    Ok(rep)
}

/// `[2J₀] + c{[j − J₀ + 1] − [j − J₀]}`.
pub fn hol2_rhs(h: &HPSystem, c: Complex64) -> Result<Op> {
    let d = *h.deformation();
    let j = h.j;
    diag_fn(|m| d.bracket(2.0 * m) + c * (d.bracket(j - m + 1.0) - d.bracket(j - m)), &h.j0)
}

/// `[J₊, J₋] = [2J₀] + 𝒞₂{[j − J₀ + 1] − [j − J₀]}` (identity `hol2`), plus
/// agreement with the `[2j − N + 1] − [2j − N]` form (`hol2_forms`).
pub fn verify_hp_hy(h: &HPSystem, w: InteriorWindow, tol: f64) -> Result<VerificationReport> {
    require(h, &[OscKind::HY])?;
    let mut rep = VerificationReport::new();
    h.describe(&mut rep);
    push_grading(&mut rep, h, "hol2", w, tol)?;
    let lhs = commutator(&h.jp, &h.jm)?;
    let c = h.osc.casimir;
    rep.record("hol2", interior_residual(&lhs, &hol2_rhs(h, c)?, w)?, tol);

    let d = *h.deformation();
    let j = h.j;
    let n_form = diag_fn(|x| d.bracket(2.0 * (x - j)) + c * (d.bracket(2.0 * j - x + 1.0) - d.bracket(2.0 * j - x)), &h.osc.n_op)?;
    rep.push(Check::new("hol2_forms", n_form.max_abs_diff(&hol2_rhs(h, c)?)?, FORMS_TOL));
    annotate_window(&mut rep, w);
    Ok(rep)
}

/// `J̃₊J̃₋ − q^{α+β}J̃₋J̃₊`.
pub fn gen_qcommutator(h: &HPSystem) -> Result<Op> {
    let d = *h.deformation();
    qcommutator(&h.jp, &h.jm, d.qpow(h.gen().sum()))
}

/// RHS of the generalized identity with the leading term `sign·[−2J̃₀]_{α,β}`.
///
/// GMB Casimir block `𝒞₃q^{−2βJ̃₀}`; GHY block
/// `q^{−(α+β)N}{[2j − N + 1]_{α,β} − [2j − N]_{α,β}}𝒞₄`. The identity holds
/// with `sign = −1`.
pub fn gen_hp_rhs(h: &HPSystem, c: Complex64, sign: f64) -> Result<Op> {
    let d = *h.deformation();
    let g = h.gen();
    let j = h.j;
    let gb = |z: Complex64| d.bracket_gen(g, z);
    match h.kind() {
        OscKind::GMB => try_diag_fn(|m| Ok(sign * gb(-2.0 * m)? + c * d.qpow(-2.0 * g.beta * m)), &h.j0),
        OscKind::GHY => try_diag_fn(
            |x| {
                let m = x - j;
                let block = gb(2.0 * j - x + 1.0)? - gb(2.0 * j - x)?;
                Ok(sign * gb(-2.0 * m)? + d.qpow(-g.sum() * x) * block * c)
            },
            &h.osc.n_op,
        ),
        k => Err(Error::KindMismatch {
            expected: "GMB/GHY".into(),
            found: k.to_string(),
        }),
    }
}

/// `genhol1` (GMB) / `genhol2` (GHY) with the leading term `−[−2J̃₀]_{α,β}`.
///
/// The residual against the `+[−2J̃₀]_{α,β}` variant is kept in the report notes.
pub fn verify_hp_gen(h: &HPSystem, w: InteriorWindow, tol: f64) -> Result<VerificationReport> {
    require(h, &[OscKind::GMB, OscKind::GHY])?;
    if !h.generalized {
        return Err(Error::InvalidParams("HP system was not built with hp_gen_build".into()));
    }
    let label = if h.kind() == OscKind::GMB { "genhol1" } else { "genhol2" };
    let mut rep = VerificationReport::new();
    h.describe(&mut rep);
    push_grading(&mut rep, h, label, w, tol)?;
    let lhs = gen_qcommutator(h)?;
    let c = h.osc.casimir;
    rep.record(label, interior_residual(&lhs, &gen_hp_rhs(h, c, -1.0)?, w)?, tol);
    let printed = interior_residual(&lhs, &gen_hp_rhs(h, c, 1.0)?, w)?;
    rep.notes.push(format!(
        "leading term verified as -[-2J0]_(alpha,beta); with +[-2J0]_(alpha,beta) the residual is {printed:.6e}"
    ));
    annotate_window(&mut rep, w);
    Ok(rep)
}

/// Dispatch on kind.
pub fn verify_hp(h: &HPSystem, w: InteriorWindow, tol: f64) -> Result<VerificationReport> {
    match h.kind() {
        OscKind::MB => verify_hp_mb(h, w, tol),
        OscKind::HY => verify_hp_hy(h, w, tol),
        OscKind::GMB | OscKind::GHY => verify_hp_gen(h, w, tol),
    }
}
