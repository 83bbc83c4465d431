//! Matrix representations of the MB, HY, GMB and GHY oscillator algebras on a
//! window of the ladder `|ψ_n⟩`, and of (deformed) spin-j multiplets.
//!
//! Ladder convention: `N|ψ_n⟩ = (ν₀ + n)|ψ_n⟩`, and `a†a|ψ_n⟩ = λ_n|ψ_n⟩`
//! with λ_n fixed by the algebra kind and the Casimir value `c`:
//!
//! | kind | λ_n (x = ν₀ + n)          | c from (ν₀, λ₀)              |
//! |------|---------------------------|------------------------------|
//! | MB   | `[x] + q^{−x} c`          | `q^{ν₀}(λ₀ − [ν₀])`          |
//! | HY   | `[x] + c`                 | `λ₀ − [ν₀]`                  |
//! | GMB  | `[x]_{α,β} + q^{αx} c`    | `q^{−αν₀}(λ₀ − [ν₀]_{α,β})`  |
//! | GHY  | `[x]_{α,β} + c`           | `λ₀ − [ν₀]_{α,β}`            |
//!
//! No hermiticity is assumed: with the asymmetric normalization `a` and `a†`
//! are not adjoints of each other, and for complex `q` they are not adjoints
//! under either normalization.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linop::{commutator, diag_fn, interior_residual, qcommutator, Basis, InteriorWindow, Op};
use crate::qnum::{Deformation, GenBracketParams};
use crate::report::{Check, VerificationReport};
use crate::{Error, Result};

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub(crate) fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Note attached to failing checks evaluated on a window that touches the cutoff.
pub const TRUNCATION_NOTE: &str = "truncation artifact: window includes the ladder cutoff";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OscKind {
    MB,
    HY,
    GMB,
    GHY,
}

impl OscKind {
    pub const ALL: [OscKind; 4] = [OscKind::MB, OscKind::HY, OscKind::GMB, OscKind::GHY];

    pub fn is_generalized(self) -> bool {
        matches!(self, OscKind::GMB | OscKind::GHY)
    }

    /// MB-like kinds dress the Casimir with a power of q; HY-like ones do not.
    pub fn is_mb_like(self) -> bool {
        matches!(self, OscKind::MB | OscKind::GMB)
    }
}

impl fmt::Display for OscKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OscKind::MB => "MB",
            OscKind::HY => "HY",
            OscKind::GMB => "GMB",
            OscKind::GHY => "GHY",
        };
        f.write_str(s)
    }
}

impl FromStr for OscKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "MB" => Ok(OscKind::MB),
            "HY" => Ok(OscKind::HY),
            "GMB" => Ok(OscKind::GMB),
            "GHY" => Ok(OscKind::GHY),
            other => Err(Error::InvalidParams(format!("unknown oscillator kind {other:?}"))),
        }
    }
}

/// How the ladder coefficients are split between `a†` and `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Normalization {
    /// `a†|ψ_n⟩ = |ψ_{n+1}⟩`, `a|ψ_n⟩ = λ_n|ψ_{n−1}⟩`.
    #[default]
    Asymmetric,
    /// `a†|n⟩ = √λ_{n+1}|n+1⟩`, `a|n⟩ = √λ_n|n−1⟩` (principal roots), the usual Fock basis.
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscParams {
    pub kind: OscKind,
    pub d: Deformation,
    pub gen: Option<GenBracketParams>,
    pub nu0: Complex64,
    pub lambda0: Complex64,
    pub dim: usize,
    pub n_min: i64,
    pub normalization: Normalization,
}

impl OscParams {
    /// Fock-like defaults: ν₀ = λ₀ = 0, `n_min = 0`, asymmetric ladder.
    pub fn new(kind: OscKind, d: Deformation, dim: usize) -> Self {
        Self {
            kind,
            d,
            gen: None,
            nu0: ZERO,
            lambda0: ZERO,
            dim,
            n_min: 0,
            normalization: Normalization::Asymmetric,
        }
    }

    pub fn with_gen(mut self, gen: GenBracketParams) -> Self {
        self.gen = Some(gen);
        self
    }

    pub fn with_ground(mut self, nu0: Complex64, lambda0: Complex64) -> Self {
        self.nu0 = nu0;
        self.lambda0 = lambda0;
        self
    }

    /// Choose λ₀ so that the Casimir takes the value `c`.
    pub fn with_casimir(mut self, nu0: Complex64, c: Complex64) -> Result<Self> {
        self.nu0 = nu0;
        self.lambda0 = ZERO;
        self.lambda0 = self.lambda_at(nu0, c)?;
        Ok(self)
    }

    pub fn with_offset(mut self, n_min: i64) -> Self {
        self.n_min = n_min;
        self
    }

    pub fn with_normalization(mut self, normalization: Normalization) -> Self {
        self.normalization = normalization;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::InvalidParams(format!("ladder dimension {} < 2", self.dim)));
        }
        match (self.kind.is_generalized(), self.gen) {
            (true, None) => {
                return Err(Error::InvalidParams(format!("{} requires (alpha, beta)", self.kind)));
            }
            (true, Some(p)) => p.validate(&self.d)?,
            (false, _) => {}
        }
        let c = self.casimir()?;
        if !(c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::InvalidParams(format!("Casimir value {c} is not finite")));
        }
        Ok(())
    }

    fn gen_params(&self) -> GenBracketParams {
        match self.kind {
            OscKind::MB | OscKind::HY => GenBracketParams::symmetric(),
            _ => self.gen.expect("validated: generalized kinds carry (alpha, beta)"),
        }
    }

    /// The kind's bracket: `[x]` for MB/HY, `[x]_{α,β}` for GMB/GHY.
    pub fn bracket(&self, x: Complex64) -> Result<Complex64> {
        match self.kind {
            OscKind::MB | OscKind::HY => Ok(self.d.bracket(x)),
            _ => self.d.bracket_gen(self.gen_params(), x),
        }
    }

    /// Weight multiplying `c` in λ(x): `q^{−x}` (MB), `q^{αx}` (GMB), 1 (HY, GHY).
    fn casimir_weight(&self, x: Complex64) -> Complex64 {
        match self.kind {
            OscKind::MB => self.d.qpow(-x),
            OscKind::GMB => self.d.qpow(self.gen_params().alpha * x),
            OscKind::HY | OscKind::GHY => ONE,
        }
    }

    /// The Casimir value derived from (ν₀, λ₀).
    pub fn casimir(&self) -> Result<Complex64> {
        let b = self.bracket(self.nu0)?;
        Ok((self.lambda0 - b) / self.casimir_weight(self.nu0))
    }

    fn lambda_at(&self, x: Complex64, c: Complex64) -> Result<Complex64> {
        Ok(self.bracket(x)? + self.casimir_weight(x) * c)
    }

    /// λ_n, the eigenvalue of `a†a` on `|ψ_n⟩`.
    pub fn lambda(&self, n: i64) -> Result<Complex64> {
        let c = self.casimir()?;
        self.lambda_at(self.nu0 + re(n as f64), c)
    }

    pub fn basis(&self) -> Basis {
        Basis::Fock {
            n_min: self.n_min,
            dim: self.dim,
        }
    }

    pub(crate) fn describe(&self, rep: &mut VerificationReport) {
        rep.param("kind", self.kind.to_string());
        rep.param_complex("q", self.d.q());
        if let Some(e) = self.d.epsilon() {
            rep.param("epsilon", e);
        }
        rep.param("branch", self.d.branch());
        rep.param("dim", self.dim);
        rep.param("n_min", self.n_min);
        rep.param_complex("nu0", self.nu0);
        rep.param_complex("lambda0", self.lambda0);
        if let Ok(c) = self.casimir() {
            rep.param_complex("casimir", c);
        }
        if let (true, Some(p)) = (self.kind.is_generalized(), self.gen) {
            rep.param_complex("alpha", p.alpha);
            rep.param_complex("beta", p.beta);
        }
    }
}

/// An oscillator triple `(a, a†, N)` on a ladder window.
#[derive(Debug, Clone, PartialEq)]
pub struct OscRep {
    pub a: Op,
    pub adag: Op,
    pub n_op: Op,
    pub params: OscParams,
    pub casimir: Complex64,
}

impl OscRep {
    pub fn kind(&self) -> OscKind {
        self.params.kind
    }

    pub fn deformation(&self) -> &Deformation {
        &self.params.d
    }

    pub fn identity(&self) -> Op {
        Op::identity(self.n_op.basis().clone())
    }

    /// The kind's bracket applied to `N + shift`.
    pub fn bracket_of_n(&self, shift: f64) -> Result<Op> {
        let p = self.params;
        crate::linop::try_diag_fn(|x| p.bracket(x + shift), &self.n_op)
    }

    /// The Casimir operator built from the matrices by the kind's formula.
    pub fn casimir_operator(&self) -> Result<Op> {
        let p = &self.params;
        let ada = &self.adag * &self.a;
        let shifted = ada - self.bracket_of_n(0.0)?;
        let weight = match p.kind {
            OscKind::MB => diag_fn(|x| p.d.qpow(x), &self.n_op)?,
            OscKind::GMB => {
                let alpha = p.gen_params().alpha;
                diag_fn(|x| p.d.qpow(-alpha * x), &self.n_op)?
            }
            OscKind::HY | OscKind::GHY => return Ok(shifted),
        };
        Ok(&weight * &shifted)
    }
}

/// Build the ladder representation described by `p`.
pub fn build_general_osc(p: OscParams) -> Result<OscRep> {
    p.validate()?;
    let casimir = p.casimir()?;
    let basis = p.basis();
    let n_op = Op::from_diag(basis.clone(), (0..p.dim).map(|i| p.nu0 + re((p.n_min + i as i64) as f64)));
    let mut a = Op::zeros(basis.clone());
    let mut adag = Op::zeros(basis);
    for i in 0..p.dim - 1 {
        // λ for the upper state of the (i, i+1) link
        let lam = p.lambda_at(p.nu0 + re((p.n_min + i as i64 + 1) as f64), casimir)?;
        if !(lam.re.is_finite() && lam.im.is_finite()) {
            return Err(Error::InvalidParams(format!("ladder coefficient λ = {lam} is not finite")));
        }
        let (up, down) = match p.normalization {
            Normalization::Asymmetric => (ONE, lam),
            Normalization::Symmetric => (lam.sqrt(), lam.sqrt()),
        };
        adag.set(i + 1, i, up);
        a.set(i, i + 1, down);
    }
    Ok(OscRep {
        a,
        adag,
        n_op,
        params: p,
        casimir,
    })
}

/// The usual Fock representation (ν₀ = λ₀ = 0, hence c = 0), symmetric normalization.
pub fn build_fock_osc(kind: OscKind, d: Deformation, gen: Option<GenBracketParams>, dim: usize) -> Result<OscRep> {
    let mut p = OscParams::new(kind, d, dim).with_normalization(Normalization::Symmetric);
    p.gen = gen;
    build_general_osc(p)
}

/// Check the defining relations and Casimir constancy of an oscillator rep.
///
/// Identities: `macf_a_raise`, `macf_a_lower` (gradings) for every kind, plus
/// `macf_b`/`macf_c` (MB), `hyo_a`/`hyo_b` (HY), `genmacf_a`/`genmacf_b` (GMB),
/// `genhyo_a`/`genhyo_b` (GHY).
pub fn verify_osc_relations(r: &OscRep, w: InteriorWindow, tol: f64) -> Result<VerificationReport> {
    let p = &r.params;
    let d = &p.d;
    let mut rep = VerificationReport::new();
    p.describe(&mut rep);
    rep.param("window", format!("({}, {})", w.low_margin, w.high_margin));

    let n = &r.n_op;
    rep.record("macf_a_raise", interior_residual(&commutator(n, &r.adag)?, &r.adag, w)?, tol);
    rep.record("macf_a_lower", interior_residual(&commutator(n, &r.a)?, &(-&r.a), w)?, tol);

    let c_op = r.identity().scale(r.casimir);
    let (rel_name, lhs, rhs, cas_name) = match p.kind {
        OscKind::MB => (
            "macf_b",
            qcommutator(&r.a, &r.adag, d.qpow_re(-1.0))?,
            diag_fn(|x| d.qpow(x), n)?,
            "macf_c",
        ),
        OscKind::HY | OscKind::GHY => (
            if p.kind == OscKind::HY { "hyo_a" } else { "genhyo_a" },
            commutator(&r.a, &r.adag)?,
            r.bracket_of_n(1.0)? - r.bracket_of_n(0.0)?,
            if p.kind == OscKind::HY { "hyo_b" } else { "genhyo_b" },
        ),
        OscKind::GMB => {
            let g = p.gen_params();
            (
                "genmacf_a",
                qcommutator(&r.a, &r.adag, d.qpow(g.alpha))?,
                diag_fn(|x| d.qpow(g.beta * x), n)?,
                "genmacf_b",
            )
        }
    };
    rep.record(rel_name, interior_residual(&lhs, &rhs, w)?, tol);
    rep.record(cas_name, interior_residual(&r.casimir_operator()?, &c_op, w)?, tol);
    annotate_window(&mut rep, w);
    Ok(rep)
}

pub(crate) fn annotate_window(rep: &mut VerificationReport, w: InteriorWindow) {
    if w.low_margin == 0 || w.high_margin == 0 {
        for c in rep.checks.iter_mut().filter(|c| !c.pass) {
            if !c.notes.iter().any(|n| n == TRUNCATION_NOTE) {
                c.notes.push(TRUNCATION_NOTE.to_string());
            }
        }
    }
}

/// Which bracket the spin matrix elements are written in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SpinBase {
    Undeformed,
    /// `[x]` in base q.
    Q(Deformation),
    /// `[x]` in base q^{1/2}.
    SqrtQ(Deformation),
}

impl SpinBase {
    pub fn bracket(&self, x: Complex64) -> Complex64 {
        match self {
            SpinBase::Undeformed => x,
            SpinBase::Q(d) => d.bracket(x),
            SpinBase::SqrtQ(d) => d.sqrt().expect("sqrt of a valid deformation").bracket(x),
        }
    }

    pub fn deformation(&self) -> Option<&Deformation> {
        match self {
            SpinBase::Undeformed => None,
            SpinBase::Q(d) | SpinBase::SqrtQ(d) => Some(d),
        }
    }

    fn validate(&self) -> Result<()> {
        if let SpinBase::SqrtQ(d) = self {
            d.sqrt()?;
        }
        Ok(())
    }
}

/// A spin-j multiplet, or a window of consecutive `m` values of one.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinRep {
    pub two_j: i64,
    pub base: SpinBase,
    pub jp: Op,
    pub jm: Op,
    pub j0: Op,
}

impl SpinRep {
    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn dim(&self) -> usize {
        self.j0.dim()
    }

    /// True when every `m = −j..j` is represented, so the relations close.
    pub fn is_complete(&self) -> bool {
        self.dim() as i64 == self.two_j + 1
    }

    pub fn identity(&self) -> Op {
        Op::identity(self.j0.basis().clone())
    }

    /// `[2J₀]` in the rep's own bracket.
    pub fn bracket_2j0(&self) -> Result<Op> {
        let base = self.base;
        diag_fn(|m| base.bracket(2.0 * m), &self.j0)
    }
}

fn doubled(j: f64) -> Result<i64> {
    let two_j = 2.0 * j;
    if !(two_j.is_finite() && (two_j - two_j.round()).abs() < 1e-12 && two_j.round() >= 1.0) {
        return Err(Error::InvalidParams(format!("spin j = {j} must be a positive half-integer")));
    }
    Ok(two_j.round() as i64)
}

/// The full spin-j multiplet, `m = −j..j` (index 0 is `m = −j`).
///
/// `J₊|j,m⟩ = ([j−m][j+m+1])^{1/2}|j,m+1⟩`, `J₋|j,m⟩ = ([j+m][j−m+1])^{1/2}|j,m−1⟩`
/// with principal square roots.
pub fn build_spin_rep(j: f64, base: SpinBase) -> Result<SpinRep> {
    let two_j = doubled(j)?;
    build_spin_window(j, base, -two_j, (two_j + 1) as usize)
}

/// `dim` consecutive states of the spin-j multiplet starting at `2m = two_m_min`.
///
/// Windows away from the extremal weights are truncated ladders: relations
/// hold on the interior but not at a cut edge.
pub fn build_spin_window(j: f64, base: SpinBase, two_m_min: i64, dim: usize) -> Result<SpinRep> {
    let two_j = doubled(j)?;
    base.validate()?;
    if dim == 0 {
        return Err(Error::InvalidParams("spin window must be non-empty".into()));
    }
    if (two_m_min + two_j) % 2 != 0 || two_m_min < -two_j || two_m_min + 2 * (dim as i64 - 1) > two_j {
        return Err(Error::InvalidParams(format!(
            "window 2m_min = {two_m_min}, dim = {dim} does not fit spin j = {j}"
        )));
    }
    let basis = Basis::Spin { two_j, two_m_min, dim };
    let m_of = |i: usize| (two_m_min as f64 + 2.0 * i as f64) / 2.0;
    let j0 = Op::from_diag(basis.clone(), (0..dim).map(|i| re(m_of(i))));
    let mut jp = Op::zeros(basis.clone());
    let mut jm = Op::zeros(basis);
    for i in 0..dim.saturating_sub(1) {
        let m = m_of(i);
        let coef = (base.bracket(re(j - m)) * base.bracket(re(j + m + 1.0))).sqrt();
        jp.set(i + 1, i, coef);
        jm.set(i, i + 1, coef);
    }
    Ok(SpinRep { two_j, base, jp, jm, j0 })
}

/// `[J₀, J±] = ±J±` and `[J₊, J₋] = [2J₀]`, labelled `cr_a_raise`, `cr_a_lower`, `cr_b`.
pub fn verify_spin_relations(s: &SpinRep, w: InteriorWindow, tol: f64) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new();
    rep.param("j", s.j());
    rep.param("dim", s.dim());
    rep.record("cr_a_raise", interior_residual(&commutator(&s.j0, &s.jp)?, &s.jp, w)?, tol);
    rep.record("cr_a_lower", interior_residual(&commutator(&s.j0, &s.jm)?, &(-&s.jm), w)?, tol);
    rep.record("cr_b", interior_residual(&commutator(&s.jp, &s.jm)?, &s.bracket_2j0()?, w)?, tol);
    Ok(rep)
}

/// Residual of `[J₊, J₋] = Ψ(J₀) − Ψ(J₀ − 1)` on the window (identity `mcr`).
pub fn check_structure_function<F>(jp: &Op, jm: &Op, j0: &Op, psi: F, w: InteriorWindow, tol: f64) -> Result<VerificationReport>
where
    F: Fn(Complex64) -> Complex64,
{
    let lhs = commutator(jp, jm)?;
    let rhs = diag_fn(&psi, j0)? - diag_fn(|m| psi(m - 1.0), j0)?;
    let mut rep = VerificationReport::new();
    rep.push(Check::new("mcr", interior_residual(&lhs, &rhs, w)?, tol));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::DEFAULT_TOLERANCE as TOL;

    fn unit(eps: f64) -> Deformation {
        Deformation::unit_circle(eps).unwrap()
    }

    fn real(q: f64) -> Deformation {
        Deformation::real(q).unwrap()
    }

    fn w11() -> InteriorWindow {
        InteriorWindow::symmetric(1)
    }

    #[test]
    fn hy_fock_ladder_is_the_bracket() {
        let d = unit(0.7);
        let p = OscParams::new(OscKind::HY, d, 8);
        let r = build_general_osc(p).unwrap();
        assert_eq!(r.casimir, ZERO);
        for n in 0..8 {
            assert!((p.lambda(n).unwrap() - d.bracket_re(n as f64)).norm() < 1e-14);
        }
        let f = build_fock_osc(OscKind::HY, d, None, 8).unwrap();
        let ada = &f.adag * &f.a;
        for n in 0..8 {
            assert!((ada.get(n, n) - d.bracket_re(n as f64)).norm() < 1e-13);
        }
    }

    #[test]
    fn mb_fock_relations() {
        for d in [real(1.3), unit(0.7)] {
            let r = build_fock_osc(OscKind::MB, d, None, 8).unwrap();
            assert_eq!(r.casimir, ZERO);
            let rep = verify_osc_relations(&r, w11(), 1e-12).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn qcommutator_on_mb_ladder_is_q_to_the_n() {
        let d = real(1.3);
        let r = build_general_osc(OscParams::new(OscKind::MB, d, 3)).unwrap();
        let lhs = qcommutator(&r.a, &r.adag, d.qpow_re(-1.0)).unwrap();
        let rhs = diag_fn(|x| d.qpow(x), &r.n_op).unwrap();
        assert!(interior_residual(&lhs, &rhs, InteriorWindow::new(0, 1)).unwrap() < 1e-12);
    }

    #[test]
    fn full_window_exposes_the_cutoff() {
        let r = build_fock_osc(OscKind::MB, real(1.3), None, 6).unwrap();
        let lhs = qcommutator(&r.a, &r.adag, r.deformation().qpow_re(-1.0)).unwrap();
        let rhs = diag_fn(|x| r.deformation().qpow(x), &r.n_op).unwrap();
        assert!(interior_residual(&lhs, &rhs, InteriorWindow::new(0, 1)).unwrap() < 1e-12);
        let edge = interior_residual(&lhs, &rhs, InteriorWindow::FULL).unwrap();
        assert!(edge > 0.1, "top state should violate the relation, got {edge}");

        let rep = verify_osc_relations(&r, InteriorWindow::FULL, TOL).unwrap();
        let failed = rep.get("macf_b").unwrap();
        assert!(!failed.pass);
        assert!(failed.notes.iter().any(|n| n == TRUNCATION_NOTE));
        assert!(rep.get("macf_a_raise").unwrap().pass);
    }

    #[test]
    fn hy_with_casimir() {
        let d = unit(0.7);
        let p = OscParams::new(OscKind::HY, d, 10).with_ground(re(0.3), re(0.2));
        let r = build_general_osc(p).unwrap();
        let expect = re(0.2) - d.bracket_re(0.3);
        assert!((r.casimir - expect).norm() < 1e-15);
        let rep = verify_osc_relations(&r, w11(), 1e-12).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(r.casimir.norm() > 0.01);
    }

    #[test]
    fn every_kind_with_and_without_casimir() {
        let gen = GenBracketParams::real(1.2, -0.4);
        for d in [real(1.3), unit(0.7)] {
            for kind in OscKind::ALL {
                for (nu0, lambda0) in [(0.0, 0.0), (0.3, 0.2)] {
                    let mut p = OscParams::new(kind, d, 12).with_ground(re(nu0), re(lambda0));
                    if kind.is_generalized() {
                        p = p.with_gen(gen);
                    }
                    let r = build_general_osc(p).unwrap();
                    let rep = verify_osc_relations(&r, w11(), 1e-12).unwrap();
                    assert!(rep.passed(), "{kind} nu0={nu0}: {:?}", rep.failures().collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn negative_offset_window() {
        let d = unit(0.9);
        let p = OscParams::new(OscKind::HY, d, 9)
            .with_ground(re(0.25), re(0.6))
            .with_offset(-4);
        let r = build_general_osc(p).unwrap();
        assert!(verify_osc_relations(&r, w11(), 1e-12).unwrap().passed());
        assert_eq!(r.n_op.get(0, 0), re(0.25 - 4.0));
    }

    #[test]
    fn gen_kind_requires_params() {
        let p = OscParams::new(OscKind::GMB, real(1.3), 5);
        assert!(build_general_osc(p).is_err());
        let p = p.with_gen(GenBracketParams::real(0.5, 0.5));
        assert!(matches!(build_general_osc(p), Err(Error::DegenerateBracket { .. })));
    }

    #[test]
    fn too_small_window_errors() {
        let r = build_fock_osc(OscKind::HY, real(1.3), None, 2).unwrap();
        assert!(matches!(verify_osc_relations(&r, w11(), TOL), Err(Error::WindowExhausted { .. })));
        assert!(build_fock_osc(OscKind::HY, real(1.3), None, 1).is_err());
    }

    #[test]
    fn with_casimir_hits_the_target() {
        let gen = GenBracketParams::real(1.2, 0.3);
        for kind in OscKind::ALL {
            let p = OscParams::new(kind, real(1.3), 6)
                .with_gen(gen)
                .with_casimir(re(0.4), re(0.35))
                .unwrap();
            assert!((p.casimir().unwrap() - 0.35).norm() < 1e-14, "{kind}");
        }
    }

    #[test]
    fn hy_lambda_steps() {
        let d = unit(0.7);
        let p = OscParams::new(OscKind::HY, d, 6).with_ground(re(0.4), re(0.1));
        for n in -3..5 {
            let step = p.lambda(n + 1).unwrap() - p.lambda(n).unwrap();
            let expect = d.bracket_re(0.4 + n as f64 + 1.0) - d.bracket_re(0.4 + n as f64);
            assert!((step - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn generalized_kinds_reduce_to_plain_ones() {
        let d = unit(0.7);
        // GHY at (1, -1) is HY for any Casimir.
        for (nu0, lambda0) in [(0.0, 0.0), (0.3, 0.2)] {
            let hy = build_general_osc(OscParams::new(OscKind::HY, d, 8).with_ground(re(nu0), re(lambda0))).unwrap();
            let ghy = build_general_osc(
                OscParams::new(OscKind::GHY, d, 8)
                    .with_ground(re(nu0), re(lambda0))
                    .with_gen(GenBracketParams::symmetric()),
            )
            .unwrap();
            assert!(hy.a.max_abs_diff(&ghy.a).unwrap() < 1e-13);
            assert!(hy.adag.max_abs_diff(&ghy.adag).unwrap() < 1e-13);
        }
        // GMB is MB at (alpha, beta) = (-1, 1) for any Casimir ...
        let mb = build_general_osc(OscParams::new(OscKind::MB, d, 8).with_ground(re(0.3), re(0.2))).unwrap();
        let gmb = build_general_osc(
            OscParams::new(OscKind::GMB, d, 8)
                .with_ground(re(0.3), re(0.2))
                .with_gen(GenBracketParams::real(-1.0, 1.0)),
        )
        .unwrap();
        assert!(mb.a.max_abs_diff(&gmb.a).unwrap() < 1e-13);
        assert!((mb.casimir - gmb.casimir).norm() < 1e-13);
        // ... and at (1, -1) only on the Fock rep.
        let mb0 = build_fock_osc(OscKind::MB, d, None, 8).unwrap();
        let gmb0 = build_fock_osc(OscKind::GMB, d, Some(GenBracketParams::symmetric()), 8).unwrap();
        // Compare products: √λ sits on the branch cut wherever [n] < 0.
        let prod = |r: &OscRep| (&r.adag * &r.a, &r.a * &r.adag);
        let ((x0, y0), (x1, y1)) = (prod(&mb0), prod(&gmb0));
        assert!(x0.max_abs_diff(&x1).unwrap() < 1e-13 && y0.max_abs_diff(&y1).unwrap() < 1e-13);
        let gmb1 = build_general_osc(
            OscParams::new(OscKind::GMB, d, 8)
                .with_ground(re(0.3), re(0.2))
                .with_gen(GenBracketParams::symmetric()),
        )
        .unwrap();
        assert!(mb.a.max_abs_diff(&gmb1.a).unwrap() > 1e-3);
    }

    #[test]
    fn hy_commutator_tends_to_identity() {
        let r = build_fock_osc(OscKind::HY, real(1.0 + 1e-8), None, 10).unwrap();
        let comm = commutator(&r.a, &r.adag).unwrap();
        assert!(interior_residual(&comm, &r.identity(), w11()).unwrap() < 1e-6);
    }

    #[test]
    fn spin_half() {
        let s = build_spin_rep(0.5, SpinBase::Q(unit(1.1))).unwrap();
        let comm = commutator(&s.jp, &s.jm).unwrap();
        assert!((comm.get(0, 0) - re(-1.0)).norm() < 1e-14);
        assert!((comm.get(1, 1) - re(1.0)).norm() < 1e-14);
        assert!(verify_spin_relations(&s, InteriorWindow::FULL, 1e-12).unwrap().passed());
    }

    #[test]
    fn spin_one_base_q_two() {
        let s = build_spin_rep(1.0, SpinBase::Q(real(2.0))).unwrap();
        let comm = commutator(&s.jp, &s.jm).unwrap();
        let expect = [-2.5, 0.0, 2.5];
        for (i, e) in expect.iter().enumerate() {
            assert!((comm.get(i, i) - re(*e)).norm() < 1e-12);
        }
        assert!(comm.max_off_diagonal() < 1e-14);
    }

    #[test]
    fn undeformed_spin_one() {
        let s = build_spin_rep(1.0, SpinBase::Undeformed).unwrap();
        let comm = commutator(&s.jp, &s.jm).unwrap();
        assert!(comm.max_abs_diff(&s.j0.scale(re(2.0))).unwrap() < 1e-14);
    }

    #[test]
    fn spin_reps_close_without_a_window() {
        let d = unit(0.7);
        for base in [SpinBase::Undeformed, SpinBase::Q(d), SpinBase::SqrtQ(d), SpinBase::Q(real(1.5))] {
            for j in [0.5, 1.0, 1.5, 2.0, 3.5] {
                let s = build_spin_rep(j, base).unwrap();
                assert!(s.is_complete());
                let rep = verify_spin_relations(&s, InteriorWindow::FULL, 1e-12).unwrap();
                assert!(rep.passed(), "j={j} {base:?}: {rep:?}");
            }
        }
    }

    #[test]
    fn spin_window_holds_on_interior() {
        let s = build_spin_window(50.0, SpinBase::Undeformed, -100, 10).unwrap();
        assert!(!s.is_complete());
        assert!(verify_spin_relations(&s, InteriorWindow::new(0, 1), 1e-10).unwrap().passed());
        assert!(!verify_spin_relations(&s, InteriorWindow::FULL, 1e-10).unwrap().passed());
        assert!(build_spin_window(2.0, SpinBase::Undeformed, -3, 2).is_err());
        assert!(build_spin_window(2.0, SpinBase::Undeformed, 2, 3).is_err());
        assert!(build_spin_rep(0.3, SpinBase::Undeformed).is_err());
    }

    #[test]
    fn structure_functions() {
        let d = unit(0.7);
        let s = build_spin_rep(2.0, SpinBase::Q(d)).unwrap();
        let psi = |x: Complex64| d.bracket(x) * d.bracket(x + 1.0);
        let rep = check_structure_function(&s.jp, &s.jm, &s.j0, psi, InteriorWindow::FULL, 1e-12).unwrap();
        assert!(rep.passed());

        let u = build_spin_rep(1.5, SpinBase::Undeformed).unwrap();
        let rep = check_structure_function(&u.jp, &u.jm, &u.j0, |x| x * (x + 1.0), InteriorWindow::FULL, 1e-12).unwrap();
        assert!(rep.passed());

        // Ψ(x) = x gives Ψ(J₀) − Ψ(J₀ − 1) = 1: residual is ‖[J₊, J₋] − I‖.
        let rep = check_structure_function(&u.jp, &u.jm, &u.j0, |x| x, InteriorWindow::FULL, 1e-12).unwrap();
        let expect = interior_residual(&commutator(&u.jp, &u.jm).unwrap(), &u.identity(), InteriorWindow::FULL).unwrap();
        assert!((rep.residual("mcr") - expect).abs() < 1e-14);
        assert!(!rep.passed());

        assert!(check_structure_function(&u.jp, &u.jm, &u.jp, |x| x, InteriorWindow::FULL, 1e-12).is_err());
    }
}
