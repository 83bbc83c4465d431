//! Contractions of (q-)su(2) onto oscillator algebras.
//!
//! - [`apply_iw`]: the undeformed Inönü–Wigner map `h± = μJ±`,
//!   `h₀ = J₀ + (η/2μ²)ξ`, `1_h = ξ`.
//! - [`hy_from_suq`]: its q-analogue, sending su_√q(2) onto the HY oscillator.
//! - [`ck_contract`]: the Chaichian–Kulish map onto `𝒜_q`, `[A, A†] = q^{−2N}`.
//! - [`coaction_check`]: the coaction `𝒜_q → 𝒜_q ⊗ su_q(2)` and its axioms.
//! - [`celeghini_contract`]: the contraction with `log q = η²ω` at finite η.
//!
//! ξ and the Celeghini generator K are central and are represented as scalar
//! multiples of the identity.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linop::{commutator, diag_fn, interior_norm, interior_residual, tensor, Basis, InteriorWindow, Op};
use crate::qnum::{solve_iw_scalars, Deformation, IWScalars};
use crate::report::{Check, VerificationReport};
use crate::reps::{build_spin_window, re, SpinBase, SpinRep, ONE, ZERO};
use crate::{Error, Result};

const EXACT_TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Undeformed Inönü–Wigner

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IWTransform {
    pub mu: Complex64,
    pub eta: Complex64,
    pub xi: Complex64,
}

impl IWTransform {
    pub fn new(mu: Complex64, eta: Complex64, xi: Complex64) -> Result<Self> {
        if mu.norm() == 0.0 {
            return Err(Error::InvalidParams("mu = 0: the transformation is singular".into()));
        }
        Ok(Self { mu, eta, xi })
    }

    pub fn real(mu: f64, eta: f64, xi: f64) -> Result<Self> {
        Self::new(re(mu), re(eta), re(xi))
    }

    /// `ηξ / (2μ²)`.
    pub fn shift(&self) -> Complex64 {
        self.eta * self.xi / (2.0 * self.mu * self.mu)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IWImage {
    pub h_plus: Op,
    pub h_minus: Op,
    pub h0: Op,
    pub unit: Op,
}

/// Map an undeformed spin rep and check `[h₀, h±] = ±h±`,
/// `[h₊, h₋] = 2μ²h₀ − η1_h`, `[h±, 1_h] = 0` (no window).
pub fn apply_iw(spin: &SpinRep, t: IWTransform) -> Result<(IWImage, VerificationReport)> {
    if spin.base != SpinBase::Undeformed {
        return Err(Error::InvalidParams("apply_iw expects an undeformed spin rep".into()));
    }
    if t.mu.norm() == 0.0 {
        return Err(Error::InvalidParams("mu = 0: the transformation is singular".into()));
    }
    let id = spin.identity();
    let img = IWImage {
        h_plus: spin.jp.scale(t.mu),
        h_minus: spin.jm.scale(t.mu),
        h0: &spin.j0 + &id.scale(t.shift()),
        unit: id.scale(t.xi),
    };
    let w = InteriorWindow::FULL;
    let mut rep = VerificationReport::new();
    rep.param("j", spin.j());
    rep.param_complex("mu", t.mu);
    rep.param_complex("eta", t.eta);
    rep.param_complex("xi", t.xi);
    let h0 = &img.h0;
    rep.record("contr_a_raise", interior_residual(&commutator(h0, &img.h_plus)?, &img.h_plus, w)?, EXACT_TOL);
    rep.record("contr_a_lower", interior_residual(&commutator(h0, &img.h_minus)?, &(-&img.h_minus), w)?, EXACT_TOL);
    let rhs = h0.scale(2.0 * t.mu * t.mu) - img.unit.scale(t.eta);
    rep.record("contr_b", interior_residual(&commutator(&img.h_plus, &img.h_minus)?, &rhs, w)?, EXACT_TOL);
    let central = interior_norm(&commutator(&img.h_plus, &img.unit)?, w)?.max(interior_norm(&commutator(&img.h_minus, &img.unit)?, w)?);
    rep.record("contr_central", central, EXACT_TOL);
    Ok((img, rep))
}

/// `‖[h₊, h₋] + η1_h‖` for each μ, on the lowest-weight window of dimension
/// `dim` of the spin-j multiplet with `j ≈ ηξ/(2μ²)` (rounded to a half-integer;
/// ηξ must be real and positive).
///
/// At fixed j the quantity tends to `ηξ` instead of 0: the limit μ → 0 only
/// makes sense together with j → ∞ on the states near the lowest weight.
pub fn iw_mu_sequence(mus: &[f64], eta: f64, xi: f64, dim: usize) -> Result<Vec<(f64, f64)>> {
    let ex = eta * xi;
    if !(ex > 0.0) {
        return Err(Error::InvalidParams(format!("eta*xi = {ex} must be positive")));
    }
    mus.iter()
        .map(|&mu| {
            let j = ((ex / (mu * mu)).round() / 2.0).max(0.5 * (dim as f64 - 1.0)).max(0.5);
            let two_j = (2.0 * j).round() as i64;
            let spin = build_spin_window(j, SpinBase::Undeformed, -two_j, dim)?;
            let (img, _) = apply_iw(&spin, IWTransform::real(mu, eta, xi)?)?;
            let lhs = commutator(&img.h_plus, &img.h_minus)? + img.unit.scale(re(eta));
            Ok((mu, interior_norm(&lhs, InteriorWindow::new(0, 1))?))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// su_√q(2) → HY

/// `(a, a†, N)` obtained from a spin rep, with the scalars used.
#[derive(Debug, Clone, PartialEq)]
pub struct HyTriple {
    pub a: Op,
    pub adag: Op,
    pub n_op: Op,
    pub scalars: IWScalars,
}

/// `a† = μJ₊`, `a = μJ₋`, `N = J₀ + iα′/log q − 1/2` on a rep whose brackets are
/// in base q^{1/2}; checks `[N, a†] = a†`, `[N, a] = −a` (`macf_a_raise`,
/// `macf_a_lower`) and `[a, a†] = [N + 1] − [N]` in base q (`hyo_a`).
pub fn hy_from_suq(spin: &SpinRep, ell: i64, w: InteriorWindow, tol: f64) -> Result<(HyTriple, VerificationReport)> {
    let SpinBase::SqrtQ(d) = spin.base else {
        return Err(Error::InvalidParams("hy_from_suq expects a spin rep in base q^(1/2)".into()));
    };
    let sc = solve_iw_scalars(&d, ell)?;
    let shift = sc.shift() - 0.5;
    let t = HyTriple {
        a: spin.jm.scale(sc.mu),
        adag: spin.jp.scale(sc.mu),
        n_op: &spin.j0 + &spin.identity().scale(shift),
        scalars: sc,
    };
    let mut rep = VerificationReport::new();
    rep.param("j", spin.j());
    rep.param_complex("q", d.q());
    if let Some(e) = d.epsilon() {
        rep.param("epsilon", e);
    }
    rep.param("ell", ell);
    rep.param_complex("mu", sc.mu);
    rep.param_complex("eta_xi", sc.eta_xi);
    let n = &t.n_op;
    rep.record("macf_a_raise", interior_residual(&commutator(n, &t.adag)?, &t.adag, w)?, tol);
    rep.record("macf_a_lower", interior_residual(&commutator(n, &t.a)?, &(-&t.a), w)?, tol);
    let rhs = diag_fn(|x| d.bracket(x + 1.0) - d.bracket(x), n)?;
    rep.record("hyo_a", interior_residual(&commutator(&t.a, &t.adag)?, &rhs, w)?, tol);
    Ok((t, rep))
}

// ---------------------------------------------------------------------------
// 𝒜_q and the Chaichian–Kulish map

#[derive(Debug, Clone, PartialEq)]
pub struct AqRep {
    pub a: Op,
    pub adag: Op,
    pub n_op: Op,
    pub d: Deformation,
}

impl AqRep {
    pub fn dim(&self) -> usize {
        self.n_op.dim()
    }

    pub fn identity(&self) -> Op {
        Op::identity(self.n_op.basis().clone())
    }

    /// `q^{kN}`.
    pub fn qpow_n(&self, k: f64) -> Op {
        let d = self.d;
        diag_fn(|x| d.qpow(k * x), &self.n_op).expect("N is diagonal")
    }
}

/// `c_n = Σ_{m<n} q^{−2m}`.
pub fn aq_coefficient(d: &Deformation, n: usize) -> Complex64 {
    (0..n).map(|m| d.qpow_re(-2.0 * m as f64)).sum()
}

/// Fock ladder of `𝒜_q`: `A|n⟩ = √c_n |n−1⟩`, `A†|n⟩ = √c_{n+1} |n+1⟩`.
pub fn build_aq_rep(d: Deformation, dim: usize) -> Result<AqRep> {
    if dim < 2 {
        return Err(Error::InvalidParams(format!("dimension {dim} < 2")));
    }
    let basis = Basis::Fock { n_min: 0, dim };
    let n_op = Op::from_diag(basis.clone(), (0..dim).map(|n| re(n as f64)));
    let mut a = Op::zeros(basis.clone());
    let mut adag = Op::zeros(basis);
    for n in 1..dim {
        let c = aq_coefficient(&d, n).sqrt();
        a.set(n - 1, n, c);
        adag.set(n, n - 1, c);
    }
    Ok(AqRep { a, adag, n_op, d })
}

/// `[N, A] = −A`, `[N, A†] = A†`, `[A, A†] = q^{−2N}`.
pub fn verify_aq_rep(aq: &AqRep, w: InteriorWindow, tol: f64) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new();
    rep.param_complex("q", aq.d.q());
    rep.param("dim", aq.dim());
    rep.record("aq_raise", interior_residual(&commutator(&aq.n_op, &aq.adag)?, &aq.adag, w)?, tol);
    rep.record("aq_lower", interior_residual(&commutator(&aq.n_op, &aq.a)?, &(-&aq.a), w)?, tol);
    rep.record("aq_b", interior_residual(&commutator(&aq.a, &aq.adag)?, &aq.qpow_n(-2.0), w)?, tol);
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum CkPrefactor {
    /// `√(q − q⁻¹) / q^s`.
    #[default]
    Sqrt,
    /// `(q − q⁻¹) / q^s`, the prefactor as originally printed.
    Linear,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CkContraction {
    pub a: Op,
    pub adag: Op,
    pub n_op: Op,
    pub s: f64,
    /// `r(s)`: interior residual of `[A, A†] = q^{−2N}`.
    pub residual: f64,
}

/// `A = p(s)J₊`, `A† = p(s)J₋`, `N = s − J₀` on a spin rep in base q.
pub fn ck_contract(spin: &SpinRep, s: f64, prefactor: CkPrefactor, w: InteriorWindow) -> Result<CkContraction> {
    let SpinBase::Q(d) = spin.base else {
        return Err(Error::InvalidParams("ck_contract expects a spin rep in base q".into()));
    };
    let gap = d.qpow_re(1.0) - d.qpow_re(-1.0);
    let p = match prefactor {
        CkPrefactor::Sqrt => gap.sqrt(),
        CkPrefactor::Linear => gap,
    } * d.qpow_re(-s);
    let a = spin.jp.scale(p);
    let adag = spin.jm.scale(p);
    let n_op = spin.identity().scale(re(s)) - &spin.j0;
    let target = diag_fn(|x| d.qpow(-2.0 * x), &n_op)?;
    let residual = interior_residual(&commutator(&a, &adag)?, &target, w)?;
    Ok(CkContraction { a, adag, n_op, s, residual })
}

/// `r(s)` over a sequence of s values with the fitted slope of `log r` against s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CkScan {
    pub q: f64,
    pub j: f64,
    pub prefactor: CkPrefactor,
    pub s: Vec<f64>,
    pub r: Vec<f64>,
    pub slope: f64,
}

impl CkScan {
    /// `−2 ln q`.
    pub fn expected_slope(&self) -> f64 {
        -2.0 * self.q.ln()
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.r.windows(2).all(|p| p[1] < p[0])
    }

    pub fn last(&self) -> f64 {
        *self.r.last().expect("non-empty scan")
    }

    /// Checks `ck_monotone` (largest ratio r(s_{i+1})/r(s_i), must be < 1),
    /// `ck_slope` (relative slope error, < `slope_tol`) and `ck_target`
    /// (r at the largest s, < `r_tol`).
    pub fn report(&self, slope_tol: f64, r_tol: f64) -> VerificationReport {
        let mut rep = VerificationReport::new();
        rep.param("q", self.q);
        rep.param("j", self.j);
        rep.param("prefactor", format!("{:?}", self.prefactor));
        rep.param("s", self.s.clone());
        let ratio = self.r.windows(2).map(|p| p[1] / p[0]).fold(0.0, f64::max);
        rep.push(Check::new("ck_monotone", ratio, 1.0));
        let rel = ((self.slope - self.expected_slope()) / self.expected_slope()).abs();
        rep.push(Check::new("ck_slope", rel, slope_tol));
        rep.push(Check::new("ck_target", self.last(), r_tol));
        rep.notes.push(format!(
            "r(s) = {:?}; fitted slope {:.6}, -2 ln q = {:.6}",
            self.r,
            self.slope,
            self.expected_slope()
        ));
        if self.prefactor == CkPrefactor::Linear {
            rep.notes.push(format!(
                "linear prefactor: [A,A+] tends to (q - 1/q) q^(-2N) = {:.6} q^(-2N) at fixed N, not q^(-2N)",
                self.q - 1.0 / self.q
            ));
        }
        rep
    }
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Run [`ck_contract`] on the full spin-j rep of real `q` for every s.
pub fn ck_scan(q: f64, j: f64, s_values: &[f64], prefactor: CkPrefactor, w: InteriorWindow) -> Result<CkScan> {
    if s_values.len() < 2 {
        return Err(Error::InvalidParams("need at least two s values".into()));
    }
    let d = Deformation::real(q)?;
    let spin = crate::reps::build_spin_rep(j, SpinBase::Q(d))?;
    let r = s_values
        .iter()
        .map(|&s| ck_contract(&spin, s, prefactor, w).map(|c| c.residual))
        .collect::<Result<Vec<_>>>()?;
    let logs: Vec<f64> = r.iter().map(|x| x.ln()).collect();
    Ok(CkScan {
        q,
        j,
        prefactor,
        s: s_values.to_vec(),
        slope: fit_slope(s_values, &logs),
        r,
    })
}

// ---------------------------------------------------------------------------
// Coaction

/// Generators of `𝒜_q` appearing in coaction images.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AqGen {
    One,
    N,
    A,
    Adag,
    /// `q^{kN}`.
    QPowN(f64),
}

/// Generators of su_q(2) appearing in coaction images.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpinGen {
    One,
    J0,
    Jp,
    Jm,
    /// `q^{kJ₀}`.
    QPowJ0(f64),
}

/// Coproduct on su_q(2) used for the coassociativity axiom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Coproduct {
    /// `Δ(J±) = J± ⊗ q^{−J₀} + q^{J₀} ⊗ J±`, the one compatible with the coaction.
    #[default]
    Compatible,
    /// `Δ(J±) = J± ⊗ q^{J₀} + q^{−J₀} ⊗ J±`.
    Mirrored,
}

type Term<L, R> = (Complex64, L, R);

/// `Ψ(x)` as a sum of elementary tensors.
pub fn coaction(d: &Deformation, x: AqGen) -> Vec<Term<AqGen, SpinGen>> {
    let root = (d.qpow_re(1.0) - d.qpow_re(-1.0)).sqrt();
    match x {
        AqGen::One => vec![(ONE, AqGen::One, SpinGen::One)],
        AqGen::N => vec![(ONE, AqGen::N, SpinGen::One), (-ONE, AqGen::One, SpinGen::J0)],
        AqGen::A => vec![(ONE, AqGen::A, SpinGen::QPowJ0(-1.0)), (root, AqGen::QPowN(-1.0), SpinGen::Jp)],
        AqGen::Adag => vec![(ONE, AqGen::Adag, SpinGen::QPowJ0(-1.0)), (root, AqGen::QPowN(-1.0), SpinGen::Jm)],
        AqGen::QPowN(k) => vec![(ONE, AqGen::QPowN(k), SpinGen::QPowJ0(-k))],
    }
}

/// `Δ(x)` for a spin generator.
pub fn coproduct(x: SpinGen, c: Coproduct) -> Vec<Term<SpinGen, SpinGen>> {
    let sign = match c {
        Coproduct::Compatible => 1.0,
        Coproduct::Mirrored => -1.0,
    };
    match x {
        SpinGen::One => vec![(ONE, SpinGen::One, SpinGen::One)],
        SpinGen::J0 => vec![(ONE, SpinGen::J0, SpinGen::One), (ONE, SpinGen::One, SpinGen::J0)],
        SpinGen::Jp | SpinGen::Jm => vec![
            (ONE, x, SpinGen::QPowJ0(-sign)),
            (ONE, SpinGen::QPowJ0(sign), x),
        ],
        SpinGen::QPowJ0(k) => vec![(ONE, SpinGen::QPowJ0(k), SpinGen::QPowJ0(k))],
    }
}

/// `ε(x)`: zero on `J±`, `J₀`; one on `1` and `q^{kJ₀}`.
pub fn counit(x: SpinGen) -> Complex64 {
    match x {
        SpinGen::One | SpinGen::QPowJ0(_) => ONE,
        SpinGen::J0 | SpinGen::Jp | SpinGen::Jm => ZERO,
    }
}

pub fn aq_op(aq: &AqRep, x: AqGen) -> Op {
    match x {
        AqGen::One => aq.identity(),
        AqGen::N => aq.n_op.clone(),
        AqGen::A => aq.a.clone(),
        AqGen::Adag => aq.adag.clone(),
        AqGen::QPowN(k) => aq.qpow_n(k),
    }
}

pub fn spin_op(spin: &SpinRep, d: &Deformation, x: SpinGen) -> Op {
    match x {
        SpinGen::One => spin.identity(),
        SpinGen::J0 => spin.j0.clone(),
        SpinGen::Jp => spin.jp.clone(),
        SpinGen::Jm => spin.jm.clone(),
        SpinGen::QPowJ0(k) => diag_fn(|m| d.qpow(k * m), &spin.j0).expect("J0 is diagonal"),
    }
}

fn sum_ops(basis: Basis, ops: impl IntoIterator<Item = Op>) -> Op {
    ops.into_iter().fold(Op::zeros(basis), |acc, op| acc + op)
}

fn psi_op(aq: &AqRep, spin: &SpinRep, x: AqGen) -> Op {
    let basis = aq.n_op.basis().tensor(spin.j0.basis());
    sum_ops(
        basis,
        coaction(&aq.d, x)
            .into_iter()
            .map(|(c, l, r)| tensor(&aq_op(aq, l), &spin_op(spin, &aq.d, r)).scale(c)),
    )
}

/// `(Ψ ⊗ id)∘Ψ(x)` and `(id ⊗ Δ)∘Ψ(x)` on `𝒜_q ⊗ su_q(2) ⊗ su_q(2)`.
fn coassociativity_sides(aq: &AqRep, spin: &SpinRep, x: AqGen, c: Coproduct) -> (Op, Op) {
    let d = aq.d;
    let basis = aq.n_op.basis().tensor(spin.j0.basis()).tensor(spin.j0.basis());
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (c1, l, r) in coaction(&d, x) {
        left.push(tensor(&psi_op(aq, spin, l), &spin_op(spin, &d, r)).scale(c1));
        for (c2, r1, r2) in coproduct(r, c) {
            let rr = tensor(&spin_op(spin, &d, r1), &spin_op(spin, &d, r2));
            right.push(tensor(&aq_op(aq, l), &rr).scale(c1 * c2));
        }
    }
    (sum_ops(basis.clone(), left), sum_ops(basis, right))
}

/// Coaction axioms on `𝒜_q ⊗ su_q(2)` with per-factor window `w`:
///
/// - homomorphism for the pairs (N, A), (N, A†), (A, A†):
///   `coaction_hom_n_a`, `coaction_hom_n_adag`, `coaction_hom_a_adag`;
/// - counit `(id ⊗ ε)∘Ψ = id` on N, A, A†: `coaction_counit`;
/// - coassociativity `(Ψ ⊗ id)∘Ψ = (id ⊗ Δ)∘Ψ` on N, A, A†, q^{−2N}:
///   `coaction_coassoc` (with [`Coproduct::Compatible`]; the mirrored coproduct's
///   residual is recorded in the notes). Both sides are linear in the
///   generators, so this one is compared on the whole space;
/// - `Δ` is an algebra map on su_q(2): `coproduct_hom`.
pub fn coaction_check(aq: &AqRep, spin: &SpinRep, w: InteriorWindow, tol: f64) -> Result<VerificationReport> {
    let SpinBase::Q(d) = spin.base else {
        return Err(Error::InvalidParams("coaction_check expects a spin rep in base q".into()));
    };
    if d != aq.d {
        return Err(Error::Mismatch("A_q rep and spin rep must share one deformation".into()));
    }
    let mut rep = VerificationReport::new();
    rep.param_complex("q", d.q());
    rep.param("dim", aq.dim());
    rep.param("j", spin.j());
    rep.param("window", format!("({}, {})", w.low_margin, w.high_margin));

    let psi = |x| psi_op(aq, spin, x);
    let (pn, pa, pad) = (psi(AqGen::N), psi(AqGen::A), psi(AqGen::Adag));
    rep.record("coaction_hom_n_a", interior_residual(&commutator(&pn, &pa)?, &(-&pa), w)?, tol);
    rep.record("coaction_hom_n_adag", interior_residual(&commutator(&pn, &pad)?, &pad, w)?, tol);
    rep.record("coaction_hom_a_adag", interior_residual(&commutator(&pa, &pad)?, &psi(AqGen::QPowN(-2.0)), w)?, tol);

    let mut counit_res: f64 = 0.0;
    for x in [AqGen::N, AqGen::A, AqGen::Adag] {
        let image = sum_ops(
            aq.n_op.basis().clone(),
            coaction(&d, x).into_iter().map(|(c, l, r)| aq_op(aq, l).scale(c * counit(r))),
        );
        counit_res = counit_res.max(image.max_abs_diff(&aq_op(aq, x))?);
    }
    rep.push(Check::new("coaction_counit", counit_res, EXACT_TOL));

    let coassoc = |c: Coproduct| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for x in [AqGen::N, AqGen::A, AqGen::Adag, AqGen::QPowN(-2.0)] {
            let (l, r) = coassociativity_sides(aq, spin, x, c);
            worst = worst.max(l.max_abs_diff(&r)?);
        }
        Ok(worst)
    };
    rep.record("coaction_coassoc", coassoc(Coproduct::Compatible)?, tol);
    rep.notes.push(format!(
        "coassociativity with Delta(J+-) = J+- (x) q^J0 + q^-J0 (x) J+-: residual {:.6e}",
        coassoc(Coproduct::Mirrored)?
    ));

    let delta = |x: SpinGen| {
        let basis = spin.j0.basis().tensor(spin.j0.basis());
        sum_ops(
            basis,
            coproduct(x, Coproduct::Compatible)
                .into_iter()
                .map(|(c, l, r)| tensor(&spin_op(spin, &d, l), &spin_op(spin, &d, r)).scale(c)),
        )
    };
    let two_delta_j0 = delta(SpinGen::J0).scale(re(2.0));
    let target = diag_fn(|z| d.bracket(z), &two_delta_j0)?;
    let r = interior_residual(&commutator(&delta(SpinGen::Jp), &delta(SpinGen::Jm))?, &target, InteriorWindow::FULL)?;
    rep.push(Check::new("coproduct_hom", r, EXACT_TOL.max(tol)));
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Celeghini

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CeleghiniParams {
    pub eta: f64,
    pub omega: f64,
    pub kappa: f64,
}

impl CeleghiniParams {
    pub fn new(eta: f64, omega: f64, kappa: f64) -> Result<Self> {
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::InvalidParams(format!("eta = {eta} must be positive")));
        }
        if omega == 0.0 || !omega.is_finite() {
            return Err(Error::InvalidParams(format!("omega = {omega} must be non-zero")));
        }
        if !kappa.is_finite() {
            return Err(Error::InvalidParams(format!("kappa = {kappa} is not finite")));
        }
        Ok(Self { eta, omega, kappa })
    }

    /// `q = e^{η²ω}`.
    pub fn deformation(&self) -> Result<Deformation> {
        Deformation::real((self.eta * self.eta * self.omega).exp())
    }

    /// `sinh(ωH/2)/(ω/2)` with `H = 2κ`.
    pub fn candidate_half(&self) -> f64 {
        (self.omega * self.kappa).sinh() / (self.omega / 2.0)
    }

    /// `sinh(2ωκ)/ω`.
    pub fn candidate_double(&self) -> f64 {
        (2.0 * self.omega * self.kappa).sinh() / self.omega
    }

    /// Half-integer closest to `κ/η²`.
    pub fn spin(&self) -> f64 {
        ((2.0 * self.kappa / (self.eta * self.eta)).round() / 2.0).max(0.5)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CeleghiniImage {
    pub b: Op,
    pub bdag: Op,
    pub n_op: Op,
    pub h: Op,
}

/// One finite-η evaluation: residuals of `[B, B†]` against both candidate limits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CeleghiniPoint {
    pub eta: f64,
    pub j: f64,
    pub rho_half: f64,
    pub rho_double: f64,
    pub grading: f64,
}

/// `B = ηJ₊`, `B† = ηJ₋`, `N = −J₀ + η⁻²κ`, `H = 2κ` on a spin rep in base `q = e^{η²ω}`.
pub fn celeghini_contract(spin: &SpinRep, p: CeleghiniParams, w: InteriorWindow) -> Result<(CeleghiniImage, CeleghiniPoint)> {
    let SpinBase::Q(d) = spin.base else {
        return Err(Error::InvalidParams("celeghini_contract expects a spin rep in base q".into()));
    };
    let expect = p.deformation()?;
    if (d.log_q() - expect.log_q()).norm() > 1e-12 * expect.log_q().norm().max(1.0) {
        return Err(Error::Mismatch("spin rep must use q = exp(eta^2 omega)".into()));
    }
    let id = spin.identity();
    let eta = re(p.eta);
    let img = CeleghiniImage {
        b: spin.jp.scale(eta),
        bdag: spin.jm.scale(eta),
        n_op: id.scale(re(p.kappa / (p.eta * p.eta))) - &spin.j0,
        h: id.scale(re(2.0 * p.kappa)),
    };
    let comm = commutator(&img.b, &img.bdag)?;
    let grading = interior_residual(&commutator(&img.n_op, &img.b)?, &(-&img.b), w)?
        .max(interior_residual(&commutator(&img.n_op, &img.bdag)?, &img.bdag, w)?)
        .max(interior_norm(&commutator(&img.h, &img.b)?, w)?);
    let point = CeleghiniPoint {
        eta: p.eta,
        j: spin.j(),
        rho_half: interior_residual(&comm, &id.scale(re(p.candidate_half())), w)?,
        rho_double: interior_residual(&comm, &id.scale(re(p.candidate_double())), w)?,
        grading,
    };
    Ok((img, point))
}

/// Evaluate the contraction for each η on the `dim` highest-weight states of the
/// spin-j multiplet with `j ≈ κ/η²`, and report the trend.
///
/// Checks: `cele_grading` (`[N, B] = −B`, `[N, B†] = B†`, `[H, B] = 0`, exact),
/// `cele_trend` (largest ratio ρ(η_{i+1})/ρ(η_i) against the candidate ρ tends
/// to zero for, must be < 1). Which candidate that is, and both limiting
/// residuals, go into the notes; the limit itself is not asserted.
pub fn celeghini_scan(etas: &[f64], omega: f64, kappa: f64, dim: usize) -> Result<(Vec<CeleghiniPoint>, VerificationReport)> {
    if etas.len() < 2 {
        return Err(Error::InvalidParams("need at least two eta values".into()));
    }
    let w = InteriorWindow::new(1, 0);
    let points = etas
        .iter()
        .map(|&eta| {
            let p = CeleghiniParams::new(eta, omega, kappa)?;
            let j = p.spin();
            let two_j = (2.0 * j).round() as i64;
            let dim = dim.min(two_j as usize + 1);
            let spin = build_spin_window(j, SpinBase::Q(p.deformation()?), two_j - 2 * (dim as i64 - 1), dim)?;
            celeghini_contract(&spin, p, w).map(|(_, pt)| pt)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rep = VerificationReport::new();
    rep.param("omega", omega);
    rep.param("kappa", kappa);
    rep.param("eta", etas.to_vec());
    let grading = points.iter().map(|p| p.grading).fold(0.0, f64::max);
    rep.push(Check::new("cele_grading", grading, EXACT_TOL));
    let last = points.last().expect("non-empty");
    let use_double = last.rho_double <= last.rho_half;
    let rho = |p: &CeleghiniPoint| if use_double { p.rho_double } else { p.rho_half };
    let ratio = points.windows(2).map(|w| rho(&w[1]) / rho(&w[0])).fold(0.0, f64::max);
    rep.push(Check::new("cele_trend", ratio, 1.0));
    let cp = CeleghiniParams::new(last.eta, omega, kappa)?;
    rep.notes.push(format!(
        "[B,B+] approaches {} = {:.12}; residual against sinh(2 omega kappa)/omega: {:.6e}, against sinh(omega kappa)/(omega/2) = {:.12}: {:.6e}",
        if use_double { "sinh(2 omega kappa)/omega" } else { "sinh(omega kappa)/(omega/2)" },
        if use_double { cp.candidate_double() } else { cp.candidate_half() },
        last.rho_double,
        cp.candidate_half(),
        last.rho_half
    ));
    Ok((points, rep))
}
