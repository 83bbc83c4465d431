//! Finite HY ladders at `q = e^{iε}`: the truncation condition
//! `[ν₀ + k + 1] = [ν₀]`, its solutions
//! `ν₀ε = −(k+1)ε/2 + (ℓ + 1/2)π`, and positivity of the norms
//! `[n + ν₀] − [ν₀] ≥ 0` for `n = 1..k`.
//!
//! Positivity margins are computed twice, from q-brackets and from
//! `((−1)^ℓ / sin ε){cos(((k+1)/2 − n)ε) − cos((k+1)ε/2)}`; a cell is feasible
//! when every margin is `≥ −1e−12`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linop::InteriorWindow;
use crate::qnum::Deformation;
use crate::report::VerificationReport;
use crate::reps::{build_general_osc, re, verify_osc_relations, OscKind, OscParams, ZERO};
use crate::{Error, Result};

pub const FEASIBILITY_TOL: f64 = 1e-12;
/// Cells whose smallest margin is this close to zero are flagged borderline.
pub const BORDERLINE_TOL: f64 = 1e-9;
/// Grid points with `|sin ε|` below this are skipped by the scan.
pub const SKIP_SIN_TOL: f64 = 1e-9;
const MIN_SIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationProblem {
    pub k: u32,
    pub ell: i64,
    pub epsilon: f64,
}

impl TruncationProblem {
    pub fn new(k: u32, ell: i64, epsilon: f64) -> Result<Self> {
        let t = Self { k, ell, epsilon };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 2.0 * PI) {
            return Err(Error::InvalidParams(format!("epsilon = {} outside (0, 2pi)", self.epsilon)));
        }
        if self.epsilon.sin().abs() < MIN_SIN {
            return Err(Error::InvalidDeformation(format!("sin(epsilon) = 0 at epsilon = {}", self.epsilon)));
        }
        Ok(())
    }

    pub fn deformation(&self) -> Result<Deformation> {
        Deformation::unit_circle(self.epsilon)
    }
}

/// `λ_n = λ₀ + [n + ν₀] − [ν₀]` for each n.
///
/// Cross-checked against the factored form
/// `λ₀ + [n]_{q^{1/2}} (q^{ν₀+n/2} + q^{−ν₀−n/2}) / (q^{1/2} + q^{−1/2})`;
/// disagreement beyond 1e−12 (relative to the magnitudes involved) is an error.
pub fn lambda_seq(nu0: Complex64, lambda0: Complex64, d: &Deformation, ns: impl IntoIterator<Item = i64>) -> Result<Vec<Complex64>> {
    ns.into_iter()
        .map(|n| {
            let (simple, factored) = lambda_forms(nu0, lambda0, d, n)?;
            let scale = 1.0 + simple.norm().max(d.bracket(nu0).norm());
            if (simple - factored).norm() > 1e-12 * scale {
                return Err(Error::Mismatch(format!("lambda_{n}: forms disagree ({simple} vs {factored})")));
            }
            Ok(simple)
        })
        .collect()
}

/// Both forms of `λ_n`: `(bracket difference, factored)`.
pub fn lambda_forms(nu0: Complex64, lambda0: Complex64, d: &Deformation, n: i64) -> Result<(Complex64, Complex64)> {
    let x = n as f64;
    let simple = lambda0 + d.bracket(nu0 + x) - d.bracket(nu0);
    let h = d.sqrt()?;
    let num = d.qpow(nu0 + x / 2.0) + d.qpow(-nu0 - x / 2.0);
    let den = d.qpow_re(0.5) + d.qpow_re(-0.5);
    Ok((simple, lambda0 + h.bracket_re(x) * num / den))
}

/// `ν₀ = (−(k+1)ε/2 + (ℓ + 1/2)π) / ε`.
pub fn solve_truncation(t: &TruncationProblem) -> Result<f64> {
    t.validate()?;
    let k1 = t.k as f64 + 1.0;
    Ok((-k1 * t.epsilon / 2.0 + (t.ell as f64 + 0.5) * PI) / t.epsilon)
}

/// `|[ν₀ + k + 1] − [ν₀]|` at `q = e^{iε}`.
pub fn truncation_residual(t: &TruncationProblem, nu0: f64) -> Result<f64> {
    let d = t.deformation()?;
    Ok((d.bracket_re(nu0 + t.k as f64 + 1.0) - d.bracket_re(nu0)).norm())
}

/// Closest approach to a truncation solution for real `q`, searched over
/// `ν₀ ∈ [lo, hi]` with the given step: `(ν₀, |[ν₀ + k + 1] − [ν₀]|)`.
///
/// For real `q > 0` the bracket is strictly monotone, so no `k ≥ 0` truncates.
pub fn real_q_search(q: f64, k: u32, lo: f64, hi: f64, step: f64) -> Result<(f64, f64)> {
    if !(step > 0.0 && hi > lo) {
        return Err(Error::InvalidParams("empty search range".into()));
    }
    let d = Deformation::real(q)?;
    let steps = ((hi - lo) / step).round() as usize;
    let best = (0..=steps)
        .into_par_iter()
        .map(|i| {
            let nu0 = lo + i as f64 * step;
            (nu0, (d.bracket_re(nu0 + k as f64 + 1.0) - d.bracket_re(nu0)).norm())
        })
        .reduce(|| (f64::NAN, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
    Ok(best)
}

/// The truncation solver for real `q`: always [`Error::NoSolution`] for `k ≥ 0`,
/// with the closest approach found by [`real_q_search`] in the message.
pub fn solve_truncation_real(q: f64, k: u32) -> Result<f64> {
    let (nu0, r) = real_q_search(q, k, -10.0, 10.0, 1e-3)?;
    Err(Error::NoSolution(format!(
        "real q = {q}: [nu0 + {}] = [nu0] has no solution for k = {k} (the bracket is monotone; closest |difference| {r:.3e} at nu0 = {nu0:.3})",
        k + 1
    )))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositivityResult {
    pub nu0: f64,
    pub feasible: bool,
    /// `[n + ν₀] − [ν₀]` for `n = 1..k`, from the q-bracket.
    pub margins: Vec<f64>,
    /// The same margins from the cosine form.
    pub closed_form: Vec<f64>,
    pub first_failure: Option<u32>,
    pub borderline: bool,
    /// Largest |bracket − cosine| over n, plus the largest imaginary part of the bracket form.
    pub form_disagreement: f64,
}

impl PositivityResult {
    pub fn min_margin(&self) -> Option<f64> {
        self.margins.iter().copied().reduce(f64::min)
    }
}

/// `((−1)^ℓ / sin ε){cos(((k+1)/2 − n)ε) − cos((k+1)ε/2)}`.
pub fn closed_form_margin(t: &TruncationProblem, n: u32) -> f64 {
    let half = (t.k as f64 + 1.0) / 2.0;
    let sign = if t.ell.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    sign / t.epsilon.sin() * (((half - n as f64) * t.epsilon).cos() - (half * t.epsilon).cos())
}

pub fn check_positivity(t: &TruncationProblem) -> Result<PositivityResult> {
    let nu0 = solve_truncation(t)?;
    let d = t.deformation()?;
    let mut margins = Vec::with_capacity(t.k as usize);
    let mut closed_form = Vec::with_capacity(t.k as usize);
    let mut disagreement: f64 = 0.0;
    for n in 1..=t.k {
        let m = d.bracket_re(nu0 + n as f64) - d.bracket_re(nu0);
        let c = closed_form_margin(t, n);
        disagreement = disagreement.max((m.re - c).abs()).max(m.im.abs());
        margins.push(m.re);
        closed_form.push(c);
    }
    let first_failure = margins.iter().position(|&m| m < -FEASIBILITY_TOL).map(|i| i as u32 + 1);
    let borderline = margins.iter().copied().reduce(f64::min).is_some_and(|m| m.abs() < BORDERLINE_TOL);
    Ok(PositivityResult {
        nu0,
        feasible: first_failure.is_none(),
        margins,
        closed_form,
        first_failure,
        borderline,
        form_disagreement: disagreement,
    })
}

/// The `(k+1)`-state HY ladder with λ₀ = 0 at the solved ν₀, its relation
/// report on the full window, and `λ_{k+1}` (zero when the ladder truncates).
pub fn witness(t: &TruncationProblem, tol: f64) -> Result<(VerificationReport, Complex64)> {
    let nu0 = solve_truncation(t)?;
    let d = t.deformation()?;
    let p = OscParams::new(OscKind::HY, d, t.k as usize + 1).with_ground(re(nu0), ZERO);
    let osc = build_general_osc(p)?;
    let mut rep = verify_osc_relations(&osc, InteriorWindow::FULL, tol)?;
    rep.param("ell", t.ell);
    rep.param("k", t.k);
    Ok((rep, p.lambda(t.k as i64 + 1)?))
}

/// One row of the equivalence scan. `feasible` is `None` for skipped cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub epsilon: f64,
    pub k: u32,
    pub ell: i64,
    pub nu0: Option<f64>,
    pub feasible: Option<bool>,
    pub min_margin: Option<f64>,
    pub first_failure: Option<u32>,
    /// `""`, `"skipped"` (|sin ε| too small) or `"borderline"`.
    pub flag: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct KSummary {
    pub feasible: usize,
    pub infeasible: usize,
    pub skipped: usize,
    pub borderline: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanTable {
    pub records: Vec<ScanRecord>,
    pub summary: BTreeMap<u32, KSummary>,
    /// Largest bracket-versus-cosine margin disagreement over the grid.
    pub max_form_disagreement: f64,
    /// Largest truncation residual over the grid.
    pub max_truncation_residual: f64,
}

impl ScanTable {
    /// True when every k ≥ 1 has at least one feasible and one infeasible cell.
    pub fn has_both_verdicts(&self) -> bool {
        self.summary
            .iter()
            .filter(|(k, _)| **k >= 1)
            .all(|(_, s)| s.feasible > 0 && s.infeasible > 0)
    }
}

/// Evaluate every `(ε, k, ℓ)` with `k = 0..=k_max`, rows ordered by ε, then k, then ℓ.
pub fn scan_equivalence(eps_grid: &[f64], k_max: u32, ell_set: &[i64]) -> Result<ScanTable> {
    if eps_grid.is_empty() || ell_set.is_empty() {
        return Err(Error::InvalidParams("empty scan grid".into()));
    }
    let cells: Vec<(f64, u32, i64)> = eps_grid
        .iter()
        .flat_map(|&e| (0..=k_max).flat_map(move |k| ell_set.iter().map(move |&l| (e, k, l))))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&(epsilon, k, ell)| -> Result<(ScanRecord, f64, f64)> {
            if epsilon.sin().abs() < SKIP_SIN_TOL {
                let rec = ScanRecord {
                    epsilon,
                    k,
                    ell,
                    nu0: None,
                    feasible: None,
                    min_margin: None,
                    first_failure: None,
                    flag: "skipped".into(),
                };
                return Ok((rec, 0.0, 0.0));
            }
            let t = TruncationProblem::new(k, ell, epsilon)?;
            let pos = check_positivity(&t)?;
            let trunc = truncation_residual(&t, pos.nu0)?;
            let rec = ScanRecord {
                epsilon,
                k,
                ell,
                nu0: Some(pos.nu0),
                feasible: Some(pos.feasible),
                min_margin: pos.min_margin(),
                first_failure: pos.first_failure,
                flag: if pos.borderline { "borderline".into() } else { String::new() },
            };
            Ok((rec, pos.form_disagreement, trunc))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut summary: BTreeMap<u32, KSummary> = BTreeMap::new();
    let mut max_form: f64 = 0.0;
    let mut max_trunc: f64 = 0.0;
    let mut records = Vec::with_capacity(rows.len());
    for (rec, form, trunc) in rows {
        let s = summary.entry(rec.k).or_default();
        match rec.feasible {
            None => s.skipped += 1,
            Some(true) => s.feasible += 1,
            Some(false) => s.infeasible += 1,
        }
        if rec.flag == "borderline" {
            s.borderline += 1;
        }
        max_form = max_form.max(form);
        max_trunc = max_trunc.max(trunc);
        records.push(rec);
    }
    Ok(ScanTable {
        records,
        summary,
        max_form_disagreement: max_form,
        max_truncation_residual: max_trunc,
    })
}

/// `{start, start + step, …}` up to `stop` inclusive (within half a step).
pub fn linspace_step(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || stop < start {
        return Err(Error::InvalidParams("empty grid".into()));
    }
    let n = ((stop - start) / step + 0.5).floor() as usize;
    Ok((0..=n).map(|i| start + i as f64 * step).collect())
}
