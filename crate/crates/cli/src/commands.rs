use anyhow::{bail, Result};
use qdeform::contraction::{celeghini_scan, ck_scan, iw_mu_sequence, CkPrefactor};
use qdeform::holstein::{hp_build, hp_gen_build, verify_hp};
use qdeform::linop::InteriorWindow;
use qdeform::qnum::GenBracketParams;
use qdeform::report::{Check, VerificationReport};
use qdeform::reps::{build_general_osc, verify_osc_relations, OscKind, OscParams};
use qdeform::schwinger::{schwinger_build, schwinger_tilde_build, verify_schwinger, TildeDressing};
use qdeform::truncation::{
    check_positivity, linspace_step, scan_equivalence, solve_truncation_real, truncation_residual, ScanRecord, TruncationProblem,
};
use qdeform::{Complex64, Error};
use serde::{Deserialize, Serialize};

use crate::config::{ContractArgs, DressingArg, Format, KindArg, ScanArgs, Series, SolveArgs, VerifyArgs};
use crate::output::{flatten, summarize, write_checks, write_csv, write_json};

/// Margins of the scan invariants (bracket vs cosine form, truncation residual).
const SCAN_TOL: f64 = 1e-12;

pub fn verify(args: &VerifyArgs) -> Result<bool> {
    args.validate()?;
    let d = args.q.deformation()?;
    let w = InteriorWindow::symmetric(args.margin);
    let tol = args.tolerance;
    let kinds: Vec<OscKind> = match args.kind {
        KindArg::All => OscKind::ALL.to_vec(),
        KindArg::Mb => vec![OscKind::MB],
        KindArg::Hy => vec![OscKind::HY],
        KindArg::Gmb => vec![OscKind::GMB],
        KindArg::Ghy => vec![OscKind::GHY],
    };
    let dressing = match args.dressing {
        DressingArg::Half => TildeDressing::Half,
        DressingArg::Printed => TildeDressing::AsPrinted,
    };
    let j = args.j.unwrap_or((args.dim as f64 - 1.0) / 2.0);
    let ground = (Complex64::new(args.nu0, 0.0), Complex64::new(args.lambda0, 0.0));

    let mut reports: Vec<VerificationReport> = Vec::new();
    for kind in kinds {
        let mut p = OscParams::new(kind, d, args.dim).with_ground(ground.0, ground.1);
        if kind.is_generalized() {
            p = p.with_gen(GenBracketParams::real(args.alpha, args.beta));
        }
        let osc = build_general_osc(p)?;
        reports.push(verify_osc_relations(&osc, w, tol)?);
        reports.push(verify_schwinger(&schwinger_build(&osc, &osc)?, w, tol)?);
        if kind.is_generalized() {
            reports.push(verify_schwinger(&schwinger_tilde_build(&osc, &osc, dressing)?, w, tol)?);
            reports.push(verify_hp(&hp_gen_build(&osc, j)?, w, tol)?);
        } else {
            reports.push(verify_hp(&hp_build(&osc, j)?, w, tol)?);
        }
    }
    let checks = flatten(reports);
    write_checks(&args.out, &checks)?;
    summarize(&checks);
    Ok(checks.iter().all(|c| c.pass))
}

pub fn scan(args: &ScanArgs) -> Result<bool> {
    let grid = if args.eps.is_empty() {
        linspace_step(args.eps_start, args.eps_stop, args.eps_step)?
    } else {
        args.eps.clone()
    };
    let table = scan_equivalence(&grid, args.k_max, &args.ell)?;
    match args.out.format {
        Format::Json => write_json(&args.out, &table)?,
        Format::Csv => write_csv(&args.out, &table.records)?,
    }
    for (k, s) in &table.summary {
        eprintln!(
            "k = {k}: {} feasible, {} infeasible, {} skipped, {} borderline",
            s.feasible, s.infeasible, s.skipped, s.borderline
        );
    }
    eprintln!(
        "max margin-form disagreement {:e}, max truncation residual {:e}",
        table.max_form_disagreement, table.max_truncation_residual
    );
    Ok(table.max_form_disagreement < SCAN_TOL && table.max_truncation_residual < SCAN_TOL)
}

/// One (parameter, residual) point of a contraction sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendRow {
    pub series: String,
    pub parameter: f64,
    pub residual: f64,
    /// ck: residual with the linear prefactor; celeghini: residual against sinh(omega kappa)/(omega/2).
    pub alt_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractOutput {
    pub rows: Vec<TrendRow>,
    pub checks: Vec<Check>,
}

pub fn contract(args: &ContractArgs) -> Result<bool> {
    let all = args.series == Series::All;
    let mut rows = Vec::new();
    let mut reports = Vec::new();

    if all || args.series == Series::Iw {
        let seq = iw_mu_sequence(&args.mu, args.iw_eta, args.xi, args.iw_dim)?;
        let ratio = seq.windows(2).map(|p| p[1].1 / p[0].1).fold(0.0, f64::max);
        let mut rep = VerificationReport::new();
        rep.param("eta", args.iw_eta).param("xi", args.xi);
        rep.push(Check::new("iw_mu_trend", ratio, 1.0));
        reports.push(rep);
        rows.extend(seq.into_iter().map(|(mu, r)| TrendRow {
            series: "iw".into(),
            parameter: mu,
            residual: r,
            alt_residual: None,
        }));
    }

    if all || args.series == Series::Ck {
        let w = InteriorWindow::symmetric(args.ck_margin);
        let root = ck_scan(args.ck_q, args.ck_j, &args.s, CkPrefactor::Sqrt, w)?;
        let linear = ck_scan(args.ck_q, args.ck_j, &args.s, CkPrefactor::Linear, w)?;
        let mut rep = root.report(args.ck_slope_tol, args.ck_target);
        rep.notes.extend(linear.report(args.ck_slope_tol, args.ck_target).notes);
        reports.push(rep);
        rows.extend(root.s.iter().zip(root.r.iter().zip(&linear.r)).map(|(&s, (&r, &l))| TrendRow {
            series: "ck".into(),
            parameter: s,
            residual: r,
            alt_residual: Some(l),
        }));
    }

    if all || args.series == Series::Celeghini {
        let (points, rep) = celeghini_scan(&args.eta, args.omega, args.kappa, args.cele_dim)?;
        reports.push(rep);
        rows.extend(points.into_iter().map(|p| TrendRow {
            series: "celeghini".into(),
            parameter: p.eta,
            residual: p.rho_double,
            alt_residual: Some(p.rho_half),
        }));
    }

    let checks = flatten(reports);
    match args.out.format {
        Format::Json => write_json(&args.out, &ContractOutput { rows, checks: checks.clone() })?,
        Format::Csv => write_csv(&args.out, &rows)?,
    }
    summarize(&checks);
    Ok(checks.iter().all(|c| c.pass))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveRecord {
    pub epsilon: f64,
    pub k: u32,
    pub ell: i64,
    pub nu0: f64,
    pub truncation_residual: f64,
    pub feasible: bool,
    pub first_failure: Option<u32>,
    pub borderline: bool,
    /// `[n + nu0] - [nu0]` for n = 1..k.
    pub margins: Vec<f64>,
    pub closed_form: Vec<f64>,
}

pub fn solve(args: &SolveArgs) -> Result<bool> {
    let d = args.q.deformation()?;
    let epsilon = match d.epsilon() {
        Some(e) => e,
        None if d.q().im == 0.0 && d.q().re > 0.0 => {
            return match solve_truncation_real(d.q().re, args.k) {
                Err(Error::NoSolution(msg)) => {
                    eprintln!("{msg}");
                    write_json(&args.out, &serde_json::json!({ "q": d.q().re, "k": args.k, "nu0": null, "message": msg }))?;
                    Ok(false)
                }
                Err(e) => Err(e.into()),
                Ok(_) => unreachable!("real q never truncates"),
            };
        }
        None if (d.q().norm() - 1.0).abs() < 1e-12 => d.log_q().im,
        None => bail!("truncation needs q = exp(i epsilon) or real q > 0"),
    };
    let t = TruncationProblem::new(args.k, args.ell, epsilon)?;
    let pos = check_positivity(&t)?;
    let rec = SolveRecord {
        epsilon,
        k: args.k,
        ell: args.ell,
        nu0: pos.nu0,
        truncation_residual: qdeform::report::round_sig15(truncation_residual(&t, pos.nu0)?),
        feasible: pos.feasible,
        first_failure: pos.first_failure,
        borderline: pos.borderline,
        margins: pos.margins.clone(),
        closed_form: pos.closed_form.clone(),
    };
    match args.out.format {
        Format::Json => write_json(&args.out, &rec)?,
        Format::Csv => write_csv(
            &args.out,
            &[ScanRecord {
                epsilon,
                k: args.k,
                ell: args.ell,
                nu0: Some(pos.nu0),
                feasible: Some(pos.feasible),
                min_margin: pos.min_margin(),
                first_failure: pos.first_failure,
                flag: if pos.borderline { "borderline".into() } else { String::new() },
            }],
        )?,
    }
    eprintln!(
        "nu0 = {:.15}, truncation residual {:e}, {}",
        rec.nu0,
        rec.truncation_residual,
        if rec.feasible { "feasible".to_string() } else { format!("infeasible (first failure n = {:?})", rec.first_failure) }
    );
    Ok(rec.feasible && rec.truncation_residual < SCAN_TOL)
}
