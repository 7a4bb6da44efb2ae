use ptspec_core::analytic::{
    bound_energies, legendre_eigenfunction, normalize, normalized, table1_wavefunction, zero_mode,
    ClosedFormWavefunction, Partner,
};
use ptspec_core::numerics::{eigenvector, NumericsError, SampledWavefunction, Spectrum};
use ptspec_core::susy::{scarf2_potentials, scarf2_superpotential, ScarfParams};
use ptspec_core::verify::{
    general_report, intertwine_closed, intertwine_sampled, partner_operator, solve_partner, table1_report_for, Check,
    FailureKind, PairSolution, PartnerSolution, VerificationReport, SOLVER_RESIDUAL_TOLERANCE,
};
use ptspec_core::Complex64;

use crate::config::{RunConfig, SampleObject, Which};
use crate::output::{Cell, Document, Row};
use crate::CliError;

fn partner_name(which: Partner) -> &'static str {
    match which {
        Partner::Partner1 => "partner1",
        Partner::Partner2 => "partner2",
        Partner::Both => "both",
    }
}

fn config_row(cfg: &RunConfig) -> Row {
    let p = &cfg.params;
    vec![
        ("mu", Cell::Float(p.mu())),
        ("lambda", Cell::Float(p.lambda())),
        ("lambda_bar", Cell::Float(p.lambda_bar())),
        ("half_width", Cell::Float(cfg.grid.half_width())),
        ("n_points", Cell::Int(cfg.grid.len() as i64)),
        ("spacing", Cell::Float(cfg.grid.spacing())),
        ("refine", Cell::Bool(cfg.refine)),
        ("continuum_edge", Cell::Float(p.continuum_edge())),
    ]
}

fn solver(e: NumericsError) -> CliError {
    CliError::Solver(e.to_string())
}

/// Analytic values for one partner: the shared levels, plus `0` for the
/// zero mode of partner 1. The flag marks the zero mode.
fn analytic_targets(p: &ScarfParams, which: Partner) -> Vec<(f64, bool)> {
    let mut t: Vec<(f64, bool)> = bound_energies(p.mu(), p.lambda_bar())
        .iter()
        .map(|s| (s.energy, false))
        .collect();
    if which == Partner::Partner1 {
        t.push((0.0, true));
    }
    t
}

/// Greedy nearest-unused assignment of analytic values to computed levels.
fn match_analytic(levels: &[Complex64], targets: &[(f64, bool)]) -> Vec<Option<(f64, bool)>> {
    let mut used = vec![false; targets.len()];
    levels
        .iter()
        .map(|e| {
            let best = targets
                .iter()
                .enumerate()
                .filter(|(i, _)| !used[*i])
                .min_by(|a, b| (e - a.1 .0).norm().total_cmp(&(e - b.1 .0).norm()))
                .map(|(i, _)| i)?;
            used[best] = true;
            Some(targets[best])
        })
        .collect()
}

fn spectrum_rows(p: &ScarfParams, which: Partner, spec: &Spectrum) -> Vec<Row> {
    let levels = spec.bound_energies();
    let matched = match_analytic(&levels, &analytic_targets(p, which));
    spec.bound()
        .zip(matched)
        .enumerate()
        .map(|(i, (e, m))| {
            vec![
                ("partner", Cell::Text(partner_name(which).into())),
                ("index", Cell::Int(i as i64)),
                ("energy_re", Cell::Float(e.energy.re)),
                ("energy_im", Cell::Float(e.energy.im)),
                ("abs_im", Cell::Float(e.energy.im.abs())),
                ("residual", Cell::opt(e.residual)),
                ("analytic", Cell::opt(m.map(|t| t.0))),
                ("bound", Cell::Bool(e.bound)),
                ("zero_mode", Cell::Bool(m.is_some_and(|t| t.1))),
                ("defective", Cell::Bool(e.defective)),
            ]
        })
        .collect()
}

fn partners(which: Which) -> Vec<Partner> {
    match which {
        Which::Partner1 => vec![Partner::Partner1],
        Which::Partner2 => vec![Partner::Partner2],
        Which::Both => vec![Partner::Partner1, Partner::Partner2],
    }
}

pub fn spectrum(cfg: &RunConfig, which: Which) -> Result<Document, CliError> {
    let mut doc = Document {
        config: config_row(cfg),
        csv_columns: vec!["index", "energy_re", "energy_im", "residual", "analytic", "bound"],
        ..Default::default()
    };
    let label = match which {
        Which::Partner1 => "partner1",
        Which::Partner2 => "partner2",
        Which::Both => {
            doc.csv_columns.insert(0, "partner");
            "both"
        }
    };
    doc.config.push(("which", Cell::Text(label.into())));
    for w in partners(which) {
        let sol = solve_partner(cfg.params, &cfg.grid, w, cfg.refine).map_err(solver)?;
        doc.results.extend(spectrum_rows(&cfg.params, w, &sol.reported));
    }
    Ok(doc)
}

/// Solves one partner for the report. A refinement pass that changes the
/// number of bound states is recorded as a failed check and the unrefined
/// spectrum is used.
fn solve_for_report(cfg: &RunConfig, which: Partner, checks: &mut Vec<Check>) -> Result<PartnerSolution, CliError> {
    match solve_partner(cfg.params, &cfg.grid, which, cfg.refine) {
        Ok(s) => Ok(s),
        Err(NumericsError::SpectrumMismatch { coarse, fine }) => {
            let mut c = Check::new(
                format!("{}.refinement", partner_name(which)),
                (coarse as f64 - fine as f64).abs(),
                0.0,
                format!("{coarse} bound states at h, {fine} at h/2"),
            );
            c.failure = Some(FailureKind::CountMismatch);
            checks.push(c);
            solve_partner(cfg.params, &cfg.grid, which, false).map_err(solver)
        }
        Err(e) => Err(solver(e)),
    }
}

fn check_row(c: &Check) -> Row {
    let failure = match c.failure {
        Some(FailureKind::CountMismatch) => Cell::Text("count_mismatch".into()),
        Some(FailureKind::ValueMismatch) => Cell::Text("value_mismatch".into()),
        Some(FailureKind::Evaluation) => Cell::Text("evaluation".into()),
        None => Cell::Null,
    };
    vec![
        ("name", Cell::Text(c.name.clone())),
        ("metric", Cell::Float(c.metric)),
        ("tolerance", Cell::Float(c.tolerance)),
        ("passed", Cell::Bool(c.passed)),
        ("detail", Cell::Text(c.detail.clone())),
        ("failure", failure),
    ]
}

pub fn is_table_case(p: &ScarfParams) -> bool {
    (p.ratio() + 2.5).abs() <= 1e-12
}

/// Runs the general report, plus the table report at `lambda/mu = -5/2`.
pub fn verify_report(cfg: &RunConfig) -> Result<(VerificationReport, PairSolution), CliError> {
    let mut extra = Vec::new();
    let s1 = solve_for_report(cfg, Partner::Partner1, &mut extra)?;
    let s2 = solve_for_report(cfg, Partner::Partner2, &mut extra)?;
    let sol = PairSolution {
        params: cfg.params,
        grid: cfg.grid,
        h1: partner_operator(cfg.params, &cfg.grid, Partner::Partner1).map_err(solver)?,
        h2: partner_operator(cfg.params, &cfg.grid, Partner::Partner2).map_err(solver)?,
        partner1: Some(s1),
        partner2: Some(s2),
    };
    let mut report = VerificationReport { checks: extra };
    report.extend(general_report(&sol));
    if is_table_case(&cfg.params) {
        let table = table1_report_for(&sol).map_err(|e| CliError::Solver(e.to_string()))?;
        report.extend(table);
    }
    Ok((report, sol))
}

pub fn verify(cfg: &RunConfig) -> Result<(Document, bool), CliError> {
    let (report, sol) = verify_report(cfg)?;
    let mut doc = Document {
        config: config_row(cfg),
        csv_columns: vec!["name", "metric", "tolerance", "passed", "detail"],
        csv_checks: true,
        ..Default::default()
    };
    doc.config.push(("table_case", Cell::Bool(is_table_case(&cfg.params))));
    for (w, s) in [(Partner::Partner1, &sol.partner1), (Partner::Partner2, &sol.partner2)] {
        if let Some(s) = s {
            doc.results.extend(spectrum_rows(&cfg.params, w, &s.reported));
        }
    }
    doc.checks = report.checks.iter().map(check_row).collect();
    Ok((doc, report.all_passed()))
}

/// Rotates `psi` so its value at `x = 0` is real and positive, or its slope
/// there when the value vanishes, and scales it to unit trapezoidal norm.
fn grid_normalized(psi: &SampledWavefunction) -> SampledWavefunction {
    let v = psi.values();
    let c = psi.grid().center();
    let peak = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let probe = if v[c].norm() > 1e-8 * peak {
        v[c]
    } else {
        v[c + 1] - v[c - 1]
    };
    let phase = if probe.norm() > 0.0 {
        probe.conj() / probe.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let norm = psi.l2_norm();
    psi.scaled(phase / norm)
}

fn closed_sample(cfg: &RunConfig, w: &ClosedFormWavefunction) -> Result<SampledWavefunction, CliError> {
    let w = normalized(w, cfg.params.mu()).map_err(|e| CliError::Solver(e.to_string()))?;
    Ok(SampledWavefunction::sample(&cfg.grid, |x| w.evaluate(x)))
}

/// Numeric level-`n` eigenvector of `H2` on the configured grid.
fn numeric_psi2(cfg: &RunConfig, n: usize) -> Result<(SampledWavefunction, Complex64), CliError> {
    let sol = solve_partner(cfg.params, &cfg.grid, Partner::Partner2, false).map_err(solver)?;
    let e = sol
        .coarse
        .bound_energies()
        .get(n)
        .copied()
        .ok_or_else(|| CliError::Solver(format!("the solver found no bound level n = {n} on this grid")))?;
    let h2 = partner_operator(cfg.params, &cfg.grid, Partner::Partner2).map_err(solver)?;
    Ok((eigenvector(&h2, e).map_err(solver)?, e))
}

fn psi2_n(cfg: &RunConfig, n: usize) -> Result<SampledWavefunction, CliError> {
    let p = cfg.params;
    if let Ok(w) = table1_wavefunction(Partner::Partner2, n, p) {
        return closed_sample(cfg, &w);
    }
    if let Ok(w) = legendre_eigenfunction(n, p) {
        return closed_sample(cfg, &w);
    }
    Ok(grid_normalized(&numeric_psi2(cfg, n)?.0))
}

fn psi1_n(cfg: &RunConfig, n: usize) -> Result<SampledWavefunction, CliError> {
    let p = cfg.params;
    if let Ok(w) = table1_wavefunction(Partner::Partner1, n, p) {
        return closed_sample(cfg, &w);
    }
    let u = scarf2_superpotential(p);
    let mapped = match legendre_eigenfunction(n, p) {
        Ok(w) => intertwine_closed(&u, &w, &cfg.grid),
        Err(_) => {
            let (v, e) = numeric_psi2(cfg, n)?;
            let h2 = partner_operator(p, &cfg.grid, Partner::Partner2).map_err(solver)?;
            intertwine_sampled(&u, &v, &h2, e, SOLVER_RESIDUAL_TOLERANCE)
        }
    }
    .map_err(|e| CliError::Solver(e.to_string()))?;
    Ok(grid_normalized(&mapped))
}

pub fn sample(cfg: &RunConfig, object: SampleObject, n: usize) -> Result<Document, CliError> {
    let p = cfg.params;
    let mut doc = Document {
        config: config_row(cfg),
        csv_columns: vec!["x", "re", "im"],
        ..Default::default()
    };
    let label = match object {
        SampleObject::V1 => "v1",
        SampleObject::V2 => "v2",
        SampleObject::ZeroMode => "zero-mode",
        SampleObject::Psi1N => "psi1-n",
        SampleObject::Psi2N => "psi2-n",
    };
    doc.config.push(("object", Cell::Text(label.into())));
    if matches!(object, SampleObject::Psi1N | SampleObject::Psi2N) {
        let admissible = bound_energies(p.mu(), p.lambda_bar()).len();
        if n >= admissible {
            return Err(CliError::Config(format!(
                "{label} needs n < lambda_bar - 1 = {:.6}, got n = {n}",
                p.lambda_bar() - 1.0
            )));
        }
        doc.config.push(("n", Cell::Int(n as i64)));
    }
    let pair = scarf2_potentials(p);
    let values: Vec<Complex64> = match object {
        SampleObject::V1 => cfg.grid.nodes().map(|x| pair.v1(x)).collect(),
        SampleObject::V2 => cfg.grid.nodes().map(|x| Complex64::new(pair.v2(x), 0.0)).collect(),
        SampleObject::ZeroMode => {
            let z = zero_mode(p);
            let norm = normalize(&z, p.mu()).map_err(|e| CliError::Solver(e.to_string()))?;
            doc.config.push(("normalization", Cell::Float(norm)));
            doc.config.push(("phase_at_origin", Cell::Float(z.evaluate(0.0).arg())));
            let z = z.scaled(Complex64::new(norm, 0.0));
            cfg.grid.nodes().map(|x| z.evaluate(x)).collect()
        }
        SampleObject::Psi2N => psi2_n(cfg, n)?.into_values(),
        SampleObject::Psi1N => psi1_n(cfg, n)?.into_values(),
    };
    doc.results = cfg
        .grid
        .nodes()
        .zip(values)
        .map(|(x, v)| {
            vec![
                ("x", Cell::Float(x)),
                ("re", Cell::Float(v.re)),
                ("im", Cell::Float(v.im)),
            ]
        })
        .collect();
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_matching() {
        let levels = [
            Complex64::new(-3.7499, 0.0),
            Complex64::new(-0.75, 1e-9),
            Complex64::new(1e-7, 0.0),
        ];
        let targets = [(-3.75, false), (-0.75, false), (0.0, true)];
        let m = match_analytic(&levels, &targets);
        assert_eq!(m, vec![Some((-3.75, false)), Some((-0.75, false)), Some((0.0, true))]);
        let extra = match_analytic(&levels, &targets[..1]);
        assert_eq!(extra, vec![Some((-3.75, false)), None, None]);
    }

    #[test]
    fn normalization_and_phase() {
        let grid = ptspec_core::numerics::make_grid(10.0, 2001).unwrap();
        let psi = SampledWavefunction::sample(&grid, |x| Complex64::new(0.0, -3.0 * (-x * x).exp()));
        let n = grid_normalized(&psi);
        assert!((n.l2_norm() - 1.0).abs() < 1e-12);
        let c = n.values()[grid.center()];
        assert!(c.im.abs() < 1e-15 && c.re > 0.0);
        let odd = SampledWavefunction::sample(&grid, |x| Complex64::new(-x * (-x * x).exp(), 0.0));
        let n = grid_normalized(&odd);
        assert!(n.values()[grid.center() + 1].re > 0.0);
    }
}
