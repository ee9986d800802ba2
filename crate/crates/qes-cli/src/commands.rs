//! Implementations of the `list`, `solve`, `susy` and `verify` verbs.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use serde::Serialize;

use qes::bethe::{solve_spectrum, BetheSolution};
use qes::catalog::{instantiate, CaseId, CaseInstance, Params};
use qes::susy::SusyPartner;
use qes::verify::{run_suite, scan_partner_poles, tol_scale_from_env, SuiteOptions};
use qes::QesError;

use crate::exit;
use crate::output::{linspace, GridSeries};
use crate::RunArgs;

/// Residual tolerance applied by `solve`.
const SOLVE_TOL: f64 = 1e-8;
/// Imaginary parts below this (relative) are treated as zero in outputs.
const IMAG_TOL: f64 = 1e-9;

#[derive(Debug, Serialize)]
struct CaseRow {
    id: &'static str,
    title: &'static str,
    params: Vec<&'static str>,
    representative: BTreeMap<&'static str, f64>,
    variable: &'static str,
    domain: String,
    weighted: bool,
    radial: bool,
    algebraic_only: bool,
    potential: &'static str,
}

fn case_row(case: CaseId) -> Result<CaseRow> {
    let inst = instantiate(case, &Params::new(case.figure_params().iter().copied()), 1)?;
    let dom = inst.physical_domain();
    Ok(CaseRow {
        id: case.id(),
        title: case.title(),
        params: case.param_names().to_vec(),
        representative: case.figure_params().iter().copied().collect(),
        variable: dom.variable,
        domain: dom.description,
        weighted: case.has_weight(),
        radial: case.is_radial(),
        algebraic_only: case.algebraic_only(),
        potential: case.potential_text(),
    })
}

fn parse_case(id: &str) -> Result<CaseId> {
    CaseId::from_id(id).ok_or_else(|| {
        let known: Vec<&str> = CaseId::ALL.iter().map(|c| c.id()).collect();
        anyhow!(QesError::InvalidInput(format!(
            "unknown case '{id}' (known: {})",
            known.join(", ")
        )))
    })
}

/// `qes list`.
pub fn list(case: Option<&str>, json: bool) -> Result<u8> {
    let cases = match case {
        Some(id) => vec![parse_case(id)?],
        None => CaseId::ALL.to_vec(),
    };
    let rows = cases
        .into_iter()
        .map(case_row)
        .collect::<Result<Vec<_>>>()?;
    if json {
        emit(&serde_json::to_string_pretty(&rows)?)?;
    } else {
        for r in &rows {
            let mut flags = Vec::new();
            if r.weighted {
                flags.push("weighted");
            }
            if r.radial {
                flags.push("radial");
            }
            if r.algebraic_only {
                flags.push("algebraic-only");
            }
            emit(&format!(
                "{:<11} {:<22} params: {:<22} [{}]  {}  V = {}",
                r.id,
                r.title,
                r.params.join(","),
                flags.join(","),
                r.domain,
                r.potential
            ))?;
        }
    }
    Ok(exit::PASS)
}

fn parse_params(case: CaseId, raw: &[String]) -> Result<Params> {
    if raw.is_empty() {
        return Ok(Params::new(case.figure_params().iter().copied()));
    }
    let mut pairs = Vec::with_capacity(raw.len());
    for item in raw {
        let (k, v) = item.split_once('=').ok_or_else(|| {
            anyhow!(QesError::InvalidInput(format!(
                "parameter '{item}' is not of the form name=value"
            )))
        })?;
        let v: f64 = v.trim().parse().map_err(|_| {
            anyhow!(QesError::InvalidInput(format!(
                "parameter '{k}' has non-numeric value '{v}'"
            )))
        })?;
        pairs.push((k.trim(), v));
    }
    Ok(Params::new(pairs))
}

fn parse_grid(spec: &str) -> Result<(f64, f64, usize)> {
    let bad = || {
        anyhow!(QesError::InvalidInput(format!(
            "grid '{spec}' must be min:max:points with min < max and points ≥ 2"
        )))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, pts] = parts.as_slice() else {
        return Err(bad());
    };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let pts: usize = pts.trim().parse().map_err(|_| bad())?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi && pts >= 2) {
        return Err(bad());
    }
    Ok((lo, hi, pts))
}

fn tol_scale() -> Result<f64> {
    Ok(tol_scale_from_env()?)
}

struct Run {
    case: CaseInstance,
    grid: (f64, f64, usize),
}

fn prepare(args: &RunArgs) -> Result<Run> {
    let id = parse_case(&args.case)?;
    let params = parse_params(id, &args.params)?;
    let case = instantiate(id, &params, args.n)?;
    let grid = match &args.grid {
        Some(g) => parse_grid(g)?,
        None => case.default_grid(),
    };
    Ok(Run { case, grid })
}

fn sink(path: Option<&std::path::Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_json<T: Serialize>(value: &T, out: Option<&std::path::Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    if let Some(p) = out {
        std::fs::write(p, format!("{text}\n"))
            .with_context(|| format!("cannot write {}", p.display()))?;
    }
    emit(&text)
}

/// Writes one line to stdout.
fn emit(text: &str) -> Result<()> {
    writeln!(io::stdout().lock(), "{text}")?;
    Ok(())
}

fn is_real(c: Complex64) -> bool {
    c.im.abs() <= IMAG_TOL * (1.0 + c.re.abs())
}

#[derive(Debug, Serialize)]
struct StateJson {
    index: usize,
    energy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    energy_imag: Option<f64>,
    roots: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    roots_imag: Option<Vec<f64>>,
}

fn state_json(index: usize, s: &BetheSolution) -> StateJson {
    let complex_roots = s.roots.iter().any(|r| !is_real(*r));
    StateJson {
        index,
        energy: s.energy.re,
        energy_imag: (!is_real(s.energy)).then_some(s.energy.im),
        roots: s.roots.iter().map(|r| r.re).collect(),
        roots_imag: complex_roots.then(|| s.roots.iter().map(|r| r.im).collect()),
    }
}

#[derive(Debug, Serialize)]
struct SolveJson {
    case: &'static str,
    n: usize,
    params: BTreeMap<String, f64>,
    energies: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    energies_imag: Option<Vec<f64>>,
    roots: Vec<Vec<f64>>,
    bae_residuals: Vec<f64>,
    ode_residuals: Vec<f64>,
    /// Each energy with the Bethe roots of its own eigenvector.
    pairing: Vec<StateJson>,
    tolerance: f64,
    pass: bool,
}

/// `qes solve`.
pub fn solve(args: &RunArgs) -> Result<u8> {
    let ts = tol_scale()?;
    let run = prepare(args)?;
    let spectrum = solve_spectrum(&run.case.form)?;
    let tol = SOLVE_TOL * ts;
    let pass = spectrum
        .iter()
        .all(|s| s.bae_residual < tol && s.ode_residual_max < tol);
    let any_complex = spectrum.iter().any(|s| !is_real(s.energy));
    let doc = SolveJson {
        case: run.case.case.id(),
        n: run.case.n,
        params: run.case.params.pairs().iter().cloned().collect(),
        energies: spectrum.iter().map(|s| s.energy.re).collect(),
        energies_imag: any_complex.then(|| spectrum.iter().map(|s| s.energy.im).collect()),
        roots: spectrum
            .iter()
            .map(|s| s.roots.iter().map(|r| r.re).collect())
            .collect(),
        bae_residuals: spectrum.iter().map(|s| s.bae_residual).collect(),
        ode_residuals: spectrum.iter().map(|s| s.ode_residual_max).collect(),
        pairing: spectrum
            .iter()
            .enumerate()
            .map(|(i, s)| state_json(i, s))
            .collect(),
        tolerance: tol,
        pass,
    };
    write_json(&doc, args.out.as_deref())?;
    Ok(if pass { exit::PASS } else { exit::VERIFY_FAIL })
}

#[derive(Debug, Serialize)]
struct SusyJson {
    case: &'static str,
    n: usize,
    params: BTreeMap<String, f64>,
    seed_index: usize,
    other_index: usize,
    seed_energy: f64,
    other_energy: f64,
    gap: f64,
    seed_roots: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed_roots_imag: Option<Vec<f64>>,
    variable: &'static str,
    grid: (f64, f64, usize),
    columns: Vec<String>,
    new_poles: Vec<f64>,
    shared_poles: Vec<f64>,
    csv: Option<String>,
}

fn real_of(c: Result<Complex64, QesError>) -> Option<f64> {
    c.ok().filter(|v| is_real(*v)).map(|v| v.re)
}

fn physical_series(partner: &SusyPartner, xs: &[f64]) -> GridSeries {
    let case = partner.case();
    let radial = partner.radial_wrap().ok();
    let mut columns: Vec<String> = ["x", "V", "V2", "psi_seed", "psi_other", "psi_partner"]
        .map(String::from)
        .to_vec();
    if radial.is_some() {
        columns.extend(
            ["V_S", "V_S2", "psi_S_seed", "psi_S_other", "psi_S_partner"].map(String::from),
        );
    }
    let psi = |v: f64, clamped: bool| (!clamped || v == 0.0).then_some(v);
    let rows = xs
        .iter()
        .map(|&x| {
            let mut vals = vec![case.potential_1d(x).ok(), partner.v2_x(x).ok()];
            match partner.wavefunctions(x) {
                Ok(w) => vals.extend([
                    psi(w.psi_seed, w.clamped),
                    psi(w.psi_other, w.clamped),
                    psi(w.psi2, w.clamped),
                ]),
                Err(_) => vals.extend([None, None, None]),
            }
            if let Some(rad) = &radial {
                vals.push(rad.v_s(x).ok());
                vals.push(rad.v_s2(x).ok());
                match rad.wavefunctions(x) {
                    Ok(w) => vals.extend([
                        psi(w.psi_seed, w.clamped),
                        psi(w.psi_other, w.clamped),
                        psi(w.psi2, w.clamped),
                    ]),
                    Err(_) => vals.extend([None, None, None]),
                }
            }
            (x, vals)
        })
        .collect();
    GridSeries { columns, rows }
}

fn algebraic_series(partner: &SusyPartner, variable: &str, zs: &[f64]) -> GridSeries {
    let form = partner.form();
    let columns = [variable, "V1", "V2", "phi_seed", "phi_other", "phi_partner"]
        .map(String::from)
        .to_vec();
    let rows = zs
        .iter()
        .map(|&z| {
            let zc = Complex64::new(z, 0.0);
            let vals = vec![
                Some(form.v1_jet(zc)[0].re),
                real_of(partner.v2_z(zc)),
                Some(partner.seed.poly.eval(zc, 0).re),
                Some(partner.other.poly.eval(zc, 0).re),
                real_of(partner.phi2(zc)),
            ];
            (z, vals)
        })
        .collect();
    GridSeries { columns, rows }
}

/// ASCII name of the abscissa column.
fn column_name(dom: &qes::catalog::Domain) -> &'static str {
    match dom.variable {
        _ if !dom.algebraic_only => "x",
        "ξ" => "xi",
        "τ" => "tau",
        _ => "z",
    }
}

/// `qes susy`.
pub fn susy(args: &RunArgs) -> Result<u8> {
    tol_scale()?;
    let run = prepare(args)?;
    let (mut partner, _) = SusyPartner::from_case(&run.case, args.seed_index, args.other_index)?;
    if args.flip_v2_correction {
        partner = partner.with_flipped_v2_correction();
    }
    let (lo, hi, pts) = run.grid;
    let xs = linspace(lo, hi, pts);
    let dom = run.case.physical_domain();
    let (series, new_poles, shared_poles) = if run.case.case.algebraic_only() {
        (
            algebraic_series(&partner, column_name(&dom), &xs),
            Vec::new(),
            Vec::new(),
        )
    } else {
        if !(partner.seed.is_real && partner.other.is_real) {
            bail!(QesError::InvalidInput(
                "physical-axis output needs real seed and other states".into()
            ));
        }
        let scan = scan_partner_poles(&partner, lo, hi, (4 * pts).max(2000));
        let shared = scan
            .poles
            .iter()
            .filter(|p| p.shared)
            .map(|p| p.x)
            .collect();
        (physical_series(&partner, &xs), scan.new_poles(), shared)
    };
    let summary = SusyJson {
        case: run.case.case.id(),
        n: run.case.n,
        params: run.case.params.pairs().iter().cloned().collect(),
        seed_index: partner.seed_index,
        other_index: partner.other_index,
        seed_energy: partner.seed.energy.re,
        other_energy: partner.other.energy.re,
        gap: partner.gap.re,
        seed_roots: partner.seed.roots.iter().map(|r| r.re).collect(),
        seed_roots_imag: partner
            .seed
            .roots
            .iter()
            .any(|r| !is_real(*r))
            .then(|| partner.seed.roots.iter().map(|r| r.im).collect()),
        variable: column_name(&dom),
        grid: run.grid,
        columns: series.columns.clone(),
        new_poles: new_poles.clone(),
        shared_poles,
        csv: args.out.as_ref().map(|p| p.display().to_string()),
    };
    series.write_csv(sink(args.out.as_deref())?)?;
    let text = serde_json::to_string_pretty(&summary)?;
    if args.out.is_some() {
        emit(&text)?;
    } else {
        eprintln!("{text}");
    }
    Ok(if new_poles.is_empty() {
        exit::PASS
    } else {
        exit::NEW_POLE
    })
}

/// `qes verify`.
pub fn verify(args: &RunArgs) -> Result<u8> {
    let ts = tol_scale()?;
    let run = prepare(args)?;
    let opts = SuiteOptions {
        tol_scale: ts,
        grid: args.grid.as_ref().map(|_| run.grid),
        seed_index: args.seed_index,
        other_index: args.other_index,
        flip_v2: args.flip_v2_correction,
    };
    let report = run_suite(&run.case, &opts)?;
    if args.json || args.out.is_some() {
        write_json(&report, args.out.as_deref())?;
    } else {
        let mut lines = vec![format!("{} n={}", report.case, report.n)];
        for c in &report.checks {
            lines.push(format!(
                "  {:<4} {:<26} {:>12.3e} < {:<9.1e}{}",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                c.max_residual,
                c.tol,
                c.worst_at
                    .map(|w| format!("  worst at {w:.6}"))
                    .unwrap_or_default()
            ));
        }
        if !report.new_poles.is_empty() {
            lines.push(format!("  new poles: {:?}", report.new_poles));
        }
        emit(&lines.join("\n"))?;
    }
    Ok(if report.passed() {
        exit::PASS
    } else {
        exit::VERIFY_FAIL
    })
}
