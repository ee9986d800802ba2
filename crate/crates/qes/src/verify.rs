//! Independent numerical verification of eigenstates and SUSY partners.
//!
//! * [`fd_hamiltonian_residual`] checks `ρ(−ψ'' − (d−1)/x ψ' + Ṽψ) = Eψ`
//!   with Richardson-extrapolated central differences.
//! * [`singularity_scan`] locates poles of a potential on a grid and
//!   separates them from poles already present in the original potential.
//! * [`oracle_crosscheck`] compares the general engine with the case's
//!   closed forms.
//! * [`run_suite`] runs every check for one case and collects a
//!   [`VerificationReport`].

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bethe::{solve_spectrum, BetheSolution};
use crate::catalog::{closed_form_oracle, CaseInstance, ClosedForms, Radial};
use crate::error::{QesError, Result};
use crate::odeform::qes_consistency_check;
use crate::poly::POLE_TOL;
use crate::susy::{apply_a_bare, apply_b_bare, monomial_jet, SusyPartner};

type C = Complex64;

/// Finite-difference step.
pub const FD_STEP: f64 = 1e-4;
/// Magnitude above which a scanned value counts as a blow-up.
pub const BLOWUP: f64 = 1e8;
/// Distance within which a partner pole is attributed to the original potential.
pub const SHARED_POLE_TOL: f64 = 1e-6;
/// Finite-difference checks skip grid points this close to a pole.
pub const POLE_EXCLUSION: f64 = 100.0 * FD_STEP;

/// One named check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub max_residual: f64,
    pub tol: f64,
    pub pass: bool,
    /// Location (z or x) of the worst residual, when meaningful.
    pub worst_at: Option<f64>,
}

impl CheckEntry {
    /// Builds an entry; `pass ⇔ max_residual < tol` (NaN fails).
    pub fn new(
        name: impl Into<String>,
        max_residual: f64,
        tol: f64,
        worst_at: Option<f64>,
    ) -> Self {
        Self {
            name: name.into(),
            max_residual,
            tol,
            pass: max_residual < tol,
            worst_at,
        }
    }
}

/// Machine-readable verification result for one case instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub case: String,
    pub n: usize,
    pub params: BTreeMap<String, f64>,
    pub checks: Vec<CheckEntry>,
    /// Physical-axis locations of partner poles not present in the original potential.
    pub new_poles: Vec<f64>,
}

impl VerificationReport {
    /// True when every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// The failed checks.
    pub fn failures(&self) -> Vec<&CheckEntry> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    /// Looks a check up by name.
    pub fn check(&self, name: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Maximum relative residual and where it occurred.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdResidual {
    pub max: f64,
    pub worst_at: f64,
}

/// Central first and second differences at step `h`.
fn central(psi: &dyn Fn(f64) -> Result<f64>, x: f64, h: f64, mid: f64) -> Result<(f64, f64)> {
    let p = psi(x + h)?;
    let m = psi(x - h)?;
    Ok(((p - m) / (2.0 * h), (p - 2.0 * mid + m) / (h * h)))
}

fn stencil_guard(e: QesError, x: f64) -> QesError {
    match e {
        QesError::Pole { .. } | QesError::Domain(_) | QesError::SingularCoefficient { .. } => {
            QesError::PoleProximity { x }
        }
        other => other,
    }
}

/// [`fd_hamiltonian_residual`] with an explicit step.
pub fn fd_hamiltonian_residual_with_step(
    v: &dyn Fn(f64) -> Result<f64>,
    rho: &dyn Fn(f64) -> Result<f64>,
    radial: Option<Radial>,
    psi: &dyn Fn(f64) -> Result<f64>,
    energy: f64,
    grid: &[f64],
    h: f64,
) -> Result<FdResidual> {
    let mut rows = Vec::with_capacity(grid.len());
    for &x in grid {
        let eval = || -> Result<(f64, f64, f64, f64, f64)> {
            let f = psi(x)?;
            let (d1h, d2h) = central(psi, x, h, f)?;
            let (d1q, d2q) = central(psi, x, h / 2.0, f)?;
            let d1 = (4.0 * d1q - d1h) / 3.0;
            let d2 = (4.0 * d2q - d2h) / 3.0;
            Ok((f, d1, d2, v(x)?, rho(x)?))
        };
        let (f, d1, d2, vx, r) = eval().map_err(|e| stencil_guard(e, x))?;
        if ![f, d1, d2, vx, r].iter().all(|t| t.is_finite()) {
            return Err(QesError::PoleProximity { x });
        }
        let (radial_term, vt) = match radial {
            Some(rad) => (-(rad.d_dim - 1.0) / x * d1, vx - rad.centrifugal(x)),
            None => (0.0, vx),
        };
        let res = (r * (-d2 + radial_term + vt * f) - energy * f).abs();
        let scale = (energy * f).abs() + (r * d2).abs();
        rows.push((x, res, scale));
    }
    let top = rows.iter().fold(0.0f64, |m, r| m.max(r.2));
    if top == 0.0 {
        return Err(QesError::DegenerateInput(
            "wavefunction vanishes on the whole grid".into(),
        ));
    }
    let eps = 1e-10 * top;
    let mut out = FdResidual {
        max: 0.0,
        worst_at: f64::NAN,
    };
    for (x, res, scale) in rows {
        let rel = res / (scale + eps);
        if rel > out.max || out.worst_at.is_nan() {
            out = FdResidual {
                max: rel.max(out.max),
                worst_at: if rel >= out.max { x } else { out.worst_at },
            };
        }
    }
    Ok(out)
}

/// Maximum over `grid` of `|ρ(−ψ'' − (d−1)/x ψ' + Ṽψ) − Eψ| / (|Eψ| + |ρψ''| + ε)`.
///
/// Derivatives use central differences at `h = 1e-4` with one Richardson
/// halving. For radial data `Ṽ = V − l(l+d−2)/x²` (pass the radial `V_S`);
/// otherwise `Ṽ = V` and the first-derivative term is absent.
/// `ε = 1e-10 · max_grid(|Eψ| + |ρψ''|)`.
pub fn fd_hamiltonian_residual(
    v: &dyn Fn(f64) -> Result<f64>,
    rho: &dyn Fn(f64) -> Result<f64>,
    radial: Option<Radial>,
    psi: &dyn Fn(f64) -> Result<f64>,
    energy: f64,
    grid: &[f64],
) -> Result<FdResidual> {
    fd_hamiltonian_residual_with_step(v, rho, radial, psi, energy, grid, FD_STEP)
}

/// A detected pole.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pole {
    pub x: f64,
    /// Also a pole of the original potential.
    pub shared: bool,
}

fn is_blowup(v: Option<f64>) -> bool {
    v.is_none_or(|t| !t.is_finite() || t.abs() > BLOWUP)
}

/// Poles of `vmap` on `[lo, hi]` (`None` is a pole marker).
///
/// Detects pole markers, sign changes that bisect to a blow-up, and local
/// maxima of `|V|` that refine (golden section) to a blow-up above `1e8`.
/// Poles within `1e-6` of an entry of `original_poles` are flagged shared.
pub fn singularity_scan(
    vmap: &dyn Fn(f64) -> Option<f64>,
    lo: f64,
    hi: f64,
    resolution: usize,
    original_poles: &[f64],
) -> Vec<Pole> {
    let res = resolution.max(100);
    let xs: Vec<f64> = (0..res)
        .map(|i| lo + (hi - lo) * i as f64 / (res - 1) as f64)
        .collect();
    let vals: Vec<Option<f64>> = xs
        .iter()
        .map(|&x| vmap(x).filter(|v| v.is_finite()))
        .collect();
    let mut found: Vec<f64> = Vec::new();
    for (i, v) in vals.iter().enumerate() {
        if v.is_none() {
            found.push(xs[i]);
        }
    }
    for i in 0..res - 1 {
        if let (Some(a), Some(b)) = (vals[i], vals[i + 1]) {
            if a.signum() != b.signum() && a != 0.0 && b != 0.0 {
                let (mut l, mut r, mut fl) = (xs[i], xs[i + 1], a);
                for _ in 0..200 {
                    let m = 0.5 * (l + r);
                    if m <= l || m >= r {
                        break;
                    }
                    match vmap(m).filter(|t| t.is_finite()) {
                        None => {
                            l = m;
                            r = m;
                            break;
                        }
                        Some(fm) if fm.signum() == fl.signum() => {
                            l = m;
                            fl = fm;
                        }
                        Some(_) => r = m,
                    }
                }
                let m = 0.5 * (l + r);
                let near = [vmap(l), vmap(r), vmap(m)];
                if near.iter().any(|v| is_blowup(*v)) {
                    found.push(m);
                }
            }
        }
    }
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for i in 1..res - 1 {
        let (Some(a), Some(b), Some(c)) = (vals[i - 1], vals[i], vals[i + 1]) else {
            continue;
        };
        if !(b.abs() >= a.abs() && b.abs() >= c.abs()) {
            continue;
        }
        let f = |x: f64| {
            vmap(x)
                .filter(|t| t.is_finite())
                .map_or(f64::INFINITY, f64::abs)
        };
        let (mut l, mut r) = (xs[i - 1], xs[i + 1]);
        let mut x1 = r - phi * (r - l);
        let mut x2 = l + phi * (r - l);
        let (mut f1, mut f2) = (f(x1), f(x2));
        for _ in 0..80 {
            if f1 > f2 {
                r = x2;
                x2 = x1;
                f2 = f1;
                x1 = r - phi * (r - l);
                f1 = f(x1);
            } else {
                l = x1;
                x1 = x2;
                f1 = f2;
                x2 = l + phi * (r - l);
                f2 = f(x2);
            }
            if f1.is_infinite() || f2.is_infinite() {
                break;
            }
        }
        if f1.max(f2) > BLOWUP {
            found.push(if f1 > f2 { x1 } else { x2 });
        }
    }
    found.sort_by(f64::total_cmp);
    let step = (hi - lo).abs() / (res - 1) as f64;
    let mut poles: Vec<Pole> = Vec::new();
    for x in found {
        if let Some(last) = poles.last() {
            if (x - last.x).abs() <= step {
                continue;
            }
        }
        let shared = original_poles
            .iter()
            .any(|p| (p - x).abs() <= SHARED_POLE_TOL.max(step));
        poles.push(Pole { x, shared });
    }
    poles
}

/// Poles of the original potential and of the partner potential on a range.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleScan {
    /// Partner poles, each flagged shared or new.
    pub poles: Vec<Pole>,
    /// Poles of the original one-dimensional potential.
    pub original: Vec<f64>,
}

impl PoleScan {
    /// Locations of the partner poles absent from the original potential.
    pub fn new_poles(&self) -> Vec<f64> {
        self.poles
            .iter()
            .filter(|p| !p.shared)
            .map(|p| p.x)
            .collect()
    }
}

/// Scans `V` and `V^(2)` on `[lo, hi]`.
///
/// Real seed roots inside the z-domain where `P4 ≠ 0` are genuine partner
/// poles; they are added even when the grid scan straddles them.
pub fn scan_partner_poles(partner: &SusyPartner, lo: f64, hi: f64, resolution: usize) -> PoleScan {
    let case = partner.case();
    let orig_map = |x: f64| case.potential_1d(x).ok();
    let part_map = |x: f64| partner.v2_x(x).ok();
    let original: Vec<f64> = singularity_scan(&orig_map, lo, hi, resolution, &[])
        .into_iter()
        .map(|p| p.x)
        .collect();
    let mut poles = singularity_scan(&part_map, lo, hi, resolution, &original);
    let step = (hi - lo).abs() / resolution.max(100) as f64;
    for x in partner.seed_pole_xs(lo, hi) {
        let Ok(z) = case.z_of_x(x) else { continue };
        let p4_nonzero = partner.form().p4(C::new(z, 0.0))[0].norm() > POLE_TOL;
        if p4_nonzero && !poles.iter().any(|p| (p.x - x).abs() <= step) {
            let shared = original.iter().any(|o| (o - x).abs() <= SHARED_POLE_TOL);
            poles.push(Pole { x, shared });
        }
    }
    poles.sort_by(|a, b| a.x.total_cmp(&b.x));
    PoleScan { poles, original }
}

/// Largest of `|got − want| / (1 + |want|)` over paired samples.
fn worst_rel(samples: impl IntoIterator<Item = (f64, f64, f64)>) -> (f64, Option<f64>) {
    let mut worst = (0.0, None);
    for (at, got, want) in samples {
        let d = (got - want).abs() / (1.0 + want.abs());
        let d = if d.is_nan() { f64::INFINITY } else { d };
        if d > worst.0 || worst.1.is_none() {
            worst = (
                d.max(worst.0),
                if d >= worst.0 { Some(at) } else { worst.1 },
            );
        }
    }
    worst
}

/// Compares the engine with the case's closed forms.
///
/// Energies and roots are always compared (roots paired through the
/// energies). Partner functions are compared only when the partner's seed
/// and other states are the oracle's seed and other states.
pub fn oracle_crosscheck(
    case: &CaseInstance,
    partner: &SusyPartner,
    spectrum: &[BetheSolution],
    oracle: &ClosedForms,
    x_grid: &[f64],
    tol_scale: f64,
) -> Vec<CheckEntry> {
    let mut out = Vec::new();
    let mut e_worst = 0.0f64;
    let mut r_worst = 0.0f64;
    let mut matched = [usize::MAX; 2];
    for (i, slot) in matched.iter_mut().enumerate() {
        let want = oracle.energies[i];
        let best = spectrum
            .iter()
            .enumerate()
            .map(|(k, s)| (k, (s.energy - want).norm() / want.abs().max(1.0)))
            .fold(
                (usize::MAX, f64::INFINITY),
                |b, c| if c.1 < b.1 { c } else { b },
            );
        *slot = best.0;
        e_worst = e_worst.max(best.1);
        if let Some(s) = spectrum.get(best.0) {
            let d = s.roots.first().map_or(f64::INFINITY, |r| {
                (r - oracle.roots[i]).norm() / oracle.roots[i].abs().max(1.0)
            });
            r_worst = r_worst.max(d);
        } else {
            r_worst = f64::INFINITY;
        }
    }
    if matched[0] == matched[1] || spectrum.len() != 2 {
        e_worst = f64::INFINITY;
    }
    out.push(CheckEntry::new(
        "oracle_energies",
        e_worst,
        1e-10 * tol_scale,
        None,
    ));
    out.push(CheckEntry::new(
        "oracle_roots",
        r_worst,
        1e-10 * tol_scale,
        None,
    ));

    if partner.seed_index != matched[0] || partner.other_index != matched[1] {
        return out;
    }
    let tol = 1e-9 * tol_scale;
    let zs = case.z_samples(50);
    let (w, at) = worst_rel(zs.iter().filter_map(|&z| {
        let got = partner.phi2(C::new(z, 0.0)).ok()?;
        Some((z, got.re + got.im.abs(), oracle.phi2(z)))
    }));
    out.push(CheckEntry::new("oracle_phi2", w, tol, at));
    let (w, at) = worst_rel(zs.iter().filter_map(|&z| {
        let got = partner.v2_z(C::new(z, 0.0)).ok()?;
        Some((z, got.re + got.im.abs(), oracle.v2_z(z)))
    }));
    out.push(CheckEntry::new("oracle_v2_z", w, tol, at));
    if case.case.algebraic_only() {
        return out;
    }
    let (w, at) = worst_rel(
        x_grid
            .iter()
            .filter_map(|&x| Some((x, partner.v2_x(x).ok()?, oracle.v2_x(x)?))),
    );
    out.push(CheckEntry::new("oracle_v2_x", w, tol, at));
    let (w, at) = worst_rel(x_grid.iter().filter_map(|&x| {
        let wf = partner.wavefunctions(x).ok()?;
        if wf.clamped {
            return None;
        }
        Some((x, wf.psi2, oracle.psi2_x(x)?))
    }));
    out.push(CheckEntry::new("oracle_psi2_x", w, tol, at));
    if let Ok(rad) = partner.radial_wrap() {
        let (w, at) = worst_rel(
            x_grid
                .iter()
                .filter_map(|&r| Some((r, rad.v_s2(r).ok()?, oracle.vs2(r)?))),
        );
        out.push(CheckEntry::new("oracle_vs2", w, tol, at));
        let (w, at) = worst_rel(x_grid.iter().filter_map(|&r| {
            let wf = rad.wavefunctions(r).ok()?;
            if wf.clamped {
                return None;
            }
            Some((r, wf.psi2, oracle.psi_s2(r)?))
        }));
        out.push(CheckEntry::new("oracle_psi_s2", w, tol, at));
    }
    out
}

/// Options for [`run_suite`].
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    /// Multiplies every tolerance (≥ 1).
    pub tol_scale: f64,
    /// Physical-axis grid `(min, max, points)`; the case default when absent.
    pub grid: Option<(f64, f64, usize)>,
    pub seed_index: Option<usize>,
    pub other_index: Option<usize>,
    /// Debug mutation of the partner potential (see
    /// [`SusyPartner::with_flipped_v2_correction`]).
    pub flip_v2: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            tol_scale: 1.0,
            grid: None,
            seed_index: None,
            other_index: None,
            flip_v2: false,
        }
    }
}

/// Reads the tolerance scale from `QES_TOL` (default 1; must be ≥ 1).
pub fn tol_scale_from_env() -> Result<f64> {
    match std::env::var("QES_TOL") {
        Err(_) => Ok(1.0),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(v) if v.is_finite() && v >= 1.0 => Ok(v),
            _ => Err(QesError::InvalidInput(format!(
                "QES_TOL must be a number ≥ 1, got '{s}'"
            ))),
        },
    }
}

/// Evenly spaced grid with `points ≥ 2` points.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let points = points.max(2);
    (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect()
}

fn max_entry(name: &str, values: impl IntoIterator<Item = (f64, f64)>, tol: f64) -> CheckEntry {
    let mut worst = 0.0f64;
    let mut at = None;
    for (z, v) in values {
        let v = if v.is_nan() { f64::INFINITY } else { v };
        if v > worst || at.is_none() {
            worst = worst.max(v);
            at = Some(z);
        }
    }
    CheckEntry::new(name, worst, tol, at)
}

/// Keeps grid points at which the whole FD stencil evaluates cleanly.
fn usable(grid: &[f64], f: &dyn Fn(f64) -> Option<f64>) -> Vec<f64> {
    grid.iter()
        .copied()
        .filter(|&x| {
            [0.0, FD_STEP, -FD_STEP, FD_STEP / 2.0, -FD_STEP / 2.0]
                .iter()
                .all(|d| f(x + d).is_some_and(f64::is_finite))
        })
        .collect()
}

fn fd_entry(name: &str, result: Result<FdResidual>, tol: f64) -> CheckEntry {
    match result {
        Ok(r) => CheckEntry::new(name, r.max, tol, Some(r.worst_at)),
        Err(_) => CheckEntry::new(name, f64::INFINITY, tol, None),
    }
}

/// Runs the full invariant suite on one case instance.
pub fn run_suite(case: &CaseInstance, opts: &SuiteOptions) -> Result<VerificationReport> {
    let ts = opts.tol_scale.max(1.0);
    let spectrum = solve_spectrum(&case.form)?;
    let mut checks = Vec::new();

    checks.push(max_entry(
        "bae_residual",
        spectrum
            .iter()
            .enumerate()
            .map(|(k, s)| (k as f64, s.bae_residual)),
        1e-8 * ts,
    ));
    checks.push(max_entry(
        "ode_residual",
        spectrum
            .iter()
            .enumerate()
            .map(|(k, s)| (k as f64, s.ode_residual_max)),
        1e-8 * ts,
    ));
    let mut cons = Vec::new();
    for (k, s) in spectrum.iter().enumerate() {
        cons.push((
            k as f64,
            qes_consistency_check(&case.form, &s.roots, s.energy, 1e-8)?.max(),
        ));
    }
    checks.push(max_entry("qes_consistency", cons, 1e-8 * ts));

    let (lo, hi, pts) = opts.grid.unwrap_or_else(|| case.default_grid());
    let grid = linspace(lo, hi, pts);
    if !case.case.algebraic_only() {
        checks.push(max_entry(
            "potential_reconstruction",
            grid.iter().filter_map(|&x| {
                let v = case.potential_1d(x).ok()?;
                let r = case.reconstructed_potential(x).ok()?;
                Some((x, (v - r).abs() / (1.0 + v.abs())))
            }),
            1e-8 * ts,
        ));
    }

    let mut new_poles = Vec::new();
    if spectrum.len() >= 2 {
        let seed_index = opts.seed_index.unwrap_or(0);
        let other_index = opts
            .other_index
            .unwrap_or(if seed_index == 0 { 1 } else { 0 });
        let mut partner = SusyPartner::new(case, &spectrum, seed_index, other_index)?;
        if opts.flip_v2 {
            partner = partner.with_flipped_v2_correction();
        }
        let form = &case.form;
        let zs: Vec<C> = case
            .z_samples(50)
            .into_iter()
            .map(|z| C::new(z, 0.0))
            .collect();
        let probe_zs: Vec<C> = case
            .z_samples(20)
            .into_iter()
            .map(|z| C::new(z, 0.0))
            .collect();

        checks.push(max_entry(
            "annihilation",
            zs.iter().filter_map(|&z| {
                let j = partner.seed.poly.jet(z);
                let a = apply_a_bare(&partner.seed, form, &j, z).ok()?;
                let s1: C = partner.seed.roots.iter().map(|r| 1.0 / (z - r)).sum();
                let scale = form.p4(z)[0].sqrt().norm() * (j[1].norm() + (s1 * j[0]).norm());
                Some((z.re, a.norm() / scale.max(1.0)))
            }),
            1e-11 * ts,
        ));

        let mut fact = Vec::new();
        let mut inter = Vec::new();
        for &z in &probe_zs {
            for k in 0..4 {
                let f = monomial_jet(k, z);
                if let Ok((d, s)) = partner.factorization_defect(&f, z) {
                    fact.push((z.re, d.norm() / s.max(f64::MIN_POSITIVE)));
                }
                if let Ok((d, s)) = partner.intertwining_defect(&f, z) {
                    inter.push((z.re, d.norm() / s.max(f64::MIN_POSITIVE)));
                }
            }
        }
        checks.push(max_entry("factorization", fact, 1e-8 * ts));
        checks.push(max_entry("intertwining", inter, 1e-7 * ts));

        for j in (0..spectrum.len()).filter(|&j| j != seed_index) {
            let p = partner.with_other(&spectrum, j)?;
            let p = if opts.flip_v2 {
                p.with_flipped_v2_correction()
            } else {
                p
            };
            checks.push(max_entry(
                &format!("a_mapping[{j}]"),
                zs.iter().filter_map(|&z| {
                    let a = apply_a_bare(&p.seed, form, &p.other.poly.jet(z), z).ok()?;
                    let want = p.phi2(z).ok()?;
                    Some((z.re, (a - want).norm() / want.norm().max(1.0)))
                }),
                1e-11 * ts,
            ));
            checks.push(max_entry(
                &format!("b_reverse[{j}]"),
                zs.iter().filter_map(|&z| {
                    let g = p.phi2_jet(z).ok()?;
                    let b = apply_b_bare(&p.seed, &p.other, form, &g, z).ok()?;
                    let want = p.gap * p.other.poly.eval(z, 0);
                    let scale = want.norm() + (form.p4(z)[0].sqrt() * g[1]).norm();
                    Some((z.re, (b - want).norm() / scale.max(f64::MIN_POSITIVE)))
                }),
                1e-8 * ts,
            ));
            checks.push(max_entry(
                &format!("partner_residual[{j}]"),
                zs.iter()
                    .filter_map(|&z| Some((z.re, p.partner_residual(z).ok()?))),
                1e-8 * ts,
            ));
        }

        if !case.case.algebraic_only() && partner.seed.is_real && partner.other.is_real {
            let rho = |x: f64| case.weight_rho(x);
            let v = |x: f64| case.potential_1d(x);
            let v2 = |x: f64| partner.v2_x(x);
            let wf = |x: f64| partner.wavefunctions(x).ok().filter(|w| !w.clamped);
            let psi_s = |x: f64| {
                wf(x)
                    .map(|w| w.psi_seed)
                    .ok_or(QesError::PoleProximity { x })
            };
            let psi_o = |x: f64| {
                wf(x)
                    .map(|w| w.psi_other)
                    .ok_or(QesError::PoleProximity { x })
            };
            let psi_2 = |x: f64| wf(x).map(|w| w.psi2).ok_or(QesError::PoleProximity { x });
            let scan_res = (4 * pts).max(2000);
            let PoleScan { poles, original } = scan_partner_poles(&partner, lo, hi, scan_res);
            let orig = original;
            new_poles = poles.iter().filter(|p| !p.shared).map(|p| p.x).collect();
            new_poles.sort_by(f64::total_cmp);
            let new_pole_entry = CheckEntry::new(
                "new_poles",
                new_poles.len() as f64,
                0.5,
                new_poles.first().copied(),
            );
            let all_poles: Vec<f64> = poles
                .iter()
                .map(|p| p.x)
                .chain(orig.iter().copied())
                .collect();
            let away = |x: f64| all_poles.iter().all(|p| (p - x).abs() > POLE_EXCLUSION);
            let fd_grid: Vec<f64> = grid.iter().copied().filter(|&x| away(x)).collect();
            let ok_orig = usable(&fd_grid, &|x| {
                Some(v(x).ok()? + wf(x)?.psi_seed + wf(x)?.psi_other)
            });
            let ok_part = usable(&fd_grid, &|x| Some(v2(x).ok()? + wf(x)?.psi2));
            let tol = 1e-4 * ts;
            let es = partner.seed.energy.re;
            let eo = partner.other.energy.re;
            checks.push(fd_entry(
                "fd_seed",
                fd_hamiltonian_residual(&v, &rho, None, &psi_s, es, &ok_orig),
                tol,
            ));
            checks.push(fd_entry(
                "fd_other",
                fd_hamiltonian_residual(&v, &rho, None, &psi_o, eo, &ok_orig),
                tol,
            ));
            checks.push(fd_entry(
                "fd_partner",
                fd_hamiltonian_residual(&v2, &rho, None, &psi_2, eo, &ok_part),
                tol,
            ));
            if let Ok(rad) = partner.radial_wrap() {
                let vs = |r: f64| rad.v_s(r);
                let vs2 = |r: f64| rad.v_s2(r);
                let wfs = |r: f64| rad.wavefunctions(r).ok().filter(|w| !w.clamped);
                let ps = |r: f64| {
                    wfs(r)
                        .map(|w| w.psi_seed)
                        .ok_or(QesError::PoleProximity { x: r })
                };
                let po = |r: f64| {
                    wfs(r)
                        .map(|w| w.psi_other)
                        .ok_or(QesError::PoleProximity { x: r })
                };
                let p2 = |r: f64| {
                    wfs(r)
                        .map(|w| w.psi2)
                        .ok_or(QesError::PoleProximity { x: r })
                };
                let radial = Some(rad.radial);
                checks.push(fd_entry(
                    "fd_seed_radial",
                    fd_hamiltonian_residual(&vs, &rho, radial, &ps, es, &ok_orig),
                    tol,
                ));
                checks.push(fd_entry(
                    "fd_other_radial",
                    fd_hamiltonian_residual(&vs, &rho, radial, &po, eo, &ok_orig),
                    tol,
                ));
                checks.push(fd_entry(
                    "fd_partner_radial",
                    fd_hamiltonian_residual(&vs2, &rho, radial, &p2, eo, &ok_part),
                    tol,
                ));
            }
            checks.push(max_entry(
                "partner_potential_gauge",
                grid.iter().filter_map(|&x| {
                    let a = partner.v2_x(x).ok()?;
                    let b = partner.v2_x_gauge(x).ok()?;
                    Some((x, (a - b).abs() / (1.0 + b.abs())))
                }),
                1e-8 * ts,
            ));
            checks.push(new_pole_entry);
        }

        if let Some(oracle) = closed_form_oracle(case) {
            checks.extend(oracle_crosscheck(
                case, &partner, &spectrum, &oracle, &grid, ts,
            ));
        }
    }

    Ok(VerificationReport {
        case: case.case.id().to_string(),
        n: case.n,
        params: case.params.pairs().iter().cloned().collect(),
        checks,
        new_poles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{instantiate, CaseId, Params};

    fn fig(case: CaseId, n: usize) -> CaseInstance {
        instantiate(case, &Params::new(case.figure_params().iter().copied()), n).unwrap()
    }

    #[test]
    fn sextic_seed_fd_residual() {
        let case = fig(CaseId::SexticVI, 1);
        let (p, _) = SusyPartner::from_case(&case, None, None).unwrap();
        let grid = linspace(-2.0, 2.0, 200);
        let r = fd_hamiltonian_residual(
            &|x| case.potential_1d(x),
            &|_| Ok(1.0),
            None,
            &|x| Ok(p.wavefunctions(x)?.psi_seed),
            3.0 - 2.0 * 3f64.sqrt(),
            &grid,
        )
        .unwrap();
        assert!(r.max < 1e-6, "{r:?}");
    }

    #[test]
    fn zero_wavefunction_is_degenerate() {
        let err = fd_hamiltonian_residual(
            &|_| Ok(1.0),
            &|_| Ok(1.0),
            None,
            &|_| Ok(0.0),
            1.0,
            &[0.0, 0.5],
        )
        .unwrap_err();
        assert!(matches!(err, QesError::DegenerateInput(_)));
    }

    #[test]
    fn synthetic_pole_is_found() {
        let v = |x: f64| Some(1.0 / (x - 1.0));
        let poles = singularity_scan(&v, -2.0, 3.0, 500, &[]);
        assert_eq!(poles.len(), 1);
        assert!((poles[0].x - 1.0).abs() < 0.01 && !poles[0].shared);
        let dbl = |x: f64| Some(1.0 / (x - 0.123).powi(2));
        let poles = singularity_scan(&dbl, -2.0, 3.0, 500, &[0.123]);
        assert_eq!(poles.len(), 1);
        assert!(poles[0].shared);
    }

    #[test]
    fn smooth_potential_has_no_poles() {
        let v = |x: f64| Some(x.sin() * 1e3 + x * x);
        assert!(singularity_scan(&v, -5.0, 5.0, 100, &[]).is_empty());
    }

    #[test]
    fn perturbed_oracle_is_detected() {
        let case = fig(CaseId::MorseII, 1);
        let (p, spec) = SusyPartner::from_case(&case, None, None).unwrap();
        let oracle = closed_form_oracle(&case).unwrap().perturbed(1e-3);
        let grid = linspace(-1.0, 4.0, 50);
        let entries = oracle_crosscheck(&case, &p, &spec, &oracle, &grid, 1.0);
        let worst = entries.iter().map(|e| e.max_residual).fold(0.0, f64::max);
        assert!(worst > 1e-4 && entries.iter().any(|e| !e.pass));
    }
}
