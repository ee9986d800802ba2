//! All `n+1` polynomial eigenstates of an [`OdeStandardForm`].
//!
//! The primary solver represents `L = P4 d² + P3 d − V1` as an
//! `(n+1)×(n+1)` matrix on `{1, z, …, zⁿ}` ([`algebraize`]); each eigenpair
//! gives an energy `E = −λ` and the coefficients of a polynomial solution.
//! Roots are extracted from the monic polynomial and then refined and
//! certified against the Bethe ansatz equations ([`refine_bae`]).

use nalgebra::{DMatrix, DVector, Schur, SVD};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QesError, Result};
use crate::odeform::{ode_residual, OdeStandardForm};
use crate::poly::{all_real, MonicPoly, REAL_TOL};

/// Relative size of an overflow coefficient that breaks the invariant subspace.
pub const OVERFLOW_TOL: f64 = 1e-10;
/// Eigenvector condition number above which the spectrum is declared degenerate.
pub const CONDITION_LIMIT: f64 = 1e12;
/// Residual at which BAE refinement stops.
pub const BAE_TARGET: f64 = 1e-12;
/// Iteration cap for BAE refinement.
pub const BAE_MAX_ITER: usize = 50;
/// Separation below which two roots are considered collided.
pub const COLLISION_TOL: f64 = 1e-10;

/// One polynomial eigenstate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetheSolution {
    pub n: usize,
    pub energy: Complex64,
    pub poly: MonicPoly,
    pub roots: Vec<Complex64>,
    pub bae_residual: f64,
    pub ode_residual_max: f64,
    pub is_real: bool,
    /// Set when BAE refinement diverged and the unrefined roots were kept.
    pub refine_warning: bool,
}

/// Outcome of [`refine_bae`].
#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    pub roots: Vec<Complex64>,
    pub residual: f64,
    pub iterations: usize,
    /// The iteration diverged; `roots` are the input roots.
    pub diverged: bool,
}

/// Matrix `M` with `L(z^k) = Σ_j M[j][k] z^j` for `k = 0..=n`.
///
/// Fails when `L` maps a basis monomial outside the degree-`n` space by more
/// than [`OVERFLOW_TOL`] relative to the coefficient scale.
pub fn algebraize(form: &OdeStandardForm) -> Result<DMatrix<f64>> {
    let n = form.n;
    let size = n + 3;
    let mut full = DMatrix::<f64>::zeros(size, n + 1);
    for k in 0..=n {
        let kf = k as f64;
        for (i, &a) in form.a.iter().enumerate() {
            if k >= 2 && a != 0.0 {
                let j = i + k - 2;
                if j < size {
                    full[(j, k)] += a * kf * (kf - 1.0);
                } else {
                    return Err(QesError::NotQes {
                        n,
                        power: j,
                        overflow: a.abs(),
                    });
                }
            }
        }
        for (i, &b) in form.b.iter().enumerate() {
            if k >= 1 && b != 0.0 {
                let j = i + k - 1;
                if j < size {
                    full[(j, k)] += b * kf;
                } else {
                    return Err(QesError::NotQes {
                        n,
                        power: j,
                        overflow: b.abs(),
                    });
                }
            }
        }
        for (i, &v) in form.v1.iter().enumerate() {
            full[(i + k, k)] -= v;
        }
    }
    let scale = full
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(form.scale());
    for j in (n + 1)..size {
        for k in 0..=n {
            let o = full[(j, k)];
            if o.abs() > OVERFLOW_TOL * scale {
                return Err(QesError::NotQes {
                    n,
                    power: j,
                    overflow: o,
                });
            }
        }
    }
    Ok(full.rows(0, n + 1).into_owned())
}

/// Maximum over `i` of `|Σ_{j≠i} 2/(z_i−z_j) + P3(z_i)/P4(z_i)|`.
pub fn bae_residual(form: &OdeStandardForm, roots: &[Complex64]) -> Result<f64> {
    Ok(bae_vector(form, roots)?
        .iter()
        .fold(0.0f64, |m, f| m.max(f.norm())))
}

fn p4_scale(form: &OdeStandardForm, z: Complex64) -> f64 {
    form.a
        .iter()
        .enumerate()
        .map(|(k, a)| a.abs() * z.norm().powi(k as i32))
        .sum::<f64>()
        .max(f64::MIN_POSITIVE)
}

fn bae_vector(form: &OdeStandardForm, roots: &[Complex64]) -> Result<Vec<Complex64>> {
    roots
        .iter()
        .enumerate()
        .map(|(i, &zi)| {
            let p4 = form.p4(zi)[0];
            if p4.norm() <= 1e-12 * p4_scale(form, zi) {
                return Err(QesError::SingularWeight { index: i, root: zi });
            }
            let mut f = form.p3(zi)[0] / p4;
            for (j, &zj) in roots.iter().enumerate() {
                if j != i {
                    f += 2.0 / (zi - zj);
                }
            }
            Ok(f)
        })
        .collect()
}

fn check_separation(roots: &[Complex64]) -> Result<()> {
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            let sep = (roots[i] - roots[j]).norm();
            let scale = roots[i].norm().max(roots[j].norm()).max(1.0);
            if sep < COLLISION_TOL * scale {
                return Err(QesError::RootCollision {
                    i,
                    j,
                    separation: sep,
                });
            }
        }
    }
    Ok(())
}

fn bae_jacobian(form: &OdeStandardForm, roots: &[Complex64]) -> DMatrix<Complex64> {
    let n = roots.len();
    let mut jac = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        let zi = roots[i];
        let [p4, dp4, ..] = form.p4(zi);
        let [p3, dp3, ..] = form.p3(zi);
        let mut diag = (dp3 * p4 - p3 * dp4) / (p4 * p4);
        for j in 0..n {
            if j != i {
                let t = 2.0 / ((zi - roots[j]) * (zi - roots[j]));
                diag -= t;
                jac[(i, j)] = t;
            }
        }
        jac[(i, i)] = diag;
    }
    jac
}

/// Damped Newton refinement of Bethe roots.
///
/// Stops once the residual drops below [`BAE_TARGET`] or after
/// [`BAE_MAX_ITER`] iterations. If the residual grows for five consecutive
/// steps the input roots are returned with `diverged = true`.
pub fn refine_bae(form: &OdeStandardForm, roots: &[Complex64]) -> Result<Refinement> {
    check_separation(roots)?;
    let start = bae_residual(form, roots)?;
    let mut best = roots.to_vec();
    let mut best_res = start;
    let mut current = roots.to_vec();
    let mut current_res = start;
    let mut growth = 0usize;
    let mut iterations = 0usize;
    while current_res >= BAE_TARGET && iterations < BAE_MAX_ITER {
        iterations += 1;
        let f = DVector::from_vec(bae_vector(form, &current)?);
        let jac = bae_jacobian(form, &current);
        let Some(step) = jac.lu().solve(&f) else {
            break;
        };
        let mut accepted: Option<(Vec<Complex64>, f64)> = None;
        let mut lambda = 1.0;
        for _ in 0..12 {
            let trial: Vec<Complex64> = current
                .iter()
                .zip(step.iter())
                .map(|(z, s)| z - s * lambda)
                .collect();
            if check_separation(&trial).is_ok() {
                if let Ok(r) = bae_residual(form, &trial) {
                    if r.is_finite() {
                        let better = accepted.as_ref().is_none_or(|(_, ar)| r < *ar);
                        if better {
                            accepted = Some((trial, r));
                        }
                        if r < current_res {
                            break;
                        }
                    }
                }
            }
            lambda *= 0.5;
        }
        let Some((next, next_res)) = accepted else {
            break;
        };
        if next_res >= current_res {
            growth += 1;
            if growth >= 5 {
                return Ok(Refinement {
                    roots: roots.to_vec(),
                    residual: start,
                    iterations,
                    diverged: true,
                });
            }
        } else {
            growth = 0;
        }
        current = next;
        current_res = next_res;
        if current_res < best_res {
            best = current.clone();
            best_res = current_res;
        }
        // Stagnation at round-off level: no further progress is possible.
        if growth >= 2 && best_res < 1e-8 {
            break;
        }
    }
    check_separation(&best)?;
    Ok(Refinement {
        roots: best,
        residual: best_res,
        iterations,
        diverged: false,
    })
}

/// Eigenvalues of a real matrix (complex Schur form).
fn eigenvalues(m: &DMatrix<f64>) -> Vec<Complex64> {
    if m.nrows() == 1 {
        return vec![Complex64::new(m[(0, 0)], 0.0)];
    }
    Schur::new(m.clone())
        .complex_eigenvalues()
        .iter()
        .copied()
        .collect()
}

/// Right null vector and eigenvalue condition number of `M − λI`.
fn eigenvector(m: &DMatrix<Complex64>, lambda: Complex64) -> (DVector<Complex64>, f64) {
    let n = m.nrows();
    let shifted = m - DMatrix::<Complex64>::identity(n, n) * lambda;
    let svd = SVD::new(shifted, true, true);
    let (k, _) =
        svd.singular_values
            .iter()
            .enumerate()
            .fold(
                (0, f64::INFINITY),
                |(bk, bv), (k, &v)| if v < bv { (k, v) } else { (bk, bv) },
            );
    let v_t = svd.v_t.expect("right singular vectors requested");
    let u = svd.u.expect("left singular vectors requested");
    let x: DVector<Complex64> = v_t.row(k).transpose().map(|c| c.conj());
    let y: DVector<Complex64> = u.column(k).into_owned();
    let overlap = y.dotc(&x).norm();
    let condition = if overlap > 0.0 {
        1.0 / overlap
    } else {
        f64::INFINITY
    };
    (x, condition)
}

fn sample_points(roots: &[Complex64]) -> Vec<Complex64> {
    let r = 1.0 + roots.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    (0..50)
        .map(|k| Complex64::new(-r + 2.0 * r * (k as f64 + 0.5) / 50.0, 0.0))
        .collect()
}

/// All `n+1` polynomial eigenstates, sorted by ascending real part of energy.
pub fn solve_spectrum(form: &OdeStandardForm) -> Result<Vec<BetheSolution>> {
    let m = algebraize(form)?;
    let n = form.n;
    let mc = m.map(|x| Complex64::new(x, 0.0));
    let lambdas = eigenvalues(&m);
    let scale = lambdas.iter().fold(1.0f64, |s, l| s.max(l.norm()));
    for i in 0..lambdas.len() {
        for j in (i + 1)..lambdas.len() {
            if (lambdas[i] - lambdas[j]).norm() <= 1e-10 * scale {
                return Err(QesError::DegenerateSpectrum {
                    eigenvalue: -lambdas[i],
                    condition: f64::INFINITY,
                });
            }
        }
    }
    let mut out = Vec::with_capacity(n + 1);
    for &lambda in &lambdas {
        let energy = -lambda;
        let (v, condition) = eigenvector(&mc, lambda);
        if condition > CONDITION_LIMIT {
            return Err(QesError::DegenerateSpectrum {
                eigenvalue: energy,
                condition,
            });
        }
        let coeffs: Vec<Complex64> = v.iter().copied().collect();
        let norm = v.norm();
        let lead = coeffs[n].norm();
        if lead < 1e-12 * norm {
            return Err(QesError::DegreeDrop {
                energy,
                leading: lead / norm,
            });
        }
        let monic = MonicPoly::from_coeffs(&coeffs)?;
        let initial = monic.companion_roots();
        let refined = refine_bae(form, &initial)?;
        let mut roots = refined.roots;
        let mut energy = energy;
        let is_real = all_real(&roots) && energy.im.abs() < REAL_TOL;
        if is_real {
            roots.iter_mut().for_each(|r| r.im = 0.0);
            energy.im = 0.0;
        }
        roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        let poly = MonicPoly::from_roots(&roots)?;
        let bae = bae_residual(form, &roots)?;
        let ode_max = sample_points(&roots)
            .into_iter()
            .map(|z| ode_residual(form, energy, &poly, z).norm())
            .fold(0.0f64, f64::max);
        out.push(BetheSolution {
            n,
            energy,
            poly,
            roots,
            bae_residual: bae,
            ode_residual_max: ode_max,
            is_real,
            refine_warning: refined.diverged,
        });
    }
    out.sort_by(|a, b| {
        a.energy
            .re
            .total_cmp(&b.energy.re)
            .then(a.energy.im.total_cmp(&b.energy.im))
    });
    Ok(out)
}
