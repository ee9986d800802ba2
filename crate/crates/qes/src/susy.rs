//! First-order state-deleting SUSY partners.
//!
//! A seed eigenstate `φ_s` defines the bare supercharges
//!
//! * `A f = √P4 (f' − (ln φ_s)' f)`,
//! * `B g = √P4 [g' + gap·φ_s φ_o/(P4 W) g − ½(ln P4)' g − (ln W)' g + (ln φ_s)' g]`,
//!
//! with `W = W(φ_s, φ_o)` and `gap = Λ_s − E_o`. They satisfy
//! `B A = T1 + Λ_s`, `A φ_s = 0`, `A φ_o = φ^(2)` and `B φ^(2) = gap·φ_o`,
//! and `A` intertwines `T1` with the partner operator
//! `T2 = P4 d² + P3 d − V₂` built from [`partner_ode_potential`].
//!
//! On the physical axis the partner wavefunction is `ψ^(2) = φ^(2) e^{−g}`
//! with `√P4` evaluated on the analytic branch `σ √ρ z'`, and the partner
//! potential follows from the logarithmic derivative of the seed
//! wavefunction (see [`SusyPartner::v2_x`]).

use num_complex::Complex64;

use crate::bethe::{solve_spectrum, BetheSolution};
use crate::catalog::{gauge_from_model, CaseInstance};
use crate::error::{QesError, Result};
use crate::odeform::OdeStandardForm;
use crate::poly::{root_power_sums, REAL_TOL};

type C = Complex64;

fn zero() -> C {
    C::new(0.0, 0.0)
}

/// `[√P4, (√P4)', (√P4)'']` at `z` on the principal branch.
fn sqrt_p4_jet(form: &OdeStandardForm, z: C) -> Result<[C; 3]> {
    let [p4, d1, d2, _] = form.p4(z);
    let r = p4.sqrt();
    if r.norm() == 0.0 {
        return Err(QesError::SingularCoefficient { z });
    }
    Ok([
        r,
        d1 / (2.0 * r),
        d2 / (2.0 * r) - d1 * d1 / (4.0 * r * r * r),
    ])
}

/// Partner polynomial solution `φ^(2) = √P4 · W(φ_s, φ_o)/φ_s` at `z`.
///
/// Uses the principal branch of `√P4`; fails when `z` is a seed root.
pub fn partner_poly(
    seed: &BetheSolution,
    other: &BetheSolution,
    form: &OdeStandardForm,
    z: C,
) -> Result<C> {
    let [s1, _, _] = root_power_sums(&seed.roots, z)?;
    let _ = s1;
    let w = crate::poly::wronskian2(&seed.poly, &other.poly, z);
    let ps = seed.poly.eval(z, 0);
    Ok(form.p4(z)[0].sqrt() * w / ps)
}

/// Real-mode variant of [`partner_poly`]: fails with a branch error when
/// `P4(z) < 0`.
pub fn partner_poly_real(
    seed: &BetheSolution,
    other: &BetheSolution,
    form: &OdeStandardForm,
    z: f64,
) -> Result<f64> {
    let p4 = form.p4(C::new(z, 0.0))[0].re;
    if p4 < 0.0 {
        return Err(QesError::Branch { z, p4 });
    }
    let v = partner_poly(seed, other, form, C::new(z, 0.0))?;
    if v.im.abs() > REAL_TOL * v.norm().max(1.0) {
        return Err(QesError::InvalidInput(format!(
            "partner solution is complex at z = {z}"
        )));
    }
    Ok(v.re)
}

fn v2_correction(form: &OdeStandardForm, seed_roots: &[C], z: C, flip: bool) -> Result<C> {
    let [p4, dp4, ddp4, _] = form.p4(z);
    if p4.norm() == 0.0 {
        return Err(QesError::SingularCoefficient { z });
    }
    let [p3, dp3, ..] = form.p3(z);
    let [s1, s2, _] = root_power_sums(seed_roots, z)?;
    let last = if flip { -8.0 * p4 * s2 } else { 8.0 * p4 * s2 };
    Ok(0.25 * (2.0 * (ddp4 - 2.0 * dp3) + (2.0 * p3 - dp4) * dp4 / p4 - 4.0 * dp4 * s1 + last))
}

/// Partner ODE potential
/// `V₂ = V1 + ¼[2(P4'' − 2P3') + (2P3 − P4')P4'/P4 − 4P4'·s1 + 8P4·s2]`
/// with `s1 = Σ 1/(z−z_j)` and `s2 = Σ 1/(z−z_j)²` over the seed roots.
pub fn partner_ode_potential(seed: &BetheSolution, form: &OdeStandardForm, z: C) -> Result<C> {
    Ok(form.v1_jet(z)[0] + v2_correction(form, &seed.roots, z, false)?)
}

/// Bare `A f = √P4 (f' − s1 f)` for `f` given as `[f, f', …]` at `z`.
pub fn apply_a_bare(seed: &BetheSolution, form: &OdeStandardForm, f: &[C], z: C) -> Result<C> {
    let [s1, _, _] = root_power_sums(&seed.roots, z)?;
    Ok(form.p4(z)[0].sqrt() * (f[1] - s1 * f[0]))
}

/// `[A f, (A f)', (A f)'']` from the jet `[f, f', f'', f''']` at `z`.
pub fn a_bare_jet(
    seed: &BetheSolution,
    form: &OdeStandardForm,
    f: &[C; 4],
    z: C,
) -> Result<[C; 3]> {
    let [s1, s2, s3] = root_power_sums(&seed.roots, z)?;
    let [r, r1, r2] = sqrt_p4_jet(form, z)?;
    // s1' = −s2, s1'' = 2 s3.
    let u = f[1] - s1 * f[0];
    let u1 = f[2] + s2 * f[0] - s1 * f[1];
    let u2 = f[3] - 2.0 * s3 * f[0] + 2.0 * s2 * f[1] - s1 * f[2];
    Ok([r * u, r1 * u + r * u1, r2 * u + 2.0 * r1 * u1 + r * u2])
}

/// Bare `B g` for `g` given as `[g, g', …]` at `z`.
///
/// Fails at seed roots, at zeros of `P4` and at nodes of `W(φ_s, φ_o)`.
pub fn apply_b_bare(
    seed: &BetheSolution,
    other: &BetheSolution,
    form: &OdeStandardForm,
    g: &[C],
    z: C,
) -> Result<C> {
    let [s1, _, _] = root_power_sums(&seed.roots, z)?;
    let [p4, dp4, ..] = form.p4(z);
    if p4.norm() == 0.0 {
        return Err(QesError::SingularCoefficient { z });
    }
    let ps = seed.poly.jet(z);
    let po = other.poly.jet(z);
    let w = ps[0] * po[1] - ps[1] * po[0];
    let w1 = ps[0] * po[2] - ps[2] * po[0];
    let wscale = (ps[0] * po[1]).norm() + (ps[1] * po[0]).norm();
    if w.norm() <= 1e-14 * wscale.max(f64::MIN_POSITIVE) {
        return Err(QesError::WronskianNode { z });
    }
    let gap = seed.energy - other.energy;
    let coef = gap * ps[0] * po[0] / (p4 * w) - 0.5 * dp4 / p4 - w1 / w + s1;
    Ok(p4.sqrt() * (g[1] + coef * g[0]))
}

/// `(T1 f, (T1 f)')` for a jet `[f, f', f'', f''']`.
fn t1_jet(form: &OdeStandardForm, f: &[C; 4], z: C) -> [C; 2] {
    let [p4, dp4, ..] = form.p4(z);
    let [p3, dp3, ..] = form.p3(z);
    let [v, dv, ..] = form.v1_jet(z);
    [
        p4 * f[2] + p3 * f[1] - v * f[0],
        dp4 * f[2] + p4 * f[3] + dp3 * f[1] + p3 * f[2] - dv * f[0] - v * f[1],
    ]
}

/// Physical-axis values of the seed, other and partner wavefunctions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wavefunctions {
    pub psi_seed: f64,
    pub psi_other: f64,
    pub psi2: f64,
    /// The gauge exponent overflowed and the factor was clamped.
    pub clamped: bool,
}

/// Seed/other pairing with evaluators for the partner system.
#[derive(Debug, Clone, PartialEq)]
pub struct SusyPartner {
    case: CaseInstance,
    pub seed: BetheSolution,
    pub other: BetheSolution,
    pub seed_index: usize,
    pub other_index: usize,
    /// `seed.energy − other.energy`.
    pub gap: C,
    flip_correction: bool,
}

impl SusyPartner {
    /// Pairs two distinct states of an already solved spectrum.
    pub fn new(
        case: &CaseInstance,
        spectrum: &[BetheSolution],
        seed_index: usize,
        other_index: usize,
    ) -> Result<Self> {
        let len = spectrum.len();
        if seed_index >= len || other_index >= len {
            return Err(QesError::InvalidInput(format!(
                "state index out of range: seed {seed_index}, other {other_index}, {len} states"
            )));
        }
        if seed_index == other_index {
            return Err(QesError::InvalidInput(
                "seed and other must be distinct eigenstates".into(),
            ));
        }
        let seed = spectrum[seed_index].clone();
        let other = spectrum[other_index].clone();
        let gap = seed.energy - other.energy;
        if gap.norm() == 0.0 {
            return Err(QesError::InvalidInput(
                "seed and other share the same energy".into(),
            ));
        }
        Ok(Self {
            case: case.clone(),
            seed,
            other,
            seed_index,
            other_index,
            gap,
            flip_correction: false,
        })
    }

    /// Solves the spectrum and pairs the requested states (defaults: lowest
    /// energy as seed, next-lowest as other).
    pub fn from_case(
        case: &CaseInstance,
        seed_index: Option<usize>,
        other_index: Option<usize>,
    ) -> Result<(Self, Vec<BetheSolution>)> {
        let spectrum = solve_spectrum(&case.form)?;
        let seed_index = seed_index.unwrap_or(0);
        let other_index = other_index.unwrap_or(if seed_index == 0 { 1 } else { 0 });
        let partner = Self::new(case, &spectrum, seed_index, other_index)?;
        Ok((partner, spectrum))
    }

    /// The same seed paired with a different state of `spectrum`.
    pub fn with_other(&self, spectrum: &[BetheSolution], other_index: usize) -> Result<Self> {
        let mut next = Self::new(&self.case, spectrum, self.seed_index, other_index)?;
        next.flip_correction = self.flip_correction;
        Ok(next)
    }

    /// Debug mutation: flips the sign of the `8P4·s2` term in `V₂`. Every
    /// identity that involves the partner potential must then fail.
    pub fn with_flipped_v2_correction(mut self) -> Self {
        self.flip_correction = true;
        self
    }

    /// The underlying case instance.
    pub fn case(&self) -> &CaseInstance {
        &self.case
    }

    /// The ODE form.
    pub fn form(&self) -> &OdeStandardForm {
        &self.case.form
    }

    /// Zeros of the seed polynomial (candidate singularities of the partner).
    pub fn seed_pole_zs(&self) -> &[C] {
        &self.seed.roots
    }

    /// `φ^(2)(z)` on the principal branch of `√P4`.
    pub fn phi2(&self, z: C) -> Result<C> {
        partner_poly(&self.seed, &self.other, &self.case.form, z)
    }

    /// `[φ^(2), φ^(2)', φ^(2)'']` at `z`.
    pub fn phi2_jet(&self, z: C) -> Result<[C; 3]> {
        let j = self.other.poly.jet(z);
        a_bare_jet(&self.seed, &self.case.form, &j, z)
    }

    /// Partner ODE potential `V₂(z)`.
    pub fn v2_z(&self, z: C) -> Result<C> {
        Ok(self.case.form.v1_jet(z)[0]
            + v2_correction(&self.case.form, &self.seed.roots, z, self.flip_correction)?)
    }

    /// Relative residual of `P4 g'' + P3 g' + (E_o − V₂) g` for `g = φ^(2)`.
    pub fn partner_residual(&self, z: C) -> Result<f64> {
        let g = self.phi2_jet(z)?;
        let t4 = self.case.form.p4(z)[0] * g[2];
        let t3 = self.case.form.p3(z)[0] * g[1];
        let t2 = (self.other.energy - self.v2_z(z)?) * g[0];
        Ok((t4 + t3 + t2).norm() / (t4.norm() + t3.norm() + t2.norm()).max(1.0))
    }

    /// `A(T1 + Λ_s)f − (T2 + Λ_s)A f` and its scale for a jet `f`.
    pub fn intertwining_defect(&self, f: &[C; 4], z: C) -> Result<(C, f64)> {
        let form = &self.case.form;
        let lam = self.seed.energy;
        let t = t1_jet(form, f, z);
        let lhs = apply_a_bare(&self.seed, form, &[t[0] + lam * f[0], t[1] + lam * f[1]], z)?;
        let af = a_bare_jet(&self.seed, form, f, z)?;
        let v2 = self.v2_z(z)?;
        let p4 = form.p4(z)[0];
        let p3 = form.p3(z)[0];
        let rhs = p4 * af[2] + p3 * af[1] - v2 * af[0] + lam * af[0];
        let scale = lhs.norm()
            + (p4 * af[2]).norm()
            + (p3 * af[1]).norm()
            + (v2 * af[0]).norm()
            + (lam * af[0]).norm();
        Ok((lhs - rhs, scale))
    }

    /// `B(A f) − (T1 + Λ_s) f` and its scale for a jet `f`.
    pub fn factorization_defect(&self, f: &[C; 4], z: C) -> Result<(C, f64)> {
        let form = &self.case.form;
        let af = a_bare_jet(&self.seed, form, f, z)?;
        let ba = apply_b_bare(&self.seed, &self.other, form, &af, z)?;
        let lam = self.seed.energy;
        let p4 = form.p4(z)[0];
        let p3 = form.p3(z)[0];
        let v1 = form.v1_jet(z)[0];
        let want = p4 * f[2] + p3 * f[1] - v1 * f[0] + lam * f[0];
        let scale = ba.norm()
            + (p4 * f[2]).norm()
            + (p3 * f[1]).norm()
            + (v1 * f[0]).norm()
            + (lam * f[0]).norm();
        Ok((ba - want, scale))
    }

    fn real_energies(&self) -> Result<(f64, f64)> {
        if !(self.seed.is_real && self.other.is_real) {
            return Err(QesError::InvalidInput(
                "complex eigenstates have no real physical-axis representation".into(),
            ));
        }
        Ok((self.seed.energy.re, self.other.energy.re))
    }

    /// One-dimensional partner potential on the physical axis:
    /// `V^(2) = −V + 2Λ/ρ − ¼((ln ρ)')² − (ln ρ)' L + 2L² + ρ''/(2ρ)` with
    /// `L = (ln ψ_s)' = s1(z) z' − g'`.
    pub fn v2_x(&self, x: f64) -> Result<f64> {
        let (lam, _) = self.real_energies()?;
        let m = self.case.model(x)?;
        let z = C::new(m.z.v, 0.0);
        let [s1, _, _] = root_power_sums(&self.seed.roots, z)?;
        let big_l = s1.re * m.z.d1 - m.g.d1;
        let lr = m.rho.d1 / m.rho.v;
        let v = self.case.potential_1d(x)?;
        let mut out = -v + 2.0 * lam / m.rho.v - 0.25 * lr * lr - lr * big_l
            + 2.0 * big_l * big_l
            + m.rho.d2 / (2.0 * m.rho.v);
        if self.flip_correction {
            // Keep the debug mutation visible on the physical axis as well.
            let [_, s2, _] = root_power_sums(&self.seed.roots, z)?;
            out -= 4.0 * self.case.form.p4(z)[0].re * s2.re / m.rho.v;
        }
        Ok(out)
    }

    /// `V^(2)` obtained by gauging `V₂(z)`: `V₂(z(x))/ρ + g'² − g''`.
    pub fn v2_x_gauge(&self, x: f64) -> Result<f64> {
        let m = self.case.model(x)?;
        let v2 = self.v2_z(C::new(m.z.v, 0.0))?;
        Ok(v2.re / m.rho.v + m.g.d1 * m.g.d1 - m.g.d2)
    }

    /// `ψ_s`, `ψ_o` and `ψ^(2)` at `x` (gauge `sign·e^{−g}`; partner uses the
    /// analytic branch `√P4 = σ √ρ z'`).
    pub fn wavefunctions(&self, x: f64) -> Result<Wavefunctions> {
        self.real_energies()?;
        let m = self.case.model(x)?;
        let z = C::new(m.z.v, 0.0);
        let gauge = gauge_from_model(&m);
        let ps = self.seed.poly.eval(z, 0).re;
        let po = self.other.poly.eval(z, 0).re;
        let [s1, _, _] = root_power_sums(&self.seed.roots, z)?;
        let w_over = self.other.poly.eval(z, 1).re - s1.re * po;
        let sqrt_p4 = self.case.branch_sign() * m.rho.v.sqrt() * m.z.d1;
        Ok(Wavefunctions {
            psi_seed: ps * gauge.value,
            psi_other: po * gauge.value,
            psi2: sqrt_p4 * w_over * gauge.value,
            clamped: gauge.clamped,
        })
    }

    /// Radial evaluators; fails for non-radial cases.
    pub fn radial_wrap(&self) -> Result<RadialPartner<'_>> {
        match self.case.radial {
            Some(radial) => Ok(RadialPartner {
                partner: self,
                radial,
            }),
            None => Err(QesError::InvalidInput(format!(
                "case {} has no radial form",
                self.case.case.id()
            ))),
        }
    }

    /// Physical-axis locations in `[lo, hi]` of the real seed roots that lie
    /// inside the z-domain (the only places the partner can be singular).
    pub fn seed_pole_xs(&self, lo: f64, hi: f64) -> Vec<f64> {
        use crate::catalog::CaseId::*;
        if self.case.case.algebraic_only() {
            return Vec::new();
        }
        let mut out = Vec::new();
        for r in &self.seed.roots {
            if r.im.abs() > REAL_TOL {
                continue;
            }
            let Ok(x0) = self.case.x_of_z(r.re) else {
                continue;
            };
            let mut cands = vec![x0];
            match self.case.case {
                PoschlTellerIV | PoschlTellerV | SexticVI => cands.push(-x0),
                PeriodicX => {
                    let period =
                        2.0 * std::f64::consts::PI / self.case.param("alpha").unwrap_or(1.0);
                    let kmax = ((hi.abs().max(lo.abs())) / period).ceil() as i64 + 1;
                    for k in -kmax..=kmax {
                        cands.push(x0 + k as f64 * period);
                        cands.push(-x0 + k as f64 * period);
                    }
                }
                _ => {}
            }
            out.extend(cands.into_iter().filter(|x| *x >= lo && *x <= hi));
        }
        out.sort_by(f64::total_cmp);
        out.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        out
    }
}

/// Radial (`d`-dimensional) evaluators of a partner pair.
#[derive(Debug, Clone, Copy)]
pub struct RadialPartner<'a> {
    partner: &'a SusyPartner,
    pub radial: crate::catalog::Radial,
}

impl RadialPartner<'_> {
    fn check(r: f64) -> Result<()> {
        if r > 0.0 {
            Ok(())
        } else {
            Err(QesError::Domain(format!("r = {r} must be positive")))
        }
    }

    /// Original radial potential `V_S(r)`.
    pub fn v_s(&self, r: f64) -> Result<f64> {
        Self::check(r)?;
        self.partner.case.potential(r)
    }

    /// Radial partner potential `V_S^(2) = V^(2) − (d² − 4d(l+1) − 4(l−2)l + 3)/(4r²)`.
    pub fn v_s2(&self, r: f64) -> Result<f64> {
        Self::check(r)?;
        Ok(self.partner.v2_x(r)? + self.radial.partner_shift(r))
    }

    /// `h·ψ` for the seed, other and partner wavefunctions, `h = r^{−(d−1)/2}`.
    pub fn wavefunctions(&self, r: f64) -> Result<Wavefunctions> {
        Self::check(r)?;
        let w = self.partner.wavefunctions(r)?;
        let h = self.radial.h(r);
        Ok(Wavefunctions {
            psi_seed: h * w.psi_seed,
            psi_other: h * w.psi_other,
            psi2: h * w.psi2,
            clamped: w.clamped,
        })
    }
}

/// Convenience: jet `[1, 0, 0, 0]`, `[z, 1, 0, 0]`, … of the monomial `z^k`.
pub fn monomial_jet(k: u32, z: C) -> [C; 4] {
    let mut out = [zero(); 4];
    for (order, slot) in out.iter_mut().enumerate() {
        let o = order as u32;
        if o <= k {
            let falling: f64 = ((k - o + 1)..=k).map(f64::from).product();
            *slot = z.powu(k - o) * falling;
        }
    }
    out
}
