//! The gauged second-order ODE `P4 φ'' + P3 φ' + (E − V1) φ = 0` and the
//! coefficient constraints that make it quasi-exactly solvable.
//!
//! A polynomial solution `φ = ∏(z − z_i)` of degree `n` forces the
//! coefficients `c2, c1, c0` of `P2 = E − V1` (see [`c_constraints`]); the
//! catalog bakes these constraints into `V1`, and
//! [`qes_consistency_check`] certifies that a produced eigenstate honours
//! them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QesError, Result};
use crate::poly::MonicPoly;

/// Coefficients of the standard ODE form.
///
/// All arrays are in ascending powers of `z`: `a[k]` multiplies `z^k` in
/// `P4`, `b[k]` in `P3`, `v1[k]` in `V1` (so `P2 = E − V1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OdeStandardForm {
    pub a: [f64; 5],
    pub b: [f64; 4],
    pub v1: [f64; 3],
    pub n: usize,
}

/// Per-coefficient discrepancies between the root-implied and stored `P2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    /// `|c2 + v1[2]|`.
    pub d2: f64,
    /// `|c1 + v1[1]|`.
    pub d1: f64,
    /// `|c0 − (E − v1[0])|`.
    pub d0: f64,
    /// Tolerance the report was judged against.
    pub tol: f64,
}

impl ConsistencyReport {
    /// Largest discrepancy.
    pub fn max(&self) -> f64 {
        self.d2.max(self.d1).max(self.d0)
    }

    /// True when every discrepancy is within tolerance.
    pub fn pass(&self) -> bool {
        self.max() <= self.tol
    }
}

fn horner_jet(coeffs: &[f64], z: Complex64) -> [Complex64; 4] {
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for (order, slot) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in (order..coeffs.len()).rev() {
            let falling: f64 = ((k - order + 1)..=k).map(|m| m as f64).product();
            acc = acc * z + coeffs[k] * falling;
        }
        *slot = acc;
    }
    out
}

impl OdeStandardForm {
    /// Validated constructor: all coefficients finite, `P4` not identically zero.
    pub fn new(a: [f64; 5], b: [f64; 4], v1: [f64; 3], n: usize) -> Result<Self> {
        if a.iter()
            .chain(b.iter())
            .chain(v1.iter())
            .any(|x| !x.is_finite())
        {
            return Err(QesError::InvalidInput("non-finite ODE coefficient".into()));
        }
        if a.iter().all(|&x| x == 0.0) {
            return Err(QesError::InvalidInput("P4 is identically zero".into()));
        }
        Ok(Self { a, b, v1, n })
    }

    /// `[P4, P4', P4'', P4''']` at `z`.
    pub fn p4(&self, z: Complex64) -> [Complex64; 4] {
        horner_jet(&self.a, z)
    }

    /// `[P3, P3', P3'', P3''']` at `z`.
    pub fn p3(&self, z: Complex64) -> [Complex64; 4] {
        horner_jet(&self.b, z)
    }

    /// `[V1, V1', V1'', 0]` at `z`.
    pub fn v1_jet(&self, z: Complex64) -> [Complex64; 4] {
        horner_jet(&self.v1, z)
    }

    /// Size scale of the coefficients, used for relative tolerances.
    pub fn scale(&self) -> f64 {
        self.a
            .iter()
            .chain(self.b.iter())
            .chain(self.v1.iter())
            .fold(0.0f64, |m, x| m.max(x.abs()))
            .max(f64::MIN_POSITIVE)
    }

    /// Applies the operator `T1 = P4 d² + P3 d − V1` to a function given by its
    /// jet `[f, f', f'']` at `z`.
    pub fn apply_t1(&self, f: &[Complex64], z: Complex64) -> Complex64 {
        self.p4(z)[0] * f[2] + self.p3(z)[0] * f[1] - self.v1_jet(z)[0] * f[0]
    }
}

/// `(c2, c1, c0)` forced on `P2` by a polynomial solution with the given roots.
pub fn c_constraints(
    form: &OdeStandardForm,
    roots: &[Complex64],
) -> Result<(Complex64, Complex64, Complex64)> {
    if roots.len() != form.n {
        return Err(QesError::RootCountMismatch {
            expected: form.n,
            got: roots.len(),
        });
    }
    let n = form.n as f64;
    let [_, _, a2, a3, a4] = form.a;
    let [_, b1, b2, b3] = form.b;
    let e1: Complex64 = roots.iter().sum();
    let p2: Complex64 = roots.iter().map(|r| r * r).sum();
    let mut pairs = Complex64::new(0.0, 0.0);
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            pairs += roots[i] * roots[j];
        }
    }
    let c2 = Complex64::new(-n * (n - 1.0) * a4 - n * b3, 0.0);
    let c1 = -(2.0 * (n - 1.0) * a4 + b3) * e1 - n * (n - 1.0) * a3 - n * b2;
    let c0 = -(2.0 * (n - 1.0) * a4 + b3) * p2
        - 2.0 * a4 * pairs
        - (2.0 * (n - 1.0) * a3 + b2) * e1
        - n * (n - 1.0) * a2
        - n * b1;
    Ok((c2, c1, c0))
}

/// Relative residual of `P4 p'' + P3 p' + (E − V1) p` at `z`, normalised by
/// `max(1, |P4 p''| + |P3 p'| + |(E − V1) p|)`.
pub fn ode_residual(
    form: &OdeStandardForm,
    energy: Complex64,
    p: &MonicPoly,
    z: Complex64,
) -> Complex64 {
    let t4 = form.p4(z)[0] * p.eval(z, 2);
    let t3 = form.p3(z)[0] * p.eval(z, 1);
    let t2 = (energy - form.v1_jet(z)[0]) * p.eval(z, 0);
    let scale = (t4.norm() + t3.norm() + t2.norm()).max(1.0);
    (t4 + t3 + t2) / scale
}

/// Compares the root-implied `c2, c1, c0` with `−v1[2], −v1[1], E − v1[0]`.
///
/// Discrepancies are absolute, measured against `tol · max(1, |c|)`-style
/// scaling by dividing each by `max(1, |stored value|)`.
pub fn qes_consistency_check(
    form: &OdeStandardForm,
    roots: &[Complex64],
    energy: Complex64,
    tol: f64,
) -> Result<ConsistencyReport> {
    let (c2, c1, c0) = c_constraints(form, roots)?;
    let rel = |got: Complex64, want: Complex64| (got - want).norm() / want.norm().max(1.0);
    Ok(ConsistencyReport {
        d2: rel(c2, Complex64::new(-form.v1[2], 0.0)),
        d1: rel(c1, Complex64::new(-form.v1[1], 0.0)),
        d0: rel(c0, energy - form.v1[0]),
        tol,
    })
}
