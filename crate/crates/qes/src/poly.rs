//! Monic polynomials with complex coefficients, Wronskians and root sums.
//!
//! Every other module builds on these primitives: Bethe polynomials are
//! stored as [`MonicPoly`], and logarithmic derivatives of the seed state
//! enter the supercharges and partner potentials through
//! [`log_deriv_sums`].

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QesError, Result};

/// Imaginary parts below this magnitude are treated as round-off.
pub const REAL_TOL: f64 = 1e-9;

/// Relative distance below which an evaluation point is considered to sit on a root.
pub const POLE_TOL: f64 = 1e-12;

/// A monic polynomial `z^n + c_{n-1} z^{n-1} + ... + c_0`.
///
/// Coefficients are stored in ascending powers; the last entry is exactly 1.
/// Roots may be cached when the polynomial was built from them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonicPoly {
    coeffs: Vec<Complex64>,
    roots: Option<Vec<Complex64>>,
}

impl MonicPoly {
    /// The constant polynomial 1 (degree 0).
    pub fn one() -> Self {
        Self {
            coeffs: vec![Complex64::new(1.0, 0.0)],
            roots: Some(Vec::new()),
        }
    }

    /// Expands `∏(z − z_i)` and caches the roots verbatim.
    pub fn from_roots(roots: &[Complex64]) -> Result<Self> {
        if let Some((i, r)) = roots
            .iter()
            .enumerate()
            .find(|(_, r)| !(r.re.is_finite() && r.im.is_finite()))
        {
            return Err(QesError::InvalidInput(format!(
                "root #{i} is not finite: {r}"
            )));
        }
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            coeffs = next;
        }
        Ok(Self {
            coeffs,
            roots: Some(roots.to_vec()),
        })
    }

    /// Builds a monic polynomial from ascending coefficients by dividing through
    /// by the leading one.
    ///
    /// Fails when the leading coefficient is below `1e-12` relative to the
    /// coefficient norm (the vector really describes a lower-degree polynomial).
    pub fn from_coeffs(coeffs: &[Complex64]) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(QesError::InvalidInput("empty coefficient list".into()));
        }
        if coeffs
            .iter()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(QesError::InvalidInput("non-finite coefficient".into()));
        }
        let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let lead = *coeffs.last().unwrap();
        if norm == 0.0 || lead.norm() < 1e-12 * norm {
            return Err(QesError::DegreeDrop {
                energy: Complex64::new(f64::NAN, 0.0),
                leading: if norm == 0.0 { 0.0 } else { lead.norm() / norm },
            });
        }
        let mut c: Vec<Complex64> = coeffs.iter().map(|&c| c / lead).collect();
        *c.last_mut().unwrap() = Complex64::new(1.0, 0.0);
        Ok(Self {
            coeffs: c,
            roots: None,
        })
    }

    /// Polynomial degree.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Ascending coefficients (last entry is 1).
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Cached roots, if known.
    pub fn roots(&self) -> Option<&[Complex64]> {
        self.roots.as_deref()
    }

    /// Value of the `order`-th derivative at `z` (Horner scheme on the
    /// differentiated coefficients).
    pub fn eval(&self, z: Complex64, order: usize) -> Complex64 {
        let n = self.degree();
        if order > n {
            return Complex64::new(0.0, 0.0);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for k in (order..=n).rev() {
            let falling: f64 = ((k - order + 1)..=k).map(|m| m as f64).product();
            acc = acc * z + self.coeffs[k] * falling;
        }
        acc
    }

    /// Value and first three derivatives at `z`.
    pub fn jet(&self, z: Complex64) -> [Complex64; 4] {
        [
            self.eval(z, 0),
            self.eval(z, 1),
            self.eval(z, 2),
            self.eval(z, 3),
        ]
    }

    /// Roots by eigenvalues of the companion matrix, each polished by one
    /// Newton step.
    pub fn companion_roots(&self) -> Vec<Complex64> {
        let n = self.degree();
        if n == 0 {
            return Vec::new();
        }
        if n == 1 {
            return vec![-self.coeffs[0]];
        }
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        for i in 0..n {
            m[(i, n - 1)] = -self.coeffs[i];
        }
        let eig = Schur::try_new(m.clone(), f64::EPSILON, 10_000)
            .and_then(|s| s.eigenvalues())
            .or_else(|| m.eigenvalues())
            .expect("complex Schur decomposition of a companion matrix");
        eig.iter()
            .map(|&r| {
                let d = self.eval(r, 1);
                if d.norm() > 0.0 {
                    let step = self.eval(r, 0) / d;
                    if step.re.is_finite() && step.im.is_finite() {
                        return r - step;
                    }
                }
                r
            })
            .collect()
    }
}

/// `∏(z − z_i)` as a [`MonicPoly`]; an empty list gives the constant 1.
pub fn poly_from_roots(roots: &[Complex64]) -> Result<MonicPoly> {
    MonicPoly::from_roots(roots)
}

/// Value of `p`, `p'` or `p''` (or any higher derivative) at `z`.
pub fn eval_poly(p: &MonicPoly, z: Complex64, order: usize) -> Complex64 {
    p.eval(z, order)
}

/// Wronskian `p q' − p' q` at `z`.
pub fn wronskian2(p: &MonicPoly, q: &MonicPoly, z: Complex64) -> Complex64 {
    p.eval(z, 0) * q.eval(z, 1) - p.eval(z, 1) * q.eval(z, 0)
}

/// Root sums `s1 = Σ 1/(z−z_j)` and `s2 = Σ 1/(z−z_j)²`.
///
/// `s1 = (ln φ)'` and `s2 = −(ln φ)''` for `φ = ∏(z−z_j)`.
pub fn log_deriv_sums(roots: &[Complex64], z: Complex64) -> Result<(Complex64, Complex64)> {
    let [s1, s2, _] = root_power_sums(roots, z)?;
    Ok((s1, s2))
}

/// `[Σ 1/(z−z_j), Σ 1/(z−z_j)², Σ 1/(z−z_j)³]`, failing with a pole error
/// when `z` sits on a root.
pub fn root_power_sums(roots: &[Complex64], z: Complex64) -> Result<[Complex64; 3]> {
    let mut s = [Complex64::new(0.0, 0.0); 3];
    for (index, &r) in roots.iter().enumerate() {
        let d = z - r;
        if d.norm() <= POLE_TOL * r.norm().max(1.0) {
            return Err(QesError::Pole { index, root: r });
        }
        let inv = d.inv();
        s[0] += inv;
        s[1] += inv * inv;
        s[2] += inv * inv * inv;
    }
    Ok(s)
}

/// True when every value has imaginary part below [`REAL_TOL`].
pub fn all_real(values: &[Complex64]) -> bool {
    values.iter().all(|v| v.im.abs() < REAL_TOL)
}
