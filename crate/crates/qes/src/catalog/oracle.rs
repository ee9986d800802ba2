//! Case-specific closed forms for `n = 1`.
//!
//! These are hand-derived expressions for the two Bethe roots, the two
//! energies and the partner functions of each case. They are deliberately
//! written out term by term rather than computed from the general SUSY
//! formulas, so that they can serve as independent cross-checks of the
//! engine.
//!
//! Index 0 of [`ClosedForms::roots`] / [`ClosedForms::energies`] is the seed
//! state the partner closed forms are built from; at the representative
//! parameters it is the lowest-energy state.

use super::{lame_sigma, CaseId, CaseInstance, Coeffs};

/// Closed-form `n = 1` data of one case instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForms {
    pub case: CaseId,
    /// `[seed root, other root]`.
    pub roots: [f64; 2],
    /// Energies paired with [`ClosedForms::roots`].
    pub energies: [f64; 2],
    k: Coeffs,
    scale: f64,
}

/// Closed forms of the instance, or `None` when `n ≠ 1` or the case has no
/// closed forms at these parameters (PT-V with `p = 0`).
pub fn closed_form_oracle(case: &CaseInstance) -> Option<ClosedForms> {
    use CaseId::*;
    if case.n != 1 {
        return None;
    }
    let k = case.k;
    let Coeffs {
        a,
        b,
        c,
        d,
        al,
        p,
        l,
        ..
    } = k;
    let (roots, energies) = match case.case {
        MorseI => {
            let s = (16.0 * a * c + (2.0 * b + al).powi(2)).sqrt();
            let base = -b * b + 2.0 * a * c - al * b;
            (
                [
                    (2.0 * b + al - s) / (4.0 * a),
                    (2.0 * b + al + s) / (4.0 * a),
                ],
                [base - al * (al + s) / 2.0, base - al * (al - s) / 2.0],
            )
        }
        MorseII => {
            let s = (a * a + 4.0 * b * d + 2.0 * d * al).sqrt();
            ([-(a + s) / (2.0 * d), -(a - s) / (2.0 * d)], [a - s, a + s])
        }
        MorseIII => {
            let s = (a * a + 4.0 * b * d - 2.0 * d * al).sqrt();
            (
                [(a - s) / (2.0 * b - al), (a + s) / (2.0 * b - al)],
                [-a - s, -a + s],
            )
        }
        PoschlTellerIV => {
            let s = ((a + c).powi(2) + 2.0 * (a + 2.0 * c * (1.0 + p)) * al + al * al).sqrt();
            let den = 2.0 * a + (3.0 + 2.0 * p) * al;
            let base = a - c * (1.0 + p) + al;
            (
                [(a - c + al - s) / den, (a - c + al + s) / den],
                [-2.0 * (base + s), -2.0 * (base - s)],
            )
        }
        PoschlTellerV => {
            if p != 1.0 {
                return None;
            }
            let s = pt5_s(&k);
            let t = 2.0 * (a + b) + 3.0 * al;
            (
                [-(t + s) / (4.0 * b), -(t - s) / (4.0 * b)],
                [-2.0 * al - s, -2.0 * al + s],
            )
        }
        SexticVI => {
            let s = (2.0 * a + b * b).sqrt();
            (
                [1.0 / (b - s), 1.0 / (b + s)],
                [3.0 * b - 2.0 * s, 3.0 * b + 2.0 * s],
            )
        }
        SexticVII => {
            let s = (b * b + 2.0 * a * (2.0 * l - 2.0 * c + d)).sqrt();
            let base = b * (2.0 - 2.0 * c + 2.0 * l + d);
            (
                [-(b + s) / (2.0 * a), -(b - s) / (2.0 * a)],
                [base - 2.0 * s, base + 2.0 * s],
            )
        }
        CoulombVIII => {
            let s = (b * b + 2.0 * a * (2.0 * l - 2.0 * c + d - 1.0)).sqrt();
            ([-(b + s) / (2.0 * a), -(b - s) / (2.0 * a)], [b - s, b + s])
        }
        CoulombIX => {
            let dp = 2.0 * l - 2.0 * c + d - 1.0;
            let s = (16.0 * a * b + dp * dp).sqrt();
            let base = 1.0 + 8.0 * a * b + 2.0 * c - d - 2.0 * l;
            (
                [(dp - s) / (4.0 * a), (dp + s) / (4.0 * a)],
                [(base - s) / 2.0, (base + s) / 2.0],
            )
        }
        PeriodicX => {
            let s = (1.0 + 16.0 * a * a).sqrt();
            (
                [-(1.0 + s) / (4.0 * a), -(1.0 - s) / (4.0 * a)],
                [(1.0 - s) * al * al / 2.0, (1.0 + s) * al * al / 2.0],
            )
        }
        LameXI => {
            let (a1, a2, a3, k1, k2, k3) = (k.a1, k.a2, k.a3, k.k1, k.k2, k.k3);
            let sg = lame_sigma(&k);
            let kk = 2.0 * (k1 + k2 + k3) + 3.0;
            let big_k = lame_k(&k);
            let base = a1 * (k2 * (2.0 * k3 + 3.0) + 3.0 * k3 + 2.0)
                + 2.0 * (a2 + a3)
                + (2.0 * k1 + 3.0) * (a2 * k3 + a3 * k2)
                + 3.0 * k1 * (a2 + a3);
            (
                [(big_k + sg) / kk, (sg - big_k) / kk],
                [base - 2.0 * big_k, base + 2.0 * big_k],
            )
        }
        LameXII => {
            let r = k.g2.sqrt() / (2.0 * 3f64.sqrt());
            let e = (3.0 * k.g2).sqrt() * (2.0 * k.mu + 1.0) / 2.0;
            ([r, -r], [-e, e])
        }
    };
    Some(ClosedForms {
        case: case.case,
        roots,
        energies,
        k,
        scale: 1.0,
    })
}

fn pt5_s(k: &Coeffs) -> f64 {
    let (a, b, al) = (k.a, k.b, k.al);
    (4.0 * (a + 3.0 * b).powi(2) + 4.0 * al * (3.0 * a + 7.0 * b) + 9.0 * al * al).sqrt()
}

fn lame_k(k: &Coeffs) -> f64 {
    let (a1, a2, a3, k1, k2, k3) = (k.a1, k.a2, k.a3, k.k1, k.k2, k.k3);
    let sg = lame_sigma(k);
    let kk = 2.0 * (k1 + k2 + k3) + 3.0;
    (sg * sg - kk * (a1 * (2.0 * a2 * k3 + a2 + 2.0 * a3 * k2 + a3) + a2 * a3 * (2.0 * k1 + 1.0)))
        .sqrt()
}

impl ClosedForms {
    /// Partner polynomial solution `φ^(2)(z)` (real branch of `√P4`).
    pub fn phi2(&self, z: f64) -> f64 {
        self.scale * self.phi2_raw(z)
    }

    fn phi2_raw(&self, z: f64) -> f64 {
        use CaseId::*;
        let Coeffs {
            a,
            b,
            c,
            d,
            al,
            p,
            l,
            ..
        } = self.k;
        match self.case {
            MorseI => {
                let s = (16.0 * a * c + (2.0 * b + al).powi(2)).sqrt();
                2.0 * al * z * s / (4.0 * a * z - 2.0 * b - al + s)
            }
            MorseII => {
                let s = (a * a + 4.0 * b * d + 2.0 * d * al).sqrt();
                2.0 * (al * z * s * s).sqrt() / (2.0 * d * z + a + s)
            }
            MorseIII => {
                let s = (a * a + 4.0 * b * d - 2.0 * d * al).sqrt();
                2.0 * z.powf(1.5) * (al * s * s).sqrt() / ((2.0 * b - al) * z - a + s)
            }
            PoschlTellerIV => {
                let s = ((a + c).powi(2) + 2.0 * (a + 2.0 * c * (1.0 + p)) * al + al * al).sqrt();
                let den = 2.0 * a + (3.0 + 2.0 * p) * al;
                4.0 * ((1.0 - z) * z * z * al * s * s).sqrt() / (den * z - a + c - al + s)
            }
            PoschlTellerV => {
                let s = pt5_s(&self.k);
                4.0 * (al * (z - z * z) * s * s).sqrt()
                    / (4.0 * b * z + 2.0 * (a + b) + 3.0 * al + s)
            }
            SexticVI => {
                let s = (2.0 * a + b * b).sqrt();
                2.0 * (z * s * s).sqrt() * (b - s) / (a * ((b - s) * z - 1.0))
            }
            SexticVII => {
                let s = (b * b + 2.0 * a * (2.0 * l - 2.0 * c + d)).sqrt();
                4.0 * (z * s * s).sqrt() / (2.0 * a * z + b + s)
            }
            CoulombVIII => {
                let s = (b * b + 2.0 * a * (2.0 * l - 2.0 * c + d - 1.0)).sqrt();
                2.0 * (z * s * s).sqrt() / (2.0 * a * z + b + s)
            }
            CoulombIX => {
                let dp = 2.0 * l - 2.0 * c + d - 1.0;
                let s = (16.0 * a * b + dp * dp).sqrt();
                2.0 * z * s / (4.0 * a * z - 2.0 * (l - c) - d + 1.0 + s)
            }
            PeriodicX => {
                let s = (1.0 + 16.0 * a * a).sqrt();
                2.0 * al * ((1.0 - z * z) * s * s).sqrt() / (4.0 * a * z + 1.0 + s)
            }
            LameXI => {
                let k = &self.k;
                let big_k = lame_k(k);
                let kk = 2.0 * (k.k1 + k.k2 + k.k3) + 3.0;
                let prod = (z - k.a1) * (z - k.a2) * (z - k.a3);
                4.0 * big_k * prod.sqrt() / (lame_sigma(k) + big_k - kk * z)
            }
            LameXII => {
                let (g2, g3) = (self.k.g2, self.k.g3);
                (6.0 * g2).sqrt() * (4.0 * z.powi(3) - g2 * z - g3).sqrt()
                    / ((3.0 * g2).sqrt() - 6.0 * z)
            }
        }
    }

    /// Partner ODE potential `V₂(z)`.
    pub fn v2_z(&self, z: f64) -> f64 {
        self.scale * self.v2_z_raw(z)
    }

    fn v2_z_raw(&self, z: f64) -> f64 {
        use CaseId::*;
        let Coeffs {
            a,
            b,
            c,
            d,
            al,
            p,
            l,
            ..
        } = self.k;
        let p1 = self.roots[0];
        match self.case {
            MorseI => {
                let s = (16.0 * a * c + (2.0 * b + al).powi(2)).sqrt();
                let q = 2.0 * b - 4.0 * a * z + al - s;
                -b * b
                    + 2.0 * a * c
                    + 2.0 * al * c / z
                    + 32.0 * a * a * al * al * z * z / (q * q)
                    + 8.0 * a * al * al * z / q
            }
            MorseII => {
                let s = (a * a + 4.0 * b * d + 2.0 * d * al).sqrt();
                let q = a + 2.0 * d * z + s;
                a + b / z + d * z + al / (4.0 * z) + 8.0 * d * d * al * z / (q * q)
                    - 2.0 * d * al / q
            }
            MorseIII => {
                let s = (a * a + 4.0 * b * d - 2.0 * d * al).sqrt();
                a + 3.0 * d / z - b * z + 5.0 * al * z / 4.0
                    - 3.0 * al * (al - 2.0 * b) * z * z / (a - 2.0 * b * z + al * z - s)
                    + 2.0 * al * z.powi(3) / (z - p1).powi(2)
            }
            PoschlTellerIV => {
                let s = ((a + c).powi(2) + 2.0 * (a + 2.0 * c * (1.0 + p)) * al + al * al).sqrt();
                let den = 2.0 * a + (3.0 + 2.0 * p) * al;
                let pole_term = if p != 0.0 {
                    al * p / (z - 1.0).powi(2)
                } else {
                    0.0
                };
                let lin_term = if p != 0.0 {
                    al * p * z / (z - 1.0)
                } else {
                    0.0
                };
                2.0 * c * p
                    - 4.0 * a * z
                    - 2.0 * (3.0 + 2.0 * p) * z * al
                    - 4.0 * (2.0 * c / z.powi(3) + a / (z * z) + pole_term) * (z - 1.0) * z * z
                    + 2.0 * (3.0 * z - 2.0) * (c / z + a + lin_term)
                    + 4.0 * al * z * (3.0 * z - 2.0) * den
                        / (c - a + 2.0 * a * z - al + 3.0 * al * z + 2.0 * p * al * z + s)
                    - 8.0 * al * z * z * (z - 1.0) / (z - p1).powi(2)
            }
            PoschlTellerV => {
                let s = pt5_s(&self.k);
                let w = 2.0 * a + 4.0 * b + al;
                -2.0 * a - 4.0 * b - 5.0 * al + 2.0 * w - w / z - 2.0 * (z - 1.0) * w / z
                    + 16.0 * b * al * (2.0 * z - 1.0) / (2.0 * (a + b) + 3.0 * al + 4.0 * b * z + s)
                    - 8.0 * al * z * (z - 1.0) / (z - p1).powi(2)
            }
            SexticVI => 3.0 * b + 2.0 * a * z + 4.0 * (z + p1) / (z - p1).powi(2),
            SexticVII => {
                let s = (b * b + 2.0 * a * (2.0 * l - 2.0 * c + d)).sqrt();
                let q = 2.0 * a * z + b + s;
                b * (2.0 - 2.0 * c + 2.0 * l + d) + (2.0 * l + d - 2.0 * c - 1.0) / z - 8.0 * a / q
                    + 2.0 * a * z * (1.0 + 16.0 * a / (q * q))
            }
            CoulombVIII => {
                let s = (b * b + 2.0 * a * (2.0 * l - 2.0 * c + d - 1.0)).sqrt();
                let q = 2.0 * a * z + b + s;
                a * z * (1.0 + 8.0 * a / (q * q)) - 2.0 * a / q
                    + (4.0 * (l - c) + 2.0 * d - 3.0) / (4.0 * z)
                    + b
            }
            CoulombIX => {
                let dp = 2.0 * l - 2.0 * c + d - 1.0;
                let s = (16.0 * a * b + dp * dp).sqrt();
                let q = 4.0 * a * z + 1.0 + 2.0 * c - d - 2.0 * l + s;
                4.0 * a * b + 2.0 * b / z + 32.0 * a * a * z * z / (q * q) - 8.0 * a * z / q
            }
            PeriodicX => {
                let s = (1.0 + 16.0 * a * a).sqrt();
                8.0 * a * al * al * (z + s * z + 4.0 * a) / (1.0 + s + 4.0 * a * z).powi(2)
            }
            LameXI => {
                let k = &self.k;
                let (a1, a2, a3, k1, k2, k3) = (k.a1, k.a2, k.a3, k.k1, k.k2, k.k3);
                let sg = lame_sigma(k);
                let kk = 2.0 * (k1 + k2 + k3) + 3.0;
                let big_k = lame_k(k);
                let prod = (z - a1) * (z - a2) * (z - a3);
                8.0 * prod * kk * kk / (sg + big_k - kk * z).powi(2)
                    + 4.0
                        * prod
                        * (k1 / (a1 - z).powi(2) + k2 / (a2 - z).powi(2) + k3 / (a3 - z).powi(2))
                    + 2.0
                        * (a1 * a2 + a1 * a3 + a2 * a3 - 2.0 * z * (a1 + a2 + a3) + 3.0 * z * z)
                        * (k1 / (a1 - z) + k2 / (a2 - z) + k3 / (a3 - z))
                    + 2.0 * a1 * k2 * k3
                    + a1 * (k2 + k3)
                    + a2 * (2.0 * k1 * k3 + k1 + k3)
                    + a3 * (2.0 * k1 * k2 + k1 + k2)
                    + 2.0 * z * kk
                    - 4.0
                        * (a1 * (a2 + a3 - 2.0 * z)
                            + a2 * (a3 - 2.0 * z)
                            + z * (3.0 * z - 2.0 * a3))
                        / (z - (sg + big_k) / kk)
            }
            LameXII => {
                let (g2, g3, mu) = (self.k.g2, self.k.g3, self.k.mu);
                let s3 = (3.0 * g2).sqrt();
                let cubic = g2 * z + g3 - 4.0 * z.powi(3);
                -0.75 / ((s3 - 6.0 * z).powi(2) * cubic)
                    * (4.0
                        * cubic
                        * (3f64.sqrt() * g2.powf(1.5) + 3.0 * g2 * z + 12.0 * (g3 - z.powi(3)))
                        + mu * (12.0 * z * z - 4.0 * s3 * z + g2)
                            * (g2 * g2 + 24.0 * z * (g3 + 2.0 * z.powi(3))))
            }
        }
    }

    /// One-dimensional partner potential `V^(2)(x)`; absent for the Lamé cases.
    pub fn v2_x(&self, x: f64) -> Option<f64> {
        self.v2_x_raw(x).map(|v| self.scale * v)
    }

    fn v2_x_raw(&self, x: f64) -> Option<f64> {
        use CaseId::*;
        let Coeffs {
            a,
            b,
            c,
            d,
            al,
            p,
            l,
            ..
        } = self.k;
        let v = match self.case {
            MorseI => {
                let s = (16.0 * a * c + (2.0 * b + al).powi(2)).sqrt();
                let e = (-al * x).exp();
                let q = 2.0 * b - 4.0 * a * e + al - s;
                a * a * e * e - a * (2.0 * b + al) * e
                    + c * (2.0 * b + al) / e
                    + c * c / (e * e)
                    + 32.0 * al * al * a * a * e * e / (q * q)
                    + 8.0 * al * al * a * e / q
            }
            MorseII => {
                let s = (a * a + 4.0 * b * d + 2.0 * d * al).sqrt();
                let e = (-al * x).exp();
                let q = 2.0 * d * e + a + s;
                d * d * e.powi(4) + 2.0 * a * d * e.powi(3) + (a * a - 2.0 * b * d - d * al) * e * e
                    - 2.0 * a * b * e
                    + (2.0 * b + al).powi(2) / 4.0
                    + 8.0 * d * d * al * al * e * e / (q * q)
                    - 2.0 * d * al * al * e / q
            }
            MorseIII => {
                let s = (a * a + 4.0 * b * d - 2.0 * d * al).sqrt();
                let e = (al * x).exp();
                let q = al - 2.0 * b + (a - s) * e;
                d * d * e.powi(4) + 2.0 * a * d * e.powi(3) + (a * a - 2.0 * b * d + d * al) * e * e
                    - 2.0 * a * b * e
                    + (4.0 * b * b - 4.0 * b * al + 5.0 * al * al) / 4.0
                    - (3.0 * al.powi(3) * e * (a - s)
                        + al * al * (al * al + 2.0 * b * al - 8.0 * b * b))
                        / (q * q)
                    + 6.0 * al * al * b / q
            }
            PoschlTellerIV => {
                let s = ((a + c).powi(2) + 2.0 * (a + 2.0 * c * (1.0 + p)) * al + al * al).sqrt();
                let den = 2.0 * a + (3.0 + 2.0 * p) * al;
                let sech2 = (al * x).cosh().powi(-2);
                let q = c - a - al + s + den * sech2;
                let sinh_term = if p != 0.0 {
                    p * (1.0 + p) * al * al / (al * x).sinh().powi(2)
                } else {
                    0.0
                };
                c * (a + al) * (2.0 * al * x).cosh()
                    + c * c * (4.0 * al * x).cosh() / 8.0
                    + sinh_term
                    - (a * a + al * a * (3.0 + 2.0 * p) + (6.0 + p * (p + 3.0)) * al * al) * sech2
                    + a * a
                    - a * c
                    - c * c / 8.0
                    + 8.0 * al * al * den * den * sech2 * sech2 * (al * x).tanh().powi(2) / (q * q)
                    - 4.0 * al * al * den * ((2.0 * al * x).cosh() - 2.0) * sech2 * sech2 / q
            }
            PoschlTellerV => {
                let s = pt5_s(&self.k);
                let sech2 = (al * x).cosh().powi(-2);
                let q = 4.0 * b * sech2 + 2.0 * a + 2.0 * b + 3.0 * al + s;
                -b * b * sech2.powi(3)
                    - b * (2.0 * a + 3.0 * b + 3.0 * al) * sech2 * sech2
                    - (a * a + 2.0 * a * b + 3.0 * a * al + 4.0 * b * al + 5.0 * al * al) * sech2
                    + (a + 2.0 * b + al).powi(2)
                    + 128.0 * b * b * al * al * sech2 * sech2 * (al * x).tanh().powi(2) / (q * q)
                    - 8.0 * b * al * al * ((2.0 * al * x).cosh() - 3.0) * sech2 * sech2 / q
            }
            SexticVI => {
                let s = (2.0 * a + b * b).sqrt();
                let x2 = x * x;
                a * a * x2.powi(3)
                    + 2.0 * a * b * x2 * x2
                    + (b * b - a) * x2
                    + 2.0 * b
                    + (8.0 * (a + b * (b - s)) * x2 - 4.0 * s + 4.0 * b)
                        / (1.0 + (s - b) * x2).powi(2)
            }
            SexticVII => {
                let s = (b * b + 2.0 * a * (2.0 * l - 2.0 * c + d)).sqrt();
                let x2 = x * x;
                let q = 2.0 * a * x2 + b + s;
                a * a * x2.powi(3)
                    + 2.0 * a * b * x2 * x2
                    + (b * b + a * (2.0 * c - d - 2.0 * l)) * x2
                    + 2.0 * b
                    + 32.0 * a * a * x2 / (q * q)
                    + ((2.0 * l - 2.0 * c + d).powi(2) - 1.0) / (4.0 * x2)
                    - 8.0 * a / q
            }
            CoulombVIII => {
                let s = (b * b + 2.0 * a * (2.0 * l - 2.0 * c + d - 1.0)).sqrt();
                let q = 2.0 * a * x + b + s;
                a * a * x * x
                    + 2.0 * a * b * x
                    + a * (1.0 + 2.0 * c - d - 2.0 * l)
                    + b * b
                    + 8.0 * a * a / (q * q)
                    - 2.0 * a / (x * q)
                    + (2.0 + 2.0 * c - d - 2.0 * l) * (2.0 * c - d - 2.0 * l + 4.0 * b * x)
                        / (4.0 * x * x)
            }
            CoulombIX => {
                let dp = 2.0 * l - 2.0 * c + d - 1.0;
                let s = (16.0 * a * b + dp * dp).sqrt();
                let q = 1.0 + 2.0 * c - 2.0 * l - d + 4.0 * a * x + s;
                let e = 1.0 + 2.0 * c - d - 2.0 * l;
                b * b / x.powi(4)
                    + a * a
                    + a * (2.0 * c - 2.0 * l - d + 1.0) / x
                    + (8.0 * a * b + e * (e + 2.0)) / (4.0 * x * x)
                    + b * dp / x.powi(3)
                    + 32.0 * a * a / (q * q)
                    - 8.0 * a / (x * q)
            }
            PeriodicX => {
                let s = (1.0 + 16.0 * a * a).sqrt();
                let cc = (al * x).cos();
                2.0 * a
                    * al
                    * al
                    * (-8.0 * a.powi(3) * cc.powi(4)
                        - 4.0 * a * a * (3.0 + s) * cc.powi(3)
                        - 5.0 * a * (1.0 + s) * cc * cc
                        + ((4.0 * a * a + 3.0) * s - 4.0 * a * a + 3.0) * cc
                        + a * (8.0 * a * a + 17.0 + s))
                    / (4.0 * a * cc + 1.0 + s).powi(2)
            }
            LameXI | LameXII => return None,
        };
        Some(v)
    }

    /// One-dimensional partner wavefunction `ψ^(2)(x)`; absent for the Lamé cases.
    pub fn psi2_x(&self, x: f64) -> Option<f64> {
        self.psi2_x_raw(x).map(|v| self.scale * v)
    }

    fn psi2_x_raw(&self, x: f64) -> Option<f64> {
        use CaseId::*;
        let Coeffs {
            a,
            b,
            c,
            d,
            al,
            p,
            l,
            ..
        } = self.k;
        let v = match self.case {
            MorseI => {
                let s = (16.0 * a * c + (2.0 * b + al).powi(2)).sqrt();
                let e = (-al * x).exp();
                let g = a / al * e + b * x + c / al / e;
                al * e * s / (2.0 * (a * e - (al + 2.0 * b - s) / 4.0)) * (-g).exp()
            }
            MorseII => {
                let s = (a * a + 4.0 * b * d + 2.0 * d * al).sqrt();
                let e = (-al * x).exp();
                let g = d / (2.0 * al) * e * e + a / al * e + b * x;
                2.0 * (al * e * s * s).sqrt() / (a + 2.0 * d * e + s) * (-g).exp()
            }
            MorseIII => {
                let s = (a * a + 4.0 * b * d - 2.0 * d * al).sqrt();
                let e = (al * x).exp();
                let g = a / al * e + d / (2.0 * al) * e * e - b * x;
                2.0 * (-al * x / 2.0).exp() * (al * s * s).sqrt() / (2.0 * b - al + e * (s - a))
                    * (-g).exp()
            }
            PoschlTellerIV => {
                let s = ((a + c).powi(2) + 2.0 * (a + 2.0 * c * (1.0 + p)) * al + al * al).sqrt();
                let den = 2.0 * a + (3.0 + 2.0 * p) * al;
                let ch2 = (al * x).cosh().powi(2);
                let g = c / (2.0 * al) * ch2 + a / (2.0 * al) * ch2.ln();
                4.0 * (al * s * s).sqrt() * (al * x).tanh().powi(1 + p as i32)
                    / (den + (c - a - al + s) * ch2)
                    * (-g).exp()
            }
            PoschlTellerV => {
                let s = pt5_s(&self.k);
                let ch = (al * x).cosh();
                4.0 * ch.powf(-(1.0 + (a + 2.0 * b) / al)) * (al * x).tanh() * (al * s * s).sqrt()
                    / (2.0 * (a + b) + 3.0 * al + 4.0 * b / (ch * ch) + s)
                    * (b / (al * ((2.0 * al * x).cosh() + 1.0))).exp()
            }
            SexticVI => {
                let s = (2.0 * a + b * b).sqrt();
                4.0 * x * s / (2.0 * a * x * x + b + s)
                    * (-x * x * (a * x * x + 2.0 * b) / 4.0).exp()
            }
            SexticVII => {
                let s = (b * b + 2.0 * a * (2.0 * l - 2.0 * c + d)).sqrt();
                4.0 * s / (2.0 * a * x * x + b + s)
                    * (-x * x * (a * x * x + 2.0 * b) / 4.0).exp()
                    * x.powf((2.0 * (l - c) + d + 1.0) / 2.0)
            }
            CoulombVIII => {
                let s = (b * b + 2.0 * a * (2.0 * l - 2.0 * c + d - 1.0)).sqrt();
                let g = a / 2.0 * x * x + b * x + (2.0 * (c - l) - d + 1.0) / 2.0 * x.ln();
                2.0 * (x * s * s).sqrt() / (b + 2.0 * a * x + s) * (-g).exp()
            }
            CoulombIX => {
                let dp = 2.0 * l - 2.0 * c + d - 1.0;
                let s = (16.0 * a * b + dp * dp).sqrt();
                2.0 * x * s / (4.0 * a * x + 2.0 * c - 2.0 * l - d + 1.0 + s)
                    * (-a * x - b / x + (2.0 * (l - c) + d - 1.0) / 2.0 * x.ln()).exp()
            }
            PeriodicX => {
                let s = (1.0 + 16.0 * a * a).sqrt();
                2.0 * al * s * (al * x).sin() / (4.0 * a * (al * x).cos() + 1.0 + s)
                    * (a * (al * x).cos()).exp()
            }
            LameXI | LameXII => return None,
        };
        Some(v)
    }

    /// Radial partner potential `V_S^(2)(r)`; present for the radial cases only.
    pub fn vs2(&self, r: f64) -> Option<f64> {
        self.vs2_raw(r).map(|v| self.scale * v)
    }

    fn vs2_raw(&self, r: f64) -> Option<f64> {
        use CaseId::*;
        let Coeffs { a, b, c, d, l, .. } = self.k;
        let v = match self.case {
            SexticVII => {
                let s = (b * b + 2.0 * a * (2.0 * l - 2.0 * c + d)).sqrt();
                let r2 = r * r;
                let q = 2.0 * a * r2 + b + s;
                a * a * r2.powi(3)
                    + 2.0 * a * b * r2 * r2
                    + (b * b + a * (2.0 * c - d - 2.0 * l)) * r2
                    + 2.0 * b
                    + 32.0 * a * a * r2 / (q * q)
                    - 8.0 * a / q
                    + ((c - d + 1.0) * (c - 2.0 * l - 1.0) + 2.0 * l * l) / r2
            }
            CoulombVIII => {
                let s = (b * b + 2.0 * a * (2.0 * l - 2.0 * c + d - 1.0)).sqrt();
                let q = s + 2.0 * a * r + b;
                a * a * r * r
                    + a * (2.0 * b * r + 2.0 * c - d - 2.0 * l + 1.0)
                    + b * b
                    + 8.0 * a * a / (q * q)
                    - 2.0 * a / (r * q)
                    + (c * c - c * (d + 2.0 * l - 2.0 * b * r - 1.0) - b * r * (d + 2.0 * l - 2.0))
                        / (r * r)
                    + (4.0 * l * (2.0 * l - 3.0) + d * (8.0 * l + 2.0) - 3.0) / (4.0 * r * r)
            }
            CoulombIX => {
                let dp = 2.0 * l - 2.0 * c + d - 1.0;
                let s = (16.0 * a * b + dp * dp).sqrt();
                let q = 1.0 + 2.0 * c - 2.0 * l - d + 4.0 * a * r + s;
                b * b / r.powi(4)
                    + a * a
                    + a * (2.0 * c - 2.0 * l - d + 1.0) / r
                    + (2.0 * a * b + c * (c - d - 2.0 * l + 2.0) + 2.0 * l * (d + l - 2.0))
                        / (r * r)
                    + b * dp / r.powi(3)
                    + 32.0 * a * a / (q * q)
                    - 8.0 * a / (r * q)
            }
            _ => return None,
        };
        Some(v)
    }

    /// Radial partner wavefunction `ψ_S^(2)(r)`; present for the radial cases only.
    pub fn psi_s2(&self, r: f64) -> Option<f64> {
        self.psi_s2_raw(r).map(|v| self.scale * v)
    }

    fn psi_s2_raw(&self, r: f64) -> Option<f64> {
        use CaseId::*;
        let Coeffs { a, b, c, d, l, .. } = self.k;
        let v = match self.case {
            SexticVII => {
                let s = (b * b + 2.0 * a * (2.0 * l - 2.0 * c + d)).sqrt();
                4.0 * r * s / (2.0 * a * r * r + b + s)
                    * (-(2.0 * b + a * r * r) * r * r / 4.0).exp()
                    * r.powf(l - c)
            }
            CoulombVIII => {
                let s = (b * b + 2.0 * a * (2.0 * l - 2.0 * c + d - 1.0)).sqrt();
                2.0 * (r * s * s).sqrt() / (b + 2.0 * a * r + s)
                    * (-(a / 2.0 * r * r + b * r + (c - l) * r.ln())).exp()
            }
            CoulombIX => {
                let dp = 2.0 * l - 2.0 * c + d - 1.0;
                let s = (16.0 * a * b + dp * dp).sqrt();
                2.0 * r * s / (4.0 * a * r + 2.0 * c - 2.0 * l - d + 1.0 + s)
                    * (-a * r - b / r + (l - c) * r.ln()).exp()
            }
            _ => return None,
        };
        Some(v)
    }

    /// Returns a copy whose every closed form is multiplied by `1 + eps`
    /// (roots and energies included); used to exercise the cross-check
    /// harness itself.
    pub fn perturbed(&self, eps: f64) -> ClosedForms {
        let f = 1.0 + eps;
        ClosedForms {
            roots: self.roots.map(|r| r * f),
            energies: self.energies.map(|e| e * f),
            scale: self.scale * f,
            ..self.clone()
        }
    }
}
