//! The twelve QES cases as parameterised factories.
//!
//! Each [`CaseInstance`] bundles the gauged ODE ([`OdeStandardForm`]) with
//! the physical-axis data needed to return to the Schrödinger picture:
//! the change of variable `z(x)`, the weight `ρ(x)`, the gauge exponent
//! `g(x)` (so that `ψ = φ(z(x))·e^{−g(x)}`), the physical potential and,
//! for radial cases, the dimension `d` and angular momentum `l`.
//!
//! The mapping chain obeys `P4(z) = ρ z'²` and `P3(z) = ρ (z'' − 2 z' g')`,
//! and the physical potential is recovered as `V = V1(z)/ρ + g'² − g''`.
//! Lamé cases (XI, XII) are available in their algebraic variable only.

pub mod jet;
mod oracle;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{QesError, Result};
use crate::odeform::OdeStandardForm;
pub use jet::Jet;
pub use oracle::{closed_form_oracle, ClosedForms};

/// Identifier of a catalog case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseId {
    MorseI,
    MorseII,
    MorseIII,
    PoschlTellerIV,
    PoschlTellerV,
    SexticVI,
    SexticVII,
    CoulombVIII,
    CoulombIX,
    PeriodicX,
    LameXI,
    LameXII,
}

impl CaseId {
    /// Every case, in catalog order.
    pub const ALL: [CaseId; 12] = [
        CaseId::MorseI,
        CaseId::MorseII,
        CaseId::MorseIII,
        CaseId::PoschlTellerIV,
        CaseId::PoschlTellerV,
        CaseId::SexticVI,
        CaseId::SexticVII,
        CaseId::CoulombVIII,
        CaseId::CoulombIX,
        CaseId::PeriodicX,
        CaseId::LameXI,
        CaseId::LameXII,
    ];

    /// Registry string id (`morse1`, …, `lame12`).
    pub fn id(self) -> &'static str {
        match self {
            CaseId::MorseI => "morse1",
            CaseId::MorseII => "morse2",
            CaseId::MorseIII => "morse3",
            CaseId::PoschlTellerIV => "pt4",
            CaseId::PoschlTellerV => "pt5",
            CaseId::SexticVI => "sextic6",
            CaseId::SexticVII => "sextic7",
            CaseId::CoulombVIII => "coulomb8",
            CaseId::CoulombIX => "coulomb9",
            CaseId::PeriodicX => "periodic10",
            CaseId::LameXI => "lame11",
            CaseId::LameXII => "lame12",
        }
    }

    /// Looks a case up by registry id.
    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|c| c.id() == id)
    }

    /// Human-readable name.
    pub fn title(self) -> &'static str {
        match self {
            CaseId::MorseI => "Morse I",
            CaseId::MorseII => "Morse II",
            CaseId::MorseIII => "Morse III",
            CaseId::PoschlTellerIV => "Poschl-Teller IV",
            CaseId::PoschlTellerV => "Poschl-Teller V",
            CaseId::SexticVI => "Sextic VI",
            CaseId::SexticVII => "Sextic VII (radial)",
            CaseId::CoulombVIII => "Coulomb VIII (radial)",
            CaseId::CoulombIX => "Coulomb IX (radial)",
            CaseId::PeriodicX => "Periodic X",
            CaseId::LameXI => "A1 Lame XI",
            CaseId::LameXII => "BC1 Lame XII",
        }
    }

    /// Declared parameter names (all required, accepted by name only).
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            CaseId::MorseI => &["a", "b", "c", "alpha"],
            CaseId::MorseII | CaseId::MorseIII => &["a", "b", "d", "alpha"],
            CaseId::PoschlTellerIV => &["a", "c", "alpha", "p"],
            CaseId::PoschlTellerV => &["a", "b", "alpha", "p"],
            CaseId::SexticVI => &["a", "b"],
            CaseId::SexticVII | CaseId::CoulombVIII | CaseId::CoulombIX => {
                &["a", "b", "c", "l", "d"]
            }
            CaseId::PeriodicX => &["a", "alpha"],
            CaseId::LameXI => &["a1", "a2", "a3", "k1", "k2", "k3"],
            CaseId::LameXII => &["g2", "g3", "mu"],
        }
    }

    /// Representative parameters (the values used for the published plots;
    /// for the Lamé cases, the representative values used in the test suite).
    pub fn figure_params(self) -> &'static [(&'static str, f64)] {
        match self {
            CaseId::MorseI => &[("a", 1.0), ("b", 1.0), ("c", 1.0), ("alpha", 1.0)],
            CaseId::MorseII => &[("a", -6.0), ("b", 1.0), ("d", 2.0), ("alpha", 1.0)],
            CaseId::MorseIII => &[("a", -1.0), ("b", 1.0), ("d", 0.5), ("alpha", 0.5)],
            CaseId::PoschlTellerIV => &[("a", 1.0), ("c", 1.0), ("alpha", 1.0), ("p", 0.0)],
            CaseId::PoschlTellerV => &[("a", 1.0), ("b", 1.0), ("alpha", 1.0), ("p", 1.0)],
            CaseId::SexticVI => &[("a", 1.0), ("b", 1.0)],
            CaseId::SexticVII => &[("a", 2.0), ("b", 1.0), ("c", 1.0), ("l", 1.0), ("d", 2.0)],
            CaseId::CoulombVIII => &[("a", 2.0), ("b", -1.0), ("c", 1.0), ("l", 1.0), ("d", 2.0)],
            CaseId::CoulombIX => &[("a", 0.5), ("b", 4.0), ("c", 15.0), ("l", 1.0), ("d", -5.0)],
            CaseId::PeriodicX => &[("a", 1.0), ("alpha", 1.0)],
            CaseId::LameXI => &[
                ("a1", 1.0),
                ("a2", 2.0),
                ("a3", 3.0),
                ("k1", 0.0),
                ("k2", 0.0),
                ("k3", 0.0),
            ],
            CaseId::LameXII => &[("g2", 4.0), ("g3", 0.0), ("mu", 1.0)],
        }
    }

    /// The physical potential as a formula string (radial cases list `V_S`).
    pub fn potential_text(self) -> &'static str {
        match self {
            CaseId::MorseI => "a^2 e^{-2αx} - a(2b+α(2n+1)) e^{-αx} + c(2b-α) e^{αx} + c^2 e^{2αx}",
            CaseId::MorseII => "d^2 e^{-4αx} + 2ad e^{-3αx} + (a^2-2d(b+α+nα)) e^{-2αx} - a(2b+α) e^{-αx} + b^2",
            CaseId::MorseIII => "d^2 e^{4αx} + 2ad e^{3αx} + (a^2-2d(b+α)) e^{2αx} - a(2b+α) e^{αx} + b^2 + αn(αn-2b)",
            CaseId::PoschlTellerIV => "c^2 cosh^4(αx) - c(c+2α-2a) cosh^2(αx) - (a^2+aα+α(2n+p)(α(2n+p+1)+2a)) cosh^{-2}(αx) + a^2 + cα - 2ac",
            CaseId::PoschlTellerV => "-b^2 cosh^{-6} - b(2a+3b+α+4nα+2pα) cosh^{-4} - (a^2+2ab+aα(2p+2n-1)+α(2b(n+p-1)+α(n+2n^2+2np+(p-1)p))) cosh^{-2} + (a+2b+α(p-1))^2",
            CaseId::SexticVI => "a^2 x^6 + 2ab x^4 + (b^2 - a(4n+3)) x^2",
            CaseId::SexticVII => "a^2 r^6 + 2ab r^4 + (b^2 - a(4n+2l+d-2c+2)) r^2 + (c(c-2l-d+2) + 2l(l+d-2))/r^2",
            CaseId::CoulombVIII => "a^2 r^2 + 2ab r - b(D-1)/r + (c(c-2l-d+2) + 2l(d+l-2))/r^2 + b^2 - a(D+2n), D=d+2l-2c",
            CaseId::CoulombIX => "b^2/r^4 + b(D-3)/r^3 + (c(c-2l-d+2) + 2ab + 2l(l+d-2))/r^2 - a(2n+D-1)/r + a^2, D=d+2l-2c",
            CaseId::PeriodicX => "α^2 (a^2 sin^2(αx) - (2n+1) a cos(αx))",
            CaseId::LameXI => "m(m+1) ℘(z), m = 2n+k1+k2+k3 (algebraic variable ξ = ℘ + Σa_i/3)",
            CaseId::LameXII => "κ2 ℘(2z) + κ3 ℘(z), κ2 = 2μ(μ-1), κ3 = (n+2μ)(n+2μ+1) (algebraic variable τ = ℘)",
        }
    }

    /// True for the radial (§ dimension-`d`) cases.
    pub fn is_radial(self) -> bool {
        matches!(
            self,
            CaseId::SexticVII | CaseId::CoulombVIII | CaseId::CoulombIX
        )
    }

    /// True when the weight ρ is not identically 1.
    pub fn has_weight(self) -> bool {
        matches!(
            self,
            CaseId::MorseII
                | CaseId::MorseIII
                | CaseId::PoschlTellerIV
                | CaseId::PoschlTellerV
                | CaseId::CoulombVIII
                | CaseId::CoulombIX
        )
    }

    /// True for cases supported only in their algebraic variable.
    pub fn algebraic_only(self) -> bool {
        matches!(self, CaseId::LameXI | CaseId::LameXII)
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Named parameter assignments, in the case's declared order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Params(Vec<(String, f64)>);

impl Params {
    /// Builds a parameter list; Greek aliases `α` and `μ` are accepted.
    pub fn new<'a>(pairs: impl IntoIterator<Item = (&'a str, f64)>) -> Self {
        Params(
            pairs
                .into_iter()
                .map(|(k, v)| (canonical_name(k).to_string(), v))
                .collect(),
        )
    }

    /// Value of a parameter, if present.
    pub fn get(&self, name: &str) -> Option<f64> {
        let name = canonical_name(name);
        self.0.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    /// `(name, value)` pairs.
    pub fn pairs(&self) -> &[(String, f64)] {
        &self.0
    }

    /// Returns a copy with one parameter replaced.
    pub fn with(&self, name: &str, value: f64) -> Self {
        let name = canonical_name(name);
        let mut out = self.clone();
        match out.0.iter_mut().find(|(k, _)| k == name) {
            Some(slot) => slot.1 = value,
            None => out.0.push((name.to_string(), value)),
        }
        out
    }
}

fn canonical_name(name: &str) -> &str {
    match name {
        "α" => "alpha",
        "μ" => "mu",
        other => other,
    }
}

/// Dimension and angular momentum of a radial case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Radial {
    pub d_dim: f64,
    pub l: f64,
}

impl Radial {
    /// `h(r) = r^{−(d−1)/2}`, with `ψ_S = h ψ`.
    pub fn h(&self, r: f64) -> f64 {
        r.powf(-(self.d_dim - 1.0) / 2.0)
    }

    /// Centrifugal term `l(l+d−2)/r²` that appears in the radial Hamiltonian.
    pub fn centrifugal(&self, r: f64) -> f64 {
        self.l * (self.l + self.d_dim - 2.0) / (r * r)
    }

    /// `V_S − V_1D = l(l+d−2)/r² − (d−1)(d−3)/(4r²)`.
    pub fn potential_shift(&self, r: f64) -> f64 {
        let d = self.d_dim;
        self.centrifugal(r) - (d - 1.0) * (d - 3.0) / (4.0 * r * r)
    }

    /// `V_S^{(2)} − V^{(2)} = −(d² − 4d(l+1) − 4(l−2)l + 3)/(4r²)`; equal to
    /// [`Radial::potential_shift`].
    pub fn partner_shift(&self, r: f64) -> f64 {
        let (d, l) = (self.d_dim, self.l);
        -(d * d - 4.0 * d * (l + 1.0) - 4.0 * (l - 2.0) * l + 3.0) / (4.0 * r * r)
    }
}

/// Physical and algebraic domains of a case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    /// Physical-axis interval, absent for algebraic-only cases.
    pub x: Option<(f64, f64)>,
    /// Induced interval of the ODE variable.
    pub z: (f64, f64),
    /// Name of the ODE variable (`z`, `ξ`, `τ`).
    pub variable: &'static str,
    /// True for the Lamé cases (no physical-axis maps).
    pub algebraic_only: bool,
    /// Human-readable description.
    pub description: String,
}

/// Jets of the physical-axis maps at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XModel {
    /// `z(x)` with derivatives.
    pub z: Jet,
    /// Weight `ρ(x)` with derivatives.
    pub rho: Jet,
    /// Gauge exponent `g(x)` with derivatives (`ψ = sign·φ·e^{−g}`).
    pub g: Jet,
    /// Sign of the analytic continuation of the gauge factor (±1).
    pub sign: f64,
}

/// Gauge factor value with an overflow flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeFactor {
    pub value: f64,
    /// The exponent exceeded 700 in magnitude and the factor was clamped.
    pub clamped: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Coeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub al: f64,
    pub p: f64,
    pub l: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub g2: f64,
    pub g3: f64,
    pub mu: f64,
}

/// One QES case with bound parameters and polynomial degree `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseInstance {
    pub case: CaseId,
    pub params: Params,
    pub n: usize,
    pub form: OdeStandardForm,
    pub radial: Option<Radial>,
    pub(crate) k: Coeffs,
}

fn reject(case: CaseId, reason: impl Into<String>) -> QesError {
    QesError::InvalidParameter {
        case: case.id().to_string(),
        reason: reason.into(),
    }
}

/// Builds a [`CaseInstance`], validating the parameter set.
pub fn instantiate(case: CaseId, params: &Params, n: usize) -> Result<CaseInstance> {
    let names = case.param_names();
    for (k, v) in params.pairs() {
        if !names.contains(&k.as_str()) {
            return Err(reject(
                case,
                format!("unknown parameter '{k}' (expected {})", names.join(", ")),
            ));
        }
        if !v.is_finite() {
            return Err(reject(case, format!("parameter '{k}' is not finite")));
        }
    }
    for name in names {
        let count = params.pairs().iter().filter(|(k, _)| k == name).count();
        if count == 0 {
            return Err(reject(case, format!("missing parameter '{name}'")));
        }
        if count > 1 {
            return Err(reject(
                case,
                format!("parameter '{name}' given more than once"),
            ));
        }
    }
    let g = |name: &str| params.get(name).unwrap_or(0.0);
    let k = Coeffs {
        a: g("a"),
        b: g("b"),
        c: g("c"),
        d: g("d"),
        al: g("alpha"),
        p: g("p"),
        l: g("l"),
        a1: g("a1"),
        a2: g("a2"),
        a3: g("a3"),
        k1: g("k1"),
        k2: g("k2"),
        k3: g("k3"),
        g2: g("g2"),
        g3: g("g3"),
        mu: g("mu"),
    };
    validate(case, &k)?;
    let form = build_form(case, &k, n)?;
    let radial = case.is_radial().then_some(Radial { d_dim: k.d, l: k.l });
    Ok(CaseInstance {
        case,
        params: Params::new(names.iter().map(|name| (*name, params.get(name).unwrap()))),
        n,
        form,
        radial,
        k,
    })
}

fn validate(case: CaseId, k: &Coeffs) -> Result<()> {
    use CaseId::*;
    if matches!(
        case,
        MorseI | MorseII | MorseIII | PoschlTellerIV | PoschlTellerV | PeriodicX
    ) && k.al <= 0.0
    {
        return Err(reject(case, "alpha must be positive"));
    }
    if matches!(case, PoschlTellerIV | PoschlTellerV) && k.p != 0.0 && k.p != 1.0 {
        return Err(reject(case, "p must be 0 or 1"));
    }
    match case {
        PoschlTellerV if k.b == 0.0 => return Err(reject(case, "b must be nonzero")),
        MorseIII if 2.0 * k.b - k.al == 0.0 => {
            return Err(reject(case, "2b - alpha must be nonzero"))
        }
        SexticVII | CoulombVIII if k.d < 1.0 => {
            return Err(reject(case, "dimension d must be at least 1"))
        }
        LameXI => {
            for (name, v) in [("k1", k.k1), ("k2", k.k2), ("k3", k.k3)] {
                if v != 0.0 && v != 1.0 {
                    return Err(reject(case, format!("{name} must be 0 or 1")));
                }
            }
            if k.a1 == k.a2 || k.a1 == k.a3 || k.a2 == k.a3 {
                return Err(reject(case, "a1, a2, a3 must be distinct"));
            }
        }
        _ => {}
    }
    Ok(())
}

fn build_form(case: CaseId, k: &Coeffs, n: usize) -> Result<OdeStandardForm> {
    use CaseId::*;
    let nf = n as f64;
    let Coeffs {
        a,
        b,
        c,
        d,
        al,
        p,
        l,
        ..
    } = *k;
    let (pa, pb, pv): ([f64; 5], [f64; 4], [f64; 3]) = match case {
        MorseI => (
            [0.0, 0.0, al * al, 0.0, 0.0],
            [2.0 * c * al, al * (2.0 * b + al), -2.0 * a * al, 0.0],
            [-(b * b - 2.0 * a * c), -2.0 * nf * a * al, 0.0],
        ),
        MorseII => (
            [0.0, al, 0.0, 0.0, 0.0],
            [2.0 * b + al, -2.0 * a, -2.0 * d, 0.0],
            [0.0, -2.0 * nf * d, 0.0],
        ),
        MorseIII => (
            [0.0, 0.0, 0.0, al, 0.0],
            [2.0 * d, 2.0 * a, al - 2.0 * b, 0.0],
            [0.0, -nf * (2.0 * b - nf * al), 0.0],
        ),
        PoschlTellerIV => (
            [0.0, 0.0, 4.0 * al, -4.0 * al, 0.0],
            [
                4.0 * c,
                4.0 * a - 4.0 * c + 4.0 * al,
                -(4.0 * a + 2.0 * al * (3.0 + 2.0 * p)),
                0.0,
            ],
            [
                2.0 * c * p,
                -2.0 * nf * (2.0 * a + al + 2.0 * nf * al + 2.0 * p * al),
                0.0,
            ],
        ),
        PoschlTellerV => (
            [0.0, 4.0 * al, -4.0 * al, 0.0, 0.0],
            [
                4.0 * a + 8.0 * b + 4.0 * p * al,
                -(4.0 * a + 4.0 * b + 2.0 * al + 4.0 * p * al),
                -4.0 * b,
                0.0,
            ],
            [
                -(al * nf * (2.0 * nf + 1.0 + 2.0 * p) + 2.0 * a * nf + 2.0 * b * nf),
                -4.0 * b * nf,
                0.0,
            ],
        ),
        SexticVI => (
            [0.0, 4.0, 0.0, 0.0, 0.0],
            [2.0, -4.0 * b, -4.0 * a, 0.0],
            [b, -4.0 * a * nf, 0.0],
        ),
        SexticVII => (
            [0.0, 4.0, 0.0, 0.0, 0.0],
            [2.0 * (2.0 * l + d - 2.0 * c), -4.0 * b, -4.0 * a, 0.0],
            [-b * (2.0 * c - d - 2.0 * l), -4.0 * a * nf, 0.0],
        ),
        CoulombVIII => (
            [0.0, 1.0, 0.0, 0.0, 0.0],
            [-(2.0 * c - d - 2.0 * l + 1.0), -2.0 * b, -2.0 * a, 0.0],
            [0.0, -2.0 * a * nf, 0.0],
        ),
        CoulombIX => (
            [0.0, 0.0, 1.0, 0.0, 0.0],
            [2.0 * b, -(1.0 + 2.0 * c - d - 2.0 * l), -2.0 * a, 0.0],
            [4.0 * a * b, -2.0 * a * nf, 0.0],
        ),
        PeriodicX => (
            [al * al, 0.0, -al * al, 0.0, 0.0],
            [2.0 * a * al * al, -al * al, -2.0 * a * al * al, 0.0],
            [0.0, -2.0 * a * al * al * nf, 0.0],
        ),
        LameXI => {
            let (a1, a2, a3, k1, k2, k3) = (k.a1, k.a2, k.a3, k.k1, k.k2, k.k3);
            let m = 2.0 * nf + k1 + k2 + k3;
            let kk = 2.0 * (k1 + k2 + k3) + 3.0;
            let sg = lame_sigma(k);
            let q = 2.0 * a1 * a2 * k3
                + a1 * a2
                + 2.0 * a1 * a3 * k2
                + a1 * a3
                + 2.0 * a2 * a3 * k1
                + a2 * a3;
            let ksq = k1 * k1 + k1 * k2 + k1 * k3 + k2 * k2 + k2 * k3 + k3 * k3;
            (
                [
                    -4.0 * a1 * a2 * a3,
                    4.0 * (a1 * a2 + a1 * a3 + a2 * a3),
                    -4.0 * (a1 + a2 + a3),
                    4.0,
                    0.0,
                ],
                [2.0 * q, -4.0 * sg, 2.0 * kk, 0.0],
                [
                    a1 * (k2 + k3).powi(2) + a2 * (k1 + k3).powi(2) + a3 * (k1 + k2).powi(2),
                    m * (m + 1.0) - 2.0 * ksq,
                    0.0,
                ],
            )
        }
        LameXII => {
            let (g2, g3, mu) = (k.g2, k.g3, k.mu);
            (
                [-g3 / 2.0, -g2 / 2.0, 0.0, 2.0, 0.0],
                [
                    -g2 * (2.0 * mu + 1.0) / 4.0,
                    0.0,
                    3.0 * (2.0 * mu + 1.0),
                    0.0,
                ],
                [0.0, (6.0 * mu + 2.0 * nf + 1.0) * nf, 0.0],
            )
        }
    };
    OdeStandardForm::new(pa, pb, pv, n).map_err(|e| reject(case, e.to_string()))
}

pub(crate) fn lame_sigma(k: &Coeffs) -> f64 {
    k.a1 * (k.k2 + k.k3 + 1.0) + k.a2 * (k.k1 + k.k3 + 1.0) + k.a3 * (k.k1 + k.k2 + 1.0)
}

impl CaseInstance {
    /// Parameter value by name.
    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.get(name)
    }

    fn require_physical(&self) -> Result<()> {
        if self.case.algebraic_only() {
            Err(QesError::AlgebraicOnly(self.case.id().to_string()))
        } else {
            Ok(())
        }
    }

    /// Jets of `z(x)`, `ρ(x)` and `g(x)` at `x`.
    pub fn model(&self, x: f64) -> Result<XModel> {
        use CaseId::*;
        self.require_physical()?;
        if !x.is_finite() {
            return Err(QesError::Domain(format!("x = {x} is not finite")));
        }
        if self.case.is_radial() && x <= 0.0 {
            return Err(QesError::Domain(format!("r = {x} must be positive")));
        }
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
        let t = Jet::var(x);
        let one = Jet::cst(1.0);
        let model = match self.case {
            MorseI => XModel {
                z: (t * -al).exp(),
                rho: one,
                g: (t * -al).exp() * (a / al) + t * b + (t * al).exp() * (c / al),
                sign: 1.0,
            },
            MorseII => XModel {
                z: (t * -al).exp(),
                rho: (t * al).exp() / al,
                g: (t * (-2.0 * al)).exp() * (d / (2.0 * al)) + (t * -al).exp() * (a / al) + t * b,
                sign: 1.0,
            },
            MorseIII => XModel {
                z: (t * -al).exp(),
                rho: (t * -al).exp() / al,
                g: (t * (2.0 * al)).exp() * (d / (2.0 * al)) + (t * al).exp() * (a / al) - t * b,
                sign: 1.0,
            },
            PoschlTellerIV => {
                let ch = (t * al).cosh();
                XModel {
                    z: ch.powi(-2),
                    rho: Jet::cst(1.0 / al),
                    g: ch.powi(2) * (c / (2.0 * al)) + ch.ln_abs() * (a / al)
                        - (t * al).tanh().ln_abs() * p,
                    sign: if p == 1.0 && x < 0.0 { -1.0 } else { 1.0 },
                }
            }
            PoschlTellerV => {
                let ch = (t * al).cosh();
                XModel {
                    z: ch.powi(-2),
                    rho: ch.powi(2) / al,
                    g: ch.ln_abs() * ((a + 2.0 * b + al * (p - 1.0)) / al)
                        - ch.powi(-2) * (b / (2.0 * al)),
                    sign: 1.0,
                }
            }
            SexticVI => XModel {
                z: t * t,
                rho: one,
                g: t.powi(4) * (a / 4.0) + t * t * (b / 2.0),
                sign: 1.0,
            },
            SexticVII => XModel {
                z: t * t,
                rho: one,
                g: t.powi(4) * (a / 4.0)
                    + t * t * (b / 2.0)
                    + t.ln_abs() * ((2.0 * (c - l) - d + 1.0) / 2.0),
                sign: 1.0,
            },
            CoulombVIII => XModel {
                z: t,
                rho: t,
                g: t * t * (a / 2.0) + t * b + t.ln_abs() * ((2.0 * (c - l) - d + 1.0) / 2.0),
                sign: 1.0,
            },
            CoulombIX => XModel {
                z: t,
                rho: t * t,
                g: t * a + t.recip() * b - t.ln_abs() * ((2.0 * (l - c) + d - 1.0) / 2.0),
                sign: 1.0,
            },
            PeriodicX => XModel {
                z: (t * al).cos(),
                rho: one,
                g: (t * al).cos() * -a,
                sign: 1.0,
            },
            LameXI | LameXII => unreachable!("algebraic-only cases rejected above"),
        };
        Ok(model)
    }

    /// `z(x)`.
    pub fn z_of_x(&self, x: f64) -> Result<f64> {
        Ok(self.model(x)?.z.v)
    }

    /// `dz/dx`.
    pub fn dzdx(&self, x: f64) -> Result<f64> {
        Ok(self.model(x)?.z.d1)
    }

    /// Weight `ρ(x)`.
    pub fn weight_rho(&self, x: f64) -> Result<f64> {
        Ok(self.model(x)?.rho.v)
    }

    /// Gauge exponent `g(x)` (so that `ψ = φ e^{−g}` up to the analytic sign).
    pub fn gauge_exponent(&self, x: f64) -> Result<f64> {
        Ok(self.model(x)?.g.v)
    }

    /// `sign·e^{−g(x)}`, clamped (and flagged) when `|g| > 700`.
    pub fn gauge_factor(&self, x: f64) -> Result<GaugeFactor> {
        let m = self.model(x)?;
        Ok(gauge_from_model(&m))
    }

    /// Inverse map `x(z)` on the principal branch (`x ≥ 0` for even maps).
    pub fn x_of_z(&self, z: f64) -> Result<f64> {
        use CaseId::*;
        self.require_physical()?;
        let al = self.k.al;
        let bad = || {
            QesError::Domain(format!(
                "z = {z} lies outside the z-domain of {}",
                self.case.id()
            ))
        };
        let x = match self.case {
            MorseI | MorseII | MorseIII => {
                if z <= 0.0 {
                    return Err(bad());
                }
                -z.ln() / al
            }
            PoschlTellerIV | PoschlTellerV => {
                if !(z > 0.0 && z <= 1.0) {
                    return Err(bad());
                }
                (1.0 / z.sqrt()).acosh() / al
            }
            SexticVI | SexticVII => {
                if z < 0.0 || (self.case == SexticVII && z == 0.0) {
                    return Err(bad());
                }
                z.sqrt()
            }
            CoulombVIII | CoulombIX => {
                if z <= 0.0 {
                    return Err(bad());
                }
                z
            }
            PeriodicX => {
                if !(-1.0..=1.0).contains(&z) {
                    return Err(bad());
                }
                z.acos() / al
            }
            LameXI | LameXII => unreachable!(),
        };
        Ok(x)
    }

    /// Gauge exponent as a function of `z`: `G(z) = g(x(z))`.
    pub fn gauge_g(&self, z: f64) -> Result<f64> {
        self.gauge_exponent(self.x_of_z(z)?)
    }

    /// `K(z) = dG/dz = g'(x)/z'(x)` at `x = x(z)`.
    pub fn gauge_k(&self, z: f64) -> Result<f64> {
        let m = self.model(self.x_of_z(z)?)?;
        if m.z.d1 == 0.0 {
            return Err(QesError::Domain(format!("dz/dx vanishes at z = {z}")));
        }
        Ok(m.g.d1 / m.z.d1)
    }

    /// Physical potential as listed for the case (`V_S` for radial cases).
    pub fn potential(&self, x: f64) -> Result<f64> {
        use CaseId::*;
        self.require_physical()?;
        if self.case.is_radial() && x <= 0.0 {
            return Err(QesError::Domain(format!("r = {x} must be positive")));
        }
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
        let n = self.n as f64;
        let v = match self.case {
            MorseI => {
                let e = (-al * x).exp();
                a * a * e * e - a * (2.0 * b + al * (2.0 * n + 1.0)) * e
                    + c * (2.0 * b - al) / e
                    + c * c / (e * e)
            }
            MorseII => {
                let e = (-al * x).exp();
                d * d * e.powi(4)
                    + 2.0 * a * d * e.powi(3)
                    + (a * a - 2.0 * d * (b + al + n * al)) * e * e
                    - a * (2.0 * b + al) * e
                    + b * b
            }
            MorseIII => {
                let e = (al * x).exp();
                d * d * e.powi(4) + 2.0 * a * d * e.powi(3) + (a * a - 2.0 * d * (b + al)) * e * e
                    - a * (2.0 * b + al) * e
                    + b * b
                    + al * n * (al * n - 2.0 * b)
            }
            PoschlTellerIV => {
                let ch2 = (al * x).cosh().powi(2);
                c * c * ch2 * ch2
                    - c * (c + 2.0 * al - 2.0 * a) * ch2
                    - (a * a + a * al + al * (2.0 * n + p) * (al * (2.0 * n + p + 1.0) + 2.0 * a))
                        / ch2
                    + a * a
                    + c * al
                    - 2.0 * a * c
            }
            PoschlTellerV => {
                let s2 = (al * x).cosh().powi(-2);
                -b * b * s2.powi(3)
                    - b * (2.0 * a + 3.0 * b + al + 4.0 * n * al + 2.0 * p * al) * s2 * s2
                    - (a * a
                        + 2.0 * a * b
                        + a * al * (2.0 * p + 2.0 * n - 1.0)
                        + al * (2.0 * b * (n + p - 1.0)
                            + al * (n + 2.0 * n * n + 2.0 * n * p + (p - 1.0) * p)))
                        * s2
                    + (a + 2.0 * b + al * (p - 1.0)).powi(2)
            }
            SexticVI => {
                a * a * x.powi(6) + 2.0 * a * b * x.powi(4) + (b * b - a * (4.0 * n + 3.0)) * x * x
            }
            SexticVII => {
                a * a * x.powi(6)
                    + 2.0 * a * b * x.powi(4)
                    + (b * b - a * (4.0 * n + 2.0 * l + d - 2.0 * c + 2.0)) * x * x
                    + (c * (c - 2.0 * l - d + 2.0) + 2.0 * l * (l + d - 2.0)) / (x * x)
            }
            CoulombVIII => {
                let dc = d + 2.0 * l - 2.0 * c;
                a * a * x * x + 2.0 * a * b * x - b * (dc - 1.0) / x
                    + (c * (c - 2.0 * l - d + 2.0) + 2.0 * l * (d + l - 2.0)) / (x * x)
                    + b * b
                    - a * (dc + 2.0 * n)
            }
            CoulombIX => {
                let dc = d + 2.0 * l - 2.0 * c;
                b * b / x.powi(4)
                    + b * (dc - 3.0) / x.powi(3)
                    + (c * (c - 2.0 * l - d + 2.0) + 2.0 * a * b + 2.0 * l * (l + d - 2.0))
                        / (x * x)
                    - a * (2.0 * n + dc - 1.0) / x
                    + a * a
            }
            PeriodicX => {
                al * al * (a * a * (al * x).sin().powi(2) - (2.0 * n + 1.0) * a * (al * x).cos())
            }
            LameXI | LameXII => unreachable!(),
        };
        Ok(v)
    }

    /// One-dimensional potential `V` entering `ρ(−ψ'' + Vψ) = Eψ`.
    pub fn potential_1d(&self, x: f64) -> Result<f64> {
        let v = self.potential(x)?;
        Ok(match self.radial {
            Some(r) => v - r.potential_shift(x),
            None => v,
        })
    }

    /// `V1(z(x))/ρ + g'² − g''`: the potential reconstructed from the ODE.
    pub fn reconstructed_potential(&self, x: f64) -> Result<f64> {
        let m = self.model(x)?;
        let z = m.z.v;
        let v1 = self.form.v1[0] + self.form.v1[1] * z + self.form.v1[2] * z * z;
        Ok(v1 / m.rho.v + m.g.d1 * m.g.d1 - m.g.d2)
    }

    /// Sign σ of the analytic physical-axis branch `√P4 = σ √ρ z'`.
    pub fn branch_sign(&self) -> f64 {
        use CaseId::*;
        match self.case {
            SexticVI | SexticVII | CoulombVIII | CoulombIX => 1.0,
            LameXI | LameXII => 1.0,
            _ => -1.0,
        }
    }

    /// `√P4(z(x))` on the analytic branch `σ √ρ(x) z'(x)`.
    pub fn sqrt_p4_x(&self, x: f64) -> Result<f64> {
        let m = self.model(x)?;
        Ok(self.branch_sign() * m.rho.v.sqrt() * m.z.d1)
    }

    /// Physical and ODE-variable domains.
    pub fn physical_domain(&self) -> Domain {
        use CaseId::*;
        let inf = f64::INFINITY;
        let (x, z, variable, description) = match self.case {
            MorseI | MorseII | MorseIII => (
                Some((-inf, inf)),
                (0.0, inf),
                "z",
                "x ∈ ℝ, z = e^{-αx} ∈ (0, ∞)",
            ),
            PoschlTellerIV | PoschlTellerV => (
                Some((-inf, inf)),
                (0.0, 1.0),
                "z",
                "x ∈ ℝ, z = cosh^{-2}(αx) ∈ (0, 1]",
            ),
            SexticVI => (Some((-inf, inf)), (0.0, inf), "z", "x ∈ ℝ, z = x² ∈ [0, ∞)"),
            SexticVII => (Some((0.0, inf)), (0.0, inf), "z", "r > 0, z = r² ∈ (0, ∞)"),
            CoulombVIII | CoulombIX => (Some((0.0, inf)), (0.0, inf), "z", "r > 0, z = r ∈ (0, ∞)"),
            PeriodicX => (
                Some((-inf, inf)),
                (-1.0, 1.0),
                "z",
                "x ∈ ℝ (periodic), z = cos(αx) ∈ [-1, 1]",
            ),
            LameXI => {
                let top = self.k.a1.max(self.k.a2).max(self.k.a3);
                (
                    None,
                    (top, inf),
                    "ξ",
                    "algebraic variable ξ = ℘(z) + Σa_i/3 > max a_i",
                )
            }
            LameXII => (
                None,
                (self.lame12_top_root(), inf),
                "τ",
                "algebraic variable τ = ℘(z) > largest root of 4τ³ - g2 τ - g3",
            ),
        };
        Domain {
            x,
            z,
            variable,
            algebraic_only: self.case.algebraic_only(),
            description: description.to_string(),
        }
    }

    fn lame12_top_root(&self) -> f64 {
        let (g2, g3) = (self.k.g2, self.k.g3);
        let p = crate::poly::MonicPoly::from_coeffs(&[
            num_complex::Complex64::new(-g3 / 4.0, 0.0),
            num_complex::Complex64::new(-g2 / 4.0, 0.0),
            num_complex::Complex64::new(0.0, 0.0),
            num_complex::Complex64::new(1.0, 0.0),
        ])
        .expect("monic cubic");
        p.companion_roots()
            .iter()
            .filter(|r| r.im.abs() < 1e-9)
            .map(|r| r.re)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Default plotting grid `(min, max, points)` on the physical axis, or on
    /// the algebraic variable for the Lamé cases.
    pub fn default_grid(&self) -> (f64, f64, usize) {
        use CaseId::*;
        match self.case {
            MorseI => (-3.0, 3.0, 500),
            MorseII => (-1.0, 4.0, 500),
            MorseIII => (-4.0, 2.0, 500),
            PoschlTellerIV => (-2.5, 2.5, 500),
            PoschlTellerV => (-3.0, 3.0, 500),
            SexticVI => (-2.0, 2.0, 500),
            SexticVII => (0.1, 2.5, 500),
            CoulombVIII => (0.1, 3.0, 500),
            CoulombIX => (0.1, 5.0, 500),
            PeriodicX => (-3.0, 3.0, 500),
            LameXI | LameXII => {
                let lo = self.physical_domain().z.0;
                (lo + 0.1, lo + 4.0, 500)
            }
        }
    }

    /// Sample points of the ODE variable inside the physical z-domain
    /// (images of the default grid, midpoints of `count` equal cells).
    pub fn z_samples(&self, count: usize) -> Vec<f64> {
        let (lo, hi, _) = self.default_grid();
        let pts = (0..count).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / count as f64);
        if self.case.algebraic_only() {
            pts.collect()
        } else {
            pts.filter_map(|x| self.z_of_x(x).ok()).collect()
        }
    }

    /// For Lamé XI: `m = 2n + k1 + k2 + k3`.
    pub fn lame_m(&self) -> Option<f64> {
        (self.case == CaseId::LameXI)
            .then_some(2.0 * self.n as f64 + self.k.k1 + self.k.k2 + self.k.k3)
    }

    /// For Lamé XI: the shift `E − ε = m(m+1)Σa_i/3`.
    pub fn energy_shift(&self) -> Option<f64> {
        self.lame_m()
            .map(|m| m * (m + 1.0) * (self.k.a1 + self.k.a2 + self.k.a3) / 3.0)
    }

    /// For Lamé XII: couplings `(κ2, κ3) = (2μ(μ−1), (n+2μ)(n+2μ+1))`.
    pub fn lame_couplings(&self) -> Option<(f64, f64)> {
        (self.case == CaseId::LameXII).then(|| {
            let mu = self.k.mu;
            let n = self.n as f64;
            (2.0 * mu * (mu - 1.0), (n + 2.0 * mu) * (n + 2.0 * mu + 1.0))
        })
    }
}

pub(crate) fn gauge_from_model(m: &XModel) -> GaugeFactor {
    if m.g.v.abs() > 700.0 {
        GaugeFactor {
            value: if m.g.v > 0.0 { 0.0 } else { m.sign * f64::MAX },
            clamped: true,
        }
    } else {
        GaugeFactor {
            value: m.sign * (-m.g.v).exp(),
            clamped: false,
        }
    }
}
