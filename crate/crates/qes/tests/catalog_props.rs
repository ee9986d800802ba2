//! Properties of the case catalog and its physical-axis maps.

use proptest::prelude::*;
use qes::catalog::{instantiate, CaseId, CaseInstance, Params};
use qes::QesError;

const PHYSICAL: [CaseId; 10] = [
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
];

/// Representative parameters with the continuous ones rescaled by `factors`
/// (the discrete `p` and the integer-like `l` are kept).
fn perturbed(case: CaseId, factors: &[f64], n: usize) -> Option<CaseInstance> {
    let pairs: Vec<(&str, f64)> = case
        .figure_params()
        .iter()
        .zip(factors.iter().cycle())
        .map(|(&(k, v), f)| {
            if matches!(k, "p" | "l") {
                (k, v)
            } else {
                (k, v * f)
            }
        })
        .collect();
    instantiate(case, &Params::new(pairs), n).ok()
}

fn case_strategy() -> impl Strategy<Value = CaseId> {
    prop::sample::select(PHYSICAL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn z_and_x_maps_round_trip(case in case_strategy(), t in 0.0f64..1.0) {
        let inst = instantiate(case, &Params::new(case.figure_params().iter().copied()), 1).unwrap();
        let (lo, hi, _) = inst.default_grid();
        let x = lo + (hi - lo) * t;
        let z = inst.z_of_x(x).unwrap();
        let back = inst.x_of_z(z).unwrap();
        let z2 = inst.z_of_x(back).unwrap();
        prop_assert!((z - z2).abs() <= 1e-9 * (1.0 + z.abs()), "{} {} {}", x, z, z2);
    }

    /// `V1(z(x))/ρ + g'² − g''` reproduces the tabulated potential.
    #[test]
    fn potential_reconstruction(case in case_strategy(), factors in prop::collection::vec(0.8f64..1.25, 5), n in 0usize..4, t in 0.0f64..1.0) {
        let inst = perturbed(case, &factors, n);
        prop_assume!(inst.is_some());
        let inst = inst.unwrap();
        let (lo, hi, _) = inst.default_grid();
        let x = lo + (hi - lo) * t;
        let v = inst.potential_1d(x).unwrap();
        let r = inst.reconstructed_potential(x).unwrap();
        prop_assert!((v - r).abs() <= 1e-8 * (1.0 + v.abs()), "{}: {} vs {}", case, v, r);
    }

    /// `P4(z(x)) = ρ(x) z'(x)²`.
    #[test]
    fn weight_matches_leading_coefficient(case in case_strategy(), t in 0.0f64..1.0) {
        let inst = instantiate(case, &Params::new(case.figure_params().iter().copied()), 1).unwrap();
        let (lo, hi, _) = inst.default_grid();
        let x = lo + (hi - lo) * t;
        let z = inst.z_of_x(x).unwrap();
        let p4 = inst.form.p4(num_complex::Complex64::new(z, 0.0))[0].re;
        let dz = inst.dzdx(x).unwrap();
        let rho = inst.weight_rho(x).unwrap();
        prop_assert!((p4 - rho * dz * dz).abs() <= 1e-9 * (1.0 + p4.abs()));
    }
}

#[test]
fn registry_has_twelve_cases() {
    assert_eq!(CaseId::ALL.len(), 12);
    for case in CaseId::ALL {
        assert_eq!(CaseId::from_id(case.id()), Some(case));
    }
}

#[test]
fn parameters_must_match_exactly() {
    let base = Params::new(CaseId::MorseI.figure_params().iter().copied());
    assert!(instantiate(CaseId::MorseI, &base, 1).is_ok());
    let extra = base.with("z", 1.0);
    assert!(matches!(
        instantiate(CaseId::MorseI, &extra, 1),
        Err(QesError::InvalidParameter { .. })
    ));
    let missing = Params::new([("a", 1.0), ("b", 1.0), ("c", 1.0)]);
    assert!(matches!(
        instantiate(CaseId::MorseI, &missing, 1),
        Err(QesError::InvalidParameter { .. })
    ));
    let greek = Params::new([("a", 1.0), ("b", 1.0), ("c", 1.0), ("α", 1.0)]);
    assert!(instantiate(CaseId::MorseI, &greek, 1).is_ok());
}

#[test]
fn discrete_parameters_are_validated() {
    let p = Params::new(CaseId::PoschlTellerV.figure_params().iter().copied());
    assert!(instantiate(CaseId::PoschlTellerV, &p.with("p", 0.0), 1).is_ok());
    assert!(instantiate(CaseId::PoschlTellerV, &p.with("p", 0.5), 1).is_err());
    assert!(instantiate(
        CaseId::MorseII,
        &Params::new(CaseId::MorseII.figure_params().iter().copied()).with("alpha", -1.0),
        1
    )
    .is_err());
    let lame = Params::new(CaseId::LameXI.figure_params().iter().copied());
    assert!(instantiate(CaseId::LameXI, &lame.with("k1", 2.0), 1).is_err());
    assert!(instantiate(CaseId::LameXI, &lame.with("a2", 1.0), 1).is_err());
}

#[test]
fn flags_and_domains() {
    for case in CaseId::ALL {
        let inst =
            instantiate(case, &Params::new(case.figure_params().iter().copied()), 1).unwrap();
        let dom = inst.physical_domain();
        assert_eq!(dom.algebraic_only, case.algebraic_only());
        assert_eq!(dom.x.is_none(), case.algebraic_only());
        assert_eq!(inst.radial.is_some(), case.is_radial());
    }
    assert!(
        CaseId::MorseII.has_weight()
            && CaseId::PoschlTellerV.has_weight()
            && CaseId::CoulombVIII.has_weight()
            && CaseId::CoulombIX.has_weight()
    );
    assert!(!CaseId::MorseI.has_weight() && !CaseId::SexticVI.has_weight());
}
