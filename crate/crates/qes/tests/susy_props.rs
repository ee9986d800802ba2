//! Properties of the state-deleting SUSY construction.

use num_complex::Complex64 as C;
use proptest::prelude::*;
use qes::catalog::{instantiate, CaseId, CaseInstance, Params};
use qes::susy::{apply_a_bare, monomial_jet, partner_poly, SusyPartner};

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

/// A complex sample point away from the seed roots.
fn probe(partner: &SusyPartner, zr: f64, zi: f64) -> Option<C> {
    let z = C::new(zr, zi);
    partner
        .seed
        .roots
        .iter()
        .all(|r| (z - r).norm() > 0.05)
        .then_some(z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn seed_is_annihilated_and_other_maps_to_partner(
        case in prop::sample::select(PHYSICAL.to_vec()),
        factors in prop::collection::vec(0.8f64..1.25, 5),
        n in 1usize..4,
        zr in -2.0f64..2.0,
        zi in 0.1f64..1.0,
    ) {
        let inst = perturbed(case, &factors, n);
        prop_assume!(inst.is_some());
        let inst = inst.unwrap();
        let solved = SusyPartner::from_case(&inst, None, None);
        prop_assume!(solved.is_ok());
        let (p, spectrum) = solved.unwrap();
        let z = probe(&p, zr, zi);
        prop_assume!(z.is_some());
        let z = z.unwrap();
        let form = &inst.form;
        let seed_jet = p.seed.poly.jet(z);
        let a = apply_a_bare(&p.seed, form, &seed_jet, z).unwrap();
        let scale = form.p4(z)[0].sqrt().norm() * seed_jet[1].norm().max(seed_jet[0].norm());
        prop_assert!(a.norm() <= 1e-10 * scale.max(1.0), "annihilation {}", a);
        for j in 1..spectrum.len() {
            let q = p.with_other(&spectrum, j).unwrap();
            let mapped = apply_a_bare(&q.seed, form, &q.other.poly.jet(z), z).unwrap();
            let direct = partner_poly(&q.seed, &q.other, form, z).unwrap();
            prop_assert!((mapped - direct).norm() <= 1e-9 * direct.norm().max(1.0));
            prop_assert!(q.partner_residual(z).unwrap() < 1e-7);
        }
    }

    /// `A T̄1 = T̄2 A` and `B A = T1 + Λ` on monomials at complex points.
    #[test]
    fn intertwining_and_factorization_on_monomials(
        case in prop::sample::select(PHYSICAL.to_vec()),
        factors in prop::collection::vec(0.8f64..1.25, 5),
        k in 0u32..5,
        zr in -2.0f64..2.0,
        zi in 0.1f64..1.0,
    ) {
        let inst = perturbed(case, &factors, 1);
        prop_assume!(inst.is_some());
        let inst = inst.unwrap();
        let solved = SusyPartner::from_case(&inst, None, None);
        prop_assume!(solved.is_ok());
        let (p, _) = solved.unwrap();
        let z = probe(&p, zr, zi);
        prop_assume!(z.is_some());
        let z = z.unwrap();
        let f = monomial_jet(k, z);
        let (d, s) = p.intertwining_defect(&f, z).unwrap();
        prop_assert!(d.norm() <= 1e-7 * s.max(1e-300), "intertwining {} / {}", d, s);
        let (d, s) = p.factorization_defect(&f, z).unwrap();
        prop_assert!(d.norm() <= 1e-8 * s.max(1e-300), "factorization {} / {}", d, s);
    }

    /// The general physical-axis partner potential equals the gauged `V₂(z)`.
    #[test]
    fn physical_partner_potential_equals_gauged_ode_potential(
        case in prop::sample::select(PHYSICAL.to_vec()),
        factors in prop::collection::vec(0.8f64..1.25, 5),
        t in 0.0f64..1.0,
    ) {
        let inst = perturbed(case, &factors, 1);
        prop_assume!(inst.is_some());
        let inst = inst.unwrap();
        let solved = SusyPartner::from_case(&inst, None, None);
        prop_assume!(solved.is_ok());
        let (p, _) = solved.unwrap();
        prop_assume!(p.seed.is_real && p.other.is_real);
        let (lo, hi, _) = inst.default_grid();
        let x = lo + (hi - lo) * t;
        let (a, b) = (p.v2_x(x).unwrap(), p.v2_x_gauge(x).unwrap());
        prop_assert!((a - b).abs() <= 1e-8 * (1.0 + b.abs()), "{} vs {}", a, b);
    }
}

#[test]
fn seed_cannot_be_its_own_partner() {
    let inst = instantiate(CaseId::SexticVI, &Params::new([("a", 1.0), ("b", 1.0)]), 1).unwrap();
    assert!(SusyPartner::from_case(&inst, Some(0), Some(0)).is_err());
    assert!(SusyPartner::from_case(&inst, Some(0), Some(2)).is_err());
}

#[test]
fn morse1_partner_polynomial() {
    // φ2 = 2αzS/(4az − 2b − α + S) with S = 5 at a = b = c = α = 1: φ2(1) = 10/6.
    let inst = instantiate(
        CaseId::MorseI,
        &Params::new([("a", 1.0), ("b", 1.0), ("c", 1.0), ("alpha", 1.0)]),
        1,
    )
    .unwrap();
    let (p, _) = SusyPartner::from_case(&inst, None, None).unwrap();
    let v = p.phi2(C::new(1.0, 0.0)).unwrap();
    assert!((v.re.abs() - 10.0 / 6.0).abs() < 1e-12);
}
