//! Properties of the spectrum solver.

use num_complex::Complex64 as C;
use proptest::prelude::*;
use qes::bethe::{bae_residual, solve_spectrum};
use qes::catalog::{instantiate, CaseId, Params};
use qes::odeform::{qes_consistency_check, OdeStandardForm};
use qes::QesError;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sextic_states_satisfy_bae_and_constraints(a in 0.2f64..3.0, b in 0.2f64..3.0, n in 0usize..6) {
        let case = instantiate(CaseId::SexticVI, &Params::new([("a", a), ("b", b)]), n).unwrap();
        let spec = solve_spectrum(&case.form).unwrap();
        prop_assert_eq!(spec.len(), n + 1);
        for w in spec.windows(2) {
            prop_assert!(w[0].energy.re <= w[1].energy.re);
        }
        for s in &spec {
            prop_assert_eq!(s.roots.len(), n);
            prop_assert!(s.bae_residual < 1e-8, "bae {}", s.bae_residual);
            prop_assert!(qes_consistency_check(&case.form, &s.roots, s.energy, 1e-8).unwrap().pass());
            prop_assert!(s.energy.im.abs() < 1e-9 * (1.0 + s.energy.re.abs()));
        }
    }

    #[test]
    fn coulomb_states_are_real_and_refined(a in 0.5f64..3.0, b in -2.0f64..2.0, n in 1usize..7) {
        let case = instantiate(CaseId::CoulombVIII, &Params::new([("a", a), ("b", b), ("c", 1.0), ("l", 1.0), ("d", 3.0)]), n).unwrap();
        let spec = solve_spectrum(&case.form).unwrap();
        prop_assert_eq!(spec.len(), n + 1);
        for s in &spec {
            prop_assert!(s.is_real);
            prop_assert!(bae_residual(&case.form, &s.roots).unwrap() < 1e-8);
        }
    }

    /// Multiplying the whole ODE by c > 0 scales the energies and keeps the roots.
    #[test]
    fn scaling_the_ode_scales_energies(a in 0.3f64..2.0, b in 0.3f64..2.0, c in 0.1f64..10.0, n in 1usize..5) {
        let case = instantiate(CaseId::SexticVI, &Params::new([("a", a), ("b", b)]), n).unwrap();
        let f = &case.form;
        let scaled = OdeStandardForm::new(f.a.map(|x| c * x), f.b.map(|x| c * x), f.v1.map(|x| c * x), n).unwrap();
        let s0 = solve_spectrum(f).unwrap();
        let s1 = solve_spectrum(&scaled).unwrap();
        for (u, v) in s0.iter().zip(&s1) {
            prop_assert!((v.energy - u.energy * c).norm() <= 1e-9 * (1.0 + v.energy.norm()));
            let mut ru: Vec<f64> = u.roots.iter().map(|r| r.re).collect();
            let mut rv: Vec<f64> = v.roots.iter().map(|r| r.re).collect();
            ru.sort_by(f64::total_cmp);
            rv.sort_by(f64::total_cmp);
            for (x, y) in ru.iter().zip(&rv) {
                prop_assert!((x - y).abs() <= 1e-8 * (1.0 + x.abs()));
            }
        }
    }
}

#[test]
fn degree_zero_energy_is_the_constant_potential() {
    for case in CaseId::ALL {
        let inst =
            instantiate(case, &Params::new(case.figure_params().iter().copied()), 0).unwrap();
        let spec = solve_spectrum(&inst.form).unwrap();
        assert_eq!(spec.len(), 1, "{case}");
        assert!(spec[0].roots.is_empty());
        let v1 = inst.form.v1[0];
        assert!(
            (spec[0].energy.re - v1).abs() <= 1e-12 * (1.0 + v1.abs()),
            "{case}: {} vs {v1}",
            spec[0].energy
        );
    }
}

#[test]
fn sextic_energies_at_unit_parameters() {
    // E = 3b ∓ 2√(2a + b²) at a = b = 1.
    let case = instantiate(CaseId::SexticVI, &Params::new([("a", 1.0), ("b", 1.0)]), 1).unwrap();
    let spec = solve_spectrum(&case.form).unwrap();
    let s3 = 3f64.sqrt();
    assert!((spec[0].energy.re - (3.0 - 2.0 * s3)).abs() < 1e-12);
    assert!((spec[1].energy.re - (3.0 + 2.0 * s3)).abs() < 1e-12);
    // Root of the lower state: 1/(b − √(2a + b²)).
    assert!((spec[0].roots[0].re - 1.0 / (1.0 - s3)).abs() < 1e-12);
}

#[test]
fn non_qes_form_is_rejected() {
    // A z³ term in V1 cannot be balanced by P4/P3 for n = 1.
    let form =
        OdeStandardForm::new([0.0, 0.0, 1.0, 0.0, 0.0], [0.0; 4], [0.0, 0.0, 1.0], 1).unwrap();
    let err = solve_spectrum(&form).unwrap_err();
    assert!(matches!(err, QesError::NotQes { .. }), "{err}");
}

#[test]
fn bae_residual_vanishes_on_exact_roots() {
    let case = instantiate(
        CaseId::MorseI,
        &Params::new([("a", 1.0), ("b", 1.0), ("c", 1.0), ("alpha", 1.0)]),
        1,
    )
    .unwrap();
    // Roots −1/2 and 2 solve the single Bethe equation exactly.
    for r in [-0.5, 2.0] {
        assert!(bae_residual(&case.form, &[C::new(r, 0.0)]).unwrap() < 1e-14);
    }
    assert!(bae_residual(&case.form, &[C::new(1.0, 0.0)]).unwrap() > 1e-3);
}
