//! Verification layer: FD residuals, singularity scans, oracle checks and reports.

use qes::catalog::{closed_form_oracle, instantiate, CaseId, Params};
use qes::susy::SusyPartner;
use qes::verify::{
    fd_hamiltonian_residual, fd_hamiltonian_residual_with_step, linspace, oracle_crosscheck,
    run_suite, scan_partner_poles, singularity_scan, SuiteOptions, VerificationReport,
};

fn representative(case: CaseId, n: usize) -> qes::catalog::CaseInstance {
    instantiate(case, &Params::new(case.figure_params().iter().copied()), n).unwrap()
}

#[test]
fn morse1_partner_fd_residual() {
    let inst = representative(CaseId::MorseI, 1);
    let (p, _) = SusyPartner::from_case(&inst, None, None).unwrap();
    let grid = linspace(-3.0, 3.0, 300);
    let r = fd_hamiltonian_residual(
        &|x| p.v2_x(x),
        &|x| inst.weight_rho(x),
        None,
        &|x| Ok(p.wavefunctions(x)?.psi2),
        p.other.energy.re,
        &grid,
    )
    .unwrap();
    assert!(r.max < 1e-6, "{r:?}");
}

#[test]
fn fd_residual_converges_with_step() {
    // Truncation error of the extrapolated differences falls by at least 4× per halving.
    let inst = representative(CaseId::SexticVI, 1);
    let (p, _) = SusyPartner::from_case(&inst, None, None).unwrap();
    let grid = linspace(-1.5, 1.5, 61);
    let run = |h: f64| {
        fd_hamiltonian_residual_with_step(
            &|x| inst.potential_1d(x),
            &|_| Ok(1.0),
            None,
            &|x| Ok(p.wavefunctions(x)?.psi_seed),
            p.seed.energy.re,
            &grid,
            h,
        )
        .unwrap()
        .max
    };
    let coarse = run(0.08);
    let fine = run(0.04);
    assert!(coarse / fine > 3.5, "coarse {coarse:.3e}, fine {fine:.3e}");
}

#[test]
fn radial_fd_residual_includes_centrifugal_terms() {
    let inst = representative(CaseId::CoulombVIII, 1);
    let (p, _) = SusyPartner::from_case(&inst, None, None).unwrap();
    let rad = p.radial_wrap().unwrap();
    let grid = linspace(0.2, 3.0, 200);
    let with = fd_hamiltonian_residual(
        &|r| rad.v_s(r),
        &|r| inst.weight_rho(r),
        Some(rad.radial),
        &|r| Ok(rad.wavefunctions(r)?.psi_seed),
        p.seed.energy.re,
        &grid,
    )
    .unwrap();
    assert!(with.max < 1e-6, "{with:?}");
    let without = fd_hamiltonian_residual(
        &|r| rad.v_s(r),
        &|r| inst.weight_rho(r),
        None,
        &|r| Ok(rad.wavefunctions(r)?.psi_seed),
        p.seed.energy.re,
        &grid,
    )
    .unwrap();
    assert!(without.max > 1e-3);
}

#[test]
fn stencil_on_a_pole_is_reported() {
    let err = fd_hamiltonian_residual(
        &|_| Ok(0.0),
        &|_| Ok(1.0),
        None,
        &|x| {
            if x.abs() < 1e-3 {
                Err(qes::QesError::Domain("pole".into()))
            } else {
                Ok(x)
            }
        },
        1.0,
        &[0.5, 0.0],
    )
    .unwrap_err();
    assert!(matches!(err, qes::QesError::PoleProximity { .. }));
}

#[test]
fn synthetic_pole_location() {
    let poles = singularity_scan(&|x| Some(1.0 / (x - 1.0)), -3.0, 4.0, 701, &[]);
    assert_eq!(poles.len(), 1);
    assert!((poles[0].x - 1.0).abs() <= 0.01);
    assert!(!poles[0].shared);
}

#[test]
fn morse1_partner_has_no_new_poles() {
    let inst = representative(CaseId::MorseI, 1);
    let (p, _) = SusyPartner::from_case(&inst, None, None).unwrap();
    let scan = scan_partner_poles(&p, -3.0, 3.0, 2000);
    assert!(scan.poles.is_empty(), "{:?}", scan.poles);
}

#[test]
fn coulomb8_partner_shares_only_the_origin() {
    let inst = representative(CaseId::CoulombVIII, 1);
    let (p, _) = SusyPartner::from_case(&inst, None, None).unwrap();
    let scan = scan_partner_poles(&p, 0.0, 3.0, 2000);
    assert!(scan.new_poles().is_empty(), "{:?}", scan.poles);
    assert_eq!(scan.poles.len(), 1);
    assert!(scan.poles[0].x.abs() < 1e-9 && scan.poles[0].shared);
}

#[test]
fn excited_seed_produces_new_poles() {
    let inst = representative(CaseId::SexticVI, 2);
    let (p, _) = SusyPartner::from_case(&inst, Some(1), Some(0)).unwrap();
    let scan = scan_partner_poles(&p, -2.0, 2.0, 2000);
    assert_eq!(scan.new_poles().len(), 2);
    let report = run_suite(
        &inst,
        &SuiteOptions {
            seed_index: Some(1),
            other_index: Some(0),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(report.new_poles.len(), 2);
    assert!(!report.check("new_poles").unwrap().pass);
}

#[test]
fn perturbed_oracle_fails_crosscheck_in_every_case() {
    for case in CaseId::ALL.into_iter().filter(|c| !c.algebraic_only()) {
        let inst = representative(case, 1);
        let (p, spec) = SusyPartner::from_case(&inst, None, None).unwrap();
        let (lo, hi, _) = inst.default_grid();
        let grid = linspace(lo, hi, 50);
        let good = closed_form_oracle(&inst).unwrap();
        assert!(
            oracle_crosscheck(&inst, &p, &spec, &good, &grid, 1.0)
                .iter()
                .all(|e| e.pass),
            "{case}"
        );
        let bad = good.perturbed(1e-3);
        let entries = oracle_crosscheck(&inst, &p, &spec, &bad, &grid, 1.0);
        assert!(entries.iter().any(|e| !e.pass), "{case}");
    }
}

#[test]
fn report_schema_and_pass_rule() {
    let inst = representative(CaseId::PeriodicX, 1);
    let report = run_suite(&inst, &SuiteOptions::default()).unwrap();
    assert!(report.passed());
    for c in &report.checks {
        assert_eq!(c.pass, c.max_residual < c.tol, "{}", c.name);
    }
    let json = serde_json::to_value(&report).unwrap();
    for key in ["case", "n", "params", "checks", "new_poles"] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
    for key in ["name", "max_residual", "tol", "pass", "worst_at"] {
        assert!(json["checks"][0].get(key).is_some(), "missing {key}");
    }
    let back: VerificationReport = serde_json::from_value(json).unwrap();
    assert_eq!(back.checks.len(), report.checks.len());
}

#[test]
fn tolerance_scale_multiplies_every_tolerance() {
    let inst = representative(CaseId::SexticVI, 1);
    let base = run_suite(&inst, &SuiteOptions::default()).unwrap();
    let loose = run_suite(
        &inst,
        &SuiteOptions {
            tol_scale: 10.0,
            ..Default::default()
        },
    )
    .unwrap();
    for (a, b) in base.checks.iter().zip(&loose.checks) {
        assert_eq!(a.name, b.name);
        if a.name != "new_poles" {
            assert!((b.tol - 10.0 * a.tol).abs() <= 1e-12 * b.tol, "{}", a.name);
        }
    }
}

#[test]
fn morse2_n10_partner_states_pass() {
    let inst = instantiate(
        CaseId::MorseII,
        &Params::new([("a", 1.0), ("b", 1.0), ("d", 1.0), ("alpha", 1.0)]),
        10,
    )
    .unwrap();
    let report = run_suite(&inst, &SuiteOptions::default()).unwrap();
    let residuals: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.name.starts_with("partner_residual["))
        .collect();
    assert_eq!(residuals.len(), 10);
    assert!(residuals.iter().all(|c| c.max_residual < 1e-7));
    assert!(report.passed(), "{:?}", report.failures());
}

#[test]
fn flipped_partner_correction_fails_verification() {
    let inst = representative(CaseId::MorseI, 1);
    let report = run_suite(
        &inst,
        &SuiteOptions {
            flip_v2: true,
            ..Default::default()
        },
    )
    .unwrap();
    assert!(!report.passed());
    assert!(!report.check("intertwining").unwrap().pass);
}
