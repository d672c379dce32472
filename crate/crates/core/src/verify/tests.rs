use std::f64::consts::PI;

use super::*;
use crate::families::tests::sample;
use crate::families::{build_family, ConstructionData, Coupling};
use crate::invariants::{InvariantExpr, ParamVector};

fn eff(id: FamilyId, e: f64, r: f64) -> FamilyParams {
    FamilyParams::from_effective(id, e, r).unwrap()
}

fn scarf1_example() -> FamilyParams {
    let p = ParamVector::new(vec![0.2]).unwrap();
    let i1 = InvariantExpr::verified("sin(2*pi*m1)^2+cos(2*pi*m1)+1", 1).unwrap();
    let data = ConstructionData::new(p, vec![Coupling::new(i1, 0.05, 0.1)], None).unwrap();
    build_family(FamilyId::Scarf1, &data).unwrap()
}

#[test]
fn si_examples() {
    let ho = FamilyParams::harm_osc(1.0, 0.3).unwrap();
    let g = default_grid(ho.domain(), 2001).unwrap();
    assert!(si_residual(&ho, &g).unwrap().max_residual <= 1e-12);

    let s2 = eff(FamilyId::Scarf2, 3.2, 0.4);
    let g = Grid::new(-8.0, 8.0, 2001).unwrap();
    let r = si_residual(&s2, &g).unwrap();
    assert!(r.max_residual <= 1e-10, "{r:?}");
    assert_eq!(r.points_used + r.points_excluded, 2001);

    let co = eff(FamilyId::Coulomb, -1.5, -0.75);
    let g = Grid::new(co.domain().delta, 20.0, 2001).unwrap();
    assert!(si_residual(&co, &g).unwrap().max_residual <= 1e-9);
}

#[test]
fn si_from_either_side() {
    // checking fp↑ against fp gives the same bound
    for id in FamilyId::ALL {
        let fp = sample(id);
        let Ok(up) = translate_family(&fp, -1) else { continue };
        let g = default_grid(fp.domain(), 2001).unwrap();
        assert!(si_residual(&up, &g).unwrap().max_residual <= 1e-9, "{id}");
        if translate_family(&fp, 1).is_ok() {
            assert!(si_residual(&fp, &g).unwrap().max_residual <= 1e-9, "{id}");
        }
    }
}

#[test]
fn si_reports_range_violation() {
    let fp = eff(FamilyId::Scarf2, 0.4, 0.0);
    let g = Grid::new(-1.0, 1.0, 11).unwrap();
    assert!(matches!(si_residual(&fp, &g), Err(Error::RangeViolation { .. })));
}

#[test]
fn morse_oracle_gaps() {
    let fp = eff(FamilyId::Morse, 2.5, 1.0);
    let o = OracleSpec::new(-5.0, 25.0, 3000).unwrap();
    let ev = fd_spectrum_family(&fp, &o, 3).unwrap();
    for (k, want) in [0.0, 4.0, 6.0].iter().enumerate() {
        assert!((ev[k] - ev[0] - want).abs() <= 5e-3, "{ev:?}");
    }
}

#[test]
fn oracle_window_respects_minimum_extent() {
    let (a, b) = oracle_window(&eff(FamilyId::Morse, 2.5, 1.0));
    assert!(a <= -8.0 && b >= 25.0);
    let (a, b) = oracle_window(&eff(FamilyId::MorseMirror, 3.5, -1.0));
    assert!(a <= -25.0 && b >= 8.0);
    let fp = eff(FamilyId::RadialOsc, -0.5, 1.0);
    let (a, b) = oracle_window(&fp);
    assert_eq!(a, 0.0);
    assert!(b >= 8.0);
}

#[test]
fn quadrature_examples() {
    let ho = FamilyParams::harm_osc(1.0, 0.0).unwrap();
    let z0 = wavefunction(&ho, 0).unwrap();
    assert!((norm_squared(&z0).unwrap() - 1.0).abs() <= 1e-8);

    let m = eff(FamilyId::Morse, 2.5, 1.0);
    let (a, b) = (wavefunction(&m, 0).unwrap(), wavefunction(&m, 1).unwrap());
    assert!(overlap(&a, &b).unwrap().abs() <= 1e-7);
}

#[test]
fn ladder_examples() {
    let ho = FamilyParams::harm_osc(1.0, 0.0).unwrap();
    let g = Grid::new(-8.0, 8.0, 801).unwrap();
    let l = ladder_check(&ho, 1, &g).unwrap();
    assert!(l.report.max_residual <= 1e-6, "{l:?}");

    let m = eff(FamilyId::Morse, 2.5, 1.0);
    let z = wavefunction(&m, 1).unwrap();
    let g = state_grid(&z, 801).unwrap();
    assert!(ladder_check(&m, 1, &g).unwrap().report.max_residual <= 1e-5);

    let s1 = scarf1_example();
    let g = default_grid(s1.domain(), 801).unwrap();
    assert!(ladder_check(&s1, 1, &g).unwrap().report.max_residual <= 1e-5);

    assert!(matches!(ladder_check(&m, 0, &g), Err(Error::InadmissibleIndex { .. })));
}

#[test]
fn ladder_sign_is_reported() {
    let ho = FamilyParams::harm_osc(1.0, 0.0).unwrap();
    let g = Grid::new(-8.0, 8.0, 401).unwrap();
    let l = ladder_check(&ho, 1, &g).unwrap();
    assert!(l.sign == 1.0 || l.sign == -1.0);
}

#[test]
fn morse_state_has_k_nodes() {
    let m = eff(FamilyId::Morse, 2.5, 1.0);
    for k in 0..3 {
        let z = wavefunction(&m, k).unwrap();
        assert_eq!(node_count(&z, &state_grid(&z, 4001).unwrap()).unwrap(), k);
    }
}

#[test]
fn schrodinger_residual_samples() {
    for id in FamilyId::ALL {
        let fp = sample(id);
        let z = wavefunction(&fp, 1).unwrap();
        let r = schrodinger_residual(&z, &state_grid(&z, 1001).unwrap()).unwrap();
        assert!(r.max_residual <= 1e-5, "{id}: {r:?}");
    }
}

#[test]
fn derivatives_of_power_law_near_zero() {
    let d = Domain::new(0.0, f64::INFINITY);
    let f = |x: f64| Ok(x.sqrt());
    let (v, d1, d2) = derivatives(&f, 1e-3, d).unwrap();
    assert!((v - 1e-3f64.sqrt()).abs() < 1e-15);
    assert!((d1 / (0.5 * 1e-3f64.powf(-0.5)) - 1.0).abs() < 1e-7);
    assert!((d2 / (-0.25 * 1e-3f64.powf(-1.5)) - 1.0).abs() < 1e-6);
}

#[test]
fn derivatives_interior() {
    let d = Domain::new(-PI / 2.0, PI / 2.0);
    let (_, d1, d2) = derivatives(&|x: f64| Ok(x.sin()), 0.3, d).unwrap();
    assert!((d1 - 0.3f64.cos()).abs() < 1e-10 && (d2 + 0.3f64.sin()).abs() < 1e-6);
}

#[test]
fn gram_of_oscillator_states() {
    let ho = FamilyParams::harm_osc(1.0, 0.0).unwrap();
    let states: Vec<_> = (0..4).map(|k| wavefunction(&ho, k).unwrap()).collect();
    assert!(gram_deviation(&gram_matrix(&states).unwrap()) <= 1e-8);
}
