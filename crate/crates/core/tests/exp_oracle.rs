//! The spectral exponential against nalgebra's Padé exponential, for
//! every kind of charge.

use superfock::dynamics::{
    build_clifford, build_g, build_wz, clifford_config, spectral_exp, unitary_ia, unitary_iii, SuperchargeSpec,
};
use superfock::operator::{Operator, C64};
use superfock::ModeConfig;

fn oracle(g: &Operator, s: f64) -> Operator {
    Operator::from_matrix((g.matrix() * C64::new(0.0, s)).exp())
}

const S: [f64; 4] = [-0.7, 0.1, 1.0, std::f64::consts::PI];

#[test]
fn free_single_mode() {
    let spec = SuperchargeSpec::free(ModeConfig::single_mode(12).unwrap()).unwrap();
    let g = build_g(&spec).unwrap();
    for s in S {
        assert!((&unitary_ia(&spec, s).unwrap() - &oracle(&g, s)).max_abs() < 1e-9);
    }
}

#[test]
fn free_two_modes() {
    let spec = SuperchargeSpec::free(ModeConfig::paired(vec![1.0, 0.7], 5).unwrap()).unwrap();
    let g = build_g(&spec).unwrap();
    for s in S {
        assert!((&unitary_ia(&spec, s).unwrap() - &oracle(&g, s)).max_abs() < 1e-9);
    }
}

#[test]
fn clifford_charge() {
    let spec = SuperchargeSpec::clifford(clifford_config(8).unwrap()).unwrap();
    let g = build_clifford(&spec).unwrap().g;
    for s in S {
        assert!((&unitary_iii(&spec, s).unwrap() - &oracle(&g, s)).max_abs() < 1e-9);
    }
}

#[test]
fn wess_zumino_charge_uses_the_general_path() {
    let config = ModeConfig::single_mode(10).unwrap();
    let wz = build_wz(&SuperchargeSpec::wess_zumino(config, 0.5).unwrap()).unwrap();
    for s in S {
        assert!((&spectral_exp(&wz.g, s).unwrap() - &oracle(&wz.g, s)).max_abs() < 1e-9);
    }
}
