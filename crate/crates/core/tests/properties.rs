use proptest::prelude::*;

use superfock::dynamics::{build_g, unitary_ia, SuperchargeSpec};
use superfock::entanglement::{entropy, reduce, Subsystem};
use superfock::fock::{self, safe_defect};
use superfock::operator::{anticomm, comm, conjugate, Operator, C64};
use superfock::{ModeConfig, StateVector};

fn small_config() -> impl Strategy<Value = ModeConfig> {
    (1usize..=2, 1usize..=2, 2usize..=5).prop_flat_map(|(f, b, cutoff)| {
        prop::collection::vec(0.1f64..2.0, f)
            .prop_filter_map("dimension", move |k| ModeConfig::new(f, b, cutoff, k, 1).ok())
    })
}

fn paired_config() -> impl Strategy<Value = ModeConfig> {
    (prop::collection::vec(0.1f64..2.0, 1..=2), 2usize..=6)
        .prop_map(|(k, cutoff)| ModeConfig::paired(k, cutoff).unwrap())
}

fn random_state(dim: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
        .prop_filter("nonzero", |v| v.iter().any(|(x, y)| x.abs() + y.abs() > 1e-3))
        .prop_map(|v| {
            let amps: Vec<C64> = v.into_iter().map(|(x, y)| C64::new(x, y)).collect();
            StateVector::from_slice(&amps).normalized()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn canonical_relations_hold_on_the_safe_subspace(config in small_config()) {
        let dim = config.dim();
        for i in 0..config.n_fermion() {
            let a = fock::fermion(&config, i).unwrap();
            let car = anticomm(&a, &a.adjoint()).unwrap();
            prop_assert!((&car - &Operator::identity(dim)).max_abs() < 1e-12);
            prop_assert!((&a * &a).max_abs() < 1e-12);
        }
        for j in 0..config.n_boson() {
            let b = fock::boson(&config, j).unwrap();
            let ccr = comm(&b, &b.adjoint()).unwrap();
            prop_assert!(safe_defect(&config, &ccr, &Operator::identity(dim), 1).unwrap() < 1e-12);
        }
    }

    #[test]
    fn basis_index_round_trips(config in small_config()) {
        for i in 0..config.dim() {
            prop_assert_eq!(config.index_of(&config.state_at(i)), Some(i));
        }
    }

    #[test]
    fn evolution_is_a_unitary_group(config in paired_config(), s in -3.0f64..3.0, t in -3.0f64..3.0) {
        let spec = SuperchargeSpec::free(config.clone()).unwrap();
        let us = unitary_ia(&spec, s).unwrap();
        let ut = unitary_ia(&spec, t).unwrap();
        let ust = unitary_ia(&spec, s + t).unwrap();
        let one = Operator::identity(config.dim());
        prop_assert!((&(&us * &us.adjoint()) - &one).max_abs() < 1e-10);
        prop_assert!((&(&us * &ut) - &ust).max_abs() < 1e-9);
    }

    #[test]
    fn charge_is_conserved(config in paired_config(), s in -3.0f64..3.0) {
        let spec = SuperchargeSpec::free(config).unwrap();
        let g = build_g(&spec).unwrap();
        prop_assert!(g.hermiticity_defect() < 1e-14);
        let u = unitary_ia(&spec, s).unwrap();
        prop_assert!((&conjugate(&u, &g) - &g).max_abs() < 1e-9);
    }

    #[test]
    fn complementary_reductions_share_entropy(state in random_state(24)) {
        let config = ModeConfig::new(1, 1, 11, vec![1.0], 1).unwrap();
        let rho_f = reduce(&config, &state, &Subsystem::all_fermions(&config)).unwrap();
        let rho_b = reduce(&config, &state, &Subsystem::all_bosons(&config)).unwrap();
        let (ef, eb) = (entropy(&rho_f), entropy(&rho_b));
        prop_assert!((-1e-12..=std::f64::consts::LN_2 + 1e-12).contains(&ef));
        prop_assert!((ef - eb).abs() < 1e-9);
        prop_assert!((rho_f.matrix().trace().re - 1.0).abs() < 1e-12);
    }
}
