//! Case III: the Grassmann parameter replaced by a Clifford pair
//! `{θ, θ̄} = 1`, realised as a second fermionic slot. Basis labels are
//! `|n_f, n_g, n_b⟩` with `n_g` the occupation of that slot.

use crate::error::{Error, Result};
use crate::fock::{self, BasisState, ModeConfig};
use crate::operator::{Operator, StateVector, C64, I};

use super::evolution::spectral_exp;
use super::supercharge::{SuperchargeSpec, Variant};

/// Fermion slot holding `θ`.
pub const THETA_SLOT: usize = 1;

/// `F = 2` (`a` and `θ`), `B = 1`, margin 1.
pub fn clifford_config(cutoff: usize) -> Result<ModeConfig> {
    ModeConfig::new(2, 1, cutoff, vec![1.0, 0.0], 1.min(cutoff))
}

pub(crate) fn clifford_charge(config: &ModeConfig) -> Result<Operator> {
    let a = fock::fermion(config, 0)?;
    let theta = fock::fermion(config, THETA_SLOT)?;
    let b = fock::boson(config, 0)?;
    let first = &(&theta * &a) * &b.adjoint();
    let second = &(&b * &a.adjoint()) * &theta.adjoint();
    Ok(&first + &second)
}

/// The generator, the closed form of its square, and the alternative
/// `−i(θ a b† + θ̄ a† b)` form.
#[derive(Clone, Debug)]
pub struct CliffordCharge {
    pub g: Operator,
    /// `N_b(1 − N_f)(1 − N_g) + N_f N_g (1 + N_b)`, built from its diagonal.
    pub g_squared_closed_form: Operator,
    pub minus_i_form: Operator,
    pub minus_i_hermiticity_defect: f64,
}

pub fn build_clifford(spec: &SuperchargeSpec) -> Result<CliffordCharge> {
    if spec.variant() != Variant::Clifford {
        return Err(Error::VariantMismatch {
            expected: "clifford",
            found: spec.variant().name(),
        });
    }
    let config = spec.config();
    let g = clifford_charge(config)?;
    let diag: Vec<f64> = fock::enumerate_basis(config)
        .iter()
        .map(|s| {
            let nf = s.fermion_occ[0] as f64;
            let ng = s.fermion_occ[THETA_SLOT] as f64;
            let nb = s.boson_occ[0] as f64;
            nb * (1.0 - nf) * (1.0 - ng) + nf * ng * (1.0 + nb)
        })
        .collect();
    let a = fock::fermion(config, 0)?;
    let theta = fock::fermion(config, THETA_SLOT)?;
    let b = fock::boson(config, 0)?;
    let minus_i_form = (&(&(&theta * &a) * &b.adjoint()) + &(&(&theta.adjoint() * &a.adjoint()) * &b)).scale(-I);
    Ok(CliffordCharge {
        g,
        g_squared_closed_form: Operator::from_real_diagonal(&diag),
        minus_i_hermiticity_defect: minus_i_form.hermiticity_defect(),
        minus_i_form,
    })
}

/// `e^{i G_{θ,θ̄} s}`.
pub fn unitary_iii(spec: &SuperchargeSpec, s: f64) -> Result<Operator> {
    spectral_exp(&build_clifford(spec)?.g, s)
}

/// `|n_f, n_g, n_b⟩` on a Clifford space.
pub fn clifford_state(config: &ModeConfig, n_f: u8, n_g: u8, n_b: usize) -> Result<StateVector> {
    let state = BasisState::new(vec![n_f, n_g], vec![n_b]);
    let index = config
        .index_of(&state)
        .ok_or_else(|| Error::InvalidParameter(format!("no basis state {state}")))?;
    Ok(StateVector::basis(config.dim(), index))
}

/// Largest distance between `e^{iGs}` applied to `|0,0,n⟩`, `|1,1,n⟩` and
///
/// ```text
/// cos(√n s)|0,0,n⟩ + i sin(√n s)|1,1,n−1⟩
/// cos(√(n+1) s)|1,1,n⟩ + i sin(√(n+1) s)|0,0,n+1⟩
/// ```
///
/// over every `n` the cutoff holds.
pub fn clifford_amplitude_defect(spec: &SuperchargeSpec, s: f64) -> Result<f64> {
    let config = spec.config();
    let u = unitary_iii(spec, s)?;
    let cutoff = config.boson_cutoff();
    let mut worst: f64 = 0.0;
    for n in 0..=cutoff {
        let w = (n as f64).sqrt() * s;
        let mut target = clifford_state(config, 0, 0, n)?.scale(C64::new(w.cos(), 0.0));
        if n > 0 {
            target = &target + &clifford_state(config, 1, 1, n - 1)?.scale(C64::new(0.0, w.sin()));
        }
        worst = worst.max(u.apply(&clifford_state(config, 0, 0, n)?).distance(&target));
        if n < cutoff {
            let w = (n as f64 + 1.0).sqrt() * s;
            let target = &clifford_state(config, 1, 1, n)?.scale(C64::new(w.cos(), 0.0))
                + &clifford_state(config, 0, 0, n + 1)?.scale(C64::new(0.0, w.sin()));
            worst = worst.max(u.apply(&clifford_state(config, 1, 1, n)?).distance(&target));
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::safe_defect;

    fn spec(cutoff: usize) -> SuperchargeSpec {
        SuperchargeSpec::clifford(clifford_config(cutoff).unwrap()).unwrap()
    }

    #[test]
    fn square_matches_closed_form() {
        let spec = spec(8);
        let c = build_clifford(&spec).unwrap();
        assert!(c.g.hermiticity_defect() < 1e-14);
        let sq = &c.g * &c.g;
        assert!(safe_defect(spec.config(), &sq, &c.g_squared_closed_form, 1).unwrap() < 1e-12);
        let sq_alt = &c.minus_i_form * &c.minus_i_form;
        assert!(safe_defect(spec.config(), &sq_alt, &c.g_squared_closed_form, 1).unwrap() < 1e-12);
        assert!(c.minus_i_hermiticity_defect < 1e-14);
    }

    #[test]
    fn action_on_paired_states() {
        let spec = spec(6);
        let config = spec.config();
        let g = build_clifford(&spec).unwrap().g;
        for n in 1..=5 {
            let out = g.apply(&clifford_state(config, 0, 0, n).unwrap());
            let target = clifford_state(config, 1, 1, n - 1)
                .unwrap()
                .scale(C64::new((n as f64).sqrt(), 0.0));
            assert!(out.distance(&target) < 1e-14);
            let out = g.apply(&clifford_state(config, 1, 1, n).unwrap());
            let target = clifford_state(config, 0, 0, n + 1)
                .unwrap()
                .scale(C64::new((n as f64 + 1.0).sqrt(), 0.0));
            assert!(out.distance(&target) < 1e-14);
        }
        // the mixed sectors are annihilated
        for n in 0..=6 {
            for (nf, ng) in [(0, 1), (1, 0)] {
                assert_eq!(g.apply(&clifford_state(config, nf, ng, n).unwrap()).norm(), 0.0);
            }
        }
    }

    #[test]
    fn unitary_transfers_a_quantum() {
        let spec = spec(6);
        let config = spec.config();
        let u = unitary_iii(&spec, std::f64::consts::FRAC_PI_2).unwrap();
        let out = u.apply(&clifford_state(config, 0, 0, 1).unwrap());
        let target = clifford_state(config, 1, 1, 0).unwrap().scale(I);
        assert!(out.distance(&target) < 1e-12);
        let vac = clifford_state(config, 0, 0, 0).unwrap();
        assert!(u.apply(&vac).distance(&vac) < 1e-14);
        for s in [0.1, 1.0, std::f64::consts::PI] {
            assert!(clifford_amplitude_defect(&spec, s).unwrap() < 1e-12);
        }
    }
}
