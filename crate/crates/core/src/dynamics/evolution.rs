//! Case Ia: conjugation by `e^{iGs} = cos(√H s) + i G sin(√H s)/√H`.

use crate::error::{Error, Result};
use crate::fock::{self, BasisState, ModeConfig};
use crate::operator::{conjugate, Operator, StateVector, C64, I};

use super::supercharge::{build_g, SuperchargeSpec};

/// `sin(√λ s)/√λ`, continued by `s` at `λ = 0`.
pub fn sinc_sqrt(lambda: f64, s: f64) -> f64 {
    let lambda = lambda.max(0.0);
    if lambda == 0.0 {
        return s;
    }
    let root = lambda.sqrt();
    (root * s).sin() / root
}

fn cos_sqrt(lambda: f64, s: f64) -> f64 {
    (lambda.max(0.0).sqrt() * s).cos()
}

/// `e^{isG}` from the spectral calculus of `H = G·G`. Exact for the
/// truncated `G`: no cutoff identity is assumed.
pub fn spectral_exp(g: &Operator, s: f64) -> Result<Operator> {
    let defect = g.hermiticity_defect();
    if defect > 1e-12 * g.max_abs().max(1.0) {
        return Err(Error::NotHermitian(defect));
    }
    let h = g * g;
    let cos = h.hermitian_function(|l| C64::new(cos_sqrt(l, s), 0.0))?;
    let sinc = h.hermitian_function(|l| C64::new(sinc_sqrt(l, s), 0.0))?;
    Ok(&cos + &(g * &sinc).scale(I))
}

pub fn unitary_ia(spec: &SuperchargeSpec, s: f64) -> Result<Operator> {
    spectral_exp(&build_g(spec)?, s)
}

/// `X(s) = e^{iGs} X e^{−iGs}`.
pub fn heisenberg_ia(spec: &SuperchargeSpec, x: &Operator, s: f64) -> Result<Operator> {
    let u = unitary_ia(spec, s)?;
    if u.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: x.dim(),
        });
    }
    Ok(conjugate(&u, x))
}

fn require_unit_single_mode(config: &ModeConfig) -> Result<()> {
    if config.n_fermion() != 1 || config.n_boson() != 1 || config.couplings() != [1.0] {
        return Err(Error::Config(
            "closed forms need one fermion, one boson and k = 1".into(),
        ));
    }
    Ok(())
}

/// Diagonal `f(N)`.
fn function_of_n(config: &ModeConfig, f: impl Fn(f64) -> f64) -> Operator {
    let diag: Vec<f64> = fock::enumerate_basis(config)
        .iter()
        .map(|s| f((s.fermion_number() + s.boson_number()) as f64))
        .collect();
    Operator::from_real_diagonal(&diag)
}

struct Coefficients {
    cc: Operator,
    ss: Operator,
    sc: Operator,
    cs: Operator,
}

/// `cos√N s cos√(N+1) s`, `sin√N s sin√(N+1) s/√(N(N+1))`,
/// `sin√N s cos√(N+1) s/√N` and `sin√(N+1) s cos√N s/√(N+1)`.
fn coefficients(config: &ModeConfig, s: f64) -> Coefficients {
    Coefficients {
        cc: function_of_n(config, |n| cos_sqrt(n, s) * cos_sqrt(n + 1.0, s)),
        ss: function_of_n(config, |n| sinc_sqrt(n, s) * sinc_sqrt(n + 1.0, s)),
        sc: function_of_n(config, |n| sinc_sqrt(n, s) * cos_sqrt(n + 1.0, s)),
        cs: function_of_n(config, |n| sinc_sqrt(n + 1.0, s) * cos_sqrt(n, s)),
    }
}

fn generators(config: &ModeConfig) -> Result<(Operator, Operator, Operator, Operator)> {
    let a = fock::fermion(config, 0)?;
    let b = fock::boson(config, 0)?;
    Ok((a.adjoint(), a, b.adjoint(), b))
}

/// `a(s)` with the rearranged coefficients of the `aa†b` and `a†ab` terms:
///
/// ```text
/// cc·a + ss·a†b² + i·sc·a†ab − i·cs·aa†b
/// ```
pub fn closed_form_a_s(config: &ModeConfig, s: f64) -> Result<Operator> {
    require_unit_single_mode(config)?;
    let (ad, a, _, b) = generators(config)?;
    let k = coefficients(config, s);
    let terms = [
        &k.cc * &a,
        &k.ss * &(&(&ad * &b) * &b),
        (&k.sc * &(&(&ad * &a) * &b)).scale(I),
        (&k.cs * &(&(&a * &ad) * &b)).scale(-I),
    ];
    Ok(terms.iter().fold(Operator::zeros(config.dim()), |acc, t| &acc + t))
}

/// `a(s)` in the printed arrangement
/// `cc·a + ss·a†b² + i·sc·aa†b − i·cs·a†ab`.
pub fn printed_closed_form_a_s(config: &ModeConfig, s: f64) -> Result<Operator> {
    require_unit_single_mode(config)?;
    let (ad, a, _, b) = generators(config)?;
    let k = coefficients(config, s);
    let terms = [
        &k.cc * &a,
        &k.ss * &(&(&ad * &b) * &b),
        (&k.sc * &(&(&a * &ad) * &b)).scale(I),
        (&k.cs * &(&(&ad * &a) * &b)).scale(-I),
    ];
    Ok(terms.iter().fold(Operator::zeros(config.dim()), |acc, t| &acc + t))
}

/// `b(s) = cc·b + ss·(b²b† − 2aa†b) + i·sc·(ab†b + a†b²) − i·cs·(abb† + a†b²)`.
pub fn closed_form_b_s(config: &ModeConfig, s: f64) -> Result<Operator> {
    require_unit_single_mode(config)?;
    let (ad, a, bd, b) = generators(config)?;
    let k = coefficients(config, s);
    let a_ad_b = &(&a * &ad) * &b;
    let ad_b_b = &(&ad * &b) * &b;
    let terms = [
        &k.cc * &b,
        &k.ss * &(&(&(&b * &b) * &bd) - &a_ad_b.scale_real(2.0)),
        (&k.sc * &(&(&(&a * &bd) * &b) + &ad_b_b)).scale(I),
        (&k.cs * &(&(&(&a * &b) * &bd) + &ad_b_b)).scale(-I),
    ];
    Ok(terms.iter().fold(Operator::zeros(config.dim()), |acc, t| &acc + t))
}

/// Free-charge action on a basis state, mode by mode:
/// `G|…⟩ = Σ_i k_i (√(m_i+1) |n_i−1, m_i+1⟩ + √m_i |n_i+1, m_i−1⟩)` with the
/// Jordan–Wigner sign of mode `i`. Terms leaving the cutoff are dropped.
pub fn free_charge_action(config: &ModeConfig, state: &BasisState) -> Vec<(BasisState, f64)> {
    let mut out = Vec::new();
    let pairs = config.n_fermion().min(config.n_boson());
    for i in 0..pairs {
        let k = config.couplings()[i];
        let sign = if state.fermion_occ[..i].iter().map(|&n| n as usize).sum::<usize>() % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        let m = state.boson_occ[i];
        let mut next = state.clone();
        if state.fermion_occ[i] == 1 && m < config.boson_cutoff() {
            next.fermion_occ[i] = 0;
            next.boson_occ[i] = m + 1;
            out.push((next, sign * k * ((m + 1) as f64).sqrt()));
        } else if state.fermion_occ[i] == 0 && m > 0 {
            next.fermion_occ[i] = 1;
            next.boson_occ[i] = m - 1;
            out.push((next, sign * k * (m as f64).sqrt()));
        }
    }
    out
}

/// `E = Σ k_i² (n_i + m_i)` of a basis state.
pub fn free_energy(config: &ModeConfig, state: &BasisState) -> f64 {
    config
        .couplings()
        .iter()
        .enumerate()
        .map(|(i, k)| k * k * (state.fermion_occ[i] as f64 + state.boson_occ[i] as f64))
        .sum()
}

/// `e^{iGs}|state⟩ = cos(√E s)|state⟩ + i sin(√E s)/√E · G|state⟩` with
/// `G|state⟩` from [`free_charge_action`].
pub fn closed_form_evolved_state(config: &ModeConfig, state: &BasisState, s: f64) -> Result<StateVector> {
    let index = config
        .index_of(state)
        .ok_or_else(|| Error::InvalidParameter(format!("state {state} outside the space")))?;
    let e = free_energy(config, state);
    let mut amps = vec![C64::new(0.0, 0.0); config.dim()];
    amps[index] = C64::new(cos_sqrt(e, s), 0.0);
    for (target, weight) in free_charge_action(config, state) {
        let j = config.index_of(&target).expect("action stays inside the space");
        amps[j] += I * (sinc_sqrt(e, s) * weight);
    }
    Ok(StateVector::from_slice(&amps))
}

/// `cos²(√E s) + sin²(√E s)/E · Σ_i k_i² (m_i + 1 if n_i = 1, m_i if n_i = 0)`.
pub fn closed_form_norm(config: &ModeConfig, state: &BasisState, s: f64) -> f64 {
    let e = free_energy(config, state);
    let sum: f64 = config
        .couplings()
        .iter()
        .enumerate()
        .map(|(i, k)| {
            let m = state.boson_occ[i] as f64;
            k * k * if state.fermion_occ[i] == 1 { m + 1.0 } else { m }
        })
        .sum();
    let sinc = sinc_sqrt(e, s);
    cos_sqrt(e, s).powi(2) + sinc * sinc * sum
}

/// `|⟨j|U|from⟩|²` for every basis index `j`.
pub fn transition_probabilities(u: &Operator, from: usize) -> Vec<f64> {
    (0..u.dim()).map(|j| u.entry(j, from).norm_sqr()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::safe_defect;
    use crate::operator::comm;

    fn single(cutoff: usize) -> (ModeConfig, SuperchargeSpec) {
        let config = ModeConfig::single_mode(cutoff).unwrap();
        (config.clone(), SuperchargeSpec::free(config).unwrap())
    }

    #[test]
    fn sinc_limits() {
        assert_eq!(sinc_sqrt(0.0, 0.7), 0.7);
        assert_eq!(sinc_sqrt(-1e-17, 0.7), 0.7);
        assert!((sinc_sqrt(4.0, 0.5) - 1f64.sin() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn unitary_on_basis_states() {
        let (config, spec) = single(6);
        let u = unitary_ia(&spec, std::f64::consts::FRAC_PI_2).unwrap();
        let vac = StateVector::basis(config.dim(), 0);
        assert!(u.apply(&vac).distance(&vac) < 1e-14);
        let from = config.index_of(&BasisState::new(vec![0], vec![1])).unwrap();
        let to = config.index_of(&BasisState::new(vec![1], vec![0])).unwrap();
        let out = u.apply(&StateVector::basis(config.dim(), from));
        assert!((out.amplitude(to) - I).norm() < 1e-14);
        let p = fock::safe_projector(&config);
        let uu = &u * &u.adjoint();
        assert!((&uu - &Operator::identity(config.dim())).sandwich(&p).max_abs() < 1e-12);
    }

    #[test]
    fn group_law_and_commuting_number_flow() {
        let config = ModeConfig::paired(vec![1.0, 0.7], 4).unwrap();
        let spec = SuperchargeSpec::free(config.clone()).unwrap();
        let us = unitary_ia(&spec, 0.4).unwrap();
        let ut = unitary_ia(&spec, 1.3).unwrap();
        let ust = unitary_ia(&spec, 1.7).unwrap();
        assert!((&(&us * &ut) - &ust).max_abs() < 1e-12);
        let n = fock::number_ops(&config).total;
        let v = n.hermitian_function(|x| C64::from_polar(1.0, 0.9 * x)).unwrap();
        assert!(comm(&us, &v).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn heisenberg_conserves_number() {
        let (config, spec) = single(8);
        let n = fock::number_ops(&config).total;
        let ns = heisenberg_ia(&spec, &n, 0.83).unwrap();
        assert!((&ns - &n).max_abs() < 1e-12);
        assert!(heisenberg_ia(&spec, &Operator::identity(3), 0.1).is_err());
    }

    #[test]
    fn closed_forms_at_zero() {
        let (config, _) = single(5);
        let a = fock::fermion(&config, 0).unwrap();
        let b = fock::boson(&config, 0).unwrap();
        assert!((&closed_form_a_s(&config, 0.0).unwrap() - &a).max_abs() < 1e-15);
        assert!((&printed_closed_form_a_s(&config, 0.0).unwrap() - &a).max_abs() < 1e-15);
        assert!((&closed_form_b_s(&config, 0.0).unwrap() - &b).max_abs() < 1e-15);
        let two = ModeConfig::paired(vec![1.0, 1.0], 2).unwrap();
        assert!(closed_form_a_s(&two, 0.1).is_err());
    }

    #[test]
    fn closed_forms_against_conjugation() {
        let (config, spec) = single(12);
        let s = 0.37;
        let a = fock::fermion(&config, 0).unwrap();
        let b = fock::boson(&config, 0).unwrap();
        let a_s = heisenberg_ia(&spec, &a, s).unwrap();
        let b_s = heisenberg_ia(&spec, &b, s).unwrap();
        assert!(safe_defect(&config, &closed_form_a_s(&config, s).unwrap(), &a_s, 2).unwrap() < 1e-9);
        assert!(safe_defect(&config, &closed_form_b_s(&config, s).unwrap(), &b_s, 2).unwrap() < 1e-9);
        let printed = safe_defect(&config, &printed_closed_form_a_s(&config, s).unwrap(), &a_s, 2).unwrap();
        assert!(printed > 0.1);
    }

    #[test]
    fn state_action_matches_operator() {
        let config = ModeConfig::paired(vec![1.0, 0.7], 4).unwrap();
        let g = build_g(&SuperchargeSpec::free(config.clone()).unwrap()).unwrap();
        for (i, state) in fock::enumerate_basis(&config).iter().enumerate() {
            let mut amps = vec![C64::new(0.0, 0.0); config.dim()];
            for (t, w) in free_charge_action(&config, state) {
                amps[config.index_of(&t).unwrap()] += C64::new(w, 0.0);
            }
            let direct = g.apply(&StateVector::basis(config.dim(), i));
            assert!(direct.distance(&StateVector::from_slice(&amps)) < 1e-14, "{state}");
        }
    }

    #[test]
    fn two_mode_probabilities_sum_to_one() {
        let config = ModeConfig::paired(vec![1.0, 0.7], 5).unwrap();
        let spec = SuperchargeSpec::free(config.clone()).unwrap();
        let s = 0.9;
        let u = unitary_ia(&spec, s).unwrap();
        for (i, state) in fock::enumerate_basis(&config).iter().enumerate() {
            if state.boson_occ.iter().any(|&m| m >= 5) {
                continue;
            }
            let closed = closed_form_evolved_state(&config, state, s).unwrap();
            assert!(closed.distance(&u.apply(&StateVector::basis(config.dim(), i))) < 1e-12);
            assert!((closed_form_norm(&config, state, s) - 1.0).abs() < 1e-12);
            let total: f64 = transition_probabilities(&u, i).iter().sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }
}
