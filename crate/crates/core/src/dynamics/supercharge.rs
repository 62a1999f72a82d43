use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{self, ModeConfig, ModeKind};
use crate::operator::{comm, Operator, C64, I};

/// Which generator a [`SuperchargeSpec`] builds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Variant {
    /// `G = Σ k_i (a_i b_i† + a_i† b_i)` with the couplings of the config.
    Free,
    /// `G = Q̃ + Q̃†` with `Q̃ = (b† + g b†b) a`.
    WessZumino { g: f64 },
    /// `G = θ a b† + b a† θ̄`; fermion slot 0 is `a`, slot 1 is `θ`.
    Clifford,
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Free => "free",
            Variant::WessZumino { .. } => "wess-zumino",
            Variant::Clifford => "clifford",
        }
    }
}

/// A generator together with the space it acts on.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperchargeSpec {
    config: ModeConfig,
    variant: Variant,
}

impl SuperchargeSpec {
    pub fn new(config: ModeConfig, variant: Variant) -> Result<Self> {
        let (f, b) = (config.n_fermion(), config.n_boson());
        match variant {
            Variant::Free if f != b => {
                return Err(Error::Config(format!(
                    "free supercharge pairs fermion i with boson i, got F={f}, B={b}"
                )))
            }
            Variant::WessZumino { g } if f != 1 || b != 1 || !g.is_finite() => {
                return Err(Error::Config(format!(
                    "Wess-Zumino charge needs F=B=1 and finite g, got F={f}, B={b}, g={g}"
                )))
            }
            Variant::Clifford if f != 2 || b != 1 => {
                return Err(Error::Config(format!(
                    "Clifford charge needs one fermion plus the θ slot and one boson, got F={f}, B={b}"
                )))
            }
            _ => {}
        }
        Ok(Self { config, variant })
    }

    pub fn free(config: ModeConfig) -> Result<Self> {
        Self::new(config, Variant::Free)
    }

    pub fn wess_zumino(config: ModeConfig, g: f64) -> Result<Self> {
        Self::new(config, Variant::WessZumino { g })
    }

    pub fn clifford(config: ModeConfig) -> Result<Self> {
        Self::new(config, Variant::Clifford)
    }

    pub fn config(&self) -> &ModeConfig {
        &self.config
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    fn require(&self, expected: &'static str) -> Result<()> {
        if self.variant.name() != expected {
            return Err(Error::VariantMismatch {
                expected,
                found: self.variant.name(),
            });
        }
        Ok(())
    }
}

/// The generator `G` of the spec.
pub fn build_g(spec: &SuperchargeSpec) -> Result<Operator> {
    let config = spec.config();
    match spec.variant() {
        Variant::Free => {
            let mut g = Operator::zeros(config.dim());
            for (i, &k) in config.couplings().iter().enumerate() {
                let a = fock::fermion(config, i)?;
                let b = fock::boson(config, i)?;
                let term = &(&a * &b.adjoint()) + &(&a.adjoint() * &b);
                g = &g + &term.scale_real(k);
            }
            Ok(g)
        }
        Variant::WessZumino { .. } => Ok(build_wz(spec)?.g),
        Variant::Clifford => super::clifford::clifford_charge(config),
    }
}

/// `H = Σ k_i² (N_fi + N_bi)`, built from its diagonal.
pub fn build_h(spec: &SuperchargeSpec) -> Result<Operator> {
    spec.require("free")?;
    let config = spec.config();
    let diag: Vec<f64> = fock::enumerate_basis(config)
        .iter()
        .map(|s| {
            config
                .couplings()
                .iter()
                .enumerate()
                .map(|(i, k)| k * k * (s.fermion_occ[i] as f64 + s.boson_occ[i] as f64))
                .sum()
        })
        .collect();
    Ok(Operator::from_real_diagonal(&diag))
}

fn require_single_mode(config: &ModeConfig) -> Result<()> {
    if config.n_fermion() != 1 || config.n_boson() != 1 {
        return Err(Error::Config(format!(
            "operation needs F=B=1, got F={}, B={}",
            config.n_fermion(),
            config.n_boson()
        )));
    }
    Ok(())
}

/// `G_A = i(a†b − ab†)`.
pub fn build_ga(config: &ModeConfig) -> Result<Operator> {
    require_single_mode(config)?;
    let a = fock::fermion(config, 0)?;
    let b = fock::boson(config, 0)?;
    Ok((&(&a.adjoint() * &b) - &(&a * &b.adjoint())).scale(I))
}

/// `[G, G_A]` by matrix products, with the free single-mode `G`.
pub fn commutator_g_ga(config: &ModeConfig) -> Result<Operator> {
    let g = build_g(&SuperchargeSpec::free(config.clone())?)?;
    comm(&g, &build_ga(config)?)
}

/// `2i(N_b − N_f − 2 N_f N_b)`.
pub fn commutator_g_ga_closed_form(config: &ModeConfig) -> Result<Operator> {
    require_single_mode(config)?;
    let diag: Vec<C64> = fock::enumerate_basis(config)
        .iter()
        .map(|s| {
            let nf = s.fermion_occ[0] as f64;
            let nb = s.boson_occ[0] as f64;
            C64::new(0.0, 2.0 * (nb - nf - 2.0 * nf * nb))
        })
        .collect();
    Ok(Operator::from_diagonal(&diag))
}

/// `e^{i N_f φ}` as a diagonal operator.
pub fn fermion_phase(config: &ModeConfig, angle: f64) -> Operator {
    let diag: Vec<C64> = fock::enumerate_basis(config)
        .iter()
        .map(|s| C64::from_polar(1.0, angle * s.fermion_number() as f64))
        .collect();
    Operator::from_diagonal(&diag)
}

/// The deformed charges of the Wess–Zumino toy model.
#[derive(Clone, Debug)]
pub struct WessZumino {
    pub q: Operator,
    pub q_dag: Operator,
    pub g: Operator,
    pub h: Operator,
}

pub fn build_wz(spec: &SuperchargeSpec) -> Result<WessZumino> {
    let Variant::WessZumino { g: coupling } = spec.variant() else {
        return Err(Error::VariantMismatch {
            expected: "wess-zumino",
            found: spec.variant().name(),
        });
    };
    let config = spec.config();
    let a = fock::fermion(config, 0)?;
    let b = fock::boson(config, 0)?;
    let bd = b.adjoint();
    let q = &(&bd + &(&bd * &b).scale_real(coupling)) * &a;
    let q_dag = q.adjoint();
    let g = &q + &q_dag;
    let h = &g * &g;
    Ok(WessZumino { q, q_dag, g, h })
}

/// The expression `H_0 + g H_0 (b + b†) − g b† + g² (b†b)²` with `H_0 = N`,
/// built term by term.
pub fn wz_closed_form(config: &ModeConfig, g: f64) -> Result<Operator> {
    require_single_mode(config)?;
    let b = fock::boson(config, 0)?;
    let bd = b.adjoint();
    let h0 = fock::number_ops(config).total;
    let nb = fock::mode_number(config, ModeKind::Boson, 0)?;
    let mut h = h0.clone();
    h = &h + &(&h0 * &(&b + &bd)).scale_real(g);
    h = &h - &bd.scale_real(g);
    h = &h + &(&nb * &nb).scale_real(g * g);
    Ok(h)
}

/// Comparison of [`wz_closed_form`] with the matrix square `G²`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WzClosedFormReport {
    pub g: f64,
    pub cutoff: usize,
    pub margin: usize,
    /// Max-entry difference on the safe subspace.
    pub discrepancy: f64,
    /// Max-entry defect `‖X − X†‖` of the closed form.
    pub hermiticity_defect: f64,
}

pub const WZ_MARGIN: usize = 4;

pub fn wz_closed_form_compare(g: f64, cutoff: usize) -> Result<WzClosedFormReport> {
    let config = ModeConfig::single_mode(cutoff)?.with_margin(WZ_MARGIN)?;
    let wz = build_wz(&SuperchargeSpec::wess_zumino(config.clone(), g)?)?;
    let literal = wz_closed_form(&config, g)?;
    Ok(WzClosedFormReport {
        g,
        cutoff,
        margin: WZ_MARGIN,
        discrepancy: fock::safe_defect(&config, &literal, &wz.h, WZ_MARGIN)?,
        hermiticity_defect: literal.hermiticity_defect(),
    })
}

/// Lowest `count` eigenvalues of `H_g` at cutoff `Λ`.
///
/// `H_g` is compressed to `n_b ≤ Λ − 1` first. The full truncated square
/// has a spurious zero mode `|1, Λ⟩` because `b b†` vanishes on the top
/// level.
pub fn wz_spectrum(g: f64, cutoff: usize, count: usize) -> Result<Vec<f64>> {
    let config = ModeConfig::single_mode(cutoff)?;
    let wz = build_wz(&SuperchargeSpec::wess_zumino(config.clone(), g)?)?;
    let mut values = fock::restrict(&config, &wz.h, 1)?.eigenvalues_hermitian()?;
    values.truncate(count);
    Ok(values)
}

/// Max difference of the lowest `count` eigenvalues between cutoffs `Λ`
/// and `Λ + 4`.
pub fn wz_convergence(g: f64, cutoff: usize, count: usize) -> Result<f64> {
    let low = wz_spectrum(g, cutoff, count)?;
    let high = wz_spectrum(g, cutoff + WZ_MARGIN, count)?;
    Ok(low.iter().zip(&high).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{safe_defect, BasisState};
    use crate::operator::{anticomm, conjugate, StateVector};

    #[test]
    fn spec_validation() {
        let two = ModeConfig::new(2, 1, 3, vec![1.0, 0.0], 1).unwrap();
        assert!(SuperchargeSpec::free(two.clone()).is_err());
        assert!(SuperchargeSpec::clifford(two.clone()).is_ok());
        assert!(SuperchargeSpec::wess_zumino(two, 0.3).is_err());
        let one = ModeConfig::single_mode(3).unwrap();
        assert!(SuperchargeSpec::wess_zumino(one.clone(), f64::NAN).is_err());
        let spec = SuperchargeSpec::wess_zumino(one, 0.3).unwrap();
        assert!(matches!(build_h(&spec), Err(Error::VariantMismatch { .. })));
    }

    #[test]
    fn free_charge_single_mode_action() {
        let config = ModeConfig::single_mode(6).unwrap();
        let g = build_g(&SuperchargeSpec::free(config.clone()).unwrap()).unwrap();
        assert!(g.hermiticity_defect() < 1e-14);
        for n in 1..=6usize {
            let from = config.index_of(&BasisState::new(vec![0], vec![n])).unwrap();
            let to = config.index_of(&BasisState::new(vec![1], vec![n - 1])).unwrap();
            let out = g.apply(&StateVector::basis(config.dim(), from));
            assert!((out.amplitude(to) - C64::new((n as f64).sqrt(), 0.0)).norm() < 1e-14);
            assert!((out.norm() - (n as f64).sqrt()).abs() < 1e-14);
        }
        assert!(g.apply(&StateVector::basis(config.dim(), 0)).norm() == 0.0);
        let parity = fock::parity_operator(&config);
        assert!(anticomm(&g, &parity).unwrap().max_abs() < 1e-14);
        let n = fock::number_ops(&config).total;
        assert!(comm(&n, &g).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn h_is_the_square_of_g() {
        let config = ModeConfig::paired(vec![1.0, 0.5], 4).unwrap();
        let spec = SuperchargeSpec::free(config.clone()).unwrap();
        let g = build_g(&spec).unwrap();
        let h = build_h(&spec).unwrap();
        assert!(safe_defect(&config, &(&g * &g), &h, 1).unwrap() < 1e-12);
        let idx = config.index_of(&BasisState::new(vec![1, 0], vec![2, 3])).unwrap();
        assert!((h.entry(idx, idx).re - 3.75).abs() < 1e-14);
        assert!(h.real_diagonal().iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn ga_commutator_and_equivalence() {
        let config = ModeConfig::single_mode(8).unwrap();
        let ga = build_ga(&config).unwrap();
        assert!(ga.hermiticity_defect() < 1e-14);
        let lhs = commutator_g_ga(&config).unwrap();
        let rhs = commutator_g_ga_closed_form(&config).unwrap();
        assert!(safe_defect(&config, &lhs, &rhs, 1).unwrap() < 1e-10);
        let g = build_g(&SuperchargeSpec::free(config.clone()).unwrap()).unwrap();
        let v = fermion_phase(&config, std::f64::consts::FRAC_PI_2);
        assert!((&conjugate(&v, &g) - &ga).max_abs() < 1e-14);
        assert!(build_ga(&ModeConfig::paired(vec![1.0, 1.0], 2).unwrap()).is_err());
    }

    #[test]
    fn wess_zumino_identities() {
        let config = ModeConfig::single_mode(12).unwrap().with_margin(4).unwrap();
        let free = build_wz(&SuperchargeSpec::wess_zumino(config.clone(), 0.0).unwrap()).unwrap();
        let n = fock::number_ops(&config).total;
        assert!(safe_defect(&config, &free.h, &n, 1).unwrap() < 1e-12);
        let wz = build_wz(&SuperchargeSpec::wess_zumino(config.clone(), 0.3).unwrap()).unwrap();
        assert_eq!(wz.q_dag, wz.q.adjoint());
        let anti = anticomm(&wz.q, &wz.q_dag).unwrap();
        assert!(safe_defect(&config, &anti, &wz.h, 4).unwrap() < 1e-9);
        let p = fock::safe_projector(&config);
        assert!(comm(&wz.g, &wz.h).unwrap().sandwich(&p).max_abs() < 1e-9);
        assert!(wz.h.eigenvalues_hermitian().unwrap()[0] > -1e-10);
    }

    #[test]
    fn wz_closed_form_report() {
        let zero = wz_closed_form_compare(0.0, 12).unwrap();
        assert!(zero.discrepancy < 1e-12);
        assert_eq!(zero.hermiticity_defect, 0.0);
        let report = wz_closed_form_compare(0.3, 12).unwrap();
        assert!(report.discrepancy.is_finite());
        assert!(report.hermiticity_defect > 0.0);
    }

    #[test]
    fn wz_free_spectrum_is_the_number_spectrum() {
        let spectrum = wz_spectrum(0.0, 10, 7).unwrap();
        let expected = [0.0, 1.0, 1.0, 2.0, 2.0, 3.0, 3.0];
        let config = ModeConfig::single_mode(10).unwrap();
        let full = build_wz(&SuperchargeSpec::wess_zumino(config, 0.0).unwrap()).unwrap();
        let raw = full.h.eigenvalues_hermitian().unwrap();
        assert!(raw[0].abs() < 1e-12 && raw[1].abs() < 1e-12);
        for (x, y) in spectrum.iter().zip(expected) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
