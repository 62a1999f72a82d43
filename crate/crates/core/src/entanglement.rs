//! Reduced density matrices and von Neumann entropies of supercharge
//! eigenvectors. Entropies are in nats.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{self, BasisState, ModeConfig};
use crate::operator::{Operator, StateVector, C64};
use crate::tolerances::{DENSITY as DENSITY_TOL, ROOT as ROOT_TOL};

/// Occupations of the traced-out modes.
type TracedKey = (Vec<u8>, Vec<usize>);

/// Hermitian, positive semidefinite, unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: Operator,
}

impl DensityMatrix {
    pub fn new(matrix: Operator) -> Result<Self> {
        let herm = matrix.hermiticity_defect();
        if herm > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("hermiticity defect {herm:e}")));
        }
        let trace = matrix.trace();
        if (trace - C64::new(1.0, 0.0)).norm() > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("trace {trace}")));
        }
        let min = matrix.eigenvalues_hermitian()?.first().copied().unwrap_or(0.0);
        if min < -DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { matrix })
    }

    pub fn from_pure(state: &StateVector) -> Result<Self> {
        check_normalized(state)?;
        Self::new(Operator::outer(state, state))
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &Operator {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.matrix.eigenvalues_hermitian().expect("validated at construction")
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// `Tr(ρ X)`.
    pub fn expectation(&self, x: &Operator) -> C64 {
        (&self.matrix * x).trace()
    }
}

fn check_normalized(state: &StateVector) -> Result<()> {
    let norm = state.norm();
    if (norm - 1.0).abs() > DENSITY_TOL {
        return Err(Error::Unnormalized(norm));
    }
    Ok(())
}

/// The modes kept by a partial trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subsystem {
    pub fermions: Vec<usize>,
    pub bosons: Vec<usize>,
}

impl Subsystem {
    pub fn all_fermions(config: &ModeConfig) -> Self {
        Self {
            fermions: (0..config.n_fermion()).collect(),
            bosons: Vec::new(),
        }
    }

    pub fn all_bosons(config: &ModeConfig) -> Self {
        Self {
            fermions: Vec::new(),
            bosons: (0..config.n_boson()).collect(),
        }
    }

    pub fn fermion(index: usize) -> Self {
        Self {
            fermions: vec![index],
            bosons: Vec::new(),
        }
    }

    fn validate(&self, config: &ModeConfig) -> Result<()> {
        let bad_f = self.fermions.iter().find(|&&i| i >= config.n_fermion());
        let bad_b = self.bosons.iter().find(|&&j| j >= config.n_boson());
        if let Some(&i) = bad_f {
            return Err(Error::IndexOutOfRange {
                kind: fock::ModeKind::Fermion,
                index: i,
                count: config.n_fermion(),
            });
        }
        if let Some(&j) = bad_b {
            return Err(Error::IndexOutOfRange {
                kind: fock::ModeKind::Boson,
                index: j,
                count: config.n_boson(),
            });
        }
        Ok(())
    }

    /// Index of the kept part of `state`, using the same ordering rule as
    /// the full basis: kept bosons first, kept fermions fastest.
    fn kept_index(&self, config: &ModeConfig, state: &BasisState) -> usize {
        let radix = config.boson_cutoff() + 1;
        let boson = self.bosons.iter().fold(0, |acc, &j| acc * radix + state.boson_occ[j]);
        let fermion = self
            .fermions
            .iter()
            .fold(0, |acc, &i| acc * 2 + state.fermion_occ[i] as usize);
        fermion + (1 << self.fermions.len()) * boson
    }

    fn traced_key(&self, state: &BasisState) -> TracedKey {
        let f = (0..state.fermion_occ.len())
            .filter(|i| !self.fermions.contains(i))
            .map(|i| state.fermion_occ[i])
            .collect();
        let b = (0..state.boson_occ.len())
            .filter(|j| !self.bosons.contains(j))
            .map(|j| state.boson_occ[j])
            .collect();
        (f, b)
    }

    fn dim(&self, config: &ModeConfig) -> usize {
        (1 << self.fermions.len()) * (config.boson_cutoff() + 1).pow(self.bosons.len() as u32)
    }
}

/// Partial trace of `|ψ⟩⟨ψ|` over every mode not in `keep`.
///
/// Tracing out a fermion mode is done on the occupation-number basis
/// directly: the reduced state of a JW-ordered product basis is sign-free
/// because every kept/traced pair of basis vectors differs only in the
/// kept occupations.
pub fn reduce(config: &ModeConfig, state: &StateVector, keep: &Subsystem) -> Result<DensityMatrix> {
    check_normalized(state)?;
    if state.dim() != config.dim() {
        return Err(Error::DimensionMismatch {
            left: config.dim(),
            right: state.dim(),
        });
    }
    keep.validate(config)?;
    let basis = fock::enumerate_basis(config);
    let mut groups: BTreeMap<TracedKey, Vec<(usize, C64)>> = BTreeMap::new();
    for (i, s) in basis.iter().enumerate() {
        let amp = state.amplitude(i);
        if amp.norm() == 0.0 {
            continue;
        }
        groups
            .entry(keep.traced_key(s))
            .or_default()
            .push((keep.kept_index(config, s), amp));
    }
    let d = keep.dim(config);
    let mut rho = DMatrix::<C64>::zeros(d, d);
    for entries in groups.values() {
        for &(r, x) in entries {
            for &(c, y) in entries {
                rho[(r, c)] += x * y.conj();
            }
        }
    }
    DensityMatrix::new(Operator::from_matrix(rho))
}

/// `−Σ λ ln λ` with `0 ln 0 = 0`.
pub fn entropy(rho: &DensityMatrix) -> f64 {
    entropy_of(&rho.eigenvalues())
}

pub fn entropy_of(values: &[f64]) -> f64 {
    values.iter().filter(|&&l| l > 0.0).map(|&l| -l * l.ln()).sum()
}

/// `(|1, n−1⟩ ± |0, n⟩)/√2` for the single-mode space; the vacuum twice for
/// `n = 0`.
pub fn single_mode_eigenvectors(config: &ModeConfig, n: usize) -> Result<(StateVector, StateVector)> {
    if config.n_fermion() != 1 || config.n_boson() != 1 {
        return Err(Error::Config("single-mode eigenvectors need F=B=1".into()));
    }
    if n > config.boson_cutoff() {
        return Err(Error::InvalidParameter(format!(
            "n = {n} exceeds the cutoff {}",
            config.boson_cutoff()
        )));
    }
    let basis = |f: u8, b: usize| {
        StateVector::basis(
            config.dim(),
            config.index_of(&BasisState::new(vec![f], vec![b])).unwrap(),
        )
    };
    if n == 0 {
        return Ok((basis(0, 0), basis(0, 0)));
    }
    let (x, y) = (basis(1, n - 1), basis(0, n));
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Ok(((&x + &y).scale(h), (&x - &y).scale(h)))
}

/// Two-mode superposition parameters. `k₁ = 1`, `k₂ = k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoModeParams {
    pub n_b1: usize,
    pub n_b2: usize,
    pub k: f64,
    pub a: C64,
    pub b: C64,
}

impl TwoModeParams {
    pub fn new(n_b1: usize, n_b2: usize, k: f64, a: C64, b: C64) -> Result<Self> {
        let norm = a.norm_sqr() + b.norm_sqr();
        if (norm - 1.0).abs() > DENSITY_TOL {
            return Err(Error::Unnormalized(norm.sqrt()));
        }
        if !(k.is_finite() && k >= 0.0) {
            return Err(Error::InvalidParameter(format!("coupling ratio {k}")));
        }
        Ok(Self { n_b1, n_b2, k, a, b })
    }

    /// `A = sin φ`, `B = cos φ`.
    pub fn from_mixing(n_b1: usize, n_b2: usize, k: f64, phi: f64) -> Result<Self> {
        Self::new(n_b1, n_b2, k, C64::new(phi.sin(), 0.0), C64::new(phi.cos(), 0.0))
    }

    /// The space realising `k̄` directly: `n_b1 = n_b2 = 0`, `k = k̄`.
    pub fn with_kbar(kbar: f64, a: C64, b: C64) -> Result<Self> {
        Self::new(0, 0, kbar, a, b)
    }

    /// `k̄ = k √((n_b2 + 1)/(n_b1 + 1))`.
    pub fn kbar(&self) -> f64 {
        self.k * ((self.n_b2 as f64 + 1.0) / (self.n_b1 as f64 + 1.0)).sqrt()
    }

    /// The smallest two-mode space holding `ψ₁ … ψ₄`.
    pub fn config(&self) -> Result<ModeConfig> {
        let cutoff = self.n_b1.max(self.n_b2) + 1;
        ModeConfig::new(2, 2, cutoff, vec![1.0, self.k], 0)
    }
}

/// Sign choice of the printed `±` in the eigenvector components.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigenBranch {
    Upper,
    Lower,
}

impl EigenBranch {
    pub fn sign(self) -> f64 {
        match self {
            EigenBranch::Upper => 1.0,
            EigenBranch::Lower => -1.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TwoModeBasis {
    pub config: ModeConfig,
    /// `ψ₁ = |1, n_b1, 1, n_b2⟩`, `ψ₂ = |1, n_b1, 0, n_b2+1⟩`,
    /// `ψ₃ = |0, n_b1+1, 1, n_b2⟩`, `ψ₄ = |0, n_b1+1, 0, n_b2+1⟩`.
    pub psi: [StateVector; 4],
    pub phi1: StateVector,
    pub phi2: StateVector,
    /// Common `G`-eigenvalue of `Φ₁`, `Φ₂`.
    pub eigenvalue: f64,
}

/// Labels are `(n_f1, n_b1, n_f2, n_b2)`.
fn two_mode_state(config: &ModeConfig, nf1: u8, nb1: usize, nf2: u8, nb2: usize) -> StateVector {
    let index = config
        .index_of(&BasisState::new(vec![nf1, nf2], vec![nb1, nb2]))
        .expect("occupations checked against the cutoff");
    StateVector::basis(config.dim(), index)
}

/// `Φ₁ = (√(1+k̄²), ∓k̄, ±1, 0)/√(2(1+k̄²))`,
/// `Φ₂ = (0, ±1, ±k̄, √(1+k̄²))/√(2(1+k̄²))` on `ψ₁ … ψ₄`.
pub fn two_mode_eigenbasis_in(
    config: &ModeConfig,
    params: &TwoModeParams,
    branch: EigenBranch,
) -> Result<TwoModeBasis> {
    let (n1, n2) = (params.n_b1, params.n_b2);
    if n1.max(n2) + 1 > config.boson_cutoff()
        || config.n_fermion() != 2
        || config.n_boson() != 2
        || config.couplings() != [1.0, params.k]
    {
        return Err(Error::InvalidParameter(format!(
            "space does not hold the two-mode states for n_b = ({n1}, {n2}), k = {}",
            params.k
        )));
    }
    let psi = [
        two_mode_state(config, 1, n1, 1, n2),
        two_mode_state(config, 1, n1, 0, n2 + 1),
        two_mode_state(config, 0, n1 + 1, 1, n2),
        two_mode_state(config, 0, n1 + 1, 0, n2 + 1),
    ];
    let kb = params.kbar();
    let root = (1.0 + kb * kb).sqrt();
    let norm = 1.0 / (2.0 * (1.0 + kb * kb)).sqrt();
    let pm = branch.sign();
    let combine = |w: [f64; 4]| {
        w.iter()
            .zip(&psi)
            .fold(StateVector::zeros(config.dim()), |acc, (&c, p)| {
                &acc + &p.scale(C64::new(c * norm, 0.0))
            })
    };
    let phi1 = combine([root, -pm * kb, pm, 0.0]);
    let phi2 = combine([0.0, pm, pm * kb, root]);
    let energy = 1.0 + n1 as f64 + params.k * params.k * (1.0 + n2 as f64);
    Ok(TwoModeBasis {
        config: config.clone(),
        psi,
        phi1,
        phi2,
        eigenvalue: pm * energy.sqrt(),
    })
}

pub fn two_mode_eigenbasis(params: &TwoModeParams, branch: EigenBranch) -> Result<TwoModeBasis> {
    two_mode_eigenbasis_in(&params.config()?, params, branch)
}

/// `A Φ₁ + B Φ₂`.
pub fn superposition(basis: &TwoModeBasis, params: &TwoModeParams) -> StateVector {
    &basis.phi1.scale(params.a) + &basis.phi2.scale(params.b)
}

/// `(|A|²/2, |B − k̄A|²/(2(1+k̄²)), |A + k̄B|²/(2(1+k̄²)), |B|²/2)`.
pub fn density_eigenvalues_closed_form(params: &TwoModeParams) -> Result<[f64; 4]> {
    let norm = params.a.norm_sqr() + params.b.norm_sqr();
    if (norm - 1.0).abs() > DENSITY_TOL {
        return Err(Error::Unnormalized(norm.sqrt()));
    }
    Ok(closed_form_eigenvalues(params.kbar(), params.a, params.b))
}

fn closed_form_eigenvalues(kbar: f64, a: C64, b: C64) -> [f64; 4] {
    let d = 2.0 * (1.0 + kbar * kbar);
    [
        a.norm_sqr() / 2.0,
        (b - a * kbar).norm_sqr() / d,
        (a + b * kbar).norm_sqr() / d,
        b.norm_sqr() / 2.0,
    ]
}

/// Entropy of both fermions for `A = sin φ`, `B = cos φ`.
pub fn surface_entropy(kbar: f64, phi: f64) -> f64 {
    entropy_of(&closed_form_eigenvalues(
        kbar,
        C64::new(phi.sin(), 0.0),
        C64::new(phi.cos(), 0.0),
    ))
}

/// Fermion entropy of the superposition computed by partial trace.
pub fn brute_force_entropy(params: &TwoModeParams) -> Result<f64> {
    let basis = two_mode_eigenbasis(params, EigenBranch::Upper)?;
    let state = superposition(&basis, params);
    Ok(entropy(&reduce(
        &basis.config,
        &state,
        &Subsystem::all_fermions(&basis.config),
    )?))
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceRow {
    pub kbar: f64,
    pub phi: f64,
    pub entropy: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceSummary {
    pub kbar: f64,
    /// Minimum over `φ ∈ [0, π]`, refined at the stationary points.
    pub min: f64,
    /// Maximum over the real sweep `A = sin φ`, `B = cos φ`.
    pub max_real: f64,
    /// Entropy of the complex weights `A = iB`, `|B| = 1/√2`.
    pub max_complex: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Surface {
    pub rows: Vec<SurfaceRow>,
    pub summaries: Vec<SurfaceSummary>,
    /// Largest closed-form vs partial-trace difference over the grid.
    pub cross_check: f64,
}

/// `φ_j = jπ/steps` for `j = 0 … steps`.
pub fn phi_grid(steps: usize) -> Vec<f64> {
    (0..=steps)
        .map(|j| std::f64::consts::PI * j as f64 / steps as f64)
        .collect()
}

pub fn entanglement_surface(kbars: &[f64], phi_steps: usize) -> Result<Surface> {
    let phis = phi_grid(phi_steps);
    let mut rows = Vec::with_capacity(kbars.len() * phis.len());
    let mut summaries = Vec::with_capacity(kbars.len());
    let mut cross_check: f64 = 0.0;
    for &kbar in kbars {
        let mut max_real = f64::NEG_INFINITY;
        let mut min = f64::INFINITY;
        for &phi in &phis {
            let params = TwoModeParams::with_kbar(kbar, C64::new(phi.sin(), 0.0), C64::new(phi.cos(), 0.0))?;
            let e = surface_entropy(kbar, phi);
            cross_check = cross_check.max((e - brute_force_entropy(&params)?).abs());
            max_real = max_real.max(e);
            min = min.min(e);
            rows.push(SurfaceRow { kbar, phi, entropy: e });
        }
        for root in extremum_solve(kbar).roots {
            min = min.min(surface_entropy(kbar, root));
        }
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let complex = TwoModeParams::with_kbar(kbar, h * C64::new(0.0, 1.0), h)?;
        summaries.push(SurfaceSummary {
            kbar,
            min,
            max_real,
            max_complex: entropy_of(&density_eigenvalues_closed_form(&complex)?),
        });
    }
    Ok(Surface {
        rows,
        summaries,
        cross_check,
    })
}

fn xlog_sq(u: f64) -> f64 {
    if u == 0.0 {
        0.0
    } else {
        u * (u * u).ln()
    }
}

/// Left side of the stationarity condition with first-term denominator
/// `denominator`:
///
/// ```text
/// (c − k̄s)(s + k̄c)/den · ln((c − k̄s)²/(s + k̄c)²) − s c ln(s²/c²)
/// ```
///
/// evaluated in the `x ln x²` form so that it stays finite where a factor
/// vanishes.
fn extremal_lhs(kbar: f64, phi: f64, denominator: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    let u = c - kbar * s;
    let v = s + kbar * c;
    (v * xlog_sq(u) - u * xlog_sq(v)) / denominator - (c * xlog_sq(s) - s * xlog_sq(c))
}

/// The stationarity equation with denominator `1 + k̄²`. It equals
/// `dE/dφ` of [`surface_entropy`].
pub fn extremal_residual(kbar: f64, phi: f64) -> f64 {
    extremal_lhs(kbar, phi, 1.0 + kbar * kbar)
}

/// The same equation with the printed denominator `2(1 + k̄²)`.
pub fn printed_extremal_residual(kbar: f64, phi: f64) -> f64 {
    extremal_lhs(kbar, phi, 2.0 * (1.0 + kbar * kbar))
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremumReport {
    pub kbar: f64,
    pub roots: Vec<f64>,
    /// Central-difference `dE/dφ` at each root, step `1e-5`.
    pub derivatives: Vec<f64>,
    /// Set when no sign change was found in `(0, π)`.
    pub no_bracket: bool,
}

const SCAN_POINTS: usize = 4096;

fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    while hi - lo > ROOT_TOL * 1e-3 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Roots of [`extremal_residual`] in the open interval `(0, π)`, found by a
/// sign-change scan and bisection.
pub fn extremum_solve(kbar: f64) -> ExtremumReport {
    let f = |phi: f64| extremal_residual(kbar, phi);
    let pi = std::f64::consts::PI;
    let grid: Vec<f64> = (1..SCAN_POINTS).map(|j| pi * j as f64 / SCAN_POINTS as f64).collect();
    let values: Vec<f64> = grid.iter().map(|&p| f(p)).collect();
    let mut roots = Vec::new();
    for j in 0..grid.len() - 1 {
        if values[j] == 0.0 {
            roots.push(grid[j]);
        } else if values[j + 1] != 0.0 && (values[j] < 0.0) != (values[j + 1] < 0.0) {
            roots.push(bisect(&f, grid[j], grid[j + 1]));
        }
    }
    let h = 1e-5;
    let derivatives = roots
        .iter()
        .map(|&r| (surface_entropy(kbar, r + h) - surface_entropy(kbar, r - h)) / (2.0 * h))
        .collect();
    ExtremumReport {
        kbar,
        no_bracket: roots.is_empty(),
        roots,
        derivatives,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PerFermionRow {
    pub kbar: f64,
    pub phi: f64,
    pub e1: f64,
    pub e2: f64,
}

/// Entropy of each fermion mode alone for `A = sin φ`, `B = cos φ`.
pub fn per_fermion_entropy(kbar: f64, phis: &[f64]) -> Result<Vec<PerFermionRow>> {
    phis.iter()
        .map(|&phi| {
            let params = TwoModeParams::with_kbar(kbar, C64::new(phi.sin(), 0.0), C64::new(phi.cos(), 0.0))?;
            let basis = two_mode_eigenbasis(&params, EigenBranch::Upper)?;
            let state = superposition(&basis, &params);
            let e1 = entropy(&reduce(&basis.config, &state, &Subsystem::fermion(0))?);
            let e2 = entropy(&reduce(&basis.config, &state, &Subsystem::fermion(1))?);
            Ok(PerFermionRow { kbar, phi, e1, e2 })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{build_g, SuperchargeSpec};
    use std::f64::consts::{LN_2, PI};

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::new(Operator::identity(2)).is_err());
        assert!(DensityMatrix::new(Operator::from_real_diagonal(&[1.5, -0.5])).is_err());
        let ok = DensityMatrix::new(Operator::from_real_diagonal(&[0.5, 0.25, 0.25, 0.0])).unwrap();
        assert!((entropy(&ok) - 1.5 * LN_2).abs() < 1e-15);
        assert!((ok.purity() - 0.375).abs() < 1e-15);
    }

    #[test]
    fn product_and_bell_states() {
        let config = ModeConfig::single_mode(3).unwrap();
        let idx = |f: u8, b: usize| config.index_of(&BasisState::new(vec![f], vec![b])).unwrap();
        let product = StateVector::basis(config.dim(), idx(1, 2));
        let rho = reduce(&config, &product, &Subsystem::all_fermions(&config)).unwrap();
        assert!(entropy(&rho).abs() < 1e-15);
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let bell = &StateVector::basis(config.dim(), idx(1, 0)).scale(h)
            + &StateVector::basis(config.dim(), idx(0, 1)).scale(h);
        let rho = reduce(&config, &bell, &Subsystem::all_fermions(&config)).unwrap();
        assert!((rho.matrix() - &Operator::identity(2).scale_real(0.5)).max_abs() < 1e-15);
        assert!((entropy(&rho) - LN_2).abs() < 1e-15);
        let unnormalized = StateVector::basis(config.dim(), 0).scale(C64::new(2.0, 0.0));
        assert!(matches!(
            reduce(&config, &unnormalized, &Subsystem::all_fermions(&config)),
            Err(Error::Unnormalized(_))
        ));
    }

    #[test]
    fn single_mode_lemma() {
        let config = ModeConfig::single_mode(8).unwrap();
        let g = build_g(&SuperchargeSpec::free(config.clone()).unwrap()).unwrap();
        for n in 1..=8 {
            let (plus, minus) = single_mode_eigenvectors(&config, n).unwrap();
            let root = (n as f64).sqrt();
            assert!(g.apply(&plus).distance(&plus.scale(C64::new(root, 0.0))) < 1e-14);
            assert!(g.apply(&minus).distance(&minus.scale(C64::new(-root, 0.0))) < 1e-14);
            for v in [&plus, &minus] {
                let ef = entropy(&reduce(&config, v, &Subsystem::all_fermions(&config)).unwrap());
                let eb = entropy(&reduce(&config, v, &Subsystem::all_bosons(&config)).unwrap());
                assert!((ef - LN_2).abs() < 1e-12 && (eb - ef).abs() < 1e-12);
            }
        }
        let (vac, _) = single_mode_eigenvectors(&config, 0).unwrap();
        assert!(entropy(&reduce(&config, &vac, &Subsystem::all_fermions(&config)).unwrap()).abs() < 1e-15);
        assert!(single_mode_eigenvectors(&config, 9).is_err());
    }

    #[test]
    fn eigenbasis_is_a_g_eigenbasis() {
        for (n1, n2, k) in [(0, 0, 0.5), (2, 1, 0.7), (1, 3, 1.3)] {
            let params = TwoModeParams::new(n1, n2, k, C64::new(1.0, 0.0), C64::new(0.0, 0.0)).unwrap();
            for branch in [EigenBranch::Upper, EigenBranch::Lower] {
                let basis = two_mode_eigenbasis(&params, branch).unwrap();
                let g = build_g(&SuperchargeSpec::free(basis.config.clone()).unwrap()).unwrap();
                let lam = C64::new(basis.eigenvalue, 0.0);
                assert!(g.apply(&basis.phi1).distance(&basis.phi1.scale(lam)) < 1e-12);
                assert!(g.apply(&basis.phi2).distance(&basis.phi2.scale(lam)) < 1e-12);
                assert!(basis.phi1.inner(&basis.phi2).norm() < 1e-15);
                assert!((basis.phi1.norm() - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let p = TwoModeParams::with_kbar(0.6, C64::new(0.0, h), C64::new(h, 0.0)).unwrap();
        let l = density_eigenvalues_closed_form(&p).unwrap();
        assert!(l.iter().all(|x| (x - 0.25).abs() < 1e-15));
        assert!((entropy_of(&l) - 2.0 * LN_2).abs() < 1e-12);
        let p = TwoModeParams::with_kbar(1.0, C64::new(0.0, 0.0), C64::new(1.0, 0.0)).unwrap();
        let l = density_eigenvalues_closed_form(&p).unwrap();
        assert_eq!(l, [0.0, 0.25, 0.25, 0.5]);
        let p = TwoModeParams::with_kbar(0.0, C64::new(0.0, 0.0), C64::new(1.0, 0.0)).unwrap();
        assert!((brute_force_entropy(&p).unwrap() - LN_2).abs() < 1e-12);
        assert!(TwoModeParams::with_kbar(0.5, C64::new(1.0, 0.0), C64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn surface_extremes() {
        let surface = entanglement_surface(&[0.0, 0.5, 1.0], 64).unwrap();
        assert!(surface.cross_check < 1e-10);
        let s0 = &surface.summaries[0];
        let s1 = &surface.summaries[2];
        assert!((s0.min - LN_2).abs() < 1e-6);
        assert!((s1.min - 1.5 * LN_2).abs() < 1e-6);
        for s in &surface.summaries {
            assert!((s.max_complex - 2.0 * LN_2).abs() < 1e-10);
            assert!(s.max_real <= 2.0 * LN_2 + 1e-12);
        }
        assert!(surface.summaries[1].min > s0.min && surface.summaries[1].min < s1.min);
    }

    #[test]
    fn extremal_roots() {
        let r = extremum_solve(0.0);
        let expected = [PI / 4.0, PI / 2.0, 3.0 * PI / 4.0];
        assert_eq!(r.roots.len(), 3);
        for (x, y) in r.roots.iter().zip(expected) {
            assert!((x - y).abs() < 1e-8);
        }
        for kbar in [0.25, 0.5, 0.75, 1.0] {
            let r = extremum_solve(kbar);
            assert!(!r.no_bracket);
            assert!(r.derivatives.iter().all(|d| d.abs() < 1e-6), "{r:?}");
        }
        let one = extremum_solve(1.0);
        for root in &one.roots {
            let mirror = PI - root;
            assert!(one.roots.iter().any(|r| (r - mirror).abs() < 1e-7) || (root - PI / 2.0).abs() < 1e-7);
        }
        // the two forms share roots only at k̄ = 0
        assert!(printed_extremal_residual(0.0, PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn per_fermion_curves() {
        let zero = per_fermion_entropy(0.0, &[0.0, PI / 4.0, PI / 2.0]).unwrap();
        assert!(zero[0].e2.abs() < 1e-12 && (zero[0].e1 - LN_2).abs() < 1e-12);
        assert!(zero[2].e2.abs() < 1e-12);
        assert!(zero[1].e2 > 0.1);
        for row in per_fermion_entropy(0.5, &phi_grid(32)).unwrap() {
            assert!(row.e1 <= LN_2 + 1e-12 && row.e2 <= LN_2 + 1e-12);
        }
    }
}
