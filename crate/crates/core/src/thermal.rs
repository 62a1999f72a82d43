//! Gibbs states of the single free mode and their behaviour under the
//! flows Ia and Ib. Every comparison with an infinite-cutoff value uses the
//! geometric tail of the boson occupation as its tolerance.

use serde::Serialize;

use crate::dynamics::{
    build_g, build_ga, build_h, derivation_series, heisenberg_ia, odd_derivation, Parity, SuperchargeSpec,
};
use crate::entanglement::DensityMatrix;
use crate::error::{Error, Result};
use crate::fock::{self, ModeConfig};
use crate::operator::{comm, Operator, C64};
use crate::tolerances::TAIL_FLOOR;

/// Inverse temperature together with `x = e^β`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThermalParams {
    pub beta: f64,
    pub x: f64,
}

impl ThermalParams {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "β must be positive and finite, got {beta}"
            )));
        }
        Ok(Self { beta, x: beta.exp() })
    }

    pub fn from_x(x: f64) -> Result<Self> {
        if !(x.is_finite() && x > 1.0) {
            return Err(Error::InvalidParameter(format!("x = e^β must exceed 1, got {x}")));
        }
        Self::new(x.ln())
    }
}

/// `e^{−βH}/Tr e^{−βH}`, with the spectrum shifted by its minimum so the
/// exponentials never overflow.
pub fn gibbs(h: &Operator, beta: f64) -> Result<DensityMatrix> {
    ThermalParams::new(beta)?;
    let herm = h.hermiticity_defect();
    if herm > 1e-12 * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian(herm));
    }
    let (values, _) = h.eigh()?;
    let shift = values.first().copied().unwrap_or(0.0);
    let weights = h.hermitian_function(|e| C64::new((-beta * (e - shift)).exp(), 0.0))?;
    let z = weights.trace().re;
    DensityMatrix::new(weights.scale_real(1.0 / z))
}

/// `Tr(ρ X)`.
pub fn expectation(rho: &DensityMatrix, x: &Operator) -> C64 {
    rho.expectation(x)
}

/// Bound on the change of a boson occupation expectation caused by
/// truncating at `Λ`: `(Λ+1)x^{−Λ}/(1−1/x)²`, plus a rounding floor.
pub fn tail_bound(x: f64, cutoff: usize) -> f64 {
    let l = cutoff as f64;
    (l + 1.0) * x.powf(-l) / (1.0 - 1.0 / x).powi(2) + TAIL_FLOOR
}

fn free_mode(cutoff: usize) -> Result<(ModeConfig, SuperchargeSpec)> {
    let config = ModeConfig::single_mode(cutoff)?;
    let spec = SuperchargeSpec::free(config.clone())?;
    Ok((config, spec))
}

#[derive(Clone, Debug, Serialize)]
pub struct OccupationRow {
    pub name: &'static str,
    pub computed: f64,
    pub expected: f64,
    pub error: f64,
    pub tolerance: f64,
}

impl OccupationRow {
    pub fn passes(&self) -> bool {
        self.error <= self.tolerance
    }
}

/// `ω(a†a) = 1/(1+x)`, `ω(aa†) = x/(1+x)`, `ω(b†b) = 1/(x−1)`,
/// `ω(bb†) = x/(x−1)` in the Gibbs state of `N`.
pub fn mode_occupation_check(beta: f64, cutoff: usize) -> Result<Vec<OccupationRow>> {
    let params = ThermalParams::new(beta)?;
    let x = params.x;
    let (config, spec) = free_mode(cutoff)?;
    let rho = gibbs(&build_h(&spec)?, beta)?;
    let a = fock::fermion(&config, 0)?;
    let b = fock::boson(&config, 0)?;
    let tail = tail_bound(x, cutoff);
    let bb_dag_tail = tail + (cutoff as f64 + 1.0) * x.powf(-(cutoff as f64)) / (1.0 - 1.0 / x);
    let rows = [
        ("a^dag a", &a.adjoint() * &a, 1.0 / (1.0 + x), TAIL_FLOOR),
        ("a a^dag", &a * &a.adjoint(), x / (1.0 + x), TAIL_FLOOR),
        ("b^dag b", &b.adjoint() * &b, 1.0 / (x - 1.0), tail),
        // the truncated b b† loses the top level, (Λ+1)·p_Λ more
        ("b b^dag", &b * &b.adjoint(), x / (x - 1.0), bb_dag_tail),
    ];
    Ok(rows
        .into_iter()
        .map(|(name, op, expected, tolerance)| {
            let computed = expectation(&rho, &op).re;
            OccupationRow {
                name,
                computed,
                expected,
                error: (computed - expected).abs(),
                tolerance,
            }
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub beta: f64,
    pub s: f64,
    pub cutoff: usize,
    /// `ω(a†(s)a(s))`.
    pub evolved: f64,
    /// `1/(1+x)`.
    pub expected: f64,
    pub tolerance: f64,
    /// `|ω([a†a, G])|`.
    pub commutator: f64,
    /// `|ω(G[a†a, G])|`.
    pub double_commutator: f64,
    /// `|ω([G, G_A])|` of the operator commutator.
    pub ga_commutator: f64,
    /// `|ω(2i(b†b − a†a − 2a†ab†b))|`.
    pub ga_closed_form: f64,
}

impl InvarianceReport {
    pub fn passes(&self, exact_tol: f64) -> bool {
        (self.evolved - self.expected).abs() <= self.tolerance
            && self.commutator <= exact_tol
            && self.double_commutator <= exact_tol
            && self.ga_commutator <= exact_tol
            && self.ga_closed_form <= 2.0 * self.tolerance
    }
}

pub fn ia_invariance(beta: f64, s: f64, cutoff: usize) -> Result<InvarianceReport> {
    let params = ThermalParams::new(beta)?;
    let (config, spec) = free_mode(cutoff)?;
    let rho = gibbs(&build_h(&spec)?, beta)?;
    let g = build_g(&spec)?;
    let a = fock::fermion(&config, 0)?;
    let b = fock::boson(&config, 0)?;
    let na = &a.adjoint() * &a;
    let nb = &b.adjoint() * &b;
    let evolved = expectation(&rho, &heisenberg_ia(&spec, &na, s)?).re;
    let bracket = comm(&na, &g)?;
    let ga = build_ga(&config)?;
    let closed = (&(&nb - &na) - &(&na * &nb).scale_real(2.0)).scale(C64::new(0.0, 2.0));
    Ok(InvarianceReport {
        beta,
        s,
        cutoff,
        evolved,
        expected: 1.0 / (1.0 + params.x),
        tolerance: tail_bound(params.x, cutoff),
        commutator: expectation(&rho, &bracket).norm(),
        double_commutator: expectation(&rho, &(&g * &bracket)).norm(),
        ga_commutator: expectation(&rho, &comm(&g, &ga)?).norm(),
        ga_closed_form: expectation(&rho, &closed).norm(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DriftReport {
    pub beta: f64,
    pub s: f64,
    pub cutoff: usize,
    /// `ω(Q) + s ω(δQ)` for `Q = a†b`.
    pub first_order: f64,
    /// `s ω(H)` with `ω(H) = 1/(1+x) + 1/(x−1)`.
    pub expected: f64,
    pub tolerance: f64,
    /// Real and imaginary parts of `ω(Σ s^k/k! δ^k Q)`, summed to
    /// convergence on the truncated space.
    pub series: [f64; 2],
}

impl DriftReport {
    pub fn passes(&self) -> bool {
        (self.first_order - self.expected).abs() <= self.tolerance
            && (self.s == 0.0 || self.first_order.abs() > self.tolerance)
    }
}

/// Expectation of `Q(s)` under the Ib flow in the Gibbs state of `N`.
pub fn ib_drift(beta: f64, s: f64, cutoff: usize) -> Result<DriftReport> {
    let params = ThermalParams::new(beta)?;
    let (config, spec) = free_mode(cutoff)?;
    let rho = gibbs(&build_h(&spec)?, beta)?;
    let g = build_g(&spec)?;
    let a = fock::fermion(&config, 0)?;
    let b = fock::boson(&config, 0)?;
    let q = &a.adjoint() * &b;
    let dq = odd_derivation(&g, &q, Parity::Odd)?;
    let x = params.x;
    let series = expectation(&rho, &derivation_series(&config, &g, &q, s, 200)?);
    let first_order = (expectation(&rho, &q) + expectation(&rho, &dq).scale(s)).re;
    Ok(DriftReport {
        beta,
        s,
        cutoff,
        first_order,
        expected: s * (1.0 / (1.0 + x) + 1.0 / (x - 1.0)),
        tolerance: s.abs() * 2.0 * tail_bound(x, cutoff),
        series: [series.re, series.im],
    })
}

/// `|ω(XY) − ω(Y α(X))|` with `α(X) = e^{−βH} X e^{βH}` for diagonal `H`.
pub fn kms_defect(h: &Operator, beta: f64, x: &Operator, y: &Operator) -> Result<f64> {
    if !h.is_diagonal(0.0) {
        return Err(Error::InvalidParameter(
            "the KMS check needs a diagonal Hamiltonian".into(),
        ));
    }
    if x.dim() != h.dim() || y.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            left: h.dim(),
            right: x.dim().max(y.dim()),
        });
    }
    let rho = gibbs(h, beta)?;
    let e = h.real_diagonal();
    let mut flowed = x.matrix().clone();
    for ((r, c), v) in flowed
        .iter_mut()
        .enumerate()
        .map(|(k, v)| ((k % h.dim(), k / h.dim()), v))
    {
        *v *= (-beta * (e[r] - e[c])).exp();
    }
    let flowed = Operator::from_matrix(flowed);
    Ok((expectation(&rho, &(x * y)) - expectation(&rho, &(y * &flowed))).norm())
}
