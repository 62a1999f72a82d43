//! Susinos `A± = P0(a ∓ b)`: vacuum-supported combinations of `a` and `b`
//! that pick up a pure phase under `e^{iGs}`.

use serde::Serialize;

use crate::dynamics::{build_g, build_ga, spectral_exp, SuperchargeSpec};
use crate::error::{Error, Result};
use crate::fock::{self, BasisState, ModeConfig};
use crate::operator::{anticomm, comm, conjugate, Operator, C64};

/// The `±` label of a susino.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];

    /// `+1` for `A₊`, `−1` for `A₋`.
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    /// Relative sign `σ` of the `a† b†^{k−1}` term in the generalized
    /// susino factors.
    pub fn sigma(self) -> f64 {
        -self.sign()
    }

    pub fn label(self) -> &'static str {
        match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        }
    }
}

fn require_single_mode(config: &ModeConfig) -> Result<()> {
    if config.n_fermion() != 1 || config.n_boson() != 1 || config.couplings() != [1.0] {
        return Err(Error::Config(
            "susinos are built for one fermion and one boson with k = 1".into(),
        ));
    }
    Ok(())
}

/// Vacuum projector `P0 = (1 − N_f)·[n_b = 0]`.
pub fn build_p0(config: &ModeConfig) -> Result<Operator> {
    require_single_mode(config)?;
    let diag: Vec<f64> = fock::enumerate_basis(config)
        .iter()
        .map(|s| {
            if s.fermion_number() == 0 && s.boson_number() == 0 {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    Ok(Operator::from_real_diagonal(&diag))
}

#[derive(Clone, Debug)]
pub struct SusinoPair {
    pub a_plus: Operator,
    pub a_minus: Operator,
    pub p0: Operator,
}

impl SusinoPair {
    pub fn get(&self, branch: Branch) -> &Operator {
        match branch {
            Branch::Plus => &self.a_plus,
            Branch::Minus => &self.a_minus,
        }
    }
}

pub fn build_susinos(config: &ModeConfig) -> Result<SusinoPair> {
    let p0 = build_p0(config)?;
    let a = fock::fermion(config, 0)?;
    let b = fock::boson(config, 0)?;
    Ok(SusinoPair {
        a_plus: &p0 * &(&a - &b),
        a_minus: &p0 * &(&a + &b),
        p0,
    })
}

/// Best scalar `c` with `Y ≈ c X` and the max-entry residual `|Y − cX|`.
pub fn phase_factor(x: &Operator, y: &Operator) -> (C64, f64) {
    let norm = (&x.adjoint() * x).trace();
    if norm.norm() == 0.0 {
        return (C64::new(0.0, 0.0), y.max_abs());
    }
    let c = (&x.adjoint() * y).trace() / norm;
    (c, (y - &x.scale(c)).max_abs())
}

/// Commutation statistics of one susino.
#[derive(Clone, Debug, Serialize)]
pub struct StatisticsReport {
    pub branch: Branch,
    /// `‖[A, A†] − 1‖` (operator norm).
    pub commutator_defect: f64,
    /// `‖{A, A†} − 1‖` (operator norm).
    pub anticommutator_defect: f64,
    /// `max |A²|`.
    pub square: f64,
}

pub fn statistics_report(pair: &SusinoPair) -> Result<Vec<StatisticsReport>> {
    let one = Operator::identity(pair.p0.dim());
    Branch::BOTH
        .iter()
        .map(|&branch| {
            let x = pair.get(branch);
            let xd = x.adjoint();
            Ok(StatisticsReport {
                branch,
                commutator_defect: (&comm(x, &xd)? - &one).op_norm(),
                anticommutator_defect: (&anticomm(x, &xd)? - &one).op_norm(),
                square: (x * x).max_abs(),
            })
        })
        .collect()
}

/// Products of susinos and the phase `γ` they acquire under `e^{iGs}`.
#[derive(Clone, Debug, Serialize)]
pub struct PhaseReport {
    pub name: String,
    pub expected_gamma: f64,
    pub measured_gamma: f64,
    /// `max |X(s) − e^{iγs} X|` with the expected `γ`.
    pub defect: f64,
}

/// `A₊, A₋` (γ = ±1), the excitons `A₋†A₊, A₊†A₋` (γ = ±2) and the
/// invariants `A±†A±` (γ = 0) evolved to `s`.
pub fn susino_phases(config: &ModeConfig, s: f64) -> Result<Vec<PhaseReport>> {
    let pair = build_susinos(config)?;
    let u = spectral_exp(&build_g(&SuperchargeSpec::free(config.clone())?)?, s)?;
    let (p, m) = (&pair.a_plus, &pair.a_minus);
    let cases = [
        ("A+", p.clone(), 1.0),
        ("A-", m.clone(), -1.0),
        ("A-^dag A+", &m.adjoint() * p, 2.0),
        ("A+^dag A-", &p.adjoint() * m, -2.0),
        ("A+^dag A+", &p.adjoint() * p, 0.0),
        ("A-^dag A-", &m.adjoint() * m, 0.0),
    ];
    Ok(cases
        .into_iter()
        .map(|(name, x, gamma)| {
            let evolved = conjugate(&u, &x);
            let (c, _) = phase_factor(&x, &evolved);
            let expected = x.scale(C64::from_polar(1.0, gamma * s));
            PhaseReport {
                name: name.to_string(),
                expected_gamma: gamma,
                measured_gamma: c.arg() / s,
                defect: (&evolved - &expected).max_abs(),
            }
        })
        .collect())
}

/// `X_k = √(k/2)·(σ a† b†^{k−1}/√((k−1)!) + b†^k/√(k!))`; `X_k|0⟩` is the
/// normalized-to-`k` eigenvector of `G` with eigenvalue `σ√k`.
fn susino_factor(config: &ModeConfig, k: usize, sigma: f64) -> Result<Operator> {
    let a = fock::fermion(config, 0)?;
    let bd = fock::boson(config, 0)?.adjoint();
    let mut bd_pow = Operator::identity(config.dim());
    let mut factorial = 1.0;
    for j in 1..k {
        bd_pow = &bd_pow * &bd;
        factorial *= j as f64;
    }
    let first = (&a.adjoint() * &bd_pow).scale_real(sigma / factorial.sqrt());
    let second = (&bd_pow * &bd).scale_real(1.0 / (factorial * k as f64).sqrt());
    Ok((&first + &second).scale_real((k as f64 / 2.0).sqrt()))
}

/// `A_{(m,n)} = X_m P0 X_n†` with an explicit relative sign `σ`.
pub fn build_a_mn_with_sigma(config: &ModeConfig, m: usize, n: usize, sigma: f64) -> Result<Operator> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter(format!("need m, n ≥ 1, got ({m}, {n})")));
    }
    let required = m + n + 2;
    if config.boson_cutoff() < required {
        return Err(Error::CutoffTooSmall {
            required,
            cutoff: config.boson_cutoff(),
        });
    }
    let p0 = build_p0(config)?;
    let xm = susino_factor(config, m, sigma)?;
    let xn = susino_factor(config, n, sigma)?;
    Ok(&(&xm * &p0) * &xn.adjoint())
}

/// Generalized susino absorbing `n` and creating `m` quanta, with
/// `σ = ∓1` for the `±` branch.
pub fn build_a_mn(config: &ModeConfig, m: usize, n: usize, branch: Branch) -> Result<Operator> {
    build_a_mn_with_sigma(config, m, n, branch.sigma())
}

/// Phase of `A_(m,n)±` under `e^{iGs}`; expected `γ = ±(√n − √m)`.
pub fn generalized_phase(config: &ModeConfig, m: usize, n: usize, branch: Branch, s: f64) -> Result<PhaseReport> {
    let x = build_a_mn(config, m, n, branch)?;
    let u = spectral_exp(&build_g(&SuperchargeSpec::free(config.clone())?)?, s)?;
    let evolved = conjugate(&u, &x);
    let gamma = branch.sign() * ((n as f64).sqrt() - (m as f64).sqrt());
    let (c, _) = phase_factor(&x, &evolved);
    Ok(PhaseReport {
        name: format!("A_({m},{n}){}", branch.label()),
        expected_gamma: gamma,
        measured_gamma: if s == 0.0 { 0.0 } else { c.arg() / s },
        defect: (&evolved - &x.scale(C64::from_polar(1.0, gamma * s))).max_abs(),
    })
}

/// Conjugation by `e^{irG_A}` of both susinos.
pub fn ga_oscillation(pair: &SusinoPair, config: &ModeConfig, r: f64) -> Result<(Operator, Operator)> {
    let u = spectral_exp(&build_ga(config)?, r)?;
    Ok((conjugate(&u, &pair.a_plus), conjugate(&u, &pair.a_minus)))
}

/// Evolution under `H_α = H + αG + α²/4`.
#[derive(Clone, Debug, Serialize)]
pub struct PerturbedReport {
    pub alpha: f64,
    pub t: f64,
    /// `max |H_α − (G + α/2)²|` on the safe subspace of margin 1.
    pub identity_defect: f64,
    /// Measured phases of `A₊(t)`, `A₋(t)` as `(re, im)`.
    pub susino_phases: [(f64, f64); 2],
    /// `e^{it(−1 ± α)}`.
    pub expected_phases: [(f64, f64); 2],
    /// `max |A±(t) − phase·A±|`.
    pub susino_residuals: [f64; 2],
    /// Relative Frobenius distance of `a(t)`, `b(t)` from their best scalar
    /// multiple of `a`, `b` on the safe subspace of margin 2.
    pub a_defect: f64,
    pub b_defect: f64,
}

fn relative_defect(p: &Operator, x: &Operator, xt: &Operator) -> f64 {
    let (x, xt) = (x.sandwich(p), xt.sandwich(p));
    let (c, _) = phase_factor(&x, &xt);
    (&xt - &x.scale(c)).frobenius_norm() / x.frobenius_norm()
}

pub fn perturbed_evolution(config: &ModeConfig, alpha: f64, t: f64) -> Result<PerturbedReport> {
    let spec = SuperchargeSpec::free(config.clone())?;
    let g = build_g(&spec)?;
    let h = crate::dynamics::build_h(&spec)?;
    let h_alpha = &(&h + &g.scale_real(alpha)) + &Operator::identity(config.dim()).scale_real(alpha * alpha / 4.0);
    let shifted = &g + &Operator::identity(config.dim()).scale_real(alpha / 2.0);
    let square = &shifted * &shifted;
    let identity_defect = fock::safe_defect(config, &h_alpha, &square, 1)?;
    let u = square.hermitian_function(|l| C64::from_polar(1.0, l * t))?;
    let pair = build_susinos(config)?;
    let mut phases = [(0.0, 0.0); 2];
    let mut expected = [(0.0, 0.0); 2];
    let mut residuals = [0.0; 2];
    for (i, branch) in Branch::BOTH.iter().enumerate() {
        let x = pair.get(*branch);
        let (c, res) = phase_factor(x, &conjugate(&u, x));
        let e = C64::from_polar(1.0, t * (-1.0 + branch.sign() * alpha));
        phases[i] = (c.re, c.im);
        expected[i] = (e.re, e.im);
        residuals[i] = res;
    }
    let p = fock::safe_projector_with_margin(config, 2)?;
    let a = fock::fermion(config, 0)?;
    let b = fock::boson(config, 0)?;
    Ok(PerturbedReport {
        alpha,
        t,
        identity_defect,
        susino_phases: phases,
        expected_phases: expected,
        susino_residuals: residuals,
        a_defect: relative_defect(&p, &a, &conjugate(&u, &a)),
        b_defect: relative_defect(&p, &b, &conjugate(&u, &b)),
    })
}

/// Largest entry of `X` outside the block `n_b ≤ max_boson`.
pub fn support_leak(config: &ModeConfig, x: &Operator, max_boson: usize) -> f64 {
    let inside: Vec<bool> = fock::enumerate_basis(config)
        .iter()
        .map(|s: &BasisState| s.boson_number() <= max_boson)
        .collect();
    let mut leak: f64 = 0.0;
    for r in 0..x.dim() {
        for c in 0..x.dim() {
            if !(inside[r] && inside[c]) {
                leak = leak.max(x.entry(r, c).norm());
            }
        }
    }
    leak
}
