//! Truncated Fock space of `F` fermionic and `B` bosonic modes.
//!
//! Basis ordering (see `docs/basis.md`): a basis state is keyed by the tuple
//! `(n_b1, …, n_bB, n_f1, …, n_fF)` and states are listed in lexicographic
//! order of that key, so the fermionic slots vary fastest and the last
//! fermion is the fastest of all. Equivalently
//!
//! ```text
//! index = fermion_index + 2^F · boson_index
//! fermion_index = Σ_i n_fi · 2^(F-1-i)
//! boson_index   = Σ_j n_bj · (Λ+1)^(B-1-j)
//! ```
//!
//! Fermionic annihilators carry a Jordan–Wigner string over the
//! lower-indexed fermion modes, matching the product order
//! `(a_1†)^n1 (a_2†)^n2 … |0⟩` of the basis vectors.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::operator::{Operator, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModeKind {
    Fermion,
    Boson,
}

impl fmt::Display for ModeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeKind::Fermion => f.write_str("fermionic"),
            ModeKind::Boson => f.write_str("bosonic"),
        }
    }
}

/// Mode counts, boson cutoff `Λ`, couplings `k_i` and the safe margin `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeConfig {
    n_fermion: usize,
    n_boson: usize,
    boson_cutoff: usize,
    couplings: Vec<f64>,
    safe_margin: usize,
}

impl ModeConfig {
    /// Largest Hilbert dimension stored as a dense matrix.
    pub const DIM_LIMIT: usize = 4096;

    pub fn new(
        n_fermion: usize,
        n_boson: usize,
        boson_cutoff: usize,
        couplings: Vec<f64>,
        safe_margin: usize,
    ) -> Result<Self> {
        if n_fermion == 0 || n_boson == 0 {
            return Err(Error::Config(format!(
                "need at least one fermionic and one bosonic mode (got F={n_fermion}, B={n_boson})"
            )));
        }
        if boson_cutoff == 0 {
            return Err(Error::Config("boson cutoff must be at least 1".into()));
        }
        if couplings.len() != n_fermion {
            return Err(Error::Config(format!(
                "expected {n_fermion} couplings, got {}",
                couplings.len()
            )));
        }
        if let Some(k) = couplings.iter().find(|k| !k.is_finite()) {
            return Err(Error::Config(format!("coupling {k} is not finite")));
        }
        if safe_margin > boson_cutoff {
            return Err(Error::MarginExceedsCutoff {
                margin: safe_margin,
                cutoff: boson_cutoff,
            });
        }
        let dim = (1u128 << n_fermion.min(127)).saturating_mul(
            (boson_cutoff as u128 + 1)
                .checked_pow(n_boson as u32)
                .unwrap_or(u128::MAX),
        );
        if n_fermion >= 64 || dim > Self::DIM_LIMIT as u128 {
            return Err(Error::DimensionOverflow {
                dim,
                limit: Self::DIM_LIMIT,
            });
        }
        Ok(Self {
            n_fermion,
            n_boson,
            boson_cutoff,
            couplings,
            safe_margin,
        })
    }

    /// One fermion and one boson with `k = 1` and margin 1.
    pub fn single_mode(boson_cutoff: usize) -> Result<Self> {
        Self::new(1, 1, boson_cutoff, vec![1.0], 1.min(boson_cutoff))
    }

    /// `F = B = couplings.len()` paired modes with margin 1.
    pub fn paired(couplings: Vec<f64>, boson_cutoff: usize) -> Result<Self> {
        let n = couplings.len();
        Self::new(n, n, boson_cutoff, couplings, 1.min(boson_cutoff))
    }

    pub fn with_margin(mut self, safe_margin: usize) -> Result<Self> {
        if safe_margin > self.boson_cutoff {
            return Err(Error::MarginExceedsCutoff {
                margin: safe_margin,
                cutoff: self.boson_cutoff,
            });
        }
        self.safe_margin = safe_margin;
        Ok(self)
    }

    pub fn n_fermion(&self) -> usize {
        self.n_fermion
    }

    pub fn n_boson(&self) -> usize {
        self.n_boson
    }

    pub fn boson_cutoff(&self) -> usize {
        self.boson_cutoff
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    pub fn safe_margin(&self) -> usize {
        self.safe_margin
    }

    pub fn fermion_dim(&self) -> usize {
        1 << self.n_fermion
    }

    pub fn boson_dim(&self) -> usize {
        (self.boson_cutoff + 1).pow(self.n_boson as u32)
    }

    pub fn dim(&self) -> usize {
        self.fermion_dim() * self.boson_dim()
    }

    pub fn index_of(&self, state: &BasisState) -> Option<usize> {
        if state.fermion_occ.len() != self.n_fermion || state.boson_occ.len() != self.n_boson {
            return None;
        }
        let mut f_idx = 0;
        for &n in &state.fermion_occ {
            if n > 1 {
                return None;
            }
            f_idx = 2 * f_idx + n as usize;
        }
        let mut b_idx = 0;
        for &n in &state.boson_occ {
            if n > self.boson_cutoff {
                return None;
            }
            b_idx = (self.boson_cutoff + 1) * b_idx + n;
        }
        Some(f_idx + self.fermion_dim() * b_idx)
    }

    pub fn state_at(&self, index: usize) -> BasisState {
        let mut f_idx = index % self.fermion_dim();
        let mut b_idx = index / self.fermion_dim();
        let mut fermion_occ = vec![0u8; self.n_fermion];
        for slot in fermion_occ.iter_mut().rev() {
            *slot = (f_idx % 2) as u8;
            f_idx /= 2;
        }
        let mut boson_occ = vec![0usize; self.n_boson];
        for slot in boson_occ.iter_mut().rev() {
            *slot = b_idx % (self.boson_cutoff + 1);
            b_idx /= self.boson_cutoff + 1;
        }
        BasisState { fermion_occ, boson_occ }
    }
}

/// Occupation numbers of one Fock basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BasisState {
    pub fermion_occ: Vec<u8>,
    pub boson_occ: Vec<usize>,
}

impl BasisState {
    pub fn new(fermion_occ: Vec<u8>, boson_occ: Vec<usize>) -> Self {
        Self { fermion_occ, boson_occ }
    }

    pub fn fermion_number(&self) -> usize {
        self.fermion_occ.iter().map(|&n| n as usize).sum()
    }

    pub fn boson_number(&self) -> usize {
        self.boson_occ.iter().sum()
    }
}

/// Written as `|n_f1,…,n_fF;n_b1,…,n_bB>`.
impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fermions: Vec<String> = self.fermion_occ.iter().map(u8::to_string).collect();
        let bosons: Vec<String> = self.boson_occ.iter().map(usize::to_string).collect();
        write!(f, "|{};{}>", fermions.join(","), bosons.join(","))
    }
}

pub fn enumerate_basis(config: &ModeConfig) -> Vec<BasisState> {
    (0..config.dim()).map(|i| config.state_at(i)).collect()
}

fn check_index(config: &ModeConfig, kind: ModeKind, index: usize) -> Result<()> {
    let count = match kind {
        ModeKind::Fermion => config.n_fermion,
        ModeKind::Boson => config.n_boson,
    };
    if index >= count {
        return Err(Error::IndexOutOfRange { kind, index, count });
    }
    Ok(())
}

/// Annihilator `a_i` (fermion) or `b_j` (boson) on the truncated space.
pub fn annihilator(config: &ModeConfig, kind: ModeKind, index: usize) -> Result<Operator> {
    check_index(config, kind, index)?;
    let dim = config.dim();
    let mut m = nalgebra::DMatrix::<C64>::zeros(dim, dim);
    for col in 0..dim {
        let mut state = config.state_at(col);
        let amplitude = match kind {
            ModeKind::Fermion => {
                if state.fermion_occ[index] == 0 {
                    continue;
                }
                let parity: usize = state.fermion_occ[..index].iter().map(|&n| n as usize).sum();
                state.fermion_occ[index] = 0;
                if parity.is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                }
            }
            ModeKind::Boson => {
                let n = state.boson_occ[index];
                if n == 0 {
                    continue;
                }
                state.boson_occ[index] = n - 1;
                (n as f64).sqrt()
            }
        };
        let row = config.index_of(&state).expect("lowered state stays in range");
        m[(row, col)] = C64::new(amplitude, 0.0);
    }
    Ok(Operator::from_matrix(m))
}

pub fn creator(config: &ModeConfig, kind: ModeKind, index: usize) -> Result<Operator> {
    annihilator(config, kind, index).map(|op| op.adjoint())
}

/// Shorthand for the fermionic annihilator `a_i`.
pub fn fermion(config: &ModeConfig, index: usize) -> Result<Operator> {
    annihilator(config, ModeKind::Fermion, index)
}

/// Shorthand for the bosonic annihilator `b_j`.
pub fn boson(config: &ModeConfig, index: usize) -> Result<Operator> {
    annihilator(config, ModeKind::Boson, index)
}

/// The number operators `N_f`, `N_b` and `N = N_f + N_b`.
#[derive(Clone, Debug)]
pub struct NumberOperators {
    pub fermion: Operator,
    pub boson: Operator,
    pub total: Operator,
}

pub fn number_ops(config: &ModeConfig) -> NumberOperators {
    let states = enumerate_basis(config);
    let nf: Vec<f64> = states.iter().map(|s| s.fermion_number() as f64).collect();
    let nb: Vec<f64> = states.iter().map(|s| s.boson_number() as f64).collect();
    let n: Vec<f64> = nf.iter().zip(&nb).map(|(f, b)| f + b).collect();
    NumberOperators {
        fermion: Operator::from_real_diagonal(&nf),
        boson: Operator::from_real_diagonal(&nb),
        total: Operator::from_real_diagonal(&n),
    }
}

/// Occupation operator of a single mode.
pub fn mode_number(config: &ModeConfig, kind: ModeKind, index: usize) -> Result<Operator> {
    check_index(config, kind, index)?;
    let diag: Vec<f64> = enumerate_basis(config)
        .iter()
        .map(|s| match kind {
            ModeKind::Fermion => s.fermion_occ[index] as f64,
            ModeKind::Boson => s.boson_occ[index] as f64,
        })
        .collect();
    Ok(Operator::from_real_diagonal(&diag))
}

/// Fermionic parity `(−1)^{N_f}` as a list of diagonal signs.
pub fn parity_signs(config: &ModeConfig) -> Vec<f64> {
    enumerate_basis(config)
        .iter()
        .map(|s| if s.fermion_number() % 2 == 0 { 1.0 } else { -1.0 })
        .collect()
}

pub fn parity_operator(config: &ModeConfig) -> Operator {
    Operator::from_real_diagonal(&parity_signs(config))
}

/// Projector onto basis states with every `n_bj ≤ Λ − m`, using the
/// configured margin.
pub fn safe_projector(config: &ModeConfig) -> Operator {
    safe_projector_with_margin(config, config.safe_margin).expect("configured margin was validated")
}

/// [`safe_projector`] for an explicit margin `m`.
pub fn safe_projector_with_margin(config: &ModeConfig, margin: usize) -> Result<Operator> {
    if margin > config.boson_cutoff {
        return Err(Error::MarginExceedsCutoff {
            margin,
            cutoff: config.boson_cutoff,
        });
    }
    let top = config.boson_cutoff - margin;
    let diag: Vec<f64> = enumerate_basis(config)
        .iter()
        .map(|s| {
            if s.boson_occ.iter().all(|&n| n <= top) {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    Ok(Operator::from_real_diagonal(&diag))
}

/// Max-entry defect of `X − Y` restricted to the safe subspace of margin `m`.
pub fn safe_defect(config: &ModeConfig, x: &Operator, y: &Operator, margin: usize) -> Result<f64> {
    let p = safe_projector_with_margin(config, margin)?;
    Ok((x - y).sandwich(&p).max_abs())
}

/// Indices of the basis states kept by the safe projector of margin `m`.
pub fn safe_indices(config: &ModeConfig, margin: usize) -> Result<Vec<usize>> {
    let p = safe_projector_with_margin(config, margin)?;
    Ok((0..config.dim()).filter(|&i| p.entry(i, i).re == 1.0).collect())
}

/// The block of `X` on the safe subspace as a smaller operator.
pub fn restrict(config: &ModeConfig, x: &Operator, margin: usize) -> Result<Operator> {
    let keep = safe_indices(config, margin)?;
    Ok(Operator::from_matrix(nalgebra::DMatrix::from_fn(
        keep.len(),
        keep.len(),
        |r, c| x.entry(keep[r], keep[c]),
    )))
}
