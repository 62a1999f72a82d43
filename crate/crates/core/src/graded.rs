//! The Grassmann module `A + θB` over the Bose–Fermi algebra.
//!
//! Elements are stored as (body, soul) pairs. The product follows from
//! `θX = κ(X)θ` with `κ(X) = (−1)^{N_f} X (−1)^{N_f}` and `θ² = 0`, so the
//! soul·soul term is never formed:
//!
//! ```text
//! (A + θB)(C + θD) = AC + θ(κ(A)D + BC)
//! (A + θB)*        = A† + θ κ(B†)
//! ```

use crate::dynamics::{build_g, SuperchargeSpec};
use crate::error::{Error, Result};
use crate::fock::{self, ModeConfig};
use crate::operator::{Operator, C64, I, ONE};

#[derive(Clone, Debug, PartialEq)]
pub struct GradedElement {
    pub body: Operator,
    pub soul: Operator,
}

impl GradedElement {
    pub fn new(body: Operator, soul: Operator) -> Result<Self> {
        if body.dim() != soul.dim() {
            return Err(Error::DimensionMismatch {
                left: body.dim(),
                right: soul.dim(),
            });
        }
        Ok(Self { body, soul })
    }

    /// `X + θ·0`.
    pub fn body_only(body: Operator) -> Self {
        let dim = body.dim();
        Self {
            body,
            soul: Operator::zeros(dim),
        }
    }

    /// `0 + θX`.
    pub fn soul_only(soul: Operator) -> Self {
        let dim = soul.dim();
        Self {
            body: Operator::zeros(dim),
            soul,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::body_only(Operator::identity(dim))
    }

    /// The Grassmann generator itself.
    pub fn theta(dim: usize) -> Self {
        Self::soul_only(Operator::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.body.dim()
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            body: self.body.scale(factor),
            soul: self.soul.scale(factor),
        }
    }

    /// Largest entry over body and soul.
    pub fn max_abs(&self) -> f64 {
        self.body.max_abs().max(self.soul.max_abs())
    }

    pub fn is_pure_soul(&self) -> bool {
        self.body.max_abs() == 0.0
    }
}

impl std::ops::Add for &GradedElement {
    type Output = GradedElement;
    fn add(self, rhs: &GradedElement) -> GradedElement {
        GradedElement {
            body: &self.body + &rhs.body,
            soul: &self.soul + &rhs.soul,
        }
    }
}

impl std::ops::Sub for &GradedElement {
    type Output = GradedElement;
    fn sub(self, rhs: &GradedElement) -> GradedElement {
        GradedElement {
            body: &self.body - &rhs.body,
            soul: &self.soul - &rhs.soul,
        }
    }
}

/// Parity data of a configured space; carries the twisted product.
#[derive(Clone, Debug)]
pub struct Grading {
    signs: Vec<f64>,
}

impl Grading {
    pub fn new(config: &ModeConfig) -> Self {
        Self {
            signs: fock::parity_signs(config),
        }
    }

    pub fn dim(&self) -> usize {
        self.signs.len()
    }

    /// `κ(X) = P X P` with `P = (−1)^{N_f}`.
    pub fn twist(&self, x: &Operator) -> Operator {
        let m = nalgebra::DMatrix::from_fn(x.dim(), x.dim(), |r, c| x.entry(r, c) * (self.signs[r] * self.signs[c]));
        Operator::from_matrix(m)
    }

    fn check(&self, x: &GradedElement) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: x.dim(),
            });
        }
        Ok(())
    }

    pub fn gmul(&self, x: &GradedElement, y: &GradedElement) -> Result<GradedElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(GradedElement {
            body: &x.body * &y.body,
            soul: &(&self.twist(&x.body) * &y.soul) + &(&x.soul * &y.body),
        })
    }

    pub fn gstar(&self, x: &GradedElement) -> GradedElement {
        GradedElement {
            body: x.body.adjoint(),
            soul: self.twist(&x.soul.adjoint()),
        }
    }

    /// `e^{iG_θ s} = 1 + θGs` for `G_θ = −iθG`.
    pub fn grassmann_unitary(&self, g: &Operator, s: f64) -> GradedElement {
        GradedElement {
            body: Operator::identity(g.dim()),
            soul: g.scale_real(s),
        }
    }

    /// `U x U*` with `U = e^{iG_θ s}`.
    pub fn flow(&self, g: &Operator, x: &GradedElement, s: f64) -> Result<GradedElement> {
        let u = self.grassmann_unitary(g, s);
        let ux = self.gmul(&u, x)?;
        self.gmul(&ux, &self.gstar(&u))
    }
}

/// The charge `G_θ = −iθG` as a graded element.
pub fn grassmann_charge(g: &Operator) -> GradedElement {
    GradedElement::soul_only(g.scale(-I))
}

/// `e^{iG_θ s}` for the free supercharge of `spec`.
pub fn grassmann_unitary(spec: &SuperchargeSpec, s: f64) -> Result<GradedElement> {
    let g = build_g(spec)?;
    Ok(Grading::new(spec.config()).grassmann_unitary(&g, s))
}

/// The Hilbert-space quotient: the soul ideal is represented by zero.
pub fn body_projection(x: &GradedElement) -> Operator {
    x.body.clone()
}

/// Matrix model of `θ` on the space extended by an auxiliary spin `τ`.
///
/// The extended index is `aux + 2·index`, i.e. `X ↦ X ⊗ 1_τ`, and
/// `θ = (−1)^{N_f} ⊗ (τ_x − iτ_y)/2`.
#[derive(Clone, Debug)]
pub struct ThetaModel {
    pub theta: Operator,
    pub fermions: Vec<Operator>,
    pub bosons: Vec<Operator>,
}

pub fn theta_matrix_model(config: &ModeConfig) -> Result<ThetaModel> {
    let tau_x = Operator::from_matrix(nalgebra::DMatrix::from_row_slice(
        2,
        2,
        &[C64::new(0.0, 0.0), ONE, ONE, C64::new(0.0, 0.0)],
    ));
    let tau_y = Operator::from_matrix(nalgebra::DMatrix::from_row_slice(
        2,
        2,
        &[C64::new(0.0, 0.0), -I, I, C64::new(0.0, 0.0)],
    ));
    let tau = (&tau_x - &tau_y.scale(I)).scale_real(0.5);
    let id_aux = Operator::identity(2);
    let theta = fock::parity_operator(config).kron(&tau);
    let fermions = (0..config.n_fermion())
        .map(|i| fock::fermion(config, i).map(|a| a.kron(&id_aux)))
        .collect::<Result<_>>()?;
    let bosons = (0..config.n_boson())
        .map(|j| fock::boson(config, j).map(|b| b.kron(&id_aux)))
        .collect::<Result<_>>()?;
    Ok(ThetaModel {
        theta,
        fermions,
        bosons,
    })
}
