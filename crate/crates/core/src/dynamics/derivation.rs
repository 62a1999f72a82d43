//! Case Ib: the odd derivation `δ` and the linear flow it integrates to.

use nalgebra::{Matrix2, Vector2};

use crate::error::{Error, Result};
use crate::fock::{self, ModeConfig};
use crate::graded::Grading;
use crate::operator::{anticomm, comm, Operator, C64, I};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn times(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Even and odd parts `(X ± κ(X))/2`.
pub fn split_parity(config: &ModeConfig, x: &Operator) -> (Operator, Operator) {
    let twisted = Grading::new(config).twist(x);
    ((x + &twisted).scale_real(0.5), (x - &twisted).scale_real(0.5))
}

/// The parity of `X` if it is homogeneous to `tol`.
pub fn detect_parity(config: &ModeConfig, x: &Operator, tol: f64) -> Option<Parity> {
    let (even, odd) = split_parity(config, x);
    match (even.max_abs() <= tol, odd.max_abs() <= tol) {
        (true, false) => Some(Parity::Odd),
        (false, true) => Some(Parity::Even),
        (true, true) => Some(Parity::Even),
        (false, false) => None,
    }
}

/// `{G, X}` for odd `X`, `i[G, X]` for even `X`. The parity is taken as
/// declared.
pub fn odd_derivation(g: &Operator, x: &Operator, parity: Parity) -> Result<Operator> {
    match parity {
        Parity::Odd => anticomm(g, x),
        Parity::Even => Ok(comm(g, x)?.scale(I)),
    }
}

/// `δ` extended linearly to inhomogeneous `X` through its parity split.
pub fn derivation(config: &ModeConfig, g: &Operator, x: &Operator) -> Result<Operator> {
    let (even, odd) = split_parity(config, x);
    Ok(&odd_derivation(g, &even, Parity::Even)? + &odd_derivation(g, &odd, Parity::Odd)?)
}

/// A homogeneous factor with its known derivative.
#[derive(Clone, Copy, Debug)]
pub struct Tagged<'a> {
    pub op: &'a Operator,
    pub parity: Parity,
    pub delta: &'a Operator,
}

/// `δ(xy)` from the derivatives of the factors:
///
/// ```text
/// even·even   (δx)y + x(δy)
/// odd·even    (δx)y + i·x(δy)
/// odd·odd     i(δx)y − i·x(δy)
/// even·odd   −i(δx)y + x(δy)
/// ```
pub fn twisted_leibniz(x: &Tagged, y: &Tagged) -> Result<Operator> {
    let (cx, cy) = match (x.parity, y.parity) {
        (Parity::Even, Parity::Even) => (C64::new(1.0, 0.0), C64::new(1.0, 0.0)),
        (Parity::Odd, Parity::Even) => (C64::new(1.0, 0.0), I),
        (Parity::Odd, Parity::Odd) => (I, -I),
        (Parity::Even, Parity::Odd) => (-I, C64::new(1.0, 0.0)),
    };
    let dims = [x.op.dim(), x.delta.dim(), y.op.dim(), y.delta.dim()];
    if let Some(&bad) = dims.iter().find(|&&d| d != dims[0]) {
        return Err(Error::DimensionMismatch {
            left: dims[0],
            right: bad,
        });
    }
    Ok(&(x.delta * y.op).scale(cx) + &(x.op * y.delta).scale(cy))
}

/// `√i = e^{iπ/4}`.
pub fn sqrt_i() -> C64 {
    C64::from_polar(1.0, std::f64::consts::FRAC_PI_4)
}

/// Coefficients of `a(s)` and `b(s)` on the basis `(a, b)`:
///
/// ```text
/// a(s) = a cos(s√i) + (b/√i) sin(s√i)
/// b(s) = b cos(s√i) − a √i sin(s√i)
/// ```
///
/// Returned as the matrix whose columns are `a(s)` and `b(s)`.
pub fn odd_flow_coefficients(s: f64) -> Matrix2<C64> {
    let r = sqrt_i();
    let c = (r * s).cos();
    let sn = (r * s).sin();
    Matrix2::new(c, -r * sn, sn / r, c)
}

/// Operators `(a(s), b(s))` of the closed-form Ib flow.
pub fn odd_flow_generators(config: &ModeConfig, s: f64) -> Result<(Operator, Operator)> {
    let (a, b) = single_generators(config)?;
    let m = odd_flow_coefficients(s);
    let combine = |col: usize| &a.scale(m[(0, col)]) + &b.scale(m[(1, col)]);
    Ok((combine(0), combine(1)))
}

fn single_generators(config: &ModeConfig) -> Result<(Operator, Operator)> {
    if config.n_fermion() != 1 || config.n_boson() != 1 {
        return Err(Error::Config("the Ib flow is built for F=B=1".into()));
    }
    Ok((fock::fermion(config, 0)?, fock::boson(config, 0)?))
}

/// `δ` restricted to `span{a, b}` as a 2×2 matrix, read off from the
/// operator brackets on the safe subspace (margin 1).
#[derive(Clone, Debug)]
pub struct IbGenerator {
    pub matrix: Matrix2<C64>,
    /// Largest part of `δa`, `δb` outside `span{a, b}` on the safe subspace.
    pub residual: f64,
}

pub fn ib_generator(config: &ModeConfig, g: &Operator) -> Result<IbGenerator> {
    let (a, b) = single_generators(config)?;
    let p = fock::safe_projector_with_margin(config, 1)?;
    let (ap, bp) = (a.sandwich(&p), b.sandwich(&p));
    let inner = |x: &Operator, y: &Operator| (&x.adjoint() * y).trace();
    let mut matrix = Matrix2::zeros();
    let mut residual: f64 = 0.0;
    for (col, (x, parity)) in [(&a, Parity::Odd), (&b, Parity::Even)].into_iter().enumerate() {
        let dx = odd_derivation(g, x, parity)?.sandwich(&p);
        let ca = inner(&ap, &dx) / inner(&ap, &ap);
        let cb = inner(&bp, &dx) / inner(&bp, &bp);
        matrix[(0, col)] = ca;
        matrix[(1, col)] = cb;
        let rest = &(&dx - &ap.scale(ca)) - &bp.scale(cb);
        residual = residual.max(rest.max_abs());
    }
    Ok(IbGenerator { matrix, residual })
}

/// Integrates `v' = M v` from the identity with classical RK4. Column `j`
/// of the result holds the coefficients of the `j`-th generator at `s`.
pub fn integrate_linear_flow(m: &Matrix2<C64>, s: f64, steps: usize) -> Matrix2<C64> {
    let steps = steps.max(1);
    let h = s / steps as f64;
    let mut cols = [
        Vector2::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
        Vector2::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0)),
    ];
    for v in cols.iter_mut() {
        for _ in 0..steps {
            let k1 = m * *v;
            let k2 = m * (*v + k1 * C64::new(h / 2.0, 0.0));
            let k3 = m * (*v + k2 * C64::new(h / 2.0, 0.0));
            let k4 = m * (*v + k3 * C64::new(h, 0.0));
            *v += (k1 + k2 * C64::new(2.0, 0.0) + k3 * C64::new(2.0, 0.0) + k4) * C64::new(h / 6.0, 0.0);
        }
    }
    Matrix2::from_columns(&cols)
}

/// `(a(s), b(s))` obtained by integrating `a' = δa`, `b' = δb`.
pub fn ib_flow(config: &ModeConfig, g: &Operator, s: f64, steps: usize) -> Result<(Operator, Operator)> {
    let (a, b) = single_generators(config)?;
    let generator = ib_generator(config, g)?;
    let m = integrate_linear_flow(&generator.matrix, s, steps);
    let combine = |col: usize| &a.scale(m[(0, col)]) + &b.scale(m[(1, col)]);
    Ok((combine(0), combine(1)))
}

/// Exponential series `Σ s^k/k! δ^k X`, stopped once a term drops below
/// `1e-16` in max-entry norm or after `max_terms` terms.
pub fn derivation_series(
    config: &ModeConfig,
    g: &Operator,
    x: &Operator,
    s: f64,
    max_terms: usize,
) -> Result<Operator> {
    let mut total = x.clone();
    let mut term = x.clone();
    for k in 1..=max_terms {
        term = derivation(config, g, &term)?.scale_real(s / k as f64);
        if term.max_abs() < 1e-16 {
            break;
        }
        total = &total + &term;
    }
    Ok(total)
}
