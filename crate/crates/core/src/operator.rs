//! Dense complex operators and state vectors on a truncated Fock space.
//!
//! Both types are thin newtypes over `nalgebra` storage. Products through the
//! `std::ops` traits panic on a dimension mismatch, the same way the
//! underlying matrices do; the bracket helpers [`comm`] and [`anticomm`]
//! check dimensions and return an error instead.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Square complex matrix acting on a Hilbert space of dimension `dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    entries: DMatrix<C64>,
}

impl Operator {
    pub fn from_matrix(entries: DMatrix<C64>) -> Self {
        assert_eq!(entries.nrows(), entries.ncols(), "operators are square matrices");
        Self { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_matrix(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_matrix(DMatrix::identity(dim, dim))
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        Self::from_matrix(DMatrix::from_diagonal(&DVector::from_column_slice(diag)))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let diag: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diagonal(&diag)
    }

    /// Rank-one operator `|ket⟩⟨bra|`.
    pub fn outer(ket: &StateVector, bra: &StateVector) -> Self {
        Self::from_matrix(ket.amplitudes() * bra.amplitudes().adjoint())
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.entries[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_matrix(self.entries.adjoint())
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self::from_matrix(&self.entries * factor)
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }

    pub fn powi(&self, exponent: u32) -> Self {
        let mut out = Self::identity(self.dim());
        for _ in 0..exponent {
            out = &out * self;
        }
        out
    }

    /// Largest entry modulus; the default defect measure for identities.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Spectral norm (largest singular value).
    pub fn op_norm(&self) -> f64 {
        if self.dim() == 0 {
            return 0.0;
        }
        self.entries
            .clone()
            .singular_values()
            .iter()
            .copied()
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        (self - &self.adjoint()).max_abs()
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|c| (0..n).all(|r| r == c || self.entries[(r, c)].norm() <= tol))
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim()).map(|i| self.entries[(i, i)]).collect()
    }

    pub fn real_diagonal(&self) -> Vec<f64> {
        self.diagonal().iter().map(|z| z.re).collect()
    }

    /// `P X P`, the restriction used to evaluate identities on a safe subspace.
    pub fn sandwich(&self, projector: &Operator) -> Self {
        if projector.is_diagonal(0.0) {
            let d = projector.diagonal();
            return Self::from_matrix(DMatrix::from_fn(self.dim(), self.dim(), |r, c| {
                d[r] * self.entries[(r, c)] * d[c]
            }));
        }
        projector * &(self * projector)
    }

    pub fn apply(&self, state: &StateVector) -> StateVector {
        StateVector::new(&self.entries * state.amplitudes())
    }

    /// `⟨ψ|X|ψ⟩`.
    pub fn expectation(&self, state: &StateVector) -> C64 {
        state.inner(&self.apply(state))
    }

    pub fn kron(&self, other: &Operator) -> Self {
        Self::from_matrix(self.entries.kronecker(&other.entries))
    }

    /// Hermitian eigendecomposition: ascending eigenvalues and the unitary
    /// whose columns are the matching eigenvectors.
    pub fn eigh(&self) -> Result<(Vec<f64>, Operator)> {
        let defect = self.hermiticity_defect();
        if defect > 1e-9 * self.max_abs().max(1.0) {
            return Err(Error::NotHermitian(defect));
        }
        let eig = SymmetricEigen::new(self.entries.clone());
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = DMatrix::from_fn(self.dim(), self.dim(), |r, c| eig.eigenvectors[(r, order[c])]);
        Ok((values, Operator::from_matrix(vectors)))
    }

    pub fn eigenvalues_hermitian(&self) -> Result<Vec<f64>> {
        self.eigh().map(|(values, _)| values)
    }

    /// Applies `f` to a hermitian operator through its spectral
    /// decomposition. Diagonal inputs skip the eigensolver.
    pub fn hermitian_function(&self, f: impl Fn(f64) -> C64) -> Result<Operator> {
        if self.is_diagonal(1e-14 * self.max_abs().max(1.0)) {
            let diag: Vec<C64> = self.real_diagonal().into_iter().map(&f).collect();
            return Ok(Operator::from_diagonal(&diag));
        }
        let (values, vectors) = self.eigh()?;
        let weights: Vec<C64> = values.into_iter().map(f).collect();
        let scaled = DMatrix::from_fn(self.dim(), self.dim(), |r, c| vectors.entries[(r, c)] * weights[c]);
        Ok(Operator::from_matrix(product(&scaled, &vectors.entries.adjoint())))
    }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        Operator::from_matrix(&self.entries + &rhs.entries)
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        Operator::from_matrix(&self.entries - &rhs.entries)
    }
}

/// Below this size the generic complex product is fast enough.
const SPLIT_PRODUCT_DIM: usize = 24;

fn split(x: &DMatrix<C64>) -> (DMatrix<f64>, Option<DMatrix<f64>>) {
    let re = x.map(|z| z.re);
    let im = x.iter().any(|z| z.im != 0.0).then(|| x.map(|z| z.im));
    (re, im)
}

/// Complex product through real `f64` products, which nalgebra runs on an
/// optimised kernel. Real factors skip their imaginary products.
fn product(x: &DMatrix<C64>, y: &DMatrix<C64>) -> DMatrix<C64> {
    if x.nrows().max(y.ncols()) < SPLIT_PRODUCT_DIM {
        return x * y;
    }
    let (xr, xi) = split(x);
    let (yr, yi) = split(y);
    let mut re = &xr * &yr;
    let mut im = DMatrix::<f64>::zeros(x.nrows(), y.ncols());
    if let Some(xi) = &xi {
        im += xi * &yr;
    }
    if let Some(yi) = &yi {
        im += &xr * yi;
    }
    if let (Some(xi), Some(yi)) = (&xi, &yi) {
        re -= xi * yi;
    }
    re.zip_map(&im, C64::new)
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        Operator::from_matrix(product(&self.entries, &rhs.entries))
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        Operator::from_matrix(-&self.entries)
    }
}

impl Add for Operator {
    type Output = Operator;
    fn add(self, rhs: Operator) -> Operator {
        Operator::from_matrix(self.entries + rhs.entries)
    }
}

impl Sub for Operator {
    type Output = Operator;
    fn sub(self, rhs: Operator) -> Operator {
        Operator::from_matrix(self.entries - rhs.entries)
    }
}

impl Mul for Operator {
    type Output = Operator;
    fn mul(self, rhs: Operator) -> Operator {
        &self * &rhs
    }
}

impl Neg for Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        Operator::from_matrix(-self.entries)
    }
}

impl Mul<C64> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: C64) -> Operator {
        self.scale(rhs)
    }
}

impl Mul<f64> for &Operator {
    type Output = Operator;
    fn mul(self, rhs: f64) -> Operator {
        self.scale_real(rhs)
    }
}

fn check_dims(x: &Operator, y: &Operator) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    Ok(())
}

/// Commutator `XY − YX`.
pub fn comm(x: &Operator, y: &Operator) -> Result<Operator> {
    check_dims(x, y)?;
    Ok(&(x * y) - &(y * x))
}

/// Anticommutator `XY + YX`.
pub fn anticomm(x: &Operator, y: &Operator) -> Result<Operator> {
    check_dims(x, y)?;
    Ok(&(x * y) + &(y * x))
}

/// `U X U†`.
pub fn conjugate(unitary: &Operator, x: &Operator) -> Operator {
    &(unitary * x) * &unitary.adjoint()
}

/// Max-entry distance between two operators.
pub fn distance(x: &Operator, y: &Operator) -> f64 {
    (x - y).max_abs()
}

/// Column vector of complex amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<C64>,
}

impl StateVector {
    pub fn new(amplitudes: DVector<C64>) -> Self {
        Self { amplitudes }
    }

    pub fn from_slice(amplitudes: &[C64]) -> Self {
        Self::new(DVector::from_column_slice(amplitudes))
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(DVector::zeros(dim))
    }

    /// The `index`-th unit vector.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = DVector::zeros(dim);
        v[index] = ONE;
        Self::new(v)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn normalized(&self) -> Self {
        Self::new(self.amplitudes.unscale(self.norm()))
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self::new(&self.amplitudes * factor)
    }

    /// Largest amplitude distance.
    pub fn distance(&self, other: &StateVector) -> f64 {
        (&self.amplitudes - &other.amplitudes)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

impl Add for &StateVector {
    type Output = StateVector;
    fn add(self, rhs: &StateVector) -> StateVector {
        StateVector::new(&self.amplitudes + &rhs.amplitudes)
    }
}

impl Sub for &StateVector {
    type Output = StateVector;
    fn sub(self, rhs: &StateVector) -> StateVector {
        StateVector::new(&self.amplitudes - &rhs.amplitudes)
    }
}
