//! Finite supersymmetry transformations on truncated Bose–Fermi Fock spaces.
//!
//! The crate builds the elementary creation and annihilation operators of a
//! finite number of fermionic and bosonic modes, the supercharges that mix
//! them, and the four one-parameter families of transformations generated by
//! those charges:
//!
//! * **Ia** conjugation by `e^{iGs}` on the plain Bose–Fermi algebra;
//! * **Ib** the odd derivation `δ`, integrated to a linear flow;
//! * **II** the Grassmann-parameter flow in the module `A + θB`;
//! * **III** conjugation by the Clifford-extended charge.
//!
//! On top of these it computes susino operators, entanglement of supercharge
//! eigenvectors, and thermal expectation values.
//!
//! Truncation only breaks the bosonic commutation relation on the top boson
//! level, so identities are checked on the range of
//! [`fock::safe_projector`] with a margin equal to the number of boson
//! quanta the identity moves.

pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod fock;
pub mod graded;
pub mod operator;
pub mod susino;
pub mod table;
pub mod thermal;
pub mod tolerances;

pub use error::{Error, Result};
pub use fock::{BasisState, ModeConfig, ModeKind};
pub use operator::{Operator, StateVector, C64};
