//! Supercharges, their Hamiltonians, and the four flows Ia, Ib, II, III.

use serde::Serialize;

pub mod clifford;
pub mod consistency;
pub mod derivation;
pub mod evolution;
pub mod supercharge;

pub use clifford::{
    build_clifford, clifford_amplitude_defect, clifford_config, clifford_state, unitary_iii, CliffordCharge,
};
pub use consistency::{consistency_conditions, ConsistencyReport};
pub use derivation::{
    derivation, derivation_series, detect_parity, ib_flow, ib_generator, odd_derivation, odd_flow_coefficients,
    odd_flow_generators, sqrt_i, twisted_leibniz, Parity, Tagged,
};
pub use evolution::{
    closed_form_a_s, closed_form_b_s, closed_form_evolved_state, closed_form_norm, heisenberg_ia,
    printed_closed_form_a_s, spectral_exp, transition_probabilities, unitary_ia,
};
pub use supercharge::{
    build_g, build_ga, build_h, build_wz, commutator_g_ga, commutator_g_ga_closed_form, fermion_phase, wz_closed_form,
    wz_closed_form_compare, wz_convergence, wz_spectrum, SuperchargeSpec, Variant, WessZumino, WzClosedFormReport,
};

/// The four candidate supertransformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FlowKind {
    /// Conjugation by `e^{iGs}` on the Bose–Fermi algebra.
    Ia,
    /// The odd derivation, integrated to a linear map.
    Ib,
    /// Conjugation by `e^{iG_θ s}` in the Grassmann module.
    II,
    /// Conjugation by the Clifford-extended charge.
    III,
}

impl FlowKind {
    pub const ALL: [FlowKind; 4] = [FlowKind::Ia, FlowKind::Ib, FlowKind::II, FlowKind::III];

    pub fn name(&self) -> &'static str {
        match self {
            FlowKind::Ia => "Ia",
            FlowKind::Ib => "Ib",
            FlowKind::II => "II",
            FlowKind::III => "III",
        }
    }
}
