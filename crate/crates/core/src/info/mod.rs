//! Entropy, mutual information, secrecy capacity and equivocation loss.

mod awgn;
mod discrete;
mod loss;
pub mod quadrature;

pub use awgn::{
    awgn_mutual_information, awgn_mutual_information_with_tolerance, integration_half_width,
    mixture_density, mixture_entropy, quantized_mutual_information, quantized_transition,
    DEFAULT_TOLERANCE,
};
pub use discrete::{
    binary_entropy, mutual_information_discrete, secrecy_capacity_bsc, secrecy_capacity_search,
    xlog2x, DiscreteChannelSpec, SecrecySearch, Transition,
};
pub use loss::{equivocation_loss, loss_curve, max_equivocation_loss, LossCurvePoint};
