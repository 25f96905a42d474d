//! Coset wiretap codes: parameters, stochastic syndrome encoding, exhaustive
//! ML decoding and equivocation measurement.

mod coset;
mod decode;
mod equivocation;
mod params;

pub use coset::CosetCode;
pub use decode::{block_error_rate, decode_ml, ErrorRate, MlDecoder, MAX_ENUMERATION_DIM};
pub use equivocation::{
    exact_equivocation, monte_carlo_equivocation, monte_carlo_equivocation_parallel,
    EquivocationMethod, EquivocationReport, MAX_EXACT_N,
};
pub use params::{params_from_channel, WiretapCodeParams};
