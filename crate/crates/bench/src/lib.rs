//! Shared fixtures for the criterion benches.

use wiretap_core::PrngStream;

pub fn bench_rng(label: &str) -> PrngStream {
    PrngStream::new(b"wiretap-bench-seed", label).expect("seed is long enough")
}
