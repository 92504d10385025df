//! Shared fixtures for the benchmarks.

use annulate::annulus::{MarkedAnnulus, NAngulation};

pub fn standard(n_gon: usize, rank: usize, p: usize) -> NAngulation {
    NAngulation::standard(MarkedAnnulus::new(n_gon, rank, p).expect("valid regime"))
}
