//! Symbolic sequence generators: interval exchange transformations and
//! their codings, the return-time condition checker and search, and
//! codings of polynomial torus sequences with certified stability radii.

mod iet;
mod poly;
mod veech;

pub use iet::{
    iet_coding, iet_irreducible, IntervalPartition, IntervalSet, Permutation, Iet,
};
pub use poly::{poly_coding, poly_orbit, stability_radius, PolyCodingSpec};
pub use veech::{veech_check, veech_search, VeechReport};

#[derive(Debug, thiserror::Error)]
pub enum FlowError {
    #[error("point {0} outside the domain [0, {1})")]
    OutOfDomain(String, String),
    #[error("some orbit point lies exactly on a partition boundary (n = {n})")]
    ZeroRadius { n: i64 },
    #[error("{0}")]
    Domain(String),
}
