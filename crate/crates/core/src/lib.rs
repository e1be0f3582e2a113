//! Exact arithmetic for symbolic dynamics on the circle and the interval.
//!
//! The crate generates symbolic codings of three families of orbits:
//! irrational rotations, interval exchange transformations, and polynomial
//! torus sequences `alpha * n^r + beta * n + gamma`. On top of the codings it
//! computes pinned repetition statistics (one sided `R_n`, two sided `T_n`),
//! exact arc discrepancy of finite point sets, Weyl exponential sums with
//! certified error radii, and a checker plus search for the four return-time
//! conditions satisfied by generic interval exchanges.
//!
//! Everything numeric is exact: scalars are arbitrary precision rationals,
//! irrational parameters enter only as continued fraction prefixes with a
//! certified error bound, and the only approximate layer (exponential sums)
//! carries explicit radii in fixed point ball arithmetic.

pub mod ball;
pub mod discrepancy;
pub mod flows;
pub mod numtheory;
pub mod rat;
pub mod repetitions;
pub mod torus;
pub mod window;

pub use rat::Rat;
pub use torus::{Arc, TorusPartition, TorusPoint};
pub use window::SymbolicWindow;
