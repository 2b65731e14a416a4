//! Biquaternionic parabolic Dirac operators and a Maxwell solver built on
//! their Teodorescu-type right inverses.
//!
//! Fields live on an origin-centered periodic box `[-L/2, L/2)³` with `n`
//! nodes per axis. Time is sampled at `t_j = j·dt`, `j = 0..nt`.

pub mod biquat;
pub mod cli;
pub mod completion;
pub mod dirac;
pub mod error;
pub mod gauge;
pub mod grid;
pub mod maxwell;
pub mod parabolic;
pub mod teodorescu;

pub use biquat::{Biquaternion, Conjugation, Quaternion};
pub use error::{Error, Result};
pub use grid::{BiquatField, Domain, Region, SmoothWindow, SpaceTimeField, SpatialGrid};
