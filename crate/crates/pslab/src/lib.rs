//! Toolkit for partitions into Piatetski-Shapiro sequences ⌊ℓ^κ⌋.
//!
//! p_{κ,m}(n) counts the partitions of n into parts drawn from the sequence
//! (⌊ℓ^κ⌋)_{ℓ>=1}, each sequence index used at most m times. The crate
//! computes it three independent ways and cross-validates them:
//!
//! * exactly, by big-integer dynamic programming on the generating function
//!   ([`partitions`]);
//! * numerically, by solving the saddle equation for the log generating
//!   function ([`saddle`]);
//! * in closed form, by the Hardy-Ramanujan-type asymptotic with explicitly
//!   computed constants ([`asymptotics`]).
//!
//! Supporting layers: scalar special functions ([`numerics`]), exact
//! sequence arithmetic and equidistribution diagnostics ([`sequence`]), the
//! analytic continuation of ζ_κ(s) = Σ ⌊ℓ^κ⌋^{-s} ([`zeta`]), and a small
//! truncated power-series engine ([`series`]).
//!
//! All operations are pure and re-entrant; cached tables are immutable after
//! first construction.

pub mod asymptotics;
pub mod error;
pub mod numerics;
pub mod partitions;
pub mod saddle;
pub mod sequence;
pub mod series;
pub mod zeta;

pub use asymptotics::{
    asymptotic_estimate, theorem_constants, AsymptoticModel, ExpansionCoefficients,
};
pub use error::{Error, Result};
pub use partitions::{count_table, pentagonal_oracle, CountTable};
pub use saddle::{big_l, mellin_expansion, saddle_estimate, solve_saddle, SaddleResult};
pub use sequence::{ps_term, value_multiplicity, weyl_sum, KappaParam, Multiplicity};
pub use series::PowerSeries;
pub use zeta::{integer_kappa_identity_gap, ps_zeta, sigma_values, ZetaMethod, ZetaValue};
