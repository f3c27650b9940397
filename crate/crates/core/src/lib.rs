//! Exact beta-numeration for the non-simple quadratic Parry numbers.
//!
//! For integers `p > q >= 1`, `beta` is the larger root of
//! `x^2 - (p+1)x + (p-q)` and its Renyi expansion of unity is `p q^omega`.
//! The crate provides:
//!
//! * exact arithmetic in `Z[beta]` and `beta^-f Z[beta]` ([`ring`]),
//! * digit strings, admissibility and rewriting into expansions ([`digits`]),
//! * greedy expansions with periodicity detection ([`expansion`]),
//! * beta-integer enumeration and addition with fractional-part accounting
//!   ([`zbeta`]),
//! * the substitution `A -> A^p B`, `B -> A^q B`, its fixed point, and
//!   balance measurements ([`words`]),
//! * grid sweeps that check the numeration and word results ([`verify`]).

pub mod digits;
pub mod error;
pub mod expansion;
pub mod params;
pub mod ring;
pub mod verify;
pub mod words;
pub mod zbeta;

pub use digits::{evaluate, fp, is_admissible, normalize_rewrite, DigitString};
pub use error::{Error, Result};
pub use expansion::{greedy_expand, is_beta_integer, ExpansionResult, DEFAULT_FRACTIONAL_BUDGET};
pub use params::Params;
pub use ring::{parse_value, FinElem, RingElem};
pub use words::{Letter, WordStream};
pub use zbeta::{add, add_beta_power, lplus_search, successor, AdditionReport, SearchReport};
