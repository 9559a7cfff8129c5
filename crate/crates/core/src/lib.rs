//! Sum-product counterexamples in rings of integers and function fields.
//!
//! The library builds the finite sets that witness slow sum-product growth
//! (`A = G·P`, products of a unit box and a translated additive box), verifies
//! their structural claims with exact arithmetic, measures growth, and
//! evaluates the explicit constants attached to them.
//!
//! Start with the runnable examples:
//!
//! - `field_arithmetic`: certified embeddings, norms and regulators
//! - `boxes`: additive and unit boxes with their counting bounds
//! - `gp_construction`: the `A = G·P` sets and their envelopes
//! - `growth_report`: sumsets, product sets and energies
//! - `residue_reduction`: reduction modulo a split prime
//! - `function_field`: the genus-0 section-space analogue
//! - `explicit_constants`: the saving optimizer and exponent conditions
//! - `unit_equation`: solutions of `x_1 + ... + x_k = 1` in unit boxes

pub mod bounds;
pub mod boxenum;
pub mod cli;
pub mod construct;
pub mod error;
pub mod funcfield;
pub mod gf;
pub mod linrel;
pub mod numberfield;
pub mod poly;
pub mod rational;
pub mod residue;
pub mod setcalc;

pub use error::{Error, Result};
pub use numberfield::{make_field, AlgInt, FieldContext, FieldSpec};
pub use setcalc::{Ambient, ElementSet, GrowthReport, PrimeField};

pub(crate) fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}
