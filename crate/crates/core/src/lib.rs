//! Combinatorics and decision procedures for graded gentle and skew-gentle
//! algebras given as bound quivers.
//!
//! The pipeline runs roughly in module order: a [`Presentation`] is parsed and
//! validated, its letters and words are examined in [`words`], bands are
//! reduced to minimal shapes in [`minimality`], the marked surface is
//! assembled in [`surface`], and [`decide`] turns all of that into verdicts.
//! [`modrep`] is an exact-arithmetic oracle used to cross-check the verdicts
//! on small instances.

pub mod decide;
mod error;
pub mod minimality;
pub mod modrep;
pub mod presentation;
pub mod surface;
pub mod words;

pub use error::{Error, Result};
pub use presentation::{
    fixture, parse, random_gentle, AlgebraClass, Arrow, FixtureParams, Presentation, RandomOptions,
    ValidationReport, WeightedPresentation,
};
