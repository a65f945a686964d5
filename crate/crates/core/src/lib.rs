//! Generation probabilities of finite groups of Lie type.
//!
//! The crate computes, exactly or by Monte Carlo, the probability that a
//! random pair drawn from a finite matrix group `G(q)` (or from a pair of its
//! conjugacy classes) generates `G(q)`. Supported families are `SL2`, `SL3`
//! and `Sp4` over `GF(q)` together with their central quotients.
//!
//! * [`ffield`]: finite fields and subfield membership.
//! * [`matgrp`]: matrices, the group families, samplers and conjugacy classes.
//! * [`gentest`]: algebra spans, trace fields, the `SL2` subgroup test and
//!   subgroup closure.
//! * [`algdata`]: class dimension data for exceptional algebraic groups.
//! * [`estimate`]: exact and Monte Carlo probability engines.
//! * [`report`]: CSV schemas, experiment configuration and plot scripts.

pub mod algdata;
pub mod arith;
pub mod error;
pub mod estimate;
pub mod ffield;
pub mod gentest;
pub mod matgrp;
pub mod report;

pub use error::{Error, Result};
pub use ffield::{FieldElem, FiniteField};
