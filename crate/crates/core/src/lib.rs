//! Exact K-theory classes of higher Kazhdan projections, delocalised
//! l2-Betti numbers and Euler characteristics of finitely generated virtually
//! free groups, presented as finite graphs of finite groups.
//!
//! The entry point is a [`graph::GraphOfGroups`], validated into a
//! [`graph::ValidatedGraph`]. From there:
//!
//! * [`invariants`] computes the class of `p_1`, the delocalised Betti table,
//!   the Euler characteristic decomposition, `F_G` and the Schreier rank;
//! * [`fusion`] computes conjugacy classes of torsion elements and subgroups;
//! * for one-edge graphs, [`words`], [`ring`] and [`oracle`] provide normal
//!   forms, the rational group ring and a brute-force conjugacy check.

pub mod cli;
pub mod error;
pub mod fusion;
pub mod graph;
pub mod group;
pub mod input;
pub mod invariants;
pub mod oracle;
pub mod rational;
pub mod ring;
pub mod samples;
pub mod words;

pub use error::{Error, Result};
