//! Exact combinatorics of interval orders and their Catalan restrictions.
//!
//! The crate is organized around Fishburn matrices ([`fishmat`]), the
//! relational structures they encode ([`relcore`], [`ftriples`]), Dyck-path
//! models of the Catalan subfamilies ([`catalan`]), truncated power series
//! for the generating-function identities ([`series`]) and the permutation
//! class conjecturally linked to Fishburn matrices ([`permlab`]). The
//! [`verify`] module collects every checkable identity into a registry of
//! named checks; [`stats`] does the same for statistics.

pub mod catalan;
pub mod fishmat;
pub mod ftriples;
pub mod permlab;
pub mod relcore;
pub mod series;
pub mod stats;
pub mod verify;
