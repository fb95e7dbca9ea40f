//! Analysis of intersecting and semiregular subsets in finite transitive
//! permutation groups.
//!
//! The pipeline: enumerate a group ([`perm`]), pick a transitive action,
//! partition its conjugacy classes into point-fixing and derangement classes
//! ([`derangement`]), bound maximum intersecting subsets through weighted
//! class-matrix spectra ([`spectra`]) or find them exactly ([`solver`]), and
//! assemble lower/upper certificates for the normalized intersection density
//! `rho(G/Omega) = |S| / (|G_w| sqrt(|Omega|))`. The [`suzuki`] module holds
//! the closed-form `Sz(q)` data that cross-validates the generic machinery,
//! and [`constructions`] builds every worked example family.

pub mod algebra;
pub mod constructions;
pub mod derangement;
pub mod perm;
pub mod solver;
pub mod spectra;
pub mod suzuki;
