//! Exact-arithmetic library for mass formulas of local Galois representations.
//!
//! The crate computes the counting functions attached to representations of
//! finite groups over local fields (Artin, Swan and tame conductors, the
//! tuning-module valuation `v` and the weight `w`), assembles total masses as
//! exact Laurent polynomials in the residue cardinality `q`, and verifies the
//! resulting identities two ways:
//!
//! - in the tame case by finite-group combinatorics (Frobenius-stable
//!   conjugacy classes and per-class eigenvalue data), and
//! - in the wild case by direct enumeration of totally ramified extensions of
//!   p-adic base fields via Eisenstein polynomials, assembled into etale
//!   algebras.
//!
//! Modules:
//! - [`qlaurent`]: exact rationals and sparse Laurent polynomials in `q` with
//!   exponents in `(1/r)Z`.
//! - [`partitions`]: partition combinatorics and the two closed-form
//!   polynomials with partition-number coefficients.
//! - [`groups`]: conjugacy-class machinery for permutation groups and the
//!   symmetric-group specialization by cycle type.
//! - [`reps`]: per-class eigenvalue data of tame representations, conductor
//!   computations from ramification filtrations, and the wild cyclic
//!   Jordan-block closed forms.
//! - [`masses`]: total masses over Frobenius-stable classes and the tame
//!   McKay verification harness.
//! - [`padic`]: truncated p-adic arithmetic, Eisenstein enumeration, and the
//!   Serre / Bhargava / wild-Hilbert mass checks.

pub mod checks;
pub mod groups;
pub mod masses;
pub mod padic;
pub mod partitions;
pub mod qlaurent;
pub mod reps;
