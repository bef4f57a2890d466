//! Exact-arithmetic toolkit for counting elliptic curves of minimal degree
//! in K3 surfaces and hyper-Kähler fourfolds of K3^\[2\] type.
//!
//! The crate has two halves:
//!
//! - a modular-forms side ([`qseries`], [`modforms`], [`counts`]) that
//!   expands the generating series of the counts — the Yau–Zaslow series
//!   `1/Δ` for K3 surfaces and a weak Jacobi form of index 1 for
//!   K3^\[2\]-type fourfolds, the latter double-checked against an equivalent
//!   presentation in terms of Γ₀(4) modular forms; and
//! - an intersection-theory side ([`chow`]) — Schubert calculus on
//!   Grassmannians, Chow rings of projective-bundle towers and Chern-character
//!   calculus — that computes the genus (631) of the curve of cubic cones
//!   over a general cubic fourfold and the degree (3780) of its map to the
//!   j-line.
//!
//! Everything is exact: the only scalar type is an arbitrary-precision
//! rational and no operation ever rounds. The `hkcount` binary exposes the
//! tables, series and checks on the command line; see the crate README.

pub mod chow;
pub mod cli;
pub mod counts;
pub mod modforms;
pub mod qseries;
