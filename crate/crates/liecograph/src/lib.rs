#![cfg_attr(not(feature = "std"), no_std)]
//! Exact computation with graph coalgebra models of Lie coalgebras.
//!
//! The crate is organised bottom up: [`linalg`] supplies exact rational
//! linear algebra, [`shapes`] the graphs and planar trees, [`pairing`] the
//! configuration pairing between them, [`graphcoalg`] and [`liealg`] the
//! cofree coalgebras and free algebras built on them, and [`functors`] the
//! bar and cobar constructions used to compute rational homotopy.

extern crate alloc;

pub mod functors;
pub mod graphcoalg;
pub mod labels;
pub mod lincomb;
pub mod liealg;
pub mod linalg;
pub mod pairing;
pub mod rational;
pub mod shapes;

pub use rational::Rational;
