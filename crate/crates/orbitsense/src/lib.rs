//! Measurement matrices from random orbits of finite-group representations.
//!
//! The library builds complex sensing matrices of the form
//! `(1/sqrt(m)) R_Omega (pi(g) xi)*_{g in G} B`, where `pi` is a unitary
//! representation of a finite group `G`, `xi` a (random) generating vector,
//! `Omega` a sampling set and `B` a unitary basis. On top of that it computes
//! the constants that govern sparse recovery for such matrices exactly at desk
//! scale (orbit-column constants, restricted isometry constants by support
//! enumeration, bounded-orthonormal-system constants), provides the sparse
//! solvers needed to observe recovery and its failure (basis pursuit, OMP,
//! IHT, an exhaustive l0 oracle), and drives everything through a
//! configuration-based CLI.
//!
//! Modules follow the pipeline: [`group`] (Cayley-table groups, cosets),
//! [`rep`] (unitary representations, block structures, induction),
//! [`fourier`] (classical and group Fourier transforms), [`sensing`]
//! (generating vectors, sampling sets, matrix assembly), [`analysis`]
//! (recovery-governing constants and measurement-count formulas),
//! [`recovery`] (solvers) and [`experiment`] (config-driven runs and CSV).

pub mod analysis;
pub mod config;
pub mod error;
pub mod experiment;
pub mod fourier;
pub mod group;
pub mod io;
pub mod linalg;
pub mod recovery;
pub mod rep;
pub mod rng;
pub mod sensing;

pub use error::{Error, Result};
