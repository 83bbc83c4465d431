//! Numerical workbench for q-deformed oscillator algebras and q-deformed su(2).
//!
//! Every algebra in this crate is realized as dense complex matrices on a
//! truncated ladder (or a closed spin multiplet), and every claimed identity
//! is checked as a residual on an interior window that excludes cutoff
//! artifacts.
//!
//! Module map:
//! - [`qnum`]: q-powers with explicit logarithm branch, q-brackets, contraction scalars.
//! - [`linop`]: dense operator kernel (commutators, tensor products, windows).
//! - [`reps`]: MB/HY/GMB/GHY oscillator ladders and spin-j multiplets.
//! - [`schwinger`]: two-mode constructions and their commutator identities.
//! - [`holstein`]: one-mode Holstein–Primakoff realizations.
//! - [`contraction`]: Inönü–Wigner type contractions and the 𝒜_q coaction.
//! - [`truncation`]: finite HY ladders, positivity of norms, equivalence scan.
//! - [`report`]: verification records shared by every verifier.

pub mod contraction;
pub mod holstein;
pub mod linop;
pub mod qnum;
pub mod report;
pub mod reps;
pub mod schwinger;
pub mod truncation;

mod error;

pub use error::{Error, Result};
pub use num_complex::Complex64;
