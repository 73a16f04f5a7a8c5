//! Signed eigenvalue interlacing for `U(p,q) ⊃ U(p,q-1)`.
//!
//! * [`spectrum`]: signed spectra, the eight-pair adjacency rule and the
//!   interlacing predicates.
//! * [`enumeration`]: sign patterns, lattice enumeration of interlacing
//!   spectra, discrete-series branching and the compact Weyl branching law.
//! * [`matrix_lab`]: matrices in `u(p,q)`, corner projection, numerical
//!   signed spectra and randomized projection experiments.
//! * [`preimage`]: derivative-free search for an orbit element projecting
//!   onto a prescribed signed spectrum.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod enumeration;
pub mod error;
pub mod exec;
pub mod lattice;
pub mod matrix_lab;
pub mod preimage;
pub mod spectrum;

pub use error::{Error, Result};
pub use exec::Execution;
pub use spectrum::{
    check_cauchy, check_cauchy_tol, check_ggp, merge_candidates, pair_allowed, Group, MergedSequence, Sign,
    SignPattern, SignedSpectrum, Symbol, DEFAULT_TOL,
};
pub use enumeration::{
    enumerate_sign_patterns, enumerate_small_spectra, ggp_discrete_branching, is_holomorphic_pattern,
    weyl_branching, weyl_dimension, HarishChandraParameter,
};
pub use lattice::{HalfInt, Lattice, LatticeSpectrum, ValueWindow};
pub use matrix_lab::{
    cauchy_matrix_experiment, conjugate, diagonal_model, project_corner, random_pseudo_unitary,
    sample_projection_experiment, signed_spectrum_of, EllipticityReport, IndefiniteForm, ProjectionReport,
    PseudoSkewElement, SampleConfig, Verdict,
};
pub use preimage::{find_preimage, SearchConfig, SearchResult, SearchStatus, SearchWitness};
