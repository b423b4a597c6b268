//! Independent brute-force verifiers and the counting experiments.

pub mod onn;
pub mod spectrum;
pub mod suite;

pub use onn::{cross_ring_compare, onn_polynomial_fit, regular_counts, CompareReport, CountReport, Fit, FitReport};
pub use spectrum::{gl1_spectrum, gl2_full_spectrum, gl2_irreducibles, regular_spectrum};
pub use suite::{verify_lemma_suite, Check, SuiteReport};
