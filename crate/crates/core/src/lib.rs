//! Spike matroids over prime fields.
//!
//! A spike is given by the diagonal of its special standard representation.
//! The crate computes circuit-hyperplane signatures, swaps distinguished
//! bases, enumerates weak-equivalence classes, checks the zero-sum lemmas the
//! theory rests on, and decides representability over other prime fields by
//! exhaustive search and by integer certificates.

pub mod error;
pub mod gf;
pub mod matrix;
pub mod spike;
pub mod repr;
pub mod subset;
pub mod zerosum;

pub use error::{Error, Result};
pub use gf::{make_field, FieldElem, PrimeModulus};
pub use matrix::{basis_family, change_basis_standardize, spike_det, BasisFamily, MatrixGF};
pub use spike::{
    build_rep, canonical_form, check_axioms, circuit_hyperplane, enumerate_spikes,
    is_dependent_transversal, normalize, signature, swap, weakly_equivalent, Diagonal, Element,
    Signature, SpikeRep,
};
pub use subset::{IndexSet, SetFamily};
pub use repr::{
    characteristic_set, construct_prop41, construct_prop43, estimate_l, find_rep_over,
    propagate_facts, uniqueness_audit, CharReport, CharVerdict, Certificate, LinearFact,
    Representable,
};
pub use zerosum::{
    subset_with_sum, verify_lemma_2_1, verify_lemma_2_2, zero_sum_subset, LemmaReport,
    ZeroSumInstance,
};
