//! A workbench for finite universal algebra.
//!
//! Everything here is exact and exhaustive: algebras are finite operation
//! tables, relations are bit matrices, and every verdict is decided by
//! enumeration, never by sampling. The crate answers questions like
//!
//! - is the (quasi)variety generated by these algebras n-permutable, and for
//!   which least n? ([`maltsev::find_hm_terms`] returns the witnessing chain
//!   of Hagemann–Mitschke terms, or a fixpoint certificate that no n works);
//! - do two congruences commute? ([`maltsev::permutability_counterexample`]);
//! - is every compatible preorder on this algebra symmetric?
//!   ([`maltsev::preorder_symmetry_scan`]);
//! - does a pair of Goursat terms make membership in the weakly Mal'tsev
//!   quasivariety decidable by a solution table? ([`maltsev::wm_solution_table`]);
//! - does this internal reflexive graph carry a (unique) category or groupoid
//!   structure? ([`internal`]: multiplication search, associativity and
//!   cancellability checks, two independent routes to the inverse);
//! - do split pullbacks admit unique fill-ins against a span or a battery of
//!   test algebras? ([`internal::condition_v_check`],
//!   [`internal::pushout_of_sections_check`]).
//!
//! The primary interface is the `examples/` directory — one runnable program
//! per capability:
//!
//! ```text
//! examples/
//! ├── free_algebras.rs          free algebras of generated quasivarieties, witness terms
//! ├── classify_permutability.rs least-n permutability with Hagemann–Mitschke chains
//! ├── relation_calculus.rs      kernels, composition, closures, classification
//! ├── preorder_scan.rs          hunting non-symmetric compatible preorders
//! ├── weak_maltsev_tables.rs    solution tables and the weak-Mal'tsev quasi-identity
//! ├── internal_dossier.rs       categories vs groupoids on finite carriers
//! ├── pregroupoid_interchange.rs the interchange law on 3x3 configurations
//! └── fillin_conditions.rs      fill-in uniqueness for split pullbacks
//! ```
//!
//! Run one with `cargo run -p finalg --example classify_permutability`.
//!
//! The same machinery is exposed as a thin command-line tool (`finalg`) whose
//! subcommands operate on JSON algebra files; see the crate README.
//!
//! Conventions used throughout: carriers are `0..n`; operation tables are
//! flat, row-major, first argument most significant; composition of relations
//! is left-to-right (`x R;S z` iff `∃y: x R y ∧ y S z`); all public values are
//! immutable once constructed, so everything is safe to share across threads.

pub mod algebra;
pub mod builtin;
pub mod cli;
pub mod format;
pub mod free;
pub mod internal;
pub mod maltsev;
pub mod relation;
pub mod report;
pub mod term;

use thiserror::Error;

/// Errors shared across the crate. Every constructor and decision procedure
/// reports precondition violations and resource exhaustion through this type;
/// negative verdicts (counterexamples) are ordinary return values, not errors.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),
    #[error("element {element} out of range for carrier of size {size}")]
    OutOfRange { element: usize, size: usize },
    #[error("relation is not reflexive: missing ({0}, {0})")]
    NotReflexive(usize),
    #[error("relation carriers do not match: {0}")]
    CarrierMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("resource bound exceeded: {what} (budget {budget}, reached {reached})")]
    ResourceBound {
        what: String,
        budget: usize,
        reached: usize,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal verification failed: {0}")]
    Verification(String),
}

/// Explicit resource bounds. Exceeding a bound is an error ([`Error::ResourceBound`]),
/// never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest carrier a closure (product, free algebra, relation) may reach.
    pub max_elements: usize,
    /// Largest number of search nodes a backtracking enumeration may expand.
    pub max_nodes: usize,
    /// Largest number of seed subsets a relation scan may enumerate.
    pub max_seeds: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 1_000_000,
            max_nodes: 10_000_000,
            max_seeds: 65_536,
        }
    }
}

pub use algebra::{
    check_homomorphism, enumerate_homomorphisms, product, split_pullback, subalgebra_generated,
    FiniteAlgebra, Homomorphism, OpSym, Signature, SplitPullbackDiagram,
};
pub use free::{free_algebra, FreeAlgebra, VarietySpec};
pub use relation::{
    alternating_chain, compatible_closure, compose, kernel_pair, transitive_closure,
    CompatibleRelation,
};
pub use term::{Identity, QuasiIdentity, Term};
