//! Exact geometric satisfaction semantics for region-based knowledge-base
//! embeddings.
//!
//! `geodl` implements, over exact rational arithmetic, the geometric
//! satisfaction relations of nine region-based embedding schemes for
//! description-logic knowledge bases (convex geometric models, axis-aligned
//! cone models, ball embeddings with plain and composable role translations,
//! box embeddings with translations, affine maps, bumps, head/tail boxes and
//! relation box pairs, and band-shaped relation regions in the doubled space),
//! a classical reasoning oracle for the corresponding DL fragments, and an
//! auditor that machine-checks soundness, completeness, entailment closure,
//! weak/strong faithfulness, full expressiveness and pattern-capture claims on
//! concrete `(method, knowledge base, embedding)` instances.
//!
//! The crate is organised around the pipeline
//!
//! ```text
//! kb  ──►  reasoner (classical truth)
//!  │              │
//!  ▼              ▼
//! semantics ──► audit ──► gallery (executable counterexamples)
//!  │
//!  ▼
//! geom (exact region algebra)
//! ```
//!
//! * [`kb`] — abstract syntax, a small line-oriented text format, EL
//!   normalisation, classical finite-model semantics and exhaustive language
//!   enumeration.
//! * [`geom`] — the exact region algebra every satisfaction check reduces to:
//!   rational vectors, boxes, open balls, axis-aligned cones, H-polyhedra
//!   with Fourier–Motzkin projection, band stacks and diagonal affine maps.
//! * [`semantics`] — per-method embedding payloads and the satisfaction
//!   relations themselves, plus the ball-embedding loss terms.
//! * [`reasoner`] — saturation-based consistency/entailment for the EL
//!   fragments, a propositional oracle, a ground chase for role patterns and
//!   a bounded finite-model searcher used as an independent cross-check.
//! * [`audit`] — property definitions, implication-lattice checking for
//!   property matrices, per-instance audits and model-synthesis probes.
//! * [`gallery`] — executable, self-verifying encodings of the known
//!   counterexamples and constructions for these methods.
//!
//! The book under `book/` walks through the same material chapter by
//! chapter; its code listings are compiled and run as doc-tests via the
//! [`guide`] module.

pub mod audit;
pub mod config;
pub mod gallery;
pub mod geom;
pub mod guide;
pub mod kb;
pub mod rat;
pub mod reasoner;
pub mod report;
pub mod semantics;

pub use config::Config;
pub use rat::{Ext, Rat};
