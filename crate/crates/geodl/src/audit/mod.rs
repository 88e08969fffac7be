//! Machine-checks of the theoretical properties on concrete
//! `(method, KB, embedding)` instances, the implication-lattice validation
//! of property matrices, and the synthesis/separation probes.
//!
//! Abilities (existence claims) are probed with budgets: a found witness is
//! verified exactly and certified; exhaustion is reported as inconclusive.
//! Guarantees (universal claims) are audited per instance: a single
//! violating model refutes one, passing instances are evidence, never
//! proof. Reports label each outcome accordingly.

mod audits;
mod certificates;
pub mod farkas;
mod lattice;
mod properties;
mod search;
mod synth;

pub use audits::{
    audit_entailment_closure, audit_soundness_instance, audit_strong_faithfulness,
    audit_weak_faithfulness, capture_check, faithfulness_certificate, AuditOutcome, CaptureReport,
    ViolationSplit,
};
pub use certificates::{Certificate, CertificateKind};
pub use lattice::{finite_edges, general_edges, lattice_check, Edge, LatticeViolation};
pub use properties::{published_matrix, Cell, Mode, PropertyId, PropertyMatrix, Scope};
pub use search::{box_to_poly, search_model, SearchGoal};
pub use synth::{conv_fact_model, conv_from_interpretation, probe_separating_model, synth_model};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum AuditError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("language enumeration of {size} axioms exceeds the cap {cap}")]
    EnumerationCap { size: usize, cap: usize },
    #[error(transparent)]
    Kb(#[from] crate::kb::KbError),
    #[error(transparent)]
    Semantics(#[from] crate::semantics::SemError),
    #[error(transparent)]
    Reason(#[from] crate::reasoner::ReasonError),
    #[error(transparent)]
    Geom(#[from] crate::geom::GeomError),
}
