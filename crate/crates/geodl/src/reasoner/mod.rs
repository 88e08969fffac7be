//! The classical oracle: consistency and entailment for each implemented
//! language, plus a bounded finite-model searcher used as an independent
//! cross-check.
//!
//! Three decision procedures cover the dialects:
//! * a completion-rule saturation for the nominal fragments (with role
//!   hierarchy and composition, no inverses) — [`el_consistent`];
//! * a context-refining saturation for the inverse fragment (no nominals),
//!   where anonymous elements are identified by the set of atoms forced on
//!   them — [`elhi_consistent`];
//! * brute force over propositional valuations — [`alcp_consistent`];
//! * a ground chase for the pattern language — [`pattern_chase`].
//!
//! [`finite_model_search`] is exhaustive over interpretations up to a domain
//! bound: a bounded refuter/confirmer, never a general decision procedure.

mod alcp;
mod el;
mod elhi;
mod fmodel;
mod patterns;

pub use alcp::{alcp_consistent, alcp_entails};
pub use el::{el_consistent_mode_a, el_entails_mode_a};
pub use elhi::{elhi_consistent, elhi_entails};
pub use fmodel::{finite_countermodel, finite_model_search};
pub use patterns::{pattern_chase, pattern_entails, ChaseResult, GroundAtom};

use thiserror::Error;

use crate::kb::{Axiom, KbError, KnowledgeBase, LanguageTag};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ReasonError {
    #[error("language mismatch: {op} expects {expected}, got {got}")]
    LanguageMismatch {
        op: &'static str,
        expected: &'static str,
        got: &'static str,
    },
    #[error("signature too large: {0}")]
    ResourceCap(String),
    #[error(transparent)]
    Kb(#[from] KbError),
}

/// Consistency for any EL-family normal-form tag; dispatches on the tag.
pub fn el_consistent(kb: &KnowledgeBase) -> Result<bool, ReasonError> {
    match kb.language {
        LanguageTag::EloBotNf | LanguageTag::ElhoCompBotNf => el_consistent_mode_a(kb),
        LanguageTag::ElhiBotNf => elhi_consistent(kb),
        other => Err(ReasonError::LanguageMismatch {
            op: "el_consistent",
            expected: "an EL-family normal-form tag",
            got: other.as_str(),
        }),
    }
}

/// Entailment of a normal-form axiom or assertion from an EL-family KB.
pub fn el_entails(kb: &KnowledgeBase, ax: &Axiom) -> Result<bool, ReasonError> {
    match kb.language {
        LanguageTag::EloBotNf | LanguageTag::ElhoCompBotNf => el_entails_mode_a(kb, ax),
        LanguageTag::ElhiBotNf => elhi_entails(kb, ax),
        other => Err(ReasonError::LanguageMismatch {
            op: "el_entails",
            expected: "an EL-family normal-form tag",
            got: other.as_str(),
        }),
    }
}

/// Dispatching consistency over every implemented language.
pub fn consistent(kb: &KnowledgeBase) -> Result<bool, ReasonError> {
    match kb.language {
        LanguageTag::AlcP => alcp_consistent(kb),
        LanguageTag::PatternsNoComp | LanguageTag::PatternsFull => {
            Ok(pattern_chase(kb)?.consistent)
        }
        _ => el_consistent(kb),
    }
}

/// Dispatching entailment over every implemented language.
pub fn entails(kb: &KnowledgeBase, ax: &Axiom) -> Result<bool, ReasonError> {
    match kb.language {
        LanguageTag::AlcP => alcp_entails(kb, ax),
        LanguageTag::PatternsNoComp | LanguageTag::PatternsFull => {
            patterns::pattern_kb_entails(kb, ax)
        }
        _ => el_entails(kb, ax),
    }
}
