//! Abstract syntax, parsing, normalisation, classical semantics and language
//! enumeration for the DL dialects and pattern languages handled by the
//! crate.

mod classical;
mod enumerate;
mod normalize;
mod parse;
mod syntax;

pub use classical::{classical_satisfies, eval_concept, is_classical_model, FiniteInterpretation};
pub use enumerate::{enumerate_language, language_is_finite, normal_form_count};
pub use normalize::{normalize, normalize_kb};
pub use parse::{axiom_text, collect_signature, parse_kb, serialize_kb};
pub use syntax::{
    abox_to_tbox, pattern_to_dl, Axiom, Concept, DlRoleAxiom, KbError, KnowledgeBase, LanguageTag,
    Pattern, PatternKind, RoleAtom, RoleLhs, RoleRhs, Signature,
};
