//! Per-method embedding payloads and the geometric satisfaction relations.
//!
//! Each of the nine methods evaluates axioms of its own language against an
//! [`Embedding`]; everything reduces to the exact region algebra in
//! [`crate::geom`], so verdicts are exact. Calls outside a method's language
//! fail with [`SemError::OutsideLanguage`] rather than guessing.

mod balls;
mod boxes;
mod embedding;
pub mod io;
mod loss;
mod regions;
mod verdict;

pub use boxes::{int_box, rat_box};
pub use embedding::{ConceptPayload, Embedding, IndPayload, RolePayload};
pub use loss::elem_loss;
pub use verdict::{Exactness, Verdict};

use thiserror::Error;

use crate::geom::{FmBudget, GeomError};
use crate::kb::{abox_to_tbox, Axiom, KbError, KnowledgeBase, LanguageTag};

/// The nine embedding methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    /// Convex geometric models: concepts are convex regions of `R^d`, roles
    /// convex regions of `R^{2d}`.
    Conv,
    /// Axis-aligned cone models for propositional concept inclusions.
    Cone,
    /// Open-ball concepts with role translations.
    Elem,
    /// Ball method extended with role hierarchy and composition.
    Emel,
    /// Box concepts with role translations.
    Elbe,
    /// Box concepts with diagonal-affine role maps, individuals as points.
    Boxel,
    /// Box concepts with bumps and head/tail role boxes.
    Box2el,
    /// Relation box pairs with entity bumps.
    Boxe,
    /// Band-shaped relation regions in the doubled space.
    Expr,
}

pub const ALL_METHODS: [Method; 9] = [
    Method::Conv,
    Method::Cone,
    Method::Elem,
    Method::Emel,
    Method::Elbe,
    Method::Boxel,
    Method::Box2el,
    Method::Boxe,
    Method::Expr,
];

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Conv => "conv",
            Method::Cone => "cone",
            Method::Elem => "elem",
            Method::Emel => "emel",
            Method::Elbe => "elbe",
            Method::Boxel => "boxel",
            Method::Box2el => "box2el",
            Method::Boxe => "boxe",
            Method::Expr => "expr",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        ALL_METHODS.iter().copied().find(|m| m.as_str() == s)
    }

    /// The language each method's semantics is defined for.
    pub fn language(self) -> LanguageTag {
        match self {
            Method::Conv => LanguageTag::ElhiBotNf,
            Method::Cone => LanguageTag::AlcP,
            Method::Elem | Method::Elbe | Method::Boxel => LanguageTag::EloBotNf,
            Method::Emel | Method::Box2el => LanguageTag::ElhoCompBotNf,
            Method::Boxe => LanguageTag::PatternsNoComp,
            Method::Expr => LanguageTag::PatternsFull,
        }
    }

    /// Whether an axiom belongs to the method's language (the set the
    /// faithfulness and entailment audits quantify over).
    pub fn in_language(self, ax: &Axiom) -> bool {
        let mut kb = KnowledgeBase::empty(self.language());
        let mut sig = crate::kb::Signature::default();
        crate::kb::collect_signature(&mut sig, ax);
        kb.signature = sig;
        kb.tbox.push(ax.clone());
        let tag_ok = kb.validate().is_ok();
        match self {
            // Band semantics covers role assertions and patterns only.
            Method::Expr => tag_ok && !matches!(ax, Axiom::ConceptAssertion { .. }),
            _ => tag_ok,
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SemError {
    #[error("axiom outside the `{method}` language: {axiom}")]
    OutsideLanguage { method: &'static str, axiom: String },
    #[error("unsupported fragment for `{method}`: {what}")]
    Unsupported { method: &'static str, what: String },
    #[error("missing {kind} payload `{name}`")]
    MissingPayload { kind: String, name: String },
    #[error("payload for `{name}` has the wrong kind for the method")]
    PayloadKind { name: String },
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Kb(#[from] KbError),
    #[error("{0}")]
    Invalid(String),
}

pub(crate) fn outside(method: Method, ax: &Axiom) -> SemError {
    SemError::OutsideLanguage {
        method: method.as_str(),
        axiom: crate::kb::axiom_text(ax),
    }
}

/// Evaluates one axiom against an embedding of the matching method.
pub fn satisfies(e: &Embedding, ax: &Axiom, budget: &FmBudget) -> Result<Verdict, SemError> {
    match e.method {
        Method::Conv => regions::satisfies_conv(e, ax, budget),
        Method::Cone => regions::satisfies_cone(e, ax),
        Method::Elem => balls::satisfies_elem(e, ax),
        Method::Emel => balls::satisfies_emel(e, ax),
        Method::Elbe => boxes::satisfies_elbe(e, ax),
        Method::Boxel => boxes::satisfies_boxel(e, ax),
        Method::Box2el => boxes::satisfies_box2el(e, ax),
        Method::Boxe => boxes::satisfies_boxe(e, ax),
        Method::Expr => regions::satisfies_expr(e, ax, budget),
    }
}

/// Whether the embedding is a model of the KB: the conjunction of
/// [`satisfies`] over every TBox axiom and every assertion, with assertions
/// routed through the nominal encoding for the methods that require it.
pub fn is_model(e: &Embedding, kb: &KnowledgeBase, budget: &FmBudget) -> Result<Verdict, SemError> {
    let routed;
    let kb = if matches!(e.method, Method::Elem | Method::Emel | Method::Elbe | Method::Box2el) {
        routed = abox_to_tbox(kb)?;
        &routed
    } else {
        kb
    };
    let mut verdict = Verdict::exact(true);
    for ax in kb.axioms() {
        verdict = verdict.and(satisfies(e, ax, budget)?);
        if !verdict.value {
            // Still exact; short-circuiting keeps model checks cheap.
            return Ok(verdict);
        }
    }
    Ok(verdict)
}

/// Convenience: every axiom of `kb` that the embedding fails to satisfy.
pub fn violated_axioms(
    e: &Embedding,
    kb: &KnowledgeBase,
    budget: &FmBudget,
) -> Result<Vec<Axiom>, SemError> {
    let routed;
    let kb = if matches!(e.method, Method::Elem | Method::Emel | Method::Elbe | Method::Box2el) {
        routed = abox_to_tbox(kb)?;
        &routed
    } else {
        kb
    };
    let mut out = Vec::new();
    for ax in kb.axioms() {
        if !satisfies(e, ax, budget)?.value {
            out.push(ax.clone());
        }
    }
    Ok(out)
}
