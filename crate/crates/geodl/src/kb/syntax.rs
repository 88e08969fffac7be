//! Core abstract syntax: signatures, concepts, axioms, patterns and
//! knowledge bases, plus the nominal encoding of ABoxes and the DL reading
//! of role patterns.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum KbError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("language violation ({tag}): {axiom}: {msg}")]
    LanguageViolation {
        tag: String,
        axiom: String,
        msg: String,
    },
    #[error("{0}")]
    Invalid(String),
    #[error("non-EL constructor in normalisation input: {0}")]
    NonElConstructor(String),
    #[error("language `{0}` is not finite")]
    NotFinite(String),
}

/// The finite signature a knowledge base is built over. The three name sets
/// are pairwise disjoint; order is preserved as declared (it fixes the
/// deterministic enumeration order).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Signature {
    pub concepts: Vec<String>,
    pub roles: Vec<String>,
    pub individuals: Vec<String>,
}

impl Signature {
    pub fn new(concepts: &[&str], roles: &[&str], individuals: &[&str]) -> Self {
        Signature {
            concepts: concepts.iter().map(|s| s.to_string()).collect(),
            roles: roles.iter().map(|s| s.to_string()).collect(),
            individuals: individuals.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn has_concept(&self, n: &str) -> bool {
        self.concepts.iter().any(|c| c == n)
    }

    pub fn has_role(&self, n: &str) -> bool {
        self.roles.iter().any(|c| c == n)
    }

    pub fn has_individual(&self, n: &str) -> bool {
        self.individuals.iter().any(|c| c == n)
    }

    pub fn add_concept(&mut self, n: &str) {
        if !self.has_concept(n) {
            self.concepts.push(n.to_string());
        }
    }

    pub fn add_role(&mut self, n: &str) {
        if !self.has_role(n) {
            self.roles.push(n.to_string());
        }
    }

    pub fn add_individual(&mut self, n: &str) {
        if !self.has_individual(n) {
            self.individuals.push(n.to_string());
        }
    }

    pub fn check_disjoint(&self) -> Result<(), KbError> {
        for c in &self.concepts {
            if self.has_role(c) || self.has_individual(c) {
                return Err(KbError::Invalid(format!(
                    "name `{c}` used in more than one signature sort"
                )));
            }
        }
        for r in &self.roles {
            if self.has_individual(r) {
                return Err(KbError::Invalid(format!(
                    "name `{r}` used in more than one signature sort"
                )));
            }
        }
        Ok(())
    }
}

/// A role name or its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RoleAtom {
    pub name: String,
    pub inverse: bool,
}

impl RoleAtom {
    pub fn plain(name: &str) -> Self {
        RoleAtom { name: name.to_string(), inverse: false }
    }

    pub fn inv(name: &str) -> Self {
        RoleAtom { name: name.to_string(), inverse: true }
    }

    pub fn inverted(&self) -> Self {
        RoleAtom { name: self.name.clone(), inverse: !self.inverse }
    }
}

impl fmt::Display for RoleAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-", self.name)
        } else {
            write!(f, "{}", self.name)
        }
    }
}

/// Concept expressions (finite trees over the usual constructors).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Concept {
    Top,
    Bot,
    Name(String),
    Nominal(String),
    Not(Box<Concept>),
    And(Box<Concept>, Box<Concept>),
    Or(Box<Concept>, Box<Concept>),
    Exists(RoleAtom, Box<Concept>),
    Forall(RoleAtom, Box<Concept>),
}

impl Concept {
    pub fn name(n: &str) -> Self {
        Concept::Name(n.to_string())
    }

    pub fn nominal(n: &str) -> Self {
        Concept::Nominal(n.to_string())
    }

    pub fn and(a: Concept, b: Concept) -> Self {
        Concept::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Concept, b: Concept) -> Self {
        Concept::Or(Box::new(a), Box::new(b))
    }

    pub fn not(c: Concept) -> Self {
        Concept::Not(Box::new(c))
    }

    pub fn exists(r: RoleAtom, c: Concept) -> Self {
        Concept::Exists(r, Box::new(c))
    }

    /// A basic concept: a name, a nominal, top or bottom.
    pub fn is_basic(&self) -> bool {
        matches!(self, Concept::Top | Concept::Bot | Concept::Name(_) | Concept::Nominal(_))
    }

    /// True when the tree uses only EL constructors (and nominals).
    pub fn is_el(&self) -> bool {
        match self {
            Concept::Top | Concept::Bot | Concept::Name(_) | Concept::Nominal(_) => true,
            Concept::And(a, b) => a.is_el() && b.is_el(),
            Concept::Exists(_, c) => c.is_el(),
            Concept::Not(_) | Concept::Or(_, _) | Concept::Forall(_, _) => false,
        }
    }

    /// True when the tree is propositional (no roles, no nominals).
    pub fn is_propositional(&self) -> bool {
        match self {
            Concept::Top | Concept::Bot | Concept::Name(_) => true,
            Concept::Nominal(_) => false,
            Concept::Not(c) => c.is_propositional(),
            Concept::And(a, b) | Concept::Or(a, b) => a.is_propositional() && b.is_propositional(),
            Concept::Exists(_, _) | Concept::Forall(_, _) => false,
        }
    }
}

/// The seven role patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatternKind {
    Symmetry,
    Inversion,
    Hierarchy,
    Intersection,
    Composition,
    Exclusion,
    Asymmetry,
}

impl PatternKind {
    pub fn arity(self) -> usize {
        match self {
            PatternKind::Symmetry | PatternKind::Asymmetry => 1,
            PatternKind::Inversion | PatternKind::Hierarchy | PatternKind::Exclusion => 2,
            PatternKind::Intersection | PatternKind::Composition => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PatternKind::Symmetry => "Symmetry",
            PatternKind::Inversion => "Inversion",
            PatternKind::Hierarchy => "Hierarchy",
            PatternKind::Intersection => "Intersection",
            PatternKind::Composition => "Composition",
            PatternKind::Exclusion => "Exclusion",
            PatternKind::Asymmetry => "Asymmetry",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pattern {
    pub kind: PatternKind,
    pub roles: Vec<String>,
}

impl Pattern {
    pub fn new(kind: PatternKind, roles: &[&str]) -> Self {
        Pattern { kind, roles: roles.iter().map(|s| s.to_string()).collect() }
    }
}

/// Left-hand sides of the DL reading of a pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RoleLhs {
    Atom(RoleAtom),
    And(RoleAtom, RoleAtom),
    Comp(RoleAtom, RoleAtom),
}

/// Right-hand sides: a role atom or its negation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RoleRhs {
    Atom(RoleAtom),
    NegAtom(RoleAtom),
}

/// The DL counterpart of a pattern: an inclusion or an equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DlRoleAxiom {
    Inclusion { sub: RoleLhs, sup: RoleRhs },
    Equivalence { left: RoleAtom, right: RoleAtom },
}

/// The DL translation of the seven patterns.
pub fn pattern_to_dl(p: &Pattern) -> DlRoleAxiom {
    let r = |i: usize| RoleAtom::plain(&p.roles[i]);
    match p.kind {
        PatternKind::Symmetry => DlRoleAxiom::Inclusion {
            sub: RoleLhs::Atom(r(0)),
            sup: RoleRhs::Atom(r(0).inverted()),
        },
        PatternKind::Inversion => DlRoleAxiom::Equivalence {
            left: r(0),
            right: r(1).inverted(),
        },
        PatternKind::Hierarchy => DlRoleAxiom::Inclusion {
            sub: RoleLhs::Atom(r(0)),
            sup: RoleRhs::Atom(r(1)),
        },
        PatternKind::Intersection => DlRoleAxiom::Inclusion {
            sub: RoleLhs::And(r(0), r(1)),
            sup: RoleRhs::Atom(r(2)),
        },
        PatternKind::Composition => DlRoleAxiom::Inclusion {
            sub: RoleLhs::Comp(r(0), r(1)),
            sup: RoleRhs::Atom(r(2)),
        },
        PatternKind::Exclusion => DlRoleAxiom::Inclusion {
            sub: RoleLhs::Atom(r(0)),
            sup: RoleRhs::NegAtom(r(1)),
        },
        PatternKind::Asymmetry => DlRoleAxiom::Inclusion {
            sub: RoleLhs::Atom(r(0)),
            sup: RoleRhs::NegAtom(r(0).inverted()),
        },
    }
}

/// Axioms of a knowledge base.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    /// `lhs ⊑ rhs`; `from_assertion` marks inclusions produced by the
    /// nominal encoding of ABox facts, so audits can keep classifying them
    /// as assertions.
    ConceptInclusion {
        lhs: Concept,
        rhs: Concept,
        from_assertion: bool,
    },
    /// `sub ⊑ sup` between role atoms (`sup` may be inverse).
    RoleInclusion { sub: RoleAtom, sup: RoleAtom },
    /// `first ∘ second ⊑ sup`.
    RoleComposition {
        first: String,
        second: String,
        sup: String,
    },
    /// `A(a)` with a concept name only.
    ConceptAssertion { concept: String, individual: String },
    /// `r(a, b)` with a role name only.
    RoleAssertion { role: String, subject: String, object: String },
    Pattern(Pattern),
}

impl Axiom {
    pub fn subclass(lhs: Concept, rhs: Concept) -> Axiom {
        Axiom::ConceptInclusion { lhs, rhs, from_assertion: false }
    }

    /// Whether audits should treat the axiom as assertional, per the nominal
    /// convention: native assertions, `{a} ⊑ A` and `{a} ⊑ ∃r.{b}` count.
    pub fn is_assertional(&self) -> bool {
        match self {
            Axiom::ConceptAssertion { .. } | Axiom::RoleAssertion { .. } => true,
            Axiom::ConceptInclusion { lhs: Concept::Nominal(_), rhs, .. } => match rhs {
                Concept::Name(_) => true,
                Concept::Exists(RoleAtom { inverse: false, .. }, filler) => {
                    matches!(&**filler, Concept::Nominal(_))
                }
                _ => false,
            },
            _ => false,
        }
    }

    pub fn is_tbox(&self) -> bool {
        !self.is_assertional()
    }
}

/// Language tags. The normal-form tags admit only the four inclusion shapes
/// (plus bottom right-hand sides); the pattern tags admit patterns and
/// assertions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LanguageTag {
    /// Normal form with inverse roles and role inclusions, no nominals.
    ElhiBotNf,
    /// Normal form with nominals.
    EloBotNf,
    /// Normal form with nominals, role inclusions and compositions.
    ElhoCompBotNf,
    /// Propositional concept inclusions plus assertions.
    AlcP,
    /// Patterns without composition, plus assertions.
    PatternsNoComp,
    /// All patterns, plus assertions.
    PatternsFull,
}

impl LanguageTag {
    pub fn as_str(self) -> &'static str {
        match self {
            LanguageTag::ElhiBotNf => "ELHI-bot-nf",
            LanguageTag::EloBotNf => "ELO-bot-nf",
            LanguageTag::ElhoCompBotNf => "ELHO-comp-bot-nf",
            LanguageTag::AlcP => "ALCp",
            LanguageTag::PatternsNoComp => "patterns-no-comp",
            LanguageTag::PatternsFull => "patterns-full",
        }
    }

    pub fn parse(s: &str) -> Option<LanguageTag> {
        match s {
            "ELHI-bot-nf" => Some(LanguageTag::ElhiBotNf),
            "ELO-bot-nf" => Some(LanguageTag::EloBotNf),
            "ELHO-comp-bot-nf" => Some(LanguageTag::ElhoCompBotNf),
            "ALCp" => Some(LanguageTag::AlcP),
            "patterns-no-comp" => Some(LanguageTag::PatternsNoComp),
            "patterns-full" => Some(LanguageTag::PatternsFull),
            _ => None,
        }
    }

    pub fn allows_nominals(self) -> bool {
        matches!(self, LanguageTag::EloBotNf | LanguageTag::ElhoCompBotNf)
    }

    pub fn allows_inverse(self) -> bool {
        matches!(self, LanguageTag::ElhiBotNf)
    }

    pub fn is_el_family(self) -> bool {
        matches!(
            self,
            LanguageTag::ElhiBotNf | LanguageTag::EloBotNf | LanguageTag::ElhoCompBotNf
        )
    }

    pub fn is_patterns(self) -> bool {
        matches!(self, LanguageTag::PatternsNoComp | LanguageTag::PatternsFull)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnowledgeBase {
    pub signature: Signature,
    pub tbox: Vec<Axiom>,
    pub abox: Vec<Axiom>,
    pub language: LanguageTag,
}

impl KnowledgeBase {
    pub fn empty(language: LanguageTag) -> Self {
        KnowledgeBase {
            signature: Signature::default(),
            tbox: vec![],
            abox: vec![],
            language,
        }
    }

    pub fn axioms(&self) -> impl Iterator<Item = &Axiom> {
        self.tbox.iter().chain(self.abox.iter())
    }

    /// Validates that every axiom fits the language tag.
    pub fn validate(&self) -> Result<(), KbError> {
        self.signature.check_disjoint()?;
        for ax in self.axioms() {
            validate_axiom(self.language, ax).map_err(|msg| KbError::LanguageViolation {
                tag: self.language.as_str().to_string(),
                axiom: format!("{ax:?}"),
                msg,
            })?;
        }
        Ok(())
    }
}

/// A basic concept admissible on normal-form left-hand sides.
fn nf_basic_lhs(c: &Concept, tag: LanguageTag) -> bool {
    match c {
        Concept::Top | Concept::Name(_) => true,
        Concept::Nominal(_) => tag.allows_nominals(),
        _ => false,
    }
}

/// A basic concept admissible on normal-form right-hand sides.
fn nf_basic_rhs(c: &Concept, tag: LanguageTag) -> bool {
    match c {
        Concept::Bot | Concept::Top | Concept::Name(_) => true,
        Concept::Nominal(_) => tag.allows_nominals(),
        _ => false,
    }
}

fn nf_role_ok(r: &RoleAtom, tag: LanguageTag) -> bool {
    !r.inverse || tag.allows_inverse()
}

fn validate_axiom(tag: LanguageTag, ax: &Axiom) -> Result<(), String> {
    match tag {
        LanguageTag::ElhiBotNf | LanguageTag::EloBotNf | LanguageTag::ElhoCompBotNf => {
            match ax {
                Axiom::ConceptInclusion { lhs, rhs, .. } => {
                    let lhs_ok = match lhs {
                        c if nf_basic_lhs(c, tag) => true,
                        Concept::And(a, b) => nf_basic_lhs(a, tag) && nf_basic_lhs(b, tag),
                        Concept::Exists(r, f) => nf_role_ok(r, tag) && nf_basic_lhs(f, tag),
                        _ => false,
                    };
                    let rhs_ok = match rhs {
                        c if nf_basic_rhs(c, tag) => true,
                        Concept::Exists(r, f) => {
                            let filler_ok = match f.as_ref() {
                                Concept::Name(_) => true,
                                Concept::Nominal(_) => tag.allows_nominals(),
                                _ => false,
                            };
                            nf_role_ok(r, tag) && filler_ok
                        }
                        _ => false,
                    };
                    // existential on both sides is not a normal shape
                    let both_exists = matches!(lhs, Concept::Exists(_, _))
                        && matches!(rhs, Concept::Exists(_, _));
                    // conjunction only with basic right-hand side
                    let conj_exists = matches!(lhs, Concept::And(_, _))
                        && matches!(rhs, Concept::Exists(_, _));
                    if lhs_ok && rhs_ok && !both_exists && !conj_exists {
                        Ok(())
                    } else {
                        Err("not a normal-form concept inclusion".into())
                    }
                }
                Axiom::RoleInclusion { sub, sup } => {
                    if sub.inverse {
                        return Err("inverse role on the left of a role inclusion".into());
                    }
                    match tag {
                        LanguageTag::ElhiBotNf => Ok(()),
                        LanguageTag::ElhoCompBotNf if !sup.inverse => Ok(()),
                        _ => Err("role inclusions not allowed in this language".into()),
                    }
                }
                Axiom::RoleComposition { .. } => {
                    if tag == LanguageTag::ElhoCompBotNf {
                        Ok(())
                    } else {
                        Err("role composition not allowed in this language".into())
                    }
                }
                Axiom::ConceptAssertion { .. } | Axiom::RoleAssertion { .. } => Ok(()),
                Axiom::Pattern(_) => Err("patterns not allowed in a normal-form language".into()),
            }
        }
        LanguageTag::AlcP => match ax {
            Axiom::ConceptInclusion { lhs, rhs, .. } => {
                if lhs.is_propositional() && rhs.is_propositional() {
                    Ok(())
                } else {
                    Err("only propositional concepts allowed".into())
                }
            }
            Axiom::ConceptAssertion { .. } | Axiom::RoleAssertion { .. } => Ok(()),
            _ => Err("only propositional inclusions and assertions allowed".into()),
        },
        LanguageTag::PatternsNoComp | LanguageTag::PatternsFull => match ax {
            Axiom::Pattern(p) => {
                if p.roles.len() != p.kind.arity() {
                    return Err("pattern arity mismatch".into());
                }
                let mut distinct = p.roles.clone();
                distinct.sort();
                distinct.dedup();
                if distinct.len() != p.roles.len() {
                    return Err("pattern roles must be distinct".into());
                }
                if p.kind == PatternKind::Composition && tag == LanguageTag::PatternsNoComp {
                    Err("composition pattern not allowed in this language".into())
                } else {
                    Ok(())
                }
            }
            Axiom::ConceptAssertion { .. } | Axiom::RoleAssertion { .. } => Ok(()),
            _ => Err("only patterns and assertions allowed".into()),
        },
    }
}

/// Encodes the ABox into the TBox using nominals: `A(a)` becomes `{a} ⊑ A`
/// and `r(a,b)` becomes `{a} ⊑ ∃r.{b}`. The produced inclusions carry the
/// assertion-origin mark.
pub fn abox_to_tbox(kb: &KnowledgeBase) -> Result<KnowledgeBase, KbError> {
    let mut out = kb.clone();
    for ax in &kb.abox {
        let encoded = match ax {
            Axiom::ConceptAssertion { concept, individual } => Axiom::ConceptInclusion {
                lhs: Concept::nominal(individual),
                rhs: Concept::name(concept),
                from_assertion: true,
            },
            Axiom::RoleAssertion { role, subject, object } => Axiom::ConceptInclusion {
                lhs: Concept::nominal(subject),
                rhs: Concept::exists(RoleAtom::plain(role), Concept::nominal(object)),
                from_assertion: true,
            },
            other => other.clone(),
        };
        out.tbox.push(encoded);
    }
    out.abox.clear();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abox_encoding_matches_the_nominal_convention() {
        let mut kb = KnowledgeBase::empty(LanguageTag::EloBotNf);
        kb.signature = Signature::new(&["A"], &["r"], &["a", "b"]);
        kb.abox.push(Axiom::ConceptAssertion { concept: "A".into(), individual: "a".into() });
        kb.abox.push(Axiom::RoleAssertion { role: "r".into(), subject: "a".into(), object: "b".into() });
        let enc = abox_to_tbox(&kb).unwrap();
        assert!(enc.abox.is_empty());
        assert_eq!(
            enc.tbox[0],
            Axiom::ConceptInclusion {
                lhs: Concept::nominal("a"),
                rhs: Concept::name("A"),
                from_assertion: true
            }
        );
        assert_eq!(
            enc.tbox[1],
            Axiom::ConceptInclusion {
                lhs: Concept::nominal("a"),
                rhs: Concept::exists(RoleAtom::plain("r"), Concept::nominal("b")),
                from_assertion: true
            }
        );
        assert!(enc.tbox[0].is_assertional());
        assert!(enc.tbox[1].is_assertional());

        // empty abox: unchanged
        let empty = KnowledgeBase::empty(LanguageTag::EloBotNf);
        assert_eq!(abox_to_tbox(&empty).unwrap(), empty);
    }

    #[test]
    fn pattern_translations() {
        let sym = pattern_to_dl(&Pattern::new(PatternKind::Symmetry, &["r"]));
        assert_eq!(
            sym,
            DlRoleAxiom::Inclusion { sub: RoleLhs::Atom(RoleAtom::plain("r")), sup: RoleRhs::Atom(RoleAtom::inv("r")) }
        );
        let comp = pattern_to_dl(&Pattern::new(PatternKind::Composition, &["r", "s", "t"]));
        assert_eq!(
            comp,
            DlRoleAxiom::Inclusion {
                sub: RoleLhs::Comp(RoleAtom::plain("r"), RoleAtom::plain("s")),
                sup: RoleRhs::Atom(RoleAtom::plain("t"))
            }
        );
        let asym = pattern_to_dl(&Pattern::new(PatternKind::Asymmetry, &["r"]));
        assert_eq!(
            asym,
            DlRoleAxiom::Inclusion { sub: RoleLhs::Atom(RoleAtom::plain("r")), sup: RoleRhs::NegAtom(RoleAtom::inv("r")) }
        );
        let inv = pattern_to_dl(&Pattern::new(PatternKind::Inversion, &["r", "s"]));
        assert_eq!(inv, DlRoleAxiom::Equivalence { left: RoleAtom::plain("r"), right: RoleAtom::inv("s") });
    }

    #[test]
    fn language_validation() {
        let mut kb = KnowledgeBase::empty(LanguageTag::PatternsNoComp);
        kb.signature = Signature::new(&[], &["r", "s", "t"], &[]);
        kb.tbox.push(Axiom::Pattern(Pattern::new(PatternKind::Composition, &["r", "s", "t"])));
        assert!(matches!(kb.validate(), Err(KbError::LanguageViolation { .. })));

        let mut kb2 = KnowledgeBase::empty(LanguageTag::EloBotNf);
        kb2.signature = Signature::new(&["A", "B"], &["r"], &[]);
        kb2.tbox.push(Axiom::subclass(
            Concept::exists(RoleAtom::inv("r"), Concept::name("A")),
            Concept::name("B"),
        ));
        assert!(kb2.validate().is_err()); // inverse needs the ELHI tag

        let mut kb3 = kb2.clone();
        kb3.language = LanguageTag::ElhiBotNf;
        kb3.tbox[0] = Axiom::subclass(
            Concept::exists(RoleAtom::inv("r"), Concept::name("A")),
            Concept::name("B"),
        );
        assert!(kb3.validate().is_ok());

        // nested concept is not normal form
        let mut kb4 = KnowledgeBase::empty(LanguageTag::EloBotNf);
        kb4.signature = Signature::new(&["A", "B", "C"], &["r"], &[]);
        kb4.tbox.push(Axiom::subclass(
            Concept::name("A"),
            Concept::exists(RoleAtom::plain("r"), Concept::and(Concept::name("B"), Concept::name("C"))),
        ));
        assert!(kb4.validate().is_err());
    }

    #[test]
    fn assertional_classification() {
        let native = Axiom::ConceptAssertion { concept: "A".into(), individual: "a".into() };
        assert!(native.is_assertional());
        let tbox_ax = Axiom::subclass(Concept::name("A"), Concept::Bot);
        assert!(tbox_ax.is_tbox());
        // {a} ⊑ ⊥ is not expressible as an assertion
        let nom_bot = Axiom::subclass(Concept::nominal("a"), Concept::Bot);
        assert!(nom_bot.is_tbox());
    }
}
