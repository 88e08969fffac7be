//! Per-instance audits: soundness, entailment closure, weak and strong
//! faithfulness, and pattern capture.
//!
//! Universally quantified properties are not decidable by testing, so these
//! audits work instance by instance: a single violating model refutes a
//! guarantee; passing instances accumulate evidence, never proof. Every
//! outcome is backed by a self-verifying certificate.

use crate::config::Config;
use crate::kb::{
    axiom_text, enumerate_language, serialize_kb, Axiom, KnowledgeBase, LanguageTag, Pattern,
    Signature,
};
use crate::reasoner;
use crate::semantics::{self, io as semio, Embedding};

use super::certificates::{Certificate, CertificateKind};
use super::AuditError;

/// Outcome of a single-instance audit of an existential/refutable property.
#[derive(Debug, Clone, PartialEq)]
pub enum AuditOutcome {
    Pass,
    Violation(Certificate),
}

fn require_model(e: &Embedding, kb: &KnowledgeBase, cfg: &Config) -> Result<(), AuditError> {
    if semantics::is_model(e, kb, &cfg.fm_budget())?.value {
        Ok(())
    } else {
        Err(AuditError::Precondition(
            "the embedding is not a model of the KB".into(),
        ))
    }
}

/// Checks one model of one KB for unsoundness: a verified model of a
/// classically inconsistent KB refutes method soundness outright.
pub fn audit_soundness_instance(
    e: &Embedding,
    kb: &KnowledgeBase,
    cfg: &Config,
) -> Result<AuditOutcome, AuditError> {
    require_model(e, kb, cfg)?;
    if reasoner::consistent(kb)? {
        Ok(AuditOutcome::Pass)
    } else {
        Ok(AuditOutcome::Violation(Certificate {
            kind: CertificateKind::UnsoundnessWitness,
            method: e.method.as_str().into(),
            kb: serialize_kb(kb),
            embedding: Some(semio::embedding_to_string(e)),
            axioms: vec![],
            note: "verified model of a classically inconsistent KB".into(),
        }))
    }
}

/// The finite language the audits quantify over for a method, over the KB's
/// signature, capped by the configuration.
fn audit_language(
    e: &Embedding,
    sig: &Signature,
    cfg: &Config,
) -> Result<Vec<Axiom>, AuditError> {
    let tag = e.method.language();
    if !crate::kb::language_is_finite(tag) {
        return Err(AuditError::Precondition(format!(
            "language `{}` is not finite; supply an explicit axiom list",
            tag.as_str()
        )));
    }
    let axioms = enumerate_language(sig, tag)?;
    if axioms.len() > cfg.enum_cap {
        return Err(AuditError::EnumerationCap {
            size: axioms.len(),
            cap: cfg.enum_cap,
        });
    }
    Ok(axioms
        .into_iter()
        .filter(|ax| e.method.in_language(ax))
        .collect())
}

/// The scope split of an audit report.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ViolationSplit {
    pub assertional: Vec<Axiom>,
    pub terminological: Vec<Axiom>,
}

impl ViolationSplit {
    pub fn is_empty(&self) -> bool {
        self.assertional.is_empty() && self.terminological.is_empty()
    }

    pub fn all(&self) -> impl Iterator<Item = &Axiom> {
        self.assertional.iter().chain(self.terminological.iter())
    }

    fn push(&mut self, ax: Axiom) {
        if ax.is_assertional() {
            self.assertional.push(ax);
        } else {
            self.terminological.push(ax);
        }
    }
}

/// Entailment closure: every classical consequence (within the method's
/// finite language) must be satisfied by the model. Returns the violations.
pub fn audit_entailment_closure(
    e: &Embedding,
    kb: &KnowledgeBase,
    cfg: &Config,
) -> Result<ViolationSplit, AuditError> {
    require_model(e, kb, cfg)?;
    if !reasoner::consistent(kb)? {
        return Err(AuditError::Precondition("the KB is inconsistent".into()));
    }
    let mut out = ViolationSplit::default();
    for ax in audit_language(e, &kb.signature, cfg)? {
        if reasoner::entails(kb, &ax)? && !semantics::satisfies(e, &ax, &cfg.fm_budget())?.value {
            out.push(ax);
        }
    }
    Ok(out)
}

fn extend_with(kb: &KnowledgeBase, ax: &Axiom) -> KnowledgeBase {
    let mut out = kb.clone();
    crate::kb::collect_signature(&mut out.signature, ax);
    match ax {
        Axiom::ConceptAssertion { .. } | Axiom::RoleAssertion { .. } => out.abox.push(ax.clone()),
        _ => out.tbox.push(ax.clone()),
    }
    out
}

/// Weak faithfulness: every satisfied axiom must be consistent with the KB.
pub fn audit_weak_faithfulness(
    e: &Embedding,
    kb: &KnowledgeBase,
    cfg: &Config,
) -> Result<ViolationSplit, AuditError> {
    require_model(e, kb, cfg)?;
    let mut out = ViolationSplit::default();
    for ax in audit_language(e, &kb.signature, cfg)? {
        if semantics::satisfies(e, &ax, &cfg.fm_budget())?.value
            && !reasoner::consistent(&extend_with(kb, &ax))?
        {
            out.push(ax);
        }
    }
    Ok(out)
}

/// Strong faithfulness: every satisfied axiom must be entailed by the KB.
pub fn audit_strong_faithfulness(
    e: &Embedding,
    kb: &KnowledgeBase,
    cfg: &Config,
) -> Result<ViolationSplit, AuditError> {
    require_model(e, kb, cfg)?;
    let mut out = ViolationSplit::default();
    for ax in audit_language(e, &kb.signature, cfg)? {
        if semantics::satisfies(e, &ax, &cfg.fm_budget())?.value && !reasoner::entails(kb, &ax)? {
            out.push(ax);
        }
    }
    Ok(out)
}

/// Packages faithfulness violations as a certificate.
pub fn faithfulness_certificate(
    kind: CertificateKind,
    e: &Embedding,
    kb: &KnowledgeBase,
    violations: &ViolationSplit,
    note: &str,
) -> Certificate {
    Certificate {
        kind,
        method: e.method.as_str().into(),
        kb: serialize_kb(kb),
        embedding: Some(semio::embedding_to_string(e)),
        axioms: violations.all().map(axiom_text).collect(),
        note: note.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaptureReport {
    pub exactly: bool,
    pub exclusively: bool,
}

/// Pattern capture: `exactly` asks that every pattern of the set is
/// satisfied; `exclusively` that every satisfied pattern of the language is
/// entailed by the set.
pub fn capture_check(
    e: &Embedding,
    patterns: &[Pattern],
    tag: LanguageTag,
    sig: &Signature,
    cfg: &Config,
) -> Result<CaptureReport, AuditError> {
    if !tag.is_patterns() {
        return Err(AuditError::Precondition("capture needs a pattern language".into()));
    }
    let budget = cfg.fm_budget();
    let mut exactly = true;
    for p in patterns {
        if !semantics::satisfies(e, &Axiom::Pattern(p.clone()), &budget)?.value {
            exactly = false;
            break;
        }
    }
    let mut exclusively = true;
    for ax in enumerate_language(sig, tag)? {
        let Axiom::Pattern(phi) = &ax else { continue };
        if semantics::satisfies(e, &ax, &budget)?.value
            && !reasoner::pattern_entails(patterns, phi)
        {
            exclusively = false;
            break;
        }
    }
    Ok(CaptureReport { exactly, exclusively })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{OpenBall, RVector};
    use crate::kb::parse_kb;
    use crate::rat::Ext;
    use crate::semantics::{ConceptPayload, IndPayload, Method, RolePayload};

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn unsoundness_witness_on_the_empty_ball() {
        let kb = parse_kb("Language: ELO-bot-nf\nSubClassOf(A Bot)\nAssert(A a)").unwrap();
        let ball = OpenBall::new(RVector::from_ints(&[0, 1]), Ext::zero()).unwrap();
        let mut e = Embedding::new(Method::Elem, 2);
        e.concepts.insert("A".into(), ConceptPayload::Ball(ball.clone()));
        e.individuals.insert("a".into(), IndPayload::Ball(ball));
        let outcome = audit_soundness_instance(&e, &kb, &cfg()).unwrap();
        let AuditOutcome::Violation(cert) = outcome else {
            panic!("expected a violation")
        };
        assert!(cert.reverify(&cfg()).unwrap());
    }

    #[test]
    fn strong_faithfulness_catches_extras() {
        // E(A) = E(B) = R, E(a) = 0 satisfies B ⊑ A and A(a), neither entailed.
        let kb = parse_kb("Language: ELHI-bot-nf\nSubClassOf(A B)\nAssert(B a)").unwrap();
        let mut e = Embedding::new(Method::Conv, 1);
        e.concepts.insert("A".into(), ConceptPayload::Region(crate::geom::HPolyhedron::full(1)));
        e.concepts.insert("B".into(), ConceptPayload::Region(crate::geom::HPolyhedron::full(1)));
        e.individuals.insert("a".into(), IndPayload::Point(RVector::from_ints(&[0])));
        let strong = audit_strong_faithfulness(&e, &kb, &cfg()).unwrap();
        assert!(strong
            .terminological
            .contains(&Axiom::subclass(crate::kb::Concept::name("B"), crate::kb::Concept::name("A"))));
        assert!(strong.assertional.contains(&Axiom::ConceptAssertion {
            concept: "A".into(),
            individual: "a".into()
        }));
        // weak faithfulness holds: everything satisfied is consistent here
        let weak = audit_weak_faithfulness(&e, &kb, &cfg()).unwrap();
        assert!(weak.is_empty());
        // and entailment closure holds for this model
        let closure = audit_entailment_closure(&e, &kb, &cfg()).unwrap();
        assert!(closure.is_empty());
    }

    #[test]
    fn capture_and_exclusivity() {
        use crate::kb::{Pattern, PatternKind};
        // a symmetric band captures symmetry exactly and exclusively
        let band = crate::geom::BandStack::from_slope_center_width(
            &RVector::from_ints(&[1]),
            &RVector::from_ints(&[0]),
            &RVector::from_ints(&[2]),
        )
        .unwrap();
        let mut e = Embedding::new(Method::Expr, 1);
        e.roles.insert("r".into(), RolePayload::Band(band.clone()));
        let sig = Signature::new(&[], &["r"], &[]);
        let s = vec![Pattern::new(PatternKind::Symmetry, &["r"])];
        let report = capture_check(&e, &s, LanguageTag::PatternsFull, &sig, &cfg()).unwrap();
        assert!(report.exactly);
        assert!(report.exclusively);

        // a narrow band inside a wide one satisfies hierarchy, which the
        // set {symmetry} does not entail: exclusivity fails
        let narrow = crate::geom::BandStack::from_slope_center_width(
            &RVector::from_ints(&[1]),
            &RVector::from_ints(&[0]),
            &RVector::from_ints(&[1]),
        )
        .unwrap();
        let mut e2 = Embedding::new(Method::Expr, 1);
        e2.roles.insert("r".into(), RolePayload::Band(narrow));
        e2.roles.insert("s".into(), RolePayload::Band(band));
        let sig2 = Signature::new(&[], &["r", "s"], &[]);
        let report2 = capture_check(&e2, &s, LanguageTag::PatternsFull, &sig2, &cfg()).unwrap();
        assert!(report2.exactly);
        assert!(!report2.exclusively);
    }
}
