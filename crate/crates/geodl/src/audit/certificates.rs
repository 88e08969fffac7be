//! Self-verifying certificates: every certificate carries the KB, the
//! embedding and the axioms involved, and can replay its own checks.

use serde::Serialize;

use crate::config::Config;
use crate::kb::{parse_kb, Axiom};
use crate::reasoner;
use crate::semantics::{self, io as semio};

use super::AuditError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertificateKind {
    /// A verified model of a classically inconsistent KB.
    UnsoundnessWitness,
    /// A classically consistent KB for which synthesis exhausted its budget,
    /// together with the symbolic argument label that rules models out.
    IncompletenessArgument,
    /// A model failing an entailed axiom.
    NonEntailedModel,
    /// A model satisfying an axiom inconsistent with the KB.
    NonWeakFaithful,
    /// A model satisfying an axiom not entailed by the KB.
    NonStrongFaithful,
    /// A verified model of the positive side falsifying every negative.
    SeparationFound,
    /// Budget exhausted without a separating model (a probe outcome, not a
    /// proof of impossibility).
    SeparationNotFound,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub method: String,
    /// The KB in the text format.
    pub kb: String,
    /// The embedding in the JSON format, when one is part of the witness.
    pub embedding: Option<String>,
    /// The axioms involved (violations, negatives), in the text format.
    pub axioms: Vec<String>,
    pub note: String,
}

impl Certificate {
    /// Replays the defining checks of the certificate.
    pub fn reverify(&self, cfg: &Config) -> Result<bool, AuditError> {
        let kb = parse_kb(&self.kb)?;
        let budget = cfg.fm_budget();
        let embedding = match &self.embedding {
            Some(text) => Some(semio::embedding_from_str(text)?),
            None => None,
        };
        let axioms: Vec<Axiom> = {
            let mut out = Vec::new();
            for line in &self.axioms {
                let mini = parse_kb(&format!(
                    "Language: {}\n{line}",
                    semantics::Method::parse(&self.method)
                        .map(|m| m.language().as_str())
                        .unwrap_or("ELHO-comp-bot-nf")
                ));
                match mini {
                    Ok(k) => out.extend(k.axioms().cloned()),
                    Err(e) => return Err(AuditError::Kb(e)),
                }
            }
            out
        };
        let is_model = |e: &semantics::Embedding| -> Result<bool, AuditError> {
            Ok(semantics::is_model(e, &kb, &budget)?.value)
        };
        match self.kind {
            CertificateKind::UnsoundnessWitness => {
                let Some(e) = &embedding else { return Ok(false) };
                Ok(is_model(e)? && !reasoner::consistent(&kb)?)
            }
            CertificateKind::IncompletenessArgument => Ok(reasoner::consistent(&kb)?),
            CertificateKind::NonEntailedModel => {
                let Some(e) = &embedding else { return Ok(false) };
                if !is_model(e)? || axioms.is_empty() {
                    return Ok(false);
                }
                for ax in &axioms {
                    if !reasoner::entails(&kb, ax)? || semantics::satisfies(e, ax, &budget)?.value {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            CertificateKind::NonWeakFaithful => {
                let Some(e) = &embedding else { return Ok(false) };
                if !is_model(e)? || axioms.is_empty() {
                    return Ok(false);
                }
                for ax in &axioms {
                    if !semantics::satisfies(e, ax, &budget)?.value {
                        return Ok(false);
                    }
                    let mut extended = kb.clone();
                    crate::kb::collect_signature(&mut extended.signature, ax);
                    if ax.is_assertional() && matches!(ax, Axiom::ConceptAssertion { .. } | Axiom::RoleAssertion { .. }) {
                        extended.abox.push(ax.clone());
                    } else {
                        extended.tbox.push(ax.clone());
                    }
                    if reasoner::consistent(&extended)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            CertificateKind::NonStrongFaithful => {
                let Some(e) = &embedding else { return Ok(false) };
                if !is_model(e)? || axioms.is_empty() {
                    return Ok(false);
                }
                for ax in &axioms {
                    if !semantics::satisfies(e, ax, &budget)?.value || reasoner::entails(&kb, ax)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            CertificateKind::SeparationFound => {
                let Some(e) = &embedding else { return Ok(false) };
                if !is_model(e)? {
                    return Ok(false);
                }
                for ax in &axioms {
                    if semantics::satisfies(e, ax, &budget)?.value {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            CertificateKind::SeparationNotFound => Ok(true),
        }
    }
}
