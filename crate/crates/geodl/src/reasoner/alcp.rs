//! Brute-force oracle for propositional concept inclusions plus assertions.
//!
//! A valuation assigns truth to every concept name. A TBox axiom `C ⊑ D`
//! constrains valuations to satisfy the implication; the KB is consistent
//! iff an admissible valuation exists and every individual can be placed on
//! one compatible with its concept assertions (role assertions impose no
//! propositional constraints). Entailment quantifies over admissible
//! valuations and placements.

use std::collections::BTreeMap;

use crate::kb::{Axiom, Concept, KnowledgeBase, LanguageTag};

use super::ReasonError;

const MAX_NAMES: usize = 20;

fn eval(c: &Concept, names: &BTreeMap<String, usize>, v: u64) -> bool {
    match c {
        Concept::Top => true,
        Concept::Bot => false,
        Concept::Name(n) => (v >> names[n]) & 1 == 1,
        Concept::Not(x) => !eval(x, names, v),
        Concept::And(x, y) => eval(x, names, v) && eval(y, names, v),
        Concept::Or(x, y) => eval(x, names, v) || eval(y, names, v),
        // rejected by language validation; defensive default
        _ => false,
    }
}

struct Valuations {
    names: BTreeMap<String, usize>,
    admissible: Vec<u64>,
}

fn check_tag(kb: &KnowledgeBase, op: &'static str) -> Result<(), ReasonError> {
    if kb.language == LanguageTag::AlcP {
        Ok(())
    } else {
        Err(ReasonError::LanguageMismatch {
            op,
            expected: "ALCp",
            got: kb.language.as_str(),
        })
    }
}

fn valuations(kb: &KnowledgeBase) -> Result<Valuations, ReasonError> {
    let mut names = BTreeMap::new();
    for (i, n) in kb.signature.concepts.iter().enumerate() {
        names.insert(n.clone(), i);
    }
    let n = names.len();
    if n > MAX_NAMES {
        return Err(ReasonError::ResourceCap(format!(
            "{n} concept names exceeds the propositional cap of {MAX_NAMES}"
        )));
    }
    let mut admissible = Vec::new();
    'outer: for v in 0..(1u64 << n) {
        for ax in &kb.tbox {
            if let Axiom::ConceptInclusion { lhs, rhs, .. } = ax {
                if eval(lhs, &names, v) && !eval(rhs, &names, v) {
                    continue 'outer;
                }
            }
        }
        admissible.push(v);
    }
    Ok(Valuations { names, admissible })
}

/// Concept-assertion constraints per individual.
fn assertions_of(kb: &KnowledgeBase) -> BTreeMap<String, Vec<String>> {
    let mut map: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for a in &kb.signature.individuals {
        map.entry(a.clone()).or_default();
    }
    for ax in &kb.abox {
        if let Axiom::ConceptAssertion { concept, individual } = ax {
            map.entry(individual.clone()).or_default().push(concept.clone());
        }
    }
    map
}

fn placements_exist(vals: &Valuations, required: &[String]) -> bool {
    vals.admissible.iter().any(|&v| {
        required
            .iter()
            .all(|c| (v >> vals.names[c]) & 1 == 1)
    })
}

pub fn alcp_consistent(kb: &KnowledgeBase) -> Result<bool, ReasonError> {
    check_tag(kb, "alcp_consistent")?;
    let vals = valuations(kb)?;
    if vals.admissible.is_empty() {
        return Ok(false);
    }
    Ok(assertions_of(kb)
        .values()
        .all(|req| placements_exist(&vals, req)))
}

pub fn alcp_entails(kb: &KnowledgeBase, ax: &Axiom) -> Result<bool, ReasonError> {
    check_tag(kb, "alcp_entails")?;
    let vals = valuations(kb)?;
    if !alcp_consistent(kb)? {
        return Ok(true);
    }
    match ax {
        Axiom::ConceptInclusion { lhs, rhs, .. } => {
            // intern any query-only names by extending the admissible set
            let mut kb2 = kb.clone();
            crate::kb::collect_signature(&mut kb2.signature, ax);
            let vals = valuations(&kb2)?;
            Ok(vals
                .admissible
                .iter()
                .all(|&v| !eval(lhs, &vals.names, v) || eval(rhs, &vals.names, v)))
        }
        Axiom::ConceptAssertion { concept, individual } => {
            if !vals.names.contains_key(concept) {
                return Ok(false);
            }
            let asserted = assertions_of(kb).get(individual).cloned().unwrap_or_default();
            Ok(vals.admissible.iter().all(|&v| {
                let placed = asserted.iter().all(|c| (v >> vals.names[c]) & 1 == 1);
                !placed || (v >> vals.names[concept]) & 1 == 1
            }))
        }
        Axiom::RoleAssertion { role, subject, object } => Ok(kb.abox.iter().any(|a| {
            matches!(a, Axiom::RoleAssertion { role: r, subject: s, object: o }
                if r == role && s == subject && o == object)
        })),
        other => Err(ReasonError::Kb(crate::kb::KbError::Invalid(format!(
            "query outside the propositional fragment: {other:?}"
        )))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::parse_kb;

    fn kb(text: &str) -> KnowledgeBase {
        parse_kb(&format!("Language: ALCp\n{text}")).unwrap()
    }

    fn ax(text: &str) -> Axiom {
        let parsed = parse_kb(&format!("Language: ALCp\n{text}")).unwrap();
        let ax = parsed.axioms().next().unwrap().clone();
        ax
    }

    #[test]
    fn self_contradiction_is_satisfiable_by_emptiness() {
        // A ⊑ ¬A just forces A to be false everywhere.
        let k = kb("SubClassOf(A Not(A))");
        assert!(alcp_consistent(&k).unwrap());
        assert!(alcp_entails(&k, &ax("SubClassOf(A Bot)")).unwrap());
    }

    #[test]
    fn top_contradiction_is_inconsistent() {
        let k = kb("SubClassOf(Top A)\nSubClassOf(Top Not(A))");
        assert!(!alcp_consistent(&k).unwrap());
        assert!(alcp_entails(&k, &ax("SubClassOf(B C)")).unwrap());
    }

    #[test]
    fn contraposition() {
        let k = kb("SubClassOf(A B)");
        assert!(alcp_entails(&k, &ax("SubClassOf(Not(B) Not(A))")).unwrap());
        assert!(!alcp_entails(&k, &ax("SubClassOf(B A)")).unwrap());
    }

    #[test]
    fn assertions_constrain_individuals() {
        let k = kb("SubClassOf(A B)\nAssert(A a)");
        assert!(alcp_consistent(&k).unwrap());
        assert!(alcp_entails(&k, &ax("Assert(B a)")).unwrap());
        assert!(!alcp_entails(&k, &ax("Assert(B b)")).unwrap());
        let bad = kb("SubClassOf(A Bot)\nAssert(A a)");
        assert!(!alcp_consistent(&bad).unwrap());
    }

    #[test]
    fn role_assertions_are_syntactic() {
        let k = kb("Assert(r a b)");
        assert!(alcp_entails(&k, &ax("Assert(r a b)")).unwrap());
        assert!(!alcp_entails(&k, &ax("Assert(r b a)")).unwrap());
    }

    #[test]
    fn disjunction_reasoning() {
        let k = kb("SubClassOf(Top Or(A B))\nSubClassOf(A C)\nSubClassOf(B C)");
        assert!(alcp_entails(&k, &ax("SubClassOf(Top C)")).unwrap());
        assert!(!alcp_entails(&k, &ax("SubClassOf(Top A)")).unwrap());
    }
}
