//! Classical semantics over finite interpretations: extensions of complex
//! concepts and satisfaction of axioms by structural recursion.

use std::collections::{BTreeMap, BTreeSet};

use super::syntax::*;

/// A finite interpretation: a non-empty ordered domain, concept and role
/// extensions, and an individual assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteInterpretation {
    pub domain: Vec<String>,
    pub concept_ext: BTreeMap<String, BTreeSet<usize>>,
    pub role_ext: BTreeMap<String, BTreeSet<(usize, usize)>>,
    pub ind_map: BTreeMap<String, usize>,
}

impl FiniteInterpretation {
    pub fn size(&self) -> usize {
        self.domain.len()
    }

    fn concept_members(&self, name: &str) -> BTreeSet<usize> {
        self.concept_ext.get(name).cloned().unwrap_or_default()
    }

    fn role_pairs(&self, atom: &RoleAtom) -> BTreeSet<(usize, usize)> {
        let base = self.role_ext.get(&atom.name).cloned().unwrap_or_default();
        if atom.inverse {
            base.into_iter().map(|(x, y)| (y, x)).collect()
        } else {
            base
        }
    }
}

/// The extension of a complex concept in a finite interpretation.
pub fn eval_concept(i: &FiniteInterpretation, c: &Concept) -> BTreeSet<usize> {
    let all: BTreeSet<usize> = (0..i.size()).collect();
    match c {
        Concept::Top => all,
        Concept::Bot => BTreeSet::new(),
        Concept::Name(n) => i.concept_members(n),
        Concept::Nominal(a) => i.ind_map.get(a).map(|&e| [e].into()).unwrap_or_default(),
        Concept::Not(x) => {
            let inner = eval_concept(i, x);
            all.difference(&inner).cloned().collect()
        }
        Concept::And(x, y) => {
            let a = eval_concept(i, x);
            let b = eval_concept(i, y);
            a.intersection(&b).cloned().collect()
        }
        Concept::Or(x, y) => {
            let a = eval_concept(i, x);
            let b = eval_concept(i, y);
            a.union(&b).cloned().collect()
        }
        Concept::Exists(r, x) => {
            let filler = eval_concept(i, x);
            let pairs = i.role_pairs(r);
            (0..i.size())
                .filter(|d| pairs.iter().any(|(s, o)| s == d && filler.contains(o)))
                .collect()
        }
        Concept::Forall(r, x) => {
            let filler = eval_concept(i, x);
            let pairs = i.role_pairs(r);
            (0..i.size())
                .filter(|d| pairs.iter().all(|(s, o)| s != d || filler.contains(o)))
                .collect()
        }
    }
}

fn role_lhs_pairs(i: &FiniteInterpretation, lhs: &RoleLhs) -> BTreeSet<(usize, usize)> {
    match lhs {
        RoleLhs::Atom(a) => i.role_pairs(a),
        RoleLhs::And(a, b) => {
            let pa = i.role_pairs(a);
            let pb = i.role_pairs(b);
            pa.intersection(&pb).cloned().collect()
        }
        RoleLhs::Comp(a, b) => {
            let pa = i.role_pairs(a);
            let pb = i.role_pairs(b);
            let mut out = BTreeSet::new();
            for (x, y) in &pa {
                for (y2, z) in &pb {
                    if y == y2 {
                        out.insert((*x, *z));
                    }
                }
            }
            out
        }
    }
}

/// Truth of an axiom in a finite interpretation.
pub fn classical_satisfies(i: &FiniteInterpretation, ax: &Axiom) -> bool {
    match ax {
        Axiom::ConceptInclusion { lhs, rhs, .. } => {
            eval_concept(i, lhs).is_subset(&eval_concept(i, rhs))
        }
        Axiom::RoleInclusion { sub, sup } => {
            i.role_pairs(sub).is_subset(&i.role_pairs(sup))
        }
        Axiom::RoleComposition { first, second, sup } => {
            let comp = role_lhs_pairs(
                i,
                &RoleLhs::Comp(RoleAtom::plain(first), RoleAtom::plain(second)),
            );
            comp.is_subset(&i.role_pairs(&RoleAtom::plain(sup)))
        }
        Axiom::ConceptAssertion { concept, individual } => match i.ind_map.get(individual) {
            Some(e) => i.concept_members(concept).contains(e),
            None => false,
        },
        Axiom::RoleAssertion { role, subject, object } => {
            match (i.ind_map.get(subject), i.ind_map.get(object)) {
                (Some(s), Some(o)) => i.role_pairs(&RoleAtom::plain(role)).contains(&(*s, *o)),
                _ => false,
            }
        }
        Axiom::Pattern(p) => match pattern_to_dl(p) {
            DlRoleAxiom::Equivalence { left, right } => {
                i.role_pairs(&left) == i.role_pairs(&right)
            }
            DlRoleAxiom::Inclusion { sub, sup } => {
                let lhs = role_lhs_pairs(i, &sub);
                match sup {
                    RoleRhs::Atom(a) => lhs.is_subset(&i.role_pairs(&a)),
                    RoleRhs::NegAtom(a) => lhs.is_disjoint(&i.role_pairs(&a)),
                }
            }
        },
    }
}

/// Whether the interpretation is a model of the whole KB.
pub fn is_classical_model(i: &FiniteInterpretation, kb: &KnowledgeBase) -> bool {
    kb.axioms().all(|ax| classical_satisfies(i, ax))
}
