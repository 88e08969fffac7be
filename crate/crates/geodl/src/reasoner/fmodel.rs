//! Exhaustive bounded model search: a cross-check oracle, deterministic and
//! complete up to the domain bound, never a general decision procedure.
//!
//! The search enumerates domain sizes, individual assignments and role
//! extensions outright (a handful of bits at the intended scale). Concept
//! extensions are then completed by closure-with-choices: the Horn
//! consequences of the fixed skeleton are forced, and the only branching
//! comes from right-existential axioms, which may be satisfied through any
//! existing successor. The negation of a query axiom compiles into pinned
//! positive/negative literals (and skeleton-level conditions), which turns
//! the searcher into a bounded refuter.

use std::collections::{BTreeMap, BTreeSet};

use crate::kb::{
    classical_satisfies, Axiom, Concept, FiniteInterpretation, KnowledgeBase, LanguageTag,
    RoleAtom,
};

use super::ReasonError;

const MAX_ROLE_CELLS: usize = 24;
const MAX_CONCEPT_BITS: usize = 60;

struct Skeleton<'a> {
    kb: &'a KnowledgeBase,
    n: usize,
    concepts: &'a [String],
    roles: &'a [String],
    inds: &'a [String],
    ind_map: Vec<usize>,
    role_bits: u64,
}

impl<'a> Skeleton<'a> {
    fn role_has(&self, role: usize, x: usize, y: usize) -> bool {
        let cell = role * self.n * self.n + x * self.n + y;
        (self.role_bits >> cell) & 1 == 1
    }

    fn atom_has(&self, atom: &RoleAtom, x: usize, y: usize) -> bool {
        match self.roles.iter().position(|r| r == &atom.name) {
            None => false,
            Some(idx) => {
                if atom.inverse {
                    self.role_has(idx, y, x)
                } else {
                    self.role_has(idx, x, y)
                }
            }
        }
    }

    fn successors(&self, atom: &RoleAtom, x: usize) -> Vec<usize> {
        (0..self.n).filter(|&y| self.atom_has(atom, x, y)).collect()
    }

    fn ind_of(&self, name: &str) -> Option<usize> {
        self.inds.iter().position(|i| i == name).map(|i| self.ind_map[i])
    }

    fn concept_idx(&self, name: &str) -> Option<usize> {
        self.concepts.iter().position(|c| c == name)
    }

    fn to_interpretation(&self, bits: &[u64]) -> FiniteInterpretation {
        let domain: Vec<String> = (0..self.n).map(|i| format!("e{}", i + 1)).collect();
        let mut concept_ext = BTreeMap::new();
        for (i, c) in self.concepts.iter().enumerate() {
            let members: BTreeSet<usize> =
                (0..self.n).filter(|e| (bits[i] >> e) & 1 == 1).collect();
            concept_ext.insert(c.clone(), members);
        }
        let mut role_ext = BTreeMap::new();
        for (i, r) in self.roles.iter().enumerate() {
            let mut pairs = BTreeSet::new();
            for x in 0..self.n {
                for y in 0..self.n {
                    if self.role_has(i, x, y) {
                        pairs.insert((x, y));
                    }
                }
            }
            role_ext.insert(r.clone(), pairs);
        }
        let ind_map = self.inds.iter().cloned().zip(self.ind_map.iter().cloned()).collect();
        FiniteInterpretation { domain, concept_ext, role_ext, ind_map }
    }
}

/// Evaluates a normal-form concept to its member bitmask under a concept
/// assignment, or `None` when a name is missing from the signature.
fn eval_side(sk: &Skeleton, c: &Concept, bits: &[u64]) -> Option<u64> {
    match c {
        Concept::Top => Some(if sk.n == 64 { u64::MAX } else { (1u64 << sk.n) - 1 }),
        Concept::Bot => Some(0),
        Concept::Name(nm) => sk.concept_idx(nm).map(|i| bits[i]),
        Concept::Nominal(a) => sk.ind_of(a).map(|e| 1u64 << e),
        Concept::And(x, y) => Some(eval_side(sk, x, bits)? & eval_side(sk, y, bits)?),
        Concept::Exists(r, f) => {
            let filler = eval_side(sk, f, bits)?;
            let mut out = 0u64;
            for x in 0..sk.n {
                if sk.successors(r, x).iter().any(|&y| (filler >> y) & 1 == 1) {
                    out |= 1 << x;
                }
            }
            Some(out)
        }
        _ => None,
    }
}

/// Role-only axioms (and role assertions) are decided by the skeleton alone.
fn skeleton_ok(sk: &Skeleton) -> bool {
    let empty_bits = vec![0u64; sk.concepts.len()];
    for ax in sk.kb.axioms() {
        let ok = match ax {
            Axiom::RoleInclusion { .. }
            | Axiom::RoleComposition { .. }
            | Axiom::Pattern(_) => {
                classical_satisfies(&sk.to_interpretation(&empty_bits), ax)
            }
            Axiom::RoleAssertion { role, subject, object } => {
                match (sk.ind_of(subject), sk.ind_of(object)) {
                    (Some(x), Some(y)) => sk.atom_has(&RoleAtom::plain(role), x, y),
                    _ => false,
                }
            }
            _ => true,
        };
        if !ok {
            return false;
        }
    }
    true
}

enum FillerCond {
    /// the successor must carry this concept name
    Name(usize),
    /// the successor must be this fixed element (a nominal's image)
    Element(usize),
}

/// Decomposes an existential filler into successor conditions; `None` for
/// shapes the searcher does not branch on (nested existentials).
fn filler_requirements(sk: &Skeleton, f: &Concept) -> Option<Vec<FillerCond>> {
    match f {
        Concept::Top => Some(vec![]),
        Concept::Name(nm) => Some(vec![FillerCond::Name(sk.concept_idx(nm)?)]),
        Concept::Nominal(a) => Some(vec![FillerCond::Element(sk.ind_of(a)?)]),
        Concept::And(x, y) => {
            let mut out = filler_requirements(sk, x)?;
            out.extend(filler_requirements(sk, y)?);
            Some(out)
        }
        _ => None,
    }
}

/// Completes a concept assignment extending `lower` while avoiding
/// `forbidden`, or proves none exists for this skeleton.
fn complete(sk: &Skeleton, lower: Vec<u64>, forbidden: &[u64], depth: usize) -> Option<Vec<u64>> {
    if depth > 128 {
        return None;
    }
    let mut bits = lower;
    loop {
        let mut changed = false;
        for ax in sk.kb.axioms() {
            match ax {
                Axiom::ConceptInclusion { lhs, rhs, .. } => {
                    let members = eval_side(sk, lhs, &bits)?;
                    // decompose conjunctive right sides into their parts
                    let mut parts = vec![rhs];
                    while let Some(part) = parts.pop() {
                        match part {
                            Concept::And(x, y) => {
                                parts.push(x);
                                parts.push(y);
                            }
                            Concept::Name(nm) => {
                                let i = sk.concept_idx(nm)?;
                                let missing = members & !bits[i];
                                if missing != 0 {
                                    bits[i] |= missing;
                                    changed = true;
                                }
                            }
                            Concept::Bot => {
                                if members != 0 {
                                    return None;
                                }
                            }
                            Concept::Top => {}
                            Concept::Nominal(a) => {
                                if members & !(1u64 << sk.ind_of(a)?) != 0 {
                                    return None;
                                }
                            }
                            // top-level existential right sides are handled
                            // by the branching phase below
                            Concept::Exists(_, _) if std::ptr::eq(part, rhs) => {}
                            _ => return None,
                        }
                    }
                }
                Axiom::ConceptAssertion { concept, individual } => {
                    let i = sk.concept_idx(concept)?;
                    let e = sk.ind_of(individual)?;
                    if bits[i] & (1 << e) == 0 {
                        bits[i] |= 1 << e;
                        changed = true;
                    }
                }
                _ => {}
            }
        }
        for i in 0..bits.len() {
            if bits[i] & forbidden[i] != 0 {
                return None;
            }
        }
        if !changed {
            break;
        }
    }
    // Branch on an unsatisfied right-existential instance.
    for ax in sk.kb.axioms() {
        let Axiom::ConceptInclusion { lhs, rhs: Concept::Exists(r, f), .. } = ax else {
            continue;
        };
        let members = eval_side(sk, lhs, &bits)?;
        let sat = eval_side(sk, &Concept::Exists(r.clone(), f.clone()), &bits)?;
        let unsat = members & !sat;
        if unsat == 0 {
            continue;
        }
        let x = unsat.trailing_zeros() as usize;
        // The filler decomposes into concept names to add at the successor
        // plus skeleton-fixed conditions (nominals, top); nested
        // existentials inside fillers are out of scope for the searcher.
        if let Some(required) = filler_requirements(sk, f) {
            'succ: for y in sk.successors(r, x) {
                for cond in &required {
                    match cond {
                        FillerCond::Name(i) => {
                            if forbidden[*i] & (1 << y) != 0 {
                                continue 'succ;
                            }
                        }
                        FillerCond::Element(e) => {
                            if *e != y {
                                continue 'succ;
                            }
                        }
                    }
                }
                let mut next = bits.clone();
                let mut grew = false;
                for cond in &required {
                    if let FillerCond::Name(i) = cond {
                        if next[*i] & (1 << y) == 0 {
                            next[*i] |= 1 << y;
                            grew = true;
                        }
                    }
                }
                if !grew {
                    // nothing addable would change satisfaction; the
                    // instance is genuinely stuck on this successor
                    continue;
                }
                if let Some(done) = complete(sk, next, forbidden, depth + 1) {
                    return Some(done);
                }
            }
        }
        return None;
    }
    // Verify outright before accepting.
    let interp = sk.to_interpretation(&bits);
    if sk.kb.axioms().all(|ax| classical_satisfies(&interp, ax)) {
        Some(bits)
    } else {
        None
    }
}

/// Extra constraints a countermodel must satisfy, per witness element.
struct Negation<'x> {
    rhs: &'x Concept,
    witness: usize,
}

/// Builds pinned literals for the witness; returns `None` when the skeleton
/// cannot violate the right-hand side at the witness (e.g. a nominal right
/// side naming the witness itself).
fn negation_pins(sk: &Skeleton, neg: &Negation) -> Option<(Vec<u64>, Vec<u64>)> {
    let lower = vec![0u64; sk.concepts.len()];
    let mut forbidden = vec![0u64; sk.concepts.len()];
    match neg.rhs {
        Concept::Top => None, // nothing violates top
        Concept::Bot => Some((lower, forbidden)),
        Concept::Name(nm) => {
            let i = sk.concept_idx(nm)?;
            forbidden[i] |= 1 << neg.witness;
            Some((lower, forbidden))
        }
        Concept::Nominal(a) => {
            if sk.ind_of(a)? == neg.witness {
                None
            } else {
                Some((lower, forbidden))
            }
        }
        Concept::Exists(r, f) => {
            let succs = sk.successors(r, neg.witness);
            match f.as_ref() {
                Concept::Top => {
                    if succs.is_empty() {
                        Some((lower, forbidden))
                    } else {
                        None
                    }
                }
                Concept::Name(nm) => {
                    let i = sk.concept_idx(nm)?;
                    for y in succs {
                        forbidden[i] |= 1 << y;
                    }
                    Some((lower, forbidden))
                }
                Concept::Nominal(b) => {
                    let e = sk.ind_of(b)?;
                    if succs.contains(&e) {
                        None
                    } else {
                        Some((lower, forbidden))
                    }
                }
                _ => None,
            }
        }
        _ => None,
    }
}

/// Positive pins placing the witness inside the left-hand side; may extend
/// `lower` or reject the skeleton. Existential left sides additionally need
/// a successor carrying the filler, handled by branching over successors.
fn assert_lhs(
    sk: &Skeleton,
    lhs: &Concept,
    witness: usize,
    lower: &mut Vec<u64>,
) -> Option<Vec<(usize, usize)>> {
    // returns extra "filler at element" obligations for existential sides
    match lhs {
        Concept::Top => Some(vec![]),
        Concept::Bot => None,
        Concept::Name(nm) => {
            let i = sk.concept_idx(nm)?;
            lower[i] |= 1 << witness;
            Some(vec![])
        }
        Concept::Nominal(a) => {
            if sk.ind_of(a)? == witness {
                Some(vec![])
            } else {
                None
            }
        }
        Concept::And(x, y) => {
            let mut obligations = assert_lhs(sk, x, witness, lower)?;
            obligations.extend(assert_lhs(sk, y, witness, lower)?);
            Some(obligations)
        }
        Concept::Exists(r, f) => {
            let succs = sk.successors(r, witness);
            match f.as_ref() {
                Concept::Top => {
                    if succs.is_empty() {
                        None
                    } else {
                        Some(vec![])
                    }
                }
                // Candidate successors to carry the filler; the caller tries
                // each. Normal-form left sides have at most one existential,
                // so a flat candidate list suffices.
                Concept::Name(nm) => {
                    let i = sk.concept_idx(nm)?;
                    if succs.is_empty() {
                        None
                    } else {
                        Some(succs.iter().map(|&y| (i, y)).collect())
                    }
                }
                Concept::Nominal(b) => {
                    let e = sk.ind_of(b)?;
                    if succs.contains(&e) {
                        Some(vec![])
                    } else {
                        None
                    }
                }
                _ => None,
            }
        }
        _ => None,
    }
}

fn for_each_skeleton<R>(
    kb: &KnowledgeBase,
    max_domain: usize,
    mut visit: impl FnMut(&Skeleton) -> Option<R>,
) -> Result<Option<R>, ReasonError> {
    let concepts = kb.signature.concepts.clone();
    let roles = kb.signature.roles.clone();
    let inds = kb.signature.individuals.clone();
    for n in 1..=max_domain {
        let cells = roles.len() * n * n;
        if cells > MAX_ROLE_CELLS {
            return Err(ReasonError::ResourceCap(format!(
                "{cells} role cells exceed the bound of {MAX_ROLE_CELLS}"
            )));
        }
        if concepts.len() * n > MAX_CONCEPT_BITS {
            return Err(ReasonError::ResourceCap("too many concept bits".into()));
        }
        let ind_total = (n as u64).pow(inds.len() as u32);
        for ind_code in 0..ind_total {
            let mut code = ind_code;
            let mut ind_map = Vec::with_capacity(inds.len());
            for _ in 0..inds.len() {
                ind_map.push((code % n as u64) as usize);
                code /= n as u64;
            }
            for role_bits in 0u64..(1u64 << cells) {
                let sk = Skeleton {
                    kb,
                    n,
                    concepts: &concepts,
                    roles: &roles,
                    inds: &inds,
                    ind_map: ind_map.clone(),
                    role_bits,
                };
                if !skeleton_ok(&sk) {
                    continue;
                }
                if let Some(r) = visit(&sk) {
                    return Ok(Some(r));
                }
            }
        }
    }
    Ok(None)
}

/// Returns a model with at most `max_domain` elements if one exists within
/// the bound; `None` is inconclusive beyond the bound. Exhaustive and
/// deterministic (lexicographic enumeration).
pub fn finite_model_search(
    kb: &KnowledgeBase,
    max_domain: usize,
) -> Result<Option<FiniteInterpretation>, ReasonError> {
    if kb.language == LanguageTag::AlcP {
        return Err(ReasonError::LanguageMismatch {
            op: "finite_model_search",
            expected: "EL-family or pattern tags",
            got: "ALCp",
        });
    }
    for_each_skeleton(kb, max_domain, |sk| {
        let forbidden = vec![0u64; sk.concepts.len()];
        complete(sk, vec![0u64; sk.concepts.len()], &forbidden, 0)
            .map(|bits| sk.to_interpretation(&bits))
    })
}

/// Searches for a model of `kb` violating `ax`, up to the bound: a bounded
/// refuter for entailment (inconclusive when it returns `None`).
pub fn finite_countermodel(
    kb: &KnowledgeBase,
    ax: &Axiom,
    max_domain: usize,
) -> Result<Option<FiniteInterpretation>, ReasonError> {
    let as_inclusion = match ax {
        Axiom::ConceptAssertion { concept, individual } => Some((
            Concept::Nominal(individual.clone()),
            Concept::Name(concept.clone()),
        )),
        Axiom::ConceptInclusion { lhs, rhs, .. } => Some((lhs.clone(), rhs.clone())),
        _ => None,
    };
    match as_inclusion {
        None => {
            // role-level violation: decided by the skeleton
            let mut kb2 = kb.clone();
            crate::kb::collect_signature(&mut kb2.signature, ax);
            for_each_skeleton(&kb2, max_domain, |sk| {
                let empty = vec![0u64; sk.concepts.len()];
                if classical_satisfies(&sk.to_interpretation(&empty), ax)
                    && !matches!(ax, Axiom::RoleAssertion { .. })
                {
                    // role-only axioms ignore concepts: if the skeleton
                    // satisfies it, no completion violates it
                    return None;
                }
                if matches!(ax, Axiom::RoleAssertion { .. }) {
                    // violated iff the pair is absent
                    if classical_satisfies(&sk.to_interpretation(&empty), ax) {
                        return None;
                    }
                }
                let forbidden = vec![0u64; sk.concepts.len()];
                complete(sk, vec![0u64; sk.concepts.len()], &forbidden, 0)
                    .map(|bits| sk.to_interpretation(&bits))
                    .filter(|m| !classical_satisfies(m, ax))
            })
        }
        Some((lhs, rhs)) => {
            let mut kb2 = kb.clone();
            let probe = Axiom::subclass(lhs.clone(), rhs.clone());
            crate::kb::collect_signature(&mut kb2.signature, &probe);
            for_each_skeleton(&kb2, max_domain, |sk| {
                for witness in 0..sk.n {
                    let Some((mut lower, forbidden)) =
                        negation_pins(sk, &Negation { rhs: &rhs, witness })
                    else {
                        continue;
                    };
                    let obligations = match assert_lhs(sk, &lhs, witness, &mut lower) {
                        Some(o) => o,
                        None => continue,
                    };
                    // obligations: (concept index, candidate element) —
                    // group by concept and try one candidate per group
                    let attempt = |extra: &[(usize, usize)]| -> Option<Vec<u64>> {
                        let mut lo = lower.clone();
                        for &(ci, e) in extra {
                            if forbidden[ci] & (1 << e) != 0 {
                                return None;
                            }
                            lo[ci] |= 1 << e;
                        }
                        complete(sk, lo, &forbidden, 0)
                    };
                    let bits = if obligations.is_empty() {
                        attempt(&[])
                    } else {
                        // all obligations come from one existential at the
                        // moment; try each successor candidate
                        obligations.iter().find_map(|&cand| attempt(&[cand]))
                    };
                    if let Some(bits) = bits {
                        let m = sk.to_interpretation(&bits);
                        if !classical_satisfies(&m, &probe)
                            && kb2.axioms().all(|a| classical_satisfies(&m, a))
                        {
                            return Some(m);
                        }
                    }
                }
                None
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::parse_kb;

    fn kb(text: &str) -> KnowledgeBase {
        parse_kb(text).unwrap()
    }

    #[test]
    fn unsatisfiable_kb_has_no_bounded_model() {
        let k = kb("Language: ELO-bot-nf\nSubClassOf(A Bot)\nAssert(A a)");
        assert!(finite_model_search(&k, 3).unwrap().is_none());
    }

    #[test]
    fn empty_kb_has_a_one_element_model() {
        let k = kb("Language: ELO-bot-nf");
        let m = finite_model_search(&k, 1).unwrap().unwrap();
        assert_eq!(m.domain.len(), 1);
    }

    #[test]
    fn pattern_kb_has_a_two_element_model() {
        let k = kb("Language: patterns-no-comp\nPattern(Exclusion r1 r2)\nAssert(r1 a b)\nAssert(r1 b a)\nAssert(r2 a a)\nAssert(r2 b b)");
        let m = finite_model_search(&k, 2).unwrap();
        assert!(m.is_some());
        let m = m.unwrap();
        assert!(k.axioms().all(|ax| classical_satisfies(&m, ax)));
    }

    #[test]
    fn chains_fold_into_small_models() {
        let k = kb("Language: ELO-bot-nf\nSubClassOf(A Exists(r B))\nSubClassOf(B Exists(r A))\nAssert(A a)");
        let m = finite_model_search(&k, 2).unwrap().unwrap();
        assert!(k.axioms().all(|ax| classical_satisfies(&m, ax)));
    }

    #[test]
    fn countermodels_refute_non_entailments() {
        let k = kb("Language: ELO-bot-nf\nSubClassOf(A B)");
        let not_entailed = Axiom::subclass(Concept::name("B"), Concept::name("A"));
        let m = finite_countermodel(&k, &not_entailed, 3).unwrap();
        assert!(m.is_some());
        let m = m.unwrap();
        assert!(k.axioms().all(|ax| classical_satisfies(&m, ax)));
        assert!(!classical_satisfies(&m, &not_entailed));

        let entailed = Axiom::subclass(Concept::name("A"), Concept::name("B"));
        assert!(finite_countermodel(&k, &entailed, 3).unwrap().is_none());
    }

    #[test]
    fn countermodels_for_existential_sides() {
        let k = kb("Language: ELO-bot-nf\nSubClassOf(A Exists(r B))");
        let q = Axiom::subclass(
            Concept::name("A"),
            Concept::exists(RoleAtom::plain("r"), Concept::name("C")),
        );
        let m = finite_countermodel(&k, &q, 3).unwrap();
        assert!(m.is_some());
        // and an entailed existential has no countermodel
        let q2 = Axiom::subclass(
            Concept::name("A"),
            Concept::exists(RoleAtom::plain("r"), Concept::name("B")),
        );
        assert!(finite_countermodel(&k, &q2, 3).unwrap().is_none());
        // left-existential witnesses
        let q3 = Axiom::subclass(
            Concept::exists(RoleAtom::plain("r"), Concept::name("B")),
            Concept::name("A"),
        );
        assert!(finite_countermodel(&k, &q3, 3).unwrap().is_some());
    }

    #[test]
    fn role_axiom_countermodels() {
        let k = kb("Language: ELHO-comp-bot-nf\nSubRoleOf(r s)");
        let not_entailed = Axiom::RoleInclusion {
            sub: RoleAtom::plain("s"),
            sup: RoleAtom::plain("r"),
        };
        assert!(finite_countermodel(&k, &not_entailed, 2).unwrap().is_some());
        let entailed = Axiom::RoleInclusion {
            sub: RoleAtom::plain("r"),
            sup: RoleAtom::plain("s"),
        };
        assert!(finite_countermodel(&k, &entailed, 2).unwrap().is_none());
    }
}
