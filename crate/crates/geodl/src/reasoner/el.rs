//! Completion-rule saturation for the nominal EL fragments (role hierarchy
//! and composition, no inverses).
//!
//! Basic concepts are the names, nominals and top. The saturation derives,
//! for every basic `X`, the set `S(X)` of basics it is subsumed by (plus
//! bottom), and for every role the edge set `R(r)` over basics, closed under:
//!
//! * told inclusions and conjunctions over `S`;
//! * existential right-hand sides creating edges, left-hand sides reading
//!   them back;
//! * bottom propagating backwards over edges;
//! * role hierarchy and composition on edges;
//! * nominal merging: if `{a}` sits in both `S(X)` and `S(Y)` and `Y` is
//!   reachable (from `X`, top, or any nominal), then `X` absorbs `S(Y)`.
//!
//! Entailment queries are answered on the saturation of the KB extended
//! with fresh test names, so arbitrary normal-form axioms (and assertions)
//! can be decided, not just told shapes.

use std::collections::{BTreeMap, BTreeSet};

use crate::kb::{abox_to_tbox, normalize, Axiom, Concept, KnowledgeBase, RoleAtom};

use super::ReasonError;

const TOP: usize = 0;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Basic {
    Top,
    Name(String),
    Nominal(String),
}

#[derive(Debug, Default)]
struct Saturation {
    basics: Vec<Basic>,
    ids: BTreeMap<Basic, usize>,
    /// `s[x]` contains the ids `x` is subsumed by; `bot[x]` tracks bottom.
    s: Vec<BTreeSet<usize>>,
    bot: Vec<bool>,
    /// edge sets per role name
    r: BTreeMap<String, BTreeSet<(usize, usize)>>,
}

struct TboxIndex {
    // X' ⊑ B
    atomic: Vec<(usize, usize)>,
    atomic_bot: Vec<usize>,
    // X1 ⊓ X2 ⊑ B
    conj: Vec<(usize, usize, usize)>,
    conj_bot: Vec<(usize, usize)>,
    // X' ⊑ ∃r.B
    exists_rhs: Vec<(usize, String, usize)>,
    // ∃r.Y' ⊑ B
    exists_lhs: Vec<(String, usize, usize)>,
    exists_lhs_bot: Vec<(String, usize)>,
    // r ⊑ s
    hierarchy: Vec<(String, String)>,
    // r1 ∘ r2 ⊑ s
    compositions: Vec<(String, String, String)>,
    roles: BTreeSet<String>,
}

impl Saturation {
    fn intern(&mut self, b: Basic) -> usize {
        if let Some(&id) = self.ids.get(&b) {
            return id;
        }
        let id = self.basics.len();
        self.basics.push(b.clone());
        self.ids.insert(b, id);
        let mut init = BTreeSet::new();
        init.insert(id);
        init.insert(TOP);
        self.s.push(init);
        self.bot.push(false);
        id
    }

    fn of_concept(&mut self, c: &Concept) -> Result<usize, ReasonError> {
        match c {
            Concept::Top => Ok(TOP),
            Concept::Name(n) => Ok(self.intern(Basic::Name(n.clone()))),
            Concept::Nominal(a) => Ok(self.intern(Basic::Nominal(a.clone()))),
            other => Err(ReasonError::Kb(crate::kb::KbError::Invalid(format!(
                "not a basic concept: {other:?}"
            )))),
        }
    }
}

fn concept_id(sat: &mut Saturation, c: &Concept) -> Result<Option<usize>, ReasonError> {
    // Bottom is tracked separately, not interned.
    if matches!(c, Concept::Bot) {
        Ok(None)
    } else {
        sat.of_concept(c).map(Some)
    }
}

fn build(
    kb: &KnowledgeBase,
    extra: &[Axiom],
    mention: &[Concept],
) -> Result<(Saturation, TboxIndex), ReasonError> {
    let encoded = abox_to_tbox(kb)?;
    let mut raw = encoded.tbox;
    raw.extend_from_slice(extra);
    let tbox = normalize(&raw)?;

    let mut sat = Saturation::default();
    sat.intern(Basic::Top);
    // Individuals always denote, so their nominals seed the saturation even
    // when no axiom mentions them; query concepts are interned up front so
    // told facts about fresh basics (e.g. from a top axiom) reach them.
    for a in &kb.signature.individuals {
        sat.intern(Basic::Nominal(a.clone()));
    }
    for c in mention {
        if !matches!(c, Concept::Bot) {
            sat.of_concept(c)?;
        }
    }

    let mut idx = TboxIndex {
        atomic: vec![],
        atomic_bot: vec![],
        conj: vec![],
        conj_bot: vec![],
        exists_rhs: vec![],
        exists_lhs: vec![],
        exists_lhs_bot: vec![],
        hierarchy: vec![],
        compositions: vec![],
        roles: kb.signature.roles.iter().cloned().collect(),
    };

    for ax in &tbox {
        match ax {
            Axiom::ConceptInclusion { lhs, rhs, .. } => match (lhs, rhs) {
                (Concept::And(x1, x2), rhs) => {
                    let a = sat.of_concept(x1)?;
                    let b = sat.of_concept(x2)?;
                    match concept_id(&mut sat, rhs)? {
                        Some(c) => idx.conj.push((a, b, c)),
                        None => idx.conj_bot.push((a, b)),
                    }
                }
                (Concept::Exists(RoleAtom { name, inverse: false }, f), rhs) => {
                    let y = sat.of_concept(f)?;
                    idx.roles.insert(name.clone());
                    match concept_id(&mut sat, rhs)? {
                        Some(c) => idx.exists_lhs.push((name.clone(), y, c)),
                        None => idx.exists_lhs_bot.push((name.clone(), y)),
                    }
                }
                (lhs, Concept::Exists(RoleAtom { name, inverse: false }, f)) => {
                    let x = sat.of_concept(lhs)?;
                    let y = sat.of_concept(f)?;
                    idx.roles.insert(name.clone());
                    idx.exists_rhs.push((x, name.clone(), y));
                }
                (Concept::Bot, _) => {}
                (lhs, rhs) => {
                    let x = sat.of_concept(lhs)?;
                    match concept_id(&mut sat, rhs)? {
                        Some(c) => idx.atomic.push((x, c)),
                        None => idx.atomic_bot.push(x),
                    }
                }
            },
            Axiom::RoleInclusion { sub, sup } if !sub.inverse && !sup.inverse => {
                idx.roles.insert(sub.name.clone());
                idx.roles.insert(sup.name.clone());
                idx.hierarchy.push((sub.name.clone(), sup.name.clone()));
            }
            Axiom::RoleComposition { first, second, sup } => {
                idx.roles.insert(first.clone());
                idx.roles.insert(second.clone());
                idx.roles.insert(sup.clone());
                idx.compositions
                    .push((first.clone(), second.clone(), sup.clone()));
            }
            other => {
                return Err(ReasonError::Kb(crate::kb::KbError::Invalid(format!(
                    "axiom outside the saturation fragment: {other:?}"
                ))))
            }
        }
    }
    for role in &idx.roles {
        sat.r.entry(role.clone()).or_default();
    }
    Ok((sat, idx))
}

fn saturate(sat: &mut Saturation, idx: &TboxIndex) {
    loop {
        let mut changed = false;
        let n = sat.basics.len();

        // told atomic and conjunction rules
        for x in 0..n {
            for &(a, b) in &idx.atomic {
                if sat.s[x].contains(&a) && sat.s[x].insert(b) {
                    changed = true;
                }
            }
            for &a in &idx.atomic_bot {
                if sat.s[x].contains(&a) && !sat.bot[x] {
                    sat.bot[x] = true;
                    changed = true;
                }
            }
            for &(a, b, c) in &idx.conj {
                if sat.s[x].contains(&a) && sat.s[x].contains(&b) && sat.s[x].insert(c) {
                    changed = true;
                }
            }
            for &(a, b) in &idx.conj_bot {
                if sat.s[x].contains(&a) && sat.s[x].contains(&b) && !sat.bot[x] {
                    sat.bot[x] = true;
                    changed = true;
                }
            }
        }

        // existential right-hand sides create edges
        let mut new_edges: Vec<(String, usize, usize)> = Vec::new();
        for &(a, ref role, b) in &idx.exists_rhs {
            for x in 0..n {
                if sat.s[x].contains(&a) && !sat.r[role].contains(&(x, b)) {
                    new_edges.push((role.clone(), x, b));
                }
            }
        }
        // hierarchy closure on edges
        for (sub, sup) in &idx.hierarchy {
            let pairs: Vec<(usize, usize)> = sat.r[sub].iter().cloned().collect();
            for (x, y) in pairs {
                if !sat.r[sup].contains(&(x, y)) {
                    new_edges.push((sup.clone(), x, y));
                }
            }
        }
        // composition on edges
        for (r1, r2, sup) in &idx.compositions {
            let firsts: Vec<(usize, usize)> = sat.r[r1].iter().cloned().collect();
            for (x, y) in firsts {
                let seconds: Vec<usize> = sat.r[r2]
                    .iter()
                    .filter(|(a, _)| *a == y)
                    .map(|(_, b)| *b)
                    .collect();
                for z in seconds {
                    if !sat.r[sup].contains(&(x, z)) {
                        new_edges.push((sup.clone(), x, z));
                    }
                }
            }
        }
        for (role, x, y) in new_edges {
            if sat.r.get_mut(&role).expect("role interned").insert((x, y)) {
                changed = true;
            }
        }

        // existential left-hand sides read edges back; bottom propagates
        for (role, pairs) in &sat.r {
            let pairs: Vec<(usize, usize)> = pairs.iter().cloned().collect();
            for (x, y) in pairs {
                for &(ref r2, yy, b) in &idx.exists_lhs {
                    if r2 == role && sat.s[y].contains(&yy) && sat.s[x].insert(b) {
                        changed = true;
                    }
                }
                for &(ref r2, yy) in &idx.exists_lhs_bot {
                    if r2 == role && sat.s[y].contains(&yy) && !sat.bot[x] {
                        sat.bot[x] = true;
                        changed = true;
                    }
                }
                if sat.bot[y] && !sat.bot[x] {
                    sat.bot[x] = true;
                    changed = true;
                }
            }
        }

        // nominal merging with the reachability side condition
        let reach = reachable_from_anchors(sat);
        let nominal_ids: Vec<usize> = (0..n)
            .filter(|&i| matches!(sat.basics[i], Basic::Nominal(_)))
            .collect();
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                let share_nominal = nominal_ids
                    .iter()
                    .any(|a| sat.s[x].contains(a) && sat.s[y].contains(a));
                if !share_nominal {
                    continue;
                }
                // Y reachable from X, from top, or from a nominal.
                let ok = reach.contains(&y) || reaches(sat, x, y);
                if ok {
                    let extra: Vec<usize> = sat.s[y].difference(&sat.s[x]).cloned().collect();
                    if !extra.is_empty() {
                        sat.s[x].extend(extra);
                        changed = true;
                    }
                    if sat.bot[y] && !sat.bot[x] {
                        sat.bot[x] = true;
                        changed = true;
                    }
                }
            }
        }

        if !changed {
            return;
        }
    }
}

/// Everything reachable along edges from top or a nominal.
fn reachable_from_anchors(sat: &Saturation) -> BTreeSet<usize> {
    let mut seeds: Vec<usize> = vec![TOP];
    for (i, b) in sat.basics.iter().enumerate() {
        if matches!(b, Basic::Nominal(_)) {
            seeds.push(i);
        }
    }
    let mut seen: BTreeSet<usize> = seeds.iter().cloned().collect();
    let mut stack = seeds;
    while let Some(x) = stack.pop() {
        for pairs in sat.r.values() {
            for &(a, b) in pairs {
                if a == x && seen.insert(b) {
                    stack.push(b);
                }
            }
        }
    }
    seen
}

fn reaches(sat: &Saturation, from: usize, to: usize) -> bool {
    let mut seen = BTreeSet::from([from]);
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        if x == to {
            return true;
        }
        for pairs in sat.r.values() {
            for &(a, b) in pairs {
                if a == x && seen.insert(b) {
                    stack.push(b);
                }
            }
        }
    }
    false
}

fn inconsistent(sat: &Saturation) -> bool {
    if sat.bot[TOP] {
        return true;
    }
    sat.basics
        .iter()
        .enumerate()
        .any(|(i, b)| matches!(b, Basic::Nominal(_)) && sat.bot[i])
}

pub fn el_consistent_mode_a(kb: &KnowledgeBase) -> Result<bool, ReasonError> {
    let (mut sat, idx) = build(kb, &[], &[])?;
    saturate(&mut sat, &idx);
    Ok(!inconsistent(&sat))
}

/// Fresh query names, outside the user-name space (the parser only accepts
/// alphanumeric identifiers).
fn q(name: &str) -> Concept {
    Concept::Name(format!("?{name}"))
}

pub fn el_entails_mode_a(kb: &KnowledgeBase, ax: &Axiom) -> Result<bool, ReasonError> {
    // Encode the query with fresh test names and decide on the saturated
    // sets. Every right-hand side becomes a fresh-name subsumption goal:
    // an existential right side `∃r.F` is reified by the told axiom
    // `∃r.F ⊑ Qgoal`, which keeps the reasoning inside the (sound and
    // complete) completion rules even when nominals force elements
    // together.
    // The subsumee is witnessed by a fresh individual, which conditions the
    // query on a non-empty subject and lets the nominal-merging rule carry
    // forced identifications (a subject inclusion into a nominal makes the
    // witness *be* that individual).
    let w = || Concept::Nominal("?w".into());
    let mut extra: Vec<Axiom> = Vec::new();
    // goal: subject subsumed by target (None = bottom)
    let (subject, target): (Concept, Option<Concept>) = match ax {
        Axiom::ConceptInclusion { lhs, rhs, .. } => {
            match lhs {
                Concept::Bot => return Ok(true),
                Concept::And(x1, x2) => {
                    extra.push(Axiom::subclass(w(), (**x1).clone()));
                    extra.push(Axiom::subclass(w(), (**x2).clone()));
                }
                Concept::Exists(RoleAtom { name, inverse: false }, f) => {
                    extra.push(Axiom::subclass(
                        w(),
                        Concept::Exists(RoleAtom::plain(name), Box::new(q("fill"))),
                    ));
                    extra.push(Axiom::subclass(q("fill"), (**f).clone()));
                }
                basic => extra.push(Axiom::subclass(w(), basic.clone())),
            }
            match rhs {
                Concept::Top => return Ok(true),
                Concept::Bot => (w(), None),
                Concept::Exists(RoleAtom { name, inverse: false }, f) => {
                    extra.push(Axiom::ConceptInclusion {
                        lhs: Concept::Exists(RoleAtom::plain(name), f.clone()),
                        rhs: q("goal"),
                        from_assertion: false,
                    });
                    (w(), Some(q("goal")))
                }
                basic => (w(), Some(basic.clone())),
            }
        }
        Axiom::ConceptAssertion { concept, individual } => (
            Concept::nominal(individual),
            Some(Concept::name(concept)),
        ),
        Axiom::RoleAssertion { role, subject, object } => {
            extra.push(Axiom::ConceptInclusion {
                lhs: Concept::Exists(RoleAtom::plain(role), Box::new(Concept::nominal(object))),
                rhs: q("goal"),
                from_assertion: false,
            });
            (Concept::nominal(subject), Some(q("goal")))
        }
        Axiom::RoleInclusion { sub, sup } if !sub.inverse && !sup.inverse => {
            // generic edge w --sub--> marker; the inclusion holds iff the
            // witness is forced under `∃sup.marker`
            extra.push(Axiom::subclass(
                w(),
                Concept::Exists(RoleAtom::plain(&sub.name), Box::new(q("rfill"))),
            ));
            extra.push(Axiom::ConceptInclusion {
                lhs: Concept::Exists(RoleAtom::plain(&sup.name), Box::new(q("rfill"))),
                rhs: q("goal"),
                from_assertion: false,
            });
            (w(), Some(q("goal")))
        }
        Axiom::RoleComposition { first, second, sup } => {
            extra.push(Axiom::subclass(
                w(),
                Concept::Exists(RoleAtom::plain(first), Box::new(q("c1"))),
            ));
            extra.push(Axiom::subclass(
                q("c1"),
                Concept::Exists(RoleAtom::plain(second), Box::new(q("c2"))),
            ));
            extra.push(Axiom::ConceptInclusion {
                lhs: Concept::Exists(RoleAtom::plain(sup), Box::new(q("c2"))),
                rhs: q("goal"),
                from_assertion: false,
            });
            (w(), Some(q("goal")))
        }
        other => {
            return Err(ReasonError::Kb(crate::kb::KbError::Invalid(format!(
                "query outside the saturation fragment: {other:?}"
            ))))
        }
    };

    let mut mention: Vec<Concept> = vec![subject.clone()];
    if let Some(t) = &target {
        mention.push(t.clone());
    }
    let (mut sat, idx) = build(kb, &extra, &mention)?;
    saturate(&mut sat, &idx);
    if inconsistent(&sat) {
        return Ok(true);
    }
    let x = sat.of_concept(&subject)?;
    if sat.bot[x] {
        return Ok(true);
    }
    match target {
        None => Ok(false), // bottom handled above
        Some(c) => {
            let b = sat.of_concept(&c)?;
            Ok(sat.s[x].contains(&b))
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

    fn ax(text: &str) -> Axiom {
        let parsed = parse_kb(text).unwrap();
        let ax = parsed.axioms().next().unwrap().clone();
        ax
    }

    #[test]
    fn bottom_with_an_instance_is_inconsistent() {
        let k = kb("Language: ELO-bot-nf\nSubClassOf(A Bot)\nAssert(A a)");
        assert!(!el_consistent(&k_dispatch(&k)).unwrap());
        let consistent_kb = kb("Language: ELO-bot-nf\nSubClassOf(A Bot)\nAssert(B a)");
        assert!(el_consistent(&k_dispatch(&consistent_kb)).unwrap());
    }

    fn k_dispatch(k: &KnowledgeBase) -> KnowledgeBase {
        k.clone()
    }

    use crate::reasoner::{el_consistent, el_entails};

    #[test]
    fn transitivity_of_inclusions() {
        let k = kb("Language: ELO-bot-nf\nSubClassOf(A B)\nSubClassOf(B C)");
        assert!(el_entails(&k, &ax("SubClassOf(A C)")).unwrap());
        assert!(!el_entails(&k, &ax("SubClassOf(C A)")).unwrap());
    }

    #[test]
    fn disjoint_premises_do_not_leak() {
        // ∃r.C ⊑ A, ∃r.D ⊑ B, A ⊓ B ⊑ ⊥ does not entail C ⊓ D ⊑ ⊥.
        let k = kb(
            "Language: ELO-bot-nf\nSubClassOf(Exists(r C) A)\nSubClassOf(Exists(r D) B)\nSubClassOf(And(A B) Bot)",
        );
        assert!(el_consistent(&k).unwrap());
        assert!(!el_entails(&k, &ax("SubClassOf(And(C D) Bot)")).unwrap());
        // while the directly told axiom is entailed
        assert!(el_entails(&k, &ax("SubClassOf(And(A B) Bot)")).unwrap());
    }

    #[test]
    fn assertions_through_nominals() {
        let k = kb("Language: ELO-bot-nf\nSubClassOf(A B)\nAssert(A a)");
        assert!(el_entails(&k, &ax("Assert(B a)")).unwrap());
        assert!(!el_entails(&k, &ax("Assert(B b)")).unwrap());
        let k2 = kb("Language: ELO-bot-nf\nAssert(r a b)\nSubClassOf(Exists(r Top) C)");
        assert!(el_entails(&k2, &ax("Assert(C a)")).unwrap());
        assert!(el_entails(&k2, &ax("Assert(r a b)")).unwrap());
        assert!(!el_entails(&k2, &ax("Assert(r b a)")).unwrap());
    }

    #[test]
    fn existential_right_goals() {
        let k = kb("Language: ELO-bot-nf\nSubClassOf(A Exists(r B))\nSubClassOf(B C)");
        assert!(el_entails(&k, &ax("SubClassOf(A Exists(r C))")).unwrap());
        assert!(!el_entails(&k, &ax("SubClassOf(A Exists(r D))")).unwrap());
        // vacuous case: empty left side
        let k2 = kb("Language: ELO-bot-nf\nSubClassOf(A Bot)");
        assert!(el_entails(&k2, &ax("SubClassOf(A Exists(r D))")).unwrap());
    }

    #[test]
    fn role_hierarchy_and_composition() {
        let k = kb("Language: ELHO-comp-bot-nf\nSubRoleOf(r s)\nSubRoleOf(s t)");
        assert!(el_entails(&k, &ax("SubRoleOf(r t)")).unwrap());
        assert!(!el_entails(&k, &ax("SubRoleOf(t r)")).unwrap());
        let k2 = kb("Language: ELHO-comp-bot-nf\nSubCompositionOf(r r r)\nAssert(r a b)\nAssert(r b c)");
        assert!(el_entails(&k2, &ax("Assert(r a c)")).unwrap());
        assert!(!el_entails(&k2, &ax("Assert(r c a)")).unwrap());
        // hierarchy feeds composition
        let k3 = kb("Language: ELHO-comp-bot-nf\nSubRoleOf(r s)\nSubCompositionOf(s s t)\nAssert(r a b)\nAssert(s b c)");
        assert!(el_entails(&k3, &ax("Assert(t a c)")).unwrap());
    }

    #[test]
    fn empty_role_makes_inclusions_vacuous() {
        let k = kb("Language: ELHO-comp-bot-nf\nSubClassOf(Exists(r Top) Bot)");
        assert!(el_consistent(&k).unwrap());
        assert!(el_entails(&k, &ax("SubRoleOf(r s)")).unwrap());
        let k2 = kb("Language: ELHO-comp-bot-nf\nSubRoleOf(q q)");
        assert!(!el_entails(&k2, &ax("SubRoleOf(q s)")).unwrap());
    }

    #[test]
    fn nominal_merging_transfers_derived_atoms() {
        // a and the r-successor of a both carry the nominal {b}: whatever is
        // forced on the successor transfers to b.
        let k = kb(
            "Language: ELO-bot-nf\nAssert(r a b)\nSubClassOf(Exists(r Top) D)\nSubClassOf(Nominal(b) C)\nSubClassOf(C E)",
        );
        assert!(el_entails(&k, &ax("Assert(E b)")).unwrap());
        assert!(!el_entails(&k, &ax("Assert(E a)")).unwrap());
    }

    #[test]
    fn inconsistent_kb_entails_everything() {
        let k = kb("Language: ELO-bot-nf\nSubClassOf(A Bot)\nAssert(A a)");
        assert!(el_entails(&k, &ax("SubClassOf(B C)")).unwrap());
        assert!(el_entails(&k, &ax("Assert(r b b)")).unwrap());
    }
}
