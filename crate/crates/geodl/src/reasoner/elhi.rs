//! Saturation for the normal-form fragment with inverse roles (and no
//! nominals).
//!
//! Inverses force information to flow from an element back to the element
//! that created it, so the per-basic-concept bookkeeping of the nominal
//! fragment is not enough. Anonymous elements are identified by *contexts*:
//! the set of atoms forced on them at creation time. When the atoms of a
//! parent grow, its successors are re-created with larger contexts; stale
//! contexts simply become unreachable. Named individuals are separate
//! mutable nodes connected by ground edges, on which information flows in
//! both directions directly.

use std::collections::{BTreeMap, BTreeSet};

use crate::kb::{normalize, Axiom, Concept, KnowledgeBase, RoleAtom};

use super::ReasonError;

type Atom = usize; // interned basic concept (names and top)
const TOP_ATOM: Atom = 0;
/// Reserved marker: a context carrying it is inconsistent (used when a
/// backward existential with a bottom head fires at successor creation).
const BOT_ATOM: Atom = 1;

/// Role atoms with polarity: `(role index, inverted)`.
type Rho = (usize, bool);

fn rho_inv(r: Rho) -> Rho {
    (r.0, !r.1)
}

#[derive(Debug, Default)]
struct Interner {
    names: Vec<String>,
    ids: BTreeMap<String, usize>,
}

impl Interner {
    fn get(&mut self, s: &str) -> usize {
        if let Some(&i) = self.ids.get(s) {
            return i;
        }
        let i = self.names.len();
        self.names.push(s.to_string());
        self.ids.insert(s.to_string(), i);
        i
    }
}

struct Tbox {
    // A ⊑ B  /  A ⊑ ⊥
    atomic: Vec<(Atom, Atom)>,
    atomic_bot: Vec<Atom>,
    // A1 ⊓ A2 ⊑ B / ⊥
    conj: Vec<(Atom, Atom, Atom)>,
    conj_bot: Vec<(Atom, Atom)>,
    // A ⊑ ∃ρ.B
    exists_rhs: Vec<(Atom, Rho, Atom)>,
    // ∃ρ.A ⊑ B / ⊥
    exists_lhs: Vec<(Rho, Atom, Atom)>,
    exists_lhs_bot: Vec<(Rho, Atom)>,
    /// reflexive-transitive closure of the role-atom hierarchy
    sup_atoms: Vec<Vec<Rho>>,
    n_roles: usize,
}

impl Tbox {
    fn supers(&self, r: Rho) -> &[Rho] {
        &self.sup_atoms[r.0 * 2 + usize::from(r.1)]
    }
}

/// Node state: named individuals and a work set of anonymous contexts.
struct State {
    /// derived atom sets; `nodes[i].1` = bottom flag
    nodes: Vec<(BTreeSet<Atom>, bool)>,
    /// context identity: the label set a context was created from
    ctx_ids: BTreeMap<BTreeSet<Atom>, usize>,
    /// two-way ground edges (named individuals and test nodes)
    ground: BTreeSet<(usize, Rho, usize)>,
    /// successor slots: (parent node, existential axiom index) -> child ctx
    succ: BTreeMap<(usize, usize), usize>,
}

impl State {
    fn new_node(&mut self, atoms: BTreeSet<Atom>) -> usize {
        let id = self.nodes.len();
        let mut atoms = atoms;
        atoms.insert(TOP_ATOM);
        self.nodes.push((atoms, false));
        id
    }

    fn ctx(&mut self, atoms: BTreeSet<Atom>) -> usize {
        let mut key = atoms;
        key.insert(TOP_ATOM);
        if let Some(&id) = self.ctx_ids.get(&key) {
            return id;
        }
        let id = self.new_node(key.clone());
        self.ctx_ids.insert(key, id);
        id
    }

    fn add_ground(&mut self, a: usize, rho: Rho, b: usize, tbox: &Tbox) -> bool {
        let mut changed = false;
        for &sup in tbox.supers(rho) {
            changed |= self.ground.insert((a, sup, b));
            changed |= self.ground.insert((b, rho_inv(sup), a));
        }
        changed
    }
}

fn role_atom_id(roles: &mut Interner, r: &RoleAtom) -> Rho {
    (roles.get(&r.name), r.inverse)
}

fn build(
    kb: &KnowledgeBase,
    extra_tbox: &[Axiom],
) -> Result<(Tbox, State, Interner, Interner, BTreeMap<String, usize>), ReasonError> {
    let mut atoms = Interner::default();
    atoms.get("\u{1}top"); // TOP_ATOM
    atoms.get("\u{1}bot"); // BOT_ATOM
    let mut roles = Interner::default();
    for r in &kb.signature.roles {
        roles.get(r);
    }
    for ax in &kb.abox {
        if let Axiom::RoleAssertion { role, .. } = ax {
            roles.get(role);
        }
    }

    let mut tbox_axioms = kb.tbox.clone();
    tbox_axioms.extend_from_slice(extra_tbox);
    let tbox_axioms = normalize(&tbox_axioms)?;

    let mut t = Tbox {
        atomic: vec![],
        atomic_bot: vec![],
        conj: vec![],
        conj_bot: vec![],
        exists_rhs: vec![],
        exists_lhs: vec![],
        exists_lhs_bot: vec![],
        sup_atoms: vec![],
        n_roles: 0,
    };
    let mut hier: Vec<(Rho, Rho)> = Vec::new();

    let atom_of = |atoms: &mut Interner, c: &Concept| -> Result<Atom, ReasonError> {
        match c {
            Concept::Top => Ok(TOP_ATOM),
            Concept::Name(n) => Ok(atoms.get(n)),
            other => Err(ReasonError::Kb(crate::kb::KbError::Invalid(format!(
                "not a basic concept for the inverse fragment: {other:?}"
            )))),
        }
    };

    for ax in &tbox_axioms {
        match ax {
            Axiom::ConceptInclusion { lhs, rhs, .. } => {
                let rhs_atom = match rhs {
                    Concept::Bot => None,
                    Concept::Exists(r, f) => {
                        let lhs_atom = atom_of(&mut atoms, lhs)?;
                        let rho = role_atom_id(&mut roles, r);
                        let filler = atom_of(&mut atoms, f)?;
                        t.exists_rhs.push((lhs_atom, rho, filler));
                        continue;
                    }
                    c => Some(atom_of(&mut atoms, c)?),
                };
                match lhs {
                    Concept::Bot => {}
                    Concept::And(x, y) => {
                        let a = atom_of(&mut atoms, x)?;
                        let b = atom_of(&mut atoms, y)?;
                        match rhs_atom {
                            Some(c) => t.conj.push((a, b, c)),
                            None => t.conj_bot.push((a, b)),
                        }
                    }
                    Concept::Exists(r, f) => {
                        let rho = role_atom_id(&mut roles, r);
                        let filler = atom_of(&mut atoms, f)?;
                        match rhs_atom {
                            Some(c) => t.exists_lhs.push((rho, filler, c)),
                            None => t.exists_lhs_bot.push((rho, filler)),
                        }
                    }
                    c => {
                        let a = atom_of(&mut atoms, c)?;
                        match rhs_atom {
                            Some(b) => t.atomic.push((a, b)),
                            None => t.atomic_bot.push(a),
                        }
                    }
                }
            }
            Axiom::RoleInclusion { sub, sup } => {
                let s = role_atom_id(&mut roles, sub);
                let p = role_atom_id(&mut roles, sup);
                hier.push((s, p));
                hier.push((rho_inv(s), rho_inv(p)));
            }
            other => {
                return Err(ReasonError::Kb(crate::kb::KbError::Invalid(format!(
                    "axiom outside the inverse fragment: {other:?}"
                ))))
            }
        }
    }

    // reflexive-transitive closure of the atom hierarchy
    t.n_roles = roles.names.len();
    let n_atoms = t.n_roles * 2;
    let mut reach = vec![BTreeSet::new(); n_atoms];
    let key = |r: Rho| r.0 * 2 + usize::from(r.1);
    for i in 0..t.n_roles {
        reach[key((i, false))].insert((i, false));
        reach[key((i, true))].insert((i, true));
    }
    loop {
        let mut changed = false;
        for &(s, p) in &hier {
            let extend: Vec<Rho> = reach[key(p)].iter().cloned().collect();
            for q in extend {
                changed |= reach[key(s)].insert(q);
            }
        }
        if !changed {
            break;
        }
    }
    t.sup_atoms = reach.into_iter().map(|s| s.into_iter().collect()).collect();

    // seed nodes: one per individual, plus the generic top element
    let mut state = State {
        nodes: vec![],
        ctx_ids: BTreeMap::new(),
        ground: BTreeSet::new(),
        succ: BTreeMap::new(),
    };
    let mut ind_nodes = BTreeMap::new();
    let top_node = state.new_node(BTreeSet::new());
    debug_assert_eq!(top_node, 0);
    for a in &kb.signature.individuals {
        let id = state.new_node(BTreeSet::new());
        ind_nodes.insert(a.clone(), id);
    }
    for ax in &kb.abox {
        match ax {
            Axiom::ConceptAssertion { concept, individual } => {
                let atom = atoms.get(concept);
                let node = *ind_nodes
                    .entry(individual.clone())
                    .or_insert_with(|| state.new_node(BTreeSet::new()));
                state.nodes[node].0.insert(atom);
            }
            Axiom::RoleAssertion { role, subject, object } => {
                let rho = (roles.get(role), false);
                let a = *ind_nodes
                    .entry(subject.clone())
                    .or_insert_with(|| state.new_node(BTreeSet::new()));
                let b = *ind_nodes
                    .entry(object.clone())
                    .or_insert_with(|| state.new_node(BTreeSet::new()));
                state.add_ground(a, rho, b, &t);
            }
            _ => {}
        }
    }
    Ok((t, state, atoms, roles, ind_nodes))
}

/// Atoms forced on an `rho`-successor of a node with atom set `s`:
/// the created filler plus everything a backward existential tells us
/// (including the bottom marker when a backward bottom axiom fires).
fn successor_atoms(t: &Tbox, rho: Rho, filler: Atom, s: &BTreeSet<Atom>) -> BTreeSet<Atom> {
    let mut out = BTreeSet::new();
    out.insert(filler);
    // The child has a `rho⁻`-edge back to the parent, hence a `sigma`-edge
    // for every sigma above rho⁻.
    for &sup in t.supers(rho_inv(rho)) {
        for &(r2, a2, c) in &t.exists_lhs {
            if r2 == sup && s.contains(&a2) {
                out.insert(c);
            }
        }
        for &(r2, a2) in &t.exists_lhs_bot {
            if r2 == sup && s.contains(&a2) {
                out.insert(BOT_ATOM);
            }
        }
    }
    out
}

fn saturate(t: &Tbox, state: &mut State) {
    loop {
        let mut changed = false;
        let n = state.nodes.len();

        // intra-node closure
        for i in 0..n {
            let (atoms, bot) = &mut state.nodes[i];
            if atoms.contains(&BOT_ATOM) && !*bot {
                *bot = true;
                changed = true;
            }
            for &(a, b) in &t.atomic {
                if atoms.contains(&a) && atoms.insert(b) {
                    changed = true;
                }
            }
            for &a in &t.atomic_bot {
                if atoms.contains(&a) && !*bot {
                    *bot = true;
                    changed = true;
                }
            }
            for &(a, b, c) in &t.conj {
                if atoms.contains(&a) && atoms.contains(&b) && atoms.insert(c) {
                    changed = true;
                }
            }
            for &(a, b) in &t.conj_bot {
                if atoms.contains(&a) && atoms.contains(&b) && !*bot {
                    *bot = true;
                    changed = true;
                }
            }
        }

        // ground-edge propagation (both directions are stored explicitly)
        let ground: Vec<(usize, Rho, usize)> = state.ground.iter().cloned().collect();
        for (x, rho, y) in &ground {
            for &(r2, a2, c) in &t.exists_lhs {
                if r2 == *rho && state.nodes[*y].0.contains(&a2) && state.nodes[*x].0.insert(c) {
                    changed = true;
                }
            }
            for &(r2, a2) in &t.exists_lhs_bot {
                if r2 == *rho && state.nodes[*y].0.contains(&a2) && !state.nodes[*x].1 {
                    state.nodes[*x].1 = true;
                    changed = true;
                }
            }
            if state.nodes[*y].1 && !state.nodes[*x].1 {
                state.nodes[*x].1 = true;
                changed = true;
            }
        }

        // successor creation / refresh
        for i in 0..n {
            for (ax_idx, &(a, rho, filler)) in t.exists_rhs.iter().enumerate() {
                if !state.nodes[i].0.contains(&a) {
                    continue;
                }
                let want = successor_atoms(t, rho, filler, &state.nodes[i].0.clone());
                let child = state.ctx(want);
                if state.succ.insert((i, ax_idx), child) != Some(child) {
                    changed = true;
                }
            }
        }

        // context-edge propagation: forward existentials and bottom
        let succ: Vec<((usize, usize), usize)> =
            state.succ.iter().map(|(&k, &v)| (k, v)).collect();
        for ((parent, ax_idx), child) in succ {
            let (_, rho, _) = t.exists_rhs[ax_idx];
            for &sup in t.supers(rho) {
                for &(r2, a2, c) in &t.exists_lhs {
                    if r2 == sup
                        && state.nodes[child].0.contains(&a2)
                        && state.nodes[parent].0.insert(c)
                    {
                        changed = true;
                    }
                }
                for &(r2, a2) in &t.exists_lhs_bot {
                    if r2 == sup && state.nodes[child].0.contains(&a2) && !state.nodes[parent].1 {
                        state.nodes[parent].1 = true;
                        changed = true;
                    }
                }
            }
            if state.nodes[child].1 && !state.nodes[parent].1 {
                state.nodes[parent].1 = true;
                changed = true;
            }
        }

        if !changed {
            return;
        }
    }
}

fn run(
    kb: &KnowledgeBase,
    extra: &[Axiom],
) -> Result<(Tbox, State, Interner, Interner, BTreeMap<String, usize>), ReasonError> {
    let (t, mut state, atoms, roles, inds) = build(kb, extra)?;
    saturate(&t, &mut state);
    Ok((t, state, atoms, roles, inds))
}

fn state_inconsistent(state: &State, inds: &BTreeMap<String, usize>) -> bool {
    // node 0 is the generic top element; a domain is never empty
    state.nodes[0].1 || inds.values().any(|&i| state.nodes[i].1)
}

pub fn elhi_consistent(kb: &KnowledgeBase) -> Result<bool, ReasonError> {
    let (_, state, _, _, inds) = run(kb, &[])?;
    Ok(!state_inconsistent(&state, &inds))
}

pub fn elhi_entails(kb: &KnowledgeBase, ax: &Axiom) -> Result<bool, ReasonError> {
    // Build a KB extended with test individuals wired to express the query,
    // then read the answer off the saturation.
    let mut test = kb.clone();
    let fresh = |n: usize| format!("\u{1}q{n}");
    enum Check {
        NodeHasAtom(String, String),          // individual name, concept name
        NodeEdge(String, RoleAtom, String),   // subject, role atom, object
        NodeBot(String),
        AnyBot(Vec<String>),
        CtxEdge(String, RoleAtom, String),    // subject, role, filler concept
    }
    let mut checks: Vec<Check> = Vec::new();
    match ax {
        Axiom::ConceptInclusion { lhs, rhs, .. } => {
            if matches!(lhs, Concept::Bot) || matches!(rhs, Concept::Top) {
                return Ok(true);
            }
            let subject = fresh(0);
            test.signature.add_individual(&subject);
            // assert the left side onto the test individual
            match lhs {
                Concept::Top => {}
                Concept::Name(n) => test.abox.push(Axiom::ConceptAssertion {
                    concept: n.clone(),
                    individual: subject.clone(),
                }),
                Concept::And(_, _) => {
                    // flatten nested conjunctions onto the test individual
                    let mut stack = vec![lhs];
                    while let Some(c) = stack.pop() {
                        match c {
                            Concept::And(x, y) => {
                                stack.push(x);
                                stack.push(y);
                            }
                            Concept::Name(n) => test.abox.push(Axiom::ConceptAssertion {
                                concept: n.clone(),
                                individual: subject.clone(),
                            }),
                            Concept::Top => {}
                            other => {
                                return Err(ReasonError::Kb(crate::kb::KbError::Invalid(
                                    format!("query conjunct not basic: {other:?}"),
                                )))
                            }
                        }
                    }
                }
                Concept::Exists(r, f) => {
                    let filler = fresh(1);
                    test.signature.add_individual(&filler);
                    match f.as_ref() {
                        Concept::Name(n) => test.abox.push(Axiom::ConceptAssertion {
                            concept: n.clone(),
                            individual: filler.clone(),
                        }),
                        Concept::Top => {}
                        other => {
                            return Err(ReasonError::Kb(crate::kb::KbError::Invalid(format!(
                                "query filler not basic: {other:?}"
                            ))))
                        }
                    }
                    // subject --rho--> filler as a ground edge
                    if r.inverse {
                        test.abox.push(Axiom::RoleAssertion {
                            role: r.name.clone(),
                            subject: filler.clone(),
                            object: subject.clone(),
                        });
                    } else {
                        test.abox.push(Axiom::RoleAssertion {
                            role: r.name.clone(),
                            subject: subject.clone(),
                            object: filler.clone(),
                        });
                    }
                    checks.push(Check::NodeBot(filler));
                }
                other => {
                    return Err(ReasonError::Kb(crate::kb::KbError::Invalid(format!(
                        "query left side not normal form: {other:?}"
                    ))))
                }
            }
            checks.push(Check::NodeBot(subject.clone()));
            match rhs {
                Concept::Bot => {}
                Concept::Name(n) => checks.push(Check::NodeHasAtom(subject, n.clone())),
                Concept::Exists(r, f) => match f.as_ref() {
                    Concept::Name(filler) => {
                        checks.push(Check::CtxEdge(subject, r.clone(), filler.clone()))
                    }
                    other => {
                        return Err(ReasonError::Kb(crate::kb::KbError::Invalid(format!(
                            "query right filler not basic: {other:?}"
                        ))))
                    }
                },
                other => {
                    return Err(ReasonError::Kb(crate::kb::KbError::Invalid(format!(
                        "query right side not normal form: {other:?}"
                    ))))
                }
            }
        }
        Axiom::ConceptAssertion { concept, individual } => {
            checks.push(Check::NodeHasAtom(individual.clone(), concept.clone()));
            checks.push(Check::NodeBot(individual.clone()));
        }
        Axiom::RoleAssertion { role, subject, object } => {
            checks.push(Check::NodeEdge(
                subject.clone(),
                RoleAtom::plain(role),
                object.clone(),
            ));
            checks.push(Check::AnyBot(vec![subject.clone(), object.clone()]));
        }
        Axiom::RoleInclusion { sub, sup } => {
            let (x, y) = (fresh(0), fresh(1));
            test.signature.add_individual(&x);
            test.signature.add_individual(&y);
            test.abox.push(Axiom::RoleAssertion {
                role: sub.name.clone(),
                subject: x.clone(),
                object: y.clone(),
            });
            let (sx, sy) = if sub.inverse { (y.clone(), x.clone()) } else { (x.clone(), y.clone()) };
            checks.push(Check::NodeEdge(sx.clone(), sup.clone(), sy.clone()));
            checks.push(Check::AnyBot(vec![x, y]));
        }
        other => {
            return Err(ReasonError::Kb(crate::kb::KbError::Invalid(format!(
                "query outside the inverse fragment: {other:?}"
            ))))
        }
    }

    let (t, state, mut atoms, mut roles, inds) = run(&test, &[])?;
    if state_inconsistent(&state, &inds) {
        return Ok(true);
    }
    let node = |name: &str| inds.get(name).copied();
    for check in checks {
        let hit = match check {
            Check::NodeBot(name) => node(&name).map(|i| state.nodes[i].1).unwrap_or(false),
            Check::AnyBot(names) => names
                .iter()
                .any(|n| node(n).map(|i| state.nodes[i].1).unwrap_or(false)),
            Check::NodeHasAtom(name, concept) => {
                let atom = atoms.get(&concept);
                node(&name)
                    .map(|i| state.nodes[i].0.contains(&atom))
                    .unwrap_or(false)
            }
            Check::NodeEdge(subject, role, object) => {
                let rho = (roles.get(&role.name), role.inverse);
                match (node(&subject), node(&object)) {
                    (Some(a), Some(b)) => state.ground.contains(&(a, rho, b)),
                    _ => false,
                }
            }
            Check::CtxEdge(subject, role, filler) => {
                let rho = (roles.get(&role.name), role.inverse);
                let atom = atoms.get(&filler);
                match node(&subject) {
                    None => false,
                    Some(s) => {
                        // a created context successor whose atoms include the
                        // filler, via any sub-atom of rho...
                        let ctx_hit = state.succ.iter().any(|(&(parent, ax_idx), &child)| {
                            parent == s && {
                                let (_, r, _) = t.exists_rhs[ax_idx];
                                t.supers(r).contains(&rho)
                                    && state.nodes[child].0.contains(&atom)
                                    && !state.nodes[child].1
                            }
                        });
                        // ...or a ground edge to a node carrying the filler
                        let ground_hit = state.ground.iter().any(|&(a, r, b)| {
                            a == s && r == rho && state.nodes[b].0.contains(&atom) && !state.nodes[b].1
                        });
                        ctx_hit || ground_hit
                    }
                }
            }
        };
        if hit {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::parse_kb;
    use crate::reasoner::{el_consistent, el_entails};

    fn kb(text: &str) -> KnowledgeBase {
        parse_kb(&format!("Language: ELHI-bot-nf\n{text}")).unwrap()
    }

    fn ax(text: &str) -> Axiom {
        let parsed = parse_kb(&format!("Language: ELHI-bot-nf\n{text}")).unwrap();
        let ax = parsed.axioms().next().unwrap().clone();
        ax
    }

    #[test]
    fn backward_propagation_over_inverse() {
        // A ⊑ ∃r.B and ∃r⁻.A ⊑ C force the successor into C, so
        // A ⊑ ∃r.(B ⊓ C) consequences become visible.
        let k = kb("SubClassOf(A Exists(r B))\nSubClassOf(ExistsInv(r A) C)\nSubClassOf(Exists(r C) D)");
        assert!(el_entails(&k, &ax("SubClassOf(A D)")).unwrap());
        assert!(!el_entails(&k, &ax("SubClassOf(B D)")).unwrap());
    }

    #[test]
    fn inverse_role_inclusions() {
        let k = kb("SubRoleOfInv(r s)\nAssert(r a b)");
        // r ⊑ s⁻ and r(a,b) give s(b,a)
        assert!(el_entails(&k, &ax("Assert(s b a)")).unwrap());
        assert!(!el_entails(&k, &ax("Assert(s a b)")).unwrap());
        // and the role inclusion itself
        assert!(el_entails(&k, &ax("SubRoleOfInv(r s)")).unwrap());
        assert!(el_entails(&k, &ax("SubRoleOf(q q)")).unwrap());
    }

    #[test]
    fn bottom_propagates_through_edges() {
        let k = kb("SubClassOf(B Bot)\nSubClassOf(A Exists(r B))");
        assert!(el_consistent(&k).unwrap());
        assert!(el_entails(&k, &ax("SubClassOf(A Bot)")).unwrap());
        let k2 = kb("SubClassOf(B Bot)\nSubClassOf(A Exists(r B))\nAssert(A a)");
        assert!(!el_consistent(&k2).unwrap());
    }

    #[test]
    fn existential_goals_with_inverses() {
        let k = kb("SubClassOf(A Exists(r B))");
        assert!(el_entails(&k, &ax("SubClassOf(A Exists(r B))")).unwrap());
        assert!(!el_entails(&k, &ax("SubClassOf(A Exists(r C))")).unwrap());
        // B has an r⁻ successor in A whenever it was created from A... but
        // that is NOT entailed for every B element.
        assert!(!el_entails(&k, &ax("SubClassOf(B ExistsInv(r A))")).unwrap());
    }

    #[test]
    fn ground_inverse_reading() {
        let k = kb("Assert(r a b)\nSubClassOf(ExistsInv(r Top) M)");
        assert!(el_entails(&k, &ax("Assert(M b)")).unwrap());
        assert!(!el_entails(&k, &ax("Assert(M a)")).unwrap());
    }

    #[test]
    fn empty_domain_top_bottom() {
        let k = kb("SubClassOf(Top Bot)");
        assert!(!el_consistent(&k).unwrap());
    }
}
