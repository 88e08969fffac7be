//! Model synthesis and separation probes.
//!
//! Analytic constructions are used where the method admits one:
//!
//! * cones: a consistent propositional KB yields per-individual admissible
//!   valuations; one axis per valuation, with each concept fully present
//!   (`R`) or degenerate (`{0}`) on an axis, makes concept evaluation an
//!   exact Boolean homomorphism, and individuals sit on their axis.
//! * convex regions: a finite classical model (from the bounded searcher)
//!   maps to the simplex construction — elements become standard basis
//!   vectors, concepts faces of the simplex, and role regions the exact
//!   convex hull of the member pairs, whose facets are the transportation
//!   (flow-feasibility) inequalities of the edge set, component by
//!   component.
//! * ball/box/band methods: seeded hinge search ([`super::search`]).
//!
//! Separation probes additionally use per-fact-dimension constructions for
//! the bump and band methods, which realize any fact set exactly; failures
//! are only ever "not found within budget".

use std::collections::{BTreeMap, BTreeSet};

use crate::config::Config;
use crate::geom::{BandStack, HPolyhedron, LinearConstraint, RVector, Rel};
use crate::kb::{
    axiom_text, serialize_kb, Axiom, FiniteInterpretation, KnowledgeBase, LanguageTag,
};
use crate::rat::{rat, rint, Rat};
use crate::reasoner;
use crate::semantics::{
    self, int_box, io as semio, ConceptPayload, Embedding, IndPayload, Method, RolePayload,
};

use super::certificates::{Certificate, CertificateKind};
use super::search::{box_to_poly, search_model, SearchGoal};
use super::AuditError;

/// Tries to synthesize a verified model of `kb` under `method`; `None` means
/// the budget was exhausted (a probe outcome, not impossibility).
pub fn synth_model(
    method: Method,
    kb: &KnowledgeBase,
    cfg: &Config,
) -> Result<Option<Embedding>, AuditError> {
    let budget = cfg.fm_budget();
    let verified = |e: Embedding| -> Option<Embedding> {
        match semantics::is_model(&e, kb, &budget) {
            Ok(v) if v.value => Some(e),
            _ => None,
        }
    };
    match method {
        Method::Cone => Ok(cone_construction(kb)?.and_then(verified)),
        Method::Conv => {
            // classical model first (bounded), then the simplex construction;
            // fall back to the box-family search
            let bound = 4.min(24 / (kb.signature.roles.len().max(1) * 4)).max(2);
            if let Ok(Some(model)) = reasoner::finite_model_search(kb, bound) {
                if let Some(e) = verified(conv_from_interpretation(&model)?) {
                    return Ok(Some(e));
                }
            }
            let goal = SearchGoal { kb, falsify: &[] };
            Ok(search_model(&goal, method, default_dim(kb), cfg)?)
        }
        _ => {
            let goal = SearchGoal { kb, falsify: &[] };
            // several independently seeded attempts; budgets stay bounded by
            // the configured plan per attempt
            for salt in 0..4u64 {
                let sub = Config { seed: cfg.seed.wrapping_add(salt.wrapping_mul(0x9e37)), ..cfg.clone() };
                if let Some(e) = search_model(&goal, method, default_dim(kb), &sub)? {
                    return Ok(Some(e));
                }
            }
            Ok(None)
        }
    }
}

fn default_dim(_kb: &KnowledgeBase) -> usize {
    2
}

// -- cone construction --------------------------------------------------------

fn cone_construction(kb: &KnowledgeBase) -> Result<Option<Embedding>, AuditError> {
    use crate::geom::{AlCone, ConeAxis};
    if kb.language != LanguageTag::AlcP {
        return Err(AuditError::Precondition("cone synthesis needs the propositional tag".into()));
    }
    if !reasoner::alcp_consistent(kb)? {
        return Ok(None);
    }
    // one admissible valuation per individual (plus one for the empty case)
    let names: Vec<String> = kb.signature.concepts.clone();
    let mut valuations: Vec<BTreeSet<String>> = Vec::new();
    let mut ind_axis: BTreeMap<String, usize> = BTreeMap::new();
    let admissible = |val: &BTreeSet<String>| -> bool {
        let mut test = kb.clone();
        test.abox.clear();
        // evaluate TBox axioms directly on the valuation
        fn eval(c: &crate::kb::Concept, val: &BTreeSet<String>) -> bool {
            use crate::kb::Concept::*;
            match c {
                Top => true,
                Bot => false,
                Name(n) => val.contains(n),
                Not(x) => !eval(x, val),
                And(x, y) => eval(x, val) && eval(y, val),
                Or(x, y) => eval(x, val) || eval(y, val),
                _ => false,
            }
        }
        test.tbox.iter().all(|ax| match ax {
            Axiom::ConceptInclusion { lhs, rhs, .. } => !eval(lhs, val) || eval(rhs, val),
            _ => true,
        })
    };
    // assertions per individual
    let mut asserted: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for a in &kb.signature.individuals {
        asserted.entry(a.clone()).or_default();
    }
    for ax in &kb.abox {
        if let Axiom::ConceptAssertion { concept, individual } = ax {
            asserted.entry(individual.clone()).or_default().insert(concept.clone());
        }
    }
    for (ind, required) in &asserted {
        // smallest admissible valuation containing the assertions, found by
        // scanning the subsets in increasing order of size (the propositional
        // cap keeps this tiny)
        let n = names.len();
        let mut found = None;
        'outer: for code in 0u64..(1u64 << n) {
            let val: BTreeSet<String> = names
                .iter()
                .enumerate()
                .filter(|(i, _)| (code >> i) & 1 == 1)
                .map(|(_, s)| s.clone())
                .collect();
            if required.iter().all(|r| val.contains(r)) && admissible(&val) {
                found = Some(val);
                break 'outer;
            }
        }
        let Some(val) = found else { return Ok(None) };
        let axis = match valuations.iter().position(|v| v == &val) {
            Some(i) => i,
            None => {
                valuations.push(val);
                valuations.len() - 1
            }
        };
        ind_axis.insert(ind.clone(), axis);
    }
    if valuations.is_empty() {
        // no individuals: any admissible valuation seeds one axis
        let n = names.len();
        let mut found = None;
        for code in 0u64..(1u64 << n) {
            let val: BTreeSet<String> = names
                .iter()
                .enumerate()
                .filter(|(i, _)| (code >> i) & 1 == 1)
                .map(|(_, s)| s.clone())
                .collect();
            if admissible(&val) {
                found = Some(val);
                break;
            }
        }
        match found {
            Some(val) => valuations.push(val),
            None => return Ok(None),
        }
    }
    let dim = valuations.len();
    let mut e = Embedding::new(Method::Cone, dim);
    for name in &names {
        let axes: Vec<ConeAxis> = valuations
            .iter()
            .map(|v| if v.contains(name) { ConeAxis::Full } else { ConeAxis::Zero })
            .collect();
        e.concepts.insert(name.clone(), ConceptPayload::Cone(AlCone::new(axes)));
    }
    for (ind, axis) in &ind_axis {
        let mut coords = vec![Rat::from_integer(0.into()); dim];
        coords[*axis] = rint(1);
        e.individuals.insert(ind.clone(), IndPayload::Point(RVector::new(coords)));
    }
    // role assertions become literal pairs
    let mut pairs: BTreeMap<String, Vec<(RVector, RVector)>> = BTreeMap::new();
    for ax in &kb.abox {
        if let Axiom::RoleAssertion { role, subject, object } = ax {
            let (Some(s), Some(o)) = (e.ind_point(subject).ok(), e.ind_point(object).ok()) else {
                return Ok(None);
            };
            pairs.entry(role.clone()).or_default().push((s.clone(), o.clone()));
        }
    }
    for r in &kb.signature.roles {
        let ps = pairs.remove(r).unwrap_or_default();
        e.roles.insert(r.clone(), RolePayload::Pairs(ps));
    }
    Ok(Some(e))
}

// -- convex construction ------------------------------------------------------

/// The face of the standard simplex spanned by the given members.
fn simplex_face(members: &BTreeSet<usize>, dim: usize) -> HPolyhedron {
    let mut rows = Vec::new();
    let one = rint(1);
    // sum of coordinates equals one
    rows.push(LinearConstraint::new(vec![one.clone(); dim], Rel::Le, one.clone()));
    rows.push(LinearConstraint::new(vec![rint(-1); dim], Rel::Le, rint(-1)));
    for i in 0..dim {
        let mut coeffs = vec![Rat::from_integer(0.into()); dim];
        coeffs[i] = rint(-1);
        rows.push(LinearConstraint::new(coeffs.clone(), Rel::Le, Rat::from_integer(0.into())));
        if !members.contains(&i) {
            let mut up = vec![Rat::from_integer(0.into()); dim];
            up[i] = rint(1);
            rows.push(LinearConstraint::new(up, Rel::Le, Rat::from_integer(0.into())));
        }
    }
    HPolyhedron::new(dim, rows).expect("simplex face")
}

/// The exact convex hull of `{ e_i ⊕ e_j : (i,j) in edges }` as the
/// transportation-feasibility polytope, decomposed into weakly connected
/// components so the subset inequalities stay small.
fn edge_hull(edges: &BTreeSet<(usize, usize)>, dim: usize) -> Result<HPolyhedron, AuditError> {
    let zero = || Rat::from_integer(0.into());
    let d2 = 2 * dim;
    let mut rows = Vec::new();
    if edges.is_empty() {
        return Ok(HPolyhedron::empty(d2));
    }
    // non-negativity
    for i in 0..d2 {
        let mut coeffs = vec![zero(); d2];
        coeffs[i] = rint(-1);
        rows.push(LinearConstraint::new(coeffs, Rel::Le, zero()));
    }
    // total mass one on each half
    let mut first = vec![zero(); d2];
    let mut second = vec![zero(); d2];
    for i in 0..dim {
        first[i] = rint(1);
        second[dim + i] = rint(1);
    }
    for half in [first, second] {
        rows.push(LinearConstraint::new(half.clone(), Rel::Le, rint(1)));
        rows.push(LinearConstraint::new(
            half.iter().map(|c| -c).collect(),
            Rel::Le,
            rint(-1),
        ));
    }
    // sources/targets without edges carry no mass
    let srcs: BTreeSet<usize> = edges.iter().map(|&(i, _)| i).collect();
    let dsts: BTreeSet<usize> = edges.iter().map(|&(_, j)| j).collect();
    for i in 0..dim {
        if !srcs.contains(&i) {
            let mut coeffs = vec![zero(); d2];
            coeffs[i] = rint(1);
            rows.push(LinearConstraint::new(coeffs, Rel::Le, zero()));
        }
        if !dsts.contains(&i) {
            let mut coeffs = vec![zero(); d2];
            coeffs[dim + i] = rint(1);
            rows.push(LinearConstraint::new(coeffs, Rel::Le, zero()));
        }
    }
    // weakly connected components of the bipartite edge graph
    let mut comp: BTreeMap<usize, usize> = BTreeMap::new(); // src -> component
    let mut comp_of_dst: BTreeMap<usize, usize> = BTreeMap::new();
    let mut next = 0usize;
    let mut stack: Vec<(bool, usize)> = Vec::new();
    for &(s, _) in edges.iter() {
        if comp.contains_key(&s) {
            continue;
        }
        let id = next;
        next += 1;
        stack.push((true, s));
        while let Some((is_src, v)) = stack.pop() {
            if is_src {
                if comp.insert(v, id).is_some() {
                    continue;
                }
                for &(s2, d2v) in edges.iter().filter(|&&(s2, _)| s2 == v) {
                    let _ = s2;
                    if !comp_of_dst.contains_key(&d2v) {
                        stack.push((false, d2v));
                    }
                }
            } else {
                if comp_of_dst.insert(v, id).is_some() {
                    continue;
                }
                for &(s2, _) in edges.iter().filter(|&&(_, d2v)| d2v == v) {
                    if !comp.contains_key(&s2) {
                        stack.push((true, s2));
                    }
                }
            }
        }
    }
    for id in 0..next {
        let comp_srcs: Vec<usize> = comp.iter().filter(|&(_, &c)| c == id).map(|(&s, _)| s).collect();
        let comp_dsts: Vec<usize> = comp_of_dst.iter().filter(|&(_, &c)| c == id).map(|(&t, _)| t).collect();
        if comp_srcs.len() > 12 {
            return Err(AuditError::Precondition(
                "edge component too large for the hull construction".into(),
            ));
        }
        // per-component mass balance
        let mut bal = vec![zero(); d2];
        for &s in &comp_srcs {
            bal[s] = rint(1);
        }
        for &t in &comp_dsts {
            bal[dim + t] = rint(-1);
        }
        rows.push(LinearConstraint::new(bal.clone(), Rel::Le, zero()));
        rows.push(LinearConstraint::new(bal.iter().map(|c| -c).collect(), Rel::Le, zero()));
        // flow-feasibility inequalities over source subsets
        for mask in 1u64..(1u64 << comp_srcs.len()) {
            let subset: Vec<usize> = comp_srcs
                .iter()
                .enumerate()
                .filter(|(k, _)| (mask >> k) & 1 == 1)
                .map(|(_, &s)| s)
                .collect();
            let neighbours: BTreeSet<usize> = edges
                .iter()
                .filter(|(s, _)| subset.contains(s))
                .map(|&(_, t)| t)
                .collect();
            let mut coeffs = vec![zero(); d2];
            for &s in &subset {
                coeffs[s] = rint(1);
            }
            for &t in &neighbours {
                coeffs[dim + t] = rint(-1);
            }
            rows.push(LinearConstraint::new(coeffs, Rel::Le, zero()));
        }
    }
    Ok(HPolyhedron::new(d2, rows).expect("hull rows"))
}

/// Converts a finite classical model into a convex embedding on the simplex:
/// the embedding satisfies exactly the axioms the model satisfies.
pub fn conv_from_interpretation(model: &FiniteInterpretation) -> Result<Embedding, AuditError> {
    let dim = model.domain.len();
    let mut e = Embedding::new(Method::Conv, dim);
    for (name, members) in &model.concept_ext {
        e.concepts.insert(name.clone(), ConceptPayload::Region(simplex_face(members, dim)));
    }
    for (name, pairs) in &model.role_ext {
        e.roles.insert(name.clone(), RolePayload::Region(edge_hull(pairs, dim)?));
    }
    for (ind, &elem) in &model.ind_map {
        let mut coords = vec![Rat::from_integer(0.into()); dim];
        coords[elem] = rint(1);
        e.individuals.insert(ind.clone(), IndPayload::Point(RVector::new(coords)));
    }
    Ok(e)
}

// -- separation probes ----------------------------------------------------------

/// Attempts to find an embedding of `pos` falsifying every axiom in `neg`.
///
/// Analytic per-fact-dimension constructions cover the bump and band methods
/// on assertion-only inputs; everything else goes through the seeded search.
/// A found separation is always verified exactly before the certificate is
/// emitted; exhaustion yields a `SeparationNotFound` marker.
pub fn probe_separating_model(
    method: Method,
    pos: &KnowledgeBase,
    neg: &[Axiom],
    cfg: &Config,
) -> Result<Certificate, AuditError> {
    // precondition: negatives outside the deductive closure
    for ax in neg {
        if reasoner::entails(pos, ax)? {
            return Err(AuditError::Precondition(format!(
                "negative axiom is entailed by the positive side: {}",
                axiom_text(ax)
            )));
        }
    }
    let budget = cfg.fm_budget();
    let assertions_only = pos.tbox.is_empty()
        && pos.abox.iter().all(|ax| {
            matches!(ax, Axiom::ConceptAssertion { .. } | Axiom::RoleAssertion { .. })
        })
        && neg.iter().all(|ax| {
            matches!(ax, Axiom::ConceptAssertion { .. } | Axiom::RoleAssertion { .. })
        });
    let candidate = if assertions_only
        && matches!(method, Method::Boxe | Method::Box2el | Method::Expr)
    {
        fact_separation(method, pos, neg)?
    } else {
        search_model(&SearchGoal { kb: pos, falsify: neg }, method, default_dim(pos), cfg)?
    };
    if let Some(e) = candidate {
        let model_ok = semantics::is_model(&e, pos, &budget)?.value;
        let mut neg_ok = true;
        for ax in neg {
            if semantics::satisfies(&e, ax, &budget)?.value {
                neg_ok = false;
                break;
            }
        }
        if model_ok && neg_ok {
            return Ok(Certificate {
                kind: CertificateKind::SeparationFound,
                method: method.as_str().into(),
                kb: serialize_kb(pos),
                embedding: Some(semio::embedding_to_string(&e)),
                axioms: neg.iter().map(axiom_text).collect(),
                note: "verified model of the positive side falsifying every negative".into(),
            });
        }
    }
    Ok(Certificate {
        kind: CertificateKind::SeparationNotFound,
        method: method.as_str().into(),
        kb: serialize_kb(pos),
        embedding: None,
        axioms: neg.iter().map(axiom_text).collect(),
        note: format!("budget {} exhausted; a probe outcome, not a proof", cfg.search_budget),
    })
}

/// One dedicated dimension per negative fact; every positive fact remains
/// satisfied in every dimension.
fn fact_separation(
    method: Method,
    pos: &KnowledgeBase,
    neg: &[Axiom],
) -> Result<Option<Embedding>, AuditError> {
    let dim = neg.len().max(1);
    let inds = &pos.signature.individuals;
    let mut e = Embedding::new(method, dim);
    let full = int_box(&vec![-10; dim], &vec![10; dim]);
    // base positions and bumps, per dimension
    let mut base: BTreeMap<String, Vec<Rat>> = BTreeMap::new();
    let mut bump: BTreeMap<String, Vec<Rat>> = BTreeMap::new();
    for ind in inds {
        base.insert(ind.clone(), vec![Rat::from_integer(0.into()); dim]);
        bump.insert(ind.clone(), vec![Rat::from_integer(0.into()); dim]);
    }
    // per-concept interval per dimension, defaulting to [-10, 10]
    let mut concept_iv: BTreeMap<String, Vec<(Rat, Rat)>> = BTreeMap::new();
    for c in &pos.signature.concepts {
        concept_iv.insert(c.clone(), vec![(rint(-10), rint(10)); dim]);
    }
    // per-role interval (first box) per dimension
    let mut role_iv: BTreeMap<String, Vec<(Rat, Rat)>> = BTreeMap::new();
    for r in &pos.signature.roles {
        role_iv.insert(r.clone(), vec![(rint(-10), rint(10)); dim]);
    }
    // band positions: per dimension, per individual, a scalar; per role a
    // slice (only used by the band method)
    let mut band_pos: BTreeMap<String, Vec<Rat>> = BTreeMap::new();
    for ind in inds {
        band_pos.insert(ind.clone(), vec![rint(1); dim]);
    }
    let mut band_slices: BTreeMap<String, Vec<HPolyhedron>> = BTreeMap::new();
    for r in &pos.signature.roles {
        band_slices.insert(r.clone(), vec![HPolyhedron::full(2); dim]);
    }

    for (k, ax) in neg.iter().enumerate() {
        match ax {
            Axiom::ConceptAssertion { concept, individual } => {
                if method == Method::Expr {
                    return Ok(None); // no concept payloads in the band method
                }
                base.get_mut(individual).ok_or_else(|| missing(individual))?[k] = rint(1);
                concept_iv.get_mut(concept).ok_or_else(|| missing(concept))?[k] =
                    (rat(-1, 2), rat(1, 2));
            }
            Axiom::RoleAssertion { role, subject, object } => match method {
                Method::Boxe | Method::Box2el => {
                    base.get_mut(subject).ok_or_else(|| missing(subject))?[k] = rint(1);
                    bump.get_mut(object).ok_or_else(|| missing(object))?[k] = rint(3);
                    role_iv.get_mut(role).ok_or_else(|| missing(role))?[k] =
                        (rint(0), rat(7, 2));
                }
                Method::Expr => {
                    let slice = if subject == object {
                        band_pos.get_mut(subject).ok_or_else(|| missing(subject))?[k] = rint(2);
                        for other in inds.iter().filter(|i| *i != subject) {
                            band_pos.get_mut(other).expect("seeded")[k] = rint(0);
                        }
                        // everything except the (2,2) corner
                        HPolyhedron::new(
                            2,
                            vec![LinearConstraint::new(
                                vec![rint(1), rint(1)],
                                Rel::Le,
                                rint(3),
                            )],
                        )
                        .expect("slice")
                    } else {
                        band_pos.get_mut(subject).ok_or_else(|| missing(subject))?[k] = rint(0);
                        band_pos.get_mut(object).ok_or_else(|| missing(object))?[k] = rint(2);
                        for other in inds.iter().filter(|i| *i != subject && *i != object) {
                            band_pos.get_mut(other).expect("seeded")[k] = rint(1);
                        }
                        // the square minus its top-left corner
                        HPolyhedron::new(
                            2,
                            vec![
                                LinearConstraint::new(vec![rint(-1), rint(0)], Rel::Le, rint(0)),
                                LinearConstraint::new(vec![rint(1), rint(0)], Rel::Le, rint(2)),
                                LinearConstraint::new(vec![rint(0), rint(-1)], Rel::Le, rint(0)),
                                LinearConstraint::new(vec![rint(0), rint(1)], Rel::Le, rint(2)),
                                LinearConstraint::new(vec![rint(-1), rint(1)], Rel::Le, rint(1)),
                            ],
                        )
                        .expect("slice")
                    };
                    band_slices.get_mut(role).ok_or_else(|| missing(role))?[k] = slice;
                }
                _ => return Ok(None),
            },
            _ => return Ok(None),
        }
    }

    match method {
        Method::Boxe => {
            for ind in inds {
                e.individuals.insert(
                    ind.clone(),
                    IndPayload::BaseBump {
                        base: RVector::new(base[ind].clone()),
                        bump: RVector::new(bump[ind].clone()),
                    },
                );
            }
            for (c, ivs) in concept_iv {
                e.concepts.insert(c, ConceptPayload::Box(intervals_to_box(&ivs)));
            }
            for (r, ivs) in role_iv {
                e.roles.insert(
                    r,
                    RolePayload::BoxPair { first: intervals_to_box(&ivs), second: full.clone() },
                );
            }
        }
        Method::Box2el => {
            for ind in inds {
                e.individuals.insert(
                    ind.clone(),
                    IndPayload::PointBump {
                        point: RVector::new(base[ind].clone()),
                        bump: RVector::new(bump[ind].clone()),
                    },
                );
            }
            for (c, ivs) in concept_iv {
                e.concepts.insert(
                    c,
                    ConceptPayload::BoxBump {
                        bx: intervals_to_box(&ivs),
                        bump: RVector::zero(dim),
                    },
                );
            }
            for (r, ivs) in role_iv {
                e.roles.insert(
                    r,
                    RolePayload::HeadTail { head: intervals_to_box(&ivs), tail: full.clone() },
                );
            }
        }
        Method::Expr => {
            for ind in inds {
                e.individuals
                    .insert(ind.clone(), IndPayload::Point(RVector::new(band_pos[ind].clone())));
            }
            for (r, slices) in band_slices {
                e.roles.insert(r, RolePayload::Band(BandStack::from_slices(slices)?));
            }
        }
        _ => return Ok(None),
    }
    Ok(Some(e))
}

fn missing(name: &str) -> AuditError {
    AuditError::Precondition(format!("fact mentions `{name}` outside the signature"))
}

fn intervals_to_box(ivs: &[(Rat, Rat)]) -> crate::geom::BoxRegion {
    let lower: Vec<crate::rat::Ext> = ivs.iter().map(|(l, _)| crate::rat::Ext::Fin(l.clone())).collect();
    let upper: Vec<crate::rat::Ext> = ivs.iter().map(|(_, u)| crate::rat::Ext::Fin(u.clone())).collect();
    crate::geom::BoxRegion::new(lower, upper).expect("interval box")
}

/// Random convex embedding (d = 1) satisfying the given role facts: points
/// on the line and role regions that are hulls of the fact pairs plus random
/// padding points. Used to sample models of fact sets.
pub fn conv_fact_model(
    kb: &KnowledgeBase,
    rng: &mut impl rand::Rng,
) -> Result<Embedding, AuditError> {
    let mut e = Embedding::new(Method::Conv, 1);
    let mut coords: BTreeMap<String, Rat> = BTreeMap::new();
    for (i, ind) in kb.signature.individuals.iter().enumerate() {
        let offset = rat(rng.random_range(-8..=8), 4);
        let v = rint(i as i64 * 3 + 1) + offset;
        coords.insert(ind.clone(), v.clone());
        e.individuals.insert(ind.clone(), IndPayload::Point(RVector::new(vec![v])));
    }
    for c in &kb.signature.concepts {
        e.concepts.insert(c.clone(), ConceptPayload::Region(HPolyhedron::full(1)));
    }
    let mut role_points: BTreeMap<String, Vec<RVector>> = BTreeMap::new();
    for r in &kb.signature.roles {
        role_points.insert(r.clone(), vec![]);
    }
    for ax in &kb.abox {
        if let Axiom::RoleAssertion { role, subject, object } = ax {
            let p = RVector::new(vec![coords[subject].clone(), coords[object].clone()]);
            role_points.get_mut(role).ok_or_else(|| missing(role))?.push(p);
        }
    }
    for (r, mut pts) in role_points {
        for _ in 0..rng.random_range(0..3) {
            pts.push(RVector::new(vec![
                rat(rng.random_range(-20..=20), 2),
                rat(rng.random_range(-20..=20), 2),
            ]));
        }
        let region = if pts.is_empty() {
            // an arbitrary small box keeps the payload well-formed
            box_to_poly(&int_box(&[-1, -1], &[1, 1]))
        } else {
            HPolyhedron::hull_2d(&pts)?
        };
        e.roles.insert(r, RolePayload::Region(region));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::parse_kb;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn cone_synthesis_on_a_consistent_kb() {
        let kb = parse_kb("Language: ALCp\nSubClassOf(A B)\nAssert(A a)\nAssert(r a b)").unwrap();
        let e = synth_model(Method::Cone, &kb, &cfg()).unwrap().unwrap();
        let budget = cfg().fm_budget();
        assert!(semantics::is_model(&e, &kb, &budget).unwrap().value);
        // inconsistent propositional KBs yield nothing
        let bad = parse_kb("Language: ALCp\nSubClassOf(Top A)\nSubClassOf(Top Not(A))").unwrap();
        assert!(synth_model(Method::Cone, &bad, &cfg()).unwrap().is_none());
    }

    #[test]
    fn conv_synthesis_from_a_finite_model() {
        let kb = parse_kb(
            "Language: ELHI-bot-nf\nSubClassOf(A B)\nSubClassOf(A Exists(r C))\nAssert(A a)",
        )
        .unwrap();
        let e = synth_model(Method::Conv, &kb, &cfg()).unwrap().unwrap();
        let budget = cfg().fm_budget();
        assert!(semantics::is_model(&e, &kb, &budget).unwrap().value);
    }

    #[test]
    fn simplex_hull_membership() {
        // hull of {e0⊕e1, e1⊕e0} contains exactly those vertex pairs
        let edges: BTreeSet<(usize, usize)> = [(0, 1), (1, 0)].into();
        let hull = edge_hull(&edges, 2).unwrap();
        let e0 = RVector::from_ints(&[1, 0]);
        let e1 = RVector::from_ints(&[0, 1]);
        assert!(hull.member(&e0.concat(&e1)).unwrap());
        assert!(hull.member(&e1.concat(&e0)).unwrap());
        assert!(!hull.member(&e0.concat(&e0)).unwrap());
        // but the midpoint mix of the two members is inside
        let mid = RVector::new(vec![rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)]);
        assert!(hull.member(&mid).unwrap());
    }

    #[test]
    fn boxe_fact_separation() {
        let pos = parse_kb("Language: patterns-no-comp\nAssert(r a b)\nAssert(A b)").unwrap();
        let neg = vec![
            Axiom::RoleAssertion { role: "r".into(), subject: "b".into(), object: "a".into() },
            Axiom::ConceptAssertion { concept: "A".into(), individual: "a".into() },
        ];
        let cert = probe_separating_model(Method::Boxe, &pos, &neg, &cfg()).unwrap();
        assert_eq!(cert.kind, CertificateKind::SeparationFound);
        assert!(cert.reverify(&cfg()).unwrap());
    }

    #[test]
    fn expr_fact_separation_with_loops() {
        let pos = parse_kb("Language: patterns-full\nAssert(r a b)\nAssert(r b b)").unwrap();
        let neg = vec![
            Axiom::RoleAssertion { role: "r".into(), subject: "a".into(), object: "a".into() },
            Axiom::RoleAssertion { role: "r".into(), subject: "b".into(), object: "a".into() },
        ];
        let cert = probe_separating_model(Method::Expr, &pos, &neg, &cfg()).unwrap();
        assert_eq!(cert.kind, CertificateKind::SeparationFound);
        assert!(cert.reverify(&cfg()).unwrap());
    }

    #[test]
    fn empty_positive_side_separates_trivially() {
        let mut pos = crate::kb::KnowledgeBase::empty(crate::kb::LanguageTag::PatternsNoComp);
        pos.signature = crate::kb::Signature::new(&["A"], &[], &["a"]);
        let neg = vec![Axiom::ConceptAssertion { concept: "A".into(), individual: "a".into() }];
        let cert = probe_separating_model(Method::Boxe, &pos, &neg, &cfg()).unwrap();
        assert_eq!(cert.kind, CertificateKind::SeparationFound);
        assert!(cert.reverify(&cfg()).unwrap());
    }

    #[test]
    fn entailed_negatives_are_rejected() {
        let pos = parse_kb("Language: patterns-no-comp\nAssert(r a b)").unwrap();
        let neg = vec![Axiom::RoleAssertion { role: "r".into(), subject: "a".into(), object: "b".into() }];
        assert!(probe_separating_model(Method::Boxe, &pos, &neg, &cfg()).is_err());
    }
}
