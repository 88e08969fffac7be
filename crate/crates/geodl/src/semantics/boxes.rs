//! Satisfaction for the four box-based methods.
//!
//! * Translated boxes: concepts and nominals are boxes, roles translation
//!   vectors, `Box(∃r.C) = Box(C) − E(r)`; `A ⊑ ⊥` (and `∃r.A ⊑ ⊥`) hold iff
//!   the offset of `A` is zero — a point box, not an empty set.
//! * Affine boxes: individuals are points, roles diagonal affine maps; the
//!   role extension is the graph of the map, so axioms are evaluated in the
//!   induced interpretation (preimages of boxes are boxes).
//! * Head/tail boxes with bumps: the eight rules over box translation and
//!   containment, including the emptiness guard on `A ⊑ ∃r.B`.
//! * Relation box pairs with bumps: assertions and the pattern rules except
//!   composition.

use crate::geom::{BoxRegion, RVector};
use crate::kb::{Axiom, Concept, Pattern, PatternKind};
use crate::rat::Ext;

use super::{outside, Embedding, Method, SemError, Verdict};

fn check_language(method: Method, ax: &Axiom) -> Result<(), SemError> {
    if method.in_language(ax) {
        Ok(())
    } else {
        Err(outside(method, ax))
    }
}

fn encode_assertion(ax: &Axiom) -> Option<Axiom> {
    match ax {
        Axiom::ConceptAssertion { .. } | Axiom::RoleAssertion { .. } => {
            let mut kb = crate::kb::KnowledgeBase::empty(crate::kb::LanguageTag::EloBotNf);
            kb.abox.push(ax.clone());
            crate::kb::abox_to_tbox(&kb).ok().map(|k| k.tbox[0].clone())
        }
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Translated boxes

/// The box of a normal-form concept under the translation semantics; fully
/// compositional because box intersections and translations are boxes.
fn elbe_box(e: &Embedding, c: &Concept) -> Result<BoxRegion, SemError> {
    match c {
        Concept::Top => Ok(BoxRegion::full(e.dim)),
        Concept::Bot => Ok(BoxRegion::empty(e.dim)),
        Concept::Name(n) => Ok(e.concept_box(n)?.clone()),
        Concept::Nominal(a) => Ok(e.ind_box(a)?.clone()),
        Concept::And(x, y) => Ok(elbe_box(e, x)?.intersect(&elbe_box(e, y)?)?),
        Concept::Exists(r, f) if !r.inverse => {
            let base = elbe_box(e, f)?;
            Ok(base.translate(&e.role_vector(&r.name)?.neg())?)
        }
        other => Err(SemError::Unsupported { method: "elbe", what: format!("{other:?}") }),
    }
}

pub fn satisfies_elbe(e: &Embedding, ax: &Axiom) -> Result<Verdict, SemError> {
    check_language(Method::Elbe, ax)?;
    if let Some(encoded) = encode_assertion(ax) {
        return satisfies_elbe(e, &encoded);
    }
    match ax {
        Axiom::ConceptInclusion { lhs, rhs, .. } => match (lhs, rhs) {
            // `A1 ⊓ A2 ⊑ ⊥` asks for an empty intersection; `A ⊑ ⊥` and
            // `∃r.A ⊑ ⊥` ask for offset zero (translation preserves it).
            (Concept::And(a1, a2), Concept::Bot) => {
                let meet = elbe_box(e, a1)?.intersect(&elbe_box(e, a2)?)?;
                Ok(Verdict::exact(meet.is_empty()))
            }
            (c, Concept::Bot) => Ok(Verdict::exact(elbe_box(e, c)?.offset_is_zero())),
            (c, d) => Ok(Verdict::exact(elbe_box(e, c)?.subset(&elbe_box(e, d)?)?)),
        },
        other => Err(outside(Method::Elbe, other)),
    }
}

// ---------------------------------------------------------------------------
// Affine boxes (induced interpretation)

/// The extension of a normal-form concept in the induced interpretation:
/// always a (possibly empty or unbounded) box.
fn boxel_ext(e: &Embedding, c: &Concept) -> Result<BoxRegion, SemError> {
    match c {
        Concept::Top => Ok(BoxRegion::full(e.dim)),
        Concept::Bot => Ok(BoxRegion::empty(e.dim)),
        Concept::Name(n) => Ok(e.concept_box(n)?.clone()),
        Concept::Nominal(a) => Ok(BoxRegion::point(e.ind_point(a)?)),
        Concept::And(x, y) => Ok(boxel_ext(e, x)?.intersect(&boxel_ext(e, y)?)?),
        Concept::Exists(r, f) if !r.inverse => {
            let target = boxel_ext(e, f)?;
            Ok(e.role_affine(&r.name)?.preimage_box(&target)?)
        }
        other => Err(SemError::Unsupported { method: "boxel", what: format!("{other:?}") }),
    }
}

pub fn satisfies_boxel(e: &Embedding, ax: &Axiom) -> Result<Verdict, SemError> {
    check_language(Method::Boxel, ax)?;
    match ax {
        Axiom::ConceptInclusion { lhs, rhs, .. } => {
            Ok(Verdict::exact(boxel_ext(e, lhs)?.subset(&boxel_ext(e, rhs)?)?))
        }
        Axiom::ConceptAssertion { concept, individual } => {
            let p = e.ind_point(individual)?;
            Ok(Verdict::exact(e.concept_box(concept)?.member(p)?))
        }
        Axiom::RoleAssertion { role, subject, object } => {
            let image = e.role_affine(role)?.apply(e.ind_point(subject)?)?;
            Ok(Verdict::exact(&image == e.ind_point(object)?))
        }
        other => Err(outside(Method::Boxel, other)),
    }
}

// ---------------------------------------------------------------------------
// Head/tail boxes with bumps

fn b2_box(e: &Embedding, c: &Concept) -> Result<BoxRegion, SemError> {
    match c {
        Concept::Top => Ok(BoxRegion::full(e.dim)),
        Concept::Bot => Ok(BoxRegion::empty(e.dim)),
        Concept::Name(n) => Ok(e.concept_box(n)?.clone()),
        Concept::Nominal(a) => Ok(BoxRegion::point(e.ind_point(a)?)),
        other => Err(SemError::Unsupported { method: "box2el", what: format!("{other:?}") }),
    }
}

fn b2_bump(e: &Embedding, c: &Concept) -> Result<RVector, SemError> {
    match c {
        // The top concept carries no bump; the zero vector leaves translations alone.
        Concept::Top => Ok(RVector::zero(e.dim)),
        Concept::Name(n) => Ok(e.concept_bump(n)?.clone()),
        Concept::Nominal(a) => Ok(e.ind_bump(a)?.clone()),
        other => Err(SemError::Unsupported { method: "box2el", what: format!("{other:?}") }),
    }
}

pub fn satisfies_box2el(e: &Embedding, ax: &Axiom) -> Result<Verdict, SemError> {
    check_language(Method::Box2el, ax)?;
    if let Some(encoded) = encode_assertion(ax) {
        return satisfies_box2el(e, &encoded);
    }
    match ax {
        Axiom::RoleInclusion { sub, sup } if !sub.inverse && !sup.inverse => {
            let (h1, t1) = e.role_head_tail(&sub.name)?;
            let (h2, t2) = e.role_head_tail(&sup.name)?;
            Ok(Verdict::exact(h1.subset(h2)? && t1.subset(t2)?))
        }
        Axiom::RoleComposition { first, second, sup } => {
            let (h1, _) = e.role_head_tail(first)?;
            let (_, t2) = e.role_head_tail(second)?;
            let (hs, ts) = e.role_head_tail(sup)?;
            Ok(Verdict::exact(h1.subset(hs)? && t2.subset(ts)?))
        }
        Axiom::ConceptInclusion { lhs, rhs, .. } => match (lhs, rhs) {
            (Concept::And(a1, a2), Concept::Bot) => {
                let meet = b2_box(e, a1)?.intersect(&b2_box(e, a2)?)?;
                Ok(Verdict::exact(meet.is_empty()))
            }
            (Concept::Exists(r, f), Concept::Bot) if !r.inverse => {
                // `∃r.B ⊑ ⊥` read through the left-existential rule with an
                // empty right side: the translated head must be empty.
                let (head, _) = e.role_head_tail(&r.name)?;
                let shifted = head.translate(&b2_bump(e, f)?.neg())?;
                Ok(Verdict::exact(shifted.is_empty()))
            }
            (Concept::And(a1, a2), d) => {
                let meet = b2_box(e, a1)?.intersect(&b2_box(e, a2)?)?;
                Ok(Verdict::exact(meet.subset(&b2_box(e, d)?)?))
            }
            (c, Concept::Exists(r, f)) if !r.inverse => {
                let (head, tail) = e.role_head_tail(&r.name)?;
                let bc = b2_box(e, c)?;
                let bf = b2_box(e, f)?;
                let head_ok = bc.translate(&b2_bump(e, f)?)?.subset(head)?;
                let tail_ok = bf.translate(&b2_bump(e, c)?)?.subset(tail)?;
                // Emptiness guard: an empty filler forces an empty left side.
                let guard = !bf.is_empty() || bc.is_empty();
                Ok(Verdict::exact(head_ok && tail_ok && guard))
            }
            (Concept::Exists(r, f), d) if !r.inverse => {
                let (head, _) = e.role_head_tail(&r.name)?;
                let shifted = head.translate(&b2_bump(e, f)?.neg())?;
                Ok(Verdict::exact(shifted.subset(&b2_box(e, d)?)?))
            }
            (c, d) => Ok(Verdict::exact(b2_box(e, c)?.subset(&b2_box(e, d)?)?)),
        },
        other => Err(outside(Method::Box2el, other)),
    }
}

// ---------------------------------------------------------------------------
// Relation box pairs with bumps

pub fn satisfies_boxe(e: &Embedding, ax: &Axiom) -> Result<Verdict, SemError> {
    check_language(Method::Boxe, ax)?;
    match ax {
        Axiom::ConceptAssertion { concept, individual } => {
            let base = e.ind_point(individual)?;
            Ok(Verdict::exact(e.concept_box(concept)?.member(base)?))
        }
        Axiom::RoleAssertion { role, subject, object } => {
            let (r1, r2) = e.role_box_pair(role)?;
            let ec = e.ind_point(subject)?;
            let ed = e.ind_point(object)?;
            let bc = e.ind_bump(subject)?;
            let bd = e.ind_bump(object)?;
            let first = r1.member(&ec.add(bd)?)?;
            let second = r2.member(&ed.add(bc)?)?;
            Ok(Verdict::exact(first && second))
        }
        Axiom::Pattern(p) => satisfies_boxe_pattern(e, p),
        other => Err(outside(Method::Boxe, other)),
    }
}

fn satisfies_boxe_pattern(e: &Embedding, p: &Pattern) -> Result<Verdict, SemError> {
    let pair = |i: usize| e.role_box_pair(&p.roles[i]);
    match p.kind {
        PatternKind::Symmetry => {
            // `r ⊑ r⁻` reads as the inversion rule applied to the role and
            // itself: the two boxes coincide.
            let (r1, r2) = pair(0)?;
            Ok(Verdict::exact(r1.same_region(r2)?))
        }
        PatternKind::Inversion => {
            let (r1, r2) = pair(0)?;
            let (s1, s2) = pair(1)?;
            Ok(Verdict::exact(r1.same_region(s2)? && r2.same_region(s1)?))
        }
        PatternKind::Hierarchy => {
            let (r1, r2) = pair(0)?;
            let (s1, s2) = pair(1)?;
            Ok(Verdict::exact(r1.subset(s1)? && r2.subset(s2)?))
        }
        PatternKind::Intersection => {
            let (r1, r2) = pair(0)?;
            let (s1, s2) = pair(1)?;
            let (t1, t2) = pair(2)?;
            Ok(Verdict::exact(
                r1.intersect(s1)?.subset(t1)? && r2.intersect(s2)?.subset(t2)?,
            ))
        }
        PatternKind::Exclusion => {
            let (r1, r2) = pair(0)?;
            let (s1, s2) = pair(1)?;
            Ok(Verdict::exact(r1.disjoint(s1)? || r2.disjoint(s2)?))
        }
        PatternKind::Asymmetry => {
            let (r1, r2) = pair(0)?;
            Ok(Verdict::exact(r1.disjoint(r2)?))
        }
        PatternKind::Composition => Err(SemError::Unsupported {
            method: "boxe",
            what: "composition pattern".into(),
        }),
    }
}

// ---------------------------------------------------------------------------

/// Builders shared by probes and tests.
pub fn int_box(lo: &[i64], hi: &[i64]) -> BoxRegion {
    BoxRegion::from_corners(&RVector::from_ints(lo), &RVector::from_ints(hi)).expect("dims")
}

pub fn rat_box(lo: &[(i64, i64)], hi: &[(i64, i64)]) -> BoxRegion {
    let l: Vec<Ext> = lo.iter().map(|&(n, d)| Ext::fin(n, d)).collect();
    let u: Vec<Ext> = hi.iter().map(|&(n, d)| Ext::fin(n, d)).collect();
    BoxRegion::new(l, u).expect("dims")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::AffineDiagMap;
    use crate::kb::RoleAtom;
    use crate::rat::rint;
    use crate::semantics::{ConceptPayload, IndPayload, RolePayload};

    #[test]
    fn elbe_point_box_is_bottom() {
        let mut e = Embedding::new(Method::Elbe, 2);
        e.concepts.insert("A".into(), ConceptPayload::Box(int_box(&[5, 5], &[5, 5])));
        let ax = Axiom::subclass(Concept::name("A"), Concept::Bot);
        assert!(satisfies_elbe(&e, &ax).unwrap().value);
        // and through an existential
        e.roles.insert("r".into(), RolePayload::Vector(RVector::from_ints(&[1, 1])));
        let ax2 = Axiom::subclass(
            Concept::exists(RoleAtom::plain("r"), Concept::name("A")),
            Concept::Bot,
        );
        assert!(satisfies_elbe(&e, &ax2).unwrap().value);
    }

    #[test]
    fn elbe_translation_and_intersection() {
        let mut e = Embedding::new(Method::Elbe, 2);
        e.concepts.insert("C".into(), ConceptPayload::Box(int_box(&[2, 2], &[4, 4])));
        e.concepts.insert("A".into(), ConceptPayload::Box(int_box(&[1, 1], &[3, 3])));
        e.roles.insert("r".into(), RolePayload::Vector(RVector::from_ints(&[1, 1])));
        let ax = Axiom::subclass(
            Concept::name("A"),
            Concept::exists(RoleAtom::plain("r"), Concept::name("C")),
        );
        assert!(satisfies_elbe(&e, &ax).unwrap().value);

        let mut e2 = Embedding::new(Method::Elbe, 2);
        e2.concepts.insert("A1".into(), ConceptPayload::Box(int_box(&[0, 0], &[2, 2])));
        e2.concepts.insert("A2".into(), ConceptPayload::Box(int_box(&[1, 1], &[3, 3])));
        e2.concepts.insert("B".into(), ConceptPayload::Box(int_box(&[1, 1], &[2, 2])));
        let ax2 = Axiom::subclass(
            Concept::and(Concept::name("A1"), Concept::name("A2")),
            Concept::name("B"),
        );
        assert!(satisfies_elbe(&e2, &ax2).unwrap().value);
    }

    #[test]
    fn boxel_role_assertions_are_functional() {
        let mut e = Embedding::new(Method::Boxel, 2);
        e.individuals.insert("a".into(), IndPayload::Point(RVector::from_ints(&[1, 1])));
        e.individuals.insert("b".into(), IndPayload::Point(RVector::from_ints(&[2, 3])));
        e.roles.insert(
            "r".into(),
            RolePayload::Affine(
                AffineDiagMap::new(vec![rint(2), rint(0)], RVector::from_ints(&[0, 3])).unwrap(),
            ),
        );
        let ok = Axiom::RoleAssertion { role: "r".into(), subject: "a".into(), object: "b".into() };
        assert!(satisfies_boxel(&e, &ok).unwrap().value);
        let back = Axiom::RoleAssertion { role: "r".into(), subject: "b".into(), object: "a".into() };
        assert!(!satisfies_boxel(&e, &back).unwrap().value);
    }

    #[test]
    fn boxel_existential_via_preimage() {
        // Box(A)=[0,1], D=(1), b=(2), Box(B)=[2,3]: A ⊑ ∃r.B
        let mut e = Embedding::new(Method::Boxel, 1);
        e.concepts.insert("A".into(), ConceptPayload::Box(int_box(&[0], &[1])));
        e.concepts.insert("B".into(), ConceptPayload::Box(int_box(&[2], &[3])));
        e.roles.insert(
            "r".into(),
            RolePayload::Affine(AffineDiagMap::new(vec![rint(1)], RVector::from_ints(&[2])).unwrap()),
        );
        let ax = Axiom::subclass(
            Concept::name("A"),
            Concept::exists(RoleAtom::plain("r"), Concept::name("B")),
        );
        assert!(satisfies_boxel(&e, &ax).unwrap().value);
        let rev = Axiom::subclass(
            Concept::exists(RoleAtom::plain("r"), Concept::name("B")),
            Concept::name("A"),
        );
        assert!(satisfies_boxel(&e, &rev).unwrap().value); // preimage is exactly [0,1]
    }

    #[test]
    fn box2el_head_minus_bump() {
        // Head(r)=[0,1]^2, Bump(B)=(1,1), Box(A)=[-1,0]^2: ∃r.B ⊑ A
        let mut e = Embedding::new(Method::Box2el, 2);
        e.concepts.insert(
            "A".into(),
            ConceptPayload::BoxBump { bx: int_box(&[-1, -1], &[0, 0]), bump: RVector::zero(2) },
        );
        e.concepts.insert(
            "B".into(),
            ConceptPayload::BoxBump { bx: int_box(&[0, 0], &[1, 1]), bump: RVector::from_ints(&[1, 1]) },
        );
        e.roles.insert(
            "r".into(),
            RolePayload::HeadTail { head: int_box(&[0, 0], &[1, 1]), tail: int_box(&[0, 0], &[1, 1]) },
        );
        let ax = Axiom::subclass(
            Concept::exists(RoleAtom::plain("r"), Concept::name("B")),
            Concept::name("A"),
        );
        assert!(satisfies_box2el(&e, &ax).unwrap().value);
    }

    #[test]
    fn box2el_role_hierarchy_and_composition() {
        let mut e = Embedding::new(Method::Box2el, 1);
        let small = int_box(&[0], &[1]);
        let big = int_box(&[-1], &[2]);
        e.roles.insert("r1".into(), RolePayload::HeadTail { head: small.clone(), tail: small.clone() });
        e.roles.insert("r2".into(), RolePayload::HeadTail { head: big.clone(), tail: big.clone() });
        let ax = Axiom::RoleInclusion { sub: RoleAtom::plain("r1"), sup: RoleAtom::plain("r2") };
        assert!(satisfies_box2el(&e, &ax).unwrap().value);
        let comp = Axiom::RoleComposition { first: "r1".into(), second: "r1".into(), sup: "r2".into() };
        assert!(satisfies_box2el(&e, &comp).unwrap().value);
    }

    #[test]
    fn box2el_emptiness_guard() {
        let mut e = Embedding::new(Method::Box2el, 1);
        let full_box = int_box(&[-10], &[10]);
        e.concepts.insert(
            "A".into(),
            ConceptPayload::BoxBump { bx: int_box(&[0], &[1]), bump: RVector::zero(1) },
        );
        e.concepts.insert(
            "B".into(),
            ConceptPayload::BoxBump { bx: BoxRegion::empty(1), bump: RVector::zero(1) },
        );
        e.roles.insert("r".into(), RolePayload::HeadTail { head: full_box.clone(), tail: full_box });
        let ax = Axiom::subclass(
            Concept::name("A"),
            Concept::exists(RoleAtom::plain("r"), Concept::name("B")),
        );
        // Box(B) empty but Box(A) non-empty: the guard fails the axiom even
        // though both translate containments hold vacuously/trivially.
        assert!(!satisfies_box2el(&e, &ax).unwrap().value);
    }

    #[test]
    fn boxe_assertion_and_patterns() {
        let mut e = Embedding::new(Method::Boxe, 1);
        e.individuals.insert(
            "c".into(),
            IndPayload::BaseBump { base: RVector::from_ints(&[0]), bump: RVector::from_ints(&[-1]) },
        );
        e.individuals.insert(
            "d".into(),
            IndPayload::BaseBump { base: RVector::from_ints(&[2]), bump: RVector::from_ints(&[1]) },
        );
        e.roles.insert(
            "r".into(),
            RolePayload::BoxPair { first: rat_box(&[(1, 2)], &[(3, 2)]), second: rat_box(&[(1, 2)], &[(3, 2)]) },
        );
        let ax = Axiom::RoleAssertion { role: "r".into(), subject: "c".into(), object: "d".into() };
        assert!(satisfies_boxe(&e, &ax).unwrap().value);

        // inversion / asymmetry box algebra
        let mut e2 = Embedding::new(Method::Boxe, 1);
        e2.roles.insert(
            "r1".into(),
            RolePayload::BoxPair { first: int_box(&[0], &[1]), second: int_box(&[2], &[3]) },
        );
        e2.roles.insert(
            "r2".into(),
            RolePayload::BoxPair { first: int_box(&[2], &[3]), second: int_box(&[0], &[1]) },
        );
        let inv = Axiom::Pattern(Pattern::new(PatternKind::Inversion, &["r1", "r2"]));
        assert!(satisfies_boxe(&e2, &inv).unwrap().value);
        let asym = Axiom::Pattern(Pattern::new(PatternKind::Asymmetry, &["r1"]));
        assert!(satisfies_boxe(&e2, &asym).unwrap().value);
        let comp = Axiom::Pattern(Pattern::new(PatternKind::Composition, &["r1", "r2", "r1"]));
        assert!(satisfies_boxe(&e2, &comp).is_err()); // outside the language
    }
}
