//! Satisfaction for the two ball-based methods.
//!
//! Concepts and nominals are open balls, roles are translation vectors, and
//! the ball of `∃r.C` is the ball of `C` translated by `−E(r)` (same
//! radius). Inclusions with `⊥` on the right follow the special rules:
//! `A ⊑ ⊥` and `∃r.A ⊑ ⊥` hold iff the radius of `A` is zero (the same
//! condition, which is exactly the conflation the expressiveness audits
//! exercise), and `A1 ⊓ A2 ⊑ ⊥` holds iff the two balls are disjoint.
//!
//! Assertions are evaluated only through their nominal encodings. The
//! extended method additionally reads `r ⊑ s` as equality of the two
//! translation vectors and `r1 ∘ r2 ⊑ s` as `E(r1) + E(r2) = E(s)`.

use crate::geom::{ball_subset, ball_translate, balls_disjoint, lens_subset_ball, OpenBall, RVector};
use crate::kb::{Axiom, Concept};
use crate::rat::Ext;

use super::{outside, Embedding, Method, SemError, Verdict};

/// The ball of a normal-form concept (everything except conjunctions, which
/// are handled at the axiom level because a lens is not a ball).
fn ball_of(e: &Embedding, c: &Concept, method: Method) -> Result<OpenBall, SemError> {
    match c {
        Concept::Top => Ok(OpenBall::new(RVector::zero(e.dim), Ext::PosInf).expect("valid")),
        Concept::Bot => Ok(OpenBall::new(RVector::zero(e.dim), Ext::zero()).expect("valid")),
        Concept::Name(n) => Ok(e.concept_ball(n)?.clone()),
        Concept::Nominal(a) => Ok(e.ind_ball(a)?.clone()),
        Concept::Exists(r, f) if !r.inverse => {
            let base = ball_of(e, f, method)?;
            Ok(ball_translate(&base, e.role_vector(&r.name)?)?)
        }
        _ => Err(SemError::Unsupported {
            method: method.as_str(),
            what: format!("{c:?}"),
        }),
    }
}

fn satisfies_ball_inclusion(
    e: &Embedding,
    lhs: &Concept,
    rhs: &Concept,
    method: Method,
) -> Result<Verdict, SemError> {
    match (lhs, rhs) {
        // Bottom right-hand sides.
        (Concept::And(a1, a2), Concept::Bot) => {
            let b1 = ball_of(e, a1, method)?;
            let b2 = ball_of(e, a2, method)?;
            Ok(Verdict::exact(balls_disjoint(&b1, &b2)?))
        }
        (c, Concept::Bot) => {
            // Covers both `A ⊑ ⊥` and `∃r.A ⊑ ⊥`: translation preserves the
            // radius, so emptiness of the translated ball is emptiness of the
            // filler's ball.
            Ok(Verdict::exact(ball_of(e, c, method)?.is_empty()))
        }
        // Lens on the left.
        (Concept::And(a1, a2), d) => {
            let b1 = ball_of(e, a1, method)?;
            let b2 = ball_of(e, a2, method)?;
            let target = ball_of(e, d, method)?;
            Ok(lens_subset_ball(&b1, &b2, &target)?)
        }
        (c, d) => {
            let lhs = ball_of(e, c, method)?;
            let rhs = ball_of(e, d, method)?;
            Ok(Verdict::exact(ball_subset(&lhs, &rhs)?))
        }
    }
}

fn check_language(method: Method, ax: &Axiom) -> Result<(), SemError> {
    if method.in_language(ax) {
        Ok(())
    } else {
        Err(outside(method, ax))
    }
}

/// Routes a native assertion through its nominal encoding.
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

pub fn satisfies_elem(e: &Embedding, ax: &Axiom) -> Result<Verdict, SemError> {
    check_language(Method::Elem, ax)?;
    if let Some(encoded) = encode_assertion(ax) {
        return satisfies_elem(e, &encoded);
    }
    match ax {
        Axiom::ConceptInclusion { lhs, rhs, .. } => {
            satisfies_ball_inclusion(e, lhs, rhs, Method::Elem)
        }
        other => Err(outside(Method::Elem, other)),
    }
}

pub fn satisfies_emel(e: &Embedding, ax: &Axiom) -> Result<Verdict, SemError> {
    check_language(Method::Emel, ax)?;
    if let Some(encoded) = encode_assertion(ax) {
        return satisfies_emel(e, &encoded);
    }
    match ax {
        Axiom::ConceptInclusion { lhs, rhs, .. } => {
            satisfies_ball_inclusion(e, lhs, rhs, Method::Emel)
        }
        Axiom::RoleInclusion { sub, sup } if !sub.inverse && !sup.inverse => {
            Ok(Verdict::exact(e.role_vector(&sub.name)? == e.role_vector(&sup.name)?))
        }
        Axiom::RoleComposition { first, second, sup } => {
            let sum = e.role_vector(first)?.add(e.role_vector(second)?)?;
            Ok(Verdict::exact(&sum == e.role_vector(sup)?))
        }
        other => Err(outside(Method::Emel, other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::OpenBall;
    use crate::kb::RoleAtom;
    use crate::rat::rat;
    use crate::semantics::{ConceptPayload, IndPayload, RolePayload};

    fn ball(center: &[i64], num: i64, den: i64) -> OpenBall {
        OpenBall::new(RVector::from_ints(center), Ext::Fin(rat(num, den))).unwrap()
    }

    /// The unsoundness-witness embedding: `{a}` and `A` share an empty ball
    /// centred on the unit circle.
    fn unsound_witness() -> Embedding {
        let mut e = Embedding::new(Method::Elem, 2);
        e.concepts.insert("A".into(), ConceptPayload::Ball(ball(&[0, 1], 0, 1)));
        e.individuals.insert("a".into(), IndPayload::Ball(ball(&[0, 1], 0, 1)));
        e
    }

    #[test]
    fn empty_ball_models_the_unsatisfiable_kb() {
        let e = unsound_witness();
        let a_bot = Axiom::subclass(Concept::name("A"), Concept::Bot);
        let a_in = Axiom::subclass(Concept::nominal("a"), Concept::name("A"));
        assert!(satisfies_elem(&e, &a_bot).unwrap().value);
        assert!(satisfies_elem(&e, &a_in).unwrap().value);
    }

    #[test]
    fn top_has_infinite_radius() {
        let e = unsound_witness();
        let ax = Axiom::subclass(Concept::name("A"), Concept::Top);
        assert!(satisfies_elem(&e, &ax).unwrap().value);
        let top_bot = Axiom::subclass(Concept::Top, Concept::Bot);
        assert!(!satisfies_elem(&e, &top_bot).unwrap().value);
    }

    #[test]
    fn translated_ball_containment() {
        // Ball(∃r.C) has centre c(C) − E(r) and the radius of C.
        let mut e = Embedding::new(Method::Elem, 2);
        e.concepts.insert("C".into(), ConceptPayload::Ball(ball(&[4, 4], 1, 1)));
        e.concepts.insert("A".into(), ConceptPayload::Ball(ball(&[3, 3], 1, 1)));
        e.roles.insert("r".into(), RolePayload::Vector(RVector::from_ints(&[1, 1])));
        let ax = Axiom::subclass(
            Concept::name("A"),
            Concept::exists(RoleAtom::plain("r"), Concept::name("C")),
        );
        assert!(satisfies_elem(&e, &ax).unwrap().value);
        // and the existential-on-the-left direction
        let ax2 = Axiom::subclass(
            Concept::exists(RoleAtom::plain("r"), Concept::name("C")),
            Concept::name("A"),
        );
        assert!(satisfies_elem(&e, &ax2).unwrap().value);
    }

    #[test]
    fn bottom_rules_conflate_existentials() {
        let mut e = Embedding::new(Method::Elem, 2);
        e.concepts.insert("A".into(), ConceptPayload::Ball(ball(&[5, 5], 0, 1)));
        e.concepts.insert("B".into(), ConceptPayload::Ball(ball(&[0, 0], 2, 1)));
        e.roles.insert("r".into(), RolePayload::Vector(RVector::from_ints(&[1, 0])));
        let direct = Axiom::subclass(Concept::name("A"), Concept::Bot);
        let existential = Axiom::subclass(
            Concept::exists(RoleAtom::plain("r"), Concept::name("A")),
            Concept::Bot,
        );
        assert!(satisfies_elem(&e, &direct).unwrap().value);
        assert!(satisfies_elem(&e, &existential).unwrap().value);
        let b_direct = Axiom::subclass(Concept::name("B"), Concept::Bot);
        let b_exist = Axiom::subclass(
            Concept::exists(RoleAtom::plain("r"), Concept::name("B")),
            Concept::Bot,
        );
        assert!(!satisfies_elem(&e, &b_direct).unwrap().value);
        assert!(!satisfies_elem(&e, &b_exist).unwrap().value);
    }

    #[test]
    fn disjointness_via_lens() {
        let mut e = Embedding::new(Method::Elem, 2);
        e.concepts.insert("A".into(), ConceptPayload::Ball(ball(&[0, 0], 1, 1)));
        e.concepts.insert("B".into(), ConceptPayload::Ball(ball(&[2, 0], 1, 1)));
        e.concepts.insert("C".into(), ConceptPayload::Ball(ball(&[1, 0], 3, 1)));
        let disj = Axiom::subclass(
            Concept::and(Concept::name("A"), Concept::name("B")),
            Concept::Bot,
        );
        assert!(satisfies_elem(&e, &disj).unwrap().value);
        let lens_in = Axiom::subclass(
            Concept::and(Concept::name("A"), Concept::name("C")),
            Concept::name("C"),
        );
        assert!(satisfies_elem(&e, &lens_in).unwrap().value);
    }

    #[test]
    fn role_axioms_are_vector_equations() {
        let mut e = Embedding::new(Method::Emel, 2);
        e.roles.insert("r".into(), RolePayload::Vector(RVector::from_ints(&[1, 0])));
        e.roles.insert("s".into(), RolePayload::Vector(RVector::from_ints(&[1, 0])));
        e.roles.insert("t".into(), RolePayload::Vector(RVector::from_ints(&[2, 0])));
        let incl = Axiom::RoleInclusion { sub: RoleAtom::plain("r"), sup: RoleAtom::plain("s") };
        assert!(satisfies_emel(&e, &incl).unwrap().value);
        let incl_ne = Axiom::RoleInclusion { sub: RoleAtom::plain("r"), sup: RoleAtom::plain("t") };
        assert!(!satisfies_emel(&e, &incl_ne).unwrap().value);
        let comp = Axiom::RoleComposition { first: "r".into(), second: "s".into(), sup: "t".into() };
        assert!(satisfies_emel(&e, &comp).unwrap().value);
        // composition order cannot matter: vector addition commutes
        let comp_rev = Axiom::RoleComposition { first: "s".into(), second: "r".into(), sup: "t".into() };
        assert_eq!(
            satisfies_emel(&e, &comp).unwrap().value,
            satisfies_emel(&e, &comp_rev).unwrap().value
        );
    }

    #[test]
    fn language_gating() {
        let e = unsound_witness();
        let role_ax = Axiom::RoleInclusion { sub: RoleAtom::plain("r"), sup: RoleAtom::plain("s") };
        assert!(matches!(
            satisfies_elem(&e, &role_ax),
            Err(SemError::OutsideLanguage { .. })
        ));
        let pattern = Axiom::Pattern(crate::kb::Pattern::new(crate::kb::PatternKind::Symmetry, &["r"]));
        assert!(satisfies_elem(&e, &pattern).is_err());
    }
}
