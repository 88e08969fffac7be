//! Satisfaction for the convex-region, axis-aligned-cone and band methods.
//!
//! * Convex regions: concepts are H-polyhedra in `R^d`, roles H-polyhedra in
//!   `R^{2d}`; assertions are membership of (concatenated) points, inverse
//!   roles swap the two halves, and `∃ρ.A` is the exact shadow of
//!   `E(ρ) ∩ (R^d × E(A))` on the first factor. Role-exclusion patterns are
//!   additionally evaluated as region disjointness, which is what the
//!   completeness counterexamples probe.
//! * Cones: propositional concept trees evaluate componentwise (meet for ⊓,
//!   polar for ¬, derived join for ⊔); inclusions are the componentwise
//!   order, assertions sign-pattern membership.
//! * Bands: role assertions are slice memberships; the pattern rules reduce
//!   to mirror / subset / disjointness / composition of band stacks.

use crate::geom::{AlCone, BandStack, FmBudget, HPolyhedron};
use crate::kb::{Axiom, Concept, Pattern, PatternKind, RoleAtom};

use super::{outside, Embedding, Method, SemError, Verdict};

// ---------------------------------------------------------------------------
// Convex regions

fn conv_role_region(e: &Embedding, atom: &RoleAtom) -> Result<HPolyhedron, SemError> {
    let base = e.role_region(&atom.name)?;
    if atom.inverse {
        Ok(base.swap_halves()?)
    } else {
        Ok(base.clone())
    }
}

/// The region of a concept under the convex semantics. Conjunctions may be
/// nested (the region algebra is closed under intersection), which the
/// strong-faithfulness probes rely on.
fn conv_region(e: &Embedding, c: &Concept, budget: &FmBudget) -> Result<HPolyhedron, SemError> {
    match c {
        Concept::Top => Ok(HPolyhedron::full(e.dim)),
        Concept::Bot => Ok(HPolyhedron::empty(e.dim)),
        Concept::Name(n) => Ok(e.concept_region(n)?.clone()),
        Concept::And(x, y) => {
            Ok(conv_region(e, x, budget)?.intersect(&conv_region(e, y, budget)?)?)
        }
        Concept::Exists(rho, f) => {
            let role = conv_role_region(e, rho)?;
            let filler = conv_region(e, f, budget)?;
            let cylinder = HPolyhedron::full(e.dim).product(&filler);
            let joint = role.intersect(&cylinder)?;
            let keep: Vec<usize> = (0..e.dim).collect();
            Ok(joint.project(&keep, budget)?)
        }
        other => Err(SemError::Unsupported { method: "conv", what: format!("{other:?}") }),
    }
}

pub fn satisfies_conv(e: &Embedding, ax: &Axiom, budget: &FmBudget) -> Result<Verdict, SemError> {
    match ax {
        Axiom::ConceptInclusion { lhs, rhs, .. } => {
            let l = conv_region(e, lhs, budget)?;
            let r = conv_region(e, rhs, budget)?;
            Ok(Verdict::exact(l.subset(&r, budget)?))
        }
        Axiom::RoleInclusion { sub, sup } if !sub.inverse => {
            let l = conv_role_region(e, sub)?;
            let r = conv_role_region(e, sup)?;
            Ok(Verdict::exact(l.subset(&r, budget)?))
        }
        Axiom::ConceptAssertion { concept, individual } => {
            let p = e.ind_point(individual)?;
            Ok(Verdict::exact(e.concept_region(concept)?.member(p)?))
        }
        Axiom::RoleAssertion { role, subject, object } => {
            let p = e.ind_point(subject)?.concat(e.ind_point(object)?);
            Ok(Verdict::exact(e.role_region(role)?.member(&p)?))
        }
        // Region disjointness for the exclusion pattern; not part of the
        // normal-form language but needed to state the completeness
        // counterexample against the convex semantics.
        Axiom::Pattern(Pattern { kind: PatternKind::Exclusion, roles }) => {
            let r1 = e.role_region(&roles[0])?;
            let r2 = e.role_region(&roles[1])?;
            Ok(Verdict::exact(r1.intersect(r2)?.is_empty(budget)?))
        }
        other => Err(outside(Method::Conv, other)),
    }
}

// ---------------------------------------------------------------------------
// Axis-aligned cones

fn cone_of(e: &Embedding, c: &Concept) -> Result<AlCone, SemError> {
    match c {
        Concept::Top => Ok(AlCone::top(e.dim)),
        Concept::Bot => Ok(AlCone::bottom(e.dim)),
        Concept::Name(n) => Ok(e.concept_cone(n)?.clone()),
        Concept::Not(x) => Ok(cone_of(e, x)?.polar()),
        Concept::And(x, y) => Ok(cone_of(e, x)?.meet(&cone_of(e, y)?)?),
        Concept::Or(x, y) => Ok(cone_of(e, x)?.join(&cone_of(e, y)?)?),
        Concept::Exists(_, _) | Concept::Forall(_, _) => Err(SemError::Unsupported {
            method: "cone",
            what: "role-bearing concepts (rank-bounded fragment not implemented)".into(),
        }),
        Concept::Nominal(_) => Err(SemError::Unsupported {
            method: "cone",
            what: "nominals".into(),
        }),
    }
}

pub fn satisfies_cone(e: &Embedding, ax: &Axiom) -> Result<Verdict, SemError> {
    match ax {
        Axiom::ConceptInclusion { lhs, rhs, .. } => {
            let l = cone_of(e, lhs)?;
            let r = cone_of(e, rhs)?;
            Ok(Verdict::exact(l.leq(&r)?))
        }
        Axiom::ConceptAssertion { concept, individual } => {
            let p = e.ind_point(individual)?;
            Ok(Verdict::exact(e.concept_cone(concept)?.member(p)?))
        }
        Axiom::RoleAssertion { role, subject, object } => {
            let a = e.ind_point(subject)?;
            let b = e.ind_point(object)?;
            Ok(Verdict::exact(
                e.role_pairs(role)?.iter().any(|(x, y)| x == a && y == b),
            ))
        }
        other => Err(outside(Method::Cone, other)),
    }
}

// ---------------------------------------------------------------------------
// Bands

pub fn satisfies_expr(e: &Embedding, ax: &Axiom, budget: &FmBudget) -> Result<Verdict, SemError> {
    match ax {
        Axiom::RoleAssertion { role, subject, object } => {
            let band = e.role_band(role)?;
            Ok(Verdict::exact(
                band.member(e.ind_point(subject)?, e.ind_point(object)?)?,
            ))
        }
        Axiom::Pattern(p) => satisfies_expr_pattern(e, p, budget),
        Axiom::ConceptAssertion { .. } => Err(SemError::Unsupported {
            method: "expr",
            what: "concept assertions".into(),
        }),
        other => Err(outside(Method::Expr, other)),
    }
}

fn satisfies_expr_pattern(e: &Embedding, p: &Pattern, budget: &FmBudget) -> Result<Verdict, SemError> {
    let band = |i: usize| -> Result<&BandStack, SemError> { e.role_band(&p.roles[i]) };
    let v = match p.kind {
        PatternKind::Symmetry => {
            let b = band(0)?;
            b.same_region(&b.mirror()?, budget)?
        }
        PatternKind::Inversion => band(0)?.same_region(&band(1)?.mirror()?, budget)?,
        PatternKind::Hierarchy => band(0)?.subset(band(1)?, budget)?,
        PatternKind::Intersection => {
            band(0)?.intersect(band(1)?)?.subset(band(2)?, budget)?
        }
        PatternKind::Exclusion => band(0)?.disjoint(band(1)?, budget)?,
        PatternKind::Asymmetry => {
            let b = band(0)?;
            b.disjoint(&b.mirror()?, budget)?
        }
        PatternKind::Composition => {
            band(0)?.compose(band(1)?, budget)?.subset(band(2)?, budget)?
        }
    };
    Ok(Verdict::exact(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{ConeAxis, LinearConstraint, RVector, Rel};
    use crate::rat::rint;
    use crate::semantics::{ConceptPayload, IndPayload, RolePayload};

    fn budget() -> FmBudget {
        FmBudget::default()
    }

    #[test]
    fn conv_trivial_model() {
        // E(A) = E(B) = R (d = 1): A ⊑ B holds, B ⊑ A holds too.
        let mut e = Embedding::new(Method::Conv, 1);
        e.concepts.insert("A".into(), ConceptPayload::Region(HPolyhedron::full(1)));
        e.concepts.insert("B".into(), ConceptPayload::Region(HPolyhedron::full(1)));
        e.individuals.insert("a".into(), IndPayload::Point(RVector::from_ints(&[0])));
        let ab = Axiom::subclass(Concept::name("A"), Concept::name("B"));
        let ba = Axiom::subclass(Concept::name("B"), Concept::name("A"));
        assert!(satisfies_conv(&e, &ab, &budget()).unwrap().value);
        assert!(satisfies_conv(&e, &ba, &budget()).unwrap().value);
        let bot = Axiom::subclass(Concept::Bot, Concept::name("A"));
        assert!(satisfies_conv(&e, &bot, &budget()).unwrap().value);
    }

    #[test]
    fn conv_role_inverse_swap() {
        // E(r) = {x0 - x1 <= 0} in R^2 (d = 1): r ⊑ r⁻ fails.
        let mut e = Embedding::new(Method::Conv, 1);
        let r = HPolyhedron::new(
            2,
            vec![LinearConstraint::new(vec![rint(1), rint(-1)], Rel::Le, rint(0))],
        )
        .unwrap();
        e.roles.insert("r".into(), RolePayload::Region(r));
        let ax = Axiom::RoleInclusion { sub: RoleAtom::plain("r"), sup: RoleAtom::inv("r") };
        assert!(!satisfies_conv(&e, &ax, &budget()).unwrap().value);
        // witness: (0,1) in E(r) but (1,0) not in E(r)
        let member = Axiom::RoleAssertion { role: "r".into(), subject: "a".into(), object: "b".into() };
        e.individuals.insert("a".into(), IndPayload::Point(RVector::from_ints(&[0])));
        e.individuals.insert("b".into(), IndPayload::Point(RVector::from_ints(&[1])));
        assert!(satisfies_conv(&e, &member, &budget()).unwrap().value);
        let rev = Axiom::RoleAssertion { role: "r".into(), subject: "b".into(), object: "a".into() };
        assert!(!satisfies_conv(&e, &rev, &budget()).unwrap().value);
    }

    #[test]
    fn conv_existential_projection() {
        // E(r) = unit square of R^2 (d=1), E(A) = [0, 1/2]: E(∃r.A) = [0,1].
        let mut e = Embedding::new(Method::Conv, 1);
        let square = HPolyhedron::new(
            2,
            vec![
                LinearConstraint::new(vec![rint(1), rint(0)], Rel::Le, rint(1)),
                LinearConstraint::new(vec![rint(-1), rint(0)], Rel::Le, rint(0)),
                LinearConstraint::new(vec![rint(0), rint(1)], Rel::Le, rint(1)),
                LinearConstraint::new(vec![rint(0), rint(-1)], Rel::Le, rint(0)),
            ],
        )
        .unwrap();
        e.roles.insert("r".into(), RolePayload::Region(square));
        e.concepts.insert(
            "A".into(),
            ConceptPayload::Region(HPolyhedron::interval(&crate::rat::Ext::int(0), &crate::rat::Ext::fin(1, 2))),
        );
        e.concepts.insert(
            "B".into(),
            ConceptPayload::Region(HPolyhedron::interval(&crate::rat::Ext::int(0), &crate::rat::Ext::int(1))),
        );
        let ax = Axiom::subclass(
            Concept::exists(RoleAtom::plain("r"), Concept::name("A")),
            Concept::name("B"),
        );
        assert!(satisfies_conv(&e, &ax, &budget()).unwrap().value);
        let ax2 = Axiom::subclass(
            Concept::name("B"),
            Concept::exists(RoleAtom::plain("r"), Concept::name("A")),
        );
        assert!(satisfies_conv(&e, &ax2, &budget()).unwrap().value);
    }

    #[test]
    fn cone_inclusion_and_membership() {
        let mut e = Embedding::new(Method::Cone, 2);
        e.concepts.insert("A".into(), ConceptPayload::Cone(AlCone::new(vec![ConeAxis::Plus, ConeAxis::Zero])));
        e.concepts.insert("B".into(), ConceptPayload::Cone(AlCone::new(vec![ConeAxis::Plus, ConeAxis::Full])));
        let ab = Axiom::subclass(Concept::name("A"), Concept::name("B"));
        assert!(satisfies_cone(&e, &ab).unwrap().value);
        // double negation is the identity
        let nn = Axiom::subclass(
            Concept::not(Concept::not(Concept::name("A"))),
            Concept::name("A"),
        );
        let nn2 = Axiom::subclass(
            Concept::name("A"),
            Concept::not(Concept::not(Concept::name("A"))),
        );
        assert!(satisfies_cone(&e, &nn).unwrap().value);
        assert!(satisfies_cone(&e, &nn2).unwrap().value);
        // membership by sign pattern
        let mut e2 = Embedding::new(Method::Cone, 2);
        e2.concepts.insert("A".into(), ConceptPayload::Cone(AlCone::new(vec![ConeAxis::Plus, ConeAxis::Minus])));
        e2.individuals.insert("a".into(), IndPayload::Point(RVector::from_ints(&[1, 1])));
        let aa = Axiom::ConceptAssertion { concept: "A".into(), individual: "a".into() };
        assert!(!satisfies_cone(&e2, &aa).unwrap().value);
        // the gap: neither A(a) nor (¬A)(a) need hold
        let na = Axiom::subclass(Concept::nominal("x"), Concept::Top); // placeholder, not used
        let _ = na;
        let e3 = {
            let mut e3 = Embedding::new(Method::Cone, 2);
            e3.concepts.insert("A".into(), ConceptPayload::Cone(AlCone::new(vec![ConeAxis::Plus, ConeAxis::Plus])));
            e3.individuals.insert("a".into(), IndPayload::Point(RVector::from_ints(&[1, -1])));
            e3
        };
        let pos = Axiom::ConceptAssertion { concept: "A".into(), individual: "a".into() };
        assert!(!satisfies_cone(&e3, &pos).unwrap().value);
        // (¬A)(a) via the polar cone: (Minus, Minus) does not contain (1, -1)
        let neg_cone = e3.concept_cone("A").unwrap().polar();
        assert!(!neg_cone.member(&RVector::from_ints(&[1, -1])).unwrap());
    }

    #[test]
    fn expr_band_patterns() {
        let mut e = Embedding::new(Method::Expr, 2);
        let sym = BandStack::from_slope_center_width(
            &RVector::from_ints(&[1, 1]),
            &RVector::from_ints(&[0, 0]),
            &RVector::from_ints(&[2, 2]),
        )
        .unwrap();
        e.roles.insert("r".into(), RolePayload::Band(sym));
        let symmetry = Axiom::Pattern(Pattern::new(PatternKind::Symmetry, &["r"]));
        assert!(satisfies_expr(&e, &symmetry, &budget()).unwrap().value);

        // composition: |u-v|<=1 ∘ |v-w|<=1 = |u-w|<=2 ⊆ |u-w|<=3
        let narrow = BandStack::from_slope_center_width(
            &RVector::from_ints(&[1]),
            &RVector::from_ints(&[0]),
            &RVector::from_ints(&[1]),
        )
        .unwrap();
        let wide = BandStack::from_slope_center_width(
            &RVector::from_ints(&[1]),
            &RVector::from_ints(&[0]),
            &RVector::from_ints(&[3]),
        )
        .unwrap();
        let mut e2 = Embedding::new(Method::Expr, 1);
        e2.roles.insert("r1".into(), RolePayload::Band(narrow.clone()));
        e2.roles.insert("r2".into(), RolePayload::Band(narrow));
        e2.roles.insert("r3".into(), RolePayload::Band(wide));
        let comp = Axiom::Pattern(Pattern::new(PatternKind::Composition, &["r1", "r2", "r3"]));
        assert!(satisfies_expr(&e2, &comp, &budget()).unwrap().value);

        // exclusion of shifted bands
        let far = BandStack::from_slope_center_width(
            &RVector::from_ints(&[1]),
            &RVector::from_ints(&[10]),
            &RVector::from_ints(&[1]),
        )
        .unwrap();
        let mut e3 = Embedding::new(Method::Expr, 1);
        e3.roles.insert("r1".into(), RolePayload::Band(
            BandStack::from_slope_center_width(
                &RVector::from_ints(&[1]),
                &RVector::from_ints(&[0]),
                &RVector::from_ints(&[1]),
            )
            .unwrap(),
        ));
        e3.roles.insert("r2".into(), RolePayload::Band(far));
        let excl = Axiom::Pattern(Pattern::new(PatternKind::Exclusion, &["r1", "r2"]));
        assert!(satisfies_expr(&e3, &excl, &budget()).unwrap().value);

        // concept assertions are outside the band language
        let ca = Axiom::ConceptAssertion { concept: "A".into(), individual: "a".into() };
        assert!(matches!(
            satisfies_expr(&e3, &ca, &budget()),
            Err(SemError::Unsupported { .. })
        ));
    }
}
