//! The ball-method loss terms, evaluated exactly.
//!
//! For an inclusion `C ⊑ D` between balls the loss is the hinge
//! `max(0, ‖c(C) − c(D)‖ + ρ(C) − ρ(D) − γ)` plus the unit-sphere
//! regularizers `|‖c(C)‖ − 1| + |‖c(D)‖ − 1|`; for `A ⊑ ⊥` it is `ρ(A)`
//! (and the same for `∃r.A ⊑ ⊥`, which shares its truth condition). The
//! conjunction shape uses one hinge per conjunct — with the radius of the
//! respective conjunct — plus an overlap hinge, and `A1 ⊓ A2 ⊑ ⊥` uses the
//! reversed hinge `max(0, ρ1 + ρ2 − ‖c1 − c2‖ + γ)`. Existential sides are
//! translated before the hinge is computed.
//!
//! Hinge activation is decided by exact sign tests; when an active term
//! involves an irrational distance the reported value falls back to a
//! `2^-64` approximation of the square root (the activation decision itself
//! is still exact).

use num_traits::{Signed, Zero};

use crate::geom::{OpenBall, RVector};
use crate::kb::{abox_to_tbox, Axiom, Concept, KnowledgeBase};
use crate::rat::{sqrt_approx, sqrt_exact, sqrt_ge, Ext, Rat};

use super::{Embedding, Method, SemError};

const SQRT_BITS: u32 = 64;

fn ball_of(e: &Embedding, c: &Concept) -> Result<OpenBall, SemError> {
    match c {
        Concept::Name(n) => Ok(e.concept_ball(n)?.clone()),
        Concept::Nominal(a) => Ok(e.ind_ball(a)?.clone()),
        Concept::Exists(r, f) if !r.inverse => {
            let base = ball_of(e, f)?;
            Ok(crate::geom::ball_translate(&base, e.role_vector(&r.name)?)?)
        }
        other => Err(SemError::Unsupported {
            method: "elem loss",
            what: format!("{other:?} (no centre to take a loss over)"),
        }),
    }
}

fn finite(ball: &OpenBall, what: &str) -> Result<Rat, SemError> {
    match &ball.radius {
        Ext::Fin(r) => Ok(r.clone()),
        _ => Err(SemError::Unsupported {
            method: "elem loss",
            what: format!("infinite radius in {what}"),
        }),
    }
}

/// `sqrt` with exact result when available, documented approximation else.
fn sqrt_value(sq: &Rat) -> Rat {
    sqrt_exact(sq).unwrap_or_else(|| sqrt_approx(sq, SQRT_BITS))
}

/// `max(0, sqrt(d2) + tail)` with the activation decided exactly.
fn hinge_sqrt_plus(d2: &Rat, tail: &Rat) -> Rat {
    // active iff sqrt(d2) > -tail
    if crate::rat::cmp_sqrt(d2, &-tail.clone()) == std::cmp::Ordering::Greater {
        sqrt_value(d2) + tail
    } else {
        Rat::zero()
    }
}

/// `max(0, tail - sqrt(d2))`, activation exact.
fn hinge_minus_sqrt(tail: &Rat, d2: &Rat) -> Rat {
    if sqrt_ge(d2, tail) {
        Rat::zero()
    } else {
        tail - sqrt_value(d2)
    }
}

/// `|‖c‖ − 1|` for a centre vector.
fn sphere_reg(c: &RVector) -> Rat {
    let n2 = c.sq_norm();
    let n = sqrt_value(&n2);
    (n - Rat::from_integer(1.into())).abs()
}

fn inclusion_loss(a: &OpenBall, b: &OpenBall, gamma: &Rat) -> Result<Rat, SemError> {
    let ra = finite(a, "left-hand ball")?;
    let rb = finite(b, "right-hand ball")?;
    let d2 = a.center.sq_dist(&b.center)?;
    let tail = &ra - &rb - gamma;
    Ok(hinge_sqrt_plus(&d2, &tail) + sphere_reg(&a.center) + sphere_reg(&b.center))
}

fn axiom_loss(e: &Embedding, ax: &Axiom, gamma: &Rat) -> Result<Rat, SemError> {
    let Axiom::ConceptInclusion { lhs, rhs, .. } = ax else {
        return Err(SemError::Unsupported {
            method: "elem loss",
            what: "only concept inclusions carry loss terms".into(),
        });
    };
    match (lhs, rhs) {
        // `A1 ⊓ A2 ⊑ ⊥`: the balls should not overlap.
        (Concept::And(a1, a2), Concept::Bot) => {
            let b1 = ball_of(e, a1)?;
            let b2 = ball_of(e, a2)?;
            let r1 = finite(&b1, "conjunct")?;
            let r2 = finite(&b2, "conjunct")?;
            let d2 = b1.center.sq_dist(&b2.center)?;
            Ok(hinge_minus_sqrt(&(&r1 + &r2 + gamma), &d2)
                + sphere_reg(&b1.center)
                + sphere_reg(&b2.center))
        }
        // `A ⊑ ⊥` and `∃r.A ⊑ ⊥`: the radius itself.
        (c, Concept::Bot) => finite(&ball_of(e, c)?, "bottom inclusion"),
        // Trivial top right-hand side.
        (_, Concept::Top) => Ok(Rat::zero()),
        // `A1 ⊓ A2 ⊑ B`: one hinge per conjunct, with the corrected radius
        // in the second, plus the overlap hinge.
        (Concept::And(a1, a2), d) => {
            let b1 = ball_of(e, a1)?;
            let b2 = ball_of(e, a2)?;
            let bd = ball_of(e, d)?;
            let r1 = finite(&b1, "conjunct")?;
            let r2 = finite(&b2, "conjunct")?;
            let h1 = hinge_sqrt_plus(&b1.center.sq_dist(&bd.center)?, &(-&r1 - gamma));
            let h2 = hinge_sqrt_plus(&b2.center.sq_dist(&bd.center)?, &(-&r2 - gamma));
            let overlap = hinge_minus_sqrt(
                &(&r1 + &r2 + gamma),
                &b1.center.sq_dist(&b2.center)?,
            );
            Ok(h1 + h2 + overlap
                + sphere_reg(&b1.center)
                + sphere_reg(&b2.center)
                + sphere_reg(&bd.center))
        }
        (c, d) => inclusion_loss(&ball_of(e, c)?, &ball_of(e, d)?, gamma),
    }
}

/// Total loss of a KB under a ball embedding with margin `gamma`.
///
/// Assertions are first encoded as nominal inclusions. The sum is exact
/// whenever every active distance is a perfect rational square (all shipped
/// cases are); otherwise the affected square roots are approximated to
/// `2^-64` and the result is still a plain rational.
pub fn elem_loss(e: &Embedding, kb: &KnowledgeBase, gamma: &Rat) -> Result<Rat, SemError> {
    if !matches!(e.method, Method::Elem | Method::Emel) {
        return Err(SemError::Invalid("loss is defined for the ball methods".into()));
    }
    let routed = abox_to_tbox(kb)?;
    let mut total = Rat::zero();
    for ax in routed.tbox.iter() {
        match ax {
            Axiom::ConceptInclusion { .. } => total += axiom_loss(e, ax, gamma)?,
            // Role axioms carry no quoted loss terms.
            _ => {}
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::parse_kb;
    use crate::rat::{rat, rint};
    use crate::semantics::{ConceptPayload, IndPayload};

    fn witness() -> Embedding {
        let ball = OpenBall::new(RVector::from_ints(&[0, 1]), Ext::zero()).unwrap();
        let mut e = Embedding::new(Method::Elem, 2);
        e.concepts.insert("A".into(), ConceptPayload::Ball(ball.clone()));
        e.individuals.insert("a".into(), IndPayload::Ball(ball));
        e
    }

    #[test]
    fn zero_loss_on_the_unsatisfiable_kb() {
        let kb = parse_kb("Language: ELO-bot-nf\nSubClassOf(A Bot)\nAssert(A a)").unwrap();
        let e = witness();
        assert_eq!(elem_loss(&e, &kb, &rint(0)).unwrap(), rint(0));
    }

    #[test]
    fn negative_margin_activates_the_hinge() {
        let kb = parse_kb("Language: ELO-bot-nf\nSubClassOf(A Bot)\nAssert(A a)").unwrap();
        let e = witness();
        assert_eq!(elem_loss(&e, &kb, &rat(-1, 10)).unwrap(), rat(1, 10));
    }

    #[test]
    fn empty_kb_has_zero_loss() {
        let kb = parse_kb("Language: ELO-bot-nf").unwrap();
        assert_eq!(elem_loss(&witness(), &kb, &rint(0)).unwrap(), rint(0));
    }

    #[test]
    fn equivalent_concepts_cannot_reach_zero_with_negative_margin() {
        // A ≡ B on the unit sphere with equal balls: each inclusion costs −γ.
        let ball = OpenBall::new(RVector::from_ints(&[1, 0]), Ext::Fin(rat(1, 2))).unwrap();
        let mut e = Embedding::new(Method::Elem, 2);
        e.concepts.insert("A".into(), ConceptPayload::Ball(ball.clone()));
        e.concepts.insert("B".into(), ConceptPayload::Ball(ball));
        let kb = parse_kb("Language: ELO-bot-nf\nSubClassOf(A B)\nSubClassOf(B A)").unwrap();
        assert_eq!(elem_loss(&e, &kb, &rint(0)).unwrap(), rint(0));
        assert_eq!(elem_loss(&e, &kb, &rat(-1, 10)).unwrap(), rat(2, 10));
    }
}
