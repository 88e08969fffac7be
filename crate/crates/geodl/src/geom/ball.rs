//! Open balls and the exact containment tests the ball-based semantics use.
//!
//! Balls are open: radius zero denotes the empty set, and the containment
//! formula `‖c_a − c_b‖ + ρ_a <= ρ_b` is the open-ball criterion. The radius
//! `inf` sentinel denotes all of `R^d`. All comparisons reduce to rational
//! sign tests (single square roots are compared by squaring), so every
//! verdict produced here is exact.
//!
//! The two-ball lens test decides `closure(a1 ∩ a2) ⊆ closed(b)`, which for a
//! non-empty open lens coincides with `a1 ∩ a2 ⊆ b` for open `b`: the
//! distance to `c_b` attains its supremum on the boundary of the lens, never
//! at an interior point.

use num_traits::{Signed, Zero};

use crate::rat::{cmp_sqrt, sqrt_le, Ext, Rat};
use crate::semantics::{Exactness, Verdict};

use super::{check_dims, GeomError, RVector};

/// An open ball `{ y : ‖y − center‖ < radius }`; radius `inf` is all of
/// `R^d`, radius `0` is the empty set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OpenBall {
    pub center: RVector,
    pub radius: Ext,
}

impl OpenBall {
    pub fn new(center: RVector, radius: Ext) -> Result<Self, GeomError> {
        match &radius {
            Ext::NegInf => return Err(GeomError::Invalid("negative ball radius".into())),
            Ext::Fin(r) if r.is_negative() => {
                return Err(GeomError::Invalid("negative ball radius".into()))
            }
            _ => {}
        }
        Ok(OpenBall { center, radius })
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.radius == Ext::Fin(Rat::zero())
    }

    pub fn is_full(&self) -> bool {
        self.radius == Ext::PosInf
    }

    pub fn member(&self, p: &RVector) -> Result<bool, GeomError> {
        check_dims(p.dim(), self.dim())?;
        match &self.radius {
            Ext::PosInf => Ok(true),
            Ext::Fin(r) => {
                let d2 = self.center.sq_dist(p)?;
                Ok(cmp_sqrt(&d2, r) == std::cmp::Ordering::Less)
            }
            Ext::NegInf => unreachable!("radius invariant"),
        }
    }
}

/// Translates a ball: `{ x : x + shift in ball }` has centre
/// `center − shift` and the same radius.
pub fn ball_translate(ball: &OpenBall, shift: &RVector) -> Result<OpenBall, GeomError> {
    Ok(OpenBall {
        center: ball.center.sub(shift)?,
        radius: ball.radius.clone(),
    })
}

/// Open-ball containment: true iff `a` is empty, or `b` is full, or
/// `‖c_a − c_b‖ + ρ_a <= ρ_b`.
pub fn ball_subset(a: &OpenBall, b: &OpenBall) -> Result<bool, GeomError> {
    check_dims(a.dim(), b.dim())?;
    if a.is_empty() || b.is_full() {
        return Ok(true);
    }
    if a.is_full() {
        return Ok(false); // b is not full here
    }
    let (ra, rb) = match (&a.radius, &b.radius) {
        (Ext::Fin(ra), Ext::Fin(rb)) => (ra, rb),
        _ => unreachable!("full/empty handled above"),
    };
    // sqrt(d2) <= rb - ra
    let d2 = a.center.sq_dist(&b.center)?;
    Ok(sqrt_le(&d2, &(rb - ra)))
}

/// Whether two open balls have empty intersection.
pub fn lens_empty(a1: &OpenBall, a2: &OpenBall) -> Result<bool, GeomError> {
    check_dims(a1.dim(), a2.dim())?;
    if a1.is_empty() || a2.is_empty() {
        return Ok(true);
    }
    match (&a1.radius, &a2.radius) {
        (Ext::PosInf, _) | (_, Ext::PosInf) => Ok(false),
        (Ext::Fin(r1), Ext::Fin(r2)) => {
            // open balls are disjoint iff ‖c1 − c2‖ >= ρ1 + ρ2
            let d2 = a1.center.sq_dist(&a2.center)?;
            Ok(crate::rat::sqrt_ge(&d2, &(r1 + r2)))
        }
        _ => unreachable!("radius invariant"),
    }
}

pub fn balls_disjoint(a1: &OpenBall, a2: &OpenBall) -> Result<bool, GeomError> {
    lens_empty(a1, a2)
}

/// Compares `sqrt(t2) * k <= c` exactly, for `t2 >= 0`.
fn sqrt_scaled_le(t2: &Rat, k: &Rat, c: &Rat) -> bool {
    // k * sqrt(t2) <= c
    if k.is_zero() {
        return !c.is_negative();
    }
    if k.is_positive() {
        // sqrt(t2) <= c / k
        sqrt_le(t2, &(c / k))
    } else {
        // sqrt(t2) >= c / k, always true when c/k <= 0
        crate::rat::sqrt_ge(t2, &(c / k))
    }
}

/// Decides `closure(a1 ∩ a2) ⊆ closed(b)` by exact candidate analysis.
///
/// For a non-empty open lens this coincides with open-in-open containment.
/// The supremum of the distance to `c_b` over the lens closure is attained
/// at the far point of one of the two bounding spheres (when that point lies
/// in the other closed ball) or on the rim where the spheres meet; each
/// candidate condition reduces to a rational sign test, so the verdict is
/// always exact.
pub fn lens_subset_ball(a1: &OpenBall, a2: &OpenBall, b: &OpenBall) -> Result<Verdict, GeomError> {
    check_dims(a1.dim(), a2.dim())?;
    check_dims(a1.dim(), b.dim())?;
    let exact = |value: bool| Verdict {
        value,
        exactness: Exactness::Exact,
    };
    if lens_empty(a1, a2)? {
        return Ok(exact(true));
    }
    if b.is_full() {
        return Ok(exact(true));
    }
    // Lens is a non-empty open set, b is a finite ball.
    let rb = b.radius.as_fin().expect("finite radius").clone();
    match (&a1.radius, &a2.radius) {
        (Ext::PosInf, Ext::PosInf) => Ok(exact(false)),
        (Ext::PosInf, Ext::Fin(r2)) => {
            let d2 = a2.center.sq_dist(&b.center)?;
            Ok(exact(sqrt_le(&d2, &(&rb - r2))))
        }
        (Ext::Fin(r1), Ext::PosInf) => {
            let d2 = a1.center.sq_dist(&b.center)?;
            Ok(exact(sqrt_le(&d2, &(&rb - r1))))
        }
        (Ext::Fin(r1), Ext::Fin(r2)) => {
            let value = lens_subset_finite(&a1.center, r1, &a2.center, r2, &b.center, &rb)?;
            Ok(exact(value))
        }
        _ => unreachable!("radius invariant"),
    }
}

fn lens_subset_finite(
    c1: &RVector,
    r1: &Rat,
    c2: &RVector,
    r2: &Rat,
    cb: &RVector,
    rb: &Rat,
) -> Result<bool, GeomError> {
    let s2 = c1.sq_dist(c2)?;
    if s2.is_zero() {
        // Concentric: the lens is the smaller ball.
        let rmin = if r1 <= r2 { r1 } else { r2 };
        let d2 = c1.sq_dist(cb)?;
        return Ok(sqrt_le(&d2, &(rb - rmin)));
    }
    if c1.dim() == 1 {
        // Interval algebra: the lens is (max of left ends, min of right ends).
        let lo = Ord::max(c1.get(0) - r1, c2.get(0) - r2);
        let hi = Ord::min(c1.get(0) + r1, c2.get(0) + r2);
        let sup = Ord::max((&lo - cb.get(0)).abs(), (&hi - cb.get(0)).abs());
        return Ok(&sup <= rb);
    }

    let mut all_pass = true;

    // Candidate: far point of sphere(c1, r1) as seen from cb, when it lies
    // in the closed second ball.
    all_pass &= far_point_candidate(c1, r1, c2, r2, cb, rb)?;
    // Symmetric candidate on the second sphere.
    all_pass &= far_point_candidate(c2, r2, c1, r1, cb, rb)?;

    // Rim candidate: the (d-2)-sphere where the two spheres meet.
    // Parametrise the rim centre as q = c1 + t (c2 - c1).
    let t = (&s2 + r1 * r1 - r2 * r2) / (crate::rat::rint(2) * &s2);
    let rim_sq = r1 * r1 - &t * &t * &s2;
    if !rim_sq.is_negative() {
        let axis = c2.sub(c1)?;
        let q = c1.add(&axis.scale(&t))?;
        let delta = cb.sub(&q)?;
        let along = delta.dot(&axis)?; // component * ‖axis‖
        let axial_sq = &along * &along / &s2;
        let w_sq = delta.sq_norm() - &axial_sq;
        // max over rim of ‖x − cb‖² = w² + rim² + axial² + 2 sqrt(w² rim²)
        let base = &w_sq + &rim_sq + &axial_sq;
        let margin = rb * rb - base;
        // 2 sqrt(w_sq * rim_sq) <= margin
        let prod = &w_sq * &rim_sq;
        let ok = if margin.is_negative() {
            false
        } else {
            crate::rat::rint(4) * prod <= &margin * &margin
        };
        all_pass &= ok;
    }
    Ok(all_pass)
}

/// Checks the far-point candidate of `sphere(c1, r1)`: if the point of that
/// sphere farthest from `cb` lies in the closed ball `(c2, r2)`, it is a
/// supremum candidate and must satisfy `‖c1 − cb‖ + r1 <= rb`.
fn far_point_candidate(
    c1: &RVector,
    r1: &Rat,
    c2: &RVector,
    r2: &Rat,
    cb: &RVector,
    rb: &Rat,
) -> Result<bool, GeomError> {
    let t2 = c1.sq_dist(cb)?;
    let applicable = if t2.is_zero() {
        // Every sphere point is equidistant; the candidate applies iff the
        // sphere meets the closed second ball: |s − r1| <= r2 with
        // s = ‖c1 − c2‖, i.e. s² − 2 r1 s + r1² − r2² <= 0.
        let s2 = c1.sq_dist(c2)?;
        let c = &s2 + r1 * r1 - r2 * r2;
        // -2 r1 sqrt(s2) <= -c  ⇔  sqrt(s2)*(−2 r1) <= −c
        sqrt_scaled_le(&s2, &(crate::rat::rint(-2) * r1), &-c)
    } else {
        // p = c1 + r1 (c1 − cb)/t; p in closed (c2, r2) iff
        // ‖c1 − c2‖² + 2 (r1/t) <c1−c2, c1−cb> + r1² <= r2²
        // ⇔ 2 r1 <c1−c2, c1−cb> <= (r2² − r1² − ‖c1−c2‖²) t
        let u = c1.sub(c2)?;
        let v = c1.sub(cb)?;
        let lhs = crate::rat::rint(2) * r1 * u.dot(&v)?;
        let k = r2 * r2 - r1 * r1 - u.sq_norm();
        // lhs <= k * sqrt(t2)  ⇔  -k * sqrt(t2) <= -lhs
        sqrt_scaled_le(&t2, &-k, &-lhs)
    };
    if !applicable {
        return Ok(true);
    }
    // sup candidate value: sqrt(t2) + r1 <= rb
    Ok(sqrt_le(&t2, &(rb - r1)))
}
