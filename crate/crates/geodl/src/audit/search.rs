//! Randomized model search: hinge losses derived from each satisfaction
//! rule, minimized by seeded hill climbing, then rationalized and verified
//! exactly.
//!
//! The numeric layer is only ever a proposal generator: a candidate counts
//! as a model only after the exact checker accepts it, and a failed search
//! is reported as budget exhaustion, never as impossibility. Axioms the
//! method must satisfy contribute `max(0, margin + slack)` with a small
//! positive slack so boundary cases survive rationalization; axioms that
//! must be falsified contribute the reversed hinge.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::Config;
use crate::geom::{
    AffineDiagMap, BandStack, BoxRegion, HPolyhedron, LinearConstraint, OpenBall, RVector, Rel,
};
use crate::kb::{abox_to_tbox, Axiom, Concept, KnowledgeBase, Pattern, PatternKind};
use crate::rat::{rat_from_f64, Ext, Rat};
use crate::semantics::{ConceptPayload, Embedding, IndPayload, Method, RolePayload};

use super::AuditError;

const SLACK: f64 = 1e-3;
const DENOM_POW2: u32 = 12;

/// Snap threshold under which size-like parameters (radii, offsets, widths,
/// diagonal entries) rationalize to exact zero.
const ZERO_SNAP: f64 = 2.5e-3;

/// Margin credit for conditions of the form "this radius/offset is zero":
/// a wide funnel towards zero, satisfied once the size is inside the snap
/// threshold (rationalization then makes it exactly zero).
fn zero_credit(size: f64) -> f64 {
    SLACK + ZERO_SNAP - size
}

/// Size-like parameters snap to exact zero below the threshold.
fn snap_size(x: f64) -> f64 {
    let a = x.abs();
    if a <= ZERO_SNAP {
        0.0
    } else {
        a
    }
}

/// A numeric embedding candidate: per symbol, a flat parameter block.
#[derive(Debug, Clone)]
struct Params {
    values: Vec<f64>,
}

#[derive(Debug, Clone)]
struct Layout {
    dim: usize,
    method: Method,
    concepts: Vec<String>,
    individuals: Vec<String>,
    roles: Vec<String>,
    per_concept: usize,
    per_individual: usize,
    per_role: usize,
}

impl Layout {
    fn new(method: Method, dim: usize, kb: &KnowledgeBase) -> Layout {
        let per_concept = match method {
            Method::Elem | Method::Emel => dim + 1,      // centre, radius
            Method::Elbe | Method::Boxel | Method::Boxe => 2 * dim, // centre, offset
            Method::Box2el => 3 * dim,                   // centre, offset, bump
            Method::Conv => 2 * dim,                     // box corners (a convex sub-family)
            Method::Cone | Method::Expr => 0,
        };
        let per_individual = match method {
            Method::Elem | Method::Emel => dim + 1,
            Method::Elbe => 2 * dim,
            Method::Boxel | Method::Conv | Method::Expr => dim,
            Method::Box2el | Method::Boxe => 2 * dim, // point/base, bump
            Method::Cone => dim,
        };
        let per_role = match method {
            Method::Elem | Method::Emel | Method::Elbe => dim,
            Method::Boxel => 2 * dim,                    // diag, offset
            Method::Box2el => 4 * dim,                   // head c/o, tail c/o
            Method::Boxe => 4 * dim,                     // two boxes c/o
            Method::Expr => 3 * dim,                     // slope, centre, width
            Method::Conv => 4 * dim,                     // box in the doubled space
            Method::Cone => 0,
        };
        Layout {
            dim,
            method,
            concepts: kb.signature.concepts.clone(),
            individuals: kb.signature.individuals.clone(),
            roles: kb.signature.roles.clone(),
            per_concept,
            per_individual,
            per_role,
        }
    }

    fn len(&self) -> usize {
        self.concepts.len() * self.per_concept
            + self.individuals.len() * self.per_individual
            + self.roles.len() * self.per_role
    }

    fn concept_block<'a>(&self, p: &'a Params, name: &str) -> &'a [f64] {
        let i = self.concepts.iter().position(|c| c == name).expect("concept");
        let start = i * self.per_concept;
        &p.values[start..start + self.per_concept]
    }

    fn individual_block<'a>(&self, p: &'a Params, name: &str) -> &'a [f64] {
        let i = self.individuals.iter().position(|c| c == name).expect("individual");
        let start = self.concepts.len() * self.per_concept + i * self.per_individual;
        &p.values[start..start + self.per_individual]
    }

    fn role_block<'a>(&self, p: &'a Params, name: &str) -> &'a [f64] {
        let i = self.roles.iter().position(|c| c == name).expect("role");
        let start = self.concepts.len() * self.per_concept
            + self.individuals.len() * self.per_individual
            + i * self.per_role;
        &p.values[start..start + self.per_role]
    }
}

// -- numeric margins ---------------------------------------------------------
//
// margin(ax) > 0 means comfortably satisfied, < 0 violated; hinge losses are
// built from margins.

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

struct NumericEval<'a> {
    layout: &'a Layout,
}

impl<'a> NumericEval<'a> {
    /// Ball view of a concept/nominal with role translations applied.
    fn ball(&self, p: &Params, c: &Concept) -> Option<(Vec<f64>, f64)> {
        match c {
            Concept::Name(n) => {
                let b = self.layout.concept_block(p, n);
                Some((b[..self.layout.dim].to_vec(), b[self.layout.dim].abs()))
            }
            Concept::Nominal(a) => {
                let b = self.layout.individual_block(p, a);
                Some((b[..self.layout.dim].to_vec(), b[self.layout.dim].abs()))
            }
            Concept::Exists(r, f) if !r.inverse => {
                let (mut c0, rad) = self.ball(p, f)?;
                let shift = self.layout.role_block(p, &r.name);
                for i in 0..self.layout.dim {
                    c0[i] -= shift[i];
                }
                Some((c0, rad))
            }
            _ => None,
        }
    }

    /// Box view `(lower, upper)` for the box methods.
    fn boxv(&self, p: &Params, c: &Concept, bump_slot: usize) -> Option<(Vec<f64>, Vec<f64>)> {
        let d = self.layout.dim;
        let from_co = |block: &[f64]| -> (Vec<f64>, Vec<f64>) {
            let mut lo = Vec::with_capacity(d);
            let mut hi = Vec::with_capacity(d);
            for i in 0..d {
                let c = block[i];
                let o = block[d + i].abs();
                lo.push(c - o);
                hi.push(c + o);
            }
            (lo, hi)
        };
        match c {
            Concept::Top => Some((vec![-1e9; d], vec![1e9; d])),
            Concept::Name(n) => {
                let b = self.layout.concept_block(p, n);
                Some(from_co(&b[bump_slot..]))
            }
            Concept::Nominal(a) => {
                let b = self.layout.individual_block(p, a);
                match self.layout.method {
                    Method::Elbe => Some(from_co(b)),
                    // point boxes for the bump methods
                    _ => Some((b[..d].to_vec(), b[..d].to_vec())),
                }
            }
            _ => None,
        }
    }

    fn bump(&self, p: &Params, c: &Concept) -> Option<Vec<f64>> {
        let d = self.layout.dim;
        match c {
            Concept::Top => Some(vec![0.0; d]),
            Concept::Name(n) => Some(self.layout.concept_block(p, n)[..d].to_vec()),
            Concept::Nominal(a) => {
                let b = self.layout.individual_block(p, a);
                Some(b[d..2 * d].to_vec())
            }
            _ => None,
        }
    }
}

fn box_contain_margin(inner: &(Vec<f64>, Vec<f64>), outer: &(Vec<f64>, Vec<f64>)) -> f64 {
    // positive when inner fits strictly inside outer (or inner is empty)
    let empty_margin = inner
        .0
        .iter()
        .zip(&inner.1)
        .map(|(l, u)| l - u)
        .fold(f64::NEG_INFINITY, f64::max);
    let fit = inner
        .0
        .iter()
        .zip(&inner.1)
        .zip(outer.0.iter().zip(&outer.1))
        .map(|((il, iu), (ol, ou))| f64::min(il - ol, ou - iu))
        .fold(f64::INFINITY, f64::min);
    f64::max(empty_margin, fit)
}

fn box_intersect(a: &(Vec<f64>, Vec<f64>), b: &(Vec<f64>, Vec<f64>)) -> (Vec<f64>, Vec<f64>) {
    let lo = a.0.iter().zip(&b.0).map(|(x, y)| x.max(*y)).collect();
    let hi = a.1.iter().zip(&b.1).map(|(x, y)| x.min(*y)).collect();
    (lo, hi)
}

fn box_empty_margin(b: &(Vec<f64>, Vec<f64>)) -> f64 {
    // positive when empty
    b.0.iter().zip(&b.1).map(|(l, u)| l - u).fold(f64::NEG_INFINITY, f64::max)
}

fn box_translate(b: &(Vec<f64>, Vec<f64>), v: &[f64], sign: f64) -> (Vec<f64>, Vec<f64>) {
    (
        b.0.iter().zip(v).map(|(x, t)| x + sign * t).collect(),
        b.1.iter().zip(v).map(|(x, t)| x + sign * t).collect(),
    )
}

/// Signed satisfaction margin of an axiom; `None` when the numeric twin does
/// not model the combination (those axioms fall back to exact checking only).
fn margin(layout: &Layout, p: &Params, ax: &Axiom) -> Option<f64> {
    let d = layout.dim;
    let ev = NumericEval { layout };
    match layout.method {
        Method::Elem | Method::Emel => match ax {
            Axiom::ConceptInclusion { lhs, rhs, .. } => match (lhs, rhs) {
                (Concept::And(a1, a2), Concept::Bot) => {
                    let (c1, r1) = ev.ball(p, a1)?;
                    let (c2, r2) = ev.ball(p, a2)?;
                    // disjoint when the gap closes, or either ball is empty
                    Some((dist(&c1, &c2) - r1 - r2)
                        .max(zero_credit(r1))
                        .max(zero_credit(r2)))
                }
                (c, Concept::Bot) => {
                    let (_, r) = ev.ball(p, c)?;
                    Some(zero_credit(r))
                }
                (_, Concept::Top) => Some(1.0),
                (Concept::And(a1, a2), dcon) => {
                    let (c1, r1) = ev.ball(p, a1)?;
                    let (c2, r2) = ev.ball(p, a2)?;
                    let (cd, rd) = ev.ball(p, dcon)?;
                    // treat the lens roughly as the smaller ball around the
                    // overlap midpoint: conservative but smooth enough
                    let gap = dist(&c1, &c2);
                    if gap >= r1 + r2 {
                        return Some(1.0); // empty lens
                    }
                    let m1 = rd - dist(&c1, &cd) - r1;
                    let m2 = rd - dist(&c2, &cd) - r2;
                    Some(m1.max(m2).max(zero_credit(r1)).max(zero_credit(r2)))
                }
                (c, dcon) => {
                    let (ca, ra) = ev.ball(p, c)?;
                    let (cb, rb) = ev.ball(p, dcon)?;
                    Some(f64::max(zero_credit(ra), rb - ra - dist(&ca, &cb)))
                }
            },
            Axiom::RoleInclusion { sub, sup } => {
                let a = layout.role_block(p, &sub.name);
                let b = layout.role_block(p, &sup.name);
                Some(zero_credit(dist(a, b)))
            }
            Axiom::RoleComposition { first, second, sup } => {
                let a = layout.role_block(p, first);
                let b = layout.role_block(p, second);
                let c = layout.role_block(p, sup);
                let sum: Vec<f64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                Some(zero_credit(dist(&sum, c)))
            }
            _ => None,
        },
        Method::Elbe | Method::Boxel | Method::Box2el | Method::Boxe => {
            margin_boxes(layout, p, ax, d, &ev)
        }
        Method::Expr => margin_expr(layout, p, ax, d),
        Method::Conv => margin_conv(layout, p, ax, d),
        Method::Cone => None,
    }
}

/// Margins for the box-shaped sub-family of convex embeddings: concept boxes
/// in `R^d`, role boxes in `R^{2d}`. Existential sides are out of scope for
/// the numeric twin (the exact construction handles them).
fn margin_conv(layout: &Layout, p: &Params, ax: &Axiom, d: usize) -> Option<f64> {
    let concept_box = |name: &str| -> (Vec<f64>, Vec<f64>) {
        let b = layout.concept_block(p, name);
        let mut lo = Vec::with_capacity(d);
        let mut hi = Vec::with_capacity(d);
        for i in 0..d {
            lo.push(b[i] - b[d + i].abs());
            hi.push(b[i] + b[d + i].abs());
        }
        (lo, hi)
    };
    let role_box = |name: &str| -> (Vec<f64>, Vec<f64>) {
        let b = layout.role_block(p, name);
        let mut lo = Vec::with_capacity(2 * d);
        let mut hi = Vec::with_capacity(2 * d);
        for i in 0..2 * d {
            lo.push(b[i] - b[2 * d + i].abs());
            hi.push(b[i] + b[2 * d + i].abs());
        }
        (lo, hi)
    };
    let side = |c: &Concept| -> Option<(Vec<f64>, Vec<f64>)> {
        match c {
            Concept::Top => Some((vec![-1e9; d], vec![1e9; d])),
            Concept::Name(n) => Some(concept_box(n)),
            Concept::And(x, y) => {
                let a = match x.as_ref() {
                    Concept::Name(n) => concept_box(n),
                    Concept::Top => (vec![-1e9; d], vec![1e9; d]),
                    _ => return None,
                };
                let b = match y.as_ref() {
                    Concept::Name(n) => concept_box(n),
                    Concept::Top => (vec![-1e9; d], vec![1e9; d]),
                    _ => return None,
                };
                Some(box_intersect(&a, &b))
            }
            _ => None,
        }
    };
    let point_in = |pt: &[f64], b: &(Vec<f64>, Vec<f64>)| -> f64 {
        pt.iter()
            .enumerate()
            .map(|(i, &x)| f64::min(x - b.0[i], b.1[i] - x))
            .fold(f64::INFINITY, f64::min)
    };
    match ax {
        Axiom::ConceptInclusion { lhs, rhs, .. } => {
            let inner = side(lhs)?;
            match rhs {
                Concept::Bot => Some(box_empty_margin(&inner)),
                Concept::Top => Some(1.0),
                _ => Some(box_contain_margin(&inner, &side(rhs)?)),
            }
        }
        Axiom::ConceptAssertion { concept, individual } => {
            let pt = layout.individual_block(p, individual);
            Some(point_in(pt, &concept_box(concept)))
        }
        Axiom::RoleAssertion { role, subject, object } => {
            let mut pt = layout.individual_block(p, subject).to_vec();
            pt.extend_from_slice(layout.individual_block(p, object));
            Some(point_in(&pt, &role_box(role)))
        }
        Axiom::RoleInclusion { sub, sup } if !sub.inverse && !sup.inverse => {
            Some(box_contain_margin(&role_box(&sub.name), &role_box(&sup.name)))
        }
        Axiom::Pattern(Pattern { kind: PatternKind::Exclusion, roles }) => {
            Some(box_empty_margin(&box_intersect(&role_box(&roles[0]), &role_box(&roles[1]))))
        }
        _ => None,
    }
}

fn margin_boxes(
    layout: &Layout,
    p: &Params,
    ax: &Axiom,
    d: usize,
    ev: &NumericEval,
) -> Option<f64> {
    let bump_slot = if layout.method == Method::Box2el { d } else { 0 };
    let boxv = |c: &Concept| ev.boxv(p, c, bump_slot);
    match (layout.method, ax) {
        (Method::Elbe, Axiom::ConceptInclusion { lhs, rhs, .. }) => match (lhs, rhs) {
            (Concept::And(a1, a2), Concept::Bot) => {
                Some(box_empty_margin(&box_intersect(&boxv(a1)?, &boxv(a2)?)))
            }
            (c, Concept::Bot) => {
                // offset must vanish
                let base = match c {
                    Concept::Exists(_, f) => f.as_ref(),
                    other => other,
                };
                let (lo, hi) = boxv(base)?;
                let spread = lo.iter().zip(&hi).map(|(l, u)| (u - l).abs()).fold(0.0, f64::max);
                Some(zero_credit(spread))
            }
            (_, Concept::Top) => Some(1.0),
            (c, dcon) => {
                let inner = elbe_side(ev, p, c, layout)?;
                let outer = elbe_side(ev, p, dcon, layout)?;
                Some(box_contain_margin(&inner, &outer))
            }
        },
        (Method::Boxel, Axiom::ConceptInclusion { lhs, rhs, .. }) => {
            let inner = boxel_side(ev, p, lhs, layout)?;
            match rhs {
                Concept::Bot => Some(box_empty_margin(&inner)),
                Concept::Top => Some(1.0),
                _ => {
                    let outer = boxel_side(ev, p, rhs, layout)?;
                    Some(box_contain_margin(&inner, &outer))
                }
            }
        }
        (Method::Boxel, Axiom::ConceptAssertion { concept, individual }) => {
            let pnt = layout.individual_block(p, individual);
            let (lo, hi) = boxv(&Concept::name(concept))?;
            Some(
                (0..d)
                    .map(|i| f64::min(pnt[i] - lo[i], hi[i] - pnt[i]))
                    .fold(f64::INFINITY, f64::min),
            )
        }
        (Method::Boxel, Axiom::RoleAssertion { role, subject, object }) => {
            let t = layout.role_block(p, role);
            let a = layout.individual_block(p, subject);
            let b = layout.individual_block(p, object);
            let image: Vec<f64> = (0..d).map(|i| t[i].abs() * a[i] + t[d + i]).collect();
            Some(zero_credit(dist(&image, b)))
        }
        (Method::Box2el, ax) => margin_box2el(layout, p, ax, d, ev),
        (Method::Boxe, ax) => margin_boxe(layout, p, ax, d, ev),
        _ => None,
    }
}

/// Translated-box side: applies `− E(r)` translations and intersections.
fn elbe_side(
    ev: &NumericEval,
    p: &Params,
    c: &Concept,
    layout: &Layout,
) -> Option<(Vec<f64>, Vec<f64>)> {
    match c {
        Concept::And(x, y) => Some(box_intersect(
            &elbe_side(ev, p, x, layout)?,
            &elbe_side(ev, p, y, layout)?,
        )),
        Concept::Exists(r, f) if !r.inverse => {
            let base = elbe_side(ev, p, f, layout)?;
            Some(box_translate(&base, layout.role_block(p, &r.name), -1.0))
        }
        other => ev.boxv(p, other, 0),
    }
}

/// Affine-box side: preimages under the diagonal map.
fn boxel_side(
    ev: &NumericEval,
    p: &Params,
    c: &Concept,
    layout: &Layout,
) -> Option<(Vec<f64>, Vec<f64>)> {
    let d = layout.dim;
    match c {
        Concept::And(x, y) => Some(box_intersect(
            &boxel_side(ev, p, x, layout)?,
            &boxel_side(ev, p, y, layout)?,
        )),
        Concept::Nominal(a) => {
            let b = layout.individual_block(p, a);
            Some((b[..d].to_vec(), b[..d].to_vec()))
        }
        Concept::Exists(r, f) if !r.inverse => {
            let (lo, hi) = boxel_side(ev, p, f, layout)?;
            let t = layout.role_block(p, &r.name);
            let mut plo = Vec::with_capacity(d);
            let mut phi = Vec::with_capacity(d);
            for i in 0..d {
                let diag = t[i].abs().max(1e-6);
                plo.push((lo[i] - t[d + i]) / diag);
                phi.push((hi[i] - t[d + i]) / diag);
            }
            Some((plo, phi))
        }
        other => ev.boxv(p, other, 0),
    }
}

fn margin_box2el(layout: &Layout, p: &Params, ax: &Axiom, d: usize, ev: &NumericEval) -> Option<f64> {
    let head_tail = |name: &str| -> ((Vec<f64>, Vec<f64>), (Vec<f64>, Vec<f64>)) {
        let b = layout.role_block(p, name);
        let co = |off: usize| -> (Vec<f64>, Vec<f64>) {
            let mut lo = Vec::with_capacity(d);
            let mut hi = Vec::with_capacity(d);
            for i in 0..d {
                let c = b[off + i];
                let o = b[off + d + i].abs();
                lo.push(c - o);
                hi.push(c + o);
            }
            (lo, hi)
        };
        (co(0), co(2 * d))
    };
    let boxv = |c: &Concept| ev.boxv(p, c, d);
    match ax {
        Axiom::RoleInclusion { sub, sup } => {
            let (h1, t1) = head_tail(&sub.name);
            let (h2, t2) = head_tail(&sup.name);
            Some(f64::min(
                box_contain_margin(&h1, &h2),
                box_contain_margin(&t1, &t2),
            ))
        }
        Axiom::RoleComposition { first, second, sup } => {
            let (h1, _) = head_tail(first);
            let (_, t2) = head_tail(second);
            let (hs, ts) = head_tail(sup);
            Some(f64::min(
                box_contain_margin(&h1, &hs),
                box_contain_margin(&t2, &ts),
            ))
        }
        Axiom::ConceptInclusion { lhs, rhs, .. } => match (lhs, rhs) {
            (Concept::And(a1, a2), Concept::Bot) => {
                Some(box_empty_margin(&box_intersect(&boxv(a1)?, &boxv(a2)?)))
            }
            (Concept::Exists(r, f), Concept::Bot) if !r.inverse => {
                let (head, _) = head_tail(&r.name);
                let shifted = box_translate(&head, &ev.bump(p, f)?, -1.0);
                Some(box_empty_margin(&shifted))
            }
            (c, Concept::Bot) => Some(box_empty_margin(&boxv(c)?)),
            (_, Concept::Top) => Some(1.0),
            (Concept::And(a1, a2), dcon) => Some(box_contain_margin(
                &box_intersect(&boxv(a1)?, &boxv(a2)?),
                &boxv(dcon)?,
            )),
            (c, Concept::Exists(r, f)) if !r.inverse => {
                let (head, tail) = head_tail(&r.name);
                let bc = boxv(c)?;
                let bf = boxv(f)?;
                let head_ok = box_contain_margin(&box_translate(&bc, &ev.bump(p, f)?, 1.0), &head);
                let tail_ok = box_contain_margin(&box_translate(&bf, &ev.bump(p, c)?, 1.0), &tail);
                let guard = f64::max(-box_empty_margin(&bf), box_empty_margin(&bc));
                Some(head_ok.min(tail_ok).min(guard))
            }
            (Concept::Exists(r, f), dcon) if !r.inverse => {
                let (head, _) = head_tail(&r.name);
                let shifted = box_translate(&head, &ev.bump(p, f)?, -1.0);
                Some(box_contain_margin(&shifted, &boxv(dcon)?))
            }
            (c, dcon) => Some(box_contain_margin(&boxv(c)?, &boxv(dcon)?)),
        },
        _ => None,
    }
}

fn margin_boxe(layout: &Layout, p: &Params, ax: &Axiom, d: usize, ev: &NumericEval) -> Option<f64> {
    let pair = |name: &str| -> ((Vec<f64>, Vec<f64>), (Vec<f64>, Vec<f64>)) {
        let b = layout.role_block(p, name);
        let co = |off: usize| -> (Vec<f64>, Vec<f64>) {
            let mut lo = Vec::with_capacity(d);
            let mut hi = Vec::with_capacity(d);
            for i in 0..d {
                let c = b[off + i];
                let o = b[off + d + i].abs();
                lo.push(c - o);
                hi.push(c + o);
            }
            (lo, hi)
        };
        (co(0), co(2 * d))
    };
    let point_in = |pt: &[f64], b: &(Vec<f64>, Vec<f64>)| -> f64 {
        (0..d)
            .map(|i| f64::min(pt[i] - b.0[i], b.1[i] - pt[i]))
            .fold(f64::INFINITY, f64::min)
    };
    let box_disjoint = |a: &(Vec<f64>, Vec<f64>), b: &(Vec<f64>, Vec<f64>)| -> f64 {
        box_empty_margin(&box_intersect(a, b))
    };
    match ax {
        Axiom::ConceptAssertion { concept, individual } => {
            let base = &layout.individual_block(p, individual)[..d];
            let bx = ev.boxv(p, &Concept::name(concept), 0)?;
            Some(point_in(base, &bx))
        }
        Axiom::RoleAssertion { role, subject, object } => {
            let (r1, r2) = pair(role);
            let s = layout.individual_block(p, subject);
            let o = layout.individual_block(p, object);
            let first: Vec<f64> = (0..d).map(|i| s[i] + o[d + i]).collect();
            let second: Vec<f64> = (0..d).map(|i| o[i] + s[d + i]).collect();
            Some(f64::min(point_in(&first, &r1), point_in(&second, &r2)))
        }
        Axiom::Pattern(pat) => {
            let eq = |a: &(Vec<f64>, Vec<f64>), b: &(Vec<f64>, Vec<f64>)| -> f64 {
                let e1: f64 = a.0.iter().zip(&b.0).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                let e2: f64 = a.1.iter().zip(&b.1).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                zero_credit(e1.max(e2))
            };
            match pat.kind {
                PatternKind::Symmetry => {
                    let (r1, r2) = pair(&pat.roles[0]);
                    Some(eq(&r1, &r2))
                }
                PatternKind::Inversion => {
                    let (r1, r2) = pair(&pat.roles[0]);
                    let (s1, s2) = pair(&pat.roles[1]);
                    Some(f64::min(eq(&r1, &s2), eq(&r2, &s1)))
                }
                PatternKind::Hierarchy => {
                    let (r1, r2) = pair(&pat.roles[0]);
                    let (s1, s2) = pair(&pat.roles[1]);
                    Some(f64::min(box_contain_margin(&r1, &s1), box_contain_margin(&r2, &s2)))
                }
                PatternKind::Intersection => {
                    let (r1, r2) = pair(&pat.roles[0]);
                    let (s1, s2) = pair(&pat.roles[1]);
                    let (t1, t2) = pair(&pat.roles[2]);
                    Some(f64::min(
                        box_contain_margin(&box_intersect(&r1, &s1), &t1),
                        box_contain_margin(&box_intersect(&r2, &s2), &t2),
                    ))
                }
                PatternKind::Exclusion => {
                    let (r1, r2) = pair(&pat.roles[0]);
                    let (s1, s2) = pair(&pat.roles[1]);
                    Some(f64::max(box_disjoint(&r1, &s1), box_disjoint(&r2, &s2)))
                }
                PatternKind::Asymmetry => {
                    let (r1, r2) = pair(&pat.roles[0]);
                    Some(box_disjoint(&r1, &r2))
                }
                PatternKind::Composition => None,
            }
        }
        _ => None,
    }
}

fn margin_expr(layout: &Layout, p: &Params, ax: &Axiom, d: usize) -> Option<f64> {
    // band parameters: slope s, centre c, width |w| per dimension
    let band = |name: &str| -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let b = layout.role_block(p, name);
        (
            b[..d].to_vec(),
            b[d..2 * d].to_vec(),
            b[2 * d..3 * d].iter().map(|w| w.abs()).collect(),
        )
    };
    match ax {
        Axiom::RoleAssertion { role, subject, object } => {
            let (s, c, w) = band(role);
            let u = layout.individual_block(p, subject);
            let v = layout.individual_block(p, object);
            Some(
                (0..d)
                    .map(|i| w[i] - (u[i] - s[i] * v[i] - c[i]).abs())
                    .fold(f64::INFINITY, f64::min),
            )
        }
        Axiom::Pattern(pat) => {
            // mirror of (s, c, w) is (1/s, -c/s, w/|s|) for s != 0
            let mirror = |(s, c, w): (Vec<f64>, Vec<f64>, Vec<f64>)| -> Option<(Vec<f64>, Vec<f64>, Vec<f64>)> {
                let mut ms = Vec::with_capacity(d);
                let mut mc = Vec::with_capacity(d);
                let mut mw = Vec::with_capacity(d);
                for i in 0..d {
                    if s[i].abs() < 1e-9 {
                        return None;
                    }
                    ms.push(1.0 / s[i]);
                    mc.push(-c[i] / s[i]);
                    mw.push(w[i] / s[i].abs());
                }
                Some((ms, mc, mw))
            };
            let contain = |a: &(Vec<f64>, Vec<f64>, Vec<f64>), b: &(Vec<f64>, Vec<f64>, Vec<f64>)| -> f64 {
                // band containment needs equal slopes; penalize slope gaps
                (0..d)
                    .map(|i| {
                        let slope_gap = (a.0[i] - b.0[i]).abs();
                        (b.2[i] - a.2[i] - (a.1[i] - b.1[i]).abs()) - 10.0 * slope_gap
                    })
                    .fold(f64::INFINITY, f64::min)
            };
            let disjoint = |a: &(Vec<f64>, Vec<f64>, Vec<f64>), b: &(Vec<f64>, Vec<f64>, Vec<f64>)| -> f64 {
                // parallel bands with a gap; intersecting slopes always meet
                (0..d)
                    .map(|i| {
                        let slope_gap = (a.0[i] - b.0[i]).abs();
                        ((a.1[i] - b.1[i]).abs() - a.2[i] - b.2[i]) - 10.0 * slope_gap
                    })
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            match pat.kind {
                PatternKind::Symmetry => {
                    // funnel towards slope one and centre zero; the repair
                    // step then makes the band exactly self-mirrored
                    let (s, c, _) = band(&pat.roles[0]);
                    let err = (0..d)
                        .map(|i| f64::max((s[i] - 1.0).abs(), c[i].abs()))
                        .fold(0.0, f64::max);
                    Some(zero_credit(err))
                }
                PatternKind::Inversion => {
                    let b = band(&pat.roles[0]);
                    let m = mirror(band(&pat.roles[1]))?;
                    let err = (0..d)
                        .map(|i| {
                            (b.0[i] - m.0[i])
                                .abs()
                                .max((b.1[i] - m.1[i]).abs())
                                .max((b.2[i] - m.2[i]).abs())
                        })
                        .fold(0.0, f64::max);
                    Some(zero_credit(err))
                }
                PatternKind::Hierarchy => Some(contain(&band(&pat.roles[0]), &band(&pat.roles[1]))),
                PatternKind::Exclusion => Some(disjoint(&band(&pat.roles[0]), &band(&pat.roles[1]))),
                PatternKind::Asymmetry => {
                    let b = band(&pat.roles[0]);
                    let m = mirror(b.clone())?;
                    Some(disjoint(&b, &m))
                }
                PatternKind::Composition => {
                    let (s1, c1, w1) = band(&pat.roles[0]);
                    let (s2, c2, w2) = band(&pat.roles[1]);
                    let composed = (
                        (0..d).map(|i| s1[i] * s2[i]).collect::<Vec<_>>(),
                        (0..d).map(|i| c1[i] + s1[i] * c2[i]).collect::<Vec<_>>(),
                        (0..d).map(|i| w1[i] + s1[i].abs() * w2[i]).collect::<Vec<_>>(),
                    );
                    Some(contain(&composed, &band(&pat.roles[2])))
                }
                PatternKind::Intersection => None,
            }
        }
        _ => None,
    }
}

// -- loss, climbing, rationalization ----------------------------------------

/// Axioms the search must satisfy and axioms it must falsify.
pub struct SearchGoal<'a> {
    pub kb: &'a KnowledgeBase,
    pub falsify: &'a [Axiom],
}

/// Ties equality-constrained parameters to their defining blocks, mirroring
/// the exact repair step: margins are then computed on the tied values, so
/// the numeric picture and the rationalized embedding agree on equalities.
fn tie_params(layout: &Layout, p: &mut Params, kb: &KnowledgeBase) {
    let d = layout.dim;
    let role_start = |layout: &Layout, name: &str| -> Option<usize> {
        let i = layout.roles.iter().position(|c| c == name)?;
        Some(
            layout.concepts.len() * layout.per_concept
                + layout.individuals.len() * layout.per_individual
                + i * layout.per_role,
        )
    };
    let ind_start = |layout: &Layout, name: &str| -> Option<usize> {
        let i = layout.individuals.iter().position(|c| c == name)?;
        Some(layout.concepts.len() * layout.per_concept + i * layout.per_individual)
    };
    for _ in 0..3 {
        for ax in kb.axioms() {
            match (layout.method, ax) {
                (Method::Boxe, Axiom::Pattern(pat)) => match pat.kind {
                    PatternKind::Symmetry => {
                        if let Some(start) = role_start(layout, &pat.roles[0]) {
                            for i in 0..2 * d {
                                p.values[start + 2 * d + i] = p.values[start + i];
                            }
                        }
                    }
                    PatternKind::Inversion => {
                        if let (Some(r), Some(s)) = (
                            role_start(layout, &pat.roles[0]),
                            role_start(layout, &pat.roles[1]),
                        ) {
                            for i in 0..2 * d {
                                p.values[s + i] = p.values[r + 2 * d + i];
                                p.values[s + 2 * d + i] = p.values[r + i];
                            }
                        }
                    }
                    _ => {}
                },
                (Method::Expr, Axiom::Pattern(pat)) => match pat.kind {
                    PatternKind::Hierarchy => {
                        if let (Some(r), Some(s)) = (
                            role_start(layout, &pat.roles[0]),
                            role_start(layout, &pat.roles[1]),
                        ) {
                            for i in 0..d {
                                p.values[s + i] = p.values[r + i];
                            }
                        }
                    }
                    PatternKind::Composition => {
                        if let (Some(a), Some(b), Some(c)) = (
                            role_start(layout, &pat.roles[0]),
                            role_start(layout, &pat.roles[1]),
                            role_start(layout, &pat.roles[2]),
                        ) {
                            for i in 0..d {
                                p.values[c + i] = p.values[a + i] * p.values[b + i];
                            }
                        }
                    }
                    PatternKind::Symmetry => {
                        if let Some(start) = role_start(layout, &pat.roles[0]) {
                            for i in 0..d {
                                p.values[start + i] = 1.0; // slope
                                p.values[start + d + i] = 0.0; // centre
                            }
                        }
                    }
                    PatternKind::Inversion => {
                        if let (Some(r), Some(s)) = (
                            role_start(layout, &pat.roles[0]),
                            role_start(layout, &pat.roles[1]),
                        ) {
                            for i in 0..d {
                                let slope = p.values[r + i];
                                if slope.abs() < 1e-6 {
                                    continue;
                                }
                                p.values[s + i] = 1.0 / slope;
                                p.values[s + d + i] = -p.values[r + d + i] / slope;
                                p.values[s + 2 * d + i] = p.values[r + 2 * d + i].abs() / slope.abs();
                            }
                        }
                    }
                    _ => {}
                },
                (Method::Boxel, Axiom::RoleAssertion { role, subject, object }) => {
                    if let (Some(t), Some(a), Some(b)) = (
                        role_start(layout, role),
                        ind_start(layout, subject),
                        ind_start(layout, object),
                    ) {
                        for i in 0..d {
                            p.values[b + i] =
                                p.values[t + i].abs() * p.values[a + i] + p.values[t + d + i];
                        }
                    }
                }
                (Method::Emel, Axiom::RoleInclusion { sub, sup })
                    if !sub.inverse && !sup.inverse =>
                {
                    if let (Some(r), Some(s)) =
                        (role_start(layout, &sub.name), role_start(layout, &sup.name))
                    {
                        for i in 0..d {
                            p.values[s + i] = p.values[r + i];
                        }
                    }
                }
                (Method::Emel, Axiom::RoleComposition { first, second, sup }) => {
                    if let (Some(a), Some(b), Some(c)) = (
                        role_start(layout, first),
                        role_start(layout, second),
                        role_start(layout, sup),
                    ) {
                        for i in 0..d {
                            p.values[c + i] = p.values[a + i] + p.values[b + i];
                        }
                    }
                }
                _ => {}
            }
        }
    }
}

fn loss(layout: &Layout, p: &Params, goal: &SearchGoal, routed: &KnowledgeBase) -> Option<f64> {
    let mut tied = p.clone();
    tie_params(layout, &mut tied, routed);
    let p = &tied;
    let mut total = 0.0;
    for ax in routed.axioms() {
        let m = margin(layout, p, ax)?;
        total += f64::max(0.0, SLACK - m);
    }
    for ax in goal.falsify {
        let m = margin(layout, p, ax)?;
        total += f64::max(0.0, m + SLACK);
    }
    Some(total)
}

fn rationalize(layout: &Layout, p: &Params) -> Embedding {
    let d = layout.dim;
    let mut e = Embedding::new(layout.method, d);
    let rs = |x: f64| -> Rat { rat_from_f64(x, DENOM_POW2) };
    let vecr = |xs: &[f64]| -> RVector { RVector::new(xs.iter().map(|&x| rs(x)).collect()) };
    let ball = |block: &[f64]| -> OpenBall {
        OpenBall::new(vecr(&block[..d]), Ext::Fin(rs(snap_size(block[d])))).expect("radius")
    };
    let co_box = |block: &[f64]| -> BoxRegion {
        let c = vecr(&block[..d]);
        let o: Vec<Ext> = block[d..2 * d].iter().map(|&x| Ext::Fin(rs(snap_size(x)))).collect();
        BoxRegion::from_center_offset(&c, &o).expect("offset")
    };
    for name in &layout.concepts {
        if layout.per_concept == 0 {
            break;
        }
        let b = layout.concept_block(p, name);
        let payload = match layout.method {
            Method::Elem | Method::Emel => ConceptPayload::Ball(ball(b)),
            Method::Elbe | Method::Boxel | Method::Boxe => ConceptPayload::Box(co_box(b)),
            Method::Box2el => ConceptPayload::BoxBump {
                bx: co_box(&b[d..]),
                bump: vecr(&b[..d]),
            },
            Method::Conv => ConceptPayload::Region(box_to_poly(&co_box(b))),
            Method::Cone | Method::Expr => continue,
        };
        e.concepts.insert(name.clone(), payload);
    }
    for name in &layout.individuals {
        let b = layout.individual_block(p, name);
        let payload = match layout.method {
            Method::Elem | Method::Emel => IndPayload::Ball(ball(b)),
            Method::Elbe => IndPayload::Box(co_box(b)),
            Method::Boxel | Method::Conv | Method::Expr | Method::Cone => {
                IndPayload::Point(vecr(&b[..d]))
            }
            Method::Box2el => IndPayload::PointBump { point: vecr(&b[..d]), bump: vecr(&b[d..2 * d]) },
            Method::Boxe => IndPayload::BaseBump { base: vecr(&b[..d]), bump: vecr(&b[d..2 * d]) },
        };
        e.individuals.insert(name.clone(), payload);
    }
    for name in &layout.roles {
        let b = layout.role_block(p, name);
        let payload = match layout.method {
            Method::Elem | Method::Emel | Method::Elbe => RolePayload::Vector(vecr(&b[..d])),
            Method::Boxel => RolePayload::Affine(
                AffineDiagMap::new(
                    b[..d].iter().map(|&x| rs(snap_size(x))).collect(),
                    vecr(&b[d..2 * d]),
                )
                .expect("diag"),
            ),
            Method::Box2el => RolePayload::HeadTail {
                head: co_box(&b[..2 * d]),
                tail: co_box(&b[2 * d..]),
            },
            Method::Boxe => RolePayload::BoxPair {
                first: co_box(&b[..2 * d]),
                second: co_box(&b[2 * d..]),
            },
            Method::Expr => {
                let slope = vecr(&b[..d]);
                let center = vecr(&b[d..2 * d]);
                let width = RVector::new(b[2 * d..3 * d].iter().map(|&x| rs(snap_size(x))).collect());
                RolePayload::Band(
                    BandStack::from_slope_center_width(&slope, &center, &width).expect("band"),
                )
            }
            Method::Conv => {
                // centre/offset over the doubled space
                let c = vecr(&b[..2 * d]);
                let o: Vec<Ext> = b[2 * d..4 * d].iter().map(|&x| Ext::Fin(rs(x.abs()))).collect();
                let bx = BoxRegion::from_center_offset(&c, &o).expect("offset");
                RolePayload::Region(box_to_poly(&bx))
            }
            Method::Cone => continue,
        };
        e.roles.insert(name.clone(), payload);
    }
    e
}

/// Axis-aligned box as an H-polyhedron (the convex sub-family searched for
/// the convex-region method).
pub fn box_to_poly(b: &BoxRegion) -> HPolyhedron {
    let d = b.dim();
    let mut rows = Vec::new();
    for i in 0..d {
        if let Ext::Fin(u) = &b.upper()[i] {
            let mut coeffs = vec![Rat::from_integer(0.into()); d];
            coeffs[i] = crate::rat::rint(1);
            rows.push(LinearConstraint::new(coeffs, Rel::Le, u.clone()));
        }
        if let Ext::Fin(l) = &b.lower()[i] {
            let mut coeffs = vec![Rat::from_integer(0.into()); d];
            coeffs[i] = crate::rat::rint(-1);
            rows.push(LinearConstraint::new(coeffs, Rel::Le, -l));
        }
    }
    if b.is_empty() {
        return HPolyhedron::empty(d);
    }
    HPolyhedron::new(d, rows).expect("box rows")
}

/// Exact post-rationalization repairs for equation-shaped rules: functional
/// role images and role-vector equations are snapped to exact equality.
fn repair(e: &mut Embedding, kb: &KnowledgeBase) {
    match e.method {
        Method::Boxel => {
            // r(a,b) forces E(b) = T^r(E(a))
            for _ in 0..3 {
                for ax in kb.axioms() {
                    if let Axiom::RoleAssertion { role, subject, object } = ax {
                        let image = {
                            let (Ok(t), Ok(a)) = (e.role_affine(role), e.ind_point(subject)) else {
                                continue;
                            };
                            t.apply(a).ok()
                        };
                        if let Some(img) = image {
                            e.individuals.insert(object.clone(), IndPayload::Point(img));
                        }
                    }
                }
            }
        }
        Method::Boxe => {
            for ax in kb.axioms() {
                if let Axiom::Pattern(p) = ax {
                    match p.kind {
                        PatternKind::Symmetry => {
                            if let Ok((first, _)) = e.role_box_pair(&p.roles[0]) {
                                let first = first.clone();
                                e.roles.insert(
                                    p.roles[0].clone(),
                                    RolePayload::BoxPair { first: first.clone(), second: first },
                                );
                            }
                        }
                        PatternKind::Inversion => {
                            if let Ok((first, second)) = e.role_box_pair(&p.roles[0]) {
                                let (first, second) = (first.clone(), second.clone());
                                e.roles.insert(
                                    p.roles[1].clone(),
                                    RolePayload::BoxPair { first: second, second: first },
                                );
                            }
                        }
                        _ => {}
                    }
                }
            }
        }
        Method::Expr => {
            for ax in kb.axioms() {
                if let Axiom::Pattern(p) = ax {
                    match p.kind {
                        PatternKind::Symmetry => {
                            if let Ok(band) = e.role_band(&p.roles[0]) {
                                // rebuild on slope one / centre zero, keeping
                                // the slice widths via the mirror meet
                                let sym = band.intersect(&band.mirror().unwrap_or_else(|_| band.clone()));
                                if let Ok(sym) = sym {
                                    e.roles.insert(p.roles[0].clone(), RolePayload::Band(sym));
                                }
                            }
                        }
                        PatternKind::Inversion => {
                            if let Ok(band) = e.role_band(&p.roles[0]) {
                                if let Ok(m) = band.mirror() {
                                    e.roles.insert(p.roles[1].clone(), RolePayload::Band(m));
                                }
                            }
                        }
                        _ => {}
                    }
                }
            }
        }
        Method::Emel => {
            for _ in 0..3 {
                for ax in kb.axioms() {
                    match ax {
                        Axiom::RoleInclusion { sub, sup } => {
                            if let Ok(v) = e.role_vector(&sub.name) {
                                let v = v.clone();
                                e.roles.insert(sup.name.clone(), RolePayload::Vector(v));
                            }
                        }
                        Axiom::RoleComposition { first, second, sup } => {
                            if let (Ok(a), Ok(b)) = (e.role_vector(first), e.role_vector(second)) {
                                if let Ok(sum) = a.add(b) {
                                    e.roles.insert(sup.clone(), RolePayload::Vector(sum));
                                }
                            }
                        }
                        _ => {}
                    }
                }
            }
        }
        _ => {}
    }
}

/// Seeded hill-climbing search for an embedding of `kb` (falsifying the
/// given axioms); the result is verified exactly before being returned.
pub fn search_model(
    goal: &SearchGoal,
    method: Method,
    dim: usize,
    cfg: &Config,
) -> Result<Option<Embedding>, AuditError> {
    let routed = if matches!(method, Method::Elem | Method::Emel | Method::Elbe | Method::Box2el) {
        abox_to_tbox(goal.kb)?
    } else {
        goal.kb.clone()
    };
    let layout = Layout::new(method, dim, goal.kb);
    if layout.len() == 0 {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5ee0_5eed);
    let (restarts, iters) = cfg.search_plan();
    let budget = cfg.fm_budget();
    for _restart in 0..restarts {
        let mut p = Params {
            values: (0..layout.len()).map(|_| rng.random_range(-3.0..3.0)).collect(),
        };
        let Some(mut best) = loss(&layout, &p, goal, &routed) else {
            return Ok(None); // unsupported axiom shape for the numeric twin
        };
        // exponential step schedule from 1.5 down to 2e-4 over the restart
        let mut step = 1.5f64;
        let decay = (2e-4f64 / 1.5).powf(1.0 / iters as f64);
        for _it in 0..iters {
            if best <= 0.0 {
                break;
            }
            let idx = rng.random_range(0..layout.len());
            let delta = rng.random_range(-step..step);
            let old = p.values[idx];
            p.values[idx] += delta;
            match loss(&layout, &p, goal, &routed) {
                Some(l) if l < best => {
                    best = l;
                }
                _ => {
                    p.values[idx] = old;
                }
            }
            step *= decay;
        }
        if best <= 0.0 {
            let mut tied = p.clone();
            tie_params(&layout, &mut tied, &routed);
            let mut e = rationalize(&layout, &tied);
            repair(&mut e, &routed);
            let ok = crate::semantics::is_model(&e, goal.kb, &budget)
                .map(|v| v.value)
                .unwrap_or(false);
            let neg_ok = goal.falsify.iter().all(|ax| {
                crate::semantics::satisfies(&e, ax, &budget)
                    .map(|v| !v.value)
                    .unwrap_or(false)
            });
            if ok && neg_ok {
                return Ok(Some(e));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::parse_kb;

    fn cfg() -> Config {
        Config { search_budget: 60_000, ..Config::default() }
    }

    #[test]
    fn finds_a_nested_box_model() {
        let kb = parse_kb("Language: ELO-bot-nf\nSubClassOf(A B)").unwrap();
        let goal = SearchGoal { kb: &kb, falsify: &[] };
        let e = search_model(&goal, Method::Elbe, 2, &cfg()).unwrap();
        assert!(e.is_some());
    }

    #[test]
    fn finds_a_ball_model_with_assertions() {
        let kb = parse_kb(
            "Language: ELO-bot-nf\nSubClassOf(And(B C) Bot)\nAssert(r a b)\nAssert(r a c)\nAssert(B b)\nAssert(C c)",
        )
        .unwrap();
        let goal = SearchGoal { kb: &kb, falsify: &[] };
        let e = search_model(&goal, Method::Elem, 2, &cfg()).unwrap();
        assert!(e.is_some());
    }

    #[test]
    fn respects_falsification_goals() {
        let kb = parse_kb("Language: patterns-no-comp\nAssert(r a b)").unwrap();
        let neg = vec![Axiom::RoleAssertion {
            role: "r".into(),
            subject: "b".into(),
            object: "a".into(),
        }];
        let goal = SearchGoal { kb: &kb, falsify: &neg };
        let e = search_model(&goal, Method::Boxe, 1, &cfg()).unwrap();
        assert!(e.is_some());
    }
}
