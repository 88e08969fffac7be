//! Linear-combination certificates for inequality derivations.
//!
//! The symbolic checks in the gallery replay proof chains of the form "sum
//! these hypotheses with non-negative weights and read off the goal". A
//! hypothesis is `expr <= 0` or `expr < 0` over named variables (norms are
//! treated as fresh non-negative variables, with the needed triangle
//! inequalities added as explicit hypotheses). The checker verifies that the
//! weighted sum of the hypotheses has exactly the goal's linear part and a
//! compatible constant and strictness, which makes the derivation
//! machine-checkable without a solver.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinExpr {
    pub terms: BTreeMap<String, Rat>,
    pub constant: Rat,
}

impl LinExpr {
    pub fn new() -> Self {
        LinExpr { terms: BTreeMap::new(), constant: Rat::zero() }
    }

    pub fn var(name: &str) -> Self {
        let mut e = Self::new();
        e.terms.insert(name.into(), crate::rat::rint(1));
        e
    }

    pub fn constant(c: Rat) -> Self {
        let mut e = Self::new();
        e.constant = c;
        e
    }

    pub fn plus(mut self, other: &LinExpr) -> Self {
        for (v, c) in &other.terms {
            let entry = self.terms.entry(v.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        self.constant += &other.constant;
        self.normalize()
    }

    pub fn minus(self, other: &LinExpr) -> Self {
        self.plus(&other.scaled(&crate::rat::rint(-1)))
    }

    pub fn scaled(&self, k: &Rat) -> Self {
        LinExpr {
            terms: self.terms.iter().map(|(v, c)| (v.clone(), c * k)).collect(),
            constant: &self.constant * k,
        }
        .normalize()
    }

    fn normalize(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        self
    }
}

impl Default for LinExpr {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IneqKind {
    /// `expr <= 0`
    Le,
    /// `expr < 0`
    Lt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ineq {
    pub expr: LinExpr,
    pub kind: IneqKind,
    pub label: String,
}

impl Ineq {
    pub fn le(expr: LinExpr, label: &str) -> Self {
        Ineq { expr, kind: IneqKind::Le, label: label.into() }
    }

    pub fn lt(expr: LinExpr, label: &str) -> Self {
        Ineq { expr, kind: IneqKind::Lt, label: label.into() }
    }
}

/// Verifies that `goal` follows from `hypotheses` via the given non-negative
/// weights: the weighted sum must equal the goal's linear part, the summed
/// constant must dominate the goal's, and a strict goal needs strictness in
/// the sum (a strict hypothesis with positive weight, or constant slack).
pub fn check_combination(hypotheses: &[Ineq], weights: &[Rat], goal: &Ineq) -> Result<(), String> {
    if hypotheses.len() != weights.len() {
        return Err("weight count mismatch".into());
    }
    let mut sum = LinExpr::new();
    let mut sum_strict = false;
    for (h, w) in hypotheses.iter().zip(weights) {
        if w < &Rat::zero() {
            return Err(format!("negative weight on `{}`", h.label));
        }
        if w.is_zero() {
            continue;
        }
        sum = sum.plus(&h.expr.scaled(w));
        if h.kind == IneqKind::Lt {
            sum_strict = true;
        }
    }
    // goal.expr - sum must be a constant <= 0 (slack only strengthens).
    let diff = goal.expr.clone().minus(&sum);
    if !diff.terms.is_empty() {
        return Err(format!(
            "linear parts differ: residual terms {:?}",
            diff.terms.keys().collect::<Vec<_>>()
        ));
    }
    if diff.constant > Rat::zero() {
        return Err("constant slack goes the wrong way".into());
    }
    if goal.kind == IneqKind::Lt && !sum_strict && diff.constant.is_zero() {
        return Err("goal is strict but the combination is not".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rint;

    /// The inequality-chain contradiction used against relation box pairs:
    /// from `e + p <= u`, `u < l`, `l <= e + q` conclude `p - q < 0`.
    #[test]
    fn bump_order_chain() {
        let e = LinExpr::var("e");
        let p = LinExpr::var("p");
        let q = LinExpr::var("q");
        let u = LinExpr::var("u");
        let l = LinExpr::var("l");
        let h1 = Ineq::le(e.clone().plus(&p).minus(&u), "e+p<=u");
        let h2 = Ineq::lt(u.clone().minus(&l), "u<l");
        let h3 = Ineq::le(l.clone().minus(&e).minus(&q), "l<=e+q");
        let goal = Ineq::lt(p.minus(&q), "p<q");
        check_combination(&[h1, h2, h3], &[rint(1), rint(1), rint(1)], &goal).unwrap();
    }

    #[test]
    fn rejects_wrong_combinations() {
        let x = LinExpr::var("x");
        let h = Ineq::le(x.clone(), "x<=0");
        let goal_bad = Ineq::le(LinExpr::var("y"), "y<=0");
        assert!(check_combination(&[h.clone()], &[rint(1)], &goal_bad).is_err());
        // non-strict hypotheses cannot prove a strict goal
        let goal_strict = Ineq::lt(x.clone(), "x<0");
        assert!(check_combination(&[h.clone()], &[rint(1)], &goal_strict).is_err());
        // negative weights are rejected
        let goal = Ineq::le(x.scaled(&rint(-1)), "-x<=0");
        assert!(check_combination(&[h], &[rint(-1)], &goal).is_err());
    }

    /// The two-ball disjointness chain: containments in two disjoint balls
    /// force the contained radius to zero.
    #[test]
    fn disjoint_containment_forces_empty() {
        let n_ab = LinExpr::var("|cB-cC|");
        let n_b = LinExpr::var("|x-cB|");
        let n_c = LinExpr::var("|x-cC|");
        let (ra, rb, rc) = (LinExpr::var("ra"), LinExpr::var("rb"), LinExpr::var("rc"));
        let hyps = vec![
            Ineq::le(n_b.clone().plus(&ra).minus(&rb), "contained in B"),
            Ineq::le(n_c.clone().plus(&ra).minus(&rc), "contained in C"),
            Ineq::le(rb.clone().plus(&rc).minus(&n_ab), "B,C disjoint"),
            Ineq::le(n_ab.clone().minus(&n_b).minus(&n_c), "triangle"),
        ];
        let goal = Ineq::le(ra.scaled(&rint(2)), "2 ra <= 0");
        check_combination(&hyps, &vec![rint(1); 4], &goal).unwrap();
    }
}
