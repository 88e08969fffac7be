//! H-polyhedra over exact rationals, with possibly strict faces.
//!
//! A region is the set of points satisfying finitely many constraints
//! `a·x <= b` or `a·x < b`. This representation is closed under the three
//! operations the satisfaction checkers need — intersection, the block swap
//! `(x,y) -> (y,x)` on a doubled space, and existential projection — and all
//! three are computed exactly. Projection and emptiness use Fourier–Motzkin
//! elimination with strict/non-strict bookkeeping; the quadratic row growth
//! is bounded by a per-call cap ([`FmBudget`]) and exceeding it is a hard
//! error, never a silent approximation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{fmt_rat, Rat};

use super::{check_dims, GeomError, RVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rel {
    /// `a·x <= b`
    Le,
    /// `a·x < b`
    Lt,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearConstraint {
    pub coeffs: Vec<Rat>,
    pub rel: Rel,
    pub bound: Rat,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<Rat>, rel: Rel, bound: Rat) -> Self {
        LinearConstraint { coeffs, rel, bound }
    }

    pub fn holds_at(&self, p: &RVector) -> bool {
        let lhs: Rat = self
            .coeffs
            .iter()
            .zip(p.coords())
            .map(|(a, x)| a * x)
            .fold(Rat::zero(), |acc, t| acc + t);
        match self.rel {
            Rel::Le => lhs <= self.bound,
            Rel::Lt => lhs < self.bound,
        }
    }

    /// The complement halfspace: `not(a·x <= b)` is `-a·x < -b` and
    /// `not(a·x < b)` is `-a·x <= -b`.
    pub fn negation(&self) -> LinearConstraint {
        LinearConstraint {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            rel: match self.rel {
                Rel::Le => Rel::Lt,
                Rel::Lt => Rel::Le,
            },
            bound: -&self.bound,
        }
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// For a trivial row, whether `0 rel bound` holds.
    fn trivially_true(&self) -> bool {
        match self.rel {
            Rel::Le => !self.bound.is_negative(),
            Rel::Lt => self.bound.is_positive(),
        }
    }

    /// Scales to coprime integer coefficients with positive scale factor.
    fn normalized(&self) -> LinearConstraint {
        let mut lcm = BigInt::one();
        for c in self.coeffs.iter().chain(std::iter::once(&self.bound)) {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.bound))
            .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut gcd = BigInt::zero();
        for v in &ints {
            gcd = gcd.gcd(v);
        }
        if gcd.is_zero() {
            gcd = BigInt::one();
        }
        let n = ints.len();
        LinearConstraint {
            coeffs: ints[..n - 1]
                .iter()
                .map(|v| Rat::from_integer(v / &gcd))
                .collect(),
            rel: self.rel,
            bound: Rat::from_integer(&ints[n - 1] / &gcd),
        }
    }
}

impl fmt::Debug for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*x{}", fmt_rat(c), i)?;
        }
        write!(
            f,
            " {} {}",
            match self.rel {
                Rel::Le => "<=",
                Rel::Lt => "<",
            },
            fmt_rat(&self.bound)
        )
    }
}

/// Per-call resource bound for Fourier–Motzkin elimination.
#[derive(Clone, Copy, Debug)]
pub struct FmBudget {
    pub max_rows: usize,
}

impl Default for FmBudget {
    fn default() -> Self {
        FmBudget { max_rows: 10_000 }
    }
}

/// An intersection of finitely many (possibly strict) halfspaces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HPolyhedron {
    dim: usize,
    rows: Vec<LinearConstraint>,
}

impl HPolyhedron {
    /// Builds a polyhedron and canonicalizes its rows (integer-normalized,
    /// deduplicated keeping the tighter bound, sorted).
    pub fn new(dim: usize, rows: Vec<LinearConstraint>) -> Result<Self, GeomError> {
        for r in &rows {
            if r.coeffs.len() != dim {
                return Err(GeomError::DimMismatch(r.coeffs.len(), dim));
            }
        }
        Ok(Self::canonical(dim, rows))
    }

    fn canonical(dim: usize, rows: Vec<LinearConstraint>) -> Self {
        let mut best: BTreeMap<Vec<(BigInt, bool)>, (Rel, Rat, Vec<Rat>)> = BTreeMap::new();
        let mut infeasible = false;
        for row in rows {
            let row = row.normalized();
            if row.is_trivial() {
                if !row.trivially_true() {
                    infeasible = true;
                    break;
                }
                continue;
            }
            // Key on exact integer coefficients.
            let key: Vec<(BigInt, bool)> = row
                .coeffs
                .iter()
                .map(|c| (c.numer().clone(), c.numer().is_negative()))
                .collect();
            match best.get_mut(&key) {
                None => {
                    best.insert(key, (row.rel, row.bound, row.coeffs));
                }
                Some((rel, bound, _)) => {
                    let tighter = match row.bound.cmp(bound) {
                        Ordering::Less => true,
                        Ordering::Greater => false,
                        Ordering::Equal => row.rel == Rel::Lt && *rel == Rel::Le,
                    };
                    if tighter {
                        *rel = row.rel;
                        *bound = row.bound;
                    }
                }
            }
        }
        if infeasible {
            return Self::empty(dim);
        }
        let mut rows: Vec<LinearConstraint> = best
            .into_values()
            .map(|(rel, bound, coeffs)| LinearConstraint { coeffs, rel, bound })
            .collect();
        rows.sort_by(|a, b| {
            a.coeffs
                .cmp(&b.coeffs)
                .then(a.rel.cmp(&b.rel))
                .then(a.bound.cmp(&b.bound))
        });
        HPolyhedron { dim, rows }
    }

    /// All of `R^d`.
    pub fn full(dim: usize) -> Self {
        HPolyhedron { dim, rows: vec![] }
    }

    /// The canonical empty region `0 <= -1`.
    pub fn empty(dim: usize) -> Self {
        HPolyhedron {
            dim,
            rows: vec![LinearConstraint {
                coeffs: vec![Rat::zero(); dim],
                rel: Rel::Le,
                bound: crate::rat::rint(-1),
            }],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[LinearConstraint] {
        &self.rows
    }

    pub fn member(&self, p: &RVector) -> Result<bool, GeomError> {
        check_dims(p.dim(), self.dim)?;
        Ok(self.rows.iter().all(|r| r.holds_at(p)))
    }

    pub fn intersect(&self, other: &HPolyhedron) -> Result<HPolyhedron, GeomError> {
        check_dims(self.dim, other.dim)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Self::canonical(self.dim, rows))
    }

    /// The product region `self x other`.
    pub fn product(&self, other: &HPolyhedron) -> HPolyhedron {
        let dim = self.dim + other.dim;
        let mut rows = Vec::with_capacity(self.rows.len() + other.rows.len());
        for r in &self.rows {
            let mut coeffs = r.coeffs.clone();
            coeffs.extend(vec![Rat::zero(); other.dim]);
            rows.push(LinearConstraint::new(coeffs, r.rel, r.bound.clone()));
        }
        for r in &other.rows {
            let mut coeffs = vec![Rat::zero(); self.dim];
            coeffs.extend(r.coeffs.iter().cloned());
            rows.push(LinearConstraint::new(coeffs, r.rel, r.bound.clone()));
        }
        Self::canonical(dim, rows)
    }

    /// `{ x : x - t in self }`.
    pub fn translate(&self, t: &RVector) -> Result<HPolyhedron, GeomError> {
        check_dims(t.dim(), self.dim)?;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let shift: Rat = r
                    .coeffs
                    .iter()
                    .zip(t.coords())
                    .map(|(a, v)| a * v)
                    .fold(Rat::zero(), |acc, x| acc + x);
                LinearConstraint::new(r.coeffs.clone(), r.rel, &r.bound + shift)
            })
            .collect();
        Ok(Self::canonical(self.dim, rows))
    }

    /// Block swap of the two halves of a doubled space: the preimage of the
    /// coordinate permutation `(x, y) -> (y, x)`.
    pub fn swap_halves(&self) -> Result<HPolyhedron, GeomError> {
        if self.dim % 2 != 0 {
            return Err(GeomError::OddDimension(self.dim));
        }
        let h = self.dim / 2;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut coeffs = r.coeffs[h..].to_vec();
                coeffs.extend(r.coeffs[..h].iter().cloned());
                LinearConstraint::new(coeffs, r.rel, r.bound.clone())
            })
            .collect();
        Ok(Self::canonical(self.dim, rows))
    }

    /// Eliminates one variable by Fourier–Motzkin combination.
    ///
    /// The result constrains the same space with coordinate `var` free; the
    /// dimension is unchanged (callers drop coordinates via [`Self::project`]).
    fn eliminate_var(
        rows: Vec<LinearConstraint>,
        var: usize,
        budget: &FmBudget,
    ) -> Result<Vec<LinearConstraint>, GeomError> {
        let mut lowers = Vec::new(); // coeff < 0: bound from below
        let mut uppers = Vec::new(); // coeff > 0: bound from above
        let mut rest = Vec::new();
        for r in rows {
            match r.coeffs[var].cmp(&Rat::zero()) {
                Ordering::Less => lowers.push(r),
                Ordering::Greater => uppers.push(r),
                Ordering::Equal => rest.push(r),
            }
        }
        let new_rows = lowers.len() * uppers.len() + rest.len();
        if new_rows > budget.max_rows {
            return Err(GeomError::RowCapExceeded {
                rows: new_rows,
                cap: budget.max_rows,
            });
        }
        for lo in &lowers {
            for up in &uppers {
                // lo: a·x rel b with a_var < 0; up: c·x rel d with c_var > 0.
                // c_var * lo + (-a_var) * up eliminates the variable.
                let la = &lo.coeffs[var];
                let ua = &up.coeffs[var];
                let coeffs: Vec<Rat> = lo
                    .coeffs
                    .iter()
                    .zip(&up.coeffs)
                    .map(|(a, c)| a * ua + c * (-la))
                    .collect();
                debug_assert!(coeffs[var].is_zero());
                let bound = &lo.bound * ua + &up.bound * (-la);
                let rel = if lo.rel == Rel::Lt || up.rel == Rel::Lt {
                    Rel::Lt
                } else {
                    Rel::Le
                };
                rest.push(LinearConstraint::new(coeffs, rel, bound));
            }
        }
        Ok(rest)
    }

    /// Picks the next variable to eliminate: fewest product rows, then
    /// smallest index, so the procedure is deterministic.
    fn pick_var(rows: &[LinearConstraint], candidates: &[usize]) -> usize {
        let mut best = candidates[0];
        let mut best_cost = usize::MAX;
        for &v in candidates {
            let lo = rows.iter().filter(|r| r.coeffs[v].is_negative()).count();
            let up = rows.iter().filter(|r| r.coeffs[v].is_positive()).count();
            let cost = lo * up;
            if cost < best_cost {
                best_cost = cost;
                best = v;
            }
        }
        best
    }

    fn eliminate_all(
        &self,
        drop: &[usize],
        budget: &FmBudget,
    ) -> Result<Vec<LinearConstraint>, GeomError> {
        let mut rows = self.rows.clone();
        let mut remaining: Vec<usize> = drop.to_vec();
        while !remaining.is_empty() {
            let v = Self::pick_var(&rows, &remaining);
            remaining.retain(|&x| x != v);
            rows = Self::eliminate_var(rows, v, budget)?;
            // Re-canonicalize between steps to keep the row count down.
            rows = Self::canonical(self.dim, rows).rows;
        }
        Ok(rows)
    }

    /// Exact emptiness test by eliminating every variable.
    pub fn is_empty(&self, budget: &FmBudget) -> Result<bool, GeomError> {
        let all: Vec<usize> = (0..self.dim).collect();
        let rows = self.eliminate_all(&all, budget)?;
        // After full elimination, canonicalization keeps only an infeasible
        // marker row (if any): every surviving row is trivial.
        Ok(rows.iter().any(|r| r.is_trivial() && !r.trivially_true()))
    }

    /// Exact subset test: `self ⊆ other` iff for every face `γ` of `other`,
    /// `self ∩ ¬γ` is empty.
    pub fn subset(&self, other: &HPolyhedron, budget: &FmBudget) -> Result<bool, GeomError> {
        check_dims(self.dim, other.dim)?;
        for gamma in &other.rows {
            let mut rows = self.rows.clone();
            rows.push(gamma.negation());
            let candidate = Self::canonical(self.dim, rows);
            if !candidate.is_empty(budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &HPolyhedron, budget: &FmBudget) -> Result<bool, GeomError> {
        Ok(self.subset(other, budget)? && other.subset(self, budget)?)
    }

    /// Projects onto the coordinates in `keep` (re-indexed in ascending
    /// order): exact existential elimination of the dropped coordinates.
    pub fn project(&self, keep: &[usize], budget: &FmBudget) -> Result<HPolyhedron, GeomError> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.iter().any(|&k| k >= self.dim) {
            return Err(GeomError::Invalid(format!(
                "projection index out of range (dim {})",
                self.dim
            )));
        }
        let drop: Vec<usize> = (0..self.dim).filter(|i| !keep.contains(i)).collect();
        let rows = self.eliminate_all(&drop, budget)?;
        let new_dim = keep.len();
        let rows = rows
            .into_iter()
            .map(|r| {
                let coeffs: Vec<Rat> = keep.iter().map(|&k| r.coeffs[k].clone()).collect();
                LinearConstraint::new(coeffs, r.rel, r.bound)
            })
            .collect();
        Ok(Self::canonical(new_dim, rows))
    }

    /// Convenience constructor: the (closed) interval `[lo, hi]` in 1-D,
    /// with infinite ends leaving the side unconstrained.
    pub fn interval(lo: &crate::rat::Ext, hi: &crate::rat::Ext) -> Self {
        use crate::rat::Ext;
        let mut rows = Vec::new();
        if let Ext::Fin(l) = lo {
            rows.push(LinearConstraint::new(
                vec![crate::rat::rint(-1)],
                Rel::Le,
                -l,
            ));
        }
        if let Ext::Fin(h) = hi {
            rows.push(LinearConstraint::new(vec![crate::rat::rint(1)], Rel::Le, h.clone()));
        }
        if matches!(lo, Ext::PosInf) || matches!(hi, Ext::NegInf) {
            return Self::empty(1);
        }
        Self::canonical(1, rows)
    }

    /// The convex hull of a finite point set in the plane, as closed faces.
    ///
    /// Handles the degenerate cases (empty set, single point, collinear
    /// points) exactly; used to build role regions from prescribed members.
    pub fn hull_2d(points: &[RVector]) -> Result<HPolyhedron, GeomError> {
        for p in points {
            check_dims(p.dim(), 2)?;
        }
        if points.is_empty() {
            return Ok(Self::empty(2));
        }
        let mut pts: Vec<(Rat, Rat)> = points
            .iter()
            .map(|p| (p.get(0).clone(), p.get(1).clone()))
            .collect();
        pts.sort();
        pts.dedup();
        if pts.len() == 1 {
            let (x, y) = &pts[0];
            return Self::new(
                2,
                vec![
                    LinearConstraint::new(vec![crate::rat::rint(1), Rat::zero()], Rel::Le, x.clone()),
                    LinearConstraint::new(vec![crate::rat::rint(-1), Rat::zero()], Rel::Le, -x),
                    LinearConstraint::new(vec![Rat::zero(), crate::rat::rint(1)], Rel::Le, y.clone()),
                    LinearConstraint::new(vec![Rat::zero(), crate::rat::rint(-1)], Rel::Le, -y),
                ],
            );
        }
        let cross = |o: &(Rat, Rat), a: &(Rat, Rat), b: &(Rat, Rat)| -> Rat {
            (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
        };
        // Andrew's monotone chain; keeps only strict turns.
        let build = |iter: &mut dyn Iterator<Item = &(Rat, Rat)>| {
            let mut chain: Vec<(Rat, Rat)> = Vec::new();
            for p in iter {
                while chain.len() >= 2
                    && !cross(&chain[chain.len() - 2], &chain[chain.len() - 1], p).is_positive()
                {
                    chain.pop();
                }
                chain.push(p.clone());
            }
            chain
        };
        let lower = build(&mut pts.iter());
        let upper = build(&mut pts.iter().rev());
        let mut hull = lower;
        hull.pop();
        hull.extend(upper.into_iter().take_while(|_| true));
        hull.pop();
        if hull.len() < 2 {
            hull = pts.clone(); // fully collinear fallback handled below
        }
        if hull.len() == 2 || pts.iter().all(|p| cross(&pts[0], &pts[pts.len() - 1], p).is_zero()) {
            // Collinear: the segment between the extreme points.
            let a = pts.first().unwrap();
            let b = pts.last().unwrap();
            let dir = (&b.0 - &a.0, &b.1 - &a.1);
            // Normal to the line, both ways, pinning points onto it.
            let n = (dir.1.clone(), -dir.0.clone());
            let c = &n.0 * &a.0 + &n.1 * &a.1;
            let mut rows = vec![
                LinearConstraint::new(vec![n.0.clone(), n.1.clone()], Rel::Le, c.clone()),
                LinearConstraint::new(vec![-&n.0, -&n.1], Rel::Le, -&c),
            ];
            // End caps along the direction.
            let da = &dir.0 * &a.0 + &dir.1 * &a.1;
            let db = &dir.0 * &b.0 + &dir.1 * &b.1;
            rows.push(LinearConstraint::new(
                vec![-&dir.0, -&dir.1],
                Rel::Le,
                -Ord::min(da.clone(), db.clone()),
            ));
            rows.push(LinearConstraint::new(
                vec![dir.0.clone(), dir.1.clone()],
                Rel::Le,
                Ord::max(da, db),
            ));
            return Self::new(2, rows);
        }
        // Each consecutive hull pair (counter-clockwise) contributes a face.
        let mut rows = Vec::new();
        let m = hull.len();
        for i in 0..m {
            let a = &hull[i];
            let b = &hull[(i + 1) % m];
            // Outward normal for CCW edge a->b is (dy, -dx).
            let n = (&b.1 - &a.1, -(&b.0 - &a.0));
            let c = &n.0 * &a.0 + &n.1 * &a.1;
            rows.push(LinearConstraint::new(vec![n.0, n.1], Rel::Le, c));
        }
        Self::new(2, rows)
    }
}

impl fmt::Debug for HPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HPoly(dim={}, {:?})", self.dim, self.rows)
    }
}
