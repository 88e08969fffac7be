//! Band stacks: relation regions in the doubled space `R^{2d}` that factor
//! as a product of planar slices, one per dimension.
//!
//! A stack holds, for each coordinate `j`, a 2-D H-polyhedron over the pair
//! `(x_j, y_j)`. The default slice is the band `|x - s·y - c| <= w` built
//! from slope/centre/width parameters, but arbitrary convex slices are
//! accepted so bounded parallelograms are representable too. All four
//! operations reduce to exact 2-D polyhedral calls; because the region is a
//! product, subset and disjointness need the non-emptiness guard (a product
//! is empty as soon as one slice is).

use crate::rat::Rat;

use super::{check_dims, FmBudget, GeomError, HPolyhedron, LinearConstraint, Rel, RVector};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BandStack {
    slices: Vec<HPolyhedron>,
}

impl BandStack {
    /// Builds from arbitrary 2-D slices (one per dimension).
    pub fn from_slices(slices: Vec<HPolyhedron>) -> Result<Self, GeomError> {
        for s in &slices {
            check_dims(s.dim(), 2)?;
        }
        if slices.is_empty() {
            return Err(GeomError::Invalid("band stack needs dimension >= 1".into()));
        }
        Ok(BandStack { slices })
    }

    /// The band `|x_j - slope_j * y_j - center_j| <= width_j` per dimension.
    pub fn from_slope_center_width(
        slope: &RVector,
        center: &RVector,
        width: &RVector,
    ) -> Result<Self, GeomError> {
        check_dims(slope.dim(), center.dim())?;
        check_dims(slope.dim(), width.dim())?;
        let mut slices = Vec::with_capacity(slope.dim());
        for j in 0..slope.dim() {
            let s = slope.get(j);
            let c = center.get(j);
            let w = width.get(j);
            let rows = vec![
                LinearConstraint::new(vec![crate::rat::rint(1), -s], Rel::Le, c + w),
                LinearConstraint::new(vec![crate::rat::rint(-1), s.clone()], Rel::Le, w - c),
            ];
            slices.push(HPolyhedron::new(2, rows)?);
        }
        Ok(BandStack { slices })
    }

    pub fn dim(&self) -> usize {
        self.slices.len()
    }

    pub fn slices(&self) -> &[HPolyhedron] {
        &self.slices
    }

    pub fn is_empty(&self, budget: &FmBudget) -> Result<bool, GeomError> {
        for s in &self.slices {
            if s.is_empty(budget)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Membership of the concatenated point `u ⊕ v`.
    pub fn member(&self, u: &RVector, v: &RVector) -> Result<bool, GeomError> {
        check_dims(u.dim(), self.dim())?;
        check_dims(v.dim(), self.dim())?;
        for (j, s) in self.slices.iter().enumerate() {
            let p = RVector::new(vec![u.get(j).clone(), v.get(j).clone()]);
            if !s.member(&p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Mirror image across the identity line: swap `(x, y)` in every slice.
    pub fn mirror(&self) -> Result<BandStack, GeomError> {
        Ok(BandStack {
            slices: self
                .slices
                .iter()
                .map(|s| s.swap_halves())
                .collect::<Result<Vec<_>, _>>()?,
        })
    }

    /// Product subset with the emptiness guard: an empty product is a subset
    /// of anything; otherwise all slices must be contained.
    pub fn subset(&self, other: &BandStack, budget: &FmBudget) -> Result<bool, GeomError> {
        check_dims(self.dim(), other.dim())?;
        if self.is_empty(budget)? {
            return Ok(true);
        }
        for (a, b) in self.slices.iter().zip(&other.slices) {
            if !a.subset(b, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_region(&self, other: &BandStack, budget: &FmBudget) -> Result<bool, GeomError> {
        Ok(self.subset(other, budget)? && other.subset(self, budget)?)
    }

    /// Product disjointness: empty factors are disjoint from anything;
    /// non-empty products are disjoint iff some slice pair is.
    pub fn disjoint(&self, other: &BandStack, budget: &FmBudget) -> Result<bool, GeomError> {
        check_dims(self.dim(), other.dim())?;
        if self.is_empty(budget)? || other.is_empty(budget)? {
            return Ok(true);
        }
        for (a, b) in self.slices.iter().zip(&other.slices) {
            if a.intersect(b)?.is_empty(budget)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn intersect(&self, other: &BandStack) -> Result<BandStack, GeomError> {
        check_dims(self.dim(), other.dim())?;
        Ok(BandStack {
            slices: self
                .slices
                .iter()
                .zip(&other.slices)
                .map(|(a, b)| a.intersect(b))
                .collect::<Result<Vec<_>, _>>()?,
        })
    }

    /// Relational composition, slice-wise: the slice over `(u, w)` is the
    /// shadow of `{ (u,v) in self_j, (v,w) in other_j }`, eliminated exactly.
    pub fn compose(&self, other: &BandStack, budget: &FmBudget) -> Result<BandStack, GeomError> {
        check_dims(self.dim(), other.dim())?;
        let mut slices = Vec::with_capacity(self.dim());
        for (a, b) in self.slices.iter().zip(&other.slices) {
            // Variables (u, v, w): a constrains (u, v), b constrains (v, w).
            let mut rows = Vec::new();
            for r in a.rows() {
                rows.push(LinearConstraint::new(
                    vec![r.coeffs[0].clone(), r.coeffs[1].clone(), Rat::from_integer(0.into())],
                    r.rel,
                    r.bound.clone(),
                ));
            }
            for r in b.rows() {
                rows.push(LinearConstraint::new(
                    vec![Rat::from_integer(0.into()), r.coeffs[0].clone(), r.coeffs[1].clone()],
                    r.rel,
                    r.bound.clone(),
                ));
            }
            let joint = HPolyhedron::new(3, rows)?;
            slices.push(joint.project(&[0, 2], budget)?);
        }
        Ok(BandStack { slices })
    }
}
