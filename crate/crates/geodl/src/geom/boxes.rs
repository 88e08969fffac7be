//! Closed axis-aligned boxes in corner form, with extended-rational corners.
//!
//! A box is `{ x : lower <= x <= upper }` componentwise; it is empty iff some
//! coordinate has `lower_i > upper_i`. Corners may be infinite, which is how
//! the top concept (`offset = inf`) and free coordinates of affine preimages
//! are represented. The centre/offset view used by some methods interconverts
//! exactly with the corner form while both are finite.

use std::fmt;

use num_traits::Zero;

use crate::rat::{Ext, Rat};

use super::{check_dims, GeomError, RVector};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoxRegion {
    lower: Vec<Ext>,
    upper: Vec<Ext>,
}

impl BoxRegion {
    pub fn new(lower: Vec<Ext>, upper: Vec<Ext>) -> Result<Self, GeomError> {
        check_dims(lower.len(), upper.len())?;
        Ok(BoxRegion { lower, upper })
    }

    pub fn from_corners(lower: &RVector, upper: &RVector) -> Result<Self, GeomError> {
        check_dims(lower.dim(), upper.dim())?;
        Ok(BoxRegion {
            lower: lower.iter().map(|r| Ext::Fin(r.clone())).collect(),
            upper: upper.iter().map(|r| Ext::Fin(r.clone())).collect(),
        })
    }

    /// Builds from the centre/offset view; offsets must be non-negative (an
    /// infinite offset makes the coordinate unbounded on both sides).
    pub fn from_center_offset(center: &RVector, offset: &[Ext]) -> Result<Self, GeomError> {
        check_dims(center.dim(), offset.len())?;
        let mut lower = Vec::with_capacity(offset.len());
        let mut upper = Vec::with_capacity(offset.len());
        for (c, o) in center.iter().zip(offset) {
            match o {
                Ext::PosInf => {
                    lower.push(Ext::NegInf);
                    upper.push(Ext::PosInf);
                }
                Ext::Fin(o) if *o >= Rat::zero() => {
                    lower.push(Ext::Fin(c - o));
                    upper.push(Ext::Fin(c + o));
                }
                _ => {
                    return Err(GeomError::Invalid("negative box offset".into()));
                }
            }
        }
        Ok(BoxRegion { lower, upper })
    }

    /// All of `R^d`.
    pub fn full(dim: usize) -> Self {
        BoxRegion {
            lower: vec![Ext::NegInf; dim],
            upper: vec![Ext::PosInf; dim],
        }
    }

    /// The canonical empty box (`lower = 1 > 0 = upper` in every coordinate).
    pub fn empty(dim: usize) -> Self {
        BoxRegion {
            lower: vec![Ext::int(1); dim],
            upper: vec![Ext::int(0); dim],
        }
    }

    /// The single point `{p}` as a volume-zero box.
    pub fn point(p: &RVector) -> Self {
        BoxRegion {
            lower: p.iter().map(|r| Ext::Fin(r.clone())).collect(),
            upper: p.iter().map(|r| Ext::Fin(r.clone())).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[Ext] {
        &self.lower
    }

    pub fn upper(&self) -> &[Ext] {
        &self.upper
    }

    pub fn is_empty(&self) -> bool {
        self.lower.iter().zip(&self.upper).any(|(l, u)| l > u)
    }

    /// Lower and upper corners coincide on a finite point.
    pub fn is_point(&self) -> bool {
        self.lower
            .iter()
            .zip(&self.upper)
            .all(|(l, u)| l == u && l.is_finite())
    }

    /// Zero offset in every coordinate, i.e. the box is a single point.
    /// (Such a box is non-empty as a set; some semantics still read it as
    /// the empty-concept marker.)
    pub fn offset_is_zero(&self) -> bool {
        self.is_point()
    }

    pub fn member(&self, p: &RVector) -> Result<bool, GeomError> {
        check_dims(p.dim(), self.dim())?;
        Ok(self
            .lower
            .iter()
            .zip(&self.upper)
            .zip(p.iter())
            .all(|((l, u), x)| {
                let x = Ext::Fin(x.clone());
                *l <= x && x <= *u
            }))
    }

    /// `self ⊆ other`; an empty box is a subset of anything.
    pub fn subset(&self, other: &BoxRegion) -> Result<bool, GeomError> {
        check_dims(self.dim(), other.dim())?;
        if self.is_empty() {
            return Ok(true);
        }
        Ok(self
            .lower
            .iter()
            .zip(&self.upper)
            .zip(other.lower.iter().zip(&other.upper))
            .all(|((al, au), (bl, bu))| bl <= al && au <= bu))
    }

    pub fn intersect(&self, other: &BoxRegion) -> Result<BoxRegion, GeomError> {
        check_dims(self.dim(), other.dim())?;
        Ok(BoxRegion {
            lower: self
                .lower
                .iter()
                .zip(&other.lower)
                .map(|(a, b)| Ext::max(a, b))
                .collect(),
            upper: self
                .upper
                .iter()
                .zip(&other.upper)
                .map(|(a, b)| Ext::min(a, b))
                .collect(),
        })
    }

    pub fn disjoint(&self, other: &BoxRegion) -> Result<bool, GeomError> {
        Ok(self.intersect(other)?.is_empty())
    }

    /// Set equality (empty boxes of any shape are equal).
    pub fn same_region(&self, other: &BoxRegion) -> Result<bool, GeomError> {
        Ok(self.subset(other)? && other.subset(self)?)
    }

    /// `{ x + v : x in self }`.
    pub fn translate(&self, v: &RVector) -> Result<BoxRegion, GeomError> {
        check_dims(v.dim(), self.dim())?;
        Ok(BoxRegion {
            lower: self
                .lower
                .iter()
                .zip(v.iter())
                .map(|(l, t)| l.add_rat(t))
                .collect(),
            upper: self
                .upper
                .iter()
                .zip(v.iter())
                .map(|(u, t)| u.add_rat(t))
                .collect(),
        })
    }

    /// Centre/offset accessors; `None` when a corner is infinite or the box
    /// is empty (the views only interconvert on finite non-empty boxes).
    pub fn center_offset(&self) -> Option<(RVector, Vec<Rat>)> {
        if self.is_empty() {
            return None;
        }
        let mut center = Vec::with_capacity(self.dim());
        let mut offset = Vec::with_capacity(self.dim());
        for (l, u) in self.lower.iter().zip(&self.upper) {
            let (l, u) = (l.as_fin()?, u.as_fin()?);
            center.push((l + u) / crate::rat::rint(2));
            offset.push((u - l) / crate::rat::rint(2));
        }
        Some((RVector::new(center), offset))
    }
}

impl fmt::Debug for BoxRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Box[")?;
        for i in 0..self.dim() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "[{}, {}]", self.lower[i], self.upper[i])?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn bx(lo: &[i64], hi: &[i64]) -> BoxRegion {
        BoxRegion::from_corners(&RVector::from_ints(lo), &RVector::from_ints(hi)).unwrap()
    }

    #[test]
    fn subset_matches_corner_comparison() {
        assert!(bx(&[0, 0], &[1, 1]).subset(&bx(&[0, 0], &[2, 2])).unwrap());
        assert!(!bx(&[0, 0], &[3, 1]).subset(&bx(&[0, 0], &[2, 2])).unwrap());
        // empty subset of anything
        assert!(bx(&[1], &[0]).subset(&bx(&[5], &[6])).unwrap());
    }

    #[test]
    fn emptiness_is_per_coordinate() {
        assert!(bx(&[1, 0], &[0, 5]).is_empty());
        assert!(!bx(&[0, 0], &[0, 0]).is_empty()); // a point is non-empty
        assert!(bx(&[0, 0], &[0, 0]).offset_is_zero());
    }

    #[test]
    fn intersection_and_translation() {
        let a = bx(&[0, 0], &[2, 2]);
        let b = bx(&[1, 1], &[3, 3]);
        let meet = a.intersect(&b).unwrap();
        assert!(meet.same_region(&bx(&[1, 1], &[2, 2])).unwrap());
        let shifted = a.translate(&RVector::from_ints(&[1, 1])).unwrap();
        assert!(shifted.same_region(&bx(&[1, 1], &[3, 3])).unwrap());
        assert!(a.disjoint(&bx(&[3, 0], &[4, 1])).unwrap());
        assert!(!a.disjoint(&bx(&[2, 2], &[4, 4])).unwrap()); // corner touch
    }

    #[test]
    fn center_offset_round_trip() {
        let b = bx(&[0, 2], &[4, 2]);
        let (c, o) = b.center_offset().unwrap();
        assert_eq!(c, RVector::from_ints(&[2, 2]));
        assert_eq!(o, vec![rat(2, 1), rat(0, 1)]);
        let back = BoxRegion::from_center_offset(
            &c,
            &o.iter().map(|r| Ext::Fin(r.clone())).collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(back.same_region(&b).unwrap());
        assert_eq!(BoxRegion::full(2).center_offset(), None);
    }

    #[test]
    fn infinite_boxes() {
        let full = BoxRegion::full(2);
        assert!(bx(&[-100, -100], &[100, 100]).subset(&full).unwrap());
        assert!(!full.subset(&bx(&[-100, -100], &[100, 100])).unwrap());
        assert!(full.member(&RVector::from_ints(&[7, -9])).unwrap());
    }
}
