//! Diagonal affine maps `x -> D x + b` with non-negative diagonal.
//!
//! These represent role transformations whose graph is the role extension.
//! The key operation is the exact preimage of a box, which is again a box
//! (possibly with unbounded coordinates where the diagonal vanishes).

use num_traits::Signed;

use crate::rat::{Ext, Rat};

use super::{check_dims, BoxRegion, GeomError, RVector};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineDiagMap {
    diag: Vec<Rat>,
    offset: RVector,
}

impl AffineDiagMap {
    pub fn new(diag: Vec<Rat>, offset: RVector) -> Result<Self, GeomError> {
        check_dims(diag.len(), offset.dim())?;
        if diag.iter().any(|d| d.is_negative()) {
            return Err(GeomError::Invalid(
                "affine map requires a non-negative diagonal".into(),
            ));
        }
        Ok(AffineDiagMap { diag, offset })
    }

    pub fn identity(dim: usize) -> Self {
        AffineDiagMap {
            diag: vec![crate::rat::rint(1); dim],
            offset: RVector::zero(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[Rat] {
        &self.diag
    }

    pub fn offset(&self) -> &RVector {
        &self.offset
    }

    pub fn apply(&self, x: &RVector) -> Result<RVector, GeomError> {
        check_dims(x.dim(), self.dim())?;
        Ok(RVector::new(
            self.diag
                .iter()
                .zip(x.iter())
                .zip(self.offset.iter())
                .map(|((d, x), b)| d * x + b)
                .collect(),
        ))
    }

    /// Exact preimage `{ x : D x + b in box }`.
    ///
    /// Per dimension: a positive diagonal entry rescales the interval; a zero
    /// entry leaves the coordinate free when the offset already lies inside
    /// the target interval and otherwise empties the whole preimage.
    pub fn preimage_box(&self, target: &BoxRegion) -> Result<BoxRegion, GeomError> {
        check_dims(self.dim(), target.dim())?;
        if target.is_empty() {
            return Ok(BoxRegion::empty(self.dim()));
        }
        let mut lower = Vec::with_capacity(self.dim());
        let mut upper = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let d = &self.diag[i];
            let b = self.offset.get(i);
            let (lo, hi) = (&target.lower()[i], &target.upper()[i]);
            if d.is_zero() {
                let v = Ext::Fin(b.clone());
                if *lo <= v && v <= *hi {
                    lower.push(Ext::NegInf);
                    upper.push(Ext::PosInf);
                } else {
                    return Ok(BoxRegion::empty(self.dim()));
                }
            } else {
                lower.push(lo.sub_rat(b).div_pos(d));
                upper.push(hi.sub_rat(b).div_pos(d));
            }
        }
        BoxRegion::new(lower, upper)
    }
}

use num_traits::Zero as _;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rint;

    #[test]
    fn preimage_rescales_and_frees_coordinates() {
        // D=(2,0), b=(0,3), box [0,4]x[2,4] -> [0,2] x R
        let t = AffineDiagMap::new(vec![rint(2), rint(0)], RVector::from_ints(&[0, 3])).unwrap();
        let target = BoxRegion::from_corners(&RVector::from_ints(&[0, 2]), &RVector::from_ints(&[4, 4])).unwrap();
        let pre = t.preimage_box(&target).unwrap();
        assert_eq!(pre.lower()[0], Ext::int(0));
        assert_eq!(pre.upper()[0], Ext::int(2));
        assert_eq!(pre.lower()[1], Ext::NegInf);
        assert_eq!(pre.upper()[1], Ext::PosInf);
    }

    #[test]
    fn identity_preimage_is_the_box() {
        let target = BoxRegion::from_corners(&RVector::from_ints(&[1, 2]), &RVector::from_ints(&[3, 4])).unwrap();
        let pre = AffineDiagMap::identity(2).preimage_box(&target).unwrap();
        assert!(pre.same_region(&target).unwrap());
    }

    #[test]
    fn zero_diagonal_outside_target_empties() {
        // D=(0), b=(5), box [0,1] -> empty
        let t = AffineDiagMap::new(vec![rint(0)], RVector::from_ints(&[5])).unwrap();
        let target = BoxRegion::from_corners(&RVector::from_ints(&[0]), &RVector::from_ints(&[1])).unwrap();
        assert!(t.preimage_box(&target).unwrap().is_empty());
    }

    #[test]
    fn forward_membership_agrees() {
        let t = AffineDiagMap::new(vec![rint(3), rint(1)], RVector::from_ints(&[-1, 2])).unwrap();
        let target = BoxRegion::from_corners(&RVector::from_ints(&[0, 0]), &RVector::from_ints(&[5, 5])).unwrap();
        let pre = t.preimage_box(&target).unwrap();
        for x in [[0, 0], [1, 1], [2, 3], [-1, -2], [5, 5]] {
            let p = RVector::from_ints(&x);
            let fx = t.apply(&p).unwrap();
            assert_eq!(pre.member(&p).unwrap(), target.member(&fx).unwrap());
        }
    }

    #[test]
    fn negative_diagonal_rejected() {
        assert!(AffineDiagMap::new(vec![rint(-1)], RVector::zero(1)).is_err());
    }
}
