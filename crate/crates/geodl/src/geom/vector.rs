//! Fixed-dimension vectors of exact rationals.

use std::fmt;

use num_traits::Zero;

use crate::rat::{fmt_rat, Rat};

use super::{check_dims, GeomError};

/// A point of `Q^d`, the exact stand-in for `R^d` used everywhere.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RVector(Vec<Rat>);

impl RVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        RVector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        RVector(vec![Rat::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RVector(coords.iter().map(|&c| crate::rat::rint(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Rat {
        &self.0[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rat> {
        self.0.iter()
    }

    pub fn add(&self, other: &RVector) -> Result<RVector, GeomError> {
        check_dims(self.dim(), other.dim())?;
        Ok(RVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &RVector) -> Result<RVector, GeomError> {
        check_dims(self.dim(), other.dim())?;
        Ok(RVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn neg(&self) -> RVector {
        RVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &Rat) -> RVector {
        RVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn dot(&self, other: &RVector) -> Result<Rat, GeomError> {
        check_dims(self.dim(), other.dim())?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .fold(Rat::zero(), |acc, t| acc + t))
    }

    /// Squared Euclidean norm; kept squared so comparisons stay rational.
    pub fn sq_norm(&self) -> Rat {
        self.0
            .iter()
            .map(|a| a * a)
            .fold(Rat::zero(), |acc, t| acc + t)
    }

    pub fn sq_dist(&self, other: &RVector) -> Result<Rat, GeomError> {
        Ok(self.sub(other)?.sq_norm())
    }

    /// Concatenation into `Q^{d+d'}`.
    pub fn concat(&self, other: &RVector) -> RVector {
        let mut coords = self.0.clone();
        coords.extend(other.0.iter().cloned());
        RVector(coords)
    }

    /// Splits an even-dimensional vector into its two halves.
    pub fn split_halves(&self) -> Result<(RVector, RVector), GeomError> {
        if self.dim() % 2 != 0 {
            return Err(GeomError::OddDimension(self.dim()));
        }
        let h = self.dim() / 2;
        Ok((
            RVector(self.0[..h].to_vec()),
            RVector(self.0[h..].to_vec()),
        ))
    }

    /// Componentwise `<=`.
    pub fn leq(&self, other: &RVector) -> Result<bool, GeomError> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|a| a.is_zero())
    }
}

impl fmt::Debug for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_rat(c))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn basic_algebra() {
        let u = RVector::from_ints(&[1, 2]);
        let v = RVector::from_ints(&[3, -1]);
        assert_eq!(u.add(&v).unwrap(), RVector::from_ints(&[4, 1]));
        assert_eq!(u.sub(&v).unwrap(), RVector::from_ints(&[-2, 3]));
        assert_eq!(u.dot(&v).unwrap(), rat(1, 1));
        assert_eq!(u.sq_norm(), rat(5, 1));
        assert_eq!(u.concat(&v).dim(), 4);
        let (a, b) = u.concat(&v).split_halves().unwrap();
        assert_eq!(a, u);
        assert_eq!(b, v);
        assert!(u.leq(&RVector::from_ints(&[1, 5])).unwrap());
        assert!(!v.leq(&u).unwrap());
    }

    #[test]
    fn dim_mismatch_is_an_error() {
        let u = RVector::from_ints(&[1]);
        let v = RVector::from_ints(&[1, 2]);
        assert!(u.add(&v).is_err());
        assert!(u.dot(&v).is_err());
    }
}
