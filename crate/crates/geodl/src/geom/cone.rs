//! Axis-aligned cones: products of `{R, R+, R-, {0}}` per coordinate.
//!
//! These are exactly the convex cones closed under the polar operation used
//! by the cone semantics for propositional concepts: polarity swaps
//! `R <-> {0}` and `R+ <-> R-` componentwise, and meet is the componentwise
//! lattice meet with `R` on top and `{0}` at bottom.

use std::fmt;

use num_traits::Signed;

use crate::rat::Rat;

use super::{check_dims, GeomError, RVector};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ConeAxis {
    /// All of `R`.
    Full,
    /// `[0, ∞)`
    Plus,
    /// `(-∞, 0]`
    Minus,
    /// `{0}`
    Zero,
}

impl ConeAxis {
    pub fn polar(self) -> ConeAxis {
        match self {
            ConeAxis::Full => ConeAxis::Zero,
            ConeAxis::Zero => ConeAxis::Full,
            ConeAxis::Plus => ConeAxis::Minus,
            ConeAxis::Minus => ConeAxis::Plus,
        }
    }

    pub fn meet(self, other: ConeAxis) -> ConeAxis {
        use ConeAxis::*;
        match (self, other) {
            (Full, x) | (x, Full) => x,
            (Zero, _) | (_, Zero) => Zero,
            (Plus, Plus) => Plus,
            (Minus, Minus) => Minus,
            (Plus, Minus) | (Minus, Plus) => Zero,
        }
    }

    /// Set inclusion of the four axis sets.
    pub fn leq(self, other: ConeAxis) -> bool {
        use ConeAxis::*;
        matches!(
            (self, other),
            (Zero, _) | (_, Full) | (Plus, Plus) | (Minus, Minus)
        )
    }

    pub fn contains(self, x: &Rat) -> bool {
        match self {
            ConeAxis::Full => true,
            ConeAxis::Plus => !x.is_negative(),
            ConeAxis::Minus => !x.is_positive(),
            ConeAxis::Zero => x.is_zero(),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            ConeAxis::Full => 'R',
            ConeAxis::Plus => '+',
            ConeAxis::Minus => '-',
            ConeAxis::Zero => '0',
        }
    }

    pub fn from_char(c: char) -> Result<ConeAxis, GeomError> {
        match c {
            'R' => Ok(ConeAxis::Full),
            '+' => Ok(ConeAxis::Plus),
            '-' => Ok(ConeAxis::Minus),
            '0' => Ok(ConeAxis::Zero),
            other => Err(GeomError::Invalid(format!("invalid cone axis `{other}`"))),
        }
    }
}

use num_traits::Zero as _;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlCone(Vec<ConeAxis>);

impl AlCone {
    pub fn new(components: Vec<ConeAxis>) -> Self {
        AlCone(components)
    }

    /// Parses a string over `R + - 0`, one character per dimension.
    pub fn parse(s: &str) -> Result<Self, GeomError> {
        s.chars().map(ConeAxis::from_char).collect::<Result<Vec<_>, _>>().map(AlCone)
    }

    pub fn top(dim: usize) -> Self {
        AlCone(vec![ConeAxis::Full; dim])
    }

    pub fn bottom(dim: usize) -> Self {
        AlCone(vec![ConeAxis::Zero; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[ConeAxis] {
        &self.0
    }

    pub fn polar(&self) -> AlCone {
        AlCone(self.0.iter().map(|a| a.polar()).collect())
    }

    pub fn meet(&self, other: &AlCone) -> Result<AlCone, GeomError> {
        check_dims(self.dim(), other.dim())?;
        Ok(AlCone(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.meet(*b))
                .collect(),
        ))
    }

    pub fn join(&self, other: &AlCone) -> Result<AlCone, GeomError> {
        Ok(self.polar().meet(&other.polar())?.polar())
    }

    pub fn leq(&self, other: &AlCone) -> Result<bool, GeomError> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a.leq(*b)))
    }

    pub fn member(&self, p: &RVector) -> Result<bool, GeomError> {
        check_dims(self.dim(), p.dim())?;
        Ok(self.0.iter().zip(p.iter()).all(|(a, x)| a.contains(x)))
    }
}

impl fmt::Debug for AlCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|a| a.to_char()).collect();
        write!(f, "AlCone({s})")
    }
}

impl fmt::Display for AlCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.0 {
            write!(f, "{}", a.to_char())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ConeAxis::*;

    #[test]
    fn polar_is_componentwise_and_involutive() {
        let c = AlCone::new(vec![Plus, Minus]);
        assert_eq!(c.polar(), AlCone::new(vec![Minus, Plus]));
        let d = AlCone::new(vec![Full, Zero]);
        assert_eq!(d.polar(), AlCone::new(vec![Zero, Full]));
        for axes in [[Plus, Full], [Minus, Zero], [Zero, Plus]] {
            let c = AlCone::new(axes.to_vec());
            assert_eq!(c.polar().polar(), c);
        }
    }

    #[test]
    fn lattice_structure() {
        let a = AlCone::new(vec![Plus, Full]);
        let b = AlCone::new(vec![Minus, Plus]);
        assert_eq!(a.meet(&b).unwrap(), AlCone::new(vec![Zero, Plus]));
        assert!(AlCone::bottom(2).leq(&a).unwrap());
        assert!(!AlCone::new(vec![Plus]).leq(&AlCone::new(vec![Minus])).unwrap());
        // meet is the greatest lower bound, exhaustively in 1-D
        let axes = [Full, Plus, Minus, Zero];
        for &x in &axes {
            for &y in &axes {
                let m = x.meet(y);
                assert!(m.leq(x) && m.leq(y));
                for &z in &axes {
                    if z.leq(x) && z.leq(y) {
                        assert!(z.leq(m));
                    }
                }
            }
        }
    }

    #[test]
    fn membership_by_sign_pattern() {
        let c = AlCone::new(vec![Plus, Minus]);
        assert!(c.member(&RVector::from_ints(&[1, -1])).unwrap());
        assert!(c.member(&RVector::from_ints(&[0, 0])).unwrap());
        assert!(!c.member(&RVector::from_ints(&[1, 1])).unwrap());
    }

    #[test]
    fn parse_round_trip() {
        let c = AlCone::parse("R+-0").unwrap();
        assert_eq!(c.to_string(), "R+-0");
        assert!(AlCone::parse("x").is_err());
    }
}
