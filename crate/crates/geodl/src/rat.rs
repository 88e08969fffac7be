//! Exact rational scalars and the extended line used for radii and box
//! corners.
//!
//! All region algebra in this crate is carried out over arbitrary-precision
//! rationals. Square roots appear only inside comparisons, which are decided
//! exactly by squaring (see [`cmp_sqrt`]), never by floating-point
//! approximation. The extended type [`Ext`] adds the two infinities needed
//! for the top concept (`radius = inf`, unbounded box corners).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

/// Shorthand for `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses the `p/q` (or plain `p`) serialization used by every file format.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational numerator `{num}`"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational denominator `{den}`"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rat::new(n, d))
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The rational line extended with both infinities.
///
/// Ordering is total: `NegInf < Fin(_) < PosInf`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ext {
    NegInf,
    Fin(Rat),
    PosInf,
}

impl Ext {
    pub fn fin(n: i64, d: i64) -> Ext {
        Ext::Fin(rat(n, d))
    }

    pub fn int(n: i64) -> Ext {
        Ext::Fin(rint(n))
    }

    pub fn zero() -> Ext {
        Ext::Fin(Rat::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ext::Fin(_))
    }

    pub fn as_fin(&self) -> Option<&Rat> {
        match self {
            Ext::Fin(r) => Some(r),
            _ => None,
        }
    }

    /// Addition of a finite rational; infinities absorb.
    pub fn add_rat(&self, r: &Rat) -> Ext {
        match self {
            Ext::NegInf => Ext::NegInf,
            Ext::PosInf => Ext::PosInf,
            Ext::Fin(v) => Ext::Fin(v + r),
        }
    }

    pub fn sub_rat(&self, r: &Rat) -> Ext {
        self.add_rat(&(-r))
    }

    /// Division by a positive finite rational; infinities absorb.
    pub fn div_pos(&self, r: &Rat) -> Ext {
        debug_assert!(r.is_positive());
        match self {
            Ext::NegInf => Ext::NegInf,
            Ext::PosInf => Ext::PosInf,
            Ext::Fin(v) => Ext::Fin(v / r),
        }
    }

    pub fn min(a: &Ext, b: &Ext) -> Ext {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(a: &Ext, b: &Ext) -> Ext {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    /// Parses `p/q`, `inf` or `-inf`.
    pub fn parse(s: &str) -> Result<Ext, String> {
        match s.trim() {
            "inf" => Ok(Ext::PosInf),
            "-inf" => Ok(Ext::NegInf),
            other => parse_rat(other).map(Ext::Fin),
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::PosInf => write!(f, "inf"),
            Ext::Fin(r) => write!(f, "{}", fmt_rat(r)),
        }
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ext {
    fn cmp(&self, other: &Self) -> Ordering {
        use Ext::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Fin(a), Fin(b)) => a.cmp(b),
        }
    }
}

/// Exact square root of a rational, if it is a perfect square.
pub fn sqrt_exact(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// Compares `sqrt(sq)` with the rational `c`, exactly.
///
/// `sq` must be non-negative; the comparison is decided by sign analysis and
/// squaring, so the result is exact even when the root is irrational.
pub fn cmp_sqrt(sq: &Rat, c: &Rat) -> Ordering {
    debug_assert!(!sq.is_negative());
    if c.is_negative() {
        return Ordering::Greater;
    }
    sq.cmp(&(c * c))
}

/// True iff `sqrt(sq) <= c` exactly.
pub fn sqrt_le(sq: &Rat, c: &Rat) -> bool {
    cmp_sqrt(sq, c) != Ordering::Greater
}

/// True iff `sqrt(sq) >= c` exactly.
pub fn sqrt_ge(sq: &Rat, c: &Rat) -> bool {
    cmp_sqrt(sq, c) != Ordering::Less
}

/// Approximates `sqrt(r)` to within `2^-bits`, rounding down.
///
/// Used only where a value (not a comparison) is required and the root is
/// irrational, e.g. reporting a loss term whose distance is not a perfect
/// square. Every decision procedure in the crate goes through [`cmp_sqrt`]
/// instead.
pub fn sqrt_approx(r: &Rat, bits: u32) -> Rat {
    assert!(!r.is_negative(), "sqrt of negative rational");
    if let Some(e) = sqrt_exact(r) {
        return e;
    }
    // floor(sqrt(n * 4^bits / d)) / 2^bits
    let scale = BigInt::one() << (2 * bits);
    let scaled = (r.numer() * &scale) / r.denom();
    Rat::new(scaled.sqrt(), BigInt::one() << bits)
}

/// Converts an `f64` produced by the numeric search into a nearby rational
/// with the given power-of-two denominator.
pub fn rat_from_f64(x: f64, denom_pow2: u32) -> Rat {
    let scale = (1u64 << denom_pow2) as f64;
    let scaled = (x * scale).round();
    // Clamp to a safe integer range; search values stay far inside this.
    let scaled = scaled.clamp(-9.0e15, 9.0e15) as i64;
    Rat::new(BigInt::from(scaled), BigInt::from(1u64 << denom_pow2))
}

/// Lossy conversion used by the numeric search layer.
pub fn rat_to_f64(r: &Rat) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Good enough for search seeds; exact code paths never round-trip this.
    let nf = n.to_string().parse::<f64>().unwrap_or(0.0);
    let df = d.to_string().parse::<f64>().unwrap_or(1.0);
    nf / df
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-7/2", "5", "0", "-12"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
        assert_eq!(fmt_rat(&parse_rat("6/4").unwrap()), "3/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn ext_ordering() {
        assert!(Ext::NegInf < Ext::int(-100));
        assert!(Ext::int(3) < Ext::PosInf);
        assert_eq!(Ext::max(&Ext::int(1), &Ext::fin(3, 2)), Ext::fin(3, 2));
        assert_eq!(Ext::parse("inf").unwrap(), Ext::PosInf);
        assert_eq!(Ext::parse("-5/3").unwrap(), Ext::fin(-5, 3));
    }

    #[test]
    fn sqrt_comparisons_are_exact() {
        // sqrt(2) vs 3/2: 2 < 9/4
        assert_eq!(cmp_sqrt(&rint(2), &rat(3, 2)), Ordering::Less);
        // sqrt(9/4) == 3/2
        assert_eq!(cmp_sqrt(&rat(9, 4), &rat(3, 2)), Ordering::Equal);
        // sqrt(3) vs 9/5 (criterion from the two-ball lens): 3 < 81/25
        assert!(sqrt_le(&rint(3), &rat(9, 5)));
        // any sqrt vs a negative bound
        assert_eq!(cmp_sqrt(&rint(0), &rint(-1)), Ordering::Greater);
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(sqrt_exact(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(sqrt_exact(&rint(2)), None);
        assert_eq!(sqrt_exact(&rint(0)), Some(rint(0)));
    }

    #[test]
    fn approx_sqrt_brackets_the_root() {
        let r = rint(2);
        let a = sqrt_approx(&r, 40);
        assert!(&a * &a <= r);
        let step = rat(1, 1 << 20);
        let upper = &a + &step;
        assert!(&upper * &upper > r);
    }
}
