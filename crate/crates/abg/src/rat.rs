use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Exact rational number over `i128`, always stored reduced with a positive
/// denominator. Arithmetic is checked; the coordinates produced by the
/// constructions in this crate keep numerators and denominators far below the
/// overflow limit, so an overflow indicates a programming error and panics.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rat {
    num: i128,
    den: i128,
}

impl Rat {
    pub const ZERO: Rat = Rat { num: 0, den: 1 };
    pub const ONE: Rat = Rat { num: 1, den: 1 };
    pub const HALF: Rat = Rat { num: 1, den: 2 };

    pub fn new(num: i128, den: i128) -> Rat {
        assert!(den != 0, "zero denominator");
        let g = num.gcd(&den);
        let sign = if den < 0 { -1 } else { 1 };
        Rat {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn from_int(n: i128) -> Rat {
        Rat { num: n, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }

    /// True when the value is an integer.
    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    /// True when the value is an odd multiple of one half.
    pub fn is_half_integral(&self) -> bool {
        self.den == 2
    }

    pub fn floor(&self) -> i128 {
        self.num.div_euclid(self.den)
    }

    pub fn abs(&self) -> Rat {
        Rat {
            num: self.num.abs(),
            den: self.den,
        }
    }

    pub fn recip(&self) -> Rat {
        assert!(self.num != 0, "division by zero");
        let sign = if self.num < 0 { -1 } else { 1 };
        Rat {
            num: sign * self.den,
            den: sign * self.num,
        }
    }

    pub fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    fn checked(num: Option<i128>, den: Option<i128>) -> Rat {
        let (num, den) = (
            num.expect("rational overflow"),
            den.expect("rational overflow"),
        );
        Rat::new(num, den)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        // Pre-divide by the denominator gcd to keep intermediates small.
        let g = self.den.gcd(&rhs.den);
        let (da, db) = (self.den / g, rhs.den / g);
        Rat::checked(
            self.num
                .checked_mul(db)
                .and_then(|a| rhs.num.checked_mul(da).and_then(|b| a.checked_add(b))),
            self.den.checked_mul(db),
        )
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        self + (-rhs)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        Rat::checked(
            (self.num / g1).checked_mul(rhs.num / g2),
            (self.den / g2).checked_mul(rhs.den / g1),
        )
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        self * rhs.recip()
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -self.num,
            den: self.den,
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        let lhs = self.num.checked_mul(other.den).expect("rational overflow");
        let rhs = other.num.checked_mul(self.den).expect("rational overflow");
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Rat {
    /// Always renders with an explicit denominator, e.g. `3/1` or `-1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Parses the `p/q` form produced by `Display`. A bare integer without
    /// `/q` is rejected so that serialized files stay canonical.
    fn from_str(s: &str) -> Result<Rat> {
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| Error::ParseError(format!("expected p/q rational, got {s:?}")))?;
        let num: i128 = n
            .parse()
            .map_err(|_| Error::ParseError(format!("bad numerator in {s:?}")))?;
        let den: i128 = d
            .parse()
            .map_err(|_| Error::ParseError(format!("bad denominator in {s:?}")))?;
        if den <= 0 {
            return Err(Error::ParseError(format!(
                "denominator must be positive in {s:?}"
            )));
        }
        let r = Rat::new(num, den);
        if r.num != num || r.den != den {
            return Err(Error::ParseError(format!("rational {s:?} is not reduced")));
        }
        Ok(r)
    }
}

/// A point of the ambient space with exact rational coordinates.
/// Lexicographic comparison on coordinates gives the total order used to
/// canonicalize vertex tables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVec(pub Vec<Rat>);

impl RatVec {
    pub fn zeros(dim: usize) -> RatVec {
        RatVec(vec![Rat::ZERO; dim])
    }

    pub fn from_ints(coords: &[i128]) -> RatVec {
        RatVec(coords.iter().map(|&c| Rat::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &RatVec) -> RatVec {
        debug_assert_eq!(self.dim(), other.dim());
        RatVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &RatVec) -> RatVec {
        debug_assert_eq!(self.dim(), other.dim());
        RatVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, c: Rat) -> RatVec {
        RatVec(self.0.iter().map(|&a| a * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

/// Barycenter of a nonempty list of points.
pub fn barycenter(points: &[RatVec]) -> RatVec {
    assert!(!points.is_empty());
    let dim = points[0].dim();
    let mut sum = RatVec::zeros(dim);
    for p in points {
        sum = sum.add(p);
    }
    sum.scale(Rat::new(1, points.len() as i128))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_sign() {
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
        assert_eq!(Rat::new(1, -2), Rat::new(-1, 2));
        assert_eq!(Rat::new(-3, -6), Rat::HALF);
        assert_eq!(Rat::new(0, 7), Rat::ZERO);
    }

    #[test]
    fn arithmetic() {
        let a = Rat::new(1, 6);
        let b = Rat::new(1, 10);
        assert_eq!(a + b, Rat::new(4, 15));
        assert_eq!(a - b, Rat::new(1, 15));
        assert_eq!(a * b, Rat::new(1, 60));
        assert_eq!(a / b, Rat::new(5, 3));
        assert_eq!(-a, Rat::new(-1, 6));
    }

    #[test]
    fn floor_and_flags() {
        assert_eq!(Rat::new(-1, 2).floor(), -1);
        assert_eq!(Rat::new(7, 2).floor(), 3);
        assert_eq!(Rat::from_int(-3).floor(), -3);
        assert!(Rat::from_int(4).is_integral());
        assert!(Rat::new(3, 2).is_half_integral());
        assert!(!Rat::new(1, 3).is_integral());
        assert!(!Rat::new(1, 3).is_half_integral());
    }

    #[test]
    fn ordering_is_numeric() {
        let mut v = vec![Rat::new(1, 2), Rat::new(-1, 3), Rat::from_int(0)];
        v.sort();
        assert_eq!(v, vec![Rat::new(-1, 3), Rat::ZERO, Rat::HALF]);
    }

    #[test]
    fn display_roundtrip() {
        for r in [Rat::new(-7, 3), Rat::ZERO, Rat::from_int(12)] {
            let s = r.to_string();
            assert_eq!(s.parse::<Rat>().unwrap(), r);
        }
        assert!("3".parse::<Rat>().is_err());
        assert!("2/4".parse::<Rat>().is_err());
        assert!("1/-2".parse::<Rat>().is_err());
    }

    #[test]
    fn ratvec_lex_order() {
        let a = RatVec::from_ints(&[0, 1]);
        let b = RatVec(vec![Rat::ZERO, Rat::new(3, 2)]);
        assert!(a < b);
        assert_eq!(barycenter(&[a.clone(), b]).0[1], Rat::new(5, 4));
    }
}
