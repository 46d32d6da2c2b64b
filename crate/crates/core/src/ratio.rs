use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Non-negative fraction kept in lowest terms with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExactRatio {
    num: u128,
    den: u128,
}

/// Stein's binary gcd.
pub fn binary_gcd(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl ExactRatio {
    pub const ONE: ExactRatio = ExactRatio { num: 1, den: 1 };

    /// Panics if `den` is zero.
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = binary_gcd(num, den);
        ExactRatio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn integer(n: u128) -> Self {
        ExactRatio { num: n, den: 1 }
    }

    pub fn numerator(&self) -> u128 {
        self.num
    }

    pub fn denominator(&self) -> u128 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// Exact product; cross-reduces first so intermediates stay small.
    pub fn checked_mul(self, rhs: ExactRatio) -> Result<ExactRatio> {
        let g1 = binary_gcd(self.num, rhs.den);
        let g2 = binary_gcd(rhs.num, self.den);
        let (a, d) = (self.num / g1.max(1), rhs.den / g1.max(1));
        let (c, b) = (rhs.num / g2.max(1), self.den / g2.max(1));
        let num = a
            .checked_mul(c)
            .ok_or(Error::overflow("ratio product", a))?;
        let den = b
            .checked_mul(d)
            .ok_or(Error::overflow("ratio product", b))?;
        Ok(ExactRatio { num, den })
    }

    /// Exact quotient. Panics when `rhs` is zero.
    pub fn checked_div(self, rhs: ExactRatio) -> Result<ExactRatio> {
        assert!(rhs.num != 0, "division by zero ratio");
        self.checked_mul(ExactRatio {
            num: rhs.den,
            den: rhs.num,
        })
    }

    /// Renders `num/den`, or just `num` when `compact` and the value is integral.
    pub fn render(&self, compact: bool) -> String {
        if compact && self.den == 1 {
            self.num.to_string()
        } else {
            format!("{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for ExactRatio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a fraction: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: u128 = n.parse().map_err(|_| bad())?;
        let den: u128 = d.parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        Ok(ExactRatio::new(num, den))
    }
}

impl Serialize for ExactRatio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRatio {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn euclid(a: u128, b: u128) -> u128 {
        if b == 0 {
            a
        } else {
            euclid(b, a % b)
        }
    }

    #[test]
    fn reduces_on_construction() {
        let r = ExactRatio::new(45 * 4, 60);
        assert_eq!((r.numerator(), r.denominator()), (3, 1));
        assert!(r.is_integer());
        let r = ExactRatio::new(18, 10);
        assert_eq!(r.to_string(), "9/5");
        assert_eq!(ExactRatio::new(0, 7), ExactRatio::integer(0));
    }

    #[test]
    fn render_modes() {
        assert_eq!(ExactRatio::integer(12).render(true), "12");
        assert_eq!(ExactRatio::integer(12).render(false), "12/1");
        assert_eq!(ExactRatio::new(5, 2).render(true), "5/2");
    }

    #[test]
    fn product_and_quotient() {
        let a = ExactRatio::new(5, 2);
        let b = ExactRatio::integer(12);
        assert_eq!(a.checked_mul(b).unwrap(), ExactRatio::integer(30));
        assert_eq!(b.checked_div(a).unwrap(), ExactRatio::new(24, 5));
    }

    #[test]
    fn parse() {
        assert_eq!("9/5".parse::<ExactRatio>().unwrap(), ExactRatio::new(9, 5));
        assert_eq!("12".parse::<ExactRatio>().unwrap(), ExactRatio::integer(12));
        assert!("1/0".parse::<ExactRatio>().is_err());
        assert!("x/2".parse::<ExactRatio>().is_err());
    }

    proptest! {
        #[test]
        fn binary_gcd_matches_euclid(a in any::<u128>(), b in any::<u128>()) {
            prop_assert_eq!(binary_gcd(a, b), euclid(a, b));
        }

        #[test]
        fn always_canonical(num in 0u128..1 << 100, den in 1u128..1 << 100) {
            let r = ExactRatio::new(num, den);
            prop_assert!(r.denominator() >= 1);
            prop_assert_eq!(euclid(r.numerator(), r.denominator()), 1);
            prop_assert_eq!(den % r.denominator(), 0);
            prop_assert_eq!(r.numerator() * (den / r.denominator()), num);
            let back: ExactRatio = r.to_string().parse().unwrap();
            prop_assert_eq!(back, r);
        }
    }
}
