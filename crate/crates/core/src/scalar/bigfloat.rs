use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use dashu_base::{BitTest, UnsignedAbs};
use num_traits::{One, Signed, Zero};

use super::{format_significant, scale_pow2, Rational, Scalar, ScalarKind, DEFAULT_BIGFLOAT_BITS};

type Inner = FBig<HalfEven, 2>;

/// Binary floating point number with a fixed `BITS`-bit significand and
/// round-half-even arithmetic.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct BigFloat<const BITS: u32 = DEFAULT_BIGFLOAT_BITS>(Inner);

impl<const BITS: u32> BigFloat<BITS> {
    fn wrap(v: Inner) -> Self {
        BigFloat(v.with_precision(BITS as usize).value())
    }

    /// Decimal digits needed for the canonical text to round-trip.
    pub const fn round_trip_digits() -> usize {
        // ceil(BITS · log10 2) + 1, with log10 2 < 0.30103.
        (BITS as usize * 30103).div_ceil(100_000) + 1
    }
}

impl<const BITS: u32> fmt::Debug for BigFloat<BITS> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl<const BITS: u32> Scalar for BigFloat<BITS> {
    fn kind() -> ScalarKind {
        ScalarKind::BigFloat {
            precision_bits: BITS,
        }
    }

    /// Correctly rounded conversion: the quotient is computed with at least
    /// two extra bits plus a sticky bit before the final rounding.
    fn from_rational(value: &Rational) -> Self {
        if value.is_zero() {
            return Self::zero();
        }
        let magnitude_bits =
            value.numerator().bit_len() as i64 - value.denominator().bit_len() as i64;
        let shift = BITS as i64 + 3 - magnitude_bits;
        let scaled = scale_pow2(value.abs(), shift);
        let num = scaled.numerator().unsigned_abs();
        let den = scaled.denominator();
        let mut significand = IBig::from((&num / den) << 1);
        if !(&num % den).is_zero() {
            significand += IBig::ONE;
        }
        if value.is_negative() {
            significand = -significand;
        }
        let exact = Inner::from_parts(significand, -(shift as isize) - 1);
        Self::wrap(exact)
    }

    fn to_rational(&self) -> Option<Rational> {
        let repr = self.0.repr();
        if repr.is_infinite() {
            return None;
        }
        let significand = Rational::from(repr.significand().clone());
        Some(scale_pow2(significand, repr.exponent() as i64))
    }

    fn to_canonical_string(&self) -> String {
        match self.to_rational() {
            Some(r) => format_significant(&r, Self::round_trip_digits()),
            None => "inf".to_string(),
        }
    }
}

impl<const BITS: u32> Zero for BigFloat<BITS> {
    fn zero() -> Self {
        Self::wrap(Inner::ZERO)
    }

    fn is_zero(&self) -> bool {
        *self.0.repr().significand() == IBig::ZERO
    }
}

impl<const BITS: u32> One for BigFloat<BITS> {
    fn one() -> Self {
        Self::wrap(Inner::ONE)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<const BITS: u32> $trait for BigFloat<BITS> {
            type Output = Self;

            fn $method(self, rhs: Self) -> Self {
                Self::wrap($trait::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl<const BITS: u32> Neg for BigFloat<BITS> {
    type Output = Self;

    fn neg(self) -> Self {
        BigFloat(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    type F212 = BigFloat<212>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_parts_signed(n.into(), d.into())
    }

    #[test]
    fn conversion_is_correctly_rounded() {
        // 1/3 = 0.0101...: the rounded value is within half an ulp.
        let third = F212::from_rational(&q(1, 3)).to_rational().unwrap();
        let err = (third - q(1, 3)).abs();
        assert!(err <= scale_pow2(q(1, 3), -212));
        // Exactly representable values survive untouched.
        assert_eq!(F212::from_rational(&q(-5, 8)).to_rational().unwrap(), q(-5, 8));
    }

    #[test]
    fn agrees_with_binary64_at_53_bits() {
        for (n, d) in [(1, 3), (2, 7), (-10, 11), (1, 10), (123456789, 1000)] {
            let big = BigFloat::<53>::from_rational(&q(n, d)).to_rational().unwrap();
            let f = crate::scalar::f64_to_rational(n as f64 / d as f64).unwrap();
            assert_eq!(big, f, "{n}/{d}");
        }
    }

    #[test]
    fn arithmetic_keeps_precision() {
        let a: F212 = parse_scalar("0.1").unwrap();
        let b: F212 = parse_scalar("0.2").unwrap();
        let sum = (a + b).to_rational().unwrap();
        let err = ((sum - q(3, 10)) / q(3, 10)).abs();
        assert!(err < scale_pow2(Rational::one(), -209));
        assert!(F212::zero().is_zero());
        assert_eq!((F212::one() / F212::from_integer(4)).to_rational().unwrap(), q(1, 4));
    }

    #[test]
    fn canonical_text_round_trips() {
        let x = F212::from_rational(&q(22, 7));
        let text = x.to_canonical_string();
        assert_eq!(F212::round_trip_digits(), 65);
        assert_eq!(parse_scalar::<F212>(&text).unwrap(), x);
    }
}
