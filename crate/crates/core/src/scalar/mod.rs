//! Scalar abstraction shared by every decomposition routine.
//!
//! All algorithms in this crate are generic over [`Scalar`], which is
//! implemented for IEEE binary floats, exact rationals, fixed-precision
//! binary big-floats, and an operation-counting wrapper used to audit
//! complexity claims.

mod bigfloat;
mod counting;
mod float;
mod rational;

use std::cmp::Ordering;
use std::fmt::{self, Debug};
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_base::{BitTest, UnsignedAbs};
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, SbdError};

pub use bigfloat::BigFloat;
pub use counting::{operation_count, reset_operation_count, Counted};

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = RBig;

/// Default working precision of [`BigFloat`], about 64 decimal digits.
pub const DEFAULT_BIGFLOAT_BITS: u32 = 212;

/// Unit roundoff of binary64 as used in the accuracy bounds: 2⁻⁵².
pub const F64_EPSILON: f64 = f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Binary32,
    Binary64,
    ExactRational,
    BigFloat { precision_bits: u32 },
}

impl ScalarKind {
    pub fn is_exact(self) -> bool {
        matches!(self, ScalarKind::ExactRational)
    }

    /// Parses the command-line spelling of a scalar kind.
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "f32" | "binary32" => Some(ScalarKind::Binary32),
            "f64" | "binary64" => Some(ScalarKind::Binary64),
            "rational" | "exact" => Some(ScalarKind::ExactRational),
            "bigfloat" => Some(ScalarKind::BigFloat {
                precision_bits: DEFAULT_BIGFLOAT_BITS,
            }),
            _ => None,
        }
    }
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarKind::Binary32 => f.write_str("binary32"),
            ScalarKind::Binary64 => f.write_str("binary64"),
            ScalarKind::ExactRational => f.write_str("rational"),
            ScalarKind::BigFloat { precision_bits } => write!(f, "bigfloat{precision_bits}"),
        }
    }
}

/// Field-like scalar the decomposition code is written against.
///
/// Values are immutable; arithmetic consumes operands by value. Exact
/// implementations must be error-free for `+ - * /` on finite values.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn kind() -> ScalarKind;

    /// Nearest representable value (exact for exact kinds).
    fn from_rational(value: &Rational) -> Self;

    /// Exact value of `self`, or `None` for non-finite values.
    fn to_rational(&self) -> Option<Rational>;

    /// Canonical text: `p/q` or `p` for rationals, shortest round-trip
    /// decimal for floats.
    fn to_canonical_string(&self) -> String;

    fn from_integer(value: i64) -> Self {
        Self::from_rational(&Rational::from(value))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::from_parts_signed(IBig::from(num), IBig::from(den)))
    }

    /// Division that refuses an exactly-zero divisor.
    fn try_div(self, rhs: Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }

    /// `self^exp` by binary powering; `x^0 = 1`.
    fn powi(&self, exp: u32) -> Self {
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r * base.clone(),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        result.unwrap_or_else(Self::one)
    }
}

/// Parses `text` into the scalar kind `S` (decimals and `p/q` fractions).
///
/// Exact kinds parse decimals exactly (`0.1` is `1/10`); float kinds round
/// the exact value to nearest.
pub fn parse_scalar<S: Scalar>(text: &str) -> Result<S> {
    parse_rational(text).map(|r| S::from_rational(&r))
}

/// Parses a decimal literal (optionally with exponent) or a fraction `p/q`
/// into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    match trimmed.split_once('/') {
        Some((num, den)) => {
            let num = parse_decimal(num.trim(), text)?;
            let den = parse_decimal(den.trim(), text)?;
            if den.is_zero() {
                return Err(SbdError::ZeroDenominator {
                    text: text.to_string(),
                });
            }
            Ok(num / den)
        }
        None => parse_decimal(trimmed, text),
    }
}

const MAX_DECIMAL_EXPONENT: i64 = 10_000;

fn parse_decimal(lit: &str, original: &str) -> Result<Rational> {
    let fail = |reason: &str| SbdError::Parse {
        text: original.to_string(),
        reason: reason.to_string(),
    };
    let (negative, body) = match lit.as_bytes().first() {
        Some(b'-') => (true, &lit[1..]),
        Some(b'+') => (false, &lit[1..]),
        Some(_) => (false, lit),
        None => return Err(fail("empty literal")),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(pos) => {
            let exp_text = &body[pos + 1..];
            let exp: i64 = exp_text
                .parse()
                .map_err(|_| fail("malformed exponent"))?;
            if exp.abs() > MAX_DECIMAL_EXPONENT {
                return Err(fail("exponent out of range"));
            }
            (&body[..pos], exp)
        }
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(fail("no digits"));
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(fail("unexpected character"));
    }
    let digits = format!("{int_part}{frac_part}");
    let magnitude = UBig::from_str_radix(&digits, 10).map_err(|_| fail("no digits"))?;
    let mut value = IBig::from(magnitude);
    if negative {
        value = -value;
    }
    let scale = exponent - frac_part.len() as i64;
    let r = if scale >= 0 {
        Rational::from(value * pow10_int(scale as usize))
    } else {
        Rational::from_parts(value, pow10_int((-scale) as usize))
    };
    Ok(r)
}

fn pow10_int(k: usize) -> UBig {
    UBig::from(10u8).pow(k)
}

/// Canonical text of an exact rational: `p` for integers, `p/q` otherwise.
pub fn rational_to_string(r: &Rational) -> String {
    if r.is_int() {
        r.numerator().to_string()
    } else {
        format!("{}/{}", r.numerator(), r.denominator())
    }
}

/// Formats `r` in scientific notation rounded (half-even) to `digits`
/// significant decimal digits, e.g. `1.2345e-3`.
pub fn format_significant(r: &Rational, digits: usize) -> String {
    assert!(digits > 0);
    if r.is_zero() {
        return "0".to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let a = r.abs();
    // Decimal exponent e with 10^e <= a < 10^(e+1).
    let mut e = a.numerator().to_string().len() as i64 - a.denominator().to_string().len() as i64;
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from(pow10_int(k as usize))
        } else {
            Rational::from_parts(IBig::ONE, pow10_int((-k) as usize))
        }
    };
    while a < pow10(e) {
        e -= 1;
    }
    while a >= pow10(e + 1) {
        e += 1;
    }
    // Scale so that the integer part carries exactly `digits` digits.
    let scaled = &a * pow10(digits as i64 - 1 - e);
    let num = scaled.numerator().unsigned_abs();
    let den = scaled.denominator();
    let (q, rem) = (&num / den, &num % den);
    let twice = rem * UBig::from(2u8);
    let mut m = match twice.cmp(den) {
        Ordering::Less => q,
        Ordering::Greater => q + UBig::ONE,
        Ordering::Equal if q.bit(0) => q + UBig::ONE,
        Ordering::Equal => q,
    };
    if m.to_string().len() > digits {
        m /= UBig::from(10u8);
        e += 1;
    }
    let text = m.to_string();
    let (lead, rest) = text.split_at(1);
    if rest.is_empty() {
        format!("{sign}{lead}e{e}")
    } else {
        format!("{sign}{lead}.{rest}e{e}")
    }
}

/// Componentwise relative error `|x̂ − x| / |x|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelativeError {
    Finite(Rational),
    /// The exact value is zero but the computed one is not, or the computed
    /// value is not finite.
    Infinite,
}

impl RelativeError {
    pub fn zero() -> Self {
        RelativeError::Finite(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RelativeError::Finite(r) if r.is_zero())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RelativeError::Finite(r) => num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::INFINITY),
            RelativeError::Infinite => f64::INFINITY,
        }
    }

    /// `true` when the error does not exceed `bound` (compared exactly).
    pub fn within(&self, bound: f64) -> bool {
        match (self, f64_to_rational(bound)) {
            (RelativeError::Infinite, _) => false,
            (RelativeError::Finite(_), None) => true,
            (RelativeError::Finite(r), Some(b)) => *r <= b,
        }
    }
}

impl PartialOrd for RelativeError {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RelativeError {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (RelativeError::Infinite, RelativeError::Infinite) => Ordering::Equal,
            (RelativeError::Infinite, _) => Ordering::Greater,
            (_, RelativeError::Infinite) => Ordering::Less,
            (RelativeError::Finite(a), RelativeError::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for RelativeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelativeError::Infinite => f.write_str("inf"),
            RelativeError::Finite(r) if r.is_zero() => f.write_str("0"),
            RelativeError::Finite(_) => write!(f, "{:e}", self.to_f64()),
        }
    }
}

/// Relative error of `computed` against the exact value, evaluated in exact
/// arithmetic after lifting `computed` exactly.
pub fn relative_error<S: Scalar>(computed: &S, exact: &Rational) -> RelativeError {
    let Some(lifted) = computed.to_rational() else {
        return RelativeError::Infinite;
    };
    if exact.is_zero() {
        return if lifted.is_zero() {
            RelativeError::zero()
        } else {
            RelativeError::Infinite
        };
    }
    RelativeError::Finite(((lifted - exact) / exact).abs())
}

/// Exact value of a finite binary64 number.
pub fn f64_to_rational(v: f64) -> Option<Rational> {
    if !v.is_finite() {
        return None;
    }
    if v == 0.0 {
        return Some(Rational::zero());
    }
    let bits = v.to_bits();
    let negative = bits >> 63 == 1;
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mantissa, exp) = if raw_exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), raw_exp - 1075)
    };
    let m = IBig::from(mantissa);
    Some(scale_pow2(Rational::from(if negative { -m } else { m }), exp))
}

/// `r · 2^exp`, exactly.
pub(crate) fn scale_pow2(r: Rational, exp: i64) -> Rational {
    if exp >= 0 {
        r * Rational::from(UBig::ONE << exp as usize)
    } else {
        r / Rational::from(UBig::ONE << (-exp) as usize)
    }
}
