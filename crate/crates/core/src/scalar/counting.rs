use std::cell::Cell;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Rational, Scalar, ScalarKind};

thread_local! {
    static OPS: Cell<u64> = const { Cell::new(0) };
}

/// Arithmetic operations (`+ - * /` and negation) performed by [`Counted`]
/// values on the current thread since the last reset.
pub fn operation_count() -> u64 {
    OPS.with(Cell::get)
}

pub fn reset_operation_count() {
    OPS.with(|c| c.set(0));
}

fn tick() {
    OPS.with(|c| c.set(c.get() + 1));
}

/// Instrumented scalar: behaves like `T` and counts every arithmetic
/// operation in a thread-local counter. Conversions and comparisons are
/// free.
#[derive(Debug, Clone, PartialEq, PartialOrd)]
pub struct Counted<T>(pub T);

impl<T: Scalar> Scalar for Counted<T> {
    fn kind() -> ScalarKind {
        T::kind()
    }

    fn from_rational(value: &Rational) -> Self {
        Counted(T::from_rational(value))
    }

    fn to_rational(&self) -> Option<Rational> {
        self.0.to_rational()
    }

    fn to_canonical_string(&self) -> String {
        self.0.to_canonical_string()
    }
}

impl<T: Scalar> Zero for Counted<T> {
    fn zero() -> Self {
        Counted(T::zero())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl<T: Scalar> One for Counted<T> {
    fn one() -> Self {
        Counted(T::one())
    }
}

macro_rules! counted_binop {
    ($trait:ident, $method:ident) => {
        impl<T: Scalar> $trait for Counted<T> {
            type Output = Self;

            fn $method(self, rhs: Self) -> Self {
                tick();
                Counted($trait::$method(self.0, rhs.0))
            }
        }
    };
}

counted_binop!(Add, add);
counted_binop!(Sub, sub);
counted_binop!(Mul, mul);
counted_binop!(Div, div);

impl<T: Scalar> Neg for Counted<T> {
    type Output = Self;

    fn neg(self) -> Self {
        tick();
        Counted(-self.0)
    }
}
