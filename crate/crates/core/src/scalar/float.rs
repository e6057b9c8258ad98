use super::{f64_to_rational, Rational, Scalar, ScalarKind};

impl Scalar for f64 {
    fn kind() -> ScalarKind {
        ScalarKind::Binary64
    }

    fn from_rational(value: &Rational) -> Self {
        value.to_f64().value()
    }

    fn to_rational(&self) -> Option<Rational> {
        f64_to_rational(*self)
    }

    fn to_canonical_string(&self) -> String {
        format!("{self:?}")
    }
}

impl Scalar for f32 {
    fn kind() -> ScalarKind {
        ScalarKind::Binary32
    }

    fn from_rational(value: &Rational) -> Self {
        value.to_f32().value()
    }

    fn to_rational(&self) -> Option<Rational> {
        f64_to_rational(f64::from(*self))
    }

    fn to_canonical_string(&self) -> String {
        format!("{self:?}")
    }
}
