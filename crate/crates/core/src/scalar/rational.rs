use super::{rational_to_string, Rational, Scalar, ScalarKind};

impl Scalar for Rational {
    fn kind() -> ScalarKind {
        ScalarKind::ExactRational
    }

    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn to_canonical_string(&self) -> String {
        rational_to_string(self)
    }
}
