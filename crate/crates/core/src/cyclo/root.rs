use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{reduce_mod1, Cyclotomic, Rational};

/// A root of unity `e(q)`, stored by its exponent `q ∈ [0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity(Rational);

impl RootOfUnity {
    pub fn new(q: Rational) -> Self {
        RootOfUnity(reduce_mod1(&q))
    }

    pub fn one() -> Self {
        RootOfUnity(Rational::zero())
    }

    pub fn from_fraction(num: i64, den: i64) -> Self {
        Self::new(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn exponent(&self) -> &Rational {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_zero()
    }

    pub fn inverse(&self) -> Self {
        Self::new(-&self.0)
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::new(&self.0 * Rational::from_integer(BigInt::from(k)))
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        Cyclotomic::root_of_unity(&self.0)
    }
}

impl Mul for &RootOfUnity {
    type Output = RootOfUnity;

    fn mul(self, rhs: &RootOfUnity) -> RootOfUnity {
        RootOfUnity::new(&self.0 + &rhs.0)
    }
}

/// Always `e(a/b)` with an explicit denominator, e.g. `e(0/1)` for 1.
impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({}/{})", self.0.numer(), self.0.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_exponent() {
        assert_eq!(RootOfUnity::from_fraction(5, 4), RootOfUnity::from_fraction(1, 4));
        assert_eq!(RootOfUnity::from_fraction(-1, 4).to_string(), "e(3/4)");
        assert_eq!(RootOfUnity::one().to_string(), "e(0/1)");
        assert_eq!(RootOfUnity::from_fraction(2, 4).to_string(), "e(1/2)");
    }

    #[test]
    fn arithmetic_matches_cyclotomic() {
        let a = RootOfUnity::from_fraction(1, 6);
        let b = RootOfUnity::from_fraction(3, 4);
        assert_eq!((&a * &b).to_cyclotomic(), &a.to_cyclotomic() * &b.to_cyclotomic());
        assert_eq!(a.inverse().to_cyclotomic(), a.to_cyclotomic().conjugate());
        assert!(a.pow(6).is_one());
    }
}
