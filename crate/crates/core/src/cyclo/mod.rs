//! Exact arithmetic in cyclotomic fields ℚ(ζ_N).
//!
//! Elements are kept as rational combinations of roots of unity `e(k/N)`
//! (the group ring of ℤ/N). Multiplying two roots of unity is then a single
//! exponent addition, which keeps products of S- and T-matrix entries cheap.
//! Equality, zero tests and printing go through the canonical form: the
//! coefficient vector modulo the N-th cyclotomic polynomial Φ_N, taken at the
//! smallest conductor containing the value.

mod parse;
pub(crate) mod poly;
mod root;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use parse::ValueParseError;
pub use root::RootOfUnity;

use crate::linalg;
use poly::{cyclotomic_polynomial, divisors, lcm, totient};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = BigRational;

/// An exact element of a cyclotomic field.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u64,
    /// `(k, c)` pairs meaning `c · e(k/conductor)`; sorted by `k`, no zero `c`.
    terms: Vec<(u64, BigInt)>,
    /// Common positive denominator of all coefficients.
    denom: BigInt,
}

/// Canonical coordinates of a value: power-basis coefficients
/// `1, ζ_M, …, ζ_M^{φ(M)−1}` at the minimal conductor `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub conductor: u64,
    pub coefficients: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            conductor: 1,
            terms: Vec::new(),
            denom: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self::from_parts(1, vec![(0, r.numer().clone())], r.denom().clone())
    }

    /// `e(q) = exp(2πi q)`. The exponent is reduced mod 1.
    pub fn root_of_unity(q: &Rational) -> Self {
        let n = q.denom().to_u64().expect("root of unity order exceeds u64");
        let k = q.numer().mod_floor(q.denom()).to_u64().unwrap();
        Self::from_parts(n, vec![(k, BigInt::one())], BigInt::one())
    }

    /// Shorthand for `root_of_unity(num/den)`.
    pub fn e(num: i64, den: i64) -> Self {
        Self::root_of_unity(&Rational::new(num.into(), den.into()))
    }

    /// Builds an element from raw `(exponent, numerator)` terms over a
    /// common denominator and normalizes it.
    fn from_parts(conductor: u64, terms: Vec<(u64, BigInt)>, denom: BigInt) -> Self {
        assert!(conductor > 0 && !denom.is_zero());
        let mut terms: Vec<(u64, BigInt)> = terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k % conductor, c))
            .collect();
        terms.sort_by_key(|t| t.0);
        let mut merged: Vec<(u64, BigInt)> = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match merged.last_mut() {
                Some((lk, lc)) if *lk == k => *lc += c,
                _ => merged.push((k, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        let mut out = Cyclotomic {
            conductor,
            terms: merged,
            denom,
        };
        out.tidy();
        out
    }

    /// Fixes the sign of the denominator, cancels common content and shrinks
    /// the conductor when every exponent shares a factor with it.
    fn tidy(&mut self) {
        if self.terms.is_empty() {
            self.conductor = 1;
            self.denom = BigInt::one();
            return;
        }
        if self.denom.is_negative() {
            self.denom = -&self.denom;
            for (_, c) in &mut self.terms {
                *c = -&*c;
            }
        }
        if !self.denom.is_one() {
            let mut g = self.denom.clone();
            for (_, c) in &self.terms {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
            if !g.is_one() {
                self.denom /= &g;
                for (_, c) in &mut self.terms {
                    *c /= &g;
                }
            }
        }
        let mut g = self.conductor;
        for (k, _) in &self.terms {
            g = g.gcd(k);
            if g == 1 {
                break;
            }
        }
        if g > 1 {
            self.conductor /= g;
            for (k, _) in &mut self.terms {
                *k /= g;
            }
        }
    }

    /// The conductor of the current representation. Not necessarily minimal.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    fn embedded_terms(&self, target: u64) -> impl Iterator<Item = (u64, &BigInt)> + '_ {
        debug_assert_eq!(target % self.conductor, 0);
        let scale = target / self.conductor;
        self.terms.iter().map(move |(k, c)| (k * scale, c))
    }

    pub fn conjugate(&self) -> Self {
        let n = self.conductor;
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| ((n - k) % n, c.clone()))
            .collect();
        Self::from_parts(n, terms, self.denom.clone())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (*k, c * r.numer()))
            .collect();
        Self::from_parts(self.conductor, terms, &self.denom * r.denom())
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Numerators of the coefficients modulo Φ_N at the current conductor,
    /// length φ(N); the common denominator is `self.denom`.
    fn reduced_numerators(&self) -> Vec<BigInt> {
        let n = self.conductor;
        let phi = totient(n) as usize;
        let mut dense = vec![BigInt::zero(); n as usize];
        for (k, c) in &self.terms {
            dense[*k as usize] += c;
        }
        if phi < dense.len() {
            let cyc = cyclotomic_polynomial(n);
            let nonzero: Vec<(usize, i64)> = cyc[..phi]
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(j, c)| (j, *c))
                .collect();
            for i in (phi..dense.len()).rev() {
                if dense[i].is_zero() {
                    continue;
                }
                let lead = std::mem::take(&mut dense[i]);
                // x^i ≡ −Σ_j Φ_j x^{i−φ+j}
                for &(j, pc) in &nonzero {
                    dense[i - phi + j] -= &lead * pc;
                }
            }
            dense.truncate(phi);
        }
        dense
    }

    pub fn is_zero(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        // a single nonzero root of unity is never zero
        if self.terms.len() == 1 {
            return false;
        }
        self.reduced_numerators().iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|r| r.is_one())
    }

    /// `Some(r)` iff the value is the rational number `r`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.conductor == 1 {
            return Some(Rational::new(self.terms[0].1.clone(), self.denom.clone()));
        }
        let reduced = self.reduced_numerators();
        if reduced[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(reduced[0].clone(), self.denom.clone()))
        } else {
            None
        }
    }

    /// `Some(q)` with `q ∈ [0, 1)` iff the value equals `e(q)`.
    pub fn root_exponent(&self) -> Option<Rational> {
        if self.terms.len() == 1 && self.denom.is_one() {
            let (k, c) = &self.terms[0];
            let base = Rational::new(BigInt::from(*k), BigInt::from(self.conductor));
            let q = if c.is_one() {
                base
            } else if *c == -BigInt::one() {
                base + Rational::new(1.into(), 2.into())
            } else {
                return None;
            };
            return Some(reduce_mod1(&q));
        }
        if self.is_zero() || !(self * &self.conjugate()).is_one() {
            return None;
        }
        let order = lcm(self.conductor, 2);
        (0..order)
            .map(|k| Rational::new(BigInt::from(k), BigInt::from(order)))
            .find(|q| (self - &Cyclotomic::root_of_unity(q)).is_zero())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.terms.len() == 1 {
            let (k, c) = &self.terms[0];
            let n = self.conductor;
            return Some(Self::from_parts(
                n,
                vec![((n - k) % n, self.denom.clone())],
                c.clone(),
            ));
        }
        // Solve (self · y) = 1 in the power basis mod Φ_N.
        let n = self.conductor;
        let phi = totient(n) as usize;
        let mut columns = Vec::with_capacity(phi);
        for j in 0..phi as u64 {
            let shifted = Cyclotomic {
                conductor: n,
                terms: self.terms.iter().map(|(k, c)| ((k + j) % n, c.clone())).collect(),
                denom: self.denom.clone(),
            };
            columns.push(shifted.reduced_rationals());
        }
        let matrix = (0..phi)
            .map(|r| columns.iter().map(|col| col[r].clone()).collect())
            .collect();
        let mut rhs = vec![Rational::zero(); phi];
        rhs[0] = Rational::one();
        let y = linalg::solve(matrix, rhs)?;
        Some(Self::from_rational_terms(n, y.into_iter().enumerate().map(|(j, c)| (j as u64, c))))
    }

    fn from_rational_terms(n: u64, terms: impl Iterator<Item = (u64, Rational)>) -> Self {
        let terms: Vec<(u64, Rational)> = terms.filter(|(_, c)| !c.is_zero()).collect();
        let denom = terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let nums = terms
            .into_iter()
            .map(|(k, c)| (k, c.numer() * (&denom / c.denom())))
            .collect();
        Self::from_parts(n, nums, denom)
    }

    fn reduced_rationals(&self) -> Vec<Rational> {
        self.reduced_numerators()
            .into_iter()
            .map(|c| Rational::new(c, self.denom.clone()))
            .collect()
    }

    /// Power-basis coordinates at the smallest conductor whose field
    /// contains the value.
    pub fn canonical_form(&self) -> CanonicalForm {
        let n = self.conductor;
        let coords = self.reduced_rationals();
        if coords.iter().skip(1).all(Zero::is_zero) {
            return CanonicalForm {
                conductor: 1,
                coefficients: vec![coords[0].clone()],
            };
        }
        for m in divisors(n) {
            if m == n {
                break;
            }
            if m == 1 || m % 4 == 2 {
                continue;
            }
            let phi_m = totient(m) as usize;
            let step = n / m;
            let basis: Vec<Vec<Rational>> = (0..phi_m as u64)
                .map(|j| {
                    Cyclotomic {
                        conductor: n,
                        terms: vec![(j * step, BigInt::one())],
                        denom: BigInt::one(),
                    }
                    .reduced_rationals()
                })
                .collect();
            let matrix = (0..coords.len())
                .map(|r| basis.iter().map(|col| col[r].clone()).collect())
                .collect();
            if let Some(sol) = linalg::solve(matrix, coords.clone()) {
                return CanonicalForm {
                    conductor: m,
                    coefficients: sol,
                };
            }
        }
        CanonicalForm {
            conductor: n,
            coefficients: coords,
        }
    }

    /// Floating-point value, for display only.
    pub fn approx_complex(&self) -> (f64, f64) {
        let denom = self.denom.to_f64().unwrap_or(f64::INFINITY);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in &self.terms {
            let angle = std::f64::consts::TAU * (*k as f64) / (self.conductor as f64);
            let c = c.to_f64().unwrap_or(f64::NAN) / denom;
            re += c * angle.cos();
            im += c * angle.sin();
        }
        (re, im)
    }
}

pub(crate) fn reduce_mod1(q: &Rational) -> Rational {
    q - q.floor()
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<&RootOfUnity> for Cyclotomic {
    fn from(r: &RootOfUnity) -> Self {
        Self::root_of_unity(r.exponent())
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor && self.denom == other.denom && self.terms == other.terms {
            return true;
        }
        (self - other).is_zero()
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.terms.is_empty() {
            return rhs.clone();
        }
        if rhs.terms.is_empty() {
            return self.clone();
        }
        let n = lcm(self.conductor, rhs.conductor);
        let denom = self.denom.lcm(&rhs.denom);
        let sa = &denom / &self.denom;
        let sb = &denom / &rhs.denom;
        let mut terms: Vec<(u64, BigInt)> = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        terms.extend(self.embedded_terms(n).map(|(k, c)| (k, if sa.is_one() { c.clone() } else { c * &sa })));
        terms.extend(rhs.embedded_terms(n).map(|(k, c)| (k, if sb.is_one() { c.clone() } else { c * &sb })));
        Cyclotomic::from_parts(n, terms, denom)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
            denom: self.denom.clone(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return Cyclotomic::zero();
        }
        let n = lcm(self.conductor, rhs.conductor);
        let rhs_terms: Vec<(u64, &BigInt)> = rhs.embedded_terms(n).collect();
        let mut terms = Vec::with_capacity(self.terms.len() * rhs_terms.len());
        for (ka, ca) in self.embedded_terms(n) {
            for (kb, cb) in &rhs_terms {
                terms.push(((ka + kb) % n, ca * *cb));
            }
        }
        Cyclotomic::from_parts(n, terms, &self.denom * &rhs.denom)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self + rhs;
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |acc, x| acc + x)
    }
}

/// Textual form: rationals print as `p/q`, roots of unity as `e(a/b)`, and
/// anything else as the canonical power-basis expansion `c*e(a/b)+…`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        if let Some(q) = self.root_exponent() {
            return write!(f, "{}", RootOfUnity::new(q));
        }
        let canon = self.canonical_form();
        let mut first = true;
        for (j, c) in canon.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{c}")?;
            } else {
                let root = RootOfUnity::new(Rational::new(BigInt::from(j), BigInt::from(canon.conductor)));
                if c.is_one() {
                    write!(f, "{root}")?;
                } else {
                    write!(f, "{c}*{root}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn root_of_unity_examples() {
        assert_eq!(Cyclotomic::root_of_unity(&q(0, 1)), Cyclotomic::one());
        assert_eq!(Cyclotomic::e(1, 2), Cyclotomic::from_integer(-1));
        let i = Cyclotomic::e(1, 4);
        assert_eq!(&i * &i, Cyclotomic::e(1, 2));
        assert_eq!(Cyclotomic::e(5, 4), i);
        assert_eq!(Cyclotomic::e(-3, 4), i);
    }

    #[test]
    fn add_examples() {
        assert!((Cyclotomic::one() + Cyclotomic::from_integer(-1)).is_zero());
        assert_eq!(Cyclotomic::e(1, 3) + Cyclotomic::e(2, 3), Cyclotomic::from_integer(-1));
        let i = Cyclotomic::e(1, 4);
        assert_eq!(&i + &i, i.scale(&q(2, 1)));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(Cyclotomic::e(1, 3) * Cyclotomic::e(1, 3), Cyclotomic::e(2, 3));
        let i = Cyclotomic::e(1, 4);
        let one = Cyclotomic::one();
        assert_eq!((&one + &i) * (&one - &i), Cyclotomic::from_integer(2));
        assert!((Cyclotomic::zero() * Cyclotomic::e(2, 7)).is_zero());
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(Cyclotomic::e(1, 4).conjugate(), Cyclotomic::e(3, 4));
        let r = Cyclotomic::from_rational(&q(-7, 3));
        assert_eq!(r.conjugate(), r);
        let x = Cyclotomic::e(1, 5) + Cyclotomic::e(2, 3).scale(&q(3, 2));
        assert_eq!(x.conjugate().conjugate(), x);
    }

    #[test]
    fn zero_examples() {
        assert!((Cyclotomic::one() + Cyclotomic::e(1, 2)).is_zero());
        assert!((Cyclotomic::e(1, 3) + Cyclotomic::e(2, 3) + Cyclotomic::one()).is_zero());
        assert!(!(Cyclotomic::e(1, 5) - Cyclotomic::e(2, 5)).is_zero());
    }

    #[test]
    fn approx_examples() {
        let (re, im) = Cyclotomic::one().approx_complex();
        assert_eq!((re, im), (1.0, 0.0));
        let (re, im) = Cyclotomic::e(1, 4).approx_complex();
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
        // cos(2π/3) = −1/2, sin(2π/3) = √3/2
        let (re, im) = Cyclotomic::e(1, 3).approx_complex();
        assert!((re + 0.5).abs() < 1e-12);
        assert!((im - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn nth_powers_are_one() {
        for n in 1..=24 {
            for k in 0..n {
                assert!(Cyclotomic::e(k, n).pow(n as u64).is_one(), "e({k}/{n})^{n}");
            }
        }
    }

    #[test]
    fn inverse_of_sums() {
        let one = Cyclotomic::one();
        let x = &one + &Cyclotomic::e(1, 4);
        let inv = x.inverse().unwrap();
        assert!((&x * &inv).is_one());
        // golden ratio 1 + e(1/5) + e(4/5)
        let phi = &one + &(Cyclotomic::e(1, 5) + Cyclotomic::e(4, 5));
        assert!((&phi * &phi - &phi - one.clone()).is_zero());
        let inv = phi.inverse().unwrap();
        assert!((&phi * &inv).is_one());
        assert!(Cyclotomic::zero().inverse().is_none());
        assert_eq!(Cyclotomic::from_rational(&q(2, 3)).inverse().unwrap().to_rational(), Some(q(3, 2)));
    }

    #[test]
    fn canonical_form_is_minimal() {
        // e(1/3) written at conductor 12
        let x = Cyclotomic::e(4, 12) + Cyclotomic::e(1, 4) - Cyclotomic::e(3, 12);
        assert_eq!(x.canonical_form().conductor, 3);
        let sqrt_minus3 = Cyclotomic::e(1, 3) - Cyclotomic::e(2, 3);
        let canon = sqrt_minus3.canonical_form();
        assert_eq!(canon.conductor, 3);
        assert_eq!(canon.coefficients, vec![q(1, 1), q(2, 1)]);
        // i·√2 = e(1/8) + e(3/8) lives in conductor 8
        let y = Cyclotomic::e(1, 8) + Cyclotomic::e(3, 8);
        assert_eq!(y.canonical_form().conductor, 8);
        // −1 = e(1/2) is rational
        assert_eq!(Cyclotomic::e(1, 2).canonical_form().conductor, 1);
    }

    #[test]
    fn root_exponents() {
        assert_eq!(Cyclotomic::e(3, 7).root_exponent(), Some(q(3, 7)));
        assert_eq!((-Cyclotomic::e(1, 3)).root_exponent(), Some(q(5, 6)));
        // e(2/3) written as −1 − e(1/3)
        let x = -(Cyclotomic::one() + Cyclotomic::e(1, 3));
        assert_eq!(x.root_exponent(), Some(q(2, 3)));
        assert_eq!(Cyclotomic::from_integer(2).root_exponent(), None);
        assert_eq!((Cyclotomic::one() + Cyclotomic::e(1, 4)).root_exponent(), None);
    }

    #[test]
    fn display_forms() {
        assert_eq!(Cyclotomic::one().to_string(), "1");
        assert_eq!(Cyclotomic::e(1, 2).to_string(), "-1");
        assert_eq!(Cyclotomic::e(1, 4).to_string(), "e(1/4)");
        assert_eq!(Cyclotomic::zero().to_string(), "0");
        let x = Cyclotomic::one() + Cyclotomic::e(1, 4);
        assert_eq!(x.to_string(), "1+e(1/4)");
        let y = Cyclotomic::from_rational(&q(1, 2)) - Cyclotomic::e(1, 5).scale(&q(3, 1));
        assert_eq!(y.to_string(), "1/2+-3*e(1/5)");
    }
}
