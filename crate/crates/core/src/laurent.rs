//! Integer Laurent polynomials in one variable `v`.
//!
//! `v` plays the role of a square root of the residue cardinality `q`, so a
//! parameter `q_s = q^{d(s)}` is the monomial `v^{2 d(s)}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact element of `Z[v, v^-1]`.
///
/// Stored densely from the lowest nonzero exponent; both ends of `coeffs` are
/// nonzero, and the zero polynomial has empty `coeffs`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentScalar {
    low: i32,
    coeffs: Vec<i64>,
}

#[inline]
fn checked(op: Option<i64>) -> i64 {
    op.expect("Laurent coefficient overflow")
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * v^exp`.
    pub fn monomial(coeff: i64, exp: i32) -> Self {
        if coeff == 0 {
            return Self::zero();
        }
        Self { low: exp, coeffs: vec![coeff] }
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `v^exp`.
    pub fn v_pow(exp: i32) -> Self {
        Self::monomial(1, exp)
    }

    /// The parameter `q^d = v^{2d}`.
    pub fn q_pow(d: u32) -> Self {
        Self::v_pow(2 * d as i32)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc += &Self::monomial(c, e);
        }
        acc
    }

    fn normalize(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| **c == 0).count();
        if lead == self.coeffs.len() {
            return Self::zero();
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs == [1]
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        let idx = exp - self.low;
        if idx < 0 {
            return 0;
        }
        self.coeffs.get(idx as usize).copied().unwrap_or(0)
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(move |(i, c)| (self.low + i as i32, *c))
    }

    /// True when no negative power of `v` occurs.
    pub fn is_polynomial(&self) -> bool {
        self.is_zero() || self.low >= 0
    }

    /// True when only even powers of `v` occur, i.e. the value lies in `Z[q, q^-1]`.
    pub fn is_in_q(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| checked(x.checked_mul(c))).collect(),
        }
    }

    /// Value at `v = 0`; `None` when negative powers are present.
    pub fn at_zero(&self) -> Option<i64> {
        if !self.is_polynomial() {
            return None;
        }
        Some(self.coeff(0))
    }

    /// Value at `v = 0` read in `F_p`.
    pub fn at_zero_mod(&self, p: u64) -> Option<u64> {
        self.at_zero().map(|c| c.rem_euclid(p as i64) as u64)
    }

    pub fn eval_f64(&self, v: f64) -> f64 {
        self.terms().map(|(e, c)| c as f64 * v.powi(e)).sum()
    }

    /// Exact evaluation at a nonzero rational point.
    pub fn eval_rational(&self, v: &BigRational) -> BigRational {
        assert!(!v.is_zero() || self.is_polynomial(), "evaluation of negative powers at zero");
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            let pow = if e >= 0 {
                num_traits::pow(v.clone(), e as usize)
            } else {
                num_traits::pow(v.recip(), (-e) as usize)
            };
            acc += pow * BigRational::from_integer(BigInt::from(c));
        }
        acc
    }

    /// Substitutes `v -> -v`.
    pub fn conj_sign(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, if e % 2 == 0 { c } else { -c })))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        let mut coeffs = vec![0i64; (high - low + 1) as usize];
        for (src, off) in [(self, self.low - low), (rhs, rhs.low - low)] {
            for (i, c) in src.coeffs.iter().enumerate() {
                let slot = &mut coeffs[off as usize + i];
                *slot = checked(slot.checked_add(*c));
            }
        }
        Self { low, coeffs }.normalize()
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let slot = &mut coeffs[i + j];
                *slot = checked(slot.checked_add(checked(a.checked_mul(*b))));
            }
        }
        Self { low: self.low + rhs.low, coeffs }.normalize()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let sign = match (first, c < 0) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            let mag = c.unsigned_abs();
            match (e, mag) {
                (0, m) => write!(f, "{sign}{m}")?,
                (_, 1) if e == 1 => write!(f, "{sign}v")?,
                (_, 1) => write!(f, "{sign}v^{e}")?,
                (1, m) => write!(f, "{sign}{m}v")?,
                (_, m) => write!(f, "{sign}{m}v^{e}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for LaurentScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<'a> Add<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        self.add_ref(rhs)
    }
}

impl AddAssign<&LaurentScalar> for LaurentScalar {
    fn add_assign(&mut self, rhs: &LaurentScalar) {
        *self = self.add_ref(rhs);
    }
}

impl Sub for LaurentScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.add_ref(&-rhs)
    }
}

impl<'a> Sub<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        self.add_ref(&-rhs)
    }
}

impl Neg for LaurentScalar {
    type Output = Self;
    fn neg(self) -> Self {
        -&self
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for LaurentScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        self.mul_ref(rhs)
    }
}

impl Zero for LaurentScalar {
    fn zero() -> Self {
        LaurentScalar::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentScalar::is_zero(self)
    }
}

impl One for LaurentScalar {
    fn one() -> Self {
        LaurentScalar::one()
    }
}

/// Serialized as `{"<exponent>": coefficient}`.
impl Serialize for LaurentScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<String, i64> = self.terms().map(|(e, c)| (e.to_string(), c)).collect();
        // BTreeMap orders "-1" < "0" < "10" < "2" lexicographically; that is stable, which is
        // all the report format needs.
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let map = BTreeMap::<String, i64>::deserialize(d)?;
        let mut terms = Vec::with_capacity(map.len());
        for (k, c) in map {
            let e: i32 = k.parse().map_err(serde::de::Error::custom)?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_laurent() -> impl Strategy<Value = LaurentScalar> {
        prop::collection::vec((-4i32..5, -6i64..7), 0..5).prop_map(LaurentScalar::from_terms)
    }

    #[test]
    fn quadratic_relation_scalars() {
        // (q_s - 1) and q_s for d = 2
        let q = LaurentScalar::q_pow(2);
        let qm1 = &q - &LaurentScalar::one();
        assert_eq!(qm1.coeff(4), 1);
        assert_eq!(qm1.coeff(0), -1);
        assert_eq!(qm1.at_zero(), Some(-1));
        assert_eq!(q.at_zero(), Some(0));
    }

    #[test]
    fn zero_is_normalized() {
        let a = LaurentScalar::from_terms([(3, 2), (-1, 5)]);
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z, LaurentScalar::zero());
        assert_eq!(z.min_exp(), None);
    }

    #[test]
    fn negative_powers_block_evaluation_at_zero() {
        let a = LaurentScalar::from_terms([(-1, 1), (0, 3)]);
        assert_eq!(a.at_zero(), None);
        assert!(!a.is_polynomial());
    }

    #[test]
    fn json_shape() {
        let a = LaurentScalar::from_terms([(-1, 2), (0, 1)]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"-1":2,"0":1}"#);
        let b: LaurentScalar = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn display() {
        let a = LaurentScalar::from_terms([(2, 1), (0, -1)]);
        assert_eq!(a.to_string(), "v^2 - 1");
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &(-&a), LaurentScalar::zero());
            prop_assert_eq!(&a * &LaurentScalar::one(), a.clone());
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_laurent(), b in arb_laurent()) {
            let r = BigRational::new(BigInt::from(3), BigInt::from(2));
            prop_assert_eq!((&a * &b).eval_rational(&r), a.eval_rational(&r) * b.eval_rational(&r));
            prop_assert_eq!((&a + &b).eval_rational(&r), a.eval_rational(&r) + b.eval_rational(&r));
        }
    }
}
