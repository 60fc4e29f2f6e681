//! Dense square matrices over the two coefficient rings modules live over:
//! the generic Laurent ring and the prime field `F_p`.

use std::fmt;

use crate::laurent::LaurentScalar;

/// Coefficient ring of a module. `q_pow` and `sqrt_q_pow` give the images of
/// `q^d` and `q^{d/2}`; in `F_p` both vanish since `q` is a power of `p`.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn q_pow(&self, d: u32) -> Self;
    fn sqrt_q_pow(&self, d: u32) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn from_i64(&self, c: i64) -> Self {
        let one = self.one_like();
        let mut acc = self.zero_like();
        let step = if c < 0 { one.neg() } else { one };
        for _ in 0..c.unsigned_abs() {
            acc = acc.add(&step);
        }
        acc
    }
}

impl Ring for LaurentScalar {
    fn zero_like(&self) -> Self {
        LaurentScalar::zero()
    }
    fn one_like(&self) -> Self {
        LaurentScalar::one()
    }
    fn is_zero(&self) -> bool {
        LaurentScalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn q_pow(&self, d: u32) -> Self {
        LaurentScalar::q_pow(d)
    }
    fn sqrt_q_pow(&self, d: u32) -> Self {
        LaurentScalar::v_pow(d as i32)
    }
    fn from_i64(&self, c: i64) -> Self {
        LaurentScalar::constant(c)
    }
}

/// Element of the prime field `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    p: u64,
}

impl Fp {
    pub fn new(value: i64, p: u64) -> Self {
        assert!(p >= 2, "characteristic must be at least 2");
        Self { value: value.rem_euclid(p as i64) as u64, p }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Representative in `(-p/2, p/2]`, convenient for reading `-1`.
    pub fn signed(&self) -> i64 {
        if self.value > self.p / 2 {
            self.value as i64 - self.p as i64
        } else {
            self.value as i64
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}

impl Ring for Fp {
    fn zero_like(&self) -> Self {
        Fp { value: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { value: 1 % self.p, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp { value: (self.value + rhs.value) % self.p, p: self.p }
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp { value: ((self.value as u128 * rhs.value as u128) % self.p as u128) as u64, p: self.p }
    }
    fn neg(&self) -> Self {
        Fp { value: (self.p - self.value) % self.p, p: self.p }
    }
    fn q_pow(&self, _d: u32) -> Self {
        self.zero_like()
    }
    fn sqrt_q_pow(&self, d: u32) -> Self {
        if d == 0 {
            self.one_like()
        } else {
            self.zero_like()
        }
    }
    fn from_i64(&self, c: i64) -> Self {
        Fp::new(c, self.p)
    }
}

/// Row-major `n x n` matrix.
#[derive(Clone, PartialEq)]
pub struct Mat<R> {
    n: usize,
    data: Vec<R>,
}

impl<R: Ring> Mat<R> {
    /// `unit` only fixes the ring (its modulus for `F_p`).
    pub fn zeros(n: usize, unit: &R) -> Self {
        Self { n, data: vec![unit.zero_like(); n * n] }
    }

    pub fn identity(n: usize, unit: &R) -> Self {
        Self::scalar(n, &unit.one_like())
    }

    pub fn scalar(n: usize, c: &R) -> Self {
        let mut m = Self::zeros(n, c);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let n = rows.len();
        assert!(n > 0, "empty matrix");
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        self.data[i * self.n + j] = value;
    }

    pub fn entries(&self) -> impl Iterator<Item = &R> {
        self.data.iter()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Mat<S> {
        Mat { n: self.n, data: self.data.iter().map(f).collect() }
    }

    fn unit(&self) -> &R {
        &self.data[0]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n, self.unit());
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out.data[i * n + j];
                    *slot = slot.add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Self { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Self { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { n: self.n, data: self.data.iter().map(Ring::neg).collect() }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self { n: self.n, data: self.data.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n, self.unit())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.transpose().is_upper_triangular()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.n, self.unit());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Smallest `k >= 1` with `self^k = 0`, searching up to the dimension.
    /// `None` when the matrix is not nilpotent.
    pub fn nilpotency_degree(&self) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=self.n as u32 {
            if acc.is_zero() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, rhs: &Self) -> Self {
        let n = self.n + rhs.n;
        let mut out = Self::zeros(n, self.unit());
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..rhs.n {
            for j in 0..rhs.n {
                out.set(self.n + i, self.n + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    pub fn rows(&self) -> Vec<Vec<R>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

impl<R: Ring> fmt::Debug for Mat<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n)).finish()
    }
}
