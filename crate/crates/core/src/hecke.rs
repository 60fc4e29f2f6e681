//! The extended affine Hecke algebra over `Z[v, v^-1]` in its `T_w` basis,
//! with `q_s = v^{2 d(s)}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use parking_lot::Mutex;
use serde::ser::SerializeSeq;
use serde::Serialize;
use thiserror::Error;

use crate::laurent::LaurentScalar;
use crate::root_data::{CartanType, RootDatum};
use crate::weyl::ExtWeylElt;

const WORD_CACHE_CAPACITY: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error("elements belong to different data ({0} vs {1})")]
    DatumMismatch(CartanType, CartanType),
    #[error("{0:?} is not a full W_0-orbit")]
    NotAFullOrbit(Vec<Vec<i64>>),
    #[error("coefficient {0} has negative powers of v")]
    NegativePowersPresent(String),
    #[error("{0:?} is not in the algebra's translation lattice")]
    NotInAlgebra(Vec<i64>),
    #[error("decomposition {lambda1:?} - {lambda2:?} is invalid for {lambda:?}")]
    BadDecomposition { lambda: Vec<i64>, lambda1: Vec<i64>, lambda2: Vec<i64> },
}

/// Finite combination `sum c_w T_w` with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeckeElt {
    ty: CartanType,
    terms: BTreeMap<ExtWeylElt, LaurentScalar>,
}

impl HeckeElt {
    pub fn zero(ty: CartanType) -> Self {
        Self { ty, terms: BTreeMap::new() }
    }

    /// `c T_w`.
    pub fn term(w: ExtWeylElt, c: LaurentScalar) -> Self {
        let mut x = Self::zero(w.cartan_type());
        x.add_term(w, c);
        x
    }

    pub fn basis(w: ExtWeylElt) -> Self {
        Self::term(w, LaurentScalar::one())
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &ExtWeylElt) -> LaurentScalar {
        self.terms.get(w).cloned().unwrap_or_else(LaurentScalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtWeylElt, &LaurentScalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: ExtWeylElt, c: LaurentScalar) {
        assert_eq!(w.cartan_type(), self.ty, "term from a different datum");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &LaurentScalar) -> Self {
        let mut out = Self::zero(self.ty);
        for (w, a) in &self.terms {
            out.add_term(*w, a * c);
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&ExtWeylElt, &LaurentScalar) -> LaurentScalar) -> Self {
        let mut out = Self::zero(self.ty);
        for (w, a) in &self.terms {
            out.add_term(*w, f(w, a));
        }
        out
    }

    /// All coefficients are polynomials in `v`.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(LaurentScalar::is_polynomial)
    }

    /// All coefficients are polynomials in `q = v^2`.
    pub fn is_in_q(&self) -> bool {
        self.terms.values().all(|c| c.is_polynomial() && c.is_in_q())
    }
}

impl Add for &HeckeElt {
    type Output = HeckeElt;
    fn add(self, rhs: &HeckeElt) -> HeckeElt {
        assert_eq!(self.ty, rhs.ty, "elements belong to different data");
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(*w, c.clone());
        }
        out
    }
}

impl Neg for &HeckeElt {
    type Output = HeckeElt;
    fn neg(self) -> HeckeElt {
        self.map_coeffs(|_, c| -c)
    }
}

impl Sub for &HeckeElt {
    type Output = HeckeElt;
    fn sub(self, rhs: &HeckeElt) -> HeckeElt {
        self + &(-rhs)
    }
}

#[derive(Serialize)]
struct TermRepr<'a> {
    w: &'a ExtWeylElt,
    coeff: &'a LaurentScalar,
}

impl Serialize for HeckeElt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (w, coeff) in &self.terms {
            seq.serialize_element(&TermRepr { w, coeff })?;
        }
        seq.end()
    }
}

/// Evaluation target for [`HeckeAlgebra::specialize`].
#[derive(Clone, Debug)]
pub enum SpecTarget {
    /// `v -> 0`, then reduce the integer mod `p`.
    ModP(u64),
    Real(f64),
    Rational(BigRational),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Specialized {
    ModP(BTreeMap<ExtWeylElt, u64>),
    Real(BTreeMap<ExtWeylElt, f64>),
    Rational(BTreeMap<ExtWeylElt, BigRational>),
}

/// Arithmetic context: a datum plus a cache of reduced words. The cache only
/// memoizes a pure function, so clearing it never changes a result.
pub struct HeckeAlgebra<'a> {
    datum: &'a RootDatum,
    words: Mutex<HashMap<ExtWeylElt, (ExtWeylElt, Vec<usize>)>>,
}

impl<'a> HeckeAlgebra<'a> {
    pub fn new(datum: &'a RootDatum) -> Self {
        Self { datum, words: Mutex::new(HashMap::new()) }
    }

    pub fn datum(&self) -> &'a RootDatum {
        self.datum
    }

    pub fn one(&self) -> HeckeElt {
        HeckeElt::basis(self.datum.identity())
    }

    pub fn q(&self, node: usize) -> LaurentScalar {
        LaurentScalar::q_pow(self.datum.param(node))
    }

    /// `T_w`, checking that `w` lies in the algebra (its translation in the
    /// decoration-compatible lattice).
    pub fn t(&self, w: ExtWeylElt) -> Result<HeckeElt, HeckeError> {
        let lam = w.translation_part();
        if !self.datum.hecke_lattice().contains(&lam) {
            return Err(HeckeError::NotInAlgebra(lam));
        }
        Ok(HeckeElt::basis(w))
    }

    pub fn t_node(&self, node: usize) -> HeckeElt {
        HeckeElt::basis(*self.datum.reflection(node))
    }

    /// `T_u` for the element at `index` of the decorated length-zero group.
    pub fn t_omega(&self, index: usize) -> HeckeElt {
        HeckeElt::basis(self.datum.psi().elements[index].elt)
    }

    /// `(u, [s_1, .., s_n])` with `w = u s_1 .. s_n` reduced.
    pub fn reduced_word(&self, w: &ExtWeylElt) -> (ExtWeylElt, Vec<usize>) {
        if let Some(hit) = self.words.lock().get(w) {
            return hit.clone();
        }
        let res = self.datum.strip_descents(w);
        let mut cache = self.words.lock();
        if cache.len() >= WORD_CACHE_CAPACITY {
            cache.clear();
        }
        cache.insert(*w, res.clone());
        res
    }

    pub fn clear_cache(&self) {
        self.words.lock().clear();
    }

    pub fn length(&self, w: &ExtWeylElt) -> usize {
        self.reduced_word(w).1.len()
    }

    /// Exponent `w_d(w)` with `q_w = v^{2 w_d(w)}`.
    pub fn weighted_length(&self, w: &ExtWeylElt) -> i32 {
        self.reduced_word(w).1.iter().map(|&s| self.datum.param(s) as i32).sum()
    }

    pub fn q_w(&self, w: &ExtWeylElt) -> LaurentScalar {
        LaurentScalar::v_pow(2 * self.weighted_length(w))
    }

    fn check(&self, x: &HeckeElt) -> Result<(), HeckeError> {
        if x.ty != self.datum.cartan_type() {
            return Err(HeckeError::DatumMismatch(self.datum.cartan_type(), x.ty));
        }
        Ok(())
    }

    /// `x T_s`.
    pub fn mul_node(&self, x: &HeckeElt, s: &usize) -> HeckeElt {
        let s = *s;
        let r = self.datum.reflection(s);
        let qs = self.q(s);
        let qs1 = &qs - &LaurentScalar::one();
        let mut out = HeckeElt::zero(x.ty);
        for (w, c) in &x.terms {
            let ws = w.compose(r);
            if self.datum.is_right_descent(w, s) {
                out.add_term(ws, c * &qs);
                out.add_term(*w, c * &qs1);
            } else {
                out.add_term(ws, c.clone());
            }
        }
        out
    }

    /// `x T_u` for a length-zero `u`.
    pub fn mul_length_zero(&self, x: &HeckeElt, u: &ExtWeylElt) -> HeckeElt {
        let mut out = HeckeElt::zero(x.ty);
        for (w, c) in &x.terms {
            out.add_term(w.compose(u), c.clone());
        }
        out
    }

    /// `x T_w`.
    pub fn mul_basis(&self, x: &HeckeElt, w: &ExtWeylElt) -> HeckeElt {
        let (u, word) = self.reduced_word(w);
        word.iter().fold(self.mul_length_zero(x, &u), |acc, s| self.mul_node(&acc, s))
    }

    /// `T_s y`.
    pub fn node_mul(&self, s: usize, y: &HeckeElt) -> HeckeElt {
        let r = self.datum.reflection(s);
        let qs = self.q(s);
        let qs1 = &qs - &LaurentScalar::one();
        let mut out = HeckeElt::zero(y.ty);
        for (w, c) in &y.terms {
            let sw = r.compose(w);
            if self.datum.is_left_descent(w, s) {
                out.add_term(sw, c * &qs);
                out.add_term(*w, c * &qs1);
            } else {
                out.add_term(sw, c.clone());
            }
        }
        out
    }

    /// `T_w y`.
    pub fn basis_mul(&self, w: &ExtWeylElt, y: &HeckeElt) -> HeckeElt {
        let (u, word) = self.reduced_word(w);
        let acc = word.iter().rev().fold(y.clone(), |acc, s| self.node_mul(*s, &acc));
        let mut out = HeckeElt::zero(y.ty);
        for (w, c) in &acc.terms {
            out.add_term(u.compose(w), c.clone());
        }
        out
    }

    /// Product in the algebra, expanding whichever factor has the shorter support words.
    pub fn t_mul(&self, x: &HeckeElt, y: &HeckeElt) -> Result<HeckeElt, HeckeError> {
        self.check(x)?;
        self.check(y)?;
        let cost = |z: &HeckeElt| z.terms.keys().map(|w| self.datum.length(w) as usize + 1).sum::<usize>();
        let mut out = HeckeElt::zero(x.ty);
        if cost(x) * y.len() < cost(y) * x.len() {
            for (w, c) in &x.terms {
                for (v, d) in &self.basis_mul(w, y).terms {
                    out.add_term(*v, c * d);
                }
            }
        } else {
            for (w, c) in &y.terms {
                for (v, d) in &self.mul_basis(x, w).terms {
                    out.add_term(*v, d * c);
                }
            }
        }
        Ok(out)
    }

    /// `T_s^* = T_s - q_s + 1`.
    pub fn t_star_node(&self, s: usize) -> HeckeElt {
        let mut x = self.t_node(s);
        x.add_term(self.datum.identity(), LaurentScalar::one() - self.q(s));
        x
    }

    /// `x T_s^*`.
    fn mul_star_node(&self, x: &HeckeElt, s: usize) -> HeckeElt {
        let shift = LaurentScalar::one() - self.q(s);
        &self.mul_node(x, &s) + &x.scale(&shift)
    }

    /// `T_w^* = T_u T_{s_1}^* .. T_{s_n}^*`.
    pub fn t_star(&self, w: &ExtWeylElt) -> HeckeElt {
        let (u, word) = self.reduced_word(w);
        word.iter().fold(HeckeElt::basis(u), |acc, &s| self.mul_star_node(&acc, s))
    }

    pub fn star(&self, x: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero(x.ty);
        for (w, c) in &x.terms {
            out = &out + &self.t_star(w).scale(c);
        }
        out
    }

    /// The automorphism `T_w -> (-1)^{l(w)} T_w^*`.
    pub fn sign_star(&self, x: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero(x.ty);
        for (w, c) in &x.terms {
            let c = if self.length(w) % 2 == 1 { -c } else { c.clone() };
            out = &out + &self.t_star(w).scale(&c);
        }
        out
    }

    fn check_lattice(&self, lam: &[i64]) -> Result<(), HeckeError> {
        if lam.len() != self.datum.rank() || !self.datum.hecke_lattice().contains(lam) {
            return Err(HeckeError::NotInAlgebra(lam.to_vec()));
        }
        Ok(())
    }

    /// Default splitting `lambda = lambda_1 - lambda_2` into dominant elements of the lattice.
    pub fn default_decomposition(&self, lam: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let pos: Vec<i64> = lam.iter().map(|x| (*x).max(0)).collect();
        let neg: Vec<i64> = lam.iter().map(|x| (-*x).max(0)).collect();
        if self.datum.hecke_lattice().contains(&pos) {
            return (pos, neg);
        }
        // Every coroot coset has a 0/1 representative, so a small shift of the
        // negative part lands in the lattice.
        let l = lam.len();
        let mut best: Option<Vec<i64>> = None;
        for mask in 1u32..(1 << l) {
            let l2: Vec<i64> = (0..l).map(|i| neg[i] + ((mask >> i) & 1) as i64).collect();
            let better = best.as_ref().is_none_or(|b| l2.iter().sum::<i64>() < b.iter().sum::<i64>());
            if better && self.datum.hecke_lattice().contains(&l2) {
                best = Some(l2);
            }
        }
        if let Some(l2) = best {
            let l1: Vec<i64> = lam.iter().zip(&l2).map(|(a, b)| a + b).collect();
            return (l1, l2);
        }
        // lambda_2 = k 2rho^vee lies in the coroot lattice.
        let k = lam.iter().map(|x| (-*x).max(0)).max().unwrap_or(0).div_euclid(2) + 1;
        let l2: Vec<i64> = vec![2 * k; lam.len()];
        let l1: Vec<i64> = lam.iter().zip(&l2).map(|(a, b)| a + b).collect();
        (l1, l2)
    }

    /// Bernstein element `E_lambda`, evaluated along the alcove walk of `t_lambda`.
    pub fn bernstein_e(&self, lam: &[i64]) -> Result<HeckeElt, HeckeError> {
        self.bernstein_e_walk(lam)
    }

    /// `E_lambda` through the default splitting into dominant parts.
    pub fn bernstein_e_split(&self, lam: &[i64]) -> Result<HeckeElt, HeckeError> {
        let (l1, l2) = self.default_decomposition(lam);
        self.bernstein_e_with(lam, &l1, &l2)
    }

    /// `E_lambda = v^{w_d(t_lambda) - w_d(t_l1) - w_d(t_l2)} T^*_{t_l1} T_{t_{-l2}}`.
    pub fn bernstein_e_with(&self, lam: &[i64], l1: &[i64], l2: &[i64]) -> Result<HeckeElt, HeckeError> {
        self.check_lattice(lam)?;
        let valid = self.datum.is_dominant(l1)
            && self.datum.is_dominant(l2)
            && lam.iter().zip(l1).zip(l2).all(|((a, b), c)| *a == b - c);
        if !valid || self.check_lattice(l1).is_err() {
            return Err(HeckeError::BadDecomposition { lambda: lam.to_vec(), lambda1: l1.to_vec(), lambda2: l2.to_vec() });
        }
        let t = self.datum.translation(lam);
        let t1 = self.datum.translation(l1);
        let t2 = self.datum.translation(l2);
        let minus_l2: Vec<i64> = l2.iter().map(|x| -x).collect();
        let exp = self.weighted_length(&t) - self.weighted_length(&t1) - self.weighted_length(&t2);
        let prod = self.mul_basis(&self.t_star(&t1), &self.datum.translation(&minus_l2));
        Ok(prod.scale(&LaurentScalar::v_pow(exp)))
    }

    /// Reduced-word factorization of `E_lambda`: `(u, [(s_i, starred_i)])` with
    /// `E_lambda = T_u prod T_{s_i}^{(*)}`, a step being starred when it crosses
    /// its wall against the direction of the finite root.
    pub fn bernstein_walk(&self, lam: &[i64]) -> (ExtWeylElt, Vec<(usize, bool)>) {
        let (u, word) = self.reduced_word(&self.datum.translation(lam));
        let mut g = u;
        let mut steps = Vec::with_capacity(word.len());
        for &s in &word {
            let beta = g.act_on_affine_root(self.datum.simple_affine_root(s));
            let starred = beta.alpha.iter().any(|x| *x < 0);
            steps.push((s, starred));
            g = g.compose(self.datum.reflection(s));
        }
        (u, steps)
    }

    /// `E_lambda` evaluated through [`Self::bernstein_walk`].
    pub fn bernstein_e_walk(&self, lam: &[i64]) -> Result<HeckeElt, HeckeError> {
        self.check_lattice(lam)?;
        let (u, steps) = self.bernstein_walk(lam);
        Ok(steps.iter().fold(HeckeElt::basis(u), |acc, &(s, starred)| {
            if starred {
                self.mul_star_node(&acc, s)
            } else {
                self.mul_node(&acc, &s)
            }
        }))
    }

    /// `z_O = sum_{lambda in O} E_lambda`.
    pub fn central_z(&self, orbit: &[Vec<i64>]) -> Result<HeckeElt, HeckeError> {
        let given: BTreeSet<Vec<i64>> = orbit.iter().cloned().collect();
        let first = given.iter().next().ok_or_else(|| HeckeError::NotAFullOrbit(vec![]))?;
        let full: BTreeSet<Vec<i64>> = self.datum.orbit(first).into_iter().collect();
        if full != given || given.len() != orbit.len() {
            return Err(HeckeError::NotAFullOrbit(orbit.to_vec()));
        }
        let mut z = HeckeElt::zero(self.datum.cartan_type());
        for lam in &given {
            z = &z + &self.bernstein_e(lam)?;
        }
        Ok(z)
    }

    pub fn specialize(&self, x: &HeckeElt, target: &SpecTarget) -> Result<Specialized, HeckeError> {
        Ok(match target {
            SpecTarget::ModP(p) => {
                let mut out = BTreeMap::new();
                for (w, c) in &x.terms {
                    let r = c.at_zero_mod(*p).ok_or_else(|| HeckeError::NegativePowersPresent(c.to_string()))?;
                    if r != 0 {
                        out.insert(*w, r);
                    }
                }
                Specialized::ModP(out)
            }
            SpecTarget::Real(v) => Specialized::Real(x.terms.iter().map(|(w, c)| (*w, c.eval_f64(*v))).collect()),
            SpecTarget::Rational(v) => {
                Specialized::Rational(x.terms.iter().map(|(w, c)| (*w, c.eval_rational(v))).collect())
            }
        })
    }

    /// `x y - y x`.
    pub fn commutator(&self, x: &HeckeElt, y: &HeckeElt) -> Result<HeckeElt, HeckeError> {
        Ok(&self.t_mul(x, y)? - &self.t_mul(y, x)?)
    }

    /// Generators of the algebra: `T_s` for every node and `T_u` for the decorated length-zero group.
    pub fn generators(&self) -> Vec<HeckeElt> {
        let mut g: Vec<HeckeElt> = (0..self.datum.num_nodes()).map(|s| self.t_node(s)).collect();
        g.extend((1..self.datum.psi().order()).map(|i| self.t_omega(i)));
        g
    }
}
