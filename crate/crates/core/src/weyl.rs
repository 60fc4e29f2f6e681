//! The extended affine Weyl group `Lambda x| W_0` in the faithful
//! (translation, finite part) model: group law, action on affine roots,
//! length, reduced words, orbits and dominant generators.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::IntLattice;
use crate::root_data::{dot, CartanType, RootDatum};

pub const MAX_RANK: usize = 8;

/// Default cap on the number of lattice points scanned for a Hilbert basis.
pub const DEFAULT_HILBERT_BOUND: u64 = 5_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("elements belong to different data ({0} vs {1})")]
    DatumMismatch(CartanType, CartanType),
    #[error("Hilbert basis enumeration needs {needed} points, above the bound {bound}")]
    HilbertBasisOverflow { needed: u64, bound: u64 },
    #[error("malformed element: {0}")]
    Malformed(String),
}

/// Affine root `x -> <alpha, x> + level`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineRoot {
    pub alpha: Vec<i64>,
    pub level: i64,
}

impl AffineRoot {
    pub fn new(alpha: Vec<i64>, level: i64) -> Self {
        Self { alpha, level }
    }

    /// Positive on the base alcove.
    pub fn is_positive(&self) -> bool {
        if self.level != 0 {
            return self.level > 0;
        }
        self.alpha.iter().all(|x| *x >= 0)
    }
}

/// Element of `W_0`, stored as its matrix on the simple-root frame (column `j`
/// is `w(alpha_j)`) together with the inverse matrix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWeyl {
    rank: u8,
    mat: [i8; MAX_RANK * MAX_RANK],
    inv: [i8; MAX_RANK * MAX_RANK],
}

impl std::fmt::Debug for FiniteWeyl {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.matrix())
    }
}

impl FiniteWeyl {
    pub fn identity(rank: usize) -> Self {
        let mut mat = [0i8; MAX_RANK * MAX_RANK];
        for i in 0..rank {
            mat[i * MAX_RANK + i] = 1;
        }
        Self { rank: rank as u8, mat, inv: mat }
    }

    /// Reflection `x -> x - <x, coroot> root`.
    pub fn reflection(root: &[i64], coroot: &[i64]) -> Self {
        let l = root.len();
        let mut mat = [0i8; MAX_RANK * MAX_RANK];
        for i in 0..l {
            for j in 0..l {
                mat[i * MAX_RANK + j] = ((i == j) as i64 - root[i] * coroot[j]) as i8;
            }
        }
        Self { rank: l as u8, mat, inv: mat }
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    fn at(m: &[i8; MAX_RANK * MAX_RANK], i: usize, j: usize) -> i64 {
        m[i * MAX_RANK + j] as i64
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let l = self.rank();
        (0..l).map(|i| (0..l).map(|j| Self::at(&self.mat, i, j)).collect()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.mat == Self::identity(self.rank()).mat
    }

    /// `w(x)` for `x` in root coordinates.
    pub fn apply_root(&self, x: &[i64]) -> Vec<i64> {
        let l = self.rank();
        (0..l).map(|i| (0..l).map(|j| Self::at(&self.mat, i, j) * x[j]).sum()).collect()
    }

    /// `w^-1(x)` for `x` in root coordinates.
    pub fn apply_root_inv(&self, x: &[i64]) -> Vec<i64> {
        let l = self.rank();
        (0..l).map(|i| (0..l).map(|j| Self::at(&self.inv, i, j) * x[j]).sum()).collect()
    }

    /// `w(lambda)` for `lambda` in coweight coordinates: `<alpha_j, w lambda> = <w^-1 alpha_j, lambda>`.
    pub fn apply_coweight(&self, lam: &[i64]) -> Vec<i64> {
        let l = self.rank();
        (0..l).map(|j| (0..l).map(|k| Self::at(&self.inv, k, j) * lam[k]).sum()).collect()
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        let l = self.rank();
        let mut out = Self::identity(l);
        for i in 0..l {
            for j in 0..l {
                let mut a = 0i64;
                let mut b = 0i64;
                for k in 0..l {
                    a += Self::at(&self.mat, i, k) * Self::at(&rhs.mat, k, j);
                    b += Self::at(&rhs.inv, i, k) * Self::at(&self.inv, k, j);
                }
                out.mat[i * MAX_RANK + j] = a as i8;
                out.inv[i * MAX_RANK + j] = b as i8;
            }
        }
        out
    }

    pub fn inverse(&self) -> Self {
        Self { rank: self.rank, mat: self.inv, inv: self.mat }
    }
}

/// Element `(lambda, w)` of the extended affine Weyl group, acting on the
/// apartment by `x -> lambda + w x`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtWeylElt {
    ty: CartanType,
    translation: [i32; MAX_RANK],
    finite: FiniteWeyl,
}

impl std::fmt::Debug for ExtWeylElt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?}, {:?})", self.translation_part(), self.finite)
    }
}

impl ExtWeylElt {
    pub fn from_parts(ty: CartanType, translation: Vec<i64>, finite: FiniteWeyl) -> Self {
        let mut t = [0i32; MAX_RANK];
        for (slot, x) in t.iter_mut().zip(&translation) {
            *slot = i32::try_from(*x).expect("translation out of range");
        }
        Self { ty, translation: t, finite }
    }

    pub fn identity(ty: CartanType) -> Self {
        Self::from_parts(ty, vec![0; ty.rank], FiniteWeyl::identity(ty.rank))
    }

    /// Translation `t_lambda`.
    pub fn translation(ty: CartanType, lam: &[i64]) -> Self {
        Self::from_parts(ty, lam.to_vec(), FiniteWeyl::identity(ty.rank))
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn translation_part(&self) -> Vec<i64> {
        self.translation[..self.ty.rank].iter().map(|x| *x as i64).collect()
    }

    pub fn finite_part(&self) -> &FiniteWeyl {
        &self.finite
    }

    pub fn is_identity(&self) -> bool {
        self.finite.is_identity() && self.translation.iter().all(|x| *x == 0)
    }

    pub fn is_translation(&self) -> bool {
        self.finite.is_identity()
    }

    /// `(lambda, w)(lambda', w') = (lambda + w lambda', w w')`. Panics on mismatched data.
    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(self.ty, rhs.ty, "elements belong to different data");
        let wl = self.finite.apply_coweight(&rhs.translation_part());
        let t: Vec<i64> = self.translation_part().iter().zip(&wl).map(|(a, b)| a + b).collect();
        Self::from_parts(self.ty, t, self.finite.compose(&rhs.finite))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, WeylError> {
        if self.ty != rhs.ty {
            return Err(WeylError::DatumMismatch(self.ty, rhs.ty));
        }
        Ok(self.compose(rhs))
    }

    pub fn inv(&self) -> Self {
        let winv = self.finite.inverse();
        let t: Vec<i64> = winv.apply_coweight(&self.translation_part()).iter().map(|x| -x).collect();
        Self::from_parts(self.ty, t, winv)
    }

    /// `a . (alpha, k) = (w alpha, k - <w alpha, lambda>)`.
    pub fn act_on_affine_root(&self, r: &AffineRoot) -> AffineRoot {
        let wa = self.finite.apply_root(&r.alpha);
        let level = r.level - dot(&wa, &self.translation_part());
        AffineRoot::new(wa, level)
    }

    /// Image of a point of the apartment (coweight coordinates).
    pub fn act_on_point(&self, x: &[f64]) -> Vec<f64> {
        let l = self.ty.rank;
        let t = self.translation_part();
        (0..l)
            .map(|j| {
                let wx: f64 = (0..l).map(|k| FiniteWeyl::at(&self.finite.inv, k, j) as f64 * x[k]).sum();
                t[j] as f64 + wx
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct EltRepr {
    translation: Vec<i64>,
    matrix: Vec<Vec<i64>>,
}

impl Serialize for ExtWeylElt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        EltRepr { translation: self.translation_part(), matrix: self.finite.matrix() }.serialize(s)
    }
}

impl RootDatum {
    pub fn identity(&self) -> ExtWeylElt {
        ExtWeylElt::identity(self.ty)
    }

    pub fn translation(&self, lam: &[i64]) -> ExtWeylElt {
        ExtWeylElt::translation(self.ty, lam)
    }

    pub fn mul(&self, a: &ExtWeylElt, b: &ExtWeylElt) -> Result<ExtWeylElt, WeylError> {
        for x in [a, b] {
            if x.ty != self.ty {
                return Err(WeylError::DatumMismatch(self.ty, x.ty));
            }
        }
        Ok(a.compose(b))
    }

    /// Product of node reflections, left to right.
    pub fn element_from_word(&self, word: &[usize]) -> ExtWeylElt {
        word.iter().fold(self.identity(), |acc, &s| acc.compose(&self.reflections[s]))
    }

    pub fn is_right_descent(&self, a: &ExtWeylElt, node: usize) -> bool {
        !a.act_on_affine_root(&self.simple_affine_roots[node]).is_positive()
    }

    pub fn is_left_descent(&self, a: &ExtWeylElt, node: usize) -> bool {
        self.is_right_descent(&a.inv(), node)
    }

    /// Number of affine root hyperplanes separating the base alcove from its image.
    pub fn length(&self, a: &ExtWeylElt) -> u64 {
        let lam = a.translation_part();
        self.positive_roots
            .iter()
            .map(|alpha| {
                let c = dot(alpha, &lam);
                let back = a.finite.apply_root_inv(alpha);
                let c = if back.iter().all(|x| *x >= 0) { c } else { c - 1 };
                c.unsigned_abs()
            })
            .sum()
    }

    /// Strips right descents: returns `(u, word)` with `a = u s_1 .. s_n`, `u` of length 0.
    pub fn strip_descents(&self, a: &ExtWeylElt) -> (ExtWeylElt, Vec<usize>) {
        let mut cur = *a;
        let mut stripped = Vec::new();
        'outer: loop {
            for s in 0..self.num_nodes() {
                if self.is_right_descent(&cur, s) {
                    cur = cur.compose(&self.reflections[s]);
                    stripped.push(s);
                    continue 'outer;
                }
            }
            break;
        }
        stripped.reverse();
        (cur, stripped)
    }

    /// `(omega index in the length-zero group, word)` with `a = omega s_1 .. s_n`.
    /// The index refers to [`RootDatum::aut_group`]; `None` if the residue lies
    /// outside it (only possible for elements not in the datum's group).
    pub fn reduced_word(&self, a: &ExtWeylElt) -> (Option<usize>, Vec<usize>) {
        let (u, word) = self.strip_descents(a);
        (self.omega.index_of(&u), word)
    }

    /// Exponent `w_d(a)` with `q_a = v^{2 w_d(a)}`.
    pub fn weighted_length(&self, a: &ExtWeylElt) -> u64 {
        self.strip_descents(a).1.iter().map(|&s| self.decoration[s] as u64).sum()
    }

    pub fn is_dominant(&self, lam: &[i64]) -> bool {
        lam.iter().all(|x| *x >= 0)
    }

    /// `s_i(lambda)` for a finite node `i` (0-based).
    pub fn reflect_coweight(&self, i: usize, lam: &[i64]) -> Vec<i64> {
        let c = lam[i];
        lam.iter().zip(&self.cartan[i]).map(|(x, a)| x - c * a).collect()
    }

    /// Full `W_0`-orbit, sorted lexicographically.
    pub fn orbit(&self, lam: &[i64]) -> Vec<Vec<i64>> {
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::from([lam.to_vec()]);
        seen.insert(lam.to_vec());
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank() {
                if x[i] != 0 {
                    let y = self.reflect_coweight(i, &x);
                    if seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn dominant_rep(&self, lam: &[i64]) -> Vec<i64> {
        let mut x = lam.to_vec();
        while let Some(i) = x.iter().position(|c| *c < 0) {
            x = self.reflect_coweight(i, &x);
        }
        x
    }

    pub fn antidominant_rep(&self, lam: &[i64]) -> Vec<i64> {
        let neg: Vec<i64> = lam.iter().map(|x| -x).collect();
        self.dominant_rep(&neg).iter().map(|x| -x).collect()
    }

    /// Monoid generators of the dominant part of the translation lattice.
    pub fn dominant_generators(&self) -> Result<Vec<Vec<i64>>, WeylError> {
        hilbert_basis(&self.lattice, DEFAULT_HILBERT_BOUND)
    }

    /// Reads an element from `{"translation": [...], "matrix": [[...]]}`,
    /// validating that the matrix is a Weyl group element of this datum.
    pub fn parse_elt(&self, value: &serde_json::Value) -> Result<ExtWeylElt, WeylError> {
        let repr: EltRepr =
            serde_json::from_value(value.clone()).map_err(|e| WeylError::Malformed(e.to_string()))?;
        let l = self.rank();
        if repr.translation.len() != l || repr.matrix.len() != l || repr.matrix.iter().any(|r| r.len() != l) {
            return Err(WeylError::Malformed(format!("expected rank {l}")));
        }
        // Reduce the finite part to the identity by simple reflections, driven
        // by the images of the simple roots.
        let col = |m: &Vec<Vec<i64>>, j: usize| -> Vec<i64> { (0..l).map(|i| m[i][j]).collect() };
        let mut m = repr.matrix.clone();
        let mut word = Vec::new();
        for _ in 0..=self.positive_roots.len() {
            let neg = (0..l).find(|&j| col(&m, j).iter().any(|x| *x < 0));
            match neg {
                None => break,
                Some(j) => {
                    // m <- m s_j
                    let a = self.reflections[j + 1].finite_part().matrix();
                    m = (0..l).map(|r| (0..l).map(|c| (0..l).map(|k| m[r][k] * a[k][c]).sum()).collect()).collect();
                    word.push(j + 1);
                }
            }
        }
        let ident: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| (i == j) as i64).collect()).collect();
        if m != ident {
            return Err(WeylError::Malformed("matrix is not an element of the finite Weyl group".into()));
        }
        let w = word.iter().rev().fold(FiniteWeyl::identity(l), |acc, &s| acc.compose(self.reflections[s].finite_part()));
        if !self.lattice.contains(&repr.translation) {
            return Err(WeylError::Malformed("translation not in the lattice".into()));
        }
        Ok(ExtWeylElt::from_parts(self.ty, repr.translation, w))
    }
}

/// Hilbert basis of `L` intersected with the nonnegative orthant, in degree
/// then lexicographic order. `L` must have full rank.
pub fn hilbert_basis(lattice: &IntLattice, bound: u64) -> Result<Vec<Vec<i64>>, WeylError> {
    let l = lattice.ambient_dim();
    let index = lattice.index().expect("lattice must have full rank") as i64;
    if index == 1 {
        return Ok((0..l).map(|i| (0..l).map(|j| (i == j) as i64).collect()).collect());
    }
    let side = (index + 1) as u64;
    let needed = side.checked_pow(l as u32).unwrap_or(u64::MAX);
    if needed > bound {
        return Err(WeylError::HilbertBasisOverflow { needed, bound });
    }
    let mut points = Vec::new();
    let mut x = vec![0i64; l];
    loop {
        if x.iter().any(|c| *c != 0) && lattice.contains(&x) {
            points.push(x.clone());
        }
        let mut k = 0;
        while k < l && x[k] == index {
            x[k] = 0;
            k += 1;
        }
        if k == l {
            break;
        }
        x[k] += 1;
    }
    points.sort_by_key(|p| (p.iter().sum::<i64>(), p.clone()));
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for p in points {
        let reducible = basis.iter().any(|h| h.iter().zip(&p).all(|(a, b)| a <= b));
        if !reducible {
            basis.push(p);
        }
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::{build_root_datum, Family, LatticeChoice};

    fn a1() -> RootDatum {
        build_root_datum(Family::A, 1, &[1, 2], LatticeChoice::Coweight).unwrap()
    }

    #[test]
    fn a1_relations() {
        let d = a1();
        let s0 = *d.reflection(0);
        let s1 = *d.reflection(1);
        assert!(s1.compose(&s1).is_identity());
        assert!(s0.compose(&s0).is_identity());
        // s_1 s_0 = translation by -alpha^vee composed with nothing
        let p = s1.compose(&s0);
        assert!(p.is_translation());
        assert_eq!(p.translation_part(), vec![-2]);
        assert_eq!(d.length(&p), 2);
        assert_eq!(d.weighted_length(&p), 3);
    }

    #[test]
    fn a1_fundamental_translation() {
        let d = a1();
        let t = d.translation(&[1]);
        assert_eq!(d.length(&t), 1);
        let (u, w) = d.reduced_word(&t);
        assert_eq!(u, Some(1));
        assert_eq!(w.len(), 1);
        let (u, _) = d.strip_descents(&t);
        assert_eq!(d.length(&u), 0);
    }

    #[test]
    fn reduced_word_roundtrip() {
        let d = build_root_datum(Family::C, 3, &[1, 2, 3], LatticeChoice::Coweight).unwrap();
        let a = d.element_from_word(&[0, 1, 2, 3, 2, 1, 0, 3]).compose(&d.translation(&[1, -2, 1]));
        let (u, w) = d.strip_descents(&a);
        assert_eq!(w.len() as u64, d.length(&a));
        assert_eq!(u.compose(&d.element_from_word(&w)), a);
        assert_eq!(d.length(&a), d.length(&a.inv()));
    }

    #[test]
    fn orbits() {
        let a2 = build_root_datum(Family::A, 2, &[1], LatticeChoice::Coweight).unwrap();
        assert_eq!(a2.orbit(&[1, 0]).len(), 3);
        assert_eq!(a2.orbit(&[0, 0]), vec![vec![0, 0]]);
        let c2 = build_root_datum(Family::C, 2, &[1, 1, 1], LatticeChoice::Coweight).unwrap();
        assert_eq!(c2.orbit(&[1, 0]).len(), 4);
        assert_eq!(c2.orbit(&[0, 1]).len(), 4);
        assert_eq!(c2.dominant_rep(&[-1, 0]), vec![1, 0]);
    }

    #[test]
    fn hilbert_basis_a2_coroots() {
        let a2 = build_root_datum(Family::A, 2, &[1], LatticeChoice::Coroot).unwrap();
        assert_eq!(a2.dominant_generators().unwrap(), vec![vec![1, 1], vec![0, 3], vec![3, 0]]);
        let small = hilbert_basis(a2.lattice(), 3);
        assert!(matches!(small, Err(WeylError::HilbertBasisOverflow { .. })));
    }

    #[test]
    fn json_roundtrip() {
        let d = build_root_datum(Family::G, 2, &[1, 2], LatticeChoice::Coweight).unwrap();
        let a = d.element_from_word(&[0, 1, 2, 1, 0, 2]);
        let v = serde_json::to_value(a).unwrap();
        assert_eq!(d.parse_elt(&v).unwrap(), a);
        let bad = serde_json::json!({"translation": [0, 0], "matrix": [[2, 0], [0, 1]]});
        assert!(d.parse_elt(&bad).is_err());
    }

    #[test]
    fn datum_mismatch() {
        let d = a1();
        let other = build_root_datum(Family::A, 2, &[1], LatticeChoice::Coweight).unwrap();
        assert!(matches!(d.mul(&d.identity(), &other.identity()), Err(WeylError::DatumMismatch(..))));
    }
}
