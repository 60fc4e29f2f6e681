//! Finite-dimensional right modules: characters and their extension to the
//! length-zero group, induction, the reflection module and its star twist,
//! reduction at `v = 0`, discreteness exponents and supersingularity.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::hecke::{HeckeAlgebra, HeckeError};
use crate::laurent::LaurentScalar;
use crate::matrix::{Fp, Mat, Ring};
use crate::root_data::{Family, RootDatum};
use crate::weyl::{hilbert_basis, WeylError, DEFAULT_HILBERT_BOUND};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("character extends to the length-zero group; induction not needed")]
    CharacterExtends,
    #[error("stabilizer of the character is not of index two in the decorated length-zero group")]
    NoIndexTwoStructure,
    #[error("relations fail: {0}")]
    RelationsFail(String),
    #[error("affine diagram is not simply laced")]
    NotSimplyLaced,
    #[error("case outside the handled analysis: {0}")]
    UnhandledCase(String),
    #[error("lattice is not the coweight lattice")]
    NotAdjoint,
    #[error("entry {0} has negative powers of v")]
    NegativePowersPresent(String),
    #[error("module matrices are not simultaneously triangular")]
    NotTriangular,
    #[error("value {0} is not a character value in characteristic p")]
    NotACharacterValue(i64),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
}

/// Coefficient setting of a character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharMode {
    /// Values in `{-1, q_s}` over `Z[v, v^-1]`, constant on classes.
    Generic,
    /// Values in `{-1, 0}` in `F_p`, arbitrary per node.
    ModP(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeValue {
    MinusOne,
    /// `q_s` generically, `0` in characteristic `p`.
    Param,
}

/// A one-dimensional representation: a value per node and, when extended,
/// a sign per element of the decorated length-zero group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub mode: CharMode,
    pub values: Vec<NodeValue>,
    /// Empty for a character of the affine part only.
    pub omega: Vec<i8>,
}

impl Character {
    pub fn is_special(&self) -> bool {
        self.values.iter().all(|v| *v == NodeValue::MinusOne)
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| *v == NodeValue::Param)
    }

    pub fn is_extended(&self) -> bool {
        !self.omega.is_empty()
    }

    /// Values listed by class (generic mode).
    pub fn class_values(&self, datum: &RootDatum) -> Vec<NodeValue> {
        datum.conjugacy_classes().iter().map(|c| self.values[c[0]]).collect()
    }

    pub fn value_laurent(&self, datum: &RootDatum, node: usize) -> LaurentScalar {
        match self.values[node] {
            NodeValue::MinusOne => LaurentScalar::constant(-1),
            NodeValue::Param => LaurentScalar::q_pow(datum.param(node)),
        }
    }

    /// Human-readable value at a node: `-1`, `q^d` or `0`.
    pub fn label(&self, datum: &RootDatum, node: usize) -> String {
        match (self.values[node], self.mode) {
            (NodeValue::MinusOne, _) => "-1".into(),
            (NodeValue::Param, CharMode::ModP(_)) => "0".into(),
            (NodeValue::Param, CharMode::Generic) => format!("q^{}", datum.param(node)),
        }
    }

    /// `chi . u`: the character `s -> chi(u(s))`.
    pub fn twist(&self, perm: &[usize]) -> Character {
        Character { mode: self.mode, values: (0..self.values.len()).map(|s| self.values[perm[s]]).collect(), omega: vec![] }
    }

    pub fn restrict(&self) -> Character {
        Character { omega: vec![], ..self.clone() }
    }
}

impl fmt::Display for NodeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeValue::MinusOne => write!(f, "-1"),
            NodeValue::Param => write!(f, "q"),
        }
    }
}

impl Serialize for NodeValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Every character of the affine part: `2^m` generically, `2^{|S|}` mod `p`.
/// Ordered by bitmask, bit set meaning value `q_s` (resp. `0`); the special
/// character comes first and the trivial one last.
pub fn enumerate_characters(datum: &RootDatum, mode: CharMode) -> Vec<Character> {
    let n = datum.num_nodes();
    match mode {
        CharMode::Generic => {
            let classes = datum.conjugacy_classes();
            (0u32..1 << classes.len())
                .map(|mask| {
                    let mut values = vec![NodeValue::MinusOne; n];
                    for (i, c) in classes.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            for &s in c {
                                values[s] = NodeValue::Param;
                            }
                        }
                    }
                    Character { mode, values, omega: vec![] }
                })
                .collect()
        }
        CharMode::ModP(_) => (0u32..1 << n)
            .map(|mask| Character {
                mode,
                values: (0..n).map(|s| if mask >> s & 1 == 1 { NodeValue::Param } else { NodeValue::MinusOne }).collect(),
                omega: vec![],
            })
            .collect(),
    }
}

/// A character extends iff it is constant on the orbits of the decorated length-zero group.
pub fn character_extends(datum: &RootDatum, chi: &Character) -> bool {
    datum.psi().elements.iter().all(|u| (0..datum.num_nodes()).all(|s| chi.values[s] == chi.values[u.perm[s]]))
}

/// Homomorphisms from the decorated length-zero group to `{+-1}`.
pub fn sign_homs(datum: &RootDatum) -> Vec<Vec<i8>> {
    let g = datum.psi();
    let n = g.order();
    (0u32..1 << n)
        .map(|mask| (0..n).map(|a| if mask >> a & 1 == 1 { -1i8 } else { 1 }).collect::<Vec<_>>())
        .filter(|h| (0..n).all(|a| (0..n).all(|b| h[g.table[a][b]] == h[a] * h[b])))
        .collect()
}

/// All extensions with sign values, trivial extension first; empty if `chi` does not extend.
pub fn extensions(datum: &RootDatum, chi: &Character) -> Vec<Character> {
    if !character_extends(datum, chi) {
        return vec![];
    }
    sign_homs(datum).into_iter().map(|omega| Character { omega, ..chi.clone() }).collect()
}

/// Right module: row vectors, `x . T_w` is `x M(w)` and `M(xy) = M(x) M(y)`.
#[derive(Clone, PartialEq)]
pub struct FinModule<R> {
    pub gens: Vec<Mat<R>>,
    /// Matrices of the decorated length-zero group, by index; empty for a
    /// module of the affine part only.
    pub omega: Vec<Mat<R>>,
    pub params: Vec<u32>,
    pub unit: R,
}

impl<R: Ring> fmt::Debug for FinModule<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinModule").field("gens", &self.gens).field("omega", &self.omega).finish()
    }
}

impl<R: Ring> FinModule<R> {
    pub fn dim(&self) -> usize {
        self.gens[0].dim()
    }

    pub fn identity(&self) -> Mat<R> {
        Mat::identity(self.dim(), &self.unit)
    }

    /// Quadratic and braid relations, and the length-zero relations when present.
    pub fn check_relations(&self, datum: &RootDatum) -> Result<(), RepError> {
        let n = datum.num_nodes();
        if self.gens.len() != n {
            return Err(RepError::RelationsFail(format!("expected {n} generator matrices")));
        }
        let id = self.identity();
        for s in 0..n {
            let q = Mat::scalar(self.dim(), &self.unit.q_pow(self.params[s]));
            if !self.gens[s].sub(&q).mul(&self.gens[s].add(&id)).is_zero() {
                return Err(RepError::RelationsFail(format!("quadratic relation at node {s}")));
            }
        }
        for s in 0..n {
            for t in s + 1..n {
                let Some(m) = datum.bond(s, t) else { continue };
                let (mut a, mut b) = (id.clone(), id.clone());
                for k in 0..m {
                    let (x, y) = if k % 2 == 0 { (s, t) } else { (t, s) };
                    a = a.mul(&self.gens[x]);
                    b = b.mul(&self.gens[y]);
                }
                if a != b {
                    return Err(RepError::RelationsFail(format!("braid relation at nodes {s}, {t}")));
                }
            }
        }
        if self.omega.is_empty() {
            return Ok(());
        }
        let g = datum.psi();
        if self.omega.len() != g.order() || !self.omega[0].is_identity() {
            return Err(RepError::RelationsFail("length-zero matrices do not match the group".into()));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if self.omega[a].mul(&self.omega[b]) != self.omega[g.table[a][b]] {
                    return Err(RepError::RelationsFail(format!("length-zero product {a} * {b}")));
                }
            }
            for s in 0..n {
                let lhs = self.omega[a].mul(&self.gens[s]);
                let rhs = self.gens[g.elements[a].perm[s]].mul(&self.omega[a]);
                if lhs != rhs {
                    return Err(RepError::RelationsFail(format!("conjugation of node {s} by length-zero element {a}")));
                }
            }
        }
        Ok(())
    }

    /// Matrix of `T_s^* = T_s - q_s + 1`.
    pub fn star_gen(&self, s: usize) -> Mat<R> {
        let c = self.unit.q_pow(self.params[s]).sub(&self.unit.one_like());
        self.gens[s].sub(&Mat::scalar(self.dim(), &c))
    }

    /// Image under `T_w -> (-1)^{l(w)} T_w^*`: `M_s -> -M_s + (q_s - 1)`, length-zero part unchanged.
    pub fn star_twist(&self) -> FinModule<R> {
        FinModule {
            gens: (0..self.gens.len()).map(|s| self.star_gen(s).neg()).collect(),
            omega: self.omega.clone(),
            params: self.params.clone(),
            unit: self.unit.clone(),
        }
    }

    pub fn direct_sum(&self, other: &FinModule<R>) -> FinModule<R> {
        FinModule {
            gens: self.gens.iter().zip(&other.gens).map(|(a, b)| a.direct_sum(b)).collect(),
            omega: self.omega.iter().zip(&other.omega).map(|(a, b)| a.direct_sum(b)).collect(),
            params: self.params.clone(),
            unit: self.unit.clone(),
        }
    }

    /// Matrix of `T_w`.
    pub fn t_matrix(&self, alg: &HeckeAlgebra, w: &crate::weyl::ExtWeylElt) -> Result<Mat<R>, RepError> {
        let (u, word) = alg.reduced_word(w);
        let mut m = self.omega_matrix(alg, &u)?;
        for s in word {
            m = m.mul(&self.gens[s]);
        }
        Ok(m)
    }

    fn omega_matrix(&self, alg: &HeckeAlgebra, u: &crate::weyl::ExtWeylElt) -> Result<Mat<R>, RepError> {
        if u.is_identity() {
            return Ok(self.identity());
        }
        let idx = alg.datum().psi().index_of(u).ok_or_else(|| HeckeError::NotInAlgebra(u.translation_part()))?;
        self.omega
            .get(idx)
            .cloned()
            .ok_or_else(|| RepError::RelationsFail("module has no length-zero action".into()))
    }

    /// Matrix of the Bernstein element `E_lambda`.
    pub fn bernstein_matrix(&self, alg: &HeckeAlgebra, lam: &[i64]) -> Result<Mat<R>, RepError> {
        if !alg.datum().hecke_lattice().contains(lam) {
            return Err(HeckeError::NotInAlgebra(lam.to_vec()).into());
        }
        let (u, steps) = alg.bernstein_walk(lam);
        let mut m = self.omega_matrix(alg, &u)?;
        for (s, starred) in steps {
            m = m.mul(&if starred { self.star_gen(s) } else { self.gens[s].clone() });
        }
        Ok(m)
    }

    /// Matrix of `z_O`; `orbit` must be a full orbit.
    pub fn central_matrix(&self, alg: &HeckeAlgebra, orbit: &[Vec<i64>]) -> Result<Mat<R>, RepError> {
        let full: BTreeSet<Vec<i64>> = alg.datum().orbit(&orbit[0]).into_iter().collect();
        let given: BTreeSet<Vec<i64>> = orbit.iter().cloned().collect();
        if full != given || given.len() != orbit.len() {
            return Err(HeckeError::NotAFullOrbit(orbit.to_vec()).into());
        }
        let mut z = Mat::zeros(self.dim(), &self.unit);
        for lam in orbit {
            z = z.add(&self.bernstein_matrix(alg, lam)?);
        }
        Ok(z)
    }
}

/// One-dimensional module of a character (generic mode).
pub fn character_module(datum: &RootDatum, chi: &Character) -> FinModule<LaurentScalar> {
    let one = LaurentScalar::one();
    FinModule {
        gens: (0..datum.num_nodes()).map(|s| Mat::scalar(1, &chi.value_laurent(datum, s))).collect(),
        omega: chi.omega.iter().map(|e| Mat::scalar(1, &LaurentScalar::constant(*e as i64))).collect(),
        params: datum.decoration().to_vec(),
        unit: one,
    }
}

/// One-dimensional module of a character over `F_p`.
pub fn character_module_fp(datum: &RootDatum, chi: &Character, p: u64) -> FinModule<Fp> {
    let val = |v: NodeValue| match v {
        NodeValue::MinusOne => Fp::new(-1, p),
        NodeValue::Param => Fp::new(0, p),
    };
    FinModule {
        gens: chi.values.iter().map(|v| Mat::scalar(1, &val(*v))).collect(),
        omega: chi.omega.iter().map(|e| Mat::scalar(1, &Fp::new(*e as i64, p))).collect(),
        params: datum.decoration().to_vec(),
        unit: Fp::new(1, p),
    }
}

/// Two-dimensional module induced from `chi`, extended trivially to its
/// stabilizer `K` of index two in the decorated length-zero group.
/// Basis `1 (x) 1`, `1 (x) T_u` with `u` outside `K`.
pub fn induce_character(datum: &RootDatum, chi: &Character) -> Result<FinModule<LaurentScalar>, RepError> {
    if character_extends(datum, chi) {
        return Err(RepError::CharacterExtends);
    }
    let g = datum.psi();
    let in_k: Vec<bool> = g.elements.iter().map(|u| chi.twist(&u.perm).values == chi.values).collect();
    let k_size = in_k.iter().filter(|b| **b).count();
    if 2 * k_size != g.order() {
        return Err(RepError::NoIndexTwoStructure);
    }
    let u = in_k.iter().position(|b| !b).unwrap();
    let bar = chi.twist(&g.elements[u].perm);
    let zero = LaurentScalar::zero();
    let one = LaurentScalar::one();
    let gens = (0..datum.num_nodes())
        .map(|s| {
            Mat::from_rows(vec![
                vec![chi.value_laurent(datum, s), zero.clone()],
                vec![zero.clone(), bar.value_laurent(datum, s)],
            ])
        })
        .collect();
    let swap = Mat::from_rows(vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]]);
    let omega = in_k.iter().map(|k| if *k { Mat::identity(2, &one) } else { swap.clone() }).collect();
    Ok(FinModule { gens, omega, params: datum.decoration().to_vec(), unit: one })
}

/// The `|S|`-dimensional reflection module, defined on the left by
/// `T_s e_t = -e_t` (`s = t`), `q e_t` (`n_st = 2`), `q e_t + q^{1/2} e_s`
/// (`n_st = 3`) and `T_u e_t = e_{u(t)}`, turned into a right module through
/// `x . T_w = T_{w^-1} x`.
pub fn reflection_module(datum: &RootDatum) -> Result<FinModule<LaurentScalar>, RepError> {
    if !datum.is_simply_laced_affine() {
        return Err(RepError::NotSimplyLaced);
    }
    let n = datum.num_nodes();
    let d = datum.param(0);
    let (q, sq) = (LaurentScalar::q_pow(d), LaurentScalar::v_pow(d as i32));
    let one = LaurentScalar::one();
    let gens = (0..n)
        .map(|s| {
            // Left matrix: column t is the image of e_t; the right matrix is its transpose.
            let mut left = Mat::zeros(n, &one);
            for t in 0..n {
                if s == t {
                    left.set(t, t, LaurentScalar::constant(-1));
                } else {
                    left.set(t, t, q.clone());
                    if datum.bond(s, t) == Some(3) {
                        left.set(s, t, sq.clone());
                    }
                }
            }
            left.transpose()
        })
        .collect();
    let g = datum.psi();
    let omega = (0..g.order())
        .map(|a| {
            let inv = &g.elements[g.inverse(a)].perm;
            let mut left = Mat::zeros(n, &one);
            for t in 0..n {
                left.set(inv[t], t, one.clone());
            }
            left.transpose()
        })
        .collect();
    Ok(FinModule { gens, omega, params: datum.decoration().to_vec(), unit: one })
}

/// Entries evaluated at `v = 0` and read in `F_p`.
pub fn reduce_mod_p(m: &FinModule<LaurentScalar>, p: u64) -> Result<FinModule<Fp>, RepError> {
    let unit = Fp::new(1, p);
    let conv = |mat: &Mat<LaurentScalar>| -> Result<Mat<Fp>, RepError> {
        let n = mat.dim();
        let mut out = Mat::zeros(n, &unit);
        for i in 0..n {
            for j in 0..n {
                let c = mat.get(i, j);
                let r = c.at_zero_mod(p).ok_or_else(|| RepError::NegativePowersPresent(c.to_string()))?;
                out.set(i, j, Fp::new(r as i64, p));
            }
        }
        Ok(out)
    };
    Ok(FinModule {
        gens: m.gens.iter().map(conv).collect::<Result<_, _>>()?,
        omega: m.omega.iter().map(conv).collect::<Result<_, _>>()?,
        params: m.params.clone(),
        unit,
    })
}

/// Composition factors of the affine part, read off the diagonal of
/// simultaneously triangular generator matrices.
pub fn decompose_at_v0(m: &FinModule<Fp>) -> Result<Vec<Character>, RepError> {
    let upper = m.gens.iter().all(Mat::is_upper_triangular);
    let lower = m.gens.iter().all(Mat::is_lower_triangular);
    if !upper && !lower {
        return Err(RepError::NotTriangular);
    }
    let p = m.unit.modulus();
    (0..m.dim())
        .map(|i| {
            let values = m
                .gens
                .iter()
                .map(|g| match g.get(i, i).signed() {
                    -1 => Ok(NodeValue::MinusOne),
                    0 => Ok(NodeValue::Param),
                    other => Err(RepError::NotACharacterValue(other)),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Character { mode: CharMode::ModP(p), values, omega: vec![] })
        })
        .collect()
}

/// The character `chi_s`: `0` at `s`, `-1` elsewhere.
pub fn chi_s(datum: &RootDatum, s: usize, p: u64) -> Character {
    Character {
        mode: CharMode::ModP(p),
        values: (0..datum.num_nodes()).map(|t| if t == s { NodeValue::Param } else { NodeValue::MinusOne }).collect(),
        omega: vec![],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCertificate {
    pub orbit: Vec<i64>,
    pub orbit_size: usize,
    /// `None` when the central element is not nilpotent on the module.
    pub nilpotency_degree: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupersingularCertificate {
    pub supersingular: bool,
    /// `true` when only part of the generator orbits was examined.
    pub sampled: bool,
    pub orbits: Vec<OrbitCertificate>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SupersingularOptions {
    /// Examine every generator orbit, including the large ones of `E_7`, `E_8`.
    pub exhaustive: bool,
}

/// Largest orbit enumerated in sampled mode.
const SAMPLE_ORBIT_CAP: usize = 2000;

fn orbit_bounded(datum: &RootDatum, lam: &[i64], cap: usize) -> Option<Vec<Vec<i64>>> {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::from([lam.to_vec()]);
    let mut stack = vec![lam.to_vec()];
    while let Some(x) = stack.pop() {
        for i in 0..datum.rank() {
            if x[i] != 0 {
                let y = datum.reflect_coweight(i, &x);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return None;
                    }
                    stack.push(y);
                }
            }
        }
    }
    Some(seen.into_iter().collect())
}

/// A `W_0`-orbit of lattice points.
pub type Orbit = Vec<Vec<i64>>;

/// Orbits of the dominant monoid generators of the algebra's lattice (of the
/// coroot lattice when `affine_only`). In sampled mode for `E_7`, `E_8` only
/// the smallest generator orbit is kept.
pub fn generator_orbits(
    datum: &RootDatum,
    affine_only: bool,
    opts: SupersingularOptions,
) -> Result<(Vec<Orbit>, bool), RepError> {
    let lattice = if affine_only { datum.coroot_lattice() } else { datum.hecke_lattice() };
    let gens = hilbert_basis(lattice, DEFAULT_HILBERT_BOUND)?;
    let large = datum.cartan_type().family == Family::E && datum.rank() >= 7;
    if opts.exhaustive || !large {
        return Ok((gens.iter().map(|g| datum.orbit(g)).collect(), false));
    }
    let smallest = gens
        .iter()
        .filter_map(|g| orbit_bounded(datum, g, SAMPLE_ORBIT_CAP))
        .min_by_key(|o| o.len())
        .ok_or_else(|| RepError::UnhandledCase("no generator orbit below the sampling cap".into()))?;
    Ok((vec![smallest], true))
}

/// `M` is supersingular iff every `z_O` over generator orbits acts nilpotently.
/// A module of the affine part only is tested on the coroot lattice.
pub fn is_supersingular(
    alg: &HeckeAlgebra,
    m: &FinModule<Fp>,
    opts: SupersingularOptions,
) -> Result<SupersingularCertificate, RepError> {
    let datum = alg.datum();
    m.check_relations(datum)?;
    let (orbits, sampled) = generator_orbits(datum, m.omega.is_empty(), opts)?;
    let mut certs = Vec::new();
    for orbit in orbits {
        let z = m.central_matrix(alg, &orbit)?;
        let rep = orbit.iter().find(|l| datum.is_dominant(l)).unwrap().clone();
        certs.push(OrbitCertificate { orbit: rep, orbit_size: orbit.len(), nilpotency_degree: z.nilpotency_degree() });
    }
    Ok(SupersingularCertificate {
        supersingular: certs.iter().all(|c| c.nilpotency_degree.is_some()),
        sampled,
        orbits: certs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentEntry {
    pub lambda: Vec<i64>,
    /// `chi(theta_lambda) = +- v^exponent`.
    pub exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscretenessCertificate {
    pub discrete: bool,
    pub table: Vec<ExponentEntry>,
}

/// Exponent `k` with `chi(theta_lambda) = +- v^k`: along a reduced word of
/// `t_lambda`, `+d(s)` where `chi(T_s) = q_s` and `-d(s)` where `chi(T_s) = -1`.
pub fn theta_exponent(alg: &HeckeAlgebra, chi: &Character, lam: &[i64]) -> i64 {
    let datum = alg.datum();
    let (_, word) = alg.reduced_word(&datum.translation(lam));
    word.iter()
        .map(|&s| {
            let d = datum.param(s) as i64;
            match chi.values[s] {
                NodeValue::Param => d,
                NodeValue::MinusOne => -d,
            }
        })
        .sum()
}

/// Discrete iff `|chi(theta_lambda)| < 1` for every dominant generator of the
/// coroot lattice, decided on exponents.
pub fn is_discrete_character(alg: &HeckeAlgebra, chi: &Character) -> Result<DiscretenessCertificate, RepError> {
    let datum = alg.datum();
    let gens = hilbert_basis(datum.coroot_lattice(), DEFAULT_HILBERT_BOUND)?;
    let table: Vec<ExponentEntry> =
        gens.into_iter().map(|lambda| ExponentEntry { exponent: theta_exponent(alg, chi, &lambda), lambda }).collect();
    Ok(DiscretenessCertificate { discrete: table.iter().all(|e| e.exponent < 0), table })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Character1Dim,
    Induced2Dim,
    ReflectionTwist,
    ExcludedTypeA,
}

impl Verdict {
    pub fn dimension_class(&self) -> Option<u32> {
        match self {
            Verdict::Character1Dim => Some(1),
            Verdict::Induced2Dim => Some(2),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum DiscreteEvidence {
    ExponentTable { table: Vec<ExponentEntry> },
    CitedLusztig,
}

#[derive(Clone, Debug)]
pub struct KeyResult {
    pub verdict: Verdict,
    pub character: Option<Character>,
    pub module: Option<FinModule<LaurentScalar>>,
    pub discrete: Option<DiscreteEvidence>,
    pub supersingular: Option<SupersingularCertificate>,
    /// Characters of the `v = 0` reduction (reflection case).
    pub reduction: Vec<Character>,
}

/// The case analysis producing a discrete simple module with supersingular reduction.
pub fn key_result_search(alg: &HeckeAlgebra, p: u64, opts: SupersingularOptions) -> Result<KeyResult, RepError> {
    let datum = alg.datum();
    if !datum.is_adjoint() {
        return Err(RepError::NotAdjoint);
    }
    let ty = datum.cartan_type();
    let equal = datum.decoration().iter().all(|d| *d == datum.param(0));
    if ty.family == Family::A && equal {
        return Ok(KeyResult {
            verdict: Verdict::ExcludedTypeA,
            character: None,
            module: None,
            discrete: None,
            supersingular: None,
            reduction: vec![],
        });
    }
    let mut discrete = Vec::new();
    for chi in enumerate_characters(datum, CharMode::Generic) {
        if chi.is_special() {
            continue;
        }
        let cert = is_discrete_character(alg, &chi)?;
        if cert.discrete {
            discrete.push((chi, cert));
        }
    }
    let finish = |verdict, chi: Option<Character>, module: FinModule<LaurentScalar>, evidence| {
        module.check_relations(datum)?;
        let reduced = reduce_mod_p(&module, p)?;
        let ss = is_supersingular(alg, &reduced, opts)?;
        let reduction = match verdict {
            Verdict::ReflectionTwist => decompose_at_v0(&reduced)?,
            _ => vec![],
        };
        Ok(KeyResult { verdict, character: chi, module: Some(module), discrete: Some(evidence), supersingular: Some(ss), reduction })
    };
    if let Some((chi, cert)) = discrete.iter().find(|(c, _)| character_extends(datum, c)) {
        let ext = extensions(datum, chi).remove(0);
        let module = character_module(datum, &ext);
        return finish(Verdict::Character1Dim, Some(ext), module, DiscreteEvidence::ExponentTable { table: cert.table.clone() });
    }
    if !discrete.is_empty() {
        // Prefer the pattern (-1, -1, q) on the classes when available.
        let preferred = discrete
            .iter()
            .find(|(c, _)| {
                c.class_values(datum) == [NodeValue::MinusOne, NodeValue::MinusOne, NodeValue::Param]
            })
            .unwrap_or(&discrete[0]);
        let (chi, cert) = preferred;
        let module = induce_character(datum, chi)?;
        return finish(Verdict::Induced2Dim, Some(chi.clone()), module, DiscreteEvidence::ExponentTable { table: cert.table.clone() });
    }
    if matches!(ty.family, Family::D | Family::E) {
        let module = reflection_module(datum)?.star_twist();
        return finish(Verdict::ReflectionTwist, None, module, DiscreteEvidence::CitedLusztig);
    }
    Err(RepError::UnhandledCase(format!("{ty} with parameters {:?}", datum.class_decoration())))
}
