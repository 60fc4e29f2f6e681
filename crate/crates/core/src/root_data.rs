//! Irreducible reduced root systems of types A-G with their completed Dynkin
//! diagram, parameter decoration, reflection-class partition of the affine
//! simple reflections, and the length-zero group acting on the diagram.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::IntLattice;
use crate::weyl::{AffineRoot, ExtWeylElt, FiniteWeyl, MAX_RANK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for Family {
    type Err = RootDataError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "A" | "a" => Family::A,
            "B" | "b" => Family::B,
            "C" | "c" => Family::C,
            "D" | "d" => Family::D,
            "E" | "e" => Family::E,
            "F" | "f" => Family::F,
            "G" | "g" => Family::G,
            other => return Err(RootDataError::UnknownFamily(other.to_string())),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootDataError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok || rank > MAX_RANK {
            return Err(RootDataError::InvalidRank { family, rank });
        }
        Ok(Self { family, rank })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootDataError {
    #[error("unknown root system family {0:?}")]
    UnknownFamily(String),
    #[error("invalid rank {rank} for type {family:?}")]
    InvalidRank { family: Family, rank: usize },
    #[error("decoration {given:?} is not constant on the reflection classes {classes:?}")]
    DecorationNotClassConstant { given: Vec<u32>, classes: Vec<Vec<usize>> },
    #[error("parameters must be positive integers, got {0:?}")]
    NonPositiveParameter(Vec<u32>),
    #[error("lattice is not intermediate between coroot and coweight lattices: {0}")]
    LatticeNotIntermediate(String),
}

/// Choice of the translation lattice, in fundamental-coweight coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeChoice {
    Coroot,
    Coweight,
    Explicit(Vec<Vec<i64>>),
}

impl Serialize for LatticeChoice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            LatticeChoice::Coroot => s.serialize_str("coroot"),
            LatticeChoice::Coweight => s.serialize_str("coweight"),
            LatticeChoice::Explicit(b) => b.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for LatticeChoice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Name(String),
            Basis(Vec<Vec<i64>>),
        }
        match Raw::deserialize(d)? {
            Raw::Name(n) => match n.as_str() {
                "coroot" => Ok(LatticeChoice::Coroot),
                "coweight" => Ok(LatticeChoice::Coweight),
                other => Err(serde::de::Error::custom(format!("unknown lattice {other:?}"))),
            },
            Raw::Basis(b) => Ok(LatticeChoice::Explicit(b)),
        }
    }
}

/// One element of the length-zero group together with its permutation of `S`.
#[derive(Clone, Debug)]
pub struct OmegaElt {
    pub elt: ExtWeylElt,
    /// `perm[s] = u(s)`, where `u s u^-1 = u(s)`.
    pub perm: Vec<usize>,
    /// Coset representative in the coweight lattice (`0` or a minuscule coweight).
    pub coweight: Vec<i64>,
}

/// Finite abelian group acting on the affine nodes. Index 0 is the identity.
#[derive(Clone, Debug)]
pub struct OmegaGroup {
    pub elements: Vec<OmegaElt>,
    /// `table[a][b]` is the index of `a * b`.
    pub table: Vec<Vec<usize>>,
}

impl OmegaGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).expect("group without inverse")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    pub fn index_of(&self, elt: &ExtWeylElt) -> Option<usize> {
        self.elements.iter().position(|o| &o.elt == elt)
    }

    /// Isomorphism type of the (abelian) group.
    pub fn iso_type(&self) -> String {
        let n = self.order();
        if n == 1 {
            return "1".into();
        }
        let orders: Vec<usize> = (0..n).map(|a| self.element_order(a)).collect();
        if orders.contains(&n) {
            return format!("Z/{n}");
        }
        if orders.iter().all(|&o| o <= 2) {
            let k = n.trailing_zeros();
            return vec!["Z/2"; k as usize].join(" x ");
        }
        format!("abelian of order {n}, exponent {}", orders.iter().max().unwrap())
    }

    /// Checks closure, identity, inverses and associativity of the table, and
    /// that every permutation is compatible with it.
    pub fn check_axioms(&self) -> bool {
        let n = self.order();
        let assoc = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.table[self.table[a][b]][c] == self.table[a][self.table[b][c]]))
        });
        let ident = (0..n).all(|a| self.table[0][a] == a && self.table[a][0] == a);
        let inv = (0..n).all(|a| (0..n).any(|b| self.table[a][b] == 0));
        let perms = (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.table[a][b];
                (0..self.elements[0].perm.len())
                    .all(|s| self.elements[ab].perm[s] == self.elements[a].perm[self.elements[b].perm[s]])
            })
        });
        assoc && ident && inv && perms
    }
}

/// An irreducible reduced root system, a translation lattice between the
/// coroot and coweight lattices, and a parameter decoration on the affine
/// simple reflections.
///
/// Coordinates: roots in the simple-root basis, coweights in the fundamental
/// coweight basis, so the pairing is the dot product. Affine nodes are indexed
/// `0..=rank`, node `0` being the affine node attached through the highest root.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub(crate) ty: CartanType,
    /// `cartan[i][j] = <alpha_i^vee, alpha_j>` (finite nodes, 0-based).
    pub(crate) cartan: Vec<Vec<i64>>,
    pub(crate) root_lengths: Vec<i64>,
    pub(crate) positive_roots: Vec<Vec<i64>>,
    /// Coroot of each positive root, in coweight coordinates.
    pub(crate) positive_coroots: Vec<Vec<i64>>,
    pub(crate) highest_root: Vec<i64>,
    pub(crate) highest_coroot: Vec<i64>,
    pub(crate) simple_affine_roots: Vec<AffineRoot>,
    pub(crate) reflections: Vec<ExtWeylElt>,
    /// Coxeter matrix on affine nodes; `0` encodes an infinite bond.
    pub(crate) coxeter: Vec<Vec<u32>>,
    pub(crate) classes: Vec<Vec<usize>>,
    pub(crate) node_class: Vec<usize>,
    pub(crate) decoration: Vec<u32>,
    pub(crate) lattice_choice: LatticeChoice,
    pub(crate) lattice: IntLattice,
    pub(crate) coroot_lattice: IntLattice,
    pub(crate) hecke_lattice: IntLattice,
    pub(crate) omega: OmegaGroup,
    pub(crate) psi: OmegaGroup,
}

fn bourbaki_diagram(ty: CartanType) -> (Vec<i64>, Vec<(usize, usize)>) {
    let l = ty.rank;
    let chain = |n: usize| (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match ty.family {
        Family::A => (vec![1; l], chain(l)),
        Family::B => {
            let mut len = vec![2; l];
            len[l - 1] = 1;
            (len, chain(l))
        }
        Family::C => {
            let mut len = vec![1; l];
            len[l - 1] = 2;
            (len, chain(l))
        }
        Family::D => {
            let mut edges = chain(l - 1);
            edges.push((l - 3, l - 1));
            (vec![1; l], edges)
        }
        Family::E => {
            let mut edges = vec![(0, 2), (1, 3), (2, 3)];
            for i in 3..l - 1 {
                edges.push((i, i + 1));
            }
            (vec![1; l], edges)
        }
        Family::F => (vec![2, 2, 1, 1], chain(4)),
        Family::G => (vec![1, 3], chain(2)),
    }
}

fn cartan_matrix(ty: CartanType) -> (Vec<Vec<i64>>, Vec<i64>) {
    let (len, edges) = bourbaki_diagram(ty);
    let l = ty.rank;
    let mut a = vec![vec![0i64; l]; l];
    for i in 0..l {
        a[i][i] = 2;
    }
    for &(i, j) in &edges {
        let m = len[i].max(len[j]);
        a[i][j] = -m / len[i];
        a[j][i] = -m / len[j];
    }
    (a, len)
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootDatum {
    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    /// Number of affine simple reflections, `rank + 1`.
    pub fn num_nodes(&self) -> usize {
        self.ty.rank + 1
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Relative squared lengths of the simple roots (shortest = 1).
    pub fn root_lengths(&self) -> &[i64] {
        &self.root_lengths
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    pub fn highest_root(&self) -> &[i64] {
        &self.highest_root
    }

    pub fn highest_coroot(&self) -> &[i64] {
        &self.highest_coroot
    }

    /// Simple coroot `alpha_i^vee` in coweight coordinates (`i` is 0-based finite index).
    pub fn simple_coroot(&self, i: usize) -> Vec<i64> {
        self.cartan[i].clone()
    }

    /// `2 rho^vee`, which pairs to 2 with every simple root.
    pub fn two_rho_coroot(&self) -> Vec<i64> {
        vec![2; self.rank()]
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter
    }

    /// Bond order of nodes `s`, `t`; `None` for an infinite bond.
    pub fn bond(&self, s: usize, t: usize) -> Option<u32> {
        match self.coxeter[s][t] {
            0 => None,
            m => Some(m),
        }
    }

    pub fn decoration(&self) -> &[u32] {
        &self.decoration
    }

    /// Decoration as listed by class, `d_1..d_m`.
    pub fn class_decoration(&self) -> Vec<u32> {
        self.classes.iter().map(|c| self.decoration[c[0]]).collect()
    }

    pub fn param(&self, node: usize) -> u32 {
        self.decoration[node]
    }

    pub fn node_class(&self, node: usize) -> usize {
        self.node_class[node]
    }

    pub fn lattice_choice(&self) -> &LatticeChoice {
        &self.lattice_choice
    }

    /// The translation lattice, in coweight coordinates.
    pub fn lattice(&self) -> &IntLattice {
        &self.lattice
    }

    pub fn coroot_lattice(&self) -> &IntLattice {
        &self.coroot_lattice
    }

    /// Translations whose length-zero part preserves the decoration; the
    /// lattice on which the Hecke algebra is actually defined.
    pub fn hecke_lattice(&self) -> &IntLattice {
        &self.hecke_lattice
    }

    pub fn is_adjoint(&self) -> bool {
        self.lattice.index() == Some(1)
    }

    pub fn simple_affine_root(&self, node: usize) -> &AffineRoot {
        &self.simple_affine_roots[node]
    }

    /// The affine simple reflection of `node` as an element of the extended affine Weyl group.
    pub fn reflection(&self, node: usize) -> &ExtWeylElt {
        &self.reflections[node]
    }

    pub fn omega(&self) -> &OmegaGroup {
        &self.omega
    }

    /// Subgroup of the length-zero group preserving the decoration.
    pub fn psi(&self) -> &OmegaGroup {
        &self.psi
    }

    pub fn is_simply_laced_affine(&self) -> bool {
        (0..self.num_nodes()).all(|s| (0..self.num_nodes()).all(|t| s == t || matches!(self.coxeter[s][t], 2 | 3)))
    }
}

/// Builds a datum. `decoration` is given either per class (`m` values, in the
/// order `S_1, .., S_m`) or per node (`rank + 1` values, node 0 first).
pub fn build_root_datum(
    family: Family,
    rank: usize,
    decoration: &[u32],
    lattice_choice: LatticeChoice,
) -> Result<RootDatum, RootDataError> {
    let ty = CartanType::new(family, rank)?;
    let (cartan, root_lengths) = cartan_matrix(ty);
    let l = rank;

    // Roots by closure under simple reflections.
    let simple: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| (i == j) as i64).collect()).collect();
    let mut seen: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut frontier = simple.clone();
    while let Some(beta) = frontier.pop() {
        for i in 0..l {
            let c: i64 = (0..l).map(|j| cartan[i][j] * beta[j]).sum();
            let mut img = beta.clone();
            img[i] -= c;
            if seen.insert(img.clone()) {
                frontier.push(img);
            }
        }
    }
    let mut positive_roots: Vec<Vec<i64>> = seen.into_iter().filter(|r| r.iter().all(|x| *x >= 0)).collect();
    positive_roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));

    // Doubled symmetric form B_ij = a_ij * len_i.
    let form = |a: &[i64], b: &[i64]| -> i64 {
        let mut s = 0;
        for i in 0..l {
            for j in 0..l {
                s += a[i] * b[j] * cartan[i][j] * root_lengths[i];
            }
        }
        s
    };
    let coroot_of = |beta: &[i64]| -> Vec<i64> {
        let len_beta = form(beta, beta) / 2;
        // beta^vee = sum_i beta_i len_i / len_beta alpha_i^vee
        let coeffs: Vec<i64> = (0..l)
            .map(|i| {
                let num = beta[i] * root_lengths[i];
                assert_eq!(num % len_beta, 0, "non-integral coroot");
                num / len_beta
            })
            .collect();
        (0..l).map(|j| (0..l).map(|i| coeffs[i] * cartan[i][j]).sum()).collect()
    };
    let positive_coroots: Vec<Vec<i64>> = positive_roots.iter().map(|r| coroot_of(r)).collect();
    let highest_root = positive_roots.last().unwrap().clone();
    let highest_coroot = coroot_of(&highest_root);

    // Affine simple roots and reflections.
    let mut simple_affine_roots = vec![AffineRoot::new(highest_root.iter().map(|x| -x).collect(), 1)];
    for s in &simple {
        simple_affine_roots.push(AffineRoot::new(s.clone(), 0));
    }
    let mut reflections = vec![ExtWeylElt::from_parts(
        ty,
        highest_coroot.clone(),
        FiniteWeyl::reflection(&highest_root, &highest_coroot),
    )];
    for i in 0..l {
        reflections.push(ExtWeylElt::from_parts(ty, vec![0; l], FiniteWeyl::reflection(&simple[i], &cartan[i])));
    }

    // Coxeter matrix from the affine generalized Cartan matrix.
    let n = l + 1;
    let finite_part = |node: usize| -> (Vec<i64>, Vec<i64>) {
        if node == 0 {
            (highest_root.iter().map(|x| -x).collect(), highest_coroot.iter().map(|x| -x).collect())
        } else {
            (simple[node - 1].clone(), cartan[node - 1].clone())
        }
    };
    let mut coxeter = vec![vec![1u32; n]; n];
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let (rs, cs) = finite_part(s);
            let (rt, ct) = finite_part(t);
            let prod = dot(&rt, &cs) * dot(&rs, &ct);
            coxeter[s][t] = match prod {
                0 => 2,
                1 => 3,
                2 => 4,
                3 => 6,
                _ => 0,
            };
        }
    }

    let classes = reflection_classes(&coxeter);
    let mut node_class = vec![0; n];
    for (i, c) in classes.iter().enumerate() {
        for &s in c {
            node_class[s] = i;
        }
    }

    let decoration = expand_decoration(decoration, &classes, n)?;

    let full = IntLattice::full(l);
    let coroot_lattice = IntLattice::span(l, &cartan);
    let lattice = match &lattice_choice {
        LatticeChoice::Coroot => coroot_lattice.clone(),
        LatticeChoice::Coweight => full.clone(),
        LatticeChoice::Explicit(basis) => {
            if basis.iter().any(|b| b.len() != l) {
                return Err(RootDataError::LatticeNotIntermediate(format!("basis vectors must have length {l}")));
            }
            IntLattice::span(l, basis)
        }
    };
    if !lattice.contains_lattice(&coroot_lattice) {
        return Err(RootDataError::LatticeNotIntermediate("lattice does not contain the coroot lattice".into()));
    }

    let mut datum = RootDatum {
        ty,
        cartan,
        root_lengths,
        positive_roots,
        positive_coroots,
        highest_root,
        highest_coroot,
        simple_affine_roots,
        reflections,
        coxeter,
        classes,
        node_class,
        decoration,
        lattice_choice,
        lattice: lattice.clone(),
        coroot_lattice: coroot_lattice.clone(),
        hecke_lattice: coroot_lattice.clone(),
        omega: OmegaGroup { elements: vec![], table: vec![] },
        psi: OmegaGroup { elements: vec![], table: vec![] },
    };
    datum.omega = datum.compute_omega(|lam| lattice.contains(lam));
    datum.psi = datum.decoration_subgroup(&datum.omega);
    let mut gens = datum.cartan.clone();
    gens.extend(datum.psi.elements.iter().map(|o| o.coweight.clone()));
    datum.hecke_lattice = IntLattice::span(l, &gens);
    Ok(datum)
}

fn expand_decoration(given: &[u32], classes: &[Vec<usize>], n: usize) -> Result<Vec<u32>, RootDataError> {
    if given.contains(&0) {
        return Err(RootDataError::NonPositiveParameter(given.to_vec()));
    }
    let mut per_node = vec![0u32; n];
    if given.len() == classes.len() {
        for (c, &d) in classes.iter().zip(given) {
            for &s in c {
                per_node[s] = d;
            }
        }
    } else if given.len() == n {
        per_node.copy_from_slice(given);
        for c in classes {
            if c.iter().any(|&s| per_node[s] != per_node[c[0]]) {
                return Err(RootDataError::DecorationNotClassConstant {
                    given: given.to_vec(),
                    classes: classes.to_vec(),
                });
            }
        }
    } else {
        return Err(RootDataError::DecorationNotClassConstant { given: given.to_vec(), classes: classes.to_vec() });
    }
    Ok(per_node)
}

/// Partition of the nodes by "joined by a path of odd bonds", ordered by size
/// (descending), then classes avoiding the affine node first, then smallest node.
pub fn reflection_classes(coxeter: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let n = coxeter.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for s in 0..n {
        for t in 0..n {
            if s != t && coxeter[s][t] % 2 == 1 {
                let (a, b) = (find(&mut parent, s), find(&mut parent, t));
                parent[a] = b;
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for s in 0..n {
        let r = find(&mut parent, s);
        groups.entry(r).or_default().push(s);
    }
    let mut classes: Vec<Vec<usize>> = groups.into_values().collect();
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort_by_key(|c| (std::cmp::Reverse(c.len()), c.contains(&0), c[0]));
    classes
}

impl RootDatum {
    /// The partition `S = S_1 u .. u S_m`.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Length-zero elements indexed by the coset representatives `0` and the
    /// minuscule coweights lying in the lattice.
    fn compute_omega(&self, in_lattice: impl Fn(&[i64]) -> bool) -> OmegaGroup {
        let l = self.rank();
        let mut reps = vec![vec![0i64; l]];
        for j in 0..l {
            if self.highest_root[j] == 1 {
                let mut w = vec![0i64; l];
                w[j] = 1;
                if in_lattice(&w) {
                    reps.push(w);
                }
            }
        }
        let mut elements = Vec::new();
        for rep in reps {
            let t = ExtWeylElt::translation(self.ty, &rep);
            let (omega, _) = self.strip_descents(&t);
            let perm = self.node_permutation(&omega).expect("length-zero element must permute the affine nodes");
            elements.push(OmegaElt { elt: omega, perm, coweight: rep });
        }
        let n = elements.len();
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let prod = elements[a].elt.compose(&elements[b].elt);
                table[a][b] = elements.iter().position(|o| o.elt == prod).expect("length-zero elements not closed");
            }
        }
        OmegaGroup { elements, table }
    }

    fn decoration_subgroup(&self, group: &OmegaGroup) -> OmegaGroup {
        let keep: Vec<usize> = (0..group.order())
            .filter(|&a| (0..self.num_nodes()).all(|s| self.decoration[group.elements[a].perm[s]] == self.decoration[s]))
            .collect();
        let elements = keep.iter().map(|&a| group.elements[a].clone()).collect();
        let table = keep
            .iter()
            .map(|&a| keep.iter().map(|&b| keep.iter().position(|&c| c == group.table[a][b]).unwrap()).collect())
            .collect();
        OmegaGroup { elements, table }
    }

    /// Permutation of nodes induced by a length-zero element `u`:
    /// `u . alpha_s = alpha_{perm[s]}`.
    pub fn node_permutation(&self, u: &ExtWeylElt) -> Option<Vec<usize>> {
        let mut perm = Vec::with_capacity(self.num_nodes());
        for s in 0..self.num_nodes() {
            let img = u.act_on_affine_root(&self.simple_affine_roots[s]);
            perm.push(self.simple_affine_roots.iter().position(|r| *r == img)?);
        }
        Some(perm)
    }

    /// The group `Aut(W,S)` realized as the lattice modulo coroots acting
    /// through length-zero elements.
    pub fn aut_group(&self) -> &OmegaGroup {
        &self.omega
    }

    /// Elements of [`Self::aut_group`] preserving the decoration.
    pub fn decorated_aut_group(&self) -> &OmegaGroup {
        &self.psi
    }

    /// All permutations of the affine nodes preserving the Coxeter matrix.
    /// May be strictly larger than [`Self::aut_group`] (e.g. affine `D_4`).
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.num_nodes();
        let mut out = Vec::new();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn rec(
            k: usize,
            n: usize,
            cox: &[Vec<u32>],
            perm: &mut Vec<usize>,
            used: &mut Vec<bool>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if k == n {
                out.push(perm.clone());
                return;
            }
            for img in 0..n {
                if used[img] || (0..k).any(|j| cox[k][j] != cox[img][perm[j]]) {
                    continue;
                }
                perm[k] = img;
                used[img] = true;
                rec(k + 1, n, cox, perm, used, out);
                used[img] = false;
            }
        }
        rec(0, n, &self.coxeter, &mut perm, &mut used, &mut out);
        out
    }
}
