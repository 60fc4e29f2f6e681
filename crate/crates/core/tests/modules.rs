use num_rational::BigRational;
use num_traits::{One, Zero};

use hecke_lab::matrix::{Fp, Mat};
use hecke_lab::rep::{
    character_module_fp, enumerate_characters, extensions, induce_character, is_supersingular, key_result_search,
    reduce_mod_p, CharMode, Character, NodeValue, SupersingularOptions, Verdict,
};
use hecke_lab::weyl::hilbert_basis;
use hecke_lab::{build_root_datum, Family, HeckeAlgebra, LatticeChoice, LaurentScalar, RootDatum};

const P: u64 = 3;

fn datum(f: Family, rank: usize, d: &[u32]) -> RootDatum {
    build_root_datum(f, rank, d, LatticeChoice::Coweight).unwrap()
}

fn opts() -> SupersingularOptions {
    SupersingularOptions { exhaustive: false }
}

fn eval(m: &Mat<LaurentScalar>, v: &BigRational) -> Vec<Vec<BigRational>> {
    m.rows().iter().map(|r| r.iter().map(|c| c.eval_rational(v)).collect()).collect()
}

/// A 2-dimensional rational representation has an invariant line iff some
/// eigenvector of a non-scalar generator is fixed by every generator.
fn has_invariant_line(mats: &[Vec<Vec<BigRational>>]) -> bool {
    let scalar = |a: &Vec<Vec<BigRational>>| a[0][1].is_zero() && a[1][0].is_zero() && a[0][0] == a[1][1];
    let Some(a) = mats.iter().find(|a| !scalar(a)) else { return true };
    // Eigenvalues of a 2x2 with rational spectrum, from trace and determinant.
    let tr = &a[0][0] + &a[1][1];
    let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
    let disc = &tr * &tr - BigRational::from_integer(4.into()) * &det;
    let root = rational_sqrt(&disc).expect("rational spectrum");
    let two = BigRational::from_integer(2.into());
    for lam in [(&tr + &root) / &two, (&tr - &root) / &two] {
        let rows = [[&a[0][0] - &lam, a[0][1].clone()], [a[1][0].clone(), &a[1][1] - &lam]];
        let r = if rows[0].iter().any(|x| !x.is_zero()) { &rows[0] } else { &rows[1] };
        let v = [r[1].clone(), -r[0].clone()];
        let invariant = mats.iter().all(|b| {
            let bv0 = &b[0][0] * &v[0] + &b[0][1] * &v[1];
            let bv1 = &b[1][0] * &v[0] + &b[1][1] * &v[1];
            (&v[0] * &bv1 - &v[1] * &bv0).is_zero()
        });
        if invariant {
            return true;
        }
    }
    false
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    let r = BigRational::new(n, d);
    (&r * &r == *x).then_some(r)
}

#[test]
fn induced_modules_are_simple() {
    for d in [datum(Family::C, 2, &[1, 1, 1]), datum(Family::C, 2, &[2, 1, 1]), datum(Family::C, 3, &[1, 1, 1])] {
        let alg = HeckeAlgebra::new(&d);
        let k = key_result_search(&alg, P, opts()).unwrap();
        assert_eq!(k.verdict, Verdict::Induced2Dim, "{}", d.cartan_type());
        let m = k.module.unwrap();
        m.check_relations(&d).unwrap();
        for v in [BigRational::new(3.into(), 2.into()), BigRational::new(5.into(), 7.into())] {
            let mats: Vec<_> = m.gens.iter().chain(&m.omega).map(|g| eval(g, &v)).collect();
            assert!(!has_invariant_line(&mats), "{}", d.cartan_type());
        }
    }
}

#[test]
fn inducing_an_extendable_character_is_rejected() {
    let d = datum(Family::C, 2, &[1, 1, 1]);
    let special = enumerate_characters(&d, CharMode::Generic).remove(0);
    assert!(induce_character(&d, &special).is_err());
}

fn extended(d: &RootDatum, values: Vec<NodeValue>) -> Character {
    let chi = Character { mode: CharMode::ModP(P), values, omega: vec![] };
    extensions(d, &chi).remove(0)
}

#[test]
fn direct_sums_and_supersingularity() {
    let d = datum(Family::C, 2, &[1, 2, 2]);
    let alg = HeckeAlgebra::new(&d);
    let k = key_result_search(&alg, P, opts()).unwrap();
    assert_eq!(k.verdict, Verdict::Character1Dim);
    let chi = k.character.unwrap();
    let ss = character_module_fp(&d, &chi, P);
    let sum = ss.direct_sum(&ss);
    assert!(is_supersingular(&alg, &sum, opts()).unwrap().supersingular);
    let special = character_module_fp(&d, &extended(&d, vec![NodeValue::MinusOne; d.num_nodes()]), P);
    assert!(!is_supersingular(&alg, &special, opts()).unwrap().supersingular);
    assert!(!is_supersingular(&alg, &ss.direct_sum(&special), opts()).unwrap().supersingular);
}

#[test]
fn mod_p_characters_vanish_or_are_minus_one() {
    let d = datum(Family::G, 2, &[1, 3]);
    let chars = enumerate_characters(&d, CharMode::ModP(P));
    assert_eq!(chars.len(), 1 << d.num_nodes());
    for chi in &chars {
        let m = character_module_fp(&d, chi, P);
        m.check_relations(&d).unwrap();
        for (s, g) in m.gens.iter().enumerate() {
            let expect = if chi.values[s] == NodeValue::MinusOne { P - 1 } else { 0 };
            assert_eq!(g.get(0, 0).value(), expect);
        }
    }
}

/// Dominant lattice points that are sums of two generators.
fn non_generator_dominants(d: &RootDatum) -> Vec<Vec<i64>> {
    let gens = hilbert_basis(d.hecke_lattice(), 5_000_000).unwrap();
    let mut out = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i..] {
            out.push(a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<i64>>());
        }
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn non_generator_orbits_corroborate_supersingularity() {
    let cases = [
        datum(Family::A, 1, &[1, 2]),
        datum(Family::C, 2, &[1, 1, 1]),
        datum(Family::C, 2, &[1, 2, 2]),
        datum(Family::C, 3, &[2, 1, 1]),
        datum(Family::B, 3, &[1, 1]),
        datum(Family::G, 2, &[1, 3]),
    ];
    for d in &cases {
        let alg = HeckeAlgebra::new(d);
        let k = key_result_search(&alg, P, opts()).unwrap();
        let m: hecke_lab::rep::FinModule<Fp> = reduce_mod_p(&k.module.unwrap(), P).unwrap();
        let special = character_module_fp(d, &extended(d, vec![NodeValue::MinusOne; d.num_nodes()]), P);
        for mu in non_generator_dominants(d) {
            let orbit = d.orbit(&mu);
            let z = m.central_matrix(&alg, &orbit).unwrap();
            assert!(z.nilpotency_degree().is_some(), "{} {mu:?}", d.cartan_type());
            let zs = special.central_matrix(&alg, &orbit).unwrap();
            assert!(zs.nilpotency_degree().is_none(), "{} {mu:?}", d.cartan_type());
        }
    }
}

#[test]
fn reflection_module_reduces_to_distinct_characters() {
    let d = datum(Family::D, 4, &[1]);
    let alg = HeckeAlgebra::new(&d);
    let k = key_result_search(&alg, P, opts()).unwrap();
    assert_eq!(k.verdict, Verdict::ReflectionTwist);
    let m = k.module.unwrap();
    m.check_relations(&d).unwrap();
    assert_eq!(m.dim(), d.num_nodes());
    let mut seen = k.reduction.clone();
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), d.num_nodes());
    for chi in &k.reduction {
        assert_eq!(chi.values.iter().filter(|v| **v == NodeValue::Param).count(), 1);
    }
    let half = BigRational::new(1.into(), 2.into());
    assert!(m.unit.eval_rational(&half).is_one());
}
