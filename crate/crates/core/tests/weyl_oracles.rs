//! Independent brute-force oracles for the extended affine Weyl group.

mod common;

use std::collections::BTreeMap;

use common::{alcove_length, bfs, positive_roots_oracle};

use hecke_lab::lattice::IntLattice;
use hecke_lab::weyl::hilbert_basis;
use hecke_lab::{build_root_datum, ExtWeylElt, Family, LatticeChoice, RootDatum};

fn datum(f: Family, rank: usize, d: &[u32]) -> RootDatum {
    build_root_datum(f, rank, d, LatticeChoice::Coweight).unwrap()
}

fn small_data() -> Vec<RootDatum> {
    vec![
        datum(Family::A, 1, &[1, 1]),
        datum(Family::A, 2, &[1]),
        datum(Family::C, 2, &[1, 1, 1]),
        datum(Family::G, 2, &[1, 1]),
    ]
}

#[test]
fn positive_root_oracle_matches_datum() {
    for d in small_data() {
        assert_eq!(positive_roots_oracle(d.cartan()), {
            let mut r = d.positive_roots().to_vec();
            r.sort();
            r
        });
    }
}

#[test]
fn length_and_reduced_word_match_bfs_and_alcove_oracles() {
    for d in small_data() {
        let roots = positive_roots_oracle(d.cartan());
        let ball = bfs(&d, 6);
        for (w, &k) in &ball {
            assert_eq!(d.length(w) as usize, k, "{} {w:?}", d.cartan_type());
            assert_eq!(alcove_length(&d, w, &roots) as usize, k);
            let (om, word) = d.reduced_word(w);
            assert_eq!(word.len(), k);
            let mut rebuilt = d.element_from_word(&word);
            if let Some(i) = om {
                rebuilt = d.omega().elements[i].elt.compose(&rebuilt);
            }
            assert_eq!(&rebuilt, w);
        }
        for u in &d.omega().elements {
            for w in ball.keys().take(200) {
                let k = d.length(w);
                assert_eq!(d.length(&u.elt.compose(w)), k);
                assert_eq!(d.length(&w.compose(&u.elt)), k);
                let (om, word) = d.reduced_word(&u.elt.compose(w));
                assert_eq!(word.len() as u64, k);
                let rebuilt = d.omega().elements[om.unwrap()].elt.compose(&d.element_from_word(&word));
                assert_eq!(rebuilt, u.elt.compose(w));
            }
        }
    }
}

#[test]
fn ball_sizes_of_affine_a1() {
    // The infinite dihedral group has two elements of each positive length.
    let d = datum(Family::A, 1, &[1, 1]);
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for k in bfs(&d, 6).values() {
        *counts.entry(*k).or_default() += 1;
    }
    assert_eq!(counts.into_values().collect::<Vec<_>>(), vec![1, 2, 2, 2, 2, 2, 2]);
}

#[test]
fn length_is_subadditive_with_equality_on_reduced_concatenation() {
    for d in small_data() {
        let ball: Vec<ExtWeylElt> = bfs(&d, 3).into_keys().collect();
        for a in &ball {
            for b in ball.iter().take(20) {
                let ab = a.compose(b);
                assert!(d.length(&ab) <= d.length(a) + d.length(b));
            }
        }
    }
}

#[test]
fn orbits_have_one_dominant_and_one_antidominant_member() {
    for d in small_data() {
        for lam in [vec![1, 0], vec![2, -3], vec![-1, -1], vec![0, 0]] {
            let lam = &lam[..d.rank()];
            let orbit = d.orbit(lam);
            let dom = orbit.iter().filter(|x| d.is_dominant(x)).count();
            let anti = orbit.iter().filter(|x| d.is_dominant(&x.iter().map(|c| -c).collect::<Vec<_>>())).count();
            assert_eq!((dom, anti), (1, 1));
            assert!(d.is_dominant(&d.dominant_rep(lam)));
        }
    }
    let a2 = datum(Family::A, 2, &[1]);
    assert_eq!(a2.orbit(&[1, 0]).len(), 3);
    let c2 = datum(Family::C, 2, &[1, 1, 1]);
    assert_eq!(c2.orbit(&[1, 0]).len(), 4);
    assert_eq!(c2.orbit(&[0, 1]).len(), 4);
    assert_eq!(c2.orbit(&[0, 0]), vec![vec![0, 0]]);
}

/// Irreducible elements of the monoid `L ∩ N^l`, read off a box.
fn hilbert_oracle(lattice: &IntLattice, height: i64) -> Vec<Vec<i64>> {
    let l = lattice.ambient_dim();
    let mut pts: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..l {
        pts = pts.into_iter().flat_map(|p| (0..=height).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    pts.retain(|p| p.iter().any(|x| *x != 0) && lattice.contains(p));
    let members: std::collections::BTreeSet<Vec<i64>> = pts.iter().cloned().collect();
    let mut out: Vec<Vec<i64>> = pts
        .iter()
        .filter(|p| {
            !members.iter().any(|a| {
                let b: Vec<i64> = p.iter().zip(a).map(|(x, y)| x - y).collect();
                a != *p && members.contains(&b)
            })
        })
        .cloned()
        .collect();
    out.sort();
    out
}

#[test]
fn hilbert_basis_matches_brute_force() {
    let cases: Vec<(Family, usize, Vec<u32>)> = vec![
        (Family::A, 1, vec![1, 1]),
        (Family::A, 2, vec![1]),
        (Family::A, 3, vec![1]),
        (Family::C, 2, vec![1, 1, 1]),
        (Family::B, 3, vec![1, 1]),
        (Family::C, 3, vec![1, 1, 1]),
    ];
    for (f, r, d) in cases {
        let q = build_root_datum(f, r, &d, LatticeChoice::Coroot).unwrap();
        let mut hb = hilbert_basis(q.lattice(), 5_000_000).unwrap();
        hb.sort();
        assert_eq!(hb, hilbert_oracle(q.lattice(), 6), "{f:?}{r}");
        assert_eq!(q.dominant_generators().unwrap().len(), hb.len());
    }
    let a2 = build_root_datum(Family::A, 2, &[1], LatticeChoice::Coroot).unwrap();
    let mut hb = a2.dominant_generators().unwrap();
    hb.sort();
    assert_eq!(hb, vec![vec![0, 3], vec![1, 1], vec![3, 0]]);
}

#[test]
fn dominant_generators_of_coweight_lattice_are_fundamental() {
    let e6 = datum(Family::E, 6, &[1]);
    let g = e6.dominant_generators().unwrap();
    assert_eq!(g.len(), 6);
    assert!(g.iter().all(|v| v.iter().sum::<i64>() == 1));
    let a1 = datum(Family::A, 1, &[1, 1]);
    assert_eq!(a1.dominant_generators().unwrap(), vec![vec![1]]);
}

#[test]
fn hilbert_bound_is_reported() {
    let a7 = build_root_datum(Family::A, 7, &[1], LatticeChoice::Coroot).unwrap();
    assert!(hilbert_basis(a7.lattice(), 1000).is_err());
}
