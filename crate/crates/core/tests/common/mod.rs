//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use hecke_lab::{ExtWeylElt, RootDatum};

/// Positive roots generated from the Cartan matrix alone, by closing the simple
/// roots under simple reflections.
pub fn positive_roots_oracle(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = cartan.len();
    let simple: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| (i == j) as i64).collect()).collect();
    let mut seen: Vec<Vec<i64>> = simple.clone();
    let mut queue: VecDeque<Vec<i64>> = simple.into();
    while let Some(beta) = queue.pop_front() {
        for i in 0..l {
            let pairing: i64 = (0..l).map(|j| cartan[i][j] * beta[j]).sum();
            let mut r = beta.clone();
            r[i] -= pairing;
            if !seen.contains(&r) {
                seen.push(r.clone());
                queue.push_back(r);
            }
        }
    }
    seen.retain(|r| r.iter().all(|x| *x >= 0));
    seen.sort();
    seen
}

/// Number of affine hyperplanes separating a generic point of the fundamental
/// alcove from its image.
pub fn alcove_length(d: &RootDatum, a: &ExtWeylElt, roots: &[Vec<i64>]) -> u64 {
    let l = d.rank();
    let x0: Vec<f64> = (0..l).map(|i| (1.0 + 0.37 * i as f64) / 97.0).collect();
    let x1 = a.act_on_point(&x0);
    let pair = |r: &[i64], x: &[f64]| -> f64 { r.iter().zip(x).map(|(a, b)| *a as f64 * b).sum() };
    roots
        .iter()
        .map(|r| {
            let (lo, hi) = {
                let (p, q) = (pair(r, &x0), pair(r, &x1));
                if p < q { (p, q) } else { (q, p) }
            };
            (lo.ceil() as i64..=hi.floor() as i64).count() as u64
        })
        .sum()
}

/// Breadth-first search of the Cayley graph of the affine Weyl group.
pub fn bfs(d: &RootDatum, max_len: usize) -> HashMap<ExtWeylElt, usize> {
    let mut dist = HashMap::new();
    let id = d.identity();
    dist.insert(id, 0);
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        let k = dist[&w];
        if k == max_len {
            continue;
        }
        for s in 0..d.num_nodes() {
            let ws = w.compose(d.reflection(s));
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(ws) {
                e.insert(k + 1);
                queue.push_back(ws);
            }
        }
    }
    dist
}

