//! Integer lattices in `Z^n` given by generating rows: Hermite normal form,
//! membership and index computations.

/// Full-rank or degenerate sublattice of `Z^n`, kept as the nonzero rows of
/// its row-style Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    n: usize,
    basis: Vec<Vec<i64>>,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        // a = b * (a div b) + a mod b
        let q = a.div_euclid(b);
        (g, y, x - q * y)
    }
}

impl IntLattice {
    /// Lattice spanned by `gens` in `Z^n`.
    pub fn span(n: usize, gens: &[Vec<i64>]) -> Self {
        let mut rows: Vec<Vec<i64>> = gens.iter().filter(|g| g.iter().any(|x| *x != 0)).cloned().collect();
        assert!(rows.iter().all(|r| r.len() == n), "generator of wrong length");
        let mut basis = Vec::new();
        let mut col = 0;
        while col < n && !rows.is_empty() {
            // Euclid on column `col` across all rows.
            loop {
                let nonzero: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
                if nonzero.len() <= 1 {
                    break;
                }
                let (a, b) = (nonzero[0], nonzero[1]);
                let (g, x, y) = ext_gcd(rows[a][col], rows[b][col]);
                let (ra, rb) = (rows[a].clone(), rows[b].clone());
                let (ca, cb) = (rows[a][col] / g, rows[b][col] / g);
                rows[a] = (0..n).map(|j| x * ra[j] + y * rb[j]).collect();
                rows[b] = (0..n).map(|j| -cb * ra[j] + ca * rb[j]).collect();
            }
            if let Some(i) = rows.iter().position(|r| r[col] != 0) {
                let mut pivot = rows.swap_remove(i);
                if pivot[col] < 0 {
                    pivot.iter_mut().for_each(|x| *x = -*x);
                }
                basis.push(pivot);
            }
            rows.retain(|r| r.iter().any(|x| *x != 0));
            col += 1;
        }
        // Reduce entries above each pivot.
        for i in 0..basis.len() {
            let pc = basis[i].iter().position(|x| *x != 0).unwrap();
            let p = basis[i][pc];
            for k in 0..i {
                let q = basis[k][pc].div_euclid(p);
                if q != 0 {
                    let row = basis[i].clone();
                    basis[k].iter_mut().zip(&row).for_each(|(x, y)| *x -= q * y);
                }
            }
        }
        Self { n, basis }
    }

    pub fn full(n: usize) -> Self {
        let gens: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        Self::span(n, &gens)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Index in `Z^n` (product of pivots); `None` if not of full rank.
    pub fn index(&self) -> Option<u64> {
        if self.rank() != self.n {
            return None;
        }
        Some(self.basis.iter().enumerate().map(|(i, r)| r[i] as u64).product())
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut r = v.to_vec();
        for row in &self.basis {
            let pc = row.iter().position(|x| *x != 0).unwrap();
            if r[pc] % row[pc] != 0 {
                return false;
            }
            let q = r[pc] / row[pc];
            r.iter_mut().zip(row).for_each(|(x, y)| *x -= q * y);
        }
        r.iter().all(|x| *x == 0)
    }

    pub fn contains_lattice(&self, other: &IntLattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_coroot_lattice_has_index_three() {
        // Rows of the A_2 Cartan matrix, in fundamental-coweight coordinates.
        let q = IntLattice::span(2, &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(q.index(), Some(3));
        assert!(q.contains(&[1, 1]));
        assert!(q.contains(&[3, 0]));
        assert!(!q.contains(&[1, 0]));
        assert!(IntLattice::full(2).contains_lattice(&q));
        assert!(!q.contains_lattice(&IntLattice::full(2)));
    }

    #[test]
    fn redundant_generators() {
        let l = IntLattice::span(2, &[vec![4, 0], vec![6, 0], vec![0, 5], vec![1, 5]]);
        assert_eq!(l.index(), Some(5 * 1));
        assert!(l.contains(&[1, 0]));
        assert!(!l.contains(&[0, 1]));
    }

    #[test]
    fn degenerate_span() {
        let l = IntLattice::span(3, &[vec![1, 1, 0], vec![2, 2, 0]]);
        assert_eq!(l.rank(), 1);
        assert_eq!(l.index(), None);
    }
}
