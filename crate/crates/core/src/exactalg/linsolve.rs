//! Exact linear algebra over the rationals: sparse incremental RREF, kernels
//! and particular solutions.

use std::collections::BTreeMap;

use num::{One, Zero};

use super::rational::Rational;

pub type SparseRow = BTreeMap<usize, Rational>;

/// Sparse rational matrix, row major.
#[derive(Clone, Debug, Default)]
pub struct QMatrix {
    cols: usize,
    rows: Vec<SparseRow>,
}

impl QMatrix {
    pub fn new(cols: usize) -> Self {
        QMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_dense(rows: &[Vec<Rational>], cols: usize) -> Self {
        let mut m = Self::new(cols);
        for r in rows {
            m.push_dense(r);
        }
        m
    }

    pub fn push_dense(&mut self, row: &[Rational]) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        );
    }

    pub fn push_sparse(&mut self, row: SparseRow) {
        debug_assert!(row.keys().all(|&k| k < self.cols));
        self.rows.push(row.into_iter().filter(|(_, v)| !v.is_zero()).collect());
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn rref(&self) -> Rref {
        let mut r = Rref::new(self.cols);
        for row in &self.rows {
            r.insert(row.clone());
        }
        r
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }
}

/// Reduced row echelon form grown one row at a time.
#[derive(Clone, Debug)]
pub struct Rref {
    cols: usize,
    // pivot column -> row with 1 at the pivot and zero in every other pivot column
    pivots: BTreeMap<usize, SparseRow>,
}

impl Rref {
    pub fn new(cols: usize) -> Self {
        Rref {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let hits: Vec<(usize, Rational)> = row
            .iter()
            .filter(|(c, _)| self.pivots.contains_key(c))
            .map(|(c, v)| (*c, v.clone()))
            .collect();
        for (c, f) in hits {
            for (k, v) in &self.pivots[&c] {
                let e = row.entry(*k).or_insert_with(Rational::zero);
                *e -= &f * v;
                if e.is_zero() {
                    row.remove(k);
                }
            }
        }
        row
    }

    /// Adds a row; returns true when it raised the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let row = self.reduce(row);
        let Some((&p, lead)) = row.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        let row: SparseRow = row.iter().map(|(k, v)| (*k, v * &inv)).collect();
        for other in self.pivots.values_mut() {
            if let Some(f) = other.get(&p).cloned() {
                for (k, v) in &row {
                    let e = other.entry(*k).or_insert_with(Rational::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        other.remove(k);
                    }
                }
            }
        }
        self.pivots.insert(p, row);
        true
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    pub fn pivot_rows(&self) -> Vec<Vec<Rational>> {
        self.pivots
            .values()
            .map(|r| {
                let mut d = vec![Rational::zero(); self.cols];
                for (k, v) in r {
                    d[*k] = v.clone();
                }
                d
            })
            .collect()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Kernel basis, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for f in 0..self.cols {
            if self.pivots.contains_key(&f) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (p, row) in &self.pivots {
                if let Some(x) = row.get(&f) {
                    v[*p] = -x.clone();
                }
            }
            out.push(v);
        }
        out
    }
}

impl PartialEq for Rref {
    fn eq(&self, other: &Self) -> bool {
        self.cols == other.cols && self.pivots == other.pivots
    }
}

/// Exact kernel basis in reduced row echelon normal form.
pub fn kernel_exact(m: &QMatrix) -> Vec<Vec<Rational>> {
    let k = m.rref().kernel();
    rref_rows(&k, m.cols())
}

/// Canonical RREF of the span of `vectors`.
pub fn rref_rows(vectors: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    QMatrix::from_dense(vectors, cols).rref().pivot_rows()
}

/// Solve `sum_j x_j columns[j] = b`; `None` when `b` is outside the span.
/// With dependent columns the free unknowns are set to zero.
pub fn solve_in_span(columns: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = columns.len();
    let m = b.len();
    // rows of the augmented system [A | b]
    let mut aug = QMatrix::new(n + 1);
    for i in 0..m {
        let mut row = SparseRow::new();
        for (j, c) in columns.iter().enumerate() {
            if !c[i].is_zero() {
                row.insert(j, c[i].clone());
            }
        }
        if !b[i].is_zero() {
            row.insert(n, b[i].clone());
        }
        aug.push_sparse(row);
    }
    let r = aug.rref();
    if r.pivots.contains_key(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (p, row) in &r.pivots {
        x[*p] = row.get(&n).cloned().unwrap_or_else(Rational::zero);
    }
    Some(x)
}

/// Inertia `(plus, minus, zero)` of a symmetric rational matrix by
/// congruence diagonalization.
pub fn symmetric_signature(m: &[Vec<Rational>]) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let (mut plus, mut minus) = (0, 0);
    let mut k = 0;
    while k < n {
        let mut piv = (k..n).find(|&i| !a[i][i].is_zero());
        if piv.is_none() {
            // a zero diagonal with an off-diagonal entry: add row/col j to i
            let hit = (k..n).flat_map(|i| (k..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero());
            let Some((i, j)) = hit else { break };
            for c in 0..n {
                let v = a[j][c].clone();
                a[i][c] += v;
            }
            for r in 0..n {
                let v = a[r][j].clone();
                a[r][i] += v;
            }
            piv = Some(i);
        }
        let p = piv.unwrap();
        a.swap(k, p);
        for row in a.iter_mut() {
            row.swap(k, p);
        }
        let d = a[k][k].clone();
        if d > Rational::zero() {
            plus += 1;
        } else {
            minus += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &d;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for r in k..n {
                let v = &f * &a[r][k];
                a[r][i] -= v;
            }
        }
        k += 1;
    }
    (plus, minus, n - plus - minus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_of_hyperbolic_and_diagonal() {
        let q = |v: i64| Rational::from_integer(v.into());
        let h = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(symmetric_signature(&h), (1, 1, 0));
        let d = vec![vec![q(2), q(0), q(0)], vec![q(0), q(0), q(0)], vec![q(0), q(0), q(-3)]];
        assert_eq!(symmetric_signature(&d), (1, 1, 1));
    }
    use crate::exactalg::rational::{int, rat, zero};

    #[test]
    fn zero_matrix_full_kernel() {
        let m = QMatrix::from_dense(&[vec![zero(), zero()], vec![zero(), zero()]], 2);
        assert_eq!(kernel_exact(&m).len(), 2);
    }

    #[test]
    fn identity_empty_kernel() {
        let m = QMatrix::from_dense(&[vec![int(1), zero()], vec![zero(), int(1)]], 2);
        assert!(kernel_exact(&m).is_empty());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let rows = vec![
            vec![int(1), int(2), int(3), int(4)],
            vec![int(2), int(4), int(6), int(8)],
            vec![int(0), int(1), rat(1, 2), int(-1)],
        ];
        let m = QMatrix::from_dense(&rows, 4);
        let k = kernel_exact(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &rows {
                let s: Rational = r.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn solve_and_reject() {
        let cols = vec![vec![int(1), int(0), int(1)], vec![int(0), int(1), int(1)]];
        let x = solve_in_span(&cols, &[int(2), int(3), int(5)]).unwrap();
        assert_eq!(x, vec![int(2), int(3)]);
        assert!(solve_in_span(&cols, &[int(1), int(1), int(0)]).is_none());
    }
}
