//! Exact sparse linear algebra over the rationals.
//!
//! This is the substrate for every homology computation in the crate: ranks,
//! kernel bases and homology dimensions are computed by exact Gaussian
//! elimination with a Markowitz-style sparse pivot choice.  Results are
//! exact; only the pivoting strategy is an implementation detail.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::Error;
use crate::scalar::Rational;

/// A sparse matrix over the rationals.  Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::from_integer(1.into()));
        }
        m
    }

    /// Builds a matrix from dense rows; zeros are dropped.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(nrows, ncols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.entries.iter()
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Sets an entry, dropping it from storage when zero.
    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    /// Adds `value` into an entry.
    pub fn add_to(&mut self, row: usize, col: usize, value: Rational) {
        if value.is_zero() {
            return;
        }
        let new = self.get(row, col) + value;
        self.set(row, col, new);
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = Self::zero(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            t.entries.insert((c, r), v.clone());
        }
        t
    }

    pub fn scale(&self, factor: &Rational) -> SparseMatrix {
        if factor.is_zero() {
            return Self::zero(self.rows, self.cols);
        }
        let mut out = self.clone();
        for v in out.entries.values_mut() {
            *v *= factor;
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_to(r, c, v.clone());
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        // Row-major view of `other` for sparse row combination.
        let mut other_rows: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); other.rows];
        for (&(r, c), v) in &other.entries {
            other_rows[r].push((c, v));
        }
        let mut out = Self::zero(self.rows, other.cols);
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut current_row = usize::MAX;
        let flush = |row: usize, acc: &mut BTreeMap<usize, Rational>, out: &mut Self| {
            for (c, v) in std::mem::take(acc) {
                if !v.is_zero() {
                    out.entries.insert((row, c), v);
                }
            }
        };
        for (&(r, c), v) in &self.entries {
            if r != current_row {
                if current_row != usize::MAX {
                    flush(current_row, &mut acc, &mut out);
                }
                current_row = r;
            }
            for &(oc, ov) in &other_rows[c] {
                let entry = acc.entry(oc).or_insert_with(Rational::zero);
                *entry += v * ov;
            }
        }
        if current_row != usize::MAX {
            flush(current_row, &mut acc, &mut out);
        }
        out
    }

    /// Applies the matrix to a sparse column vector.
    pub fn apply(&self, vector: &BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for (&(r, c), v) in &self.entries {
            if let Some(x) = vector.get(&c) {
                let entry = out.entry(r).or_insert_with(Rational::zero);
                *entry += v * x;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Rank over the rationals, computed exactly.
    pub fn rank(&self) -> usize {
        Eliminator::new(self).rank
    }

    /// A basis of the right kernel; `cols - rank` vectors, each satisfying
    /// `self * v = 0`.
    pub fn kernel_basis(&self) -> Vec<BTreeMap<usize, Rational>> {
        Eliminator::new(self).kernel_basis()
    }
}

/// One weight slice of a chain complex: active dimensions per degree and the
/// differentials, `maps[d]` mapping degree `d` to degree `d - 1`.
pub(crate) struct SliceComplex {
    pub dims: BTreeMap<i64, usize>,
    pub maps: BTreeMap<i64, SparseMatrix>,
}

/// Homology dimensions of a slice, computed by cancelling unit pivots
/// (Gaussian reduction of the complex, Markowitz-scored) and finishing the
/// small residual with exact elimination.  Unit pivots keep all entries
/// integral, so no coefficient growth occurs during the cancellation phase.
pub(crate) fn slice_homology(slice: SliceComplex) -> BTreeMap<i64, usize> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    use std::collections::{HashMap, HashSet};

    #[derive(Default)]
    struct ColMatrix {
        cols: HashMap<usize, HashMap<usize, Rational>>,
        rows: HashMap<usize, HashSet<usize>>,
    }
    impl ColMatrix {
        fn from_sparse(m: &SparseMatrix) -> Self {
            let mut out = ColMatrix::default();
            for (&(r, c), v) in m.entries() {
                out.cols.entry(c).or_default().insert(r, v.clone());
                out.rows.entry(r).or_default().insert(c);
            }
            out
        }
        fn remove_entry(&mut self, r: usize, c: usize) {
            if let Some(col) = self.cols.get_mut(&c) {
                col.remove(&r);
                if col.is_empty() {
                    self.cols.remove(&c);
                }
            }
            if let Some(row) = self.rows.get_mut(&r) {
                row.remove(&c);
                if row.is_empty() {
                    self.rows.remove(&r);
                }
            }
        }
        fn set_entry(&mut self, r: usize, c: usize, v: Rational) {
            if v.is_zero() {
                self.remove_entry(r, c);
            } else {
                self.cols.entry(c).or_default().insert(r, v);
                self.rows.entry(r).or_default().insert(c);
            }
        }
        fn get(&self, r: usize, c: usize) -> Option<&Rational> {
            self.cols.get(&c).and_then(|col| col.get(&r))
        }
        fn col_nnz(&self, c: usize) -> usize {
            self.cols.get(&c).map_or(0, HashMap::len)
        }
        fn row_nnz(&self, r: usize) -> usize {
            self.rows.get(&r).map_or(0, |s| s.len())
        }
    }

    let mut active: BTreeMap<i64, usize> = slice.dims.clone();
    let mut mats: BTreeMap<i64, ColMatrix> = slice
        .maps
        .iter()
        .map(|(d, m)| (*d, ColMatrix::from_sparse(m)))
        .collect();

    let is_unit = |v: &Rational| v.numer().magnitude() == v.denom().magnitude();
    let score_of = |m: &ColMatrix, r: usize, c: usize| -> u64 {
        ((m.row_nnz(r) - 1) as u64) * ((m.col_nnz(c) - 1) as u64)
    };

    // heap of candidate unit pivots, lazily validated
    let mut heap: BinaryHeap<Reverse<(u64, i64, usize, usize)>> = BinaryHeap::new();
    for (&deg, m) in &mats {
        let mut seeds: Vec<(u64, i64, usize, usize)> = Vec::new();
        for (&c, col) in &m.cols {
            for (&r, v) in col {
                if is_unit(v) {
                    seeds.push((score_of(m, r, c), deg, r, c));
                }
            }
        }
        seeds.sort_unstable();
        for seed in seeds {
            heap.push(Reverse(seed));
        }
    }

    while let Some(Reverse((score, deg, pivot_row, pivot_col))) = heap.pop() {
        let Some(m) = mats.get_mut(&deg) else { continue };
        let Some(coeff) = m.get(pivot_row, pivot_col).cloned() else {
            continue;
        };
        if !is_unit(&coeff) {
            continue;
        }
        let current = score_of(m, pivot_row, pivot_col);
        if current != score {
            heap.push(Reverse((current, deg, pivot_row, pivot_col)));
            continue;
        }
        // cancel the pair (pivot_col in degree `deg`, pivot_row in `deg - 1`)
        let pivot_column: Vec<(usize, Rational)> = {
            let mut pc: Vec<(usize, Rational)> =
                m.cols.remove(&pivot_col).unwrap().into_iter().collect();
            pc.sort_unstable_by_key(|(r, _)| *r);
            pc
        };
        for (r, _) in &pivot_column {
            let r = *r;
            if let Some(row) = m.rows.get_mut(&r) {
                row.remove(&pivot_col);
                if row.is_empty() {
                    m.rows.remove(&r);
                }
            }
        }

        let affected: Vec<usize> = {
            let mut a: Vec<usize> = m
                .rows
                .get(&pivot_row)
                .map(|s| s.iter().copied().collect())
                .unwrap_or_default();
            a.sort_unstable();
            a
        };
        for x in affected {
            let b = m.get(pivot_row, x).cloned().unwrap_or_else(Rational::zero);
            if b.is_zero() {
                continue;
            }
            let factor = &b / &coeff;
            for (r, w) in &pivot_column {
                let r = *r;
                if r == pivot_row {
                    m.remove_entry(r, x);
                    continue;
                }
                let new = match m.get(r, x) {
                    Some(old) => old - &(&factor * w),
                    None => -(&factor * w),
                };
                let unit = is_unit(&new) && !new.is_zero();
                m.set_entry(r, x, new);
                if unit {
                    heap.push(Reverse((score_of(m, r, x), deg, r, x)));
                }
            }
        }
        debug_assert!(m.rows.get(&pivot_row).is_none());
        // drop the cancelled basis elements from the neighbors
        if let Some(up) = mats.get_mut(&(deg + 1)) {
            let cols: Vec<usize> = up
                .rows
                .get(&pivot_col)
                .map(|s| s.iter().copied().collect())
                .unwrap_or_default();
            for c in cols {
                up.remove_entry(pivot_col, c);
            }
        }
        if let Some(down) = mats.get_mut(&(deg - 1)) {
            let rows: Vec<usize> = down
                .cols
                .get(&pivot_row)
                .map(|col| col.keys().copied().collect())
                .unwrap_or_default();
            for r in rows {
                down.remove_entry(r, pivot_row);
            }
        }
        *active.entry(deg).or_insert(0) -= 1;
        *active.entry(deg - 1).or_insert(0) -= 1;
    }

    // residual ranks by exact elimination on the (small) leftovers
    let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
    for (&deg, m) in &mats {
        if m.cols.is_empty() {
            continue;
        }
        let mut row_keys: Vec<usize> = m.rows.keys().copied().collect();
        row_keys.sort_unstable();
        let row_index: BTreeMap<usize, usize> =
            row_keys.into_iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut col_keys: Vec<usize> = m.cols.keys().copied().collect();
        col_keys.sort_unstable();
        let col_index: BTreeMap<usize, usize> =
            col_keys.into_iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut sparse = SparseMatrix::zero(row_index.len(), col_index.len());
        for (&c, col) in &m.cols {
            for (&r, v) in col {
                sparse.set(row_index[&r], col_index[&c], v.clone());
            }
        }
        ranks.insert(deg, sparse.rank());
    }
    let mut betti = BTreeMap::new();
    for (&deg, &dim) in &active {
        let rank_out = ranks.get(&deg).copied().unwrap_or(0);
        let rank_in = ranks.get(&(deg + 1)).copied().unwrap_or(0);
        betti.insert(deg, dim - rank_out - rank_in);
    }
    betti
}

/// Fully reduced row echelon form: sparse rows sorted by pivot column, each
/// normalized to a leading 1, with pivot columns cleared from all other rows.
pub fn reduced_row_echelon(matrix: &SparseMatrix) -> Vec<Vec<(usize, Rational)>> {
    let state = Eliminator::new(matrix);
    let mut rref = state.echelon;
    let order: Vec<usize> = {
        let mut idx: Vec<usize> = (0..rref.len()).collect();
        idx.sort_by_key(|&i| std::cmp::Reverse(rref[i][0].0));
        idx
    };
    for &i in &order {
        let row = rref[i].clone();
        for (j, other) in rref.iter_mut().enumerate() {
            if j == i || other.is_empty() {
                continue;
            }
            if let Some(pos) = other.iter().position(|(c, _)| *c == row[0].0) {
                if pos == 0 {
                    continue; // that row's own pivot
                }
                let factor = other[pos].1.clone();
                *other = sub_scaled(other, &row, &factor);
            }
        }
    }
    rref.sort_by_key(|row| row[0].0);
    rref
}

/// Solves `a * x = b` column by column for a matrix of full column rank.
/// Returns the solution columns as sparse vectors, or `None` when a column
/// of `b` is outside the column span of `a`.
pub fn solve_full_rank(
    a: &SparseMatrix,
    b: &SparseMatrix,
) -> Option<Vec<BTreeMap<usize, Rational>>> {
    assert_eq!(a.rows(), b.rows(), "solve: row mismatch");
    let n = a.cols();
    let mut augmented = SparseMatrix::zero(a.rows(), n + b.cols());
    for (&(r, c), v) in a.entries() {
        augmented.set(r, c, v.clone());
    }
    for (&(r, c), v) in b.entries() {
        augmented.set(r, n + c, v.clone());
    }
    let rref = reduced_row_echelon(&augmented);
    let mut solutions = vec![BTreeMap::new(); b.cols()];
    for row in &rref {
        let pivot = row[0].0;
        if pivot >= n {
            return None; // inconsistent: pivot in the target block
        }
        for (c, v) in &row[1..] {
            if *c >= n {
                solutions[*c - n].insert(pivot, v.clone());
            } else {
                // a free column inside `a` would mean rank deficiency
                return None;
            }
        }
    }
    Some(solutions)
}

/// Homology dimension at one spot: `dim ker(d_out) - rank(d_in)` for
/// composable maps with `d_out . d_in = 0` (checked).
pub fn quotient_dim(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<usize, Error> {
    assert_eq!(
        d_in.rows(),
        d_out.cols(),
        "quotient_dim: maps are not composable"
    );
    let composite = d_out.mul(d_in);
    if let Some((&(row, col), _)) = composite.entries.iter().next() {
        return Err(Error::CompositionNonzero { row, col });
    }
    let ker = d_out.cols() - d_out.rank();
    Ok(ker - d_in.rank())
}

/// Row-echelon elimination state.  Rows are kept sparse as sorted
/// `(col, value)` lists; pivot columns are recorded for kernel extraction.
struct Eliminator {
    cols: usize,
    rank: usize,
    /// Echelon rows, each normalized so the leading entry is 1.
    echelon: Vec<Vec<(usize, Rational)>>,
    /// `pivot_row[c]` = index into `echelon` of the row with pivot at `c`.
    pivot_row: BTreeMap<usize, usize>,
}

impl Eliminator {
    fn new(matrix: &SparseMatrix) -> Self {
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); matrix.rows];
        for (&(r, c), v) in &matrix.entries {
            rows[r].push((c, v.clone()));
        }
        // Markowitz-flavored heuristic: feed short rows first to limit fill.
        rows.retain(|r| !r.is_empty());
        rows.sort_by_key(Vec::len);
        let mut state = Eliminator {
            cols: matrix.cols,
            rank: 0,
            echelon: Vec::new(),
            pivot_row: BTreeMap::new(),
        };
        for row in rows {
            state.insert_row(row);
        }
        state
    }

    fn insert_row(&mut self, mut row: Vec<(usize, Rational)>) {
        loop {
            row.retain(|(_, v)| !v.is_zero());
            let Some(&(lead, _)) = row.first() else {
                return;
            };
            match self.pivot_row.get(&lead) {
                Some(&idx) => {
                    let factor = row[0].1.clone();
                    row = sub_scaled(&row, &self.echelon[idx], &factor);
                }
                None => {
                    let lead_val = row[0].1.clone();
                    for (_, v) in row.iter_mut() {
                        *v /= &lead_val;
                    }
                    self.pivot_row.insert(lead, self.echelon.len());
                    self.echelon.push(row);
                    self.rank += 1;
                    return;
                }
            }
        }
    }

    /// Back-substitutes one kernel vector per free column.
    fn kernel_basis(&self) -> Vec<BTreeMap<usize, Rational>> {
        // Fully reduce the echelon rows so each pivot column appears in one
        // row only (RREF), then read kernel vectors off directly.
        let mut rref = self.echelon.clone();
        let order: Vec<usize> = {
            let mut idx: Vec<usize> = (0..rref.len()).collect();
            idx.sort_by_key(|&i| std::cmp::Reverse(rref[i][0].0));
            idx
        };
        for &i in &order {
            let row = rref[i].clone();
            for (j, other) in rref.iter_mut().enumerate() {
                if j == i || other.is_empty() {
                    continue;
                }
                if let Some(pos) = other.iter().position(|(c, _)| *c == row[0].0) {
                    let factor = other[pos].1.clone();
                    *other = sub_scaled(other, &row, &factor);
                }
            }
        }
        let pivot_of_col: BTreeMap<usize, &Vec<(usize, Rational)>> =
            rref.iter().map(|row| (row[0].0, row)).collect();
        let mut basis = Vec::new();
        for free_col in (0..self.cols).filter(|c| !pivot_of_col.contains_key(c)) {
            let mut v: BTreeMap<usize, Rational> = BTreeMap::new();
            v.insert(free_col, Rational::from_integer(1.into()));
            for (&pivot_col, row) in &pivot_of_col {
                if let Some((_, coeff)) = row.iter().find(|(c, _)| *c == free_col) {
                    v.insert(pivot_col, -coeff.clone());
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// `a - factor * b` for sorted sparse rows.
fn sub_scaled(
    a: &[(usize, Rational)],
    b: &[(usize, Rational)],
    factor: &Rational,
) -> Vec<(usize, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                let v = va - &(factor * vb);
                if !v.is_zero() {
                    out.push((*ca, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (Some(_), Some((cb, vb))) => {
                let v = -(factor * vb);
                if !v.is_zero() {
                    out.push((*cb, v));
                }
                j += 1;
            }
            (Some((ca, va)), None) => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (None, Some((cb, vb))) => {
                let v = -(factor * vb);
                if !v.is_zero() {
                    out.push((*cb, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn m(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_empty_matrix() {
        assert_eq!(SparseMatrix::zero(0, 0).rank(), 0);
    }

    #[test]
    fn rank_identity() {
        assert_eq!(SparseMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn rank_dependent_rows() {
        // Row reduction by hand: second row is twice the first.
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn rank_with_fractions() {
        let mut a = SparseMatrix::zero(2, 2);
        a.set(0, 0, rat(1, 2));
        a.set(0, 1, rat(1, 3));
        a.set(1, 0, rat(3, 2));
        a.set(1, 1, int(1));
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn kernel_identity_is_empty() {
        assert!(SparseMatrix::identity(2).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_map() {
        let z = SparseMatrix::zero(2, 3);
        assert_eq!(z.kernel_basis().len(), 3);
    }

    #[test]
    fn kernel_of_row_vector() {
        // Solve by hand: kernel of [1, 1] is spanned by (1, -1).
        let a = m(&[&[1, 1]]);
        let basis = a.kernel_basis();
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        let ratio = v.get(&0).cloned().unwrap_or_else(Rational::zero)
            + v.get(&1).cloned().unwrap_or_else(Rational::zero);
        assert!(ratio.is_zero());
        assert!(a.apply(v).is_empty());
    }

    #[test]
    fn kernel_vectors_are_killed() {
        let a = m(&[&[1, 2, 3], &[0, 1, 1], &[1, 3, 4]]);
        let basis = a.kernel_basis();
        assert_eq!(basis.len(), 3 - a.rank());
        for v in &basis {
            assert!(a.apply(v).is_empty(), "kernel vector not annihilated");
        }
    }

    #[test]
    fn quotient_dim_zero_differentials() {
        let d_in = SparseMatrix::zero(4, 0);
        let d_out = SparseMatrix::zero(0, 4);
        assert_eq!(quotient_dim(&d_in, &d_out).unwrap(), 4);
    }

    #[test]
    fn quotient_dim_exact_sequence() {
        // Q --1--> Q --> 0 is exact in the middle.
        let d_in = m(&[&[1]]);
        let d_out = SparseMatrix::zero(0, 1);
        assert_eq!(quotient_dim(&d_in, &d_out).unwrap(), 0);
    }

    #[test]
    fn quotient_dim_koszul_middle() {
        // Q -> Q^2 -> Q with d_in = (1, -1)^T and d_out = (1, 1):
        // ranks 1 and 1 on a 2-dimensional middle term.
        let d_in = m(&[&[1], &[-1]]);
        let d_out = m(&[&[1, 1]]);
        assert_eq!(quotient_dim(&d_in, &d_out).unwrap(), 0);
    }

    #[test]
    fn quotient_dim_rejects_nonzero_composite() {
        let d_in = m(&[&[1], &[1]]);
        let d_out = m(&[&[1, 1]]);
        match quotient_dim(&d_in, &d_out) {
            Err(Error::CompositionNonzero { .. }) => {}
            other => panic!("expected CompositionNonzero, got {other:?}"),
        }
    }

    #[test]
    fn mul_matches_dense() {
        let a = m(&[&[1, 2], &[0, 1], &[3, 0]]);
        let b = m(&[&[1, 0, 2], &[0, 1, 1]]);
        let c = a.mul(&b);
        assert_eq!(c, m(&[&[1, 2, 4], &[0, 1, 1], &[3, 0, 6]]));
    }
}
