//! Exact dense matrices and the sparse reduced-row-echelon engine behind every
//! kernel computation in the crate.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Field, GaussianRational};

/// Sparse vector stored as `(index, value)` pairs sorted by index, no zeros.
#[derive(Clone, PartialEq, Default)]
pub struct SparseVec<T> {
    entries: Vec<(usize, T)>,
}

impl<T: Field> SparseVec<T> {
    pub fn new() -> Self {
        Self { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        Self { entries: vec![(i, T::one())] }
    }

    /// Builds from arbitrary pairs; duplicates are summed and zeros dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, T)>) -> Self {
        let mut map: BTreeMap<usize, T> = BTreeMap::new();
        for (i, v) in pairs {
            let slot = map.entry(i).or_insert_with(T::zero);
            *slot = slot.clone() + v;
        }
        Self { entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn from_dense(values: &[T]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<T> {
        let mut out = vec![T::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &T)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, i: usize) -> Option<&T> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|p| &self.entries[p].1)
    }

    pub fn get_or_zero(&self, i: usize) -> T {
        self.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<(usize, &T)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scaled(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::new();
        }
        Self { entries: self.entries.iter().map(|(i, v)| (*i, v.clone() * s.clone())).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { entries: self.entries.iter().map(|(i, v)| (*i, -v.clone())).collect() }
    }

    /// `self + s·other`, merging sorted supports.
    pub fn add_scaled(&self, s: &T, other: &Self) -> Self {
        if s.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, va)), Some((ib, vb))) => {
                    if ia < ib {
                        out.push((*ia, va.clone()));
                        a.next();
                    } else if ib < ia {
                        out.push((*ib, vb.clone() * s.clone()));
                        b.next();
                    } else {
                        let v = va.clone() + vb.clone() * s.clone();
                        if !v.is_zero() {
                            out.push((*ia, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((ia, va)), None) => {
                    out.push((*ia, va.clone()));
                    a.next();
                }
                (None, Some((ib, vb))) => {
                    out.push((*ib, vb.clone() * s.clone()));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&T::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&-T::one(), other)
    }

    /// Shifts every index by `offset`.
    pub fn shifted(&self, offset: usize) -> Self {
        Self { entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect() }
    }

    pub fn map_values<U: Field>(&self, f: impl Fn(&T) -> U) -> SparseVec<U> {
        SparseVec::from_pairs(self.entries.iter().map(|(i, v)| (*i, f(v))))
    }
}

impl<T: fmt::Debug> fmt::Debug for SparseVec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(i, v)| (i, v))).finish()
    }
}

/// Incrementally maintained reduced row echelon form.
///
/// Every stored row has a leading `1` at its pivot column and zeros at all
/// other pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    cols: usize,
    rows: Vec<SparseVec<T>>,
    /// pivot column -> index into `rows`
    pivots: BTreeMap<usize, usize>,
}

impl<T: Field> Echelon<T> {
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new(), pivots: BTreeMap::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.cols
    }

    /// Reduces `row` against the stored pivots.
    pub fn reduce(&self, row: &SparseVec<T>) -> SparseVec<T> {
        let mut r = row.clone();
        // pivot rows vanish at every other pivot column, so the coefficient of
        // `row` at a pivot column is untouched by the earlier subtractions
        for (col, v) in row.iter() {
            if let Some(&p) = self.pivots.get(&col) {
                r = r.add_scaled(&-v.clone(), &self.rows[p]);
            }
        }
        r
    }

    /// Inserts a row; returns `true` if it increased the rank.
    pub fn insert(&mut self, row: &SparseVec<T>) -> bool {
        if self.is_full() {
            return false;
        }
        let r = self.reduce(row);
        let Some((pc, lead)) = r.leading() else {
            return false;
        };
        debug_assert!(pc < self.cols);
        let r = r.scaled(&lead.inv());
        for existing in self.rows.iter_mut() {
            let c = existing.get_or_zero(pc);
            if !c.is_zero() {
                *existing = existing.add_scaled(&-c, &r);
            }
        }
        self.pivots.insert(pc, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|c| !self.pivots.contains_key(c)).collect()
    }

    /// Canonical kernel basis: one vector per free column (in increasing order)
    /// with a `1` at that column, `0` at the other free columns.
    pub fn kernel_basis(&self) -> Vec<SparseVec<T>> {
        // column -> list of (pivot col, entry) for quick assembly
        let mut by_col: BTreeMap<usize, Vec<(usize, T)>> = BTreeMap::new();
        for (&pc, &ri) in &self.pivots {
            for (c, v) in self.rows[ri].iter() {
                if c != pc {
                    by_col.entry(c).or_default().push((pc, v.clone()));
                }
            }
        }
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut pairs = vec![(f, T::one())];
                if let Some(list) = by_col.get(&f) {
                    pairs.extend(list.iter().map(|(pc, v)| (*pc, -v.clone())));
                }
                SparseVec::from_pairs(pairs)
            })
            .collect()
    }

    /// Whether `row` lies in the row space.
    pub fn contains(&self, row: &SparseVec<T>) -> bool {
        self.reduce(row).is_zero()
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec<T>)> {
        self.pivots.iter().map(|(&c, &r)| (c, &self.rows[r]))
    }
}

/// Canonical basis of `{x : A x = 0}` for a matrix given by sparse rows.
pub fn kernel_of_rows<T: Field>(cols: usize, rows: impl IntoIterator<Item = SparseVec<T>>) -> Vec<SparseVec<T>> {
    let mut ech = Echelon::new(cols);
    for r in rows {
        ech.insert(&r);
        if ech.is_full() {
            break;
        }
    }
    ech.kernel_basis()
}

/// Solves `Σ x_t columns[t] = target`; `None` when `target` is outside the span.
///
/// Among all solutions the one with the free unknowns set to zero is returned.
pub fn solve_columns<T: Field>(rows: usize, columns: &[SparseVec<T>], target: &SparseVec<T>) -> Option<Vec<T>> {
    let n = columns.len();
    // transpose into equations over unknowns 0..n plus the right-hand side at column n
    let mut eqs: Vec<Vec<(usize, T)>> = vec![Vec::new(); rows];
    for (t, col) in columns.iter().enumerate() {
        for (r, v) in col.iter() {
            eqs[r].push((t, v.clone()));
        }
    }
    for (r, v) in target.iter() {
        eqs[r].push((n, v.clone()));
    }
    let mut ech = Echelon::new(n + 1);
    for e in eqs {
        if !e.is_empty() {
            ech.insert(&SparseVec::from_pairs(e));
        }
    }
    if ech.pivots.contains_key(&n) {
        return None;
    }
    let mut x = vec![T::zero(); n];
    for (pc, row) in ech.rows() {
        x[pc] = row.get_or_zero(n);
    }
    Some(x)
}

/// Dense matrix with exact entries, `Q(i)` by default.
#[derive(Clone, PartialEq, Debug)]
pub struct ExactMatrix<T = GaussianRational> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> ExactMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, l| acc + self[(i, l)].clone() * other[(l, j)].clone())
        }))
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect()
    }

    pub fn scale(&self, s: &T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v.clone() * s.clone()).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("matrix sum of different shapes".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn echelon(&self) -> Echelon<T> {
        let mut ech = Echelon::new(self.cols);
        for i in 0..self.rows {
            ech.insert(&SparseVec::from_dense(self.row(i)));
        }
        ech
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Canonical kernel basis (reduced row echelon pivots, free variables set to 1
    /// in index order); empty iff the matrix is injective.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        self.echelon().kernel_basis().iter().map(|v| v.to_dense(self.cols)).collect()
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn determinant(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("determinant of non-square {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.to_rows();
        let mut prev = T::one();
        let mut sign = T::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return Ok(T::zero());
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone()) / prev.clone();
                    a[i][j] = v;
                }
                a[i][k] = T::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * a[n - 1][n - 1].clone())
    }
}

impl ExactMatrix<GaussianRational> {
    /// `(M*)_{ij} = conj(M_{ji})`.
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.conj_transpose()
    }
}

impl<T> std::ops::Index<(usize, usize)> for ExactMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for ExactMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

pub fn conj_transpose(m: &ExactMatrix) -> ExactMatrix {
    m.conj_transpose()
}

pub fn nullspace<T: Field>(m: &ExactMatrix<T>) -> Vec<Vec<T>> {
    m.nullspace()
}

pub fn determinant<T: Field>(m: &ExactMatrix<T>) -> Result<T> {
    m.determinant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};
    use proptest::prelude::*;

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    fn real(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| gi(v, 0)).collect()).collect()).unwrap()
    }

    fn antidiag(n: usize) -> ExactMatrix {
        ExactMatrix::from_fn(n, n, |i, j| if i + j == n - 1 { gi(1, 0) } else { gi(0, 0) })
    }

    #[test]
    fn conj_transpose_examples() {
        let m = ExactMatrix::from_rows(vec![vec![gi(0, 1)]]).unwrap();
        assert_eq!(m.conj_transpose()[(0, 0)], gi(0, -1));
        let a3 = antidiag(4);
        assert_eq!(a3.conj_transpose(), a3);
        let nil = real(&[&[0, 1], &[0, 0]]);
        assert_eq!(nil.conj_transpose(), real(&[&[0, 0], &[1, 0]]));
        assert_eq!(nil.conj_transpose().conj_transpose(), nil);
    }

    #[test]
    fn nullspace_examples() {
        // [[1, i], [-i, 1]] has kernel spanned by (-i, 1)
        let m = ExactMatrix::from_rows(vec![vec![gi(1, 0), gi(0, 1)], vec![gi(0, -1), gi(1, 0)]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns, vec![vec![gi(0, -1), gi(1, 0)]]);
        assert!(m.mul_vec(&ns[0]).iter().all(Zero::is_zero));

        assert!(ExactMatrix::<GaussianRational>::identity(3).nullspace().is_empty());
        let z = ExactMatrix::<GaussianRational>::zeros(2, 3);
        assert_eq!(z.nullspace().len(), 3);
    }

    #[test]
    fn determinant_examples() {
        // (1 4)(2 3) is even, so the 4x4 antidiagonal has determinant +1
        assert_eq!(antidiag(4).determinant().unwrap(), gi(1, 0));
        assert_eq!(ExactMatrix::<GaussianRational>::identity(5).determinant().unwrap(), gi(1, 0));
        let a4 = real(&[&[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        assert_eq!(a4.determinant().unwrap(), gi(0, 0));
        assert!(matches!(ExactMatrix::<GaussianRational>::zeros(2, 3).determinant(), Err(Error::Dimension(_))));
    }

    #[test]
    fn determinant_needs_pivoting() {
        let m = real(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.determinant().unwrap(), gi(-1, 0));
        let m = real(&[&[2, 3, 1], &[4, 6, 5], &[1, 0, 7]]);
        // Laplace expansion along the first row: 2(42) - 3(23) + 1(-6) = 9
        assert_eq!(m.determinant().unwrap(), gi(9, 0));
    }

    #[test]
    fn solve_in_span() {
        let cols = vec![SparseVec::from_dense(&[rat(1), rat(0), rat(1)]), SparseVec::from_dense(&[rat(0), rat(1), rat(1)])];
        let x = solve_columns(3, &cols, &SparseVec::from_dense(&[rat(2), rat(3), rat(5)])).unwrap();
        assert_eq!(x, vec![rat(2), rat(3)]);
        assert!(solve_columns(3, &cols, &SparseVec::from_dense(&[rat(2), rat(3), rat(4)])).is_none());
    }

    fn arb_matrix(r: usize, c: usize) -> impl Strategy<Value = ExactMatrix> {
        proptest::collection::vec((-3i64..4, -2i64..3), r * c).prop_map(move |v| {
            ExactMatrix::from_fn(r, c, |i, j| {
                let (a, b) = v[i * c + j];
                // bias towards zeros so that kernels are nontrivial
                if (a + b) % 3 == 0 {
                    gi(0, 0)
                } else {
                    gi(a, b)
                }
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix(3, 5)) {
            let ns = m.nullspace();
            for v in &ns {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
            prop_assert_eq!(m.rank() + ns.len(), m.ncols());
            let basis = ExactMatrix::from_rows(ns.clone()).unwrap_or_else(|_| ExactMatrix::zeros(0, 5));
            prop_assert_eq!(basis.rank(), ns.len());
        }

        #[test]
        fn determinant_is_multiplicative(a in arb_matrix(3, 3), b in arb_matrix(3, 3)) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(ab.determinant().unwrap(), a.determinant().unwrap() * b.determinant().unwrap());
        }

        #[test]
        fn real_kernel_matches_dense(v in proptest::collection::vec(-3i64..4, 12)) {
            let m: ExactMatrix<Rational> = ExactMatrix::from_fn(3, 4, |i, j| rat(v[i * 4 + j]));
            for k in m.nullspace() {
                prop_assert!(m.mul_vec(&k).iter().all(Zero::is_zero));
            }
        }
    }
}
