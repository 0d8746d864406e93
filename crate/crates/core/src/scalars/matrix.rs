use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use rand::Rng;

use super::field::{ExactField, Scalar};
use crate::error::{Error, Result};

/// A dense matrix over an [`ExactField`]. Zero-row and zero-column shapes are legal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: ExactField,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row-echelon form together with its rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Result of solving `A X = B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// `particular` satisfies `A X = B`; the columns of `kernel` span `ker A`.
    Solved {
        particular: Matrix,
        kernel: Matrix,
    },
    Inconsistent,
}

impl Solution {
    pub fn particular(&self) -> Option<&Matrix> {
        match self {
            Solution::Solved { particular, .. } => Some(particular),
            Solution::Inconsistent => None,
        }
    }
}

impl Matrix {
    pub fn zeros(field: ExactField, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: ExactField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_fn(field: ExactField, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Builds a matrix from integer rows; every row must have the same length.
    pub fn from_rows(field: ExactField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn from_scalars(field: ExactField, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        Matrix { field, rows, cols, data }
    }

    /// A single column.
    pub fn column(field: ExactField, entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        Self::from_scalars(field, n, 1, entries)
    }

    pub fn random<R: Rng + ?Sized>(field: ExactField, rows: usize, cols: usize, rng: &mut R) -> Self {
        Self::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    pub fn field(&self) -> ExactField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn col(&self, j: usize) -> Matrix {
        Self::from_fn(self.field, self.rows, 1, |i, _| self[(i, j)].clone())
    }

    pub fn row(&self, i: usize) -> Matrix {
        Self::from_fn(self.field, 1, self.cols, |_, j| self[(i, j)].clone())
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        Self::from_fn(self.field, self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Self::from_fn(self.field, rows.len(), self.cols, |i, j| self[(rows[i], j)].clone())
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        Self::from_fn(self.field, r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Column vector of entries in row-major order.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn hstack(field: ExactField, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut m = Self::zeros(field, rows, cols);
        let mut c0 = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            m.set_block(0, c0, p);
            c0 += p.cols;
        }
        m
    }

    pub fn vstack(field: ExactField, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows: usize = parts.iter().map(|p| p.rows).sum();
        let mut m = Self::zeros(field, rows, cols);
        let mut r0 = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            m.set_block(r0, 0, p);
            r0 += p.rows;
        }
        m
    }

    pub fn block_diag(field: ExactField, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            m.set_block(r0, c0, p);
            r0 += p.rows;
            c0 += p.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Self::identity(self.field, self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Canonical reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        m[(i, j)] = &m[(i, j)] - &(&f * &m[(r, j)]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { reduced: m, rank: r, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Columns form a basis of `ker self`, one per free column of the RREF.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { reduced, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(self.field, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k[(f, j)] = self.field.one();
            for (i, &p) in pivots.iter().enumerate() {
                k[(p, j)] = -&reduced[(i, f)];
            }
        }
        k
    }

    /// Columns form a basis of the column space, taken from the pivot columns of `self`.
    pub fn column_space(&self) -> Matrix {
        self.select_cols(&self.rref().pivots)
    }

    /// Solves `self * X = b`.
    pub fn solve(&self, b: &Matrix) -> Result<Solution> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} equations but right-hand side has {} rows",
                self.rows, b.rows
            )));
        }
        let aug = Self::hstack(self.field, self.rows, &[self, b]);
        let Rref { reduced, rank, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(Solution::Inconsistent);
        }
        let mut particular = Self::zeros(self.field, self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate().take(rank) {
            for j in 0..b.cols {
                particular[(p, j)] = reduced[(i, self.cols + j)].clone();
            }
        }
        Ok(Solution::Solved { particular, kernel: self.kernel_basis() })
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        match self.solve(&Self::identity(self.field, n)).ok()? {
            Solution::Solved { particular, kernel } if kernel.cols == 0 => Some(particular),
            _ => None,
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Columns of the identity completing the (independent) columns of `self` to a basis.
    pub fn complement_basis(&self) -> Matrix {
        let pivots = self.transpose().rref().pivots;
        let extra: Vec<usize> = (0..self.rows).filter(|i| !pivots.contains(i)).collect();
        Self::identity(self.field, self.rows).select_cols(&extra)
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square());
        let mut m = self.clone();
        let mut det = self.field.one();
        let n = self.rows;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            det = &det * &m[(c, c)];
            let inv = m[(c, c)].inv().unwrap();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    m[(i, j)] = &m[(i, j)] - &(&f * &m[(c, j)]);
                }
            }
        }
        det
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix shapes")
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix add shape");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sub shape");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// A subquotient `W / U` of a coordinate space, with `U ⊆ W` given by spanning columns.
///
/// `lift` sends quotient coordinates to chosen representatives in the ambient space;
/// `project` sends an ambient vector lying in `W` to its quotient coordinates.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub lift: Matrix,
    pub project: Matrix,
    /// A basis of `W` (columns).
    pub whole: Matrix,
}

impl Subquotient {
    pub fn new(whole_span: &Matrix, sub_span: &Matrix) -> Subquotient {
        let field = whole_span.field();
        let n = whole_span.rows();
        let whole = whole_span.column_space();
        let w = whole.cols();
        // Coordinates of `whole` columns: left inverse from completing to a basis.
        let comp = whole.complement_basis();
        let full = Matrix::hstack(field, n, &[&whole, &comp]);
        let full_inv = full.inverse().expect("completed basis is invertible");
        let left_inv = full_inv.block(0, w, 0, n);
        // Sub-span in W-coordinates.
        let sub_coords = (&left_inv * sub_span).column_space();
        let sub_comp = sub_coords.complement_basis();
        let h = sub_comp.cols();
        let inner = Matrix::hstack(field, w, &[&sub_coords, &sub_comp]);
        let inner_inv = inner.inverse().expect("completed basis is invertible");
        let q = inner_inv.block(w - h, w, 0, w);
        Subquotient { lift: &whole * &sub_comp, project: &q * &left_inv, whole }
    }

    pub fn dim(&self) -> usize {
        self.lift.cols()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> ExactField {
        ExactField::Rationals
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(q(), 3);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        let z = Matrix::zeros(q(), 2, 5);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    /// Rank over F_2 by counting the distinct vectors in the row span.
    fn brute_rank_f2(m: &Matrix) -> usize {
        let f = m.field();
        let mut span = std::collections::HashSet::new();
        for mask in 0u32..(1 << m.rows()) {
            let v: Vec<Scalar> = (0..m.cols())
                .map(|j| (0..m.rows()).filter(|i| mask >> i & 1 == 1).fold(f.zero(), |acc, i| acc + &m[(i, j)]))
                .collect();
            span.insert(v);
        }
        span.len().trailing_zeros() as usize
    }

    #[test]
    fn rref_over_f2() {
        let f2 = ExactField::Prime(2);
        let m = Matrix::from_rows(f2, &[vec![1, 1], vec![1, 1]]);
        let r = m.rref();
        assert_eq!(r.reduced, Matrix::from_rows(f2, &[vec![1, 1], vec![0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(brute_rank_f2(&m), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let m = Matrix::random(f2, 4, 5, &mut rng);
            assert_eq!(m.rank(), brute_rank_f2(&m));
        }
    }

    #[test]
    fn solve_identity_and_zero() {
        let b = Matrix::from_rows(q(), &[vec![3], vec![-2]]);
        match Matrix::identity(q(), 2).solve(&b).unwrap() {
            Solution::Solved { particular, kernel } => {
                assert_eq!(particular, b);
                assert_eq!(kernel.cols(), 0);
            }
            Solution::Inconsistent => panic!(),
        }
        match Matrix::zeros(q(), 2, 3).solve(&Matrix::zeros(q(), 2, 1)).unwrap() {
            Solution::Solved { particular, kernel } => {
                assert!(particular.is_zero());
                assert_eq!(kernel.rank(), 3);
            }
            Solution::Inconsistent => panic!(),
        }
    }

    #[test]
    fn solve_random_f3_by_substitution() {
        let f3 = ExactField::Prime(3);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut solved = 0;
        for _ in 0..40 {
            let a = Matrix::random(f3, 4, 6, &mut rng);
            let b = Matrix::random(f3, 4, 1, &mut rng);
            if let Solution::Solved { particular, kernel } = a.solve(&b).unwrap() {
                assert_eq!(&a * &particular, b);
                assert!((&a * &kernel).is_zero());
                solved += 1;
            } else {
                assert!(a.rank() < 4);
            }
        }
        assert!(solved > 0);
    }

    #[test]
    fn solve_inconsistent_and_mismatch() {
        let a = Matrix::from_rows(q(), &[vec![1, 1], vec![1, 1]]);
        let b = Matrix::from_rows(q(), &[vec![1], vec![2]]);
        assert_eq!(a.solve(&b).unwrap(), Solution::Inconsistent);
        assert!(matches!(a.solve(&Matrix::zeros(q(), 3, 1)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(q(), 4).kernel_basis().cols(), 0);
        let k = Matrix::zeros(q(), 2, 3).kernel_basis();
        assert_eq!(k, Matrix::identity(q(), 3));
        let a = Matrix::from_rows(q(), &[vec![1, 2, 3]]);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
        assert_eq!(k.rank(), 2);
    }

    #[test]
    fn subquotient_dimensions() {
        let w = Matrix::from_rows(q(), &[vec![1, 0], vec![0, 1], vec![0, 0]]);
        let u = Matrix::from_rows(q(), &[vec![1], vec![1], vec![0]]);
        let sq = Subquotient::new(&w, &u);
        assert_eq!(sq.dim(), 1);
        // u projects to zero; the lift projects back to the identity.
        assert!((&sq.project * &u).is_zero());
        assert_eq!(&sq.project * &sq.lift, Matrix::identity(q(), 1));
    }

    #[test]
    fn zero_sized_shapes() {
        let a = Matrix::zeros(q(), 0, 3);
        let b = Matrix::zeros(q(), 3, 2);
        assert_eq!((&a * &b).shape(), (0, 2));
        assert_eq!(a.kernel_basis(), Matrix::identity(q(), 3));
        let e = Matrix::zeros(q(), 0, 0);
        assert!(e.is_invertible());
        assert_eq!(e.inverse(), Some(e.clone()));
    }

    #[test]
    fn determinant_matches_invertibility() {
        let f7 = ExactField::Prime(7);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let m = Matrix::random(f7, 3, 3, &mut rng);
            assert_eq!(m.determinant().is_zero(), !m.is_invertible());
        }
    }
}
