//! Dense exact-arithmetic matrices over the rationals and the integers.
//!
//! Everything here is deliberately simple: row-major storage, textbook
//! Gaussian elimination over `BigRational`, and no attempt at sparsity.
//! Arrangement inputs stay at desk scale, so clarity wins over speed.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational scalar: arbitrary-precision numerator over a positive
/// arbitrary-precision denominator, always stored reduced.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `n/d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A dense matrix with `BigRational` entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from a list of rows. `cols` must be passed explicitly
    /// so that the empty matrix keeps its width.
    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "row length must equal cols");
            entries.extend(row.iter().cloned());
        }
        Self { rows: rows.len(), cols, entries }
    }

    /// Builds a matrix from integer literals, row-major. Test convenience.
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, entries: data.iter().map(|&v| rat(v)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduces `self` to reduced row echelon form in place and returns the
    /// pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self[(row, col)].clone();
            for c in col..self.cols {
                let v = self[(row, c)].clone() / inv.clone();
                self[(row, c)] = v;
            }
            for r in 0..self.rows {
                if r != row && !self[(r, col)].is_zero() {
                    let factor = self[(r, col)].clone();
                    for c in col..self.cols {
                        let v = self[(r, c)].clone() - factor.clone() * self[(row, c)].clone();
                        self[(r, c)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Linear rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.rref().len()
    }

    /// A basis of the row space, read off the reduced row echelon form.
    /// Canonical: the same row space always yields the same basis.
    pub fn row_space_basis(&self) -> Vec<Vec<Rational>> {
        let mut work = self.clone();
        let pivots = work.rref();
        (0..pivots.len()).map(|r| work.row(r).to_vec()).collect()
    }

    /// A basis of the right kernel `{x : Ax = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut work = self.clone();
        let pivots = work.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vecv = vec![Rational::zero(); self.cols];
            vecv[free] = Rational::one();
            for (&pc, r) in pivots.iter().zip(0..) {
                vecv[pc] = -work[(r, free)].clone();
            }
            basis.push(vecv);
        }
        basis
    }

    /// Solves `Ax = b` exactly. Returns `None` when inconsistent, otherwise a
    /// particular solution together with a kernel basis of the homogeneous
    /// system.
    pub fn solve(&self, rhs: &[Rational]) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
        assert_eq!(rhs.len(), self.rows, "rhs length must equal row count");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = rhs[r].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut particular = vec![Rational::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            particular[pc] = aug[(r, self.cols)].clone();
        }
        // Kernel of the original coefficient matrix, reusing the pivot data.
        let mut kernel = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -aug[(r, free)].clone();
            }
            kernel.push(v);
        }
        Some((particular, kernel))
    }

    /// Exact determinant of a square matrix via Gaussian elimination.
    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        let mut work = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !work[(r, col)].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                work.swap_rows(col, p);
                det = -det;
            }
            let pivot = work[(col, col)].clone();
            det *= pivot.clone();
            for r in col + 1..n {
                if work[(r, col)].is_zero() {
                    continue;
                }
                let factor = work[(r, col)].clone() / pivot.clone();
                for c in col..n {
                    let v = work[(r, c)].clone() - factor.clone() * work[(col, c)].clone();
                    work[(r, c)] = v;
                }
            }
        }
        det
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.entries[r * self.cols + c]
    }
}

/// An affine subspace of rational `n`-space: a base point plus a basis of
/// direction vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    pub point: Vec<Rational>,
    pub basis: Vec<Vec<Rational>>,
}

impl AffineSubspace {
    /// The whole ambient space, with the origin as base point.
    pub fn ambient(n: usize) -> Self {
        let point = vec![Rational::zero(); n];
        let basis = (0..n)
            .map(|i| {
                let mut e = vec![Rational::zero(); n];
                e[i] = Rational::one();
                e
            })
            .collect();
        Self { point, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.point.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn direction_matrix(&self) -> RationalMatrix {
        // direction vectors as columns
        let n = self.ambient_dim();
        let mut m = RationalMatrix::zeros(n, self.basis.len());
        for (j, v) in self.basis.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = v[i].clone();
            }
        }
        m
    }

    pub fn contains_point(&self, q: &[Rational]) -> bool {
        assert_eq!(q.len(), self.ambient_dim());
        let rhs: Vec<Rational> =
            q.iter().zip(&self.point).map(|(a, b)| a.clone() - b.clone()).collect();
        self.direction_matrix().solve(&rhs).is_some()
    }

    pub fn spans_direction(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim());
        self.direction_matrix().solve(v).is_some()
    }

    pub fn contains(&self, other: &AffineSubspace) -> bool {
        self.contains_point(&other.point)
            && other.basis.iter().all(|v| self.spans_direction(v))
    }

    /// Exact equality of affine subspaces, decided by mutual containment.
    pub fn same_subspace(&self, other: &AffineSubspace) -> bool {
        self.dim() == other.dim() && self.contains(other) && other.contains(self)
    }
}

/// Solves the affine system `rows · x = offsets`. Returns `None` when the
/// intersection is empty, otherwise the solution subspace with a rational
/// base point and a basis of the homogeneous solution space.
pub fn solve_intersection(
    hyperplane_rows: &RationalMatrix,
    offsets: &[Rational],
) -> Option<AffineSubspace> {
    let (point, basis) = hyperplane_rows.solve(offsets)?;
    Some(AffineSubspace { point, basis })
}

/// A dense matrix with arbitrary-precision integer entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, entries: data.iter().map(|&v| BigInt::from(v)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self[(r, k)].is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let add = &self[(r, k)] * &other[(k, c)];
                    out[(r, c)] += add;
                }
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// Promotes to a rational matrix.
    pub fn to_rational(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = Rational::from_integer(self[(r, c)].clone());
            }
        }
        m
    }
}

impl Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
