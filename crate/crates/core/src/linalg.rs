//! Exact rational linear algebra.
//!
//! Everything here works over arbitrary-precision rationals; there is no
//! tolerance anywhere. Matrices are small (rank at most 8 in practice), so
//! plain Gaussian elimination with first-nonzero pivoting is used throughout.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;

/// Exact rational scalar. `BigRational` keeps itself in lowest terms with a
/// positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Returns the value as `i64` when the scalar is an integer that fits.
pub fn to_i64(s: &Scalar) -> Option<i64> {
    if s.is_integer() {
        s.numer().to_i64()
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(pub Vec<Scalar>);

impl Vector {
    pub fn zeros(n: usize) -> Self {
        Vector(vec![Scalar::zero(); n])
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Scalar::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Standard inner product.
    pub fn inner(&self, other: &Vector) -> Result<Scalar, Error> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(self.dot(other))
    }

    /// Inner product for vectors already known to share a length.
    pub(crate) fn dot(&self, other: &Vector) -> Scalar {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn norm2(&self) -> Scalar {
        self.dot(self)
    }

    /// Integer coordinates, if every entry is an integer.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(to_i64).collect()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        debug_assert_eq!(self.len(), rhs.len());
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        debug_assert_eq!(self.len(), rhs.len());
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vector]) -> Self {
        let cols = rows.first().map_or(0, Vector::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.0.iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds the matrix whose columns are the given vectors; `dim` is used
    /// when the list is empty.
    pub fn from_columns(cols: &[Vector], dim: usize) -> Self {
        let rows = cols.first().map_or(dim, Vector::len);
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for i in 0..rows {
                m[(i, j)] = c[i].clone();
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(&rows.iter().map(|r| Vector::from_ints(r)).collect::<Vec<_>>())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        Vector(
            (0..self.rows)
                .map(|i| {
                    self.data[i * self.cols..(i + 1) * self.cols]
                        .iter()
                        .zip(&v.0)
                        .filter(|(a, _)| !a.is_zero())
                        .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matmul");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
fn rref(m: &mut Matrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, r * m.cols + j);
            }
        }
        let inv = m[(r, c)].recip();
        for j in c..m.cols {
            let v = &m[(r, j)] * &inv;
            m[(r, j)] = v;
        }
        for i in 0..m.rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..m.cols {
                let v = &m[(r, j)] * &f;
                m[(i, j)] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Row rank over the rationals.
pub fn rank(m: &Matrix) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Rank of the span of a list of vectors.
pub fn rank_of(vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&Matrix::from_rows(vectors))
}

/// One exact solution of `a * x = b`, or `None` when the system is
/// inconsistent. Free variables are set to zero.
pub fn solve(a: &Matrix, b: &Vector) -> Option<Vector> {
    assert_eq!(a.rows, b.len(), "row count must match right-hand side");
    let mut aug = Matrix::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols)] = b[i].clone();
    }
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = Vector::zeros(a.cols);
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[(r, a.cols)].clone();
    }
    Some(x)
}

/// Coefficients expressing `v` as a rational combination of `basis`, if any.
pub fn in_span(basis: &[Vector], v: &Vector) -> Option<Vec<Scalar>> {
    if basis.is_empty() {
        return v.is_zero().then(Vec::new);
    }
    let a = Matrix::from_columns(basis, v.len());
    solve(&a, v).map(|x| x.0)
}

/// Integer coefficients `x` with `sum_j x[j] * columns[j] = target`, or
/// `None` when the target is outside the integer span. Columns may be
/// linearly dependent.
pub fn integer_combination(columns: &[Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    let rows = target.len();
    let m = columns.len();
    // Column-style Hermite reduction tracking the unimodular transform.
    let mut h: Vec<Vec<i128>> = columns
        .iter()
        .map(|c| {
            assert_eq!(c.len(), rows, "column length mismatch");
            c.iter().map(|&x| x as i128).collect()
        })
        .collect();
    let mut u: Vec<Vec<i128>> = (0..m)
        .map(|j| (0..m).map(|i| i128::from(i == j)).collect())
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut pc = 0;
    for r in 0..rows {
        if pc == m {
            break;
        }
        loop {
            let best = (pc..m)
                .filter(|&j| h[j][r] != 0)
                .min_by_key(|&j| h[j][r].abs());
            let Some(best) = best else { break };
            h.swap(pc, best);
            u.swap(pc, best);
            let mut done = true;
            let (hp, up) = (h[pc].clone(), u[pc].clone());
            for j in pc + 1..m {
                if h[j][r] != 0 {
                    let q = Integer::div_floor(&h[j][r], &hp[r]);
                    for (x, p) in h[j].iter_mut().zip(&hp) {
                        *x -= q * p;
                    }
                    for (x, p) in u[j].iter_mut().zip(&up) {
                        *x -= q * p;
                    }
                    if h[j][r] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h.get(pc).is_some_and(|c| c[r] != 0) {
            pivots.push((r, pc));
            pc += 1;
        }
    }
    let mut residual: Vec<i128> = target.iter().map(|&x| x as i128).collect();
    let mut y = vec![0i128; m];
    for &(r, j) in &pivots {
        let (q, rem) = residual[r].div_rem(&h[j][r]);
        if rem != 0 {
            return None;
        }
        y[j] = q;
        for i in 0..rows {
            residual[i] -= q * h[j][i];
        }
    }
    if residual.iter().any(|&x| x != 0) {
        return None;
    }
    // x = U^T-combination: original columns times u-rows reproduce h.
    let mut x = vec![0i128; m];
    for j in 0..m {
        if y[j] != 0 {
            for i in 0..m {
                x[i] += y[j] * u[j][i];
            }
        }
    }
    x.into_iter().map(|v| i64::try_from(v).ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_examples() {
        let v = |xs: &[i64]| Vector::from_ints(xs);
        assert_eq!(v(&[1, 0]).inner(&v(&[0, 1])).unwrap(), int(0));
        assert_eq!(v(&[1, -1, 0]).inner(&v(&[1, -1, 0])).unwrap(), int(2));
        assert_eq!(v(&[1, 1]).inner(&v(&[2, 3])).unwrap(), int(5));
        assert!(matches!(
            v(&[1, 1]).inner(&v(&[1, 1, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::zeros(3, 3)), 0);
        assert_eq!(rank(&Matrix::identity(4)), 4);
        let m = Matrix::from_ints(&[&[1, 1, 0, 0], &[1, -1, 0, 0], &[2, 0, 0, 0]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&m.transpose()), 2);
    }

    #[test]
    fn in_span_examples() {
        let e = |xs: &[i64]| Vector::from_ints(xs);
        assert_eq!(in_span(&[], &Vector::zeros(3)), Some(vec![]));
        assert_eq!(
            in_span(&[e(&[1, 1, 0, 0]), e(&[1, -1, 0, 0])], &e(&[2, 0, 0, 0])),
            Some(vec![int(1), int(1)])
        );
        assert_eq!(in_span(&[e(&[1, 1, 0, 0])], &e(&[1, 0, 0, 0])), None);
    }

    #[test]
    fn solve_examples() {
        let v = Vector(vec![frac(1, 2), int(-3), int(7)]);
        assert_eq!(solve(&Matrix::identity(3), &v), Some(v.clone()));
        assert_eq!(solve(&Matrix::zeros(2, 2), &Vector::from_ints(&[0, 1])), None);
        let a = Matrix::from_columns(
            &[Vector::from_ints(&[1, 1]), Vector::from_ints(&[1, -1])],
            2,
        );
        assert_eq!(
            solve(&a, &Vector::from_ints(&[2, 0])),
            Some(Vector::from_ints(&[1, 1]))
        );
    }

    #[test]
    fn integer_combination_respects_lattice() {
        // 2 and 3 generate Z, so 1 is reachable.
        let x = integer_combination(&[vec![2], vec![3]], &[1]).unwrap();
        assert_eq!(2 * x[0] + 3 * x[1], 1);
        // (2,0),(0,2) miss (1,1).
        assert_eq!(integer_combination(&[vec![2, 0], vec![0, 2]], &[1, 1]), None);
        // Rationally fine but not integrally.
        assert_eq!(integer_combination(&[vec![1, 1], vec![1, -1]], &[1, 0]), None);
        assert_eq!(
            integer_combination(&[vec![1, 1], vec![1, -1]], &[2, 0]),
            Some(vec![1, 1])
        );
        assert_eq!(integer_combination(&[], &[0, 0]), Some(vec![]));
        assert_eq!(integer_combination(&[], &[0, 1]), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
            (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
                prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
            })
        }

        proptest! {
            #[test]
            fn rank_is_transpose_invariant(rows in small_matrix()) {
                let m = Matrix::from_rows(&rows.iter().map(|r| Vector::from_ints(r)).collect::<Vec<_>>());
                prop_assert_eq!(rank(&m), rank(&m.transpose()));
            }

            #[test]
            fn solutions_check_out(rows in small_matrix(), seed in prop::collection::vec(-3i64..=3, 4)) {
                let m = Matrix::from_rows(&rows.iter().map(|r| Vector::from_ints(r)).collect::<Vec<_>>());
                let x0 = Vector::from_ints(&seed[..m.cols()]);
                let b = m.mul_vec(&x0);
                let x = solve(&m, &b).expect("consistent by construction");
                prop_assert_eq!(m.mul_vec(&x), b.clone());
                let cols: Vec<Vector> = (0..m.cols()).map(|j| m.column(j)).collect();
                let c = in_span(&cols, &b).unwrap();
                let recomposed = cols.iter().zip(&c).fold(Vector::zeros(b.len()), |acc, (v, s)| &acc + &v.scale(s));
                prop_assert_eq!(recomposed, b);
            }

            #[test]
            fn integer_combination_is_exact(rows in small_matrix(), seed in prop::collection::vec(-3i64..=3, 4)) {
                let cols: Vec<Vec<i64>> = (0..rows[0].len()).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
                let target: Vec<i64> = (0..rows.len())
                    .map(|i| cols.iter().zip(&seed).map(|(c, s)| c[i] * s).sum())
                    .collect();
                let x = integer_combination(&cols, &target).expect("target built from integer combination");
                for i in 0..rows.len() {
                    let got: i64 = cols.iter().zip(&x).map(|(c, s)| c[i] * s).sum();
                    prop_assert_eq!(got, target[i]);
                }
            }
        }
    }
}
