//! Dense exact vectors and matrices over the rationals.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{common_denominator, Rational};

/// Coordinate vector. Unless stated otherwise coordinates are taken in the
/// simple-root basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RatVec(pub Vec<Rational>);

impl RatVec {
    pub fn zeros(dim: usize) -> RatVec {
        RatVec(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> RatVec {
        let mut v = RatVec::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(values: &[i64]) -> RatVec {
        RatVec(values.iter().map(|&x| Rational::from_int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn add(&self, other: &RatVec) -> RatVec {
        assert_eq!(self.dim(), other.dim());
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RatVec) -> RatVec {
        assert_eq!(self.dim(), other.dim());
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rational) -> RatVec {
        RatVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> RatVec {
        RatVec(self.0.iter().map(|a| -a).collect())
    }

    /// Plain coordinate dot product (no metric).
    pub fn dot(&self, other: &RatVec) -> Rational {
        assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(ToString::to_string).collect()
    }
}

impl Index<usize> for RatVec {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for RatVec {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl FromIterator<Rational> for RatVec {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        RatVec(iter.into_iter().collect())
    }
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> RatMat {
        RatMat {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> RatMat {
        let mut m = RatMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> RatMat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> RatMat {
        RatMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[RatVec]) -> RatMat {
        let c = cols.len();
        let r = cols.first().map_or(0, RatVec::dim);
        let mut m = RatMat::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.dim(), r);
            for i in 0..r {
                m[(i, j)] = col[i].clone();
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

    pub fn row(&self, i: usize) -> RatVec {
        RatVec(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> RatVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).0).collect()
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = RatMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &RatVec) -> RatVec {
        assert_eq!(self.cols, v.dim(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !v[j].is_zero() && !self[(i, j)].is_zero())
                    .map(|j| &self[(i, j)] * &v[j])
                    .sum()
            })
            .collect()
    }

    pub fn scale(&self, k: &Rational) -> RatMat {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn sub(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
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

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let (mut ints, scale) = integer_rows(self, None);
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !ints[r][k].is_zero()) else {
                return Rational::zero();
            };
            if p != k {
                ints.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &ints[k][k] * &ints[i][j] - &ints[i][k] * &ints[k][j];
                    ints[i][j] = v / &prev;
                }
                ints[i][k] = BigInt::zero();
            }
            prev = ints[k][k].clone();
        }
        let det = Rational::from(prev) / Rational::from(scale);
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    pub fn rank(&self) -> usize {
        let (ints, _) = integer_rows(self, None);
        bareiss_echelon(ints, self.cols).1.len()
    }

    pub fn inverse(&self) -> Option<RatMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            match solve_linear(self, &RatVec::unit(n, j)) {
                LinearSolution::Unique(x) => cols.push(x),
                _ => return None,
            }
        }
        Some(RatMat::from_columns(&cols))
    }
}

impl Index<(usize, usize)> for RatMat {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl Serialize for RatMat {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatMat {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Rational>>::deserialize(deserializer)?;
        if let Some(first) = rows.first() {
            if rows.iter().any(|r| r.len() != first.len()) {
                return Err(serde::de::Error::custom("ragged matrix rows"));
            }
        }
        Ok(RatMat::from_rows(rows))
    }
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(RatVec),
    NoSolution,
    Underdetermined,
}

/// Scale every row of `a` (optionally augmented by `b`) to integers.
/// Returns the integer rows and the product of all row scale factors, which
/// is what the determinant must be divided by.
fn integer_rows(a: &RatMat, b: Option<&RatVec>) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut total = BigInt::one();
    let rows = (0..a.rows)
        .map(|i| {
            let mut row: Vec<Rational> = a.row(i).0;
            if let Some(b) = b {
                row.push(b[i].clone());
            }
            let d = common_denominator(&row);
            total *= &d;
            let d = Rational::from(d);
            row.iter()
                .map(|x| {
                    let y = x * &d;
                    debug_assert!(y.is_integer());
                    y.numer().clone()
                })
                .collect()
        })
        .collect();
    (rows, total)
}

/// Fraction-free (Bareiss) row echelon form over the integers, scanning the
/// first `cols` columns for pivots. Returns the reduced rows and the pivot
/// positions `(row, col)`.
fn bareiss_echelon(
    mut m: Vec<Vec<BigInt>>,
    cols: usize,
) -> (Vec<Vec<BigInt>>, Vec<(usize, usize)>) {
    let rows = m.len();
    let width = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..width {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    (m, pivots)
}

/// Solve `a x = b` exactly by fraction-free elimination.
pub fn solve_linear(a: &RatMat, b: &RatVec) -> LinearSolution {
    assert_eq!(a.rows, b.dim(), "right-hand side has wrong dimension");
    let n = a.cols;
    let (ints, _) = integer_rows(a, Some(b));
    let (m, pivots) = bareiss_echelon(ints, n + 1);
    if pivots.iter().any(|&(_, c)| c == n) {
        return LinearSolution::NoSolution;
    }
    if pivots.len() < n {
        return LinearSolution::Underdetermined;
    }
    let mut x = vec![Rational::zero(); n];
    for &(r, c) in pivots.iter().rev() {
        let mut acc = Rational::from(m[r][n].clone());
        for j in c + 1..n {
            if !m[r][j].is_zero() && !x[j].is_zero() {
                acc -= Rational::from(m[r][j].clone()) * &x[j];
            }
        }
        x[c] = acc / Rational::from(m[r][c].clone());
    }
    LinearSolution::Unique(RatVec(x))
}

/// Solution set of `a x = b` as `particular + span(kernel)`, or `None` when
/// the system is inconsistent.
pub fn affine_solution_space(a: &RatMat, b: &RatVec) -> Option<(RatVec, Vec<RatVec>)> {
    let n = a.cols;
    let rows = a.rows;
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut row = a.row(i).0;
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=n {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut particular = RatVec::zeros(n);
    for (k, &c) in pivot_cols.iter().enumerate() {
        particular[c] = m[k][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = RatVec::zeros(n);
            v[f] = Rational::one();
            for (k, &c) in pivot_cols.iter().enumerate() {
                v[c] = -&m[k][f];
            }
            v
        })
        .collect();
    Some((particular, kernel))
}

/// Dimension of the affine hull of a finite point set (-1 for the empty set).
pub fn affine_dimension(points: &[RatVec]) -> isize {
    let Some(first) = points.first() else {
        return -1;
    };
    if points.len() == 1 {
        return 0;
    }
    let diffs: Vec<RatVec> = points[1..].iter().map(|p| p.sub(first)).collect();
    RatMat::from_columns(&diffs).rank() as isize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::q;
    use proptest::prelude::*;

    #[test]
    fn identity_solve_returns_rhs() {
        let b = RatVec(vec![q(1, 2), q(-3, 1), q(7, 5)]);
        assert_eq!(
            solve_linear(&RatMat::identity(3), &b),
            LinearSolution::Unique(b.clone())
        );
    }

    #[test]
    fn singular_inconsistent_and_underdetermined() {
        let a = RatMat::from_int_rows(&[vec![1, 1], vec![2, 2]]);
        assert_eq!(
            solve_linear(&a, &RatVec::from_ints(&[1, 3])),
            LinearSolution::NoSolution
        );
        assert_eq!(
            solve_linear(&a, &RatVec::from_ints(&[1, 2])),
            LinearSolution::Underdetermined
        );
    }

    #[test]
    fn a2_gram_inverse_gives_first_coweight() {
        let g = RatMat::from_int_rows(&[vec![2, -1], vec![-1, 2]]);
        assert_eq!(
            solve_linear(&g, &RatVec::from_ints(&[1, 0])),
            LinearSolution::Unique(RatVec(vec![q(2, 3), q(1, 3)]))
        );
    }

    #[test]
    fn determinant_with_fractions_and_pivoting() {
        let m = RatMat::from_rows(vec![
            vec![q(0, 1), q(1, 2), q(1, 1)],
            vec![q(2, 3), q(0, 1), q(1, 1)],
            vec![q(1, 1), q(1, 1), q(0, 1)],
        ]);
        // expansion along the first row: -1/2*(0-1) + 1*(2/3-0)
        assert_eq!(m.determinant(), q(1, 2) + q(2, 3));
    }

    #[test]
    fn affine_solution_space_of_plane() {
        let a = RatMat::from_int_rows(&[vec![1, 1, 1]]);
        let (p, k) = affine_solution_space(&a, &RatVec::from_ints(&[1])).unwrap();
        assert_eq!(a.mul_vec(&p), RatVec::from_ints(&[1]));
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).is_zero());
        }
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = RatMat> {
        proptest::collection::vec((-6i64..=6, 1i64..=4), n * n).prop_map(move |entries| {
            let rows = entries
                .chunks(n)
                .map(|c| c.iter().map(|&(p, d)| q(p, d)).collect())
                .collect();
            RatMat::from_rows(rows)
        })
    }

    proptest! {
        #[test]
        fn solve_then_multiply_is_identity(m in small_matrix(4), x in proptest::collection::vec(-9i64..=9, 4)) {
            let x = RatVec::from_ints(&x);
            let b = m.mul_vec(&x);
            match solve_linear(&m, &b) {
                LinearSolution::Unique(y) => {
                    prop_assert!(!m.determinant().is_zero());
                    prop_assert_eq!(m.mul_vec(&y), b);
                }
                LinearSolution::Underdetermined => prop_assert!(m.determinant().is_zero()),
                LinearSolution::NoSolution => prop_assert!(false, "consistent system reported inconsistent"),
            }
        }

        #[test]
        fn rank_matches_determinant(m in small_matrix(3)) {
            prop_assert_eq!(m.rank() == 3, !m.determinant().is_zero());
        }
    }
}
