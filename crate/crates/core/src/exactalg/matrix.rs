//! Dense matrices over Gaussian rationals and fraction-free elimination.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ExactError, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        let mut m = RatMatrix::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Scalar>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = RatMatrix::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn try_mul(&self, rhs: &RatMatrix) -> Result<RatMatrix, ExactError> {
        if self.cols != rhs.rows {
            return Err(ExactError::Arity(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector size mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    fn zip_with(&self, rhs: &RatMatrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> RatMatrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "matrix shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &RatMatrix) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Kronecker product.
    pub fn kron(&self, other: &RatMatrix) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        m
    }

    /// Row echelon form by fraction-free (Bareiss) elimination.
    ///
    /// Returns the reduced matrix, its pivot columns, and the parity of row swaps.
    fn bareiss(&self) -> (RatMatrix, Vec<usize>, bool) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prev = Scalar::one();
        let mut swapped = false;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
                swapped = !swapped;
            }
            let piv = m.get(r, c).clone();
            for i in (r + 1)..m.rows {
                let lead = m.get(i, c).clone();
                for j in (c + 1)..m.cols {
                    let v = &(&piv * m.get(i, j)) - &(&lead * m.get(r, j));
                    m.set(i, j, &v / &prev);
                }
                m.set(i, c, Scalar::zero());
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        (m, pivots, swapped)
    }

    pub fn rank(&self) -> usize {
        self.bareiss().1.len()
    }

    /// Determinant; for Bareiss the last pivot of a full-rank square matrix is exact.
    pub fn det(&self) -> Result<Scalar, ExactError> {
        if !self.is_square() {
            return Err(ExactError::Arity("determinant of a non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(Scalar::one());
        }
        let (m, pivots, swapped) = self.bareiss();
        if pivots.len() < self.rows {
            return Ok(Scalar::zero());
        }
        let d = m.get(self.rows - 1, self.cols - 1).clone();
        Ok(if swapped { -d } else { d })
    }

    /// Exact basis of the right nullspace; empty iff the matrix is injective.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (m, pivots, _) = self.bareiss();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Scalar::zero(); self.cols];
                x[f] = Scalar::one();
                for (k, &pc) in pivots.iter().enumerate().rev() {
                    let s: Scalar = ((pc + 1)..self.cols)
                        .filter(|&j| !x[j].is_zero() && !m.get(k, j).is_zero())
                        .map(|j| m.get(k, j) * &x[j])
                        .sum();
                    x[pc] = -(&s / m.get(k, pc));
                }
                x
            })
            .collect()
    }

    /// Indices of a maximal set of linearly independent columns (leftmost first).
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.bareiss().1
    }

    /// Basis of the column space, taken from the original columns.
    pub fn column_basis(&self) -> Vec<Vec<Scalar>> {
        self.pivot_columns().into_iter().map(|j| self.column(j)).collect()
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        self.solve(&RatMatrix::identity(self.rows))
    }

    /// Solves `self * X = rhs` for square invertible `self` (Gauss-Jordan).
    pub fn solve(&self, rhs: &RatMatrix) -> Option<RatMatrix> {
        if !self.is_square() || rhs.rows != self.rows {
            return None;
        }
        let n = self.rows;
        let w = n + rhs.cols;
        let mut a = RatMatrix::zeros(n, w);
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                a.set(i, n + j, rhs.get(i, j).clone());
            }
        }
        for c in 0..n {
            let p = (c..n).find(|&i| !a.get(i, c).is_zero())?;
            if p != c {
                for j in 0..w {
                    a.data.swap(p * w + j, c * w + j);
                }
            }
            let inv = a.get(c, c).inv()?;
            for j in c..w {
                let v = a.get(c, j) * &inv;
                a.set(c, j, v);
            }
            for i in 0..n {
                if i == c || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in c..w {
                    if a.get(c, j).is_zero() {
                        continue;
                    }
                    let v = a.get(i, j) - &(&f * a.get(c, j));
                    a.set(i, j, v);
                }
            }
        }
        let mut x = RatMatrix::zeros(n, rhs.cols);
        for i in 0..n {
            for j in 0..rhs.cols {
                x.set(i, j, a.get(i, n + j).clone());
            }
        }
        Some(x)
    }

    /// Leading principal minors `det(A[..k, ..k])`, `k = 1..=n`.
    pub fn leading_minors(&self) -> Vec<Scalar> {
        (1..=self.rows.min(self.cols))
            .map(|k| self.submatrix(&(0..k).collect::<Vec<_>>()).det().expect("square"))
            .collect()
    }

    /// Principal submatrix on the given index set.
    pub fn submatrix(&self, idx: &[usize]) -> RatMatrix {
        let mut m = RatMatrix::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Exact positive-definiteness of a real symmetric matrix via leading minors.
    pub fn is_positive_definite(&self) -> bool {
        self.is_symmetric()
            && self.data.iter().all(Scalar::is_real)
            && self.leading_minors().iter().all(|d| d.real_sign() == Some(1))
    }

    pub fn pow(&self, k: u32) -> RatMatrix {
        let mut acc = RatMatrix::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Integer grid of the entries, if they are all integers.
    pub fn to_int_grid(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| {
                        let r = x.to_real()?;
                        if r.is_integer() {
                            r.numer().to_i64()
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_mul(rhs).expect("matrix shape mismatch")
    }
}

impl std::ops::Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl std::ops::Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

/// Exact basis of the right nullspace of `m`.
pub fn mat_nullspace(m: &RatMatrix) -> Vec<Vec<Scalar>> {
    m.nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_examples() {
        let m = RatMatrix::from_int_rows(&[&[1, 1], &[2, 2]]);
        let ns = mat_nullspace(&m);
        assert_eq!(ns, vec![vec![Scalar::from_int(-1), Scalar::one()]]);
        // proportional to (1,-1)
        assert!(mat_nullspace(&RatMatrix::identity(3)).is_empty());
        assert_eq!(mat_nullspace(&RatMatrix::zeros(2, 2)).len(), 2);
    }

    #[test]
    fn determinants() {
        let m = RatMatrix::from_int_rows(&[&[0, 2, 1], &[1, 0, 0], &[3, 1, 4]]);
        // cofactor expansion along row 2: -1 * (2*4 - 1*1) = -7
        assert_eq!(m.det().unwrap(), Scalar::from_int(-7));
        let sing = RatMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(sing.det().unwrap(), Scalar::zero());
        assert_eq!(RatMatrix::identity(4).scale(&Scalar::from_int(2)).det().unwrap(), Scalar::from_int(16));
    }

    #[test]
    fn inverse_round_trip() {
        let m = RatMatrix::from_int_rows(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, RatMatrix::identity(2));
        assert!(RatMatrix::from_int_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn positive_definite() {
        assert!(RatMatrix::from_int_rows(&[&[2, 1], &[1, 2]]).is_positive_definite());
        assert!(!RatMatrix::from_int_rows(&[&[1, 2], &[2, 1]]).is_positive_definite());
    }

    #[test]
    fn rank_of_rectangular() {
        let m = RatMatrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.nullspace().len(), 1);
    }
}
