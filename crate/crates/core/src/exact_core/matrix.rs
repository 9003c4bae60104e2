use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Dense row-major matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| super::integer(v)).collect())
                .collect(),
        )
    }

    /// Builds `rows x cols` from an entry function of `(i, j)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Rational::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
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

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(
                "subtraction of differently shaped matrices".into(),
            ));
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// `M^m − I` by binary exponentiation.
    pub fn power_minus_identity(&self, m: u64) -> Result<Self> {
        self.require_square()?;
        if m == 0 {
            return Err(Error::Precondition("exponent must be at least 1".into()));
        }
        self.pow(m)?.sub(&Self::identity(self.rows))
    }

    pub fn pow(&self, mut m: u64) -> Result<Self> {
        self.require_square()?;
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                result = result.mul(&base)?;
            }
            m >>= 1;
            if m > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Exact determinant. Each row is scaled to integers by the lcm of its
    /// denominators, the integer matrix goes through fraction-free Bareiss
    /// elimination, and the product of the row scalings is divided out.
    pub fn determinant(&self) -> Result<Rational> {
        self.require_square()?;
        let n = self.rows;
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let row = self.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
            a.push(row.iter().map(|e| e.numer() * (&lcm / e.denom())).collect());
            scale *= lcm;
        }
        let det = bareiss(&mut a);
        Ok(Rational::new(det, scale))
    }

    /// Basis of the right kernel from the reduced row echelon form. The
    /// vector for free column `f` has a 1 at `f` and zeros at the other
    /// free columns, so its last nonzero entry is at `f`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (reduced, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut pivot_iter = pivots.iter().peekable();
        let mut free = Vec::new();
        for col in 0..self.cols {
            if pivot_iter.peek().is_some_and(|&&p| p == col) {
                pivot_iter.next();
            } else {
                free.push(col);
            }
        }
        for &f in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -reduced.get(row, f).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(found) = (r..a.rows).find(|&i| !a.get(i, col).is_zero()) else {
                continue;
            };
            a.swap_rows(found, r);
            let pivot = a.get(r, col).clone();
            for j in col..a.cols {
                let v = a.get(r, j) / &pivot;
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i == r || a.get(i, col).is_zero() {
                    continue;
                }
                let factor = a.get(i, col).clone();
                for j in col..a.cols {
                    let v = a.get(i, j) - &factor * a.get(r, j);
                    a.set(i, j, v);
                }
            }
            pivots.push(col);
            r += 1;
        }
        (a, pivots)
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(i * self.cols + j, k * self.cols + j);
        }
    }
}

/// Fraction-free Gaussian elimination; every division is exact.
fn bareiss(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::integer;
    use proptest::prelude::*;

    /// Laplace expansion along the first row; independent of Bareiss.
    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * cofactor_det(&minor)
            })
            .sum()
    }

    fn to_matrix(m: &[Vec<i64>]) -> ExactMatrix {
        let refs: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
        ExactMatrix::from_i64_rows(&refs).unwrap()
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(to_matrix(&[vec![1]]).determinant().unwrap(), integer(1));
        assert_eq!(
            to_matrix(&[vec![3, 7], vec![1, 3]]).determinant().unwrap(),
            integer(2)
        );
        let repeated = to_matrix(&[vec![1, 2, 3], vec![4, 5, 6], vec![1, 2, 3]]);
        assert_eq!(repeated.determinant().unwrap(), integer(0));
        let zero_pivot = to_matrix(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(zero_pivot.determinant().unwrap(), integer(-1));
        assert!(matches!(
            ExactMatrix::zeros(2, 3).determinant(),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn rational_entries_divide_out_scaling() {
        let m = ExactMatrix::from_rows(vec![
            vec![
                crate::exact_core::ratio(1, 2),
                crate::exact_core::ratio(1, 3),
            ],
            vec![
                crate::exact_core::ratio(1, 4),
                crate::exact_core::ratio(1, 5),
            ],
        ])
        .unwrap();
        // 1/10 − 1/12
        assert_eq!(m.determinant().unwrap(), crate::exact_core::ratio(1, 60));
    }

    #[test]
    fn power_minus_identity_examples() {
        let m = to_matrix(&[vec![2]]);
        assert_eq!(m.power_minus_identity(3).unwrap(), to_matrix(&[vec![7]]));
        assert!(ExactMatrix::identity(3)
            .power_minus_identity(5)
            .unwrap()
            .is_zero());
        let c = crate::exact_core::MonicPoly::from_i64(&[1, -5, 6])
            .unwrap()
            .companion();
        assert_eq!(
            c.power_minus_identity(2).unwrap().determinant().unwrap(),
            integer(24)
        );
        assert!(ExactMatrix::zeros(1, 2).power_minus_identity(2).is_err());
    }

    #[test]
    fn nullspace_examples() {
        assert!(ExactMatrix::identity(3).nullspace().is_empty());
        let row = to_matrix(&[vec![1, 1]]);
        assert_eq!(row.nullspace(), vec![vec![integer(-1), integer(1)]]);
        let rank_one = to_matrix(&[vec![1, 2], vec![2, 4]]);
        let basis = rank_one.nullspace();
        assert_eq!(basis.len(), 1);
        // proportional to [2, −1]
        assert_eq!(&basis[0][0] * integer(-1), &basis[0][1] * integer(2));
    }

    fn square(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1..=max).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-9i64..=9, n), n))
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor_expansion(m in square(5)) {
            prop_assert_eq!(to_matrix(&m).determinant().unwrap(), integer(cofactor_det(&m)));
        }

        #[test]
        fn nullspace_vectors_are_annihilated(
            rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..5)
        ) {
            let m = to_matrix(&rows);
            let basis = m.nullspace();
            prop_assert_eq!(basis.len() + m.rank(), 5);
            for v in basis {
                for i in 0..m.rows() {
                    let dot: Rational = m.row(i).iter().zip(&v).map(|(a, b)| a * b).sum();
                    prop_assert!(dot.is_zero());
                }
            }
        }
    }
}
