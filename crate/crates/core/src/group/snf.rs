//! Smith normal form over the integers with unimodular transforms and
//! checked arithmetic.

use std::fmt;

use super::GroupError;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend_from_slice(r);
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix, GroupError> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.checked_mul(other[(k, j)]).ok_or(GroupError::Overflow)?;
                    out[(i, j)] = out[(i, j)].checked_add(prod).ok_or(GroupError::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += k * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, k: i64) -> Result<(), GroupError> {
        for j in 0..self.cols {
            let v = self[(src, j)].checked_mul(k).and_then(|p| self[(dst, j)].checked_add(p));
            self[(dst, j)] = v.ok_or(GroupError::Overflow)?;
        }
        Ok(())
    }

    /// `col[dst] += k * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, k: i64) -> Result<(), GroupError> {
        for i in 0..self.rows {
            let v = self[(i, src)].checked_mul(k).and_then(|p| self[(i, dst)].checked_add(p));
            self[(i, dst)] = v.ok_or(GroupError::Overflow)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Result<(), GroupError> {
        for j in 0..self.cols {
            self[(i, j)] = self[(i, j)].checked_neg().ok_or(GroupError::Overflow)?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// `left · m · right = diag(diagonal)` with `left`, `right` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// `min(rows, cols)` nonnegative entries, each dividing the next.
    pub diagonal: Vec<i64>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// The diagonal as a `rows × cols` matrix.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows, self.right.cols);
        for (i, &v) in self.diagonal.iter().enumerate() {
            d[(i, i)] = v;
        }
        d
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithForm, GroupError> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let n = rows.min(cols);

    for t in 0..n {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&ij| a[ij] != 0)
                .min_by_key(|&ij| a[ij].unsigned_abs());
            let Some((pi, pj)) = pivot else {
                break;
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let p = a[(t, t)];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[(i, t)].checked_div(p).ok_or(GroupError::Overflow)?;
                if q != 0 {
                    a.add_row(i, t, -q)?;
                    left.add_row(i, t, -q)?;
                }
                clean &= a[(i, t)] == 0;
            }
            for j in t + 1..cols {
                let q = a[(t, j)].checked_div(p).ok_or(GroupError::Overflow)?;
                if q != 0 {
                    a.add_col(j, t, -q)?;
                    right.add_col(j, t, -q)?;
                }
                clean &= a[(t, j)] == 0;
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[(i, j)].checked_rem(p) != Some(0)));
            match bad_row {
                Some(i) => {
                    a.add_row(t, i, 1)?;
                    left.add_row(t, i, 1)?;
                }
                None => break,
            }
        }
        if a[(t, t)] < 0 {
            a.negate_row(t)?;
            left.negate_row(t)?;
        }
    }
    Ok(SmithForm { diagonal: (0..n).map(|i| a[(i, i)]).collect(), left, right })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf(cols: usize, rows: &[Vec<i64>]) -> SmithForm {
        smith_normal_form(&IntMatrix::from_rows(cols, rows)).unwrap()
    }

    fn check(m: &IntMatrix, s: &SmithForm) {
        let prod = s.left.checked_mul(m).unwrap().checked_mul(&s.right).unwrap();
        assert_eq!(prod, s.diagonal_matrix());
        for w in s.diagonal.windows(2) {
            assert!(w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0), "{:?}", s.diagonal);
        }
    }

    #[test]
    fn examples() {
        assert_eq!(snf(2, &[vec![2, 0], vec![0, 3]]).diagonal, vec![1, 6]);
        assert_eq!(snf(2, &[vec![0, 0]]).diagonal, vec![0]);
        let m = IntMatrix::from_rows(2, &[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.diagonal, vec![2, 4]);
        check(&m, &s);
    }

    #[test]
    fn s3_relation_matrix() {
        let m = IntMatrix::from_rows(2, &[vec![2, 0], vec![0, 2], vec![3, 3]]);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.diagonal, vec![1, 2]);
        check(&m, &s);
    }

    #[test]
    fn empty_shapes() {
        let s = smith_normal_form(&IntMatrix::zeros(0, 3)).unwrap();
        assert!(s.diagonal.is_empty());
        assert_eq!(s.right, IntMatrix::identity(3));
    }

    #[test]
    fn overflow_is_reported() {
        let big = i64::MAX / 2 + 1;
        let m = IntMatrix::from_rows(2, &[vec![big, big - 1], vec![big - 1, -big]]);
        assert_eq!(smith_normal_form(&m), Err(GroupError::Overflow));
    }
}
