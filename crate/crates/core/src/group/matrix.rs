use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::exact::ExactInt;

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matrix<I> {
    rows: usize,
    cols: usize,
    data: Vec<I>,
}

impl<I: ExactInt> Matrix<I> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![I::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = I::one();
        }
        m
    }

    /// `cols` is needed for the zero-row case.
    pub fn from_rows(rows: Vec<Vec<I>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        let n = rows.len();
        Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[I] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<I>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<J, F: Fn(&I) -> J>(&self, f: F) -> Matrix<J> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_big(&self) -> Matrix<BigInt>
    where
        I: Into<BigInt>,
    {
        self.map(|x| x.clone().into())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<I>) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::<I>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix<I>) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self[(i, j)].clone()))
            .collect();
        Matrix { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && determinant(self).abs().is_one()
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

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &I) {
        for j in 0..self.cols {
            let v = self[(dst, j)].clone() + k.clone() * self[(src, j)].clone();
            self[(dst, j)] = v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &I) {
        for i in 0..self.rows {
            let v = self[(i, dst)].clone() + k.clone() * self[(i, src)].clone();
            self[(i, dst)] = v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }
}

impl<I> std::ops::Index<(usize, usize)> for Matrix<I> {
    type Output = I;
    fn index(&self, (i, j): (usize, usize)) -> &I {
        &self.data[i * self.cols + j]
    }
}

impl<I> std::ops::IndexMut<(usize, usize)> for Matrix<I> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut I {
        &mut self.data[i * self.cols + j]
    }
}

impl<I: fmt::Display> fmt::Display for Matrix<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// `left * m * right == diag(diagonal)` with unimodular `left`, `right`,
/// non-negative diagonal entries and each entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm<I> {
    pub diagonal: Vec<I>,
    pub left: Matrix<I>,
    pub right: Matrix<I>,
}

impl<I: ExactInt> SmithForm<I> {
    /// The full `rows x cols` diagonal matrix.
    pub fn diagonal_matrix(&self) -> Matrix<I> {
        let mut d = Matrix::zeros(self.left.rows(), self.right.cols());
        for (i, v) in self.diagonal.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }

    pub fn nonzero_count(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form<I: ExactInt>(m: &Matrix<I>) -> SmithForm<I> {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = Matrix::identity(r);
    let mut right = Matrix::identity(c);
    let n = r.min(c);
    let mut t = 0;
    'pivots: while t < n {
        loop {
            let best = (t..r)
                .flat_map(|i| (t..c).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[(i, j)].is_zero())
                .min_by(|&p, &q| a[p].abs().cmp(&a[q].abs()));
            let Some((pi, pj)) = best else { break 'pivots };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(a[(i, t)].clone() / a[(t, t)].clone());
                a.add_row(i, t, &q);
                left.add_row(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(a[(t, j)].clone() / a[(t, t)].clone());
                a.add_col(j, t, &q);
                right.add_col(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let p = a[(t, t)].clone();
            let bad_row = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match bad_row {
                Some(i) => {
                    a.add_row(t, i, &I::one());
                    left.add_row(t, i, &I::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }
    let diagonal = (0..n).map(|i| a[(i, i)].clone()).collect();
    SmithForm { diagonal, left, right }
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant<I: ExactInt>(m: &Matrix<I>) -> I {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return I::one();
    }
    let mut a = m.clone();
    let mut sign = I::one();
    let mut prev = I::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return I::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone())
                    / prev.clone();
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * a[(n - 1, n - 1)].clone()
}

/// All `k`-element subsets of `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// gcd of all `k x k` minors (the `k`-th determinantal divisor); the empty
/// minor counts as 1.
pub fn minor_gcd<I: ExactInt>(m: &Matrix<I>, k: usize) -> I {
    if k == 0 {
        return I::one();
    }
    let row_sets = combinations(m.rows(), k);
    let col_sets = combinations(m.cols(), k);
    let mut g = I::zero();
    for rs in &row_sets {
        for cs in &col_sets {
            g = g.gcd(&determinant(&m.submatrix(rs, cs)));
            if g.is_one() {
                return g;
            }
        }
    }
    g
}

/// For a group with `g` generators and exponent matrix `m`: the
/// abelianization is infinite cyclic iff every `g x g` minor vanishes and the
/// `(g-1) x (g-1)` minors are coprime.
pub fn minors_criterion<I: ExactInt>(m: &Matrix<I>) -> bool {
    let g = m.cols();
    if g == 0 {
        return false;
    }
    minor_gcd(m, g).is_zero() && minor_gcd(m, g - 1).is_one()
}
