//! Integer matrices, exact determinants, Smith normal form, kernels and
//! integer linear solving. Sizes in this project stay small (a few hundred
//! rows), so everything is textbook row/column reduction over `Z`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense matrix over `Z`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
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

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = BigInt::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() {
                        s += &self[(i, j)] * &v[j];
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = -std::mem::take(a);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Place `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(
                f,
                "  [{}]",
                self.row(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )?;
        }
        write!(f, "]")
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal with a
/// divisibility chain `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries of `D` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows.min(self.d.cols);
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form by row/column reduction with minimal-absolute-value
/// pivoting; returns the full decomposition with transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    let n = a.rows.min(a.cols);

    for t in 0..n {
        loop {
            // choose pivot: minimal nonzero |entry| in the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    if !d[(i, j)].is_zero()
                        && pivot
                            .map(|(pi, pj)| d[(i, j)].abs() < d[(pi, pj)].abs())
                            .unwrap_or(true)
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let (pi, pj) = match pivot {
                Some(p) => p,
                None => {
                    return finish_snf(u, d, v, t);
                }
            };
            swap_rows(&mut d, &mut u, t, pi);
            swap_cols(&mut d, &mut v, t, pj);

            let mut dirty = false;
            // clear column t
            for i in t + 1..d.rows {
                if !d[(i, t)].is_zero() {
                    let q = rounded_div(&d[(i, t)], &d[(t, t)]);
                    if !q.is_zero() {
                        row_axpy(&mut d, &mut u, i, t, &q);
                    }
                    if !d[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
            }
            // clear row t
            for j in t + 1..d.cols {
                if !d[(t, j)].is_zero() {
                    let q = rounded_div(&d[(t, j)], &d[(t, t)]);
                    if !q.is_zero() {
                        col_axpy(&mut d, &mut v, j, t, &q);
                    }
                    if !d[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue; // smaller remainders exist; repick pivot
            }
            let clean = (t + 1..d.rows).all(|i| d[(i, t)].is_zero())
                && (t + 1..d.cols).all(|j| d[(t, j)].is_zero());
            if clean {
                break;
            }
        }
    }
    finish_snf(u, d, v, n)
}

fn finish_snf(
    mut u: IntMatrix,
    mut d: IntMatrix,
    mut v: IntMatrix,
    _processed: usize,
) -> SmithDecomposition {
    let n = d.rows.min(d.cols);
    // normalize signs
    for i in 0..n {
        if d[(i, i)].is_negative() {
            for j in 0..d.cols {
                let x = -d[(i, j)].clone();
                d[(i, j)] = x;
            }
            for j in 0..u.cols {
                let x = -u[(i, j)].clone();
                u[(i, j)] = x;
            }
        }
    }
    // move zero diagonal entries to the end
    loop {
        let mut moved = false;
        for i in 0..n.saturating_sub(1) {
            if d[(i, i)].is_zero() && !d[(i + 1, i + 1)].is_zero() {
                swap_rows_plain(&mut d, &mut u, i, i + 1);
                swap_cols_plain(&mut d, &mut v, i, i + 1);
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    // enforce the divisibility chain d_i | d_{i+1}
    loop {
        let mut fixed = true;
        for i in 0..n.saturating_sub(1) {
            let a = d[(i, i)].clone();
            let b = d[(i + 1, i + 1)].clone();
            if a.is_zero() || b.is_zero() {
                continue;
            }
            if (&b % &a).is_zero() {
                continue;
            }
            fixed = false;
            // col i += col i+1, then re-reduce the 2x2 block
            col_axpy_add(&mut d, &mut v, i, i + 1);
            reduce_two_by_two(&mut d, &mut u, &mut v, i);
        }
        if fixed {
            break;
        }
    }
    SmithDecomposition { u, d, v }
}

/// Re-establish diagonal form on the 2x2 block at (i, i) after a coupling
/// column operation; the block is [[a, 0], [b', c]] form initially.
fn reduce_two_by_two(d: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, i: usize) {
    loop {
        // gcd reduction in the column
        while !d[(i + 1, i)].is_zero() {
            if d[(i + 1, i)].abs() < d[(i, i)].abs() || d[(i, i)].is_zero() {
                swap_rows_plain(d, u, i, i + 1);
            }
            if d[(i + 1, i)].is_zero() {
                break;
            }
            let q = rounded_div(&d[(i, i)], &d[(i + 1, i)]);
            // row i -= q * row i+1 ... careful: operate with pivot at i+1
            swap_rows_plain(d, u, i, i + 1);
            let q2 = q;
            row_axpy_full(d, u, i + 1, i, &q2);
        }
        // column i cleared below; now clear row i to the right
        if d[(i, i + 1)].is_zero() {
            break;
        }
        let q = rounded_div(&d[(i, i + 1)], &d[(i, i)]);
        col_axpy_full(d, v, i + 1, i, &q);
        if d[(i, i + 1)].is_zero() {
            break;
        }
        // remainder nonzero: swap columns and continue gcd loop
        swap_cols_plain(d, v, i, i + 1);
    }
    // sign normalization deferred to finish
    for k in [i, i + 1] {
        if d[(k, k)].is_negative() {
            for j in 0..d.cols {
                let x = -d[(k, j)].clone();
                d[(k, j)] = x;
            }
            for j in 0..u.cols {
                let x = -u[(k, j)].clone();
                u[(k, j)] = x;
            }
        }
    }
}

fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    // quotient minimizing |a - q b|
    let (q, r) = num_integer::Integer::div_mod_floor(a, b);
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        q + BigInt::one()
    } else {
        q
    }
}

fn swap_rows(d: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
    swap_rows_plain(d, u, a, b)
}

fn swap_rows_plain(d: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..d.cols {
        let (x, y) = (d[(a, j)].clone(), d[(b, j)].clone());
        d[(a, j)] = y;
        d[(b, j)] = x;
    }
    for j in 0..u.cols {
        let (x, y) = (u[(a, j)].clone(), u[(b, j)].clone());
        u[(a, j)] = y;
        u[(b, j)] = x;
    }
}

fn swap_cols(d: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize) {
    swap_cols_plain(d, v, a, b)
}

fn swap_cols_plain(d: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..d.rows {
        let (x, y) = (d[(i, a)].clone(), d[(i, b)].clone());
        d[(i, a)] = y;
        d[(i, b)] = x;
    }
    for i in 0..v.rows {
        let (x, y) = (v[(i, a)].clone(), v[(i, b)].clone());
        v[(i, a)] = y;
        v[(i, b)] = x;
    }
}

/// row i -= q * row t (on d and u)
fn row_axpy(d: &mut IntMatrix, u: &mut IntMatrix, i: usize, t: usize, q: &BigInt) {
    row_axpy_full(d, u, i, t, q)
}

fn row_axpy_full(d: &mut IntMatrix, u: &mut IntMatrix, i: usize, t: usize, q: &BigInt) {
    for j in 0..d.cols {
        let delta = q * &d[(t, j)];
        d[(i, j)] -= delta;
    }
    for j in 0..u.cols {
        let delta = q * &u[(t, j)];
        u[(i, j)] -= delta;
    }
}

/// col j -= q * col t (on d and v)
fn col_axpy(d: &mut IntMatrix, v: &mut IntMatrix, j: usize, t: usize, q: &BigInt) {
    col_axpy_full(d, v, j, t, q)
}

fn col_axpy_full(d: &mut IntMatrix, v: &mut IntMatrix, j: usize, t: usize, q: &BigInt) {
    for i in 0..d.rows {
        let delta = q * &d[(i, t)];
        d[(i, j)] -= delta;
    }
    for i in 0..v.rows {
        let delta = q * &v[(i, t)];
        v[(i, j)] -= delta;
    }
}

/// col i += col j (on d and v)
fn col_axpy_add(d: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize) {
    for r in 0..d.rows {
        let delta = d[(r, j)].clone();
        d[(r, i)] += delta;
    }
    for r in 0..v.rows {
        let delta = v[(r, j)].clone();
        v[(r, i)] += delta;
    }
}

/// Basis of the integer kernel `{x : A x = 0}` as matrix columns,
/// by column reduction (cheaper than a full SNF for wide/tall sparse input).
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    // Column-HNF style: reduce columns of A while mirroring the operations
    // on an identity matrix; columns of the mirror matching zero columns of
    // the reduced A form a kernel basis.
    let mut m = a.clone();
    let mut v = IntMatrix::identity(a.cols);
    let mut pivot_row = 0usize;
    let mut pivot_col = 0usize;
    while pivot_row < m.rows && pivot_col < m.cols {
        // gcd-reduce entries of row pivot_row among columns >= pivot_col
        loop {
            let mut best: Option<usize> = None;
            for j in pivot_col..m.cols {
                if !m[(pivot_row, j)].is_zero()
                    && best
                        .map(|b| m[(pivot_row, j)].abs() < m[(pivot_row, b)].abs())
                        .unwrap_or(true)
                {
                    best = Some(j);
                }
            }
            let bj = match best {
                None => break,
                Some(b) => b,
            };
            swap_cols_plain(&mut m, &mut v, pivot_col, bj);
            let mut again = false;
            for j in pivot_col + 1..m.cols {
                if !m[(pivot_row, j)].is_zero() {
                    let q = rounded_div(&m[(pivot_row, j)], &m[(pivot_row, pivot_col)]);
                    if !q.is_zero() {
                        col_axpy_full(&mut m, &mut v, j, pivot_col, &q);
                    }
                    if !m[(pivot_row, j)].is_zero() {
                        again = true;
                    }
                }
            }
            if !again {
                break;
            }
        }
        if !m[(pivot_row, pivot_col)].is_zero() {
            pivot_col += 1;
        }
        pivot_row += 1;
    }
    // columns pivot_col.. of m are zero columns
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..m.cols {
        if (0..m.rows).all(|i| m[(i, j)].is_zero()) {
            cols.push(v.col(j));
        }
    }
    let k = cols.len();
    let mut out = IntMatrix::zero(a.cols, k);
    for (jj, c) in cols.into_iter().enumerate() {
        for i in 0..a.cols {
            out[(i, jj)] = c[i].clone();
        }
    }
    out
}

/// Solve `A X = B` over the integers; `None` if any column is unsolvable.
pub fn solve_exact(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.rows, b.rows);
    let snf = smith_normal_form(a);
    let ub = snf.u.mul(b);
    let n = a.rows.min(a.cols);
    let mut y = IntMatrix::zero(a.cols, b.cols);
    for c in 0..b.cols {
        for i in 0..a.rows {
            let rhs = ub[(i, c)].clone();
            if i < n && !snf.d[(i, i)].is_zero() {
                let (q, r) = num_integer::Integer::div_rem(&rhs, &snf.d[(i, i)]);
                if !r.is_zero() {
                    return None;
                }
                y[(i, c)] = q;
            } else if !rhs.is_zero() {
                return None;
            }
        }
    }
    Some(snf.v.mul(&y))
}

/// A basis for the lattice spanned by the columns of `g` (full-rank columns).
pub fn lattice_basis(g: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(g);
    let r = snf.rank();
    // columns of U^{-1} D: we avoid inverting U by reducing G's columns
    // directly: the lattice is G * Z^cols; HNF-style column reduction of G
    // leaves basis columns in place.
    let mut m = g.clone();
    let mut v = IntMatrix::identity(g.cols);
    let mut pr = 0usize;
    let mut pc = 0usize;
    while pr < m.rows && pc < m.cols {
        loop {
            let mut best: Option<usize> = None;
            for j in pc..m.cols {
                if !m[(pr, j)].is_zero()
                    && best
                        .map(|b| m[(pr, j)].abs() < m[(pr, b)].abs())
                        .unwrap_or(true)
                {
                    best = Some(j);
                }
            }
            let bj = match best {
                None => break,
                Some(x) => x,
            };
            swap_cols_plain(&mut m, &mut v, pc, bj);
            let mut again = false;
            for j in pc + 1..m.cols {
                if !m[(pr, j)].is_zero() {
                    let q = rounded_div(&m[(pr, j)], &m[(pr, pc)]);
                    if !q.is_zero() {
                        col_axpy_full(&mut m, &mut v, j, pc, &q);
                    }
                    if !m[(pr, j)].is_zero() {
                        again = true;
                    }
                }
            }
            if !again {
                break;
            }
        }
        if !m[(pr, pc)].is_zero() {
            pc += 1;
        }
        pr += 1;
    }
    let rank = pc;
    debug_assert_eq!(rank, r, "rank mismatch between SNF and column reduction");
    let mut out = IntMatrix::zero(m.rows, rank);
    for j in 0..rank {
        for i in 0..m.rows {
            out[(i, j)] = m[(i, j)].clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        let a = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        assert_eq!(a.det(), BigInt::from(-8));
        assert_eq!(IntMatrix::identity(3).det(), BigInt::one());
        let z = IntMatrix::zero(2, 2);
        assert_eq!(z.det(), BigInt::zero());
    }

    #[test]
    fn snf_identity() {
        let a = IntMatrix::identity(2);
        let s = smith_normal_form(&a);
        assert_eq!(s.d, IntMatrix::identity(2));
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
    }

    #[test]
    fn snf_spec_example() {
        // [[2,4],[6,8]] has elementary divisors 2, 4
        let a = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.u.det().abs(), BigInt::one());
        assert_eq!(s.v.det().abs(), BigInt::one());
    }

    #[test]
    fn snf_zero() {
        let a = IntMatrix::zero(2, 3);
        let s = smith_normal_form(&a);
        assert!(s.d.is_zero());
    }

    #[test]
    fn kernel_of_singular() {
        let a = IntMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols, 2);
        // A * k = 0
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn solve_simple() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let b = IntMatrix::from_i64(&[&[4], &[9]]);
        let x = solve_exact(&a, &b).unwrap();
        assert_eq!(a.mul(&x), b);
        let b2 = IntMatrix::from_i64(&[&[1], &[1]]);
        assert!(solve_exact(&a, &b2).is_none());
    }

    #[test]
    fn divisibility_chain_holds() {
        let a = IntMatrix::from_i64(&[&[4, 0, 0], &[0, 6, 0], &[0, 0, 9]]);
        let s = smith_normal_form(&a);
        let d = s.diagonal();
        for i in 0..d.len() - 1 {
            if !d[i].is_zero() && !d[i + 1].is_zero() {
                assert!((&d[i + 1] % &d[i]).is_zero(), "chain broken: {:?}", d);
            }
        }
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
    }
}
