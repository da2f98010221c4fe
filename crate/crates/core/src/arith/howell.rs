//! Linear algebra over `Z/l^n`: Howell-style canonical echelon form and
//! solution of linear systems, returning a particular solution plus a
//! canonical generating set of the homogeneous solution module.

use crate::arith::{invmod, valuation};
use crate::error::Error;
use crate::Result;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// A matrix over `Z/m` (entries stored reduced into `[0, m)`).
#[derive(Clone, PartialEq, Eq)]
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub modulus: BigInt,
    entries: Vec<BigInt>,
}

impl ModMatrix {
    pub fn zero(rows: usize, cols: usize, modulus: BigInt) -> Self {
        ModMatrix {
            rows,
            cols,
            modulus,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, modulus: BigInt) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c));
        let entries = rows
            .into_iter()
            .flatten()
            .map(|e| e.mod_floor(&modulus))
            .collect();
        ModMatrix {
            rows: r,
            cols: c,
            modulus,
            entries,
        }
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v.mod_floor(&self.modulus);
    }

    fn scale_row(&mut self, i: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = (self.get(i, j) * c).mod_floor(&self.modulus);
            self.set(i, j, v);
        }
    }

    fn row_sub_mul(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = (self.get(dst, j) - c * self.get(src, j)).mod_floor(&self.modulus);
            self.set(dst, j, v);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries
                .swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(|x| x.is_zero())
    }
}

impl std::fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ModMatrix {}x{} mod {} [", self.rows, self.cols, self.modulus)?;
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

/// Howell form over `Z/l^n` of the row module spanned by the input rows.
///
/// Every element of the row span with first nonzero coordinate at column j
/// is a combination of the returned rows with pivots at columns <= j; the
/// form is the canonical representation of the module.
pub fn howell_form(m: &ModMatrix, l: &BigInt, n: u32) -> ModMatrix {
    let modulus = l.pow(n);
    assert_eq!(m.modulus, modulus);
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| m.row(i).to_vec())
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();

    // Repeat echelonization until the Howell property closes (new shadow
    // rows l^{n-k} * pivot-row may expose lower pivots).
    loop {
        let mut work = ModMatrix::from_rows(rows.clone(), modulus.clone());
        echelonize(&mut work, l, n);
        let mut out: Vec<Vec<BigInt>> = (0..work.rows)
            .filter(|&i| !work.is_zero_row(i))
            .map(|i| work.row(i).to_vec())
            .collect();
        // shadow rows: for pivot l^k with k > 0, l^{n-k} * row is in the
        // module and may have a later pivot not yet represented
        let mut extra: Vec<Vec<BigInt>> = Vec::new();
        for r in &out {
            let j = r.iter().position(|x| !x.is_zero()).unwrap();
            let k = valuation(&r[j], l).unwrap();
            if k > 0 {
                let mult = l.pow(n - k);
                let shadow: Vec<BigInt> =
                    r.iter().map(|x| (x * &mult).mod_floor(&modulus)).collect();
                if shadow.iter().any(|x| !x.is_zero()) {
                    extra.push(shadow);
                }
            }
        }
        if extra.is_empty() {
            return ModMatrix::from_rows(out, modulus);
        }
        // check whether the shadows are already reduced to zero by out
        let before = out.len();
        out.extend(extra);
        let mut recheck = ModMatrix::from_rows(out.clone(), modulus.clone());
        echelonize(&mut recheck, l, n);
        let after: Vec<Vec<BigInt>> = (0..recheck.rows)
            .filter(|&i| !recheck.is_zero_row(i))
            .map(|i| recheck.row(i).to_vec())
            .collect();
        if after.len() == before
            && after
                .iter()
                .zip(out.iter().take(before))
                .all(|(a, b)| a == b)
        {
            return ModMatrix::from_rows(after, modulus);
        }
        rows = after;
    }
}

/// Row echelon over Z/l^n: pivots are powers of l (unit-normalized), entries
/// below a pivot are zero, entries above are reduced mod the pivot.
fn echelonize(m: &mut ModMatrix, l: &BigInt, n: u32) {
    let modulus = m.modulus.clone();
    let mut pivot_row = 0usize;
    for col in 0..m.cols {
        // find the row with minimal valuation in this column at/below pivot_row
        let mut best: Option<(usize, u32)> = None;
        for i in pivot_row..m.rows {
            if let Some(v) = valuation(m.get(i, col), l) {
                let v = v.min(n);
                if best.map(|(_, bv)| v < bv).unwrap_or(true) {
                    best = Some((i, v));
                }
            }
        }
        let (bi, bv) = match best {
            None => continue,
            Some(x) => x,
        };
        m.swap_rows(pivot_row, bi);
        // normalize pivot to l^bv
        let unit = m.get(pivot_row, col) / l.pow(bv);
        let uinv = invmod(&unit, &modulus).expect("unit part invertible");
        m.scale_row(pivot_row, &uinv);
        // eliminate below (valuations >= bv so quotients exist)
        for i in pivot_row + 1..m.rows {
            if !m.get(i, col).is_zero() {
                let q = m.get(i, col) / l.pow(bv);
                m.row_sub_mul(i, pivot_row, &q);
                debug_assert!(m.get(i, col).is_zero());
            }
        }
        // reduce above mod the pivot value l^bv... entries above may have
        // smaller valuation; reduce their representative mod l^{n} quotient
        let pivot_val = l.pow(bv);
        for i in 0..pivot_row {
            let q = m.get(i, col) / &pivot_val;
            if !q.is_zero() {
                m.row_sub_mul(i, pivot_row, &q);
            }
        }
        pivot_row += 1;
        if pivot_row == m.rows {
            break;
        }
    }
    // drop zero rows to the bottom, keep order of nonzero rows
    let mut nz: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..m.rows {
        if !m.is_zero_row(i) {
            nz.push(m.row(i).to_vec());
        }
    }
    let cols = m.cols;
    let rows = m.rows;
    let mut entries = Vec::with_capacity(rows * cols);
    for r in &nz {
        entries.extend_from_slice(r);
    }
    entries.resize(rows * cols, BigInt::zero());
    m.entries = entries.into_iter().map(|e| e.mod_floor(&modulus)).collect();
}

/// Description of the solution set of `A x = b` over `Z/l^n`: a particular
/// solution plus a canonical generating set of the homogeneous module.
#[derive(Clone, Debug)]
pub struct ModSolution {
    pub particular: Vec<BigInt>,
    /// Howell-canonical generators of `{x : A x = 0}`, as rows.
    pub homogeneous: Vec<Vec<BigInt>>,
    pub modulus: BigInt,
}

impl ModSolution {
    /// Size of the solution module: the number of distinct homogeneous
    /// solutions (product over Howell rows of l^n / annihilator).
    pub fn homogeneous_count(&self, l: &BigInt, n: u32) -> BigInt {
        let mut count = BigInt::one();
        for row in &self.homogeneous {
            let j = row.iter().position(|x| !x.is_zero()).expect("zero generator");
            let k = valuation(&row[j], l).unwrap().min(n);
            count *= l.pow(n - k);
        }
        count
    }
}

/// Solve `A x = b` over `Z/l^n` where `A` has `cols` unknowns.
///
/// The homogeneous module is computed by lifting to `Z`: solutions of
/// `A x = b (mod l^n)` are projections of integer solutions of
/// `[A | l^n I] (x, y) = b`.
pub fn solve_linear_mod(
    a: &crate::arith::IntMatrix,
    b: &[BigInt],
    l: &BigInt,
    n: u32,
) -> Result<ModSolution> {
    use crate::arith::intmat::{kernel_basis, solve_exact, IntMatrix};
    assert_eq!(a.rows, b.len(), "rhs length mismatch");
    let modulus = l.pow(n);
    // augmented integer matrix [A | l^n I]
    let mut aug = IntMatrix::zero(a.rows, a.cols + a.rows);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols + i)] = modulus.clone();
    }
    // particular solution over Z
    let bmat = {
        let mut m = IntMatrix::zero(b.len(), 1);
        for (i, v) in b.iter().enumerate() {
            m[(i, 0)] = v.clone();
        }
        m
    };
    let part = match solve_exact(&aug, &bmat) {
        None => return Err(Error::NoSolution),
        Some(p) => p,
    };
    let particular: Vec<BigInt> = (0..a.cols)
        .map(|j| part[(j, 0)].mod_floor(&modulus))
        .collect();
    // homogeneous generators: x-projections of the integer kernel
    let ker = kernel_basis(&aug);
    let gens: Vec<Vec<BigInt>> = (0..ker.cols)
        .map(|c| {
            (0..a.cols)
                .map(|j| ker[(j, c)].mod_floor(&modulus))
                .collect::<Vec<_>>()
        })
        .filter(|g: &Vec<BigInt>| g.iter().any(|x| !x.is_zero()))
        .collect();
    let canonical = if gens.is_empty() {
        Vec::new()
    } else {
        let hm = howell_form(
            &ModMatrix::from_rows(gens, modulus.clone()),
            l,
            n,
        );
        (0..hm.rows)
            .filter(|&i| !hm.is_zero_row(i))
            .map(|i| hm.row(i).to_vec())
            .collect()
    };
    Ok(ModSolution {
        particular,
        homogeneous: canonical,
        modulus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::IntMatrix;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn identity_system_unique() {
        let a = IntMatrix::identity(3);
        let b = vec![big(2), big(3), big(4)];
        let s = solve_linear_mod(&a, &b, &big(5), 2).unwrap();
        assert_eq!(s.particular, vec![big(2), big(3), big(4)]);
        assert!(s.homogeneous.is_empty());
    }

    #[test]
    fn multiplication_by_l_kernel() {
        // [l] x = 0 mod l^2: solutions {0, l, 2l, ...}
        let a = IntMatrix::from_i64(&[&[5]]);
        let b = vec![big(0)];
        let s = solve_linear_mod(&a, &b, &big(5), 2).unwrap();
        assert_eq!(s.particular, vec![big(0)]);
        assert_eq!(s.homogeneous.len(), 1);
        assert_eq!(s.homogeneous[0], vec![big(5)]);
        assert_eq!(s.homogeneous_count(&big(5), 2), big(5));
    }

    #[test]
    fn no_solution_detected() {
        // 5x = 1 mod 25 has no solution
        let a = IntMatrix::from_i64(&[&[5]]);
        let b = vec![big(1)];
        assert!(matches!(
            solve_linear_mod(&a, &b, &big(5), 2),
            Err(Error::NoSolution)
        ));
    }

    #[test]
    fn centralizer_of_diagonal_is_rank_two() {
        // transporter A*diag(1,2) = diag(1,2)*A over Z/5: A diagonal
        // unknowns (a,b,c,d) row-major; equations: b*2=b*1 -> b=0 etc.
        // Build the 4x4 system M x = 0 for X*g - g*X = 0, g = diag(1,2).
        let m = IntMatrix::from_i64(&[
            &[0, 0, 0, 0],  // (1,1): a*1 - 1*a
            &[0, 1, 0, 0],  // (1,2): 2b - b = b
            &[0, 0, -1, 0], // (2,1): c - 2c = -c
            &[0, 0, 0, 0],  // (2,2)
        ]);
        let b = vec![big(0); 4];
        let s = solve_linear_mod(&m, &b, &big(5), 1).unwrap();
        // solution module: free choice of a and d => 25 elements
        assert_eq!(s.homogeneous_count(&big(5), 1), big(25));
        assert_eq!(s.homogeneous.len(), 2);
        // exhaustive verification over (Z/5)^4
        let mut count = 0u32;
        for a_ in 0..5i64 {
            for b_ in 0..5i64 {
                for c_ in 0..5i64 {
                    for d_ in 0..5i64 {
                        if (b_ % 5 == 0) && (c_ % 5 == 0) {
                            let _ = (a_, d_);
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(count, 25);
    }

    #[test]
    fn substitution_check_on_generators() {
        // random-ish small system mod 3^2
        let a = IntMatrix::from_i64(&[&[3, 6], &[0, 3]]);
        let b = vec![big(0), big(0)];
        let s = solve_linear_mod(&a, &b, &big(3), 2).unwrap();
        for g in &s.homogeneous {
            let ax = a.mul_vec(g);
            for v in ax {
                assert!(v.mod_floor(&big(9)).is_zero());
            }
        }
        // completeness by exhaustion over (Z/9)^2
        let mut solutions = std::collections::HashSet::new();
        for x in 0..9i64 {
            for y in 0..9i64 {
                if (3 * x + 6 * y) % 9 == 0 && (3 * y) % 9 == 0 {
                    solutions.insert((x, y));
                }
            }
        }
        assert_eq!(
            BigInt::from(solutions.len() as i64),
            s.homogeneous_count(&big(3), 2)
        );
    }

    #[test]
    fn howell_canonical_idempotent() {
        let m = ModMatrix::from_rows(
            vec![
                vec![big(2), big(4), big(6)],
                vec![big(4), big(8), big(12)],
                vec![big(0), big(8), big(0)],
            ],
            big(16),
        );
        let h1 = howell_form(&m, &big(2), 4);
        let h2 = howell_form(&h1, &big(2), 4);
        assert_eq!(h1, h2);
    }
}
