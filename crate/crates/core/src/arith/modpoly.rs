//! Dense univariate polynomials over `Z/m`, with complete factorization
//! over prime fields: squarefree decomposition, then distinct-degree, then
//! deterministic equal-degree splitting.

use crate::arith::{invmod, is_prime};
use crate::error::Error;
use crate::Result;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

/// Polynomial over `Z/m`; every stored coefficient lies in `[0, m)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    coeffs: Vec<BigInt>,
    modulus: BigInt,
}

impl ModPoly {
    pub fn new(coeffs: Vec<BigInt>, modulus: BigInt) -> Self {
        assert!(modulus > BigInt::one(), "modulus must exceed 1");
        let mut c: Vec<BigInt> = coeffs.iter().map(|x| x.mod_floor(&modulus)).collect();
        while c.last().map(|x| x.is_zero()).unwrap_or(false) {
            c.pop();
        }
        ModPoly { coeffs: c, modulus }
    }

    pub fn from_intpoly(f: &super::IntPoly, modulus: &BigInt) -> Self {
        Self::new(f.coeffs().to_vec(), modulus.clone())
    }

    pub fn from_i64(coeffs: &[i64], modulus: i64) -> Self {
        Self::new(
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            BigInt::from(modulus),
        )
    }

    pub fn zero(modulus: BigInt) -> Self {
        ModPoly {
            coeffs: Vec::new(),
            modulus,
        }
    }

    pub fn one(modulus: BigInt) -> Self {
        ModPoly {
            coeffs: vec![BigInt::one()],
            modulus,
        }
    }

    pub fn x(modulus: BigInt) -> Self {
        ModPoly {
            coeffs: vec![BigInt::zero(), BigInt::one()],
            modulus,
        }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    fn same_mod(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_mod(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect(),
            self.modulus.clone(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_mod(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect(),
            self.modulus.clone(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_mod(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.modulus.clone());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out, self.modulus.clone())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(
            self.coeffs.iter().map(|a| a * c).collect(),
            self.modulus.clone(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * x + c).mod_floor(&self.modulus);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero(self.modulus.clone());
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
            self.modulus.clone(),
        )
    }

    /// Make monic; requires the leading coefficient to be invertible.
    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let lc = self.leading();
        if lc.is_one() {
            return Ok(self.clone());
        }
        let inv = invmod(&lc, &self.modulus)
            .ok_or_else(|| Error::DegenerateInput("leading coefficient not a unit".into()))?;
        Ok(self.scale(&inv))
    }

    /// Division with remainder by a polynomial with unit leading coefficient.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.same_mod(divisor);
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::DegenerateInput("division by zero polynomial".into()))?;
        let lcinv = invmod(&divisor.leading(), &self.modulus)
            .ok_or_else(|| Error::DegenerateInput("divisor leading coeff not a unit".into()))?;
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return Ok((Self::zero(self.modulus.clone()), self.clone()));
        }
        let qlen = rem.len() - dd;
        let mut q = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = rem[k + dd].mod_floor(&self.modulus);
            if top.is_zero() {
                continue;
            }
            let qc = (&top * &lcinv).mod_floor(&self.modulus);
            q[k] = qc.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = (&rem[k + j] - &qc * c).mod_floor(&self.modulus);
            }
        }
        Ok((
            Self::new(q, self.modulus.clone()),
            Self::new(rem, self.modulus.clone()),
        ))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Monic gcd over a prime field.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.same_mod(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod modpoly` by square and multiply.
    pub fn powmod(&self, e: &BigInt, modpoly: &Self) -> Result<Self> {
        let mut base = self.rem(modpoly)?;
        let mut acc = Self::one(self.modulus.clone());
        let mut k = e.clone();
        while k > BigInt::zero() {
            if k.is_odd() {
                acc = acc.mul(&base).rem(modpoly)?;
            }
            base = base.mul(&base).rem(modpoly)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Multiset of degrees of irreducible factors over `F_l` (with
    /// multiplicity), cheaper than a full factorization: distinct-degree
    /// decomposition applied to each squarefree layer.
    pub fn factor_degrees(&self) -> Result<Vec<usize>> {
        let layers = self.squarefree_decomposition()?;
        let mut out = Vec::new();
        for (mult, part) in layers {
            for (d, prod) in distinct_degree(&part)? {
                let count = prod.degree().unwrap_or(0) / d;
                for _ in 0..count {
                    for _ in 0..mult {
                        out.push(d);
                    }
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Full factorization over a prime field: monic irreducible factors with
    /// multiplicities, deterministically ordered (degree, then coefficient
    /// lexicographic order).
    pub fn factor(&self) -> Result<Vec<(ModPoly, usize)>> {
        if !is_prime(&self.modulus) {
            return Err(Error::CompositeModulus(self.modulus.clone()));
        }
        if self.is_zero() {
            return Err(Error::DegenerateInput("factoring the zero polynomial".into()));
        }
        let mut factors: Vec<(ModPoly, usize)> = Vec::new();
        for (mult, part) in self.squarefree_decomposition()? {
            for (d, prod) in distinct_degree(&part)? {
                for irr in equal_degree_split(&prod, d)? {
                    factors.push((irr, mult));
                }
            }
        }
        factors.sort_by(|(a, _), (b, _)| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| compare_coeff_lex(a, b))
        });
        Ok(factors)
    }

    /// Squarefree decomposition over `F_p`: list of (multiplicity, factor
    /// product) with each product squarefree; handles `f' = 0` via p-th
    /// roots. The leading unit is dropped (all parts monic).
    pub fn squarefree_decomposition(&self) -> Result<Vec<(usize, ModPoly)>> {
        if !is_prime(&self.modulus) {
            return Err(Error::CompositeModulus(self.modulus.clone()));
        }
        let f = self.monic()?;
        let mut out = Vec::new();
        self.squarefree_rec(&f, 1, &mut out)?;
        out.sort_by_key(|(m, _)| *m);
        Ok(out)
    }

    fn squarefree_rec(
        &self,
        f: &ModPoly,
        scale: usize,
        out: &mut Vec<(usize, ModPoly)>,
    ) -> Result<()> {
        if f.degree().unwrap_or(0) == 0 {
            return Ok(());
        }
        let p_usize: usize = self
            .modulus
            .to_string()
            .parse()
            .map_err(|_| Error::DegenerateInput("modulus too large for squarefree".into()))?;
        let deriv = f.derivative();
        if deriv.is_zero() {
            // f = g(T^p); over the prime field g's coefficients are fixed by
            // Frobenius, so the p-th root is a coefficient restride.
            let root = f.pth_root()?;
            return self.squarefree_rec(&root, scale * p_usize, out);
        }
        // Write f = prod a_i^i. The loop peels the parts with p not dividing
        // i; what remains of c afterwards is a p-th power handled recursively.
        let mut c = f.gcd(&deriv)?;
        let mut w = f.divrem(&c)?.0;
        let mut i = 1usize;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c)?;
            let fac = w.divrem(&y)?.0;
            if fac.degree().unwrap_or(0) > 0 {
                out.push((i * scale, fac.monic()?));
            }
            w = y.clone();
            c = c.divrem(&y)?.0;
            i += 1;
        }
        if c.degree().unwrap_or(0) > 0 {
            let root = c.pth_root()?;
            self.squarefree_rec(&root, scale * p_usize, out)?;
        }
        Ok(())
    }

    /// p-th root of a polynomial of the form g(T^p) over `F_p^1`.
    fn pth_root(&self) -> Result<ModPoly> {
        let p: usize = self
            .modulus
            .to_string()
            .parse()
            .map_err(|_| Error::DegenerateInput("modulus too large".into()))?;
        let deg = self.degree().unwrap_or(0);
        let mut coeffs = Vec::with_capacity(deg / p + 1);
        for i in (0..=deg).step_by(p) {
            // over the prime field a^(1/p) = a
            coeffs.push(self.coeff(i));
        }
        for i in 0..=deg {
            if i % p != 0 && !self.coeff(i).is_zero() {
                return Err(Error::Internal("pth_root of a non-p-power".into()));
            }
        }
        Ok(ModPoly::new(coeffs, self.modulus.clone()))
    }
}

fn compare_coeff_lex(a: &ModPoly, b: &ModPoly) -> std::cmp::Ordering {
    let n = a.coeffs().len().max(b.coeffs().len());
    for i in (0..n).rev() {
        match a.coeff(i).cmp(&b.coeff(i)) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

/// Distinct-degree decomposition of a squarefree monic polynomial:
/// returns (d, product of all irreducible factors of degree d).
fn distinct_degree(f: &ModPoly) -> Result<Vec<(usize, ModPoly)>> {
    let l = f.modulus().clone();
    let mut out = Vec::new();
    let mut rest = f.monic()?;
    let mut xq = ModPoly::x(l.clone()).powmod(&l, &rest)?;
    let mut d = 1usize;
    while rest.degree().unwrap_or(0) >= 2 * d {
        let g = xq.sub(&ModPoly::x(l.clone())).gcd(&rest)?;
        if g.degree().unwrap_or(0) > 0 {
            out.push((d, g.clone()));
            rest = rest.divrem(&g)?.0;
        }
        if rest.degree().unwrap_or(0) == 0 {
            break;
        }
        d += 1;
        xq = xq.powmod(&l, &rest)?;
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push((rest.degree().unwrap(), rest));
    }
    Ok(out)
}

/// Cantor-Zassenhaus equal-degree splitting, seeded deterministically from
/// the modulus and coefficients so repeated runs are bit-identical.
fn equal_degree_split(f: &ModPoly, d: usize) -> Result<Vec<ModPoly>> {
    let deg = f.degree().unwrap_or(0);
    if deg == d {
        return Ok(vec![f.monic()?]);
    }
    let l = f.modulus().clone();
    let mut hasher = DefaultHasher::new();
    l.hash(&mut hasher);
    for c in f.coeffs() {
        c.hash(&mut hasher);
    }
    d.hash(&mut hasher);
    let mut rng = ChaCha8Rng::seed_from_u64(hasher.finish());

    let mut stack = vec![f.monic()?];
    let mut done = Vec::new();
    let two = BigInt::from(2);
    while let Some(h) = stack.pop() {
        let hd = h.degree().unwrap_or(0);
        if hd == d {
            done.push(h);
            continue;
        }
        // try random splitters until the factor splits
        let split = loop {
            let r = random_poly(&mut rng, &l, 2 * d);
            let g = if l == two {
                // trace map T + T^2 + T^4 + ... over F_2
                let mut acc = r.rem(&h)?;
                let mut term = r.rem(&h)?;
                for _ in 1..d {
                    term = term.mul(&term).rem(&h)?;
                    acc = acc.add(&term);
                }
                acc.gcd(&h)?
            } else {
                // r^((l^d - 1)/2) - 1
                let e = (l.pow(d as u32) - BigInt::one()) / &two;
                let s = r.powmod(&e, &h)?;
                s.sub(&ModPoly::one(l.clone())).gcd(&h)?
            };
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < hd {
                break g;
            }
        };
        let other = h.divrem(&split)?.0;
        stack.push(split);
        stack.push(other);
    }
    Ok(done)
}

fn random_poly(rng: &mut ChaCha8Rng, modulus: &BigInt, below_degree: usize) -> ModPoly {
    let bound: u64 = modulus.to_string().parse().unwrap_or(u64::MAX);
    let coeffs = (0..below_degree)
        .map(|_| BigInt::from(rng.gen_range(0..bound)))
        .collect();
    ModPoly::new(coeffs, modulus.clone())
}

impl std::fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ModPoly([{}] mod {})",
            self.coeffs
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(", "),
            self.modulus
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_split_example() {
        // T^2 - 3T + 7 mod 5 = (T-1)(T-2)
        let f = ModPoly::from_i64(&[7, -3, 1], 5);
        let fs = f.factor().unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].0, ModPoly::from_i64(&[-1, 1], 5));
        assert_eq!(fs[1].0, ModPoly::from_i64(&[-2, 1], 5));
        assert!(fs.iter().all(|&(_, m)| m == 1));
    }

    #[test]
    fn factor_inert_example() {
        // T^2 - 3T + 7 mod 3 is irreducible
        let f = ModPoly::from_i64(&[7, -3, 1], 3);
        let fs = f.factor().unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].0.degree(), Some(2));
        assert_eq!(fs[0].1, 1);
    }

    #[test]
    fn factor_linear_trivial() {
        let f = ModPoly::from_i64(&[-1, 1], 7);
        let fs = f.factor().unwrap();
        assert_eq!(fs, vec![(ModPoly::from_i64(&[-1, 1], 7), 1)]);
    }

    #[test]
    fn composite_modulus_rejected() {
        let f = ModPoly::from_i64(&[1, 1], 6);
        assert!(matches!(f.factor(), Err(Error::CompositeModulus(_))));
    }

    #[test]
    fn factor_with_multiplicity() {
        // (T-1)^2 (T+1) mod 5
        let a = ModPoly::from_i64(&[-1, 1], 5);
        let b = ModPoly::from_i64(&[1, 1], 5);
        let f = a.mul(&a).mul(&b);
        let fs = f.factor().unwrap();
        assert_eq!(fs.len(), 2);
        let product_deg: usize = fs.iter().map(|(g, m)| g.degree().unwrap() * m).sum();
        assert_eq!(product_deg, 3);
        assert!(fs.contains(&(a, 2)));
        assert!(fs.contains(&(b, 1)));
    }

    #[test]
    fn factor_pth_power() {
        // (T^2+1)^3 mod 3: derivative of T^6 + ... exercises the p-th root path
        let a = ModPoly::from_i64(&[1, 0, 1], 3);
        let f = a.mul(&a).mul(&a);
        let fs = f.factor().unwrap();
        // T^2+1 = (T-... actually mod 3: T^2+1 irreducible? 0->1,1->2,2->2: yes
        assert_eq!(fs, vec![(a, 3)]);
    }

    #[test]
    fn factor_mod_2_split() {
        // T^2 + T = T(T+1) mod 2
        let f = ModPoly::from_i64(&[0, 1, 1], 2);
        let fs = f.factor().unwrap();
        assert_eq!(fs.len(), 2);
        // and the inert quadratic
        let g = ModPoly::from_i64(&[1, 1, 1], 2);
        assert_eq!(g.factor().unwrap().len(), 1);
    }

    #[test]
    fn degrees_match_factor() {
        let f = ModPoly::from_i64(&[81, -162, 117, -30, 1, -10, 13, -6, 1], 7);
        let degs = f.factor_degrees().unwrap();
        let full: Vec<usize> = {
            let mut v = Vec::new();
            for (g, m) in f.factor().unwrap() {
                for _ in 0..m {
                    v.push(g.degree().unwrap());
                }
            }
            v.sort_unstable();
            v
        };
        assert_eq!(degs, full);
        assert_eq!(degs.iter().sum::<usize>(), 8);
    }

    #[test]
    fn g4_slope_zero_part_irreducible_mod_3() {
        // h = T^4 - 6T^3 + 13T^2 - 10T + 1 mod 3 = T^4 + T^2 + 2T + 1
        let h = ModPoly::from_i64(&[1, -10, 13, -6, 1], 3);
        let fs = h.factor().unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].0.degree(), Some(4));
    }

    #[test]
    fn deterministic_factorization() {
        let f = ModPoly::from_i64(&[3, 1, 4, 1, 5, 9, 2, 6, 1], 13);
        let a = f.factor().unwrap();
        let b = f.factor().unwrap();
        assert_eq!(a, b);
    }
}
