//! Dense univariate polynomials over `Z`, ascending coefficient order.

use crate::error::Error;
use crate::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A polynomial with arbitrary-precision integer coefficients.
///
/// Coefficient `i` multiplies `T^i`; the representation is canonical (no
/// stored trailing zeros), so `deg` is the index of the last coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// The monomial c*T^k.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial answers `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn neg(&self) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
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
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Exact division; panics if the division is not exact over Z.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self
            .pseudo_div_monicish(divisor)
            .expect("division by zero polynomial");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Division when the divisor is monic (or the division happens to be
    /// exact in each step); returns (quotient, remainder) over Z or `None`
    /// when a leading-coefficient division fails.
    fn pseudo_div_monicish(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return Some((Self::zero(), self.clone()));
        }
        let qlen = rem.len() - dd;
        let mut q = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (qc, qr) = num_integer::Integer::div_rem(&top, &lc);
            if !qr.is_zero() {
                return None;
            }
            q[k] = qc.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &qc * c;
            }
        }
        Some((IntPoly::new(q), IntPoly::new(rem)))
    }

    /// Quotient and remainder over Q, returned with a common denominator
    /// cleared: self * lc(divisor)^k = q * divisor + r for suitable k.
    fn pseudo_divrem(&self, divisor: &Self) -> (BigInt, Self, Self) {
        let dd = divisor.degree().expect("pseudo-division by zero");
        let lc = divisor.leading();
        let mut rem = self.clone();
        let mut q = Self::zero();
        let mut scale_total = BigInt::one();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading();
            let shift = rd - dd;
            // rem <- lc * rem - factor * T^shift * divisor
            rem = rem.scale(&lc).sub(&divisor.mul(&Self::monomial(factor.clone(), shift)));
            q = q.scale(&lc).add(&Self::monomial(factor, shift));
            scale_total *= &lc;
            debug_assert!(rem.degree().map(|d| d < rd).unwrap_or(true));
        }
        (scale_total, q, rem)
    }

    /// Content: gcd of the coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::Integer::gcd(&g, c);
        }
        g
    }

    /// Primitive part with the sign of the leading coefficient preserved.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Polynomial gcd over Q, returned as a primitive integer polynomial
    /// with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b.abs_lc();
        }
        while !b.is_zero() {
            let (_, _, r) = a.pseudo_divrem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.abs_lc()
    }

    fn abs_lc(&self) -> Self {
        if self.leading().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Squarefree part: self / gcd(self, self').
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.primitive_part().abs_lc();
        }
        self.primitive_part().div_exact(&g).abs_lc()
    }

    /// Resultant of `self` and `other` by the subresultant PRS.
    pub fn resultant(&self, other: &Self) -> BigInt {
        resultant(self, other)
    }

    /// `disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f)` for nonconstant `f`.
    pub fn discriminant(&self) -> Result<BigInt> {
        discriminant(self)
    }

    /// Substitute `T -> -T`.
    pub fn reflect(&self) -> Self {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "IntPoly({})", self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(fm, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(fm, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(fm, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(fm, "{}", a)?,
                1 if a.is_one() => write!(fm, "T")?,
                1 => write!(fm, "{}*T", a)?,
                _ if a.is_one() => write!(fm, "T^{}", i)?,
                _ => write!(fm, "{}*T^{}", a, i)?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Resultant as the determinant of the Sylvester matrix (fraction-free
/// Bareiss elimination keeps everything exact; degrees here are small).
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    use crate::arith::intmat::IntMatrix;
    let (df, dg) = match (f.degree(), g.degree()) {
        (Some(a), Some(b)) => (a, b),
        _ => return BigInt::zero(),
    };
    if df == 0 && dg == 0 {
        return BigInt::one();
    }
    if df == 0 {
        return f.leading().pow(dg as u32);
    }
    if dg == 0 {
        return g.leading().pow(df as u32);
    }
    let n = df + dg;
    let mut m = IntMatrix::zero(n, n);
    // dg rows of f's coefficients (descending), then df rows of g's
    for r in 0..dg {
        for (k, c) in f.coeffs.iter().rev().enumerate() {
            m[(r, r + k)] = c.clone();
        }
    }
    for r in 0..df {
        for (k, c) in g.coeffs.iter().rev().enumerate() {
            m[(dg + r, r + k)] = c.clone();
        }
    }
    m.det()
}

/// Discriminant of a nonconstant polynomial, exactly.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::DegenerateInput(
                "discriminant needs a nonconstant polynomial".into(),
            ))
        }
    };
    if d == 1 {
        return Ok(BigInt::one());
    }
    let r = resultant(f, &f.derivative());
    let lc = f.leading();
    let (q, rem) = num_integer::Integer::div_rem(&r, &lc);
    debug_assert!(rem.is_zero(), "Res(f, f') not divisible by lc(f)");
    let sign_exp = (d * (d - 1)) / 2;
    Ok(if sign_exp % 2 == 1 { -q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn mul_and_div_roundtrip() {
        let f = p(&[1, 2, 3]);
        let g = p(&[-4, 0, 0, 5]);
        let h = f.mul(&g);
        assert_eq!(h.div_exact(&f), g);
        assert_eq!(h.div_exact(&g), f);
    }

    #[test]
    fn discriminant_frobenius_g1() {
        // T^2 - 3T + 7 has discriminant -19
        let f = p(&[7, -3, 1]);
        assert_eq!(f.discriminant().unwrap(), BigInt::from(-19));
    }

    #[test]
    fn discriminant_repeated_root() {
        let f = p(&[0, 0, 1]); // T^2
        assert_eq!(f.discriminant().unwrap(), BigInt::from(0));
    }

    #[test]
    fn discriminant_constant_rejected() {
        assert!(p(&[3]).discriminant().is_err());
        assert!(IntPoly::zero().discriminant().is_err());
    }

    #[test]
    fn discriminant_g4_example_ord3() {
        let f = p(&[81, -162, 117, -30, 1, -10, 13, -6, 1]);
        let d = f.discriminant().unwrap();
        // 2^8 * 3^12 * 5^6
        assert_eq!(d, BigInt::from(2125764000000u64));
        assert_eq!(crate::arith::valuation(&d, &BigInt::from(3)), Some(12));
    }

    #[test]
    fn resultant_classic() {
        // Res(T^2+1, T-1) = f(1) = 2
        let f = p(&[1, 0, 1]);
        let g = p(&[-1, 1]);
        assert_eq!(resultant(&f, &g), BigInt::from(2));
        // swapped: sign flips by (-1)^{deg f * deg g}
        assert_eq!(resultant(&g, &f), BigInt::from(2));
    }

    #[test]
    fn disc_product_identity_spot() {
        // disc(fg) = disc(f) disc(g) Res(f,g)^2
        let f = p(&[1, 0, 1]);
        let g = p(&[-1, 1]);
        let fg = f.mul(&g);
        let lhs = fg.discriminant().unwrap();
        let rhs = f.discriminant().unwrap() * g.discriminant().unwrap() * resultant(&f, &g).pow(2);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, BigInt::from(-16));
    }

    #[test]
    fn gcd_and_squarefree() {
        let f = p(&[-1, 0, 1]); // (T-1)(T+1)
        let g = p(&[-1, 1]); // T-1
        assert_eq!(f.gcd(&g), g);
        let sq = f.mul(&g); // (T-1)^2 (T+1)
        assert_eq!(sq.squarefree_part(), f);
    }
}
