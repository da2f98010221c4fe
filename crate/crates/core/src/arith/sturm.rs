//! Sturm sequences and exact real-root counting at rational endpoints.

use crate::arith::IntPoly;
use crate::error::Error;
use crate::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// The Sturm chain of `f`: f, f', then negated remainders. Stored as
/// primitive integer polynomials (content does not affect signs up to the
/// positive factor we divide by).
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(f: &IntPoly) -> Result<Self> {
        if f.degree().unwrap_or(0) == 0 {
            return Err(Error::DegenerateInput(
                "Sturm chain needs a nonconstant polynomial".into(),
            ));
        }
        let mut chain = vec![f.primitive_part(), f.derivative().primitive_part()];
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            if b.is_zero() {
                chain.pop();
                break;
            }
            let r = pseudo_rem_signed(a, b);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg().primitive_part());
        }
        Ok(SturmChain { chain })
    }

    /// Sign variations at a rational point, skipping zeros.
    fn variations_at(&self, x: &BigRational) -> usize {
        let signs: Vec<i8> = self
            .chain
            .iter()
            .map(|p| {
                let v = p.eval_rational(x);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            })
            .filter(|&s| s != 0)
            .collect();
        count_changes(&signs)
    }

    /// Sign variations at -infinity / +infinity from leading terms.
    fn variations_at_infinity(&self, positive: bool) -> usize {
        let signs: Vec<i8> = self
            .chain
            .iter()
            .map(|p| {
                let lc = p.leading();
                let d = p.degree().unwrap_or(0);
                let mut s: i8 = if lc.is_positive() {
                    1
                } else if lc.is_negative() {
                    -1
                } else {
                    0
                };
                if !positive && d % 2 == 1 {
                    s = -s;
                }
                s
            })
            .filter(|&s| s != 0)
            .collect();
        count_changes(&signs)
    }

    /// Number of distinct real roots in `(a, b]` (rational endpoints).
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        assert!(a <= b, "interval endpoints out of order");
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Number of distinct real roots on the whole line.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false)
            .saturating_sub(self.variations_at_infinity(true))
    }

    /// Roots in `(a, +infinity)`.
    pub fn count_above(&self, a: &BigRational) -> usize {
        self.variations_at(a)
            .saturating_sub(self.variations_at_infinity(true))
    }
}

fn count_changes(signs: &[i8]) -> usize {
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Remainder of a by b over Z, equal to the rational remainder times a
/// *positive* constant, so sign evaluations match the true Sturm chain.
fn pseudo_rem_signed(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let da = match a.degree() {
        Some(d) => d,
        None => return IntPoly::zero(),
    };
    let db = b.degree().expect("pseudo_rem by zero");
    if da < db {
        return a.clone();
    }
    let lcb = b.leading();
    let mut rem = a.clone();
    let mut muls = 0usize;
    while let Some(dr) = rem.degree() {
        if dr < db {
            break;
        }
        let lead = rem.leading();
        rem = rem.scale(&lcb).sub(&b.mul(&IntPoly::monomial(lead, dr - db)));
        muls += 1;
    }
    // rem = lcb^muls * (a mod b over Q); force an even power when negative
    if lcb.is_negative() && muls % 2 == 1 {
        rem = rem.scale(&lcb);
    }
    rem
}

/// Exact count of distinct real roots of a squarefree `f` in `(a, b]`.
pub fn sturm_real_root_count(f: &IntPoly, a: &BigRational, b: &BigRational) -> Result<usize> {
    let chain = SturmChain::new(f)?;
    Ok(chain.count_in(a, b))
}

/// True iff the squarefree `f` has all of its complex roots real and inside
/// the closed interval `[-sqrt(bound_sq), +sqrt(bound_sq)]`; everything is
/// decided by integer arithmetic against the squared bound.
pub fn all_roots_real_in_symmetric_interval(f: &IntPoly, bound_sq: &BigInt) -> Result<bool> {
    let s = f.squarefree_part();
    let d = match s.degree() {
        Some(d) if d >= 1 => d,
        _ => return Ok(true),
    };
    let chain = SturmChain::new(&s)?;
    if chain.count_all() != d {
        return Ok(false);
    }
    // No root with x^2 > bound_sq: substitute y = x^2 - bound_sq. With
    // s(x) = E(x^2) + x O(x^2), the polynomial r(y) = E^2 - (y + c) O^2
    // vanishes at y = x^2 - c for every root x of s; a root strictly outside
    // the closed interval exists iff r has a root with y > 0.
    let (e, o) = even_odd_parts(&s);
    let e2 = compose_linear(&e, bound_sq);
    let o2 = compose_linear(&o, bound_sq);
    let yc = IntPoly::new(vec![bound_sq.clone(), BigInt::from(1)]);
    let r = e2.mul(&e2).sub(&yc.mul(&o2).mul(&o2));
    let rs = r.squarefree_part();
    if rs.degree().unwrap_or(0) == 0 {
        return Ok(true);
    }
    let chain_r = SturmChain::new(&rs)?;
    Ok(chain_r.count_above(&BigRational::zero()) == 0)
}

/// Split f into even and odd parts: f(x) = E(x^2) + x * O(x^2).
fn even_odd_parts(f: &IntPoly) -> (IntPoly, IntPoly) {
    let mut e = Vec::new();
    let mut o = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if i % 2 == 0 {
            e.push(c.clone());
        } else {
            o.push(c.clone());
        }
    }
    (IntPoly::new(e), IntPoly::new(o))
}

/// g(y) = f(y + shift)
fn compose_linear(f: &IntPoly, shift: &BigInt) -> IntPoly {
    let lin = IntPoly::new(vec![shift.clone(), BigInt::from(1)]);
    let mut acc = IntPoly::zero();
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(&lin).add(&IntPoly::monomial(c.clone(), 0));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn linear_root_in_interval() {
        let f = IntPoly::from_i64(&[-3, 1]); // T - 3
        assert_eq!(sturm_real_root_count(&f, &q(-6), &q(6)).unwrap(), 1);
        assert_eq!(sturm_real_root_count(&f, &q(3), &q(6)).unwrap(), 0); // (3, 6]
        assert_eq!(sturm_real_root_count(&f, &q(2), &q(3)).unwrap(), 1); // (2, 3]
    }

    #[test]
    fn no_real_roots() {
        let f = IntPoly::from_i64(&[1, 0, 1]); // T^2 + 1
        assert_eq!(sturm_real_root_count(&f, &q(-10), &q(10)).unwrap(), 0);
        let chain = SturmChain::new(&f).unwrap();
        assert_eq!(chain.count_all(), 0);
    }

    #[test]
    fn quadratic_roots() {
        let f = IntPoly::from_i64(&[2, -3, 1]); // (T-1)(T-2)
        assert_eq!(sturm_real_root_count(&f, &q(0), &q(10)).unwrap(), 2);
        assert_eq!(sturm_real_root_count(&f, &q(1), &q(10)).unwrap(), 1);
    }

    #[test]
    fn g4_real_weil_has_four_roots_in_range() {
        // f+ for the degree-8 example over F_3: all roots in [-2 sqrt 3, 2 sqrt 3]
        let fplus = IntPoly::from_i64(&[-59, 44, 1, -6, 1]);
        let chain = SturmChain::new(&fplus).unwrap();
        assert_eq!(chain.count_all(), 4);
        assert!(all_roots_real_in_symmetric_interval(&fplus, &BigInt::from(12)).unwrap());
        // and with a smaller bound it fails (root near 3.46 > sqrt(11.9))
        assert!(!all_roots_real_in_symmetric_interval(&fplus, &BigInt::from(11)).unwrap());
    }

    #[test]
    fn out_of_range_detected() {
        // T - 6 with bound 4q = 28: 36 > 28, root outside
        let f = IntPoly::from_i64(&[-6, 1]);
        assert!(!all_roots_real_in_symmetric_interval(&f, &BigInt::from(28)).unwrap());
        // T - 3: 9 < 28 fine
        let g = IntPoly::from_i64(&[-3, 1]);
        assert!(all_roots_real_in_symmetric_interval(&g, &BigInt::from(28)).unwrap());
    }

    #[test]
    fn boundary_root_allowed() {
        // T^2 - 4 with squared bound 4: roots exactly at the closed boundary
        let f = IntPoly::from_i64(&[-4, 0, 1]);
        assert!(all_roots_real_in_symmetric_interval(&f, &BigInt::from(4)).unwrap());
    }
}
