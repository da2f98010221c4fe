//! Exact arithmetic foundation: integers, univariate polynomials over `Z`
//! and `Z/m`, integer matrices with Smith normal form, Howell-style linear
//! algebra over `Z/l^n`, and Sturm sequences.

pub mod howell;
pub mod intmat;
pub mod intpoly;
pub mod modpoly;
pub mod sturm;

pub use howell::{solve_linear_mod, ModMatrix, ModSolution};
pub use intmat::{smith_normal_form, IntMatrix, SmithDecomposition};
pub use intpoly::IntPoly;
pub use modpoly::ModPoly;
pub use sturm::sturm_real_root_count;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Deterministic Miller-Rabin. Exact for inputs below 3.3 * 10^24, which
/// covers every modulus this crate enumerates; larger inputs fall back to the
/// same fixed witness set (no randomness anywhere).
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let s = BigInt::from(small);
        if n == &s {
            return true;
        }
        if n.is_multiple_of(&s) {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Decompose `q` as `p^e` with `p` prime, or report that it is not a prime power.
pub fn prime_power_decompose(q: &BigInt) -> Option<(BigInt, u32)> {
    if q < &BigInt::from(2) {
        return None;
    }
    // Trial: q = m^k for k down from log2(q); the base of the full
    // decomposition is found by taking k-th roots.
    let bits = q.bits() as u32;
    for k in (1..=bits).rev() {
        if let Some(root) = nth_root_exact(q, k) {
            if is_prime(&root) {
                return Some((root, k));
            }
        }
    }
    None
}

/// Exact integer k-th root, if `n` is a perfect k-th power.
pub fn nth_root_exact(n: &BigInt, k: u32) -> Option<BigInt> {
    if k == 0 || n.is_negative() {
        return None;
    }
    let r = n.nth_root(k);
    if r.pow(k) == *n {
        Some(r)
    } else {
        None
    }
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative integer");
    n.sqrt()
}

/// `l`-adic valuation of `n`; `None` for `n = 0`.
pub fn valuation(n: &BigInt, l: &BigInt) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let mut v = 0u32;
    let mut m = n.abs();
    while m.is_multiple_of(l) {
        m /= l;
        v += 1;
    }
    Some(v)
}

/// Modular inverse of `a` mod `m` when `gcd(a, m) = 1`.
pub fn invmod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Legendre symbol `(a | l)` for an odd prime `l`.
pub fn legendre(a: &BigInt, l: &BigInt) -> i32 {
    let r = a.mod_floor(l);
    if r.is_zero() {
        return 0;
    }
    let e = (l - BigInt::one()) >> 1;
    let p = r.modpow(&e, l);
    if p.is_one() {
        1
    } else {
        -1
    }
}

/// Primes up to and including `bound`, by sieve.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2usize;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| if b { Some(i as u64) } else { None })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_checks() {
        assert!(is_prime(&BigInt::from(2)));
        assert!(is_prime(&BigInt::from(99991)));
        assert!(!is_prime(&BigInt::from(1)));
        assert!(!is_prime(&BigInt::from(99989 * 3)));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(
            prime_power_decompose(&BigInt::from(81)),
            Some((BigInt::from(3), 4))
        );
        assert_eq!(
            prime_power_decompose(&BigInt::from(7)),
            Some((BigInt::from(7), 1))
        );
        assert_eq!(prime_power_decompose(&BigInt::from(12)), None);
    }

    #[test]
    fn legendre_values() {
        let l = BigInt::from(5);
        assert_eq!(legendre(&BigInt::from(-19), &l), 1);
        let l3 = BigInt::from(3);
        assert_eq!(legendre(&BigInt::from(-19), &l3), -1);
        assert_eq!(legendre(&BigInt::from(0), &l3), 0);
    }

    #[test]
    fn sieve_small() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
