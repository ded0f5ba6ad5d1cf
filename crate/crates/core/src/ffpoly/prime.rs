use std::fmt;

use super::PolyError;

/// The characteristic of a prime field `F_p`.
///
/// Coefficients are least nonnegative residues stored in `u32`; products go
/// through `u64`, so any prime below `2^32` is representable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeChar(u32);

impl PrimeChar {
    pub fn new(p: u64) -> Result<Self, PolyError> {
        if p > u64::from(u32::MAX) || !is_prime(p) {
            return Err(PolyError::NotPrime(p));
        }
        Ok(PrimeChar(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        (x % u64::from(self.0)) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + u64::from(b)) % u64::from(self.0)) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.0)) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat; `a` must be nonzero mod p.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0));
        self.pow(a, u64::from(self.0) - 2)
    }
}

impl fmt::Display for PrimeChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `C(n, k) mod p` via Lucas: the product of digit-wise binomials in base p.
pub fn binom_mod_p(mut n: u64, mut k: u64, p: PrimeChar) -> u32 {
    if k > n {
        return 0;
    }
    let base = u64::from(p.get());
    let mut acc = 1 % p.get();
    while k > 0 {
        let (nd, kd) = (n % base, k % base);
        if kd > nd {
            return 0;
        }
        acc = p.mul(acc, small_binom(nd as u32, kd as u32, p));
        n /= base;
        k /= base;
    }
    acc
}

// C(n, k) mod p for 0 <= k <= n < p, where the denominator is a unit.
fn small_binom(n: u32, k: u32, p: PrimeChar) -> u32 {
    let k = k.min(n - k);
    let mut num = 1 % p.get();
    let mut den = 1 % p.get();
    for i in 0..k {
        num = p.mul(num, n - i);
        den = p.mul(den, i + 1);
    }
    p.mul(num, p.inv(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;

    fn big_binom(n: u64, k: u64) -> BigUint {
        let mut acc = BigUint::from(1u32);
        for i in 0..k {
            acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
        }
        acc
    }

    #[test]
    fn rejects_composites() {
        assert!(PrimeChar::new(0).is_err());
        assert!(PrimeChar::new(1).is_err());
        assert!(PrimeChar::new(9).is_err());
        assert!(PrimeChar::new(91).is_err());
        assert_eq!(PrimeChar::new(13).unwrap().get(), 13);
        assert!(PrimeChar::new(2_147_483_647).is_ok());
    }

    #[test]
    fn lucas_examples() {
        let p7 = PrimeChar::new(7).unwrap();
        let p2 = PrimeChar::new(2).unwrap();
        assert_eq!(binom_mod_p(6, 3, p7), 6);
        assert_eq!(binom_mod_p(5, 2, p2), 0);
        for p in [2, 3, 5, 7, 11] {
            let p = PrimeChar::new(p).unwrap();
            assert_eq!(binom_mod_p(12345, 0, p), 1);
            assert_eq!(binom_mod_p(3, 4, p), 0);
        }
    }

    #[test]
    fn lucas_matches_big_integer_binomials() {
        for p in [2u64, 3, 5, 7] {
            let pc = PrimeChar::new(p).unwrap();
            for n in 0..=300u64 {
                for k in 0..=n {
                    let want = (big_binom(n, k) % BigUint::from(p)).to_u32().unwrap();
                    assert_eq!(binom_mod_p(n, k, pc), want, "C({n},{k}) mod {p}");
                }
            }
        }
    }

    #[test]
    fn q_minus_one_row_has_no_zero() {
        for p in [2u64, 3, 5, 7] {
            let pc = PrimeChar::new(p).unwrap();
            for e in 1..=3 {
                let q = p.pow(e);
                for j in 0..q {
                    assert_ne!(binom_mod_p(q - 1, j, pc), 0, "p={p} e={e} j={j}");
                }
            }
        }
    }
}
