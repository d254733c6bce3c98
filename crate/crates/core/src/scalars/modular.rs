//! Prime fields with word-sized moduli, primality testing, prime sampling,
//! and Chinese-remainder reconstruction.
//!
//! Moduli are capped at 62 bits so a product of two residues fits in 128-bit
//! intermediates.

use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Scalar, ScalarError};
use crate::rng::SplitMix64;

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(((t % p as i128 + p as i128) % p as i128) as u64)
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller-Rabin with a fixed round count (the first twelve primes as bases),
/// error well below 2^-80 across the u64 range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &b in &MR_BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &b in &MR_BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// A prime field F_p; primality of `p` is checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    modulus: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ScalarError> {
        if p >= 1 << 63 || !is_prime_u64(p) {
            return Err(ScalarError::NotPrime { value: p });
        }
        Ok(PrimeField { modulus: p })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Residue from a (possibly out-of-range) nonnegative value.
    pub fn element(&self, value: u64) -> Fp {
        Fp {
            residue: value % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn element_from_i64(&self, value: i64) -> Fp {
        let p = self.modulus as i128;
        let r = ((value as i128 % p) + p) % p;
        self.element(r as u64)
    }

    pub fn element_from_bigint(&self, value: &BigInt) -> Fp {
        self.element(super::rational::bigint_mod(value, self.modulus))
    }
}

/// Element of a prime field. Arithmetic across distinct moduli is a
/// programming error and panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    residue: u64,
    modulus: u64,
}

impl Fp {
    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn field(&self) -> PrimeField {
        PrimeField {
            modulus: self.modulus,
        }
    }

    fn check(&self, rhs: &Fp) {
        assert_eq!(self.modulus, rhs.modulus, "mixed prime-field moduli");
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl Scalar for Fp {
    type Ctx = PrimeField;

    fn ctx(&self) -> PrimeField {
        self.field()
    }

    fn zero(ctx: &PrimeField) -> Self {
        ctx.element(0)
    }

    fn one(ctx: &PrimeField) -> Self {
        ctx.element(1)
    }

    fn from_i64(ctx: &PrimeField, value: i64) -> Self {
        ctx.element_from_i64(value)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let mut r = self.residue + rhs.residue; // < 2^63, no overflow
        if r >= self.modulus {
            r -= self.modulus;
        }
        Fp {
            residue: r,
            modulus: self.modulus,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let r = if self.residue >= rhs.residue {
            self.residue - rhs.residue
        } else {
            self.residue + self.modulus - rhs.residue
        };
        Fp {
            residue: r,
            modulus: self.modulus,
        }
    }

    fn neg(&self) -> Self {
        let r = if self.residue == 0 {
            0
        } else {
            self.modulus - self.residue
        };
        Fp {
            residue: r,
            modulus: self.modulus,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Fp {
            residue: mul_mod(self.residue, rhs.residue, self.modulus),
            modulus: self.modulus,
        }
    }

    fn inv(&self) -> Option<Self> {
        inv_mod(self.residue, self.modulus).map(|r| Fp {
            residue: r,
            modulus: self.modulus,
        })
    }

    fn is_zero(&self) -> bool {
        self.residue == 0
    }
}

/// Deterministic stream of 62-bit primes (uniform candidates in
/// [2^61, 2^62), rejection by primality).
#[derive(Debug, Clone)]
pub struct PrimeSampler {
    rng: SplitMix64,
}

impl PrimeSampler {
    pub fn new(seed: u64) -> Self {
        PrimeSampler {
            rng: SplitMix64::new(seed),
        }
    }

    pub fn next_prime(&mut self) -> u64 {
        loop {
            let candidate = (self.rng.next_u64() >> 3) | (1 << 61) | 1;
            if is_prime_u64(candidate) {
                return candidate;
            }
        }
    }

    pub fn next_field(&mut self) -> PrimeField {
        PrimeField {
            modulus: self.next_prime(),
        }
    }
}

/// Combine residues by the Chinese Remainder Theorem into the unique
/// representative in the symmetric range (-M/2, M/2], M the product of the
/// moduli. Signed determinants are recovered directly in this range.
pub fn crt_combine(residues: &[(u64, u64)]) -> Result<BigInt, ScalarError> {
    let mut modulus = BigInt::one();
    let mut value = BigInt::zero();
    for &(r, p) in residues {
        if p == 0 {
            return Err(ScalarError::InvalidModuli);
        }
        let p_big = BigInt::from(p);
        if modulus.gcd(&p_big) != BigInt::one() {
            return Err(ScalarError::InvalidModuli);
        }
        // value' = value + t*modulus with t chosen so value' = r (mod p).
        let m_mod_p = super::rational::bigint_mod(&modulus, p);
        let v_mod_p = super::rational::bigint_mod(&value, p);
        let inv = inv_mod(m_mod_p, p).ok_or(ScalarError::InvalidModuli)?;
        let delta = (r % p + p - v_mod_p) % p;
        let t = mul_mod(delta, inv, p);
        value += BigInt::from(t) * &modulus;
        modulus *= p_big;
    }
    if &value * 2 > modulus {
        value -= &modulus;
    }
    Ok(value)
}

/// Signed value reduced to a nonnegative residue mod `p`.
pub fn residue_of_bigint(value: &BigInt, p: u64) -> u64 {
    super::rational::bigint_mod(value, p)
}
