//! Exact residue arithmetic modulo a word-sized modulus.
//!
//! Every modulus is below 2^31, so the product of two canonical residues
//! fits in a `u64` and plain `%` reduction is exact.

use std::fmt;

use thiserror::Error;

/// Exclusive upper bound on a modulus.
pub const MODULUS_LIMIT: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularError {
    #[error("modulus {0} out of range, need 2 <= m < 2^31")]
    ModulusOutOfRange(i64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },
}

/// A modulus `m` with `2 <= m < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(m: u64) -> Result<Self, ModularError> {
        if (2..MODULUS_LIMIT).contains(&m) {
            Ok(Modulus(m))
        } else {
            Err(ModularError::ModulusOutOfRange(m.min(i64::MAX as u64) as i64))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Canonical representative of an arbitrary signed integer.
    #[inline]
    pub fn reduce(self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }

    #[inline]
    pub fn residue(self, v: i64) -> Residue {
        Residue {
            value: self.reduce(v),
            modulus: self,
        }
    }

    #[inline]
    pub fn zero(self) -> Residue {
        Residue { value: 0, modulus: self }
    }

    #[inline]
    pub fn one(self) -> Residue {
        Residue { value: 1, modulus: self }
    }

    #[inline]
    pub(crate) fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    #[inline]
    pub(crate) fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    /// Primality by trial division; `m < 2^31` keeps this under ~46k steps.
    pub fn is_prime(self) -> bool {
        let m = self.0;
        if m < 4 {
            return m >= 2;
        }
        if m.is_multiple_of(2) {
            return false;
        }
        let mut d = 3;
        while d * d <= m {
            if m.is_multiple_of(d) {
                return false;
            }
            d += 2;
        }
        true
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A canonical residue `0 <= value < m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: i64, modulus: Modulus) -> Self {
        modulus.residue(value)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    fn check(self, other: Residue) -> Result<Modulus, ModularError> {
        if self.modulus == other.modulus {
            Ok(self.modulus)
        } else {
            Err(ModularError::ModulusMismatch(
                self.modulus.get(),
                other.modulus.get(),
            ))
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn mod_add(a: Residue, b: Residue) -> Result<Residue, ModularError> {
    let m = a.check(b)?;
    Ok(Residue {
        value: m.add(a.value, b.value),
        modulus: m,
    })
}

pub fn mod_mul(a: Residue, b: Residue) -> Result<Residue, ModularError> {
    let m = a.check(b)?;
    Ok(Residue {
        value: m.mul(a.value, b.value),
        modulus: m,
    })
}

/// Square-and-multiply exponentiation.
pub fn mod_pow(a: Residue, mut e: u64) -> Residue {
    let m = a.modulus;
    let mut base = a.value;
    let mut acc = 1 % m.get();
    while e > 0 {
        if e & 1 == 1 {
            acc = m.mul(acc, base);
        }
        base = m.mul(base, base);
        e >>= 1;
    }
    Residue {
        value: acc,
        modulus: m,
    }
}

/// Inverse via the extended Euclidean algorithm.
pub fn mod_inv(a: Residue) -> Result<Residue, ModularError> {
    let m = a.modulus;
    inv_raw(a.value, m)
        .map(|value| Residue { value, modulus: m })
        .ok_or(ModularError::NotInvertible {
            value: a.value,
            modulus: m.get(),
        })
}

pub(crate) fn inv_raw(a: u64, m: Modulus) -> Option<u64> {
    let (mut old_r, mut r) = (a as i64, m.get() as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r == 1 {
        Some(m.reduce(old_s))
    } else {
        None
    }
}

/// All `s` in `[1, m)` with `s^2 = 1 (mod m)`, ascending.
pub fn sqrt_of_unity_set(m: Modulus) -> Vec<Residue> {
    (1..m.get())
        .filter(|&s| m.mul(s, s) == 1 % m.get())
        .map(|s| Residue { value: s, modulus: m })
        .collect()
}
