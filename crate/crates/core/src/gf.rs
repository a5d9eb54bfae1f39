//! Arithmetic in the prime field GF(p).
//!
//! Elements carry their modulus; mixing elements of different fields is a
//! programming error and panics. Hot loops elsewhere in the crate work on raw
//! `u32` residues through the helpers on [`PrimeModulus`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported modulus (the largest 16-bit prime).
pub const MAX_MODULUS: u32 = 65521;

/// A prime modulus `p`, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PrimeModulus(u32);

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Builds the field handle for GF(p).
pub fn make_field(p: u64) -> Result<PrimeModulus> {
    if p < 2 || p > MAX_MODULUS as u64 {
        return Err(Error::OutOfRange(p));
    }
    if !is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    Ok(PrimeModulus(p as u32))
}

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        make_field(p)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn elem(self, v: i64) -> FieldElem {
        FieldElem {
            value: self.reduce(v),
            modulus: self,
        }
    }

    pub fn zero(self) -> FieldElem {
        self.elem(0)
    }

    pub fn one(self) -> FieldElem {
        self.elem(1)
    }

    /// All nonzero residues `1..p` in increasing order.
    pub fn units(self) -> impl Iterator<Item = FieldElem> {
        (1..self.0).map(move |v| FieldElem { value: v, modulus: self })
    }

    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
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
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    /// Inverse by the extended Euclidean algorithm.
    pub fn inv(self, a: u32) -> Result<u32> {
        let a = a % self.0;
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let (mut r0, mut r1) = (self.0 as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.reduce(t0))
    }

    /// Representative of `a` in `[-(p-1)/2, (p-1)/2]`; for p = 2 the residue itself.
    pub fn balanced(self, a: u32) -> i64 {
        let p = self.0 as i64;
        let a = a as i64;
        if p == 2 || a <= (p - 1) / 2 {
            a
        } else {
            a - p
        }
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    value: u32,
    modulus: PrimeModulus,
}

impl FieldElem {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<FieldElem> {
        Ok(FieldElem {
            value: self.modulus.inv(self.value)?,
            modulus: self.modulus,
        })
    }

    pub fn balanced_lift(self) -> i64 {
        self.modulus.balanced(self.value)
    }

    pub fn pow(self, mut e: u64) -> FieldElem {
        let mut base = self;
        let mut acc = self.modulus.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn same_field(self, other: FieldElem) -> PrimeModulus {
        assert_eq!(
            self.modulus, other.modulus,
            "arithmetic across different prime fields"
        );
        self.modulus
    }
}

/// `inv(a)` as a free function.
pub fn inv(a: FieldElem) -> Result<FieldElem> {
    a.inv()
}

pub fn balanced_lift(a: FieldElem) -> i64 {
    a.balanced_lift()
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        let m = self.same_field(rhs);
        FieldElem { value: m.add(self.value, rhs.value), modulus: m }
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: FieldElem) -> FieldElem {
        let m = self.same_field(rhs);
        FieldElem { value: m.sub(self.value, rhs.value), modulus: m }
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: FieldElem) -> FieldElem {
        let m = self.same_field(rhs);
        FieldElem { value: m.mul(self.value, rhs.value), modulus: m }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { value: self.modulus.neg(self.value), modulus: self.modulus }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
