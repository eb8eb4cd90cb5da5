//! Truncated p-adic integers and exact binomial coefficients.
//!
//! A [`PadicInt`] is a residue modulo `p^N` that remembers `N`. Values that
//! are zero modulo `p^N` are kept apart from the exact zero: the former only
//! certify `ord >= N`, the latter has infinite valuation. Mixed-precision
//! operations truncate to the smaller precision; nothing is ever lifted.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Neg;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial-division primality test restricted to odd primes.
pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_odd_prime(p: u64) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

/// Largest `N` such that `p^N` fits in a `u64`.
pub fn max_precision(p: u64) -> u32 {
    let mut n = 0u32;
    let mut acc = 1u64;
    while let Some(next) = acc.checked_mul(p) {
        acc = next;
        n += 1;
    }
    n
}

/// p-adic valuation of a machine integer; `None` for zero.
pub fn ord_u64(p: u64, mut x: u64) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let mut k = 0;
    while x.is_multiple_of(p) {
        x /= p;
        k += 1;
    }
    Some(k)
}

/// p-adic valuation of an exact big integer; `None` for zero.
pub fn ord_biguint(p: u64, x: &BigUint) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigUint::from(p);
    let mut x = x.clone();
    let mut k = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(k);
        }
        x = q;
        k += 1;
    }
}

/// Arithmetic modulo `p^N` on raw residues. This is the hot-path companion of
/// [`PadicInt`] used by matrix code, where every entry shares one modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Modulus {
    prime: u64,
    precision: u32,
    value: u64,
}

impl Modulus {
    pub fn new(prime: u64, precision: u32) -> Result<Self> {
        check_odd_prime(prime)?;
        Self::new_unchecked_prime(prime, precision)
    }

    pub(crate) fn new_unchecked_prime(prime: u64, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(Error::UnsupportedPrecision { prime, precision });
        }
        let value = prime
            .checked_pow(precision)
            .ok_or(Error::UnsupportedPrecision { prime, precision })?;
        Ok(Modulus {
            prime,
            precision,
            value,
        })
    }

    #[inline]
    pub fn prime(&self) -> u64 {
        self.prime
    }

    #[inline]
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `p^N`.
    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (s, overflow) = a.overflowing_add(b);
        if overflow || s >= self.value {
            s.wrapping_sub(self.value)
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.value - (b - a)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.value - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.value <= u32::MAX as u64 {
            (a * b) % self.value
        } else {
            ((a as u128 * b as u128) % self.value as u128) as u64
        }
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        let m = self.value as i128;
        ((x as i128).rem_euclid(m)) as u64
    }

    pub fn from_biguint(&self, x: &BigUint) -> u64 {
        (x % BigUint::from(self.value))
            .to_u64()
            .expect("residue below a u64 modulus")
    }

    /// Valuation of a residue, capped at `N` for zero.
    #[inline]
    pub fn ord(&self, a: u64) -> u32 {
        ord_u64(self.prime, a).unwrap_or(self.precision)
    }

    /// Inverse of a residue coprime to p.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.prime) {
            return None;
        }
        // Extended Euclid on signed 128-bit values.
        let (mut r0, mut r1) = (self.value as i128, a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Some(s0.rem_euclid(self.value as i128) as u64)
    }
}

/// Valuation of a [`PadicInt`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PadicOrd {
    Finite(u32),
    /// The residue vanishes modulo `p^N`; only `ord >= N` is known.
    AtLeast(u32),
    /// The exact zero.
    Infinite,
}

impl PadicOrd {
    /// The certified lower bound (`u32::MAX` for the exact zero).
    pub fn lower_bound(self) -> u32 {
        match self {
            PadicOrd::Finite(k) | PadicOrd::AtLeast(k) => k,
            PadicOrd::Infinite => u32::MAX,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            PadicOrd::Finite(k) => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for PadicOrd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicOrd::Finite(k) => write!(f, "{k}"),
            PadicOrd::AtLeast(k) => write!(f, ">= {k}"),
            PadicOrd::Infinite => write!(f, "+inf"),
        }
    }
}

/// A p-adic integer known modulo `p^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PadicInt {
    modulus: Modulus,
    residue: u64,
    exact_zero: bool,
}

impl PadicInt {
    /// `value mod p^N`. Checks that `p` is an odd prime.
    pub fn new(prime: u64, precision: u32, value: u64) -> Result<Self> {
        let modulus = Modulus::new(prime, precision)?;
        Ok(Self::from_residue(modulus, value % modulus.value()))
    }

    pub fn from_i64(prime: u64, precision: u32, value: i64) -> Result<Self> {
        let modulus = Modulus::new(prime, precision)?;
        Ok(Self::from_residue(modulus, modulus.from_i64(value)))
    }

    pub fn from_bigint(prime: u64, precision: u32, value: &BigInt) -> Result<Self> {
        let modulus = Modulus::new(prime, precision)?;
        Ok(Self::with_modulus_bigint(modulus, value))
    }

    pub(crate) fn with_modulus_bigint(modulus: Modulus, value: &BigInt) -> Self {
        let r = modulus.from_biguint(value.magnitude());
        let r = if value.sign() == Sign::Minus {
            modulus.neg(r)
        } else {
            r
        };
        Self::from_residue(modulus, r)
    }

    /// `num / den` in `Z_p`, reduced modulo `p^N`. A zero numerator gives the
    /// exact zero.
    pub fn from_rational(num: i64, den: i64, prime: u64, precision: u32) -> Result<Self> {
        let modulus = Modulus::new(prime, precision)?;
        Self::rational_in(modulus, num, den)
    }

    pub(crate) fn rational_in(modulus: Modulus, num: i64, den: i64) -> Result<Self> {
        if den == 0 || den.unsigned_abs().is_multiple_of(modulus.prime()) {
            return Err(Error::BadDenominator(den));
        }
        if num == 0 {
            return Ok(Self::exact_zero_in(modulus));
        }
        let inv = modulus
            .inv(modulus.from_i64(den))
            .ok_or(Error::BadDenominator(den))?;
        Ok(Self::from_residue(
            modulus,
            modulus.mul(modulus.from_i64(num), inv),
        ))
    }

    pub fn exact_zero(prime: u64, precision: u32) -> Result<Self> {
        Ok(Self::exact_zero_in(Modulus::new(prime, precision)?))
    }

    pub fn one(prime: u64, precision: u32) -> Result<Self> {
        Ok(Self::from_residue(Modulus::new(prime, precision)?, 1))
    }

    #[inline]
    pub(crate) fn from_residue(modulus: Modulus, residue: u64) -> Self {
        debug_assert!(residue < modulus.value());
        PadicInt {
            modulus,
            residue,
            exact_zero: false,
        }
    }

    #[inline]
    pub(crate) fn exact_zero_in(modulus: Modulus) -> Self {
        PadicInt {
            modulus,
            residue: 0,
            exact_zero: true,
        }
    }

    #[inline]
    pub fn prime(&self) -> u64 {
        self.modulus.prime()
    }

    #[inline]
    pub fn precision(&self) -> u32 {
        self.modulus.precision()
    }

    #[inline]
    pub fn residue(&self) -> u64 {
        self.residue
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn is_exact_zero(&self) -> bool {
        self.exact_zero
    }

    /// True for the exact zero and for values that vanish modulo `p^N`.
    #[inline]
    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    /// Residue modulo `p`.
    pub fn mod_p(&self) -> u64 {
        self.residue % self.prime()
    }

    /// Representative in `(-p^N/2, p^N/2]`.
    pub fn signed_residue(&self) -> i128 {
        let m = self.modulus.value() as i128;
        let r = self.residue as i128;
        if 2 * r > m {
            r - m
        } else {
            r
        }
    }

    pub fn ord(&self) -> PadicOrd {
        if self.exact_zero {
            PadicOrd::Infinite
        } else {
            match ord_u64(self.prime(), self.residue) {
                Some(k) => PadicOrd::Finite(k),
                None => PadicOrd::AtLeast(self.precision()),
            }
        }
    }

    /// Truncates to a lower precision (no-op when `precision` is not lower).
    pub fn truncate(&self, precision: u32) -> Self {
        if precision >= self.precision() || precision == 0 {
            return *self;
        }
        let modulus = Modulus::new_unchecked_prime(self.prime(), precision)
            .expect("lower precision always fits");
        if self.exact_zero {
            Self::exact_zero_in(modulus)
        } else {
            Self::from_residue(modulus, self.residue % modulus.value())
        }
    }

    /// Divides by `p^k`, losing `k` digits of precision.
    ///
    /// Requires `ord >= k` and `k < N` (unless the value is the exact zero).
    pub fn div_p_pow(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Ok(*self);
        }
        if k >= self.precision() {
            return Err(Error::PrecisionExhausted {
                precision: self.precision(),
                lower_bound: 0,
                needed: Some(k as i64),
            });
        }
        let modulus = Modulus::new_unchecked_prime(self.prime(), self.precision() - k)?;
        if self.exact_zero {
            return Ok(Self::exact_zero_in(modulus));
        }
        if self.ord().lower_bound() < k {
            return Err(Error::NonUnit);
        }
        let q = self.residue / self.prime().pow(k);
        Ok(Self::from_residue(modulus, q % modulus.value()))
    }

    fn check_prime(&self, other: &Self) -> Result<()> {
        if self.prime() == other.prime() {
            Ok(())
        } else {
            Err(Error::MismatchedPrimes(self.prime(), other.prime()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        Ok(self.add_same_prime(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        Ok(self.add_same_prime(&-*other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_prime(other)?;
        Ok(self.mul_same_prime(other))
    }

    #[inline]
    pub(crate) fn add_same_prime(&self, other: &Self) -> Self {
        if other.exact_zero {
            return *self;
        }
        if self.exact_zero {
            return *other;
        }
        let (a, b, m) = self.align(other);
        Self::from_residue(m, m.add(a, b))
    }

    #[inline]
    pub(crate) fn sub_same_prime(&self, other: &Self) -> Self {
        self.add_same_prime(&-*other)
    }

    #[inline]
    pub(crate) fn mul_same_prime(&self, other: &Self) -> Self {
        if self.exact_zero {
            return *self;
        }
        if other.exact_zero {
            return *other;
        }
        let (a, b, m) = self.align(other);
        Self::from_residue(m, m.mul(a, b))
    }

    #[inline]
    fn align(&self, other: &Self) -> (u64, u64, Modulus) {
        if self.precision() == other.precision() {
            (self.residue, other.residue, self.modulus)
        } else if self.precision() < other.precision() {
            (
                self.residue,
                other.residue % self.modulus.value(),
                self.modulus,
            )
        } else {
            (
                self.residue % other.modulus.value(),
                other.residue,
                other.modulus,
            )
        }
    }

    /// Multiplicative inverse of a unit.
    pub fn inv_unit(&self) -> Result<Self> {
        if self.exact_zero {
            return Err(Error::NonUnit);
        }
        let inv = self.modulus.inv(self.residue).ok_or(Error::NonUnit)?;
        Ok(Self::from_residue(self.modulus, inv))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::from_residue(self.modulus, 1 % self.modulus.value());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same_prime(&base);
            }
            base = base.mul_same_prime(&base);
            e >>= 1;
        }
        acc
    }
}

impl Neg for PadicInt {
    type Output = PadicInt;

    fn neg(self) -> PadicInt {
        if self.exact_zero {
            self
        } else {
            PadicInt::from_residue(self.modulus, self.modulus.neg(self.residue))
        }
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact_zero {
            write!(f, "0")
        } else {
            write!(
                f,
                "{} (mod {}^{})",
                self.residue,
                self.prime(),
                self.precision()
            )
        }
    }
}

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> Result<BigUint> {
    if k > n {
        return Err(Error::BinomialRange { n, k });
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    Ok(acc)
}

/// The full row `[C(n, 0), ..., C(n, n)]`.
pub fn binomial_row(n: u64) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for i in 0..n {
        c = c * BigUint::from(n - i) / BigUint::from(i + 1);
        row.push(c.clone());
    }
    row
}
