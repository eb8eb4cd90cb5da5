//! The integral model `Z_p[x]/(f)` of `Q_p(zeta_{p^m})`.
//!
//! `f(x) = sum_{k=0}^{p-1} (x+1)^{k p^{m-1}}` is the minimal polynomial of
//! `pi = zeta_{p^m} - 1`. It is Eisenstein, so `{1, pi, ..., pi^{phi-1}}` is an
//! integral basis whose monomials `c * pi^l` have valuations
//! `l + phi * ord_p(c)`, pairwise distinct for distinct `l`. The valuation of
//! an element is therefore the minimum over its coordinates.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::padic::{
    binomial_row, check_odd_prime, ord_biguint, ord_u64, Modulus, PadicInt, PadicOrd,
};
use crate::valuation::Valuation;

/// `phi(p^m) = p^{m-1} (p - 1)`.
pub fn totient_prime_power(p: u64, m: u32) -> u64 {
    p.pow(m - 1) * (p - 1)
}

/// The threshold `d = (p-2) p^{m-1} + p^{m-2} + 1`, defined for `m >= 2`.
pub fn threshold_d(p: u64, m: u32) -> Result<u64> {
    if m < 2 {
        return Err(Error::UnsupportedLevel { m, n: 0 });
    }
    Ok((p - 2) * p.pow(m - 1) + p.pow(m - 2) + 1)
}

/// Coefficients of the minimal polynomial of `pi`, both exact and reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalPoly {
    prime: u64,
    level: u32,
    /// `[a_0, ..., a_{phi-1}]`; the leading coefficient 1 is implicit.
    exact_coeffs: Vec<BigUint>,
    coeffs: Vec<PadicInt>,
}

impl MinimalPoly {
    /// Expands `f` with `a_l = sum_{k >= ceil(l / p^{m-1})}^{p-1} C(k p^{m-1}, l)`.
    pub fn new(p: u64, m: u32, precision: u32) -> Result<Self> {
        check_odd_prime(p)?;
        if m == 0 {
            return Err(Error::UnsupportedLevel { m, n: 0 });
        }
        let modulus = Modulus::new(p, precision)?;
        let q = p.pow(m - 1);
        let phi = totient_prime_power(p, m) as usize;
        let mut exact = vec![BigUint::zero(); phi];
        // k = 0 contributes the constant 1.
        exact[0] += 1u32;
        for k in 1..p {
            let row = binomial_row(k * q);
            for (l, c) in row.into_iter().enumerate().take(phi) {
                exact[l] += c;
            }
        }
        let coeffs = exact
            .iter()
            .map(|a| PadicInt::from_residue(modulus, modulus.from_biguint(a)))
            .collect();
        Ok(MinimalPoly {
            prime: p,
            level: m,
            exact_coeffs: exact,
            coeffs,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `phi(p^m)`, the degree of `f`.
    pub fn degree(&self) -> usize {
        self.exact_coeffs.len()
    }

    pub fn exact_coeffs(&self) -> &[BigUint] {
        &self.exact_coeffs
    }

    pub fn coeffs(&self) -> &[PadicInt] {
        &self.coeffs
    }

    /// Exact `a_l`.
    pub fn a(&self, l: usize) -> &BigUint {
        &self.exact_coeffs[l]
    }

    /// `p | a_l` for every `l` and `p^2` does not divide `a_0`.
    pub fn is_eisenstein(&self) -> bool {
        let p = self.prime;
        let p2 = BigUint::from(p * p);
        self.exact_coeffs
            .iter()
            .all(|a| (a % BigUint::from(p)).is_zero())
            && !(&self.exact_coeffs[0] % p2).is_zero()
    }

    /// Verifies the congruence attached to each `l` in `[1, d - 1]`.
    pub fn check_case_congruences(&self) -> Result<CongruenceReport> {
        let p = self.prime;
        let m = self.level;
        let d = threshold_d(p, m)?;
        let p2 = Modulus::new_unchecked_prime(p, 2)?;
        let mut records = Vec::with_capacity(d as usize - 1);
        for l in 1..d {
            let a = &self.exact_coeffs[l as usize];
            let tag = classify(l, p, m)?;
            let ord = ord_biguint(p, a);
            let residue = p2.from_biguint(a);
            let expected = match tag {
                CaseTag::CaseII { t } => {
                    let sign = if t % 2 == 0 { 1 } else { -1 };
                    Some(PadicInt::rational_in(p2, sign * p as i64, t as i64 + 1)?.residue())
                }
                CaseTag::CaseIV => Some(p2.neg(p)),
                _ => None,
            };
            let pass = match tag {
                CaseTag::CaseI | CaseTag::CaseIII => ord.is_none_or(|k| k >= 2),
                CaseTag::CaseII { .. } | CaseTag::CaseIV => expected == Some(residue),
                CaseTag::AboveD => unreachable!("l < d"),
            };
            records.push(CongruenceRecord {
                ell: l,
                tag,
                ord_p: ord,
                residue_mod_p2: residue,
                expected_mod_p2: expected,
                pass,
            });
        }
        Ok(CongruenceReport {
            prime: p,
            level: m,
            d,
            records,
        })
    }
}

/// Position of an index `l` relative to the threshold `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `l < (p-2) p^{m-1}` and `ord_p(l) < m - 1`.
    CaseI,
    /// `l = t p^{m-1}` with `1 <= t <= p - 2`.
    CaseII { t: u64 },
    /// `(p-2) p^{m-1} < l < d - 1`; empty when `m = 2`.
    CaseIII,
    /// `l = d - 1`.
    CaseIV,
    /// `l >= d`; such terms are `O(pi^d)`.
    AboveD,
}

impl CaseTag {
    pub fn name(&self) -> &'static str {
        match self {
            CaseTag::CaseI => "i",
            CaseTag::CaseII { .. } => "ii",
            CaseTag::CaseIII => "iii",
            CaseTag::CaseIV => "iv",
            CaseTag::AboveD => "above-d",
        }
    }
}

/// Tags `l in [1, phi(p^m) - 1]` for `m >= 2`.
pub fn classify(l: u64, p: u64, m: u32) -> Result<CaseTag> {
    let d = threshold_d(p, m)?;
    let phi = totient_prime_power(p, m);
    if l == 0 || l >= phi {
        return Err(Error::IndexOutOfRange {
            index: l,
            upper: phi - 1,
        });
    }
    let q = p.pow(m - 1);
    let edge = (p - 2) * q;
    Ok(if l >= d {
        CaseTag::AboveD
    } else if l == d - 1 {
        CaseTag::CaseIV
    } else if l.is_multiple_of(q) && l <= edge {
        CaseTag::CaseII { t: l / q }
    } else if l > edge {
        CaseTag::CaseIII
    } else {
        debug_assert!(ord_u64(p, l).unwrap() < m - 1);
        CaseTag::CaseI
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceRecord {
    pub ell: u64,
    pub tag: CaseTag,
    /// `ord_p(a_l)` from the exact coefficient (`None` if `a_l = 0`).
    pub ord_p: Option<u32>,
    pub residue_mod_p2: u64,
    /// Required residue modulo `p^2` for cases (ii) and (iv).
    pub expected_mod_p2: Option<u64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    pub prime: u64,
    pub level: u32,
    pub d: u64,
    pub records: Vec<CongruenceRecord>,
}

impl CongruenceReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }
}

/// `Z_p[x]/(f)` truncated at precision `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloRing {
    modulus: Modulus,
    level: u32,
    poly: MinimalPoly,
}

impl CycloRing {
    pub fn new(p: u64, m: u32, precision: u32) -> Result<Arc<Self>> {
        let poly = MinimalPoly::new(p, m, precision)?;
        Ok(Arc::new(CycloRing {
            modulus: Modulus::new(p, precision)?,
            level: m,
            poly,
        }))
    }

    pub fn prime(&self) -> u64 {
        self.modulus.prime()
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn precision(&self) -> u32 {
        self.modulus.precision()
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// `phi(p^m)`, the rank over `Z_p`.
    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn poly(&self) -> &MinimalPoly {
        &self.poly
    }

    fn same_as(&self, other: &CycloRing) -> bool {
        self.modulus == other.modulus && self.level == other.level
    }

    /// Reduces a coefficient list of any length modulo `f`.
    pub(crate) fn reduce(&self, mut buf: Vec<PadicInt>) -> Vec<PadicInt> {
        let phi = self.degree();
        let a = self.poly.coeffs();
        for k in (phi..buf.len()).rev() {
            let c = buf[k];
            if c.is_exact_zero() {
                continue;
            }
            // x^k = -x^{k-phi} * sum_l a_l x^l
            let base = k - phi;
            for (l, al) in a.iter().enumerate() {
                buf[base + l] = buf[base + l].sub_same_prime(&c.mul_same_prime(al));
            }
        }
        buf.truncate(phi);
        buf.resize(phi, PadicInt::exact_zero_in(self.modulus));
        buf
    }

    /// Product of coordinate lists without reduction (length `2 phi - 1`).
    pub(crate) fn mul_unreduced(&self, a: &[PadicInt], b: &[PadicInt], acc: &mut [PadicInt]) {
        for (i, x) in a.iter().enumerate() {
            if x.is_exact_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_exact_zero() {
                    continue;
                }
                acc[i + j] = acc[i + j].add_same_prime(&x.mul_same_prime(y));
            }
        }
    }
}

/// An element `sum_l c_l pi^l` of [`CycloRing`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloElement {
    ring: Arc<CycloRing>,
    coords: Vec<PadicInt>,
}

impl CycloElement {
    pub fn zero(ring: &Arc<CycloRing>) -> Self {
        CycloElement {
            ring: ring.clone(),
            coords: vec![PadicInt::exact_zero_in(ring.modulus); ring.degree()],
        }
    }

    pub fn scalar(ring: &Arc<CycloRing>, c: PadicInt) -> Result<Self> {
        let mut e = Self::zero(ring);
        e.coords[0] = e.checked_coeff(c)?;
        Ok(e)
    }

    pub fn from_int(ring: &Arc<CycloRing>, c: i64) -> Self {
        let mut e = Self::zero(ring);
        if c != 0 {
            e.coords[0] = PadicInt::from_residue(ring.modulus, ring.modulus.from_i64(c));
        }
        e
    }

    pub fn one(ring: &Arc<CycloRing>) -> Self {
        Self::from_int(ring, 1)
    }

    pub fn pi(ring: &Arc<CycloRing>) -> Self {
        Self::pi_pow(ring, 1)
    }

    /// `pi^k` for any `k >= 0`, reduced.
    pub fn pi_pow(ring: &Arc<CycloRing>, k: usize) -> Self {
        let phi = ring.degree();
        if k < phi {
            let mut e = Self::zero(ring);
            e.coords[k] = PadicInt::from_residue(ring.modulus, 1);
            return e;
        }
        let mut e = Self::pi_pow(ring, phi - 1);
        for _ in phi - 1..k {
            e = e.mul_by_pi();
        }
        e
    }

    /// `sum_l coords[l] pi^l`; `coords.len()` must equal `phi(p^m)`.
    pub fn from_coords(ring: &Arc<CycloRing>, coords: Vec<PadicInt>) -> Result<Self> {
        if coords.len() != ring.degree() {
            return Err(Error::RingMismatch);
        }
        let e = Self::zero(ring);
        let coords = coords
            .into_iter()
            .map(|c| e.checked_coeff(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycloElement {
            ring: ring.clone(),
            coords,
        })
    }

    fn checked_coeff(&self, c: PadicInt) -> Result<PadicInt> {
        if c.prime() != self.ring.prime() {
            return Err(Error::MismatchedPrimes(c.prime(), self.ring.prime()));
        }
        Ok(c.truncate(self.ring.precision()))
    }

    pub(crate) fn from_raw(ring: &Arc<CycloRing>, coords: Vec<PadicInt>) -> Self {
        debug_assert_eq!(coords.len(), ring.degree());
        CycloElement {
            ring: ring.clone(),
            coords,
        }
    }

    pub fn ring(&self) -> &Arc<CycloRing> {
        &self.ring
    }

    pub fn coords(&self) -> &[PadicInt] {
        &self.coords
    }

    pub fn coord(&self, l: usize) -> PadicInt {
        self.coords[l]
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_exact_zero())
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.add_same_prime(b))
            .collect();
        Ok(Self::from_raw(&self.ring, coords))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::from_raw(&self.ring, self.coords.iter().map(|c| -*c).collect())
    }

    pub fn scale(&self, c: &PadicInt) -> Result<Self> {
        let c = self.checked_coeff(*c)?;
        Ok(Self::from_raw(
            &self.ring,
            self.coords.iter().map(|x| x.mul_same_prime(&c)).collect(),
        ))
    }

    /// Product reduced modulo `f`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let phi = self.ring.degree();
        let mut acc = vec![PadicInt::exact_zero_in(self.ring.modulus); 2 * phi - 1];
        self.ring
            .mul_unreduced(&self.coords, &other.coords, &mut acc);
        Ok(Self::from_raw(&self.ring, self.ring.reduce(acc)))
    }

    pub fn mul_by_pi(&self) -> Self {
        let mut buf = Vec::with_capacity(self.coords.len() + 1);
        buf.push(PadicInt::exact_zero_in(self.ring.modulus));
        buf.extend_from_slice(&self.coords);
        Self::from_raw(&self.ring, self.ring.reduce(buf))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Normalized `pi`-adic valuation, `v(pi) = 1`, `v(p) = phi(p^m)`.
    pub fn valuation(&self) -> Valuation {
        let phi = self.ring.degree() as i64;
        let mut exact_min: Option<i64> = None;
        let mut bound_min: Option<i64> = None;
        for (l, c) in self.coords.iter().enumerate() {
            let l = l as i64;
            match c.ord() {
                PadicOrd::Finite(k) => {
                    let v = l + phi * k as i64;
                    exact_min = Some(exact_min.map_or(v, |m| m.min(v)));
                }
                PadicOrd::AtLeast(k) => {
                    let v = l + phi * k as i64;
                    bound_min = Some(bound_min.map_or(v, |m| m.min(v)));
                }
                PadicOrd::Infinite => {}
            }
        }
        // Distinct l give values distinct mod phi, so there are no ties.
        match (exact_min, bound_min) {
            (None, None) => Valuation::Infinite,
            (Some(e), None) => Valuation::Exact(e),
            (Some(e), Some(b)) if e < b => Valuation::Exact(e),
            (_, Some(b)) => Valuation::AtLeast(b),
        }
    }

    /// The first `count` digits of the `pi`-adic expansion with digits in
    /// `[0, p)`: `self = sum_i digits[i] pi^i + O(pi^count)`.
    pub fn pi_adic_digits(&self, count: usize) -> Result<Vec<u64>> {
        let p = self.ring.prime();
        let phi = self.ring.degree();
        let mut rest = self.clone();
        let mut power = Self::one(&self.ring);
        let mut digits = Vec::with_capacity(count);
        for i in 0..count {
            // The only monomial of valuation i sits at l = i mod phi with
            // ord_p = i div phi; p^j = (-1)^j pi^{j phi} mod pi^{j phi + 1}.
            let l = i % phi;
            let j = (i / phi) as u32;
            let c = rest.coords[l];
            let digit = match c.ord() {
                PadicOrd::Infinite => 0,
                PadicOrd::Finite(k) if k > j => 0,
                PadicOrd::AtLeast(k) if k > j => 0,
                PadicOrd::Finite(k) if k == j => {
                    let unit = c.div_p_pow(j)?.mod_p();
                    if j.is_multiple_of(2) {
                        unit
                    } else {
                        (p - unit) % p
                    }
                }
                PadicOrd::Finite(_) => {
                    // v(rest) < i would contradict the previous steps.
                    unreachable!("digit extraction lost track of the valuation")
                }
                PadicOrd::AtLeast(k) => {
                    return Err(Error::PrecisionExhausted {
                        precision: self.ring.precision(),
                        lower_bound: l as i64 + phi as i64 * k as i64,
                        needed: Some(i as i64 + 1),
                    });
                }
            };
            if digit != 0 {
                let d = PadicInt::from_residue(self.ring.modulus, digit);
                rest = rest.try_sub(&power.scale(&d)?)?;
            }
            digits.push(digit);
            power = power.mul_by_pi();
        }
        Ok(digits)
    }
}

/// Outcome of a residual-valuation certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidualReport {
    pub valuation: Valuation,
    /// Required lower bound.
    pub bound: i64,
    pub pass: bool,
}

fn certify(valuation: Valuation, bound: i64, precision: u32) -> Result<ResidualReport> {
    match valuation.certifies_at_least(bound) {
        Some(pass) => Ok(ResidualReport {
            valuation,
            bound,
            pass,
        }),
        None => Err(Error::PrecisionExhausted {
            precision,
            lower_bound: valuation.value().unwrap_or(i64::MAX),
            needed: Some(bound),
        }),
    }
}

/// Checks the B_t form of `-p / pi^{phi(p^2)}` with denominators cleared:
/// `R = -p - pi^phi (sum_t B_t pi^{tp} + pi^{(p-2)p+1})` must satisfy
/// `v(R) >= phi + (p-2)p + 2`.
///
/// `b_values` holds `[B_0, ..., B_{p-2}]`.
pub fn expansion_residual(ring: &Arc<CycloRing>, b_values: &[PadicInt]) -> Result<ResidualReport> {
    if ring.level() != 2 {
        return Err(Error::UnsupportedLevel {
            m: ring.level(),
            n: 0,
        });
    }
    let p = ring.prime() as usize;
    if b_values.len() != p - 1 {
        return Err(Error::InvalidRecipe("expected B_0, ..., B_{p-2}"));
    }
    let phi = ring.degree();
    let mut series = CycloElement::pi_pow(ring, (p - 2) * p + 1);
    for (t, b) in b_values.iter().enumerate() {
        series = series.try_add(&CycloElement::pi_pow(ring, t * p).scale(b)?)?;
    }
    let cleared = CycloElement::pi_pow(ring, phi).try_mul(&series)?;
    let residual = CycloElement::from_int(ring, -(p as i64)).try_sub(&cleared)?;
    let bound = (phi + (p - 2) * p + 2) as i64;
    certify(residual.valuation(), bound, ring.precision())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MercioReport {
    /// Nonzero `(exponent, digit)` pairs of `-3 / pi^6` up to `pi^4`.
    pub terms: Vec<(usize, u64)>,
    /// `v(-3 - pi^6 (sum of terms))`, certified `>= 11`.
    pub residual: ResidualReport,
}

/// The expansion `-3/pi^6 = 1 + 2 pi^3 + pi^4 + O(pi^5)` at `p = 3`, `m = 2`.
///
/// The digits are read off `-3` itself: `-3 = pi^6 u` with `u` a unit, so the
/// digits of `u` are those of `-3` shifted down by six places.
pub fn mercio_expansion(precision: u32) -> Result<MercioReport> {
    const SHOWN: usize = 5;
    let ring = CycloRing::new(3, 2, precision)?;
    let phi = ring.degree();
    let minus_p = CycloElement::from_int(&ring, -3);
    let digits = minus_p.pi_adic_digits(phi + SHOWN)?;
    debug_assert!(digits[..phi].iter().all(|&d| d == 0));
    let terms: Vec<(usize, u64)> = digits[phi..]
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != 0)
        .map(|(e, &d)| (e, d))
        .collect();

    let mut truncated = CycloElement::zero(&ring);
    for &(e, d) in &terms {
        truncated = truncated.try_add(
            &CycloElement::pi_pow(&ring, e).scale(&PadicInt::from_residue(ring.modulus(), d))?,
        )?;
    }
    let residual = minus_p.try_sub(&CycloElement::pi_pow(&ring, phi).try_mul(&truncated)?)?;
    let report = certify(residual.valuation(), (phi + SHOWN) as i64, precision)?;
    Ok(MercioReport {
        terms,
        residual: report,
    })
}
