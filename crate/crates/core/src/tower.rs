//! The integral model `Z_p[x, y]/(f(x), y^{p^n} - p)` of
//! `K_{m,n} = Q_p(zeta_{p^m}, p^{1/p^n})`.
//!
//! Valuations here are normalized so that a uniformizer of `K_{m,n}` has
//! valuation 1: `V = D * ord_p` with `D = [K_{m,n} : Q_p] = phi(p^m) p^n`.
//! Hence `V(p) = D`, `V(pi) = p^n` and `V(theta) = phi(p^m)` for
//! `theta = p^{1/p^n}`.
//!
//! Unlike the cyclotomic basis, monomials `pi^i theta^j` can share a
//! valuation (`V(pi^{p-1}) = V(theta)` when `m = 2`, `n = 1`), so the
//! coordinate-wise minimum is only a lower bound. The exact valuation comes
//! from the norm: `ord_p det(mult-by-a) = ord_p N(a) = V(a)`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::cyclotomic::{CycloElement, CycloRing, ResidualReport};
use crate::error::{Error, Result};
use crate::lab::UniformizerRecipe;
use crate::localdet::{local_determinant, ModMatrix};
use crate::padic::{Modulus, PadicInt, PadicOrd};
use crate::valuation::Valuation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerRing {
    cyclo: Arc<CycloRing>,
    root_level: u32,
    degree_y: usize,
}

impl TowerRing {
    /// `K_{m,n}` at precision `N`; requires `m >= 1`, `n >= 1`.
    pub fn new(p: u64, m: u32, n: u32, precision: u32) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::UnsupportedLevel { m, n });
        }
        let cyclo = CycloRing::new(p, m, precision)?;
        let degree_y = p.checked_pow(n).ok_or(Error::UnsupportedLevel { m, n })? as usize;
        Ok(Arc::new(TowerRing {
            cyclo,
            root_level: n,
            degree_y,
        }))
    }

    pub fn cyclo(&self) -> &Arc<CycloRing> {
        &self.cyclo
    }

    pub fn prime(&self) -> u64 {
        self.cyclo.prime()
    }

    pub fn level(&self) -> u32 {
        self.cyclo.level()
    }

    pub fn root_level(&self) -> u32 {
        self.root_level
    }

    pub fn precision(&self) -> u32 {
        self.cyclo.precision()
    }

    pub fn degree_x(&self) -> usize {
        self.cyclo.degree()
    }

    pub fn degree_y(&self) -> usize {
        self.degree_y
    }

    /// `D = [K_{m,n} : Q_p] = p^{m+n-1} (p - 1)`.
    pub fn degree(&self) -> usize {
        self.degree_x() * self.degree_y
    }

    pub fn v_pi(&self) -> i64 {
        self.degree_y as i64
    }

    pub fn v_theta(&self) -> i64 {
        self.degree_x() as i64
    }

    pub fn v_p(&self) -> i64 {
        self.degree() as i64
    }

    fn same_as(&self, other: &TowerRing) -> bool {
        self.root_level == other.root_level && self.cyclo == other.cyclo
    }
}

/// `sum_j c_j theta^j` with `c_j` in the cyclotomic ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerElement {
    ring: Arc<TowerRing>,
    components: Vec<CycloElement>,
}

impl TowerElement {
    pub fn zero(ring: &Arc<TowerRing>) -> Self {
        TowerElement {
            ring: ring.clone(),
            components: vec![CycloElement::zero(ring.cyclo()); ring.degree_y()],
        }
    }

    pub fn one(ring: &Arc<TowerRing>) -> Self {
        Self::from_cyclo(ring, CycloElement::one(ring.cyclo())).expect("same ring")
    }

    pub fn from_int(ring: &Arc<TowerRing>, c: i64) -> Self {
        Self::from_cyclo(ring, CycloElement::from_int(ring.cyclo(), c)).expect("same ring")
    }

    /// Embeds a theta-free element.
    pub fn from_cyclo(ring: &Arc<TowerRing>, c: CycloElement) -> Result<Self> {
        Self::from_components(ring, {
            let mut comps = vec![CycloElement::zero(ring.cyclo()); ring.degree_y()];
            comps[0] = c;
            comps
        })
    }

    pub fn from_components(ring: &Arc<TowerRing>, components: Vec<CycloElement>) -> Result<Self> {
        if components.len() != ring.degree_y()
            || components.iter().any(|c| **c.ring() != **ring.cyclo())
        {
            return Err(Error::RingMismatch);
        }
        Ok(TowerElement {
            ring: ring.clone(),
            components,
        })
    }

    /// `coeff * pi^i * theta^j` with `j < p^n`; `i` may exceed the basis range.
    pub fn monomial(ring: &Arc<TowerRing>, i: usize, j: usize, coeff: PadicInt) -> Result<Self> {
        if j >= ring.degree_y() {
            return Err(Error::IndexOutOfRange {
                index: j as u64,
                upper: ring.degree_y() as u64 - 1,
            });
        }
        let mut e = Self::zero(ring);
        e.components[j] = CycloElement::pi_pow(ring.cyclo(), i).scale(&coeff)?;
        Ok(e)
    }

    pub fn pi(ring: &Arc<TowerRing>) -> Self {
        Self::from_cyclo(ring, CycloElement::pi(ring.cyclo())).expect("same ring")
    }

    pub fn theta(ring: &Arc<TowerRing>) -> Self {
        Self::one(ring).mul_by_theta()
    }

    pub fn ring(&self) -> &Arc<TowerRing> {
        &self.ring
    }

    /// Coefficient of `theta^j` as a cyclotomic element.
    pub fn component(&self, j: usize) -> &CycloElement {
        &self.components[j]
    }

    pub fn components(&self) -> &[CycloElement] {
        &self.components
    }

    /// Coefficient of `pi^i theta^j`.
    pub fn coord(&self, i: usize, j: usize) -> PadicInt {
        self.components[j].coord(i)
    }

    pub fn is_exact_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_exact_zero())
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
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(TowerElement {
            ring: self.ring.clone(),
            components,
        })
    }

    pub fn neg(&self) -> Self {
        TowerElement {
            ring: self.ring.clone(),
            components: self.components.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn scale(&self, c: &PadicInt) -> Result<Self> {
        let components = self
            .components
            .iter()
            .map(|x| x.scale(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(TowerElement {
            ring: self.ring.clone(),
            components,
        })
    }

    /// Canonical-form product: `x`-degrees reduced by `f`, `theta^{p^n} = p`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let cyclo = self.ring.cyclo();
        let md = cyclo.modulus();
        let y = self.ring.degree_y();
        let width = 2 * cyclo.degree() - 1;
        let zero = PadicInt::exact_zero_in(md);
        let mut low = vec![vec![zero; width]; y];
        let mut wrap = vec![vec![zero; width]; y];
        for (j, a) in self.components.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (k, b) in other.components.iter().enumerate() {
                if b.is_exact_zero() {
                    continue;
                }
                let r = j + k;
                let acc = if r < y { &mut low[r] } else { &mut wrap[r - y] };
                cyclo.mul_unreduced(a.coords(), b.coords(), acc);
            }
        }
        let p = PadicInt::from_residue(md, md.prime() % md.value());
        let components = low
            .into_iter()
            .zip(wrap)
            .map(|(mut lo, wr)| {
                for (x, w) in lo.iter_mut().zip(wr) {
                    if !w.is_exact_zero() {
                        *x = x.add_same_prime(&w.mul_same_prime(&p));
                    }
                }
                CycloElement::from_raw(cyclo, cyclo.reduce(lo))
            })
            .collect();
        Ok(TowerElement {
            ring: self.ring.clone(),
            components,
        })
    }

    pub fn mul_by_theta(&self) -> Self {
        let cyclo = self.ring.cyclo();
        let md = cyclo.modulus();
        let p = PadicInt::from_residue(md, md.prime() % md.value());
        let y = self.ring.degree_y();
        let mut components = Vec::with_capacity(y);
        components.push(self.components[y - 1].scale(&p).expect("same prime"));
        components.extend_from_slice(&self.components[..y - 1]);
        TowerElement {
            ring: self.ring.clone(),
            components,
        }
    }

    pub fn mul_by_pi(&self) -> Self {
        TowerElement {
            ring: self.ring.clone(),
            components: self.components.iter().map(|c| c.mul_by_pi()).collect(),
        }
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

    /// `min_{i,j} V(pi) i + V(theta) j + D ord_p(c_ij)`.
    ///
    /// Exact only when a single monomial with a certified coefficient attains
    /// the minimum; otherwise a lower bound.
    pub fn graded_val_bound(&self) -> Valuation {
        let r = &self.ring;
        let (vp, vt, d) = (r.v_pi(), r.v_theta(), r.v_p());
        let mut best: Option<i64> = None;
        let mut ties = 0usize;
        let mut best_certified = false;
        for (j, comp) in self.components.iter().enumerate() {
            for (i, c) in comp.coords().iter().enumerate() {
                let (k, certified) = match c.ord() {
                    PadicOrd::Finite(k) => (k, true),
                    PadicOrd::AtLeast(k) => (k, false),
                    PadicOrd::Infinite => continue,
                };
                let v = vp * i as i64 + vt * j as i64 + d * k as i64;
                match best {
                    Some(b) if v > b => {}
                    Some(b) if v == b => {
                        ties += 1;
                        best_certified = false;
                    }
                    _ => {
                        best = Some(v);
                        ties = 1;
                        best_certified = certified;
                    }
                }
            }
        }
        match best {
            None => Valuation::Infinite,
            Some(v) if ties == 1 && best_certified => Valuation::Exact(v),
            Some(v) => Valuation::AtLeast(v),
        }
    }

    /// Exact valuation through `ord_p` of the norm.
    ///
    /// The scalar `p`-content is divided out first, then the determinant of
    /// the `D x D` multiplication matrix in the basis `pi^i theta^j` is taken
    /// over `Z/p^N'` with `N'` the remaining precision.
    pub fn norm_valuation(&self) -> Result<Valuation> {
        if self.is_exact_zero() {
            return Ok(Valuation::Infinite);
        }
        let r = &self.ring;
        let cyclo = r.cyclo();
        let phi = r.degree_x();
        let y = r.degree_y();
        let d = r.degree();

        let coords: Vec<PadicInt> = self
            .components
            .iter()
            .flat_map(|c| c.coords().iter().copied())
            .collect();
        let content = coords
            .iter()
            .map(|c| c.ord().lower_bound())
            .min()
            .expect("non-empty");
        let work_precision = coords
            .iter()
            .filter(|c| !c.is_exact_zero())
            .map(|c| c.precision())
            .min()
            .expect("some coordinate is not the exact zero")
            .saturating_sub(content);
        if work_precision == 0 {
            return Err(Error::PrecisionExhausted {
                precision: r.precision(),
                lower_bound: content as i64 * r.v_p(),
                needed: None,
            });
        }
        let md = Modulus::new_unchecked_prime(r.prime(), work_precision)?;
        let mut base: Vec<u64> = coords
            .iter()
            .map(|c| {
                let c = c
                    .div_p_pow(content)
                    .expect("content divides every coordinate");
                c.residue() % md.value()
            })
            .collect();
        let a: Vec<u64> = cyclo
            .poly()
            .coeffs()
            .iter()
            .map(|c| c.residue() % md.value())
            .collect();
        let p_res = md.prime() % md.value();

        let mut matrix = ModMatrix::zeros(md, d);
        for j in 0..y {
            let mut col = base.clone();
            for i in 0..phi {
                let b = j * phi + i;
                for (row, &x) in col.iter().enumerate() {
                    matrix.set(row, b, x);
                }
                raw_mul_pi(&mut col, phi, &a, &md);
            }
            raw_mul_theta(&mut base, phi, p_res, &md);
        }
        let shift = content as i64 * r.v_p();
        match local_determinant(matrix) {
            Ok(det) => Ok(Valuation::Exact(det.valuation as i64 + shift)),
            Err(Error::PrecisionExhausted {
                lower_bound,
                needed,
                ..
            }) => Err(Error::PrecisionExhausted {
                precision: r.precision(),
                lower_bound: lower_bound + shift,
                needed,
            }),
            Err(e) => Err(e),
        }
    }
}

/// In-place multiplication by `pi` on raw coordinates laid out `j * phi + i`.
fn raw_mul_pi(v: &mut [u64], phi: usize, a: &[u64], md: &Modulus) {
    for comp in v.chunks_exact_mut(phi) {
        let top = comp[phi - 1];
        comp.copy_within(0..phi - 1, 1);
        comp[0] = 0;
        if top != 0 {
            for (x, &al) in comp.iter_mut().zip(a) {
                *x = md.sub(*x, md.mul(top, al));
            }
        }
    }
}

fn raw_mul_theta(v: &mut [u64], phi: usize, p: u64, md: &Modulus) {
    let len = v.len();
    v.rotate_right(phi);
    for x in &mut v[..phi] {
        *x = md.mul(*x, p);
    }
    debug_assert_eq!(v.len(), len);
}

/// Outcome of checking a recipe for the uniformizer property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniformizerCheck {
    pub v_numerator: Valuation,
    pub pi_shift: i64,
    pub theta_shift: i64,
    pub v_total: Valuation,
    pub precision_used: u32,
    pub is_uniformizer: bool,
}

/// `V(recipe) = V_norm(numerator) + pi_shift V(pi) + theta_shift V(theta)`;
/// a uniformizer has `V = 1`.
pub fn verify_uniformizer(recipe: &UniformizerRecipe) -> Result<UniformizerCheck> {
    let ring = TowerRing::new(
        recipe.prime,
        recipe.level,
        recipe.root_level,
        recipe.precision,
    )?;
    let numerator = recipe.numerator(&ring)?;
    let v_numerator = numerator.norm_valuation()?;
    let v_total =
        v_numerator + (recipe.pi_shift * ring.v_pi() + recipe.theta_shift * ring.v_theta());
    Ok(UniformizerCheck {
        v_numerator,
        pi_shift: recipe.pi_shift,
        theta_shift: recipe.theta_shift,
        v_total,
        precision_used: recipe.precision,
        is_uniformizer: v_total == Valuation::Exact(1),
    })
}

/// Result of expanding `s1^p` for the alternating numerator
/// `s1 = theta + pi^{p-1} + sum_t ((-1)^t/(t+1)) theta pi^t` in `K_{2,1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MirrorReport {
    pub prime: u64,
    /// `e = (2p - 3) p + 1`.
    pub exponent: i64,
    /// Cyclotomic valuation of the theta-free part of `s1^p`.
    pub degree0_valuation: Valuation,
    /// `v(c_0 + pi^e)`, required `>= e + 1`.
    pub degree0_residual: ResidualReport,
    /// Smallest tower valuation among the `theta^j` parts, `j >= 1`.
    pub cross_min_valuation: Valuation,
    /// Required strict lower bound `p e` for the cross terms.
    pub cross_bound: i64,
    /// Smallest `ord_p` among coefficients of the `theta^j` parts, `j >= 1`.
    pub cross_min_coeff_ord: u32,
    /// `V(s1^p) = p e = p (p-1)(2p-1)` when everything passes.
    pub certified_valuation: Option<i64>,
    pub pass: bool,
}

/// Checks `s1^p = -pi^e + (higher terms)` in `K_{2,1}` without denominators.
pub fn proof_mirror_check(p: u64, precision: u32) -> Result<MirrorReport> {
    let ring = TowerRing::new(p, 2, 1, precision)?;
    let cyclo = ring.cyclo();
    let md = cyclo.modulus();
    let theta = TowerElement::theta(&ring);

    let mut s1 = theta.try_add(&TowerElement::monomial(
        &ring,
        p as usize - 1,
        0,
        PadicInt::from_residue(md, 1),
    )?)?;
    for t in 1..p as i64 - 1 {
        let sign = if t % 2 == 0 { 1 } else { -1 };
        let c = PadicInt::rational_in(md, sign, t + 1)?;
        s1 = s1.try_add(&TowerElement::monomial(&ring, t as usize, 1, c)?)?;
    }
    let power = s1.pow(p);

    let e = ((2 * p - 3) * p + 1) as i64;
    let c0 = power.component(0);
    let degree0_valuation = c0.valuation();
    let residual = c0.try_add(&CycloElement::pi_pow(cyclo, e as usize))?;
    let rv = residual.valuation();
    let degree0_residual = match rv.certifies_at_least(e + 1) {
        Some(pass) => ResidualReport {
            valuation: rv,
            bound: e + 1,
            pass,
        },
        None => {
            return Err(Error::PrecisionExhausted {
                precision,
                lower_bound: rv.value().unwrap_or(i64::MAX),
                needed: Some(e + 1),
            })
        }
    };

    let cross_bound = p as i64 * e;
    let mut cross_min: Option<Valuation> = None;
    let mut cross_pass = true;
    let mut cross_min_coeff_ord = u32::MAX;
    for (j, comp) in power.components().iter().enumerate().skip(1) {
        let v = comp.valuation().scale(ring.v_pi()) + j as i64 * ring.v_theta();
        match v.certifies_at_least(cross_bound + 1) {
            Some(ok) => cross_pass &= ok,
            None => {
                return Err(Error::PrecisionExhausted {
                    precision,
                    lower_bound: v.value().unwrap_or(i64::MAX),
                    needed: Some(cross_bound + 1),
                })
            }
        }
        cross_min = Some(match (cross_min, v.value()) {
            (None, _) => v,
            (Some(cur), Some(x)) if cur.value().is_none_or(|c| x < c) => v,
            (Some(cur), _) => cur,
        });
        for c in comp.coords() {
            cross_min_coeff_ord = cross_min_coeff_ord.min(c.ord().lower_bound());
        }
    }
    let pass = degree0_residual.pass && cross_pass && degree0_valuation == Valuation::Exact(e);
    Ok(MirrorReport {
        prime: p,
        exponent: e,
        degree0_valuation,
        degree0_residual,
        cross_min_valuation: cross_min.unwrap_or(Valuation::Infinite),
        cross_bound,
        cross_min_coeff_ord,
        certified_valuation: pass.then_some(p as i64 * e),
        pass,
    })
}
