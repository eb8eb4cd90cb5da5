//! Uniformizer constructions for `K_{2,1}` and `K_{1,n}`, the `B_t`
//! recurrence, and the search for indices `l` with `p || a_l`, `p !| l`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::cyclotomic::{threshold_d, MinimalPoly};
use crate::error::{Error, Result};
use crate::padic::{check_odd_prime, ord_biguint, Modulus, PadicInt};
use crate::tower::{TowerElement, TowerRing};

/// `[b_1, ..., b_{p-2}]` with `b_t = (-1)^{t+1} / (t+1)`.
pub fn b_coefficients(p: u64, precision: u32) -> Result<Vec<PadicInt>> {
    let md = Modulus::new(p, precision)?;
    (1..p as i64 - 1)
        .map(|t| {
            let sign = if t % 2 == 1 { 1 } else { -1 };
            PadicInt::rational_in(md, sign, t + 1)
        })
        .collect()
}

/// `B_0 = 1`, `B_n = sum_{k=1}^n b_k B_{n-k}` for `n <= p - 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BSequence {
    pub prime: u64,
    pub values: Vec<PadicInt>,
    /// Reductions modulo `p`, the form printed in tables.
    pub values_mod_p: Vec<u64>,
}

impl BSequence {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        let b = b_coefficients(p, precision)?;
        let values = recurrence(&b, PadicInt::one(p, precision)?);
        let values_mod_p = values.iter().map(|v| v.mod_p()).collect();
        Ok(BSequence {
            prime: p,
            values,
            values_mod_p,
        })
    }

    /// Recomputes the recurrence from freshly built `b_t` and compares.
    pub fn recurrence_holds(&self) -> bool {
        let Some(first) = self.values.first() else {
            return false;
        };
        let Ok(b) = b_coefficients(self.prime, first.precision()) else {
            return false;
        };
        if first.residue() != 1 {
            return false;
        }
        (1..self.values.len()).all(|n| {
            let sum = (1..=n).fold(PadicInt::exact_zero_in(first.modulus()), |acc, k| {
                acc.add_same_prime(&b[k - 1].mul_same_prime(&self.values[n - k]))
            });
            sum == self.values[n]
        })
    }
}

fn recurrence(b: &[PadicInt], one: PadicInt) -> Vec<PadicInt> {
    let mut values = Vec::with_capacity(b.len() + 1);
    values.push(one);
    for n in 1..=b.len() {
        let mut acc = PadicInt::exact_zero_in(one.modulus());
        for k in 1..=n {
            acc = acc.add_same_prime(&b[k - 1].mul_same_prime(&values[n - k]));
        }
        values.push(acc);
    }
    values
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RecipeLabel {
    Alternating,
    Simplified,
    Viviani,
    Custom,
}

impl RecipeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            RecipeLabel::Alternating => "alternating",
            RecipeLabel::Simplified => "simplified",
            RecipeLabel::Viviani => "viviani",
            RecipeLabel::Custom => "custom",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "alternating" => RecipeLabel::Alternating,
            "simplified" => RecipeLabel::Simplified,
            "viviani" => RecipeLabel::Viviani,
            "custom" => RecipeLabel::Custom,
            _ => return None,
        })
    }
}

/// `coeff * theta^theta_pow * pi^pi_pow`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecipeTerm {
    pub theta_pow: u32,
    pub pi_pow: u32,
    pub coeff: PadicInt,
}

/// `pi^pi_shift * theta^theta_shift * (sum of terms)` in `K_{m,n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformizerRecipe {
    pub prime: u64,
    pub level: u32,
    pub root_level: u32,
    pub precision: u32,
    pub pi_shift: i64,
    pub theta_shift: i64,
    pub terms: Vec<RecipeTerm>,
    pub label: RecipeLabel,
}

impl UniformizerRecipe {
    /// Checks parameters and that every term lies in the monomial basis.
    pub fn validate(&self) -> Result<()> {
        check_odd_prime(self.prime)?;
        if self.level == 0 || self.root_level == 0 {
            return Err(Error::UnsupportedLevel {
                m: self.level,
                n: self.root_level,
            });
        }
        Modulus::new(self.prime, self.precision)?;
        let phi = self.prime.pow(self.level - 1) * (self.prime - 1);
        let y = self.prime.pow(self.root_level);
        for t in &self.terms {
            if t.coeff.prime() != self.prime {
                return Err(Error::MismatchedPrimes(t.coeff.prime(), self.prime));
            }
            if t.pi_pow as u64 >= phi || t.theta_pow as u64 >= y {
                return Err(Error::InvalidRecipe(
                    "term power outside the monomial basis",
                ));
            }
        }
        Ok(())
    }

    /// The integral numerator as a tower element.
    pub fn numerator(&self, ring: &Arc<TowerRing>) -> Result<TowerElement> {
        self.validate()?;
        if ring.prime() != self.prime
            || ring.level() != self.level
            || ring.root_level() != self.root_level
        {
            return Err(Error::RingMismatch);
        }
        let mut acc = TowerElement::zero(ring);
        for t in &self.terms {
            let term =
                TowerElement::monomial(ring, t.pi_pow as usize, t.theta_pow as usize, t.coeff)?;
            acc = acc.try_add(&term)?;
        }
        Ok(acc)
    }

    /// Text form with coefficients reduced modulo `p`, zero terms omitted,
    /// e.g. `pi^-3 ( 3^(1/3) + pi^2 + 2 pi^3 )`.
    pub fn render_mod_p(&self) -> String {
        let p = self.prime;
        let y = p.pow(self.root_level);
        let mut out = String::new();
        if self.pi_shift != 0 {
            let _ = write!(out, "pi^{} ", self.pi_shift);
        }
        if self.theta_shift != 0 {
            let _ = write!(out, "{p}^({}/{y}) ", self.theta_shift);
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .filter(|t| t.coeff.mod_p() != 0)
            .map(|t| {
                let mut factors: Vec<String> = Vec::new();
                let c = t.coeff.mod_p();
                if c != 1 {
                    factors.push(format!("{c}"));
                }
                if t.theta_pow > 0 {
                    factors.push(format!("{p}^({}/{y})", t.theta_pow));
                }
                match t.pi_pow {
                    0 => {}
                    1 => factors.push(String::from("pi")),
                    k => factors.push(format!("pi^{k}")),
                }
                if factors.is_empty() {
                    factors.push(String::from("1"));
                }
                factors.join(" ")
            })
            .collect();
        let _ = write!(out, "( {} )", parts.join(" + "));
        out
    }

    /// `(pi_pow, coeff mod p)` of the theta-free terms with nonzero reduction.
    pub fn pi_terms_mod_p(&self) -> Vec<(u32, u64)> {
        self.terms
            .iter()
            .filter(|t| t.theta_pow == 0 && t.coeff.mod_p() != 0)
            .map(|t| (t.pi_pow, t.coeff.mod_p()))
            .collect()
    }
}

fn k21_recipe(
    p: u64,
    precision: u32,
    label: RecipeLabel,
    terms: Vec<RecipeTerm>,
) -> UniformizerRecipe {
    UniformizerRecipe {
        prime: p,
        level: 2,
        root_level: 1,
        precision,
        pi_shift: -(2 * p as i64 - 3),
        theta_shift: 0,
        terms,
        label,
    }
}

/// `pi^{3-2p} (theta + pi^{p-1} + sum_{t=1}^{p-2} ((-1)^t/(t+1)) theta pi^t)`.
pub fn build_alternating(p: u64, precision: u32) -> Result<UniformizerRecipe> {
    let md = Modulus::new(p, precision)?;
    let one = PadicInt::from_residue(md, 1);
    let mut terms = Vec::with_capacity(p as usize);
    terms.push(RecipeTerm {
        theta_pow: 1,
        pi_pow: 0,
        coeff: one,
    });
    terms.push(RecipeTerm {
        theta_pow: 0,
        pi_pow: p as u32 - 1,
        coeff: one,
    });
    for t in 1..p as i64 - 1 {
        let sign = if t % 2 == 0 { 1 } else { -1 };
        terms.push(RecipeTerm {
            theta_pow: 1,
            pi_pow: t as u32,
            coeff: PadicInt::rational_in(md, sign, t + 1)?,
        });
    }
    Ok(k21_recipe(p, precision, RecipeLabel::Alternating, terms))
}

/// `pi^{3-2p} (theta + sum_{t=0}^{p-2} B_t pi^{t+p-1})`.
pub fn build_simplified(p: u64, precision: u32) -> Result<UniformizerRecipe> {
    let seq = BSequence::new(p, precision)?;
    let mut terms = Vec::with_capacity(p as usize);
    terms.push(RecipeTerm {
        theta_pow: 1,
        pi_pow: 0,
        coeff: PadicInt::one(p, precision)?,
    });
    for (t, b) in seq.values.iter().enumerate() {
        terms.push(RecipeTerm {
            theta_pow: 0,
            pi_pow: (t + p as usize - 1) as u32,
            coeff: *b,
        });
    }
    Ok(k21_recipe(p, precision, RecipeLabel::Simplified, terms))
}

/// `(1 - zeta_p) / (p^{1/p} ... p^{1/p^n})` in `K_{1,n}`, with the
/// denominator written as `theta^{1 + p + ... + p^{n-1}}`.
pub fn build_viviani(p: u64, n: u32, precision: u32) -> Result<UniformizerRecipe> {
    if n == 0 {
        return Err(Error::UnsupportedLevel { m: 1, n });
    }
    let md = Modulus::new(p, precision)?;
    let exponent: i64 = (0..n).map(|i| p.pow(i) as i64).sum();
    Ok(UniformizerRecipe {
        prime: p,
        level: 1,
        root_level: n,
        precision,
        pi_shift: 0,
        theta_shift: -exponent,
        terms: alloc::vec![RecipeTerm {
            theta_pow: 0,
            pi_pow: 1,
            coeff: PadicInt::from_residue(md, md.neg(1)),
        }],
        label: RecipeLabel::Viviani,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchRange {
    /// `1 <= l <= d - 1`, the indices that survive modulo `pi^d`.
    BelowThreshold,
    /// `1 <= l <= phi(p^m) - 1`.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExceptionalIndex {
    pub ell: u64,
    /// `ord_p(a_l)` from the exact coefficient; always 1 for a hit.
    pub ord_p: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub prime: u64,
    pub level: u32,
    pub d: u64,
    /// Scanned indices are `1..scanned_to` (exclusive).
    pub scanned_to: u64,
    pub hits: Vec<ExceptionalIndex>,
}

/// All scanned `l` with `ord_p(a_l) = 1` and `p !| l`.
///
/// An empty result only speaks for the scanned range.
pub fn search_exceptional_l(p: u64, m: u32, range: SearchRange) -> Result<SearchReport> {
    let d = threshold_d(p, m)?;
    let poly = MinimalPoly::new(p, m, 1)?;
    let scanned_to = match range {
        SearchRange::BelowThreshold => d,
        SearchRange::Full => poly.degree() as u64,
    };
    let hits = (1..scanned_to)
        .filter(|l| l % p != 0)
        .filter_map(|l| match ord_biguint(p, poly.a(l as usize)) {
            Some(1) => Some(ExceptionalIndex { ell: l, ord_p: 1 }),
            _ => None,
        })
        .collect();
    Ok(SearchReport {
        prime: p,
        level: m,
        d,
        scanned_to,
        hits,
    })
}
