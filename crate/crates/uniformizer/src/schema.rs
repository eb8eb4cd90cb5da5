//! JSON report format.
//!
//! ```text
//! {
//!   "p": 3, "m": 2, "n": 1, "precision": 8,
//!   "recipe": {
//!     "pi_shift": -3, "theta_shift": 0, "label": "simplified",
//!     "terms": [{"theta_pow": 1, "pi_pow": 0, "coeff": "1"}, ...]
//!   },
//!   "checks": [{"name": "simplified", "pass": true, "valuation": 1, "exact": true}, ...],
//!   "notices": ["..."]
//! }
//! ```
//!
//! Coefficients are decimal strings holding the residue modulo `p^precision`,
//! so nothing is lost to floating point. `recipe`, `checks` and `notices` may
//! be absent or empty depending on the command.

use serde::{Deserialize, Serialize};
use uniformizer_core::{Error, PadicInt, RecipeLabel, RecipeTerm, UniformizerRecipe, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub p: u64,
    pub m: u32,
    pub n: u32,
    pub precision: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe: Option<RecipeJson>,
    #[serde(default)]
    pub checks: Vec<CheckJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notices: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeJson {
    pub pi_shift: i64,
    pub theta_shift: i64,
    #[serde(default = "custom_label")]
    pub label: String,
    pub terms: Vec<TermJson>,
}

fn custom_label() -> String {
    RecipeLabel::Custom.as_str().to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub theta_pow: u32,
    pub pi_pow: u32,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub pass: bool,
    /// Certified valuation, or the best lower bound when `exact` is false.
    pub valuation: Option<i64>,
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
}

impl CheckJson {
    pub fn from_valuation(name: &str, pass: bool, v: Option<Valuation>) -> Self {
        let (valuation, exact) = match v {
            Some(Valuation::Exact(x)) => (Some(x), true),
            Some(Valuation::AtLeast(x)) => (Some(x), false),
            Some(Valuation::Infinite) | None => (None, true),
        };
        CheckJson {
            name: name.to_string(),
            pass,
            valuation,
            exact,
            status: None,
        }
    }
}

impl RecipeJson {
    pub fn from_recipe(recipe: &UniformizerRecipe) -> Self {
        RecipeJson {
            pi_shift: recipe.pi_shift,
            theta_shift: recipe.theta_shift,
            label: recipe.label.as_str().to_string(),
            terms: recipe
                .terms
                .iter()
                .map(|t| TermJson {
                    theta_pow: t.theta_pow,
                    pi_pow: t.pi_pow,
                    coeff: t.coeff.residue().to_string(),
                })
                .collect(),
        }
    }

    /// Rebuilds the recipe in `K_{m,n}` at the given precision.
    pub fn to_recipe(
        &self,
        p: u64,
        m: u32,
        n: u32,
        precision: u32,
    ) -> Result<UniformizerRecipe, Error> {
        let label = RecipeLabel::parse(&self.label).ok_or(Error::InvalidRecipe("unknown label"))?;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(RecipeTerm {
                    theta_pow: t.theta_pow,
                    pi_pow: t.pi_pow,
                    coeff: parse_coeff(&t.coeff, p, precision)?,
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let recipe = UniformizerRecipe {
            prime: p,
            level: m,
            root_level: n,
            precision,
            pi_shift: self.pi_shift,
            theta_shift: self.theta_shift,
            terms,
            label,
        };
        recipe.validate()?;
        Ok(recipe)
    }
}

fn parse_coeff(s: &str, p: u64, precision: u32) -> Result<PadicInt, Error> {
    let bad = Error::InvalidRecipe("coefficient is not a decimal integer");
    let c = if let Some(rest) = s.strip_prefix('-') {
        let x: i64 = rest.parse().map_err(|_| bad)?;
        PadicInt::from_i64(p, precision, -x)?
    } else {
        let x: u64 = s.parse().map_err(|_| bad)?;
        PadicInt::new(p, precision, x)?
    };
    Ok(if c.residue() == 0 {
        PadicInt::exact_zero(p, precision)?
    } else {
        c
    })
}
