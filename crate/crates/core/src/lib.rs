//! Exact arithmetic for explicit uniformizers of the totally ramified
//! extension `K_{m,n} = Q_p(zeta_{p^m}, p^{1/p^n})`.
//!
//! The crate is `no_std` (it needs `alloc`) and is organized bottom-up:
//!
//! * [`padic`]: truncated p-adic integers `Z/p^N` with precision tracking,
//!   plus exact binomial coefficients.
//! * [`cyclotomic`]: the integral model `Z_p[x]/(f)` of `Q_p(zeta_{p^m})`,
//!   where `f` is the minimal polynomial of `pi = zeta_{p^m} - 1`, together
//!   with the congruences satisfied by its coefficients.
//! * [`localdet`]: determinants over the local ring `Z/p^N`.
//! * [`tower`]: the integral model of `K_{m,n}` and two valuation routes
//!   (graded lower bound, norm determinant).
//! * [`lab`]: the B_t recurrence, uniformizer recipes and the search for
//!   exceptional coefficient indices at higher levels.
//!
//! All values are immutable once built and every operation is a pure
//! function, so everything here is `Send + Sync`.

#![no_std]

extern crate alloc;

pub mod cyclotomic;
pub mod error;
pub mod lab;
pub mod localdet;
pub mod padic;
pub mod tower;
pub mod valuation;

pub use cyclotomic::{CaseTag, CycloElement, CycloRing, MinimalPoly};
pub use error::{Error, Result};
pub use lab::{BSequence, RecipeLabel, RecipeTerm, UniformizerRecipe};
pub use padic::{PadicInt, PadicOrd};
pub use tower::{TowerElement, TowerRing};
pub use valuation::Valuation;
