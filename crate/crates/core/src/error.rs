use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The prime is even, composite or smaller than 3.
    NotOddPrime(u64),
    /// `p^N` does not fit the 64-bit residue representation, or `N = 0`.
    UnsupportedPrecision { prime: u64, precision: u32 },
    /// Operands live over different primes.
    MismatchedPrimes(u64, u64),
    /// Inversion of an element with positive valuation.
    NonUnit,
    /// A rational whose denominator is divisible by p (or is zero).
    BadDenominator(i64),
    /// `binomial(n, k)` with `k > n`.
    BinomialRange { n: u64, k: u64 },
    /// A coefficient index outside `[1, phi(p^m) - 1]`.
    IndexOutOfRange { index: u64, upper: u64 },
    /// Operands belong to different rings.
    RingMismatch,
    /// Level parameters outside what an operation supports.
    UnsupportedLevel { m: u32, n: u32 },
    /// The requested certificate needs more p-adic digits than are carried.
    ///
    /// `lower_bound` is the best valuation bound that could be certified
    /// (in the units of the caller), `needed` the bound that was asked for.
    PrecisionExhausted {
        precision: u32,
        lower_bound: i64,
        needed: Option<i64>,
    },
    /// A malformed uniformizer recipe.
    InvalidRecipe(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotOddPrime(p) => write!(f, "p must be an odd prime (got {p})"),
            Error::UnsupportedPrecision { prime, precision } => write!(
                f,
                "precision {precision} is not supported for p = {prime} (need 1 <= N and p^N < 2^64)"
            ),
            Error::MismatchedPrimes(a, b) => write!(f, "mismatched primes {a} and {b}"),
            Error::NonUnit => write!(f, "element is not a unit"),
            Error::BadDenominator(d) => write!(f, "denominator {d} is not a p-adic unit"),
            Error::BinomialRange { n, k } => write!(f, "binomial({n}, {k}) requires k <= n"),
            Error::IndexOutOfRange { index, upper } => {
                write!(f, "index {index} outside [1, {upper}]")
            }
            Error::RingMismatch => write!(f, "operands belong to different rings"),
            Error::UnsupportedLevel { m, n } => {
                write!(f, "operation not supported for m = {m}, n = {n}")
            }
            Error::PrecisionExhausted {
                precision,
                lower_bound,
                needed,
            } => {
                write!(
                    f,
                    "precision exhausted at N = {precision}: only a lower bound {lower_bound} is certified"
                )?;
                if let Some(needed) = needed {
                    write!(f, " (need {needed})")?;
                }
                write!(f, "; raise N")
            }
            Error::InvalidRecipe(why) => write!(f, "invalid recipe: {why}"),
        }
    }
}

impl core::error::Error for Error {}
