use std::fmt::Write as _;

use serde::Serialize;
use uniformizer_core::cyclotomic::{expansion_residual, CycloRing, MinimalPoly};
use uniformizer_core::lab::{
    build_alternating, build_simplified, build_viviani, search_exceptional_l, BSequence,
    SearchRange,
};
use uniformizer_core::tower::{proof_mirror_check, verify_uniformizer};
use uniformizer_core::{CaseTag, Error, UniformizerRecipe, Valuation};

use crate::schema::{CheckJson, RecipeJson, Report};
use crate::{Format, RunConfig};

pub const DEFAULT_PRECISION: u32 = 8;

/// Norm determinants of larger size need `--heavy`.
pub const HEAVY_DEGREE: u64 = 400;

/// Primes of the published table.
pub const TABLE_PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Verified,
    CheckFailed,
    PrecisionExhausted,
    Usage,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Verified => 0,
            Outcome::CheckFailed => 1,
            Outcome::PrecisionExhausted => 2,
            Outcome::Usage => 3,
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    pub fn message(&self) -> String {
        match self {
            Failure::Usage(s) => s.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }

    pub fn outcome(&self) -> Outcome {
        match self {
            Failure::Usage(_) => Outcome::Usage,
            Failure::Core(
                Error::NotOddPrime(_)
                | Error::UnsupportedPrecision { .. }
                | Error::UnsupportedLevel { .. },
            ) => Outcome::Usage,
            Failure::Core(Error::PrecisionExhausted { .. }) => Outcome::PrecisionExhausted,
            Failure::Core(_) => Outcome::CheckFailed,
        }
    }
}

/// Rendered command output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Done {
    pub stdout: String,
    pub stderr: String,
    pub outcome: Outcome,
}

impl Done {
    fn ok(stdout: String) -> Self {
        Done {
            stdout,
            stderr: String::new(),
            outcome: Outcome::Verified,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn table_report(p: u64, precision: u32) -> Result<(UniformizerRecipe, Report), Failure> {
    let recipe = build_simplified(p, precision)?;
    let report = Report {
        p,
        m: 2,
        n: 1,
        precision,
        recipe: Some(RecipeJson::from_recipe(&recipe)),
        checks: Vec::new(),
        notices: Vec::new(),
    };
    Ok((recipe, report))
}

pub fn table(config: &RunConfig) -> Result<Done, Failure> {
    if config.m != 2 || config.n != 1 {
        return Err(Failure::Usage(String::from(
            "table is defined for m = 2, n = 1 only",
        )));
    }
    let (recipe, report) = table_report(config.p, config.precision)?;
    Ok(Done::ok(match config.format {
        Format::Text => format!("{}\n", recipe.render_mod_p()),
        Format::Json => to_json(&report),
    }))
}

pub fn table_all(precision: u32, format: Format) -> Result<Done, Failure> {
    let mut text = String::new();
    let mut reports = Vec::new();
    for p in TABLE_PRIMES {
        let config = RunConfig::new(p, 2, 1, precision, format, false)?;
        let (recipe, report) = table_report(p, config.precision)?;
        let _ = writeln!(text, "p = {p}: {}", recipe.render_mod_p());
        reports.push(report);
    }
    Ok(Done::ok(match format {
        Format::Text => text,
        Format::Json => to_json(&reports),
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Exhausted,
}

struct CheckLine {
    name: &'static str,
    status: Status,
    valuation: Option<Valuation>,
    detail: String,
}

struct Suite {
    config: RunConfig,
    lines: Vec<CheckLine>,
    notices: Vec<String>,
}

impl Suite {
    fn record(
        &mut self,
        name: &'static str,
        result: Result<(bool, Option<Valuation>, String), Error>,
    ) -> Result<(), Failure> {
        let line = match result {
            Ok((pass, valuation, detail)) => CheckLine {
                name,
                status: if pass { Status::Pass } else { Status::Fail },
                valuation,
                detail,
            },
            Err(e @ Error::PrecisionExhausted { lower_bound, .. }) => {
                self.notices.push(format!("{name}: {e}"));
                CheckLine {
                    name,
                    status: Status::Exhausted,
                    valuation: Some(Valuation::AtLeast(lower_bound)),
                    detail: String::from("precision exhausted"),
                }
            }
            Err(e) => return Err(e.into()),
        };
        self.lines.push(line);
        Ok(())
    }

    /// Skips norm checks above the size limit unless `--heavy` is set.
    fn gated(&mut self, name: &str, degree: u64) -> bool {
        if degree > HEAVY_DEGREE && !self.config.heavy {
            self.notices.push(format!(
                "{name}: skipped norm determinant of size {degree} (limit {HEAVY_DEGREE}); pass --heavy to run it"
            ));
            return false;
        }
        true
    }

    fn uniformizer(
        &mut self,
        name: &'static str,
        recipe: Result<UniformizerRecipe, Error>,
    ) -> Result<(), Failure> {
        let result = recipe.and_then(|r| verify_uniformizer(&r)).map(|check| {
            (
                check.is_uniformizer,
                Some(check.v_total),
                format!("numerator V = {}", check.v_numerator),
            )
        });
        self.record(name, result)
    }
}

pub fn verify(config: &RunConfig) -> Result<Done, Failure> {
    let RunConfig {
        p, m, n, precision, ..
    } = *config;
    let mut suite = Suite {
        config: *config,
        lines: Vec::new(),
        notices: Vec::new(),
    };

    if m >= 2 {
        let result = MinimalPoly::new(p, m, 2)
            .and_then(|poly| poly.check_case_congruences())
            .map(|r| {
                let detail = format!("d = {}, {} indices", r.d, r.records.len());
                (r.all_pass(), None, detail)
            });
        suite.record("congruences", result)?;
    } else {
        suite.notices.push(String::from("congruences: need m >= 2"));
    }

    if m == 2 {
        let result = CycloRing::new(p, 2, precision).and_then(|ring| {
            let seq = BSequence::new(p, precision)?;
            let r = expansion_residual(&ring, &seq.values)?;
            Ok((r.pass, Some(r.valuation), format!("need >= {}", r.bound)))
        });
        suite.record("expansion-residual", result)?;
    }

    if m == 2 && n == 1 {
        let result = proof_mirror_check(p, precision).map(|r| {
            let detail = format!("exponent {}, cross terms >= {}", r.exponent, r.cross_bound);
            (r.pass, r.certified_valuation.map(Valuation::Exact), detail)
        });
        suite.record("proof-mirror", result)?;

        let degree = (p - 1) * p * p;
        if suite.gated("alternating", degree) {
            suite.uniformizer("alternating", build_alternating(p, precision))?;
        }
        if suite.gated("simplified", degree) {
            suite.uniformizer("simplified", build_simplified(p, precision))?;
        }
    } else {
        suite.notices.push(String::from(
            "alternating and simplified recipes live in m = 2, n = 1; skipped",
        ));
    }

    let degree = (p - 1) * p.pow(n);
    if suite.gated("viviani", degree) {
        suite.uniformizer("viviani", build_viviani(p, n, precision))?;
    }

    let outcome = if suite.lines.iter().any(|l| l.status == Status::Fail) {
        Outcome::CheckFailed
    } else if suite.lines.iter().any(|l| l.status == Status::Exhausted) {
        Outcome::PrecisionExhausted
    } else {
        Outcome::Verified
    };
    let stderr = if outcome == Outcome::PrecisionExhausted {
        format!("precision N = {precision} is not enough to certify every check; raise N\n")
    } else {
        String::new()
    };

    let stdout = match config.format {
        Format::Text => {
            let mut s = format!("p = {p}, m = {m}, n = {n}, N = {precision}\n");
            for line in &suite.lines {
                let status = match line.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Exhausted => "EXHAUSTED",
                };
                let v = line
                    .valuation
                    .map(|v| match v {
                        Valuation::AtLeast(x) => format!("V >= {x}, "),
                        v => format!("V = {v}, "),
                    })
                    .unwrap_or_default();
                let _ = writeln!(s, "{:<20}{:<11}{}{}", line.name, status, v, line.detail);
            }
            for notice in &suite.notices {
                let _ = writeln!(s, "notice: {notice}");
            }
            s
        }
        Format::Json => {
            let recipe = if m == 2 && n == 1 {
                build_simplified(p, precision)?
            } else {
                build_viviani(p, n, precision)?
            };
            let report = Report {
                p,
                m,
                n,
                precision,
                recipe: Some(RecipeJson::from_recipe(&recipe)),
                checks: suite
                    .lines
                    .iter()
                    .map(|l| {
                        let mut c = CheckJson::from_valuation(
                            l.name,
                            l.status == Status::Pass,
                            l.valuation,
                        );
                        if l.status == Status::Exhausted {
                            c.status = Some(String::from("precision-exhausted"));
                        }
                        c
                    })
                    .collect(),
                notices: suite.notices,
            };
            to_json(&report)
        }
    };
    Ok(Done {
        stdout,
        stderr,
        outcome,
    })
}

#[derive(Serialize)]
struct SearchJson {
    p: u64,
    m: u32,
    d: u64,
    scanned_to: u64,
    hits: Vec<HitJson>,
}

#[derive(Serialize)]
struct HitJson {
    ell: u64,
    ord_p: u32,
}

pub fn search(config: &RunConfig, full_range: bool) -> Result<Done, Failure> {
    let range = if full_range {
        SearchRange::Full
    } else {
        SearchRange::BelowThreshold
    };
    let report = search_exceptional_l(config.p, config.m, range)?;
    Ok(Done::ok(match config.format {
        Format::Text => {
            if report.hits.is_empty() {
                format!(
                    "no ℓ with p‖a_ℓ and p∤ℓ (scanned 1 ≤ ℓ < {})\n",
                    report.scanned_to
                )
            } else {
                let ells: Vec<String> = report.hits.iter().map(|h| h.ell.to_string()).collect();
                let mut s = format!("[{}]\n", ells.join(", "));
                for h in &report.hits {
                    let _ = writeln!(s, "ℓ = {}: ord_p(a_ℓ) = {}", h.ell, h.ord_p);
                }
                s
            }
        }
        Format::Json => to_json(&SearchJson {
            p: report.prime,
            m: report.level,
            d: report.d,
            scanned_to: report.scanned_to,
            hits: report
                .hits
                .iter()
                .map(|h| HitJson {
                    ell: h.ell,
                    ord_p: h.ord_p,
                })
                .collect(),
        }),
    }))
}

#[derive(Serialize)]
struct CoeffsJson {
    p: u64,
    m: u32,
    d: u64,
    records: Vec<CoeffJson>,
}

#[derive(Serialize)]
struct CoeffJson {
    ell: u64,
    case: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<u64>,
    a: String,
    ord_p: Option<u32>,
    residue_mod_p2: u64,
    expected_mod_p2: Option<u64>,
    pass: bool,
}

pub fn coeffs(config: &RunConfig) -> Result<Done, Failure> {
    let poly = MinimalPoly::new(config.p, config.m, 2)?;
    let report = poly.check_case_congruences()?;
    let outcome = if report.all_pass() {
        Outcome::Verified
    } else {
        Outcome::CheckFailed
    };
    let stdout = match config.format {
        Format::Text => {
            let mut s = format!(
                "p = {}, m = {}, d = {}\n",
                report.prime, report.level, report.d
            );
            let _ = writeln!(
                s,
                "{:>5}  {:<6} {:>5}  {:>8}  {:>8}  pass  a_l",
                "l", "case", "ord", "mod p^2", "expected"
            );
            for r in &report.records {
                let case = match r.tag {
                    CaseTag::CaseII { t } => format!("ii t={t}"),
                    tag => tag.name().to_string(),
                };
                let ord = r.ord_p.map_or(String::from("inf"), |o| o.to_string());
                let expected = r
                    .expected_mod_p2
                    .map_or(String::from("-"), |e| e.to_string());
                let _ = writeln!(
                    s,
                    "{:>5}  {:<6} {:>5}  {:>8}  {:>8}  {:<4}  {}",
                    r.ell,
                    case,
                    ord,
                    r.residue_mod_p2,
                    expected,
                    if r.pass { "yes" } else { "NO" },
                    poly.a(r.ell as usize)
                );
            }
            s
        }
        Format::Json => to_json(&CoeffsJson {
            p: report.prime,
            m: report.level,
            d: report.d,
            records: report
                .records
                .iter()
                .map(|r| CoeffJson {
                    ell: r.ell,
                    case: r.tag.name(),
                    t: match r.tag {
                        CaseTag::CaseII { t } => Some(t),
                        _ => None,
                    },
                    a: poly.a(r.ell as usize).to_string(),
                    ord_p: r.ord_p,
                    residue_mod_p2: r.residue_mod_p2,
                    expected_mod_p2: r.expected_mod_p2,
                    pass: r.pass,
                })
                .collect(),
        }),
    };
    Ok(Done {
        stdout,
        stderr: String::new(),
        outcome,
    })
}
