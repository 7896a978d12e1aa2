use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Tolerance;

/// Groups of checks that are run and summarized together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Sqrt,
    Section3,
    Projection,
    BaseChange,
    Mixed,
    Involutive,
    Fell,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Sqrt,
        Family::Section3,
        Family::Projection,
        Family::BaseChange,
        Family::Mixed,
        Family::Involutive,
        Family::Fell,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Sqrt => "sqrt",
            Family::Section3 => "section3",
            Family::Projection => "projection",
            Family::BaseChange => "base-change",
            Family::Mixed => "mixed",
            Family::Involutive => "involutive",
            Family::Fell => "fell",
        }
    }

    pub(crate) fn code(self) -> u64 {
        Family::ALL.iter().position(|&f| f == self).expect("listed") as u64 + 1
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| {
            let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
            format!("unknown check family {s:?}; expected one of {}", names.join(", "))
        })
    }
}

/// Where a diagram was evaluated: at the `L²` generators, at random modules,
/// or (for checks without a module argument) directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    Generator,
    Extended,
    Direct,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Generator => "generator",
            Level::Extended => "extended",
            Level::Direct => "direct",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub family: Family,
    pub level: Level,
    pub instance_seed: u64,
    /// Frobenius residual; infinite when the diagram could not be evaluated.
    #[serde(with = "residual_serde")]
    pub residual: f64,
    pub passed: bool,
    pub dims: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_atoms: usize,
    pub max_fiber_dim: usize,
    pub tolerance: Tolerance,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 200,
            max_atoms: 5,
            max_fiber_dim: 3,
            tolerance: Tolerance::new(1e-9).expect("positive"),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 || self.max_atoms == 0 || self.max_fiber_dim == 0 {
            return Err(Error::Dimension("trials and size bounds must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySummary {
    pub family: Family,
    pub checks: usize,
    pub failures: usize,
    #[serde(with = "residual_serde")]
    pub max_residual: f64,
}

/// All results of a run, in a deterministic order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoherenceReport {
    pub config: SuiteConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mutation: Option<String>,
    pub summaries: Vec<FamilySummary>,
    pub results: Vec<CheckResult>,
}

impl CoherenceReport {
    pub fn new(config: SuiteConfig, mutation: Option<String>, results: Vec<CheckResult>) -> Self {
        let mut summaries: Vec<FamilySummary> = Vec::new();
        for r in &results {
            let s = match summaries.iter_mut().find(|s| s.family == r.family) {
                Some(s) => s,
                None => {
                    summaries.push(FamilySummary {
                        family: r.family,
                        checks: 0,
                        failures: 0,
                        max_residual: 0.0,
                    });
                    summaries.last_mut().expect("just pushed")
                }
            };
            s.checks += 1;
            if !r.passed {
                s.failures += 1;
            }
            if r.residual > s.max_residual || r.residual.is_nan() {
                s.max_residual = r.residual;
            }
        }
        summaries.sort_by_key(|s| s.family);
        Self {
            config,
            mutation,
            summaries,
            results,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed)
    }

    /// Largest residual among results with this check id.
    pub fn max_residual(&self, check_id: &str) -> Option<f64> {
        self.results
            .iter()
            .filter(|r| r.check_id == check_id)
            .map(|r| r.residual)
            .fold(None, |acc, x| Some(acc.map_or(x, |a: f64| a.max(x))))
    }

    pub fn count(&self, check_id: &str) -> usize {
        self.results.iter().filter(|r| r.check_id == check_id).count()
    }

    pub fn summary(&self, family: Family) -> Option<&FamilySummary> {
        self.summaries.iter().find(|s| s.family == family)
    }

    /// One line per family plus one per failed check.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "seed {} trials {} max-atoms {} max-fiber-dim {} tolerance {:e}\n",
            self.config.seed,
            self.config.trials,
            self.config.max_atoms,
            self.config.max_fiber_dim,
            self.config.tolerance.abs_eps()
        );
        if let Some(m) = &self.mutation {
            out.push_str(&format!("mutation {m}\n"));
        }
        for s in &self.summaries {
            out.push_str(&format!(
                "{:<12} {:>6} checks {:>5} failed  max residual {:.3e}\n",
                s.family.name(),
                s.checks,
                s.failures,
                s.max_residual
            ));
        }
        for r in self.failures() {
            out.push_str(&format!(
                "FAIL {} [{}] seed {} residual {:.3e} dims {}{}\n",
                r.check_id,
                r.level,
                r.instance_seed,
                r.residual,
                r.dims,
                r.error.as_ref().map(|e| format!(" ({e})")).unwrap_or_default()
            ));
        }
        out.push_str(if self.all_passed() {
            "all checks passed\n"
        } else {
            "some checks failed\n"
        });
        out
    }
}

/// Wall-clock time per family, kept out of the report so that reports stay
/// deterministic.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub seconds: Vec<(Family, f64)>,
}

impl Timings {
    pub fn to_text(&self) -> String {
        self.seconds
            .iter()
            .map(|(f, s)| format!("{:<12} {:.3}s\n", f.name(), s))
            .collect()
    }
}

/// Residuals as JSON numbers, with `"inf"` and `"nan"` for the values JSON
/// cannot represent.
mod residual_serde {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_nan() {
            s.serialize_str("nan")
        } else if x.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*x)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Number(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Number(x) => Ok(x),
            Repr::Text(t) if t == "inf" => Ok(f64::INFINITY),
            Repr::Text(t) if t == "nan" => Ok(f64::NAN),
            Repr::Text(t) => Err(de::Error::custom(format!("expected a residual, found {t:?}"))),
        }
    }
}
