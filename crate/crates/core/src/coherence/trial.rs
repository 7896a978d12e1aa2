use crate::coherence::report::{CheckResult, Family, Level, SuiteConfig};
use crate::error::{Error, Result};
use crate::hmod::ModuleMap;
use crate::linalg::{derive_seed, seeded_rng, SeededRng, Tolerance};

/// Collects the results of one randomized trial.
pub(crate) struct Trial {
    family: Family,
    seed: u64,
    tol: Tolerance,
    pub rng: SeededRng,
    dims: String,
    results: Vec<CheckResult>,
}

impl Trial {
    pub fn new(family: Family, cfg: &SuiteConfig, index: usize) -> Self {
        let seed = derive_seed(cfg.seed, &[family.code(), index as u64]);
        Self {
            family,
            seed,
            tol: cfg.tolerance,
            rng: seeded_rng(seed, 0),
            dims: String::new(),
            results: Vec::new(),
        }
    }

    pub fn set_dims(&mut self, dims: impl Into<String>) {
        self.dims = dims.into();
    }

    fn push(&mut self, id: &str, level: Level, value: Result<(f64, usize, usize)>) -> bool {
        let (residual, passed, error) = match value {
            Ok((r, rows, cols)) => (r, self.tol.accepts(r, rows, cols), None),
            Err(Error::NotEquivariant { defect }) => {
                (defect, false, Some(Error::NotEquivariant { defect }.to_string()))
            }
            Err(e) => (f64::INFINITY, false, Some(e.to_string())),
        };
        self.results.push(CheckResult {
            check_id: id.to_string(),
            family: self.family,
            level,
            instance_seed: self.seed,
            residual,
            passed,
            dims: self.dims.clone(),
            error,
        });
        passed
    }

    /// Records a scalar residual.
    pub fn record(&mut self, id: &str, level: Level, residual: Result<f64>) -> bool {
        self.push(id, level, residual.map(|r| (r, 0, 0)))
    }

    /// Records the distance between the two sides of a diagram.
    pub fn diagram(&mut self, id: &str, level: Level, sides: Result<(ModuleMap<f64>, ModuleMap<f64>)>) -> bool {
        let value = sides.and_then(|(lhs, rhs)| {
            let d = lhs.distance(&rhs)?;
            Ok((d, lhs.target().total_dim(), lhs.source().total_dim()))
        });
        self.push(id, level, value)
    }

    pub fn unitary(&mut self, id: &str, level: Level, map: Result<ModuleMap<f64>>) -> bool {
        let value = map.and_then(|u| {
            let r = u.unitarity_residual()?;
            Ok((r, u.source().total_dim(), u.source().total_dim()))
        });
        self.push(id, level, value)
    }

    /// Generator-level and extended evaluations of a diagram must agree in
    /// pass/fail.
    pub fn consistency(&mut self, item: &str, generator: bool, extended: bool) {
        let r = if generator == extended { 0.0 } else { 1.0 };
        self.push("lemma3.1-consistency", Level::Direct, Ok((r, 0, 0)));
        if let Some(last) = self.results.last_mut() {
            last.dims = format!("{} {}", item, last.dims);
        }
    }

    pub fn finish(self) -> Vec<CheckResult> {
        self.results
    }
}
