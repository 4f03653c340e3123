//! Scenario configuration (JSON, schema version 1, unknown keys rejected).

use std::path::Path;

use chowline_core::exact::{parse_rational, Rational};
use chowline_core::toric::{EquationSpec, ScanGrid, ToricPair};
use serde::{Deserialize, Serialize};

use crate::formats::{ArcJson, ComplexMatrixJson, PLJson, PolytopeJson};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub schema_version: u32,
    pub scenario: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub geometry: Geometry,
    pub equation: EquationConfig,
    #[serde(default)]
    pub numeric: NumericConfig,
    #[serde(default)]
    pub stability: StabilityConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Geometry {
    pub toric: ToricGeometry,
    pub p1: P1Geometry,
}

/// Polarizations `P_L`, `P_H` and an optional model on `P_L`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricGeometry {
    pub pl: PolytopeJson,
    pub ph: PolytopeJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<PLJson>,
}

/// `L = O(a)`, `H = O(b)` on the projective line, exponent `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct P1Geometry {
    pub a: usize,
    pub b: usize,
    pub m: usize,
    /// Group element on `H⁰(O(ma))`; identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<ComplexMatrixJson>,
    /// Arc on `H⁰(O(ma))` for `p1 slope`; identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arc: Option<ArcJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationConfig {
    pub n: usize,
    pub c: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NumericConfig {
    /// `N_radial = N_angular` for quadrature on the area transform.
    pub grid: usize,
    /// Largest grid of the change-of-metric refinement sequence.
    pub verify_grid: usize,
    pub mc_samples: usize,
    /// Inclusive range of `j` in `|z| = 2^{−j}`.
    pub ladder: [u32; 2],
    pub scan: ScanConfig,
}

impl Default for NumericConfig {
    fn default() -> Self {
        Self { grid: 256, verify_grid: 2048, mc_samples: 100_000, ladder: [4, 12], scan: ScanConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScanConfig {
    pub c_values: Vec<String>,
    pub random_models: usize,
    pub max_pieces: usize,
    pub grad_bound: i64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            c_values: vec!["1/4".into(), "1/2".into(), "3/4".into()],
            random_models: 8,
            max_pieces: 3,
            grad_bound: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StabilityConfig {
    pub epsilon: String,
    pub valuation_bound: i64,
    pub t_degree_bound: i64,
    pub arc_count: usize,
}

impl Default for StabilityConfig {
    fn default() -> Self {
        Self { epsilon: "0".into(), valuation_bound: 2, t_degree_bound: 2, arc_count: 200 }
    }
}

fn rational(field: &str, s: &str) -> Result<Rational, ConfigError> {
    parse_rational(s).map_err(|e| invalid(format!("{field}: {s:?} is not a rational ({e})")))
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks everything that does not depend on which command runs.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(invalid(format!("schema_version {} is not supported (expected {SCHEMA_VERSION})", self.schema_version)));
        }
        let p1 = &self.geometry.p1;
        if p1.a == 0 || p1.b == 0 || p1.m == 0 {
            return Err(invalid("geometry.p1: a, b and m must be positive"));
        }
        let n = p1.m * p1.a + 1;
        if let Some(s) = &p1.sigma {
            let g = s.to_matrix().map_err(|e| invalid(format!("geometry.p1.sigma: {e}")))?;
            if g.nrows() != n {
                return Err(invalid(format!("geometry.p1.sigma must be {n}x{n}")));
            }
        }
        if let Some(a) = &p1.arc {
            let rho = a.to_arc().map_err(|e| invalid(format!("geometry.p1.arc: {e}")))?;
            if rho.size() != n {
                return Err(invalid(format!("geometry.p1.arc must be {n}x{n}")));
            }
        }
        self.toric_pair()?;
        self.model()?;
        self.equation()?;
        let num = &self.numeric;
        if num.grid == 0 || num.verify_grid < 64 {
            return Err(invalid("numeric: grid must be positive and verify_grid at least 64"));
        }
        if num.ladder[0] == 0 || num.ladder[1] <= num.ladder[0] {
            return Err(invalid("numeric.ladder must be [j_min, j_max] with 0 < j_min < j_max"));
        }
        for c in &num.scan.c_values {
            rational("numeric.scan.c_values", c)?;
        }
        if num.scan.max_pieces == 0 || num.scan.grad_bound < 0 {
            return Err(invalid("numeric.scan: max_pieces must be positive and grad_bound nonnegative"));
        }
        let eps = self.epsilon()?;
        if eps < Rational::from_integer(0.into()) {
            return Err(invalid("stability.epsilon must be nonnegative"));
        }
        let st = &self.stability;
        if st.valuation_bound < 1 || st.t_degree_bound < 1 {
            return Err(invalid("stability: bounds must be at least 1"));
        }
        Ok(())
    }

    pub fn toric_pair(&self) -> Result<ToricPair, ConfigError> {
        let t = &self.geometry.toric;
        let pl = t.pl.to_polytope().map_err(|e| invalid(format!("geometry.toric.pl: {e}")))?;
        let ph = t.ph.to_polytope().map_err(|e| invalid(format!("geometry.toric.ph: {e}")))?;
        ToricPair::new(pl, ph).map_err(|e| invalid(format!("geometry.toric: {e}")))
    }

    pub fn model(&self) -> Result<Option<chowline_core::toric::PLConcave>, ConfigError> {
        let pair = self.toric_pair()?;
        self.geometry
            .toric
            .model
            .as_ref()
            .map(|m| m.to_pl(pair.pl()).map_err(|e| invalid(format!("geometry.toric.model: {e}"))))
            .transpose()
    }

    pub fn equation(&self) -> Result<EquationSpec, ConfigError> {
        let c = self.equation.c.iter().map(|s| rational("equation.c", s)).collect::<Result<Vec<_>, _>>()?;
        EquationSpec::new(self.equation.n, c).map_err(|e| invalid(format!("equation: {e}")))
    }

    pub fn epsilon(&self) -> Result<Rational, ConfigError> {
        rational("stability.epsilon", &self.stability.epsilon)
    }

    pub fn scan_grid(&self, seed: u64) -> Result<ScanGrid, ConfigError> {
        let s = &self.numeric.scan;
        Ok(ScanGrid {
            c_values: s.c_values.iter().map(|c| rational("numeric.scan.c_values", c)).collect::<Result<_, _>>()?,
            epsilon: self.epsilon()?,
            random_models: s.random_models,
            max_pieces: s.max_pieces,
            grad_bound: s.grad_bound,
            seed,
        })
    }

    pub fn ladder(&self) -> Vec<u32> {
        (self.numeric.ladder[0]..=self.numeric.ladder[1]).collect()
    }

    /// Seed for stochastic work: the override if given, else the config
    /// value. Missing both is a configuration error.
    pub fn require_seed(&self, cli: Option<u64>, what: &str) -> Result<u64, ConfigError> {
        cli.or(self.seed).ok_or_else(|| invalid(format!("{what} is stochastic and needs a seed (config `seed` or --seed)")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "schema_version": 1,
        "scenario": "t",
        "geometry": {
            "toric": {"pl": {"dim": 1, "vertices": [["0"], ["1"]]}, "ph": {"dim": 1, "vertices": [["0"], ["1"]]}},
            "p1": {"a": 1, "b": 1, "m": 1}
        },
        "equation": {"n": 1, "c": ["1"]}
    }"#;

    #[test]
    fn defaults_fill_in() {
        let cfg = ScenarioConfig::from_json(MINIMAL).unwrap();
        assert_eq!(cfg.numeric.grid, 256);
        assert_eq!(cfg.stability.arc_count, 200);
        assert_eq!(cfg.ladder(), (4..=12).collect::<Vec<_>>());
        assert!(cfg.require_seed(None, "x").is_err());
        assert_eq!(cfg.require_seed(Some(3), "x").unwrap(), 3);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        let typo = MINIMAL.replace("\"scenario\"", "\"scenaria\"");
        assert!(matches!(ScenarioConfig::from_json(&typo), Err(ConfigError::Parse(_))));
        let zero = MINIMAL.replace("\"a\": 1", "\"a\": 0");
        assert!(matches!(ScenarioConfig::from_json(&zero), Err(ConfigError::Invalid(_))));
        let version = MINIMAL.replace("\"schema_version\": 1", "\"schema_version\": 2");
        assert!(ScenarioConfig::from_json(&version).is_err());
    }
}
