//! One JSON document describing a run. Every field has a default, so `{}`
//! is a valid configuration.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::explicit::{DensityParams, SupportCheck, TestFunction, TestFunctionKind};
use crate::field::{FieldElement, IdealRep, TotallyRealField};
use crate::petersson::TraceParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Field preset key: `q`, `q-sqrt5`, `q-sqrt13` or `q-sqrt17`. Default `q`.
    pub field: String,
    /// Half the parallel weight. Default 6 (weight 12).
    pub k: u32,
    /// Coordinates `[a]` or `[a, b]` of a generator `a + b w` of the level.
    /// Default `[1]`.
    pub level: Vec<i64>,
    /// Default `fejer`.
    pub phi: TestFunctionKind,
    /// Support half-width of `phi_hat`. Default 0.4, inside the level-one budget.
    pub sigma: f64,
    /// Largest `|N(c)|` in the Kloosterman sums. Default 10000.
    pub c_max: u64,
    /// Newform sieve cutoffs on `N(L)` and `N(m)`. Default 1 and 1.
    pub x: f64,
    pub y: f64,
    /// Unit terms with a smaller Bessel bound are skipped. Default 1e-12.
    pub unit_tol: f64,
    /// Default: enforce with `delta = 0.1`, `eta = 0.05`, `eps = 0`.
    pub support: SupportCheck,
    /// RNG seed for Haar sampling. Default 7.
    pub seed: u64,
    /// Worker threads; `None` lets rayon decide. Default `None`.
    pub threads: Option<usize>,
    /// Where to write the JSON report. Default: stdout only.
    pub json: Option<PathBuf>,
    /// Where to write tabular output. Default: none.
    pub csv: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: "q".into(),
            k: 6,
            level: vec![1],
            phi: TestFunctionKind::Fejer,
            sigma: 0.4,
            c_max: 10_000,
            x: 1.0,
            y: 1.0,
            unit_tol: 1e-12,
            support: SupportCheck::default(),
            seed: 7,
            threads: None,
            json: None,
            csv: None,
        }
    }
}

/// Parses `A` or `A,B` coordinates.
pub fn parse_coordinates(key: &'static str, s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::param(key, format!("`{s}`: {e}")))
        })
        .collect()
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    pub fn field(&self) -> Result<TotallyRealField> {
        TotallyRealField::from_name(&self.field)
    }

    pub fn element(field: &TotallyRealField, key: &'static str, coords: &[i64]) -> Result<FieldElement> {
        match (coords, field.degree()) {
            ([a], _) => Ok(FieldElement::rational(*a)),
            ([a, 0], 1) => Ok(FieldElement::rational(*a)),
            ([_, _], 1) => Err(Error::param(key, "rational field elements take one coordinate")),
            ([a, b], _) => Ok(FieldElement::new(*a, *b)),
            _ => Err(Error::param(
                key,
                format!("expected 1 or 2 coordinates, got {}", coords.len()),
            )),
        }
    }

    pub fn ideal(field: &TotallyRealField, key: &'static str, coords: &[i64]) -> Result<IdealRep> {
        let g = Self::element(field, key, coords)?;
        if g.is_zero() {
            return Err(Error::param(key, "the zero ideal is not allowed"));
        }
        field.ideal(g)
    }

    pub fn level(&self, field: &TotallyRealField) -> Result<IdealRep> {
        let level = Self::ideal(field, "level", &self.level)?;
        if !level.is_squarefree() {
            return Err(Error::param(
                "level",
                format!("level of norm {} is not squarefree", level.norm),
            ));
        }
        Ok(level)
    }

    pub fn test_function(&self) -> Result<TestFunction> {
        TestFunction::new(self.phi, self.sigma)
    }

    pub fn trace_params(&self, field: &TotallyRealField) -> Result<TraceParams> {
        TraceParams::new(self.k, self.level(field)?, self.c_max, self.unit_tol, self.x, self.y)
    }

    pub fn density_params(&self, field: &TotallyRealField) -> Result<DensityParams> {
        Ok(DensityParams {
            trace: self.trace_params(field)?,
            tf: self.test_function()?,
            support: self.support,
        })
    }

    /// Checks every key that does not need a subcommand to interpret.
    pub fn validate(&self) -> Result<()> {
        let field = self.field()?;
        self.trace_params(&field)?;
        self.test_function()?;
        if let SupportCheck::Enforce { delta, eta, eps } = self.support {
            if !(delta > 0.0 && eta > 0.0 && eps >= 0.0) {
                return Err(Error::param("support", "need delta > 0, eta > 0 and eps >= 0"));
            }
        }
        if self.threads == Some(0) {
            return Err(Error::param("threads", "must be at least 1"));
        }
        Ok(())
    }
}
