use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use bohrap::equivalence::DEFAULT_TOL;
use bohrap::expsum::GridSpec;
use bohrap::kronecker::{LatticeOptions, Method};
use bohrap::translate::{EpsMode, TranslateOptions};
use bohrap::zeta::SmallZetaOptions;
use bohrap::Precision;
use serde::{Deserialize, Serialize};

/// Everything besides the per-command arguments that a run depends on.
/// Embedded in every report so the run can be repeated with `--config`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub precision: Precision,
    pub threads: Option<usize>,
    /// Recorded in reports; every search here is deterministic.
    pub seed: u64,
    pub equiv_tol: f64,
    /// Tolerance for single ζ and Liouville-series evaluations.
    pub zeta_tol: f64,
    /// Default τ window for `kronecker solve --method grid`.
    pub kronecker_window: [f64; 2],
    pub grid_t_start: f64,
    pub grid_t_max: f64,
    pub lattice: LatticeOptions,
    pub sup_grid: GridSpec,
    /// Largest prime in the truncated Euler product of `zeta inf`.
    pub infimum_cutoff: u64,
    pub small_zeta: SmallZetaOptions,
    pub report: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let t = TranslateOptions::default();
        RunConfig {
            precision: Precision::Standard,
            threads: None,
            seed: 0,
            equiv_tol: DEFAULT_TOL,
            zeta_tol: 1e-10,
            kronecker_window: [0.0, 1e3],
            grid_t_start: t.grid_t_start,
            grid_t_max: t.grid_t_max,
            lattice: t.lattice,
            sup_grid: t.sup_grid,
            infimum_cutoff: 100_000,
            small_zeta: SmallZetaOptions::default(),
            report: None,
        }
    }
}

impl RunConfig {
    /// Reads a bare config or the `config` member of an earlier report.
    pub fn load(path: &Path) -> anyhow::Result<RunConfig> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let mut value: serde_json::Value = serde_json::from_str(&text).with_context(|| format!("{} is not valid JSON", path.display()))?;
        if let Some(inner) = value.get_mut("config") {
            value = inner.take();
        }
        let cfg: RunConfig = serde_path_to_error::deserialize(value).map_err(|e| anyhow::anyhow!("{}: field `{}`: {}", path.display(), e.path(), e.inner()))?;
        Ok(cfg)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        let positive = [
            ("equiv_tol", self.equiv_tol),
            ("zeta_tol", self.zeta_tol),
            ("grid_t_start", self.grid_t_start),
            ("grid_t_max", self.grid_t_max),
            ("lattice.t_start", self.lattice.t_start),
            ("lattice.t_max", self.lattice.t_max),
            ("lattice.radius_scale", self.lattice.radius_scale),
            ("small_zeta.eps1", self.small_zeta.eps1),
            ("small_zeta.t_budget", self.small_zeta.t_budget),
            ("small_zeta.t_start", self.small_zeta.t_start),
            ("small_zeta.tol", self.small_zeta.tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                bail!("config field `{name}` must be positive and finite, got {v}");
            }
        }
        if !(self.lattice.growth > 1.0) {
            bail!("config field `lattice.growth` must exceed 1, got {}", self.lattice.growth);
        }
        let [t0, t1] = self.kronecker_window;
        if !(t1 > t0) {
            bail!("config field `kronecker_window` must be increasing, got [{t0}, {t1}]");
        }
        if self.threads == Some(0) {
            bail!("config field `threads` must be at least 1");
        }
        Ok(())
    }

    pub fn lattice(&self) -> LatticeOptions {
        LatticeOptions { precision: self.precision, ..self.lattice.clone() }
    }

    pub fn translate_options(&self, method: Method, eps_mode: EpsMode) -> TranslateOptions {
        TranslateOptions {
            method,
            eps_mode,
            grid_t_start: self.grid_t_start,
            grid_t_max: self.grid_t_max,
            lattice: self.lattice(),
            sup_grid: self.sup_grid,
            equiv_tol: self.equiv_tol,
        }
    }
}
