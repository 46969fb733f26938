//! Relativistic and nonrelativistic ε over a uniform grid in 1/α.

use rayon::prelude::*;

use dirac1d::dirac::{find_levels_with, DiracError, ScanOptions};
use dirac1d::nonrel::nonrel_level;
use dirac1d::{ModelParams, Parity};

use crate::table::{fmt_real, quantize, Cell, RawTable, Schema, Table, TableError};

pub const DEFAULT_ALPHA_MIN: f64 = 0.5;
pub const DEFAULT_ALPHA_MAX: f64 = 20.0;
pub const DEFAULT_POINTS: usize = 50;
pub const DEFAULT_LEVELS: usize = 4;

const COLUMNS: [&str; 7] = [
    "inv_alpha",
    "alpha",
    "parity",
    "level",
    "epsilon_rel",
    "epsilon_nonrel",
    "reason",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSpec {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub points: usize,
    pub levels: usize,
}

impl Default for ScanSpec {
    fn default() -> Self {
        ScanSpec {
            alpha_min: DEFAULT_ALPHA_MIN,
            alpha_max: DEFAULT_ALPHA_MAX,
            points: DEFAULT_POINTS,
            levels: DEFAULT_LEVELS,
        }
    }
}

impl ScanSpec {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.alpha_min > 0.0) || !self.alpha_min.is_finite() {
            return Err("alpha must be positive".into());
        }
        if !(self.alpha_max > self.alpha_min) || !self.alpha_max.is_finite() {
            return Err("--alpha-max must be finite and larger than --alpha-min".into());
        }
        if self.points < 2 {
            return Err("--points must be at least 2".into());
        }
        if self.levels == 0 || self.levels > dirac1d::dirac::MAX_LEVELS {
            return Err(format!("--levels must be between 1 and {}", dirac1d::dirac::MAX_LEVELS));
        }
        Ok(())
    }

    /// Sample points in 1/α, increasing, already rounded to output precision.
    pub fn inv_alphas(&self) -> Vec<f64> {
        let lo = 1.0 / self.alpha_max;
        let hi = 1.0 / self.alpha_min;
        let n = self.points - 1;
        (0..=n)
            .map(|i| quantize(lo + (hi - lo) * i as f64 / n as f64))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub inv_alpha: f64,
    pub alpha: f64,
    pub parity: Parity,
    /// 1-based level index within the parity.
    pub level: usize,
    pub epsilon_rel: Option<f64>,
    pub epsilon_nonrel: f64,
    /// Why `epsilon_rel` is missing.
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub spec: ScanSpec,
    pub rows: Vec<ScanRow>,
}

impl ScanResult {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.epsilon_rel.is_none()).count()
    }

    /// (ε_rel, ε_nonrel) against 1/α for one level.
    pub fn series(&self, parity: Parity, level: usize) -> Vec<(f64, Option<f64>, f64)> {
        self.rows
            .iter()
            .filter(|r| r.parity == parity && r.level == level)
            .map(|r| (r.inv_alpha, r.epsilon_rel, r.epsilon_nonrel))
            .collect()
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(Schema::Scan, &COLUMNS);
        let s = &self.spec;
        t.meta(
            "units",
            "hbar = c = 1, g = 1; inv_alpha = sqrt(g)/m; epsilon = E/m - 1 (dimensionless)",
        );
        t.meta("alpha_min", fmt_real(s.alpha_min));
        t.meta("alpha_max", fmt_real(s.alpha_max));
        t.meta("points", s.points.to_string());
        t.meta("levels", s.levels.to_string());
        t.meta(
            "description",
            "epsilon_rel from the Hermite continuity condition (positive energies); epsilon_nonrel from Airy zeros; empty epsilon_rel carries a reason",
        );
        for r in &self.rows {
            t.push(vec![
                Cell::Real(r.inv_alpha),
                Cell::Real(r.alpha),
                Cell::Text(r.parity.to_string()),
                Cell::Int(r.level as i64),
                Cell::opt(r.epsilon_rel),
                Cell::Real(r.epsilon_nonrel),
                r.reason.clone().map_or(Cell::Empty, Cell::Text),
            ]);
        }
        t
    }

    pub fn from_csv(text: &str) -> Result<ScanResult, TableError> {
        let raw = RawTable::parse(text)?.expect(Schema::Scan)?;
        let meta_num = |key: &str| -> Result<f64, TableError> {
            raw.meta_value(key)
                .and_then(|v| v.parse().ok())
                .ok_or(TableError::Header { line: 0 })
        };
        let spec = ScanSpec {
            alpha_min: meta_num("alpha_min")?,
            alpha_max: meta_num("alpha_max")?,
            points: meta_num("points")? as usize,
            levels: meta_num("levels")? as usize,
        };
        let col = |name: &'static str| raw.column(name).ok_or(TableError::MissingColumns);
        let idx = [
            col("inv_alpha")?,
            col("alpha")?,
            col("parity")?,
            col("level")?,
            col("epsilon_rel")?,
            col("epsilon_nonrel")?,
            col("reason")?,
        ];
        let mut rows = Vec::with_capacity(raw.rows.len());
        for (line, fields) in &raw.rows {
            let bad = |k: usize| TableError::Value {
                line: *line,
                column: raw.columns[idx[k]].clone(),
                value: fields[idx[k]].clone(),
            };
            let real = |k: usize| fields[idx[k]].parse::<f64>().map_err(|_| bad(k));
            let eps_rel = &fields[idx[4]];
            let reason = &fields[idx[6]];
            rows.push(ScanRow {
                inv_alpha: real(0)?,
                alpha: real(1)?,
                parity: fields[idx[2]].parse().map_err(|_| bad(2))?,
                level: fields[idx[3]].parse().map_err(|_| bad(3))?,
                epsilon_rel: if eps_rel.is_empty() { None } else { Some(real(4)?) },
                epsilon_nonrel: real(5)?,
                reason: (!reason.is_empty()).then(|| reason.clone()),
            });
        }
        Ok(ScanResult { spec, rows })
    }
}

fn point_rows(inv_alpha: f64, spec: &ScanSpec, options: &ScanOptions) -> Vec<ScanRow> {
    let alpha = 1.0 / inv_alpha;
    let params = ModelParams::from_alpha(alpha).expect("sample points are positive");
    let mut rows = Vec::with_capacity(2 * spec.levels);
    for parity in Parity::BOTH {
        let (found, reason) = match find_levels_with(&params, parity, spec.levels, options) {
            Ok(levels) => (levels, None),
            Err(DiracError::ScanExhausted { found, .. }) => {
                (found, Some(format!("scan exhausted below nu = {}", options.nu_max)))
            }
            Err(e) => (Vec::new(), Some(e.to_string())),
        };
        for level in 1..=spec.levels {
            let rel = found.get(level - 1).map(|l| quantize(l.epsilon));
            let nr = nonrel_level(&params, parity, level as u32)
                .map(|l| quantize(l.epsilon))
                .unwrap_or(f64::NAN);
            rows.push(ScanRow {
                inv_alpha,
                alpha: quantize(alpha),
                parity,
                level,
                epsilon_rel: rel,
                epsilon_nonrel: nr,
                reason: if rel.is_none() { reason.clone() } else { None },
            });
        }
    }
    rows
}

/// Solve every sample point (in parallel) and assemble rows in 1/α order.
/// Failures at individual points are recorded, never fatal.
pub fn run_scan(spec: &ScanSpec, options: &ScanOptions) -> ScanResult {
    let rows = spec
        .inv_alphas()
        .par_iter()
        .map(|&x| point_rows(x, spec, options))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    ScanResult { spec: *spec, rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_points_are_uniform_in_inverse_alpha() {
        let s = ScanSpec::default();
        let x = s.inv_alphas();
        assert_eq!(x.len(), 50);
        assert_eq!(x[0], 0.05);
        assert_eq!(x[49], 2.0);
        assert!(x.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn validation() {
        let bad = ScanSpec {
            alpha_min: 0.0,
            ..ScanSpec::default()
        };
        assert_eq!(bad.validate().unwrap_err(), "alpha must be positive");
        let inverted = ScanSpec {
            alpha_min: 5.0,
            alpha_max: 2.0,
            ..ScanSpec::default()
        };
        assert!(inverted.validate().is_err());
    }
}
