//! Sweeps over the coupling ratio, numerical derivatives, kink detection, and
//! CSV output.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::correlations::{correlation_triple, MAX_SEPARATION};
use crate::error::{Error, Result};
use crate::measures::{lqfi, lqfi_closed, owqd_closed, owqd_numeric};
use crate::numerics::central_difference;
use crate::state::build_x_state;

pub const CSV_HEADER: &str = "alpha,m,t1,t3,lqfi,owqd,dlqfi,dowqd";
pub const MAX_GRID_INTERVALS: f64 = 1e6;
/// Every this many grid points the closed-form deficit is checked against
/// numerical minimization.
pub const OWQD_CHECK_STRIDE: usize = 50;
pub const OWQD_CHECK_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Lqfi,
    Owqd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasureSet {
    pub lqfi: bool,
    pub owqd: bool,
}

impl MeasureSet {
    pub const BOTH: MeasureSet = MeasureSet { lqfi: true, owqd: true };

    pub fn contains(&self, m: Measure) -> bool {
        match m {
            Measure::Lqfi => self.lqfi,
            Measure::Owqd => self.owqd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub step: f64,
    pub m: u32,
    pub measures: MeasureSet,
}

impl ScanConfig {
    pub fn new(alpha_min: f64, alpha_max: f64, step: f64, m: u32) -> Result<Self> {
        let cfg = Self {
            alpha_min,
            alpha_max,
            step,
            m,
            measures: MeasureSet::BOTH,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_measures(mut self, measures: MeasureSet) -> Self {
        self.measures = measures;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha_min >= 0.0 && self.alpha_min.is_finite() && self.alpha_max.is_finite()) {
            return Err(Error::validation(format!(
                "alpha range must be finite with alpha_min >= 0, got [{}, {}]",
                self.alpha_min, self.alpha_max
            )));
        }
        if self.alpha_min >= self.alpha_max {
            return Err(Error::validation(format!(
                "alpha_min ({}) must be below alpha_max ({})",
                self.alpha_min, self.alpha_max
            )));
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::validation(format!("step must be positive, got {}", self.step)));
        }
        if (self.alpha_max - self.alpha_min) / self.step > MAX_GRID_INTERVALS {
            return Err(Error::validation("scan grid exceeds 10^6 intervals"));
        }
        if !(1..=MAX_SEPARATION).contains(&self.m) {
            return Err(Error::OutOfRange {
                name: "m",
                value: self.m as f64,
                range: "1..=16",
            });
        }
        if self.grid().len() < 3 {
            return Err(Error::validation("scan grid needs at least 3 points"));
        }
        Ok(())
    }

    /// `alpha_min + i * step` up to `alpha_max`. When the branch point
    /// `alpha = 1` lies inside the range and a grid point lands on it up to
    /// round-off, that point is set to exactly 1.
    pub fn grid(&self) -> Vec<f64> {
        let intervals = ((self.alpha_max - self.alpha_min) / self.step + 1e-9).floor() as usize;
        let mut grid: Vec<f64> = (0..=intervals)
            .map(|i| self.alpha_min + i as f64 * self.step)
            .collect();
        if self.alpha_min < 1.0 && 1.0 < self.alpha_max {
            let i = ((1.0 - self.alpha_min) / self.step).round() as usize;
            if let Some(a) = grid.get_mut(i) {
                if (*a - 1.0).abs() < 1e-6 * self.step {
                    *a = 1.0;
                }
            }
        }
        grid
    }
}

/// One grid point of a sweep. Measures left out of the sweep are NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub alpha: f64,
    pub m: u32,
    pub t1: f64,
    pub t3: f64,
    pub lqfi: f64,
    pub owqd: f64,
    pub dlqfi: f64,
    pub dowqd: f64,
}

impl ScanRow {
    pub fn value(&self, m: Measure) -> f64 {
        match m {
            Measure::Lqfi => self.lqfi,
            Measure::Owqd => self.owqd,
        }
    }

    pub fn derivative(&self, m: Measure) -> f64 {
        match m {
            Measure::Lqfi => self.dlqfi,
            Measure::Owqd => self.dowqd,
        }
    }
}

/// Evaluates the selected measures on every grid point and differentiates
/// them in `alpha`.
///
/// LQFI comes from the closed form (generic spectral route as fallback). The
/// closed-form deficit is cross-checked against numerical minimization on
/// every 50th point; a disagreement above 1e-5 aborts the sweep.
pub fn scan(cfg: &ScanConfig) -> Result<Vec<ScanRow>> {
    cfg.validate()?;
    let grid = cfg.grid();
    let mut rows = Vec::with_capacity(grid.len());
    for (i, &alpha) in grid.iter().enumerate() {
        let t = correlation_triple(cfg.m, alpha)?;
        let state = build_x_state(t)?;
        let lq = if cfg.measures.lqfi {
            lqfi_closed(&t).unwrap_or_else(|| lqfi(&state))
        } else {
            f64::NAN
        };
        let ow = if cfg.measures.owqd {
            let closed = owqd_closed(&t);
            if i % OWQD_CHECK_STRIDE == 0 {
                let numeric = owqd_numeric(&state).value;
                if (closed - numeric).abs() > OWQD_CHECK_TOL {
                    return Err(Error::Consistency {
                        measure: "owqd",
                        alpha,
                        m: cfg.m,
                        closed,
                        numeric,
                    });
                }
            }
            closed
        } else {
            f64::NAN
        };
        rows.push(ScanRow {
            alpha,
            m: cfg.m,
            t1: t.t1,
            t3: t.t3,
            lqfi: lq,
            owqd: ow,
            dlqfi: f64::NAN,
            dowqd: f64::NAN,
        });
    }

    if cfg.measures.lqfi {
        let d = central_difference(&rows.iter().map(|r| r.lqfi).collect::<Vec<_>>(), cfg.step)?;
        rows.iter_mut().zip(d).for_each(|(r, v)| r.dlqfi = v);
    }
    if cfg.measures.owqd {
        let d = central_difference(&rows.iter().map(|r| r.owqd).collect::<Vec<_>>(), cfg.step)?;
        rows.iter_mut().zip(d).for_each(|(r, v)| r.dowqd = v);
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    /// Grid point with the largest absolute second difference.
    pub alpha_star: f64,
    /// Right minus left one-sided first derivative at `alpha_star`.
    pub jump: f64,
    /// Median absolute second difference per unit step over the sweep.
    pub noise_floor: f64,
    /// False when `|jump|` is below ten times the noise floor.
    pub detected: bool,
}

/// Locates the kink of one measure along a uniform sweep.
pub fn detect_transition(rows: &[ScanRow], measure: Measure) -> Result<Transition> {
    let n = rows.len();
    if n < 5 {
        return Err(Error::validation(format!(
            "transition detection needs at least 5 rows, got {n}"
        )));
    }
    let h = rows[1].alpha - rows[0].alpha;
    if h <= 0.0 || h.is_nan() || rows.windows(2).any(|w| ((w[1].alpha - w[0].alpha) - h).abs() > 1e-6 * h) {
        return Err(Error::validation("transition detection needs a uniform increasing grid"));
    }
    let f: Vec<f64> = rows.iter().map(|r| r.value(measure)).collect();
    if f.iter().any(|v| !v.is_finite()) {
        return Err(Error::validation("selected measure is missing from the rows"));
    }

    let second: Vec<f64> = (1..n - 1).map(|i| f[i + 1] - 2.0 * f[i] + f[i - 1]).collect();
    let mut peak = 0;
    for (j, d) in second.iter().enumerate() {
        if d.abs() > second[peak].abs() {
            peak = j;
        }
    }
    let i = peak + 1;

    let left = if i >= 2 {
        (3.0 * f[i] - 4.0 * f[i - 1] + f[i - 2]) / (2.0 * h)
    } else {
        (f[i] - f[i - 1]) / h
    };
    let right = if i + 2 < n {
        (-3.0 * f[i] + 4.0 * f[i + 1] - f[i + 2]) / (2.0 * h)
    } else {
        (f[i + 1] - f[i]) / h
    };
    let jump = right - left;

    let mut magnitudes: Vec<f64> = second.iter().map(|d| d.abs() / h).collect();
    magnitudes.sort_by(f64::total_cmp);
    let median = magnitudes[magnitudes.len() / 2];
    let scale = f.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let noise_floor = median.max(64.0 * f64::EPSILON * scale / h);

    Ok(Transition {
        alpha_star: rows[i].alpha,
        jump,
        noise_floor,
        detected: jump.abs() > 10.0 * noise_floor,
    })
}

/// `%.12g`-style rendering: 12 significant digits, trailing zeros dropped.
pub fn format_value(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_csv<W: Write>(rows: &[ScanRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            format_value(r.alpha),
            r.m,
            format_value(r.t1),
            format_value(r.t3),
            format_value(r.lqfi),
            format_value(r.owqd),
            format_value(r.dlqfi),
            format_value(r.dowqd),
        )?;
    }
    out.flush()
}

pub fn emit_csv(rows: &[ScanRow], path: &Path) -> Result<()> {
    let file = File::create(path)?;
    write_csv(rows, BufWriter::new(file))?;
    Ok(())
}
