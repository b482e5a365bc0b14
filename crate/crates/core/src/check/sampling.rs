use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::interval::{Interval, IntervalVector, EPS_FP};

use super::CheckError;

/// How the universally quantified variables of a monotonicity notion are
/// sampled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingConfig {
    /// Endpoint pitch of the interval grid; `1 / grid_step` must be an integer.
    pub grid_step: f64,
    /// Random base points added after the grid.
    pub random_count: usize,
    /// Shift parameters tried per base point for continuous shifts, and
    /// random shift intervals per random base point.
    pub shift_count: usize,
    pub seed: u64,
    /// A violation needs the order to separate the two outputs by more
    /// than this.
    pub eps_cmp: f64,
    /// Restrict uniform interval shifts to degenerate intervals `[c, c]`.
    pub degenerate_shifts: bool,
    /// Leave `[0, 0]` out of the sampled G-weak parameters.
    pub exclude_zero_lambda: bool,
    /// Replaces the regular grid with an explicit list of intervals.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub custom_grid: Option<Vec<Interval>>,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            grid_step: 0.1,
            random_count: 0,
            shift_count: 8,
            seed: 0xC0FFEE,
            eps_cmp: 1e-9,
            degenerate_shifts: false,
            exclude_zero_lambda: false,
            custom_grid: None,
        }
    }
}

impl SamplingConfig {
    pub fn with_grid_step(mut self, step: f64) -> Self {
        self.grid_step = step;
        self
    }

    pub fn validate(&self) -> Result<(), CheckError> {
        let bad = |msg: String| Err(CheckError::Config(msg));
        if self.custom_grid.is_none() {
            if !(self.grid_step > 0.0 && self.grid_step <= 1.0) {
                return bad(format!("grid_step {} is not in (0,1]", self.grid_step));
            }
            let m = (1.0 / self.grid_step).round();
            if (m * self.grid_step - 1.0).abs() > EPS_FP {
                return bad(format!("grid_step {} does not divide 1", self.grid_step));
            }
        }
        if let Some(grid) = &self.custom_grid {
            if grid.is_empty() {
                return bad("custom grid is empty".into());
            }
            if let Some(x) = grid.iter().find(|x| !x.in_unit()) {
                return bad(format!("custom grid interval {x} is not inside [0,1]"));
            }
        }
        if self.shift_count == 0 {
            return bad("shift_count must be at least 1".into());
        }
        if !(self.eps_cmp >= 0.0) {
            return bad(format!("eps_cmp {} is negative", self.eps_cmp));
        }
        Ok(())
    }

    /// Number of grid subdivisions of `[0, 1]`.
    fn divisions(&self) -> usize {
        (1.0 / self.grid_step).round() as usize
    }

    /// Grid endpoint values `0, h, 2h, ..., 1`, or the sorted endpoints of the
    /// custom grid.
    pub fn grid_values(&self) -> Vec<f64> {
        match &self.custom_grid {
            Some(grid) => {
                let mut v: Vec<f64> = grid.iter().flat_map(|x| [x.lo(), x.hi()]).collect();
                v.sort_by(f64::total_cmp);
                v.dedup();
                v
            }
            None => {
                let m = self.divisions();
                (0..=m).map(|i| i as f64 / m as f64).collect()
            }
        }
    }

    /// All grid intervals `[i h, j h]` with `i <= j`, in lexicographic order
    /// of `(i, j)`, or the custom grid.
    pub fn grid_intervals(&self) -> Vec<Interval> {
        if let Some(grid) = &self.custom_grid {
            return grid.clone();
        }
        let m = self.divisions();
        let mut out = Vec::with_capacity((m + 1) * (m + 2) / 2);
        for i in 0..=m {
            for j in i..=m {
                out.push(
                    Interval::new(i as f64 / m as f64, j as f64 / m as f64)
                        .expect("grid endpoints are ordered"),
                );
            }
        }
        out
    }
}

const BASE_STREAM: u64 = 1;
const CONTRACT_STREAM: u64 = 2;
const SHIFT_STREAM: u64 = 1 << 32;

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// RNG for the shifts drawn at base point `index`. Independent of the order
/// in which base points are visited.
pub(crate) fn shift_rng(cfg: &SamplingConfig, index: usize) -> ChaCha8Rng {
    rng(cfg.seed, SHIFT_STREAM + index as u64)
}

pub(crate) fn base_rng(cfg: &SamplingConfig) -> ChaCha8Rng {
    rng(cfg.seed, BASE_STREAM)
}

pub(crate) fn contract_rng(cfg: &SamplingConfig) -> ChaCha8Rng {
    rng(cfg.seed, CONTRACT_STREAM)
}

pub(crate) fn random_interval<R: Rng>(rng: &mut R) -> Interval {
    Interval::hull(rng.gen(), rng.gen())
}

/// Random subinterval of `[0, cap]`, degenerate when `degenerate` is set.
pub(crate) fn random_interval_below<R: Rng>(rng: &mut R, cap: f64, degenerate: bool) -> Interval {
    if degenerate {
        Interval::point(rng.gen::<f64>() * cap)
    } else {
        Interval::hull(rng.gen::<f64>() * cap, rng.gen::<f64>() * cap)
    }
}

/// The sampled base points: the full grid product followed by random points.
pub(crate) struct Space {
    pub grid: Vec<Interval>,
    pub arity: usize,
    pub grid_points: usize,
    pub random: Vec<IntervalVector>,
}

/// Base-point budget; larger products are refused rather than run for hours.
const MAX_GRID_POINTS: usize = 50_000_000;

impl Space {
    pub fn new(cfg: &SamplingConfig, arity: usize) -> Result<Space, CheckError> {
        cfg.validate()?;
        let grid = cfg.grid_intervals();
        let grid_points = u32::try_from(arity)
            .ok()
            .and_then(|a| grid.len().checked_pow(a))
            .filter(|&n| n <= MAX_GRID_POINTS)
            .ok_or_else(|| {
                CheckError::Config(format!(
                    "{} grid intervals to the power {arity} exceeds the base-point budget",
                    grid.len()
                ))
            })?;
        let mut rng = base_rng(cfg);
        let random = (0..cfg.random_count)
            .map(|_| IntervalVector::new((0..arity).map(|_| random_interval(&mut rng)).collect()))
            .collect();
        Ok(Space {
            grid,
            arity,
            grid_points,
            random,
        })
    }

    pub fn len(&self) -> usize {
        self.grid_points + self.random.len()
    }

    pub fn is_grid(&self, index: usize) -> bool {
        index < self.grid_points
    }

    /// Grid indices of the components of grid point `index`; the first
    /// component varies slowest.
    pub fn grid_indices(&self, mut index: usize) -> Vec<usize> {
        let g = self.grid.len();
        let mut idx = vec![0; self.arity];
        for slot in idx.iter_mut().rev() {
            *slot = index % g;
            index /= g;
        }
        idx
    }

    pub fn point(&self, index: usize) -> IntervalVector {
        if self.is_grid(index) {
            IntervalVector::new(
                self.grid_indices(index)
                    .into_iter()
                    .map(|i| self.grid[i])
                    .collect(),
            )
        } else {
            self.random[index - self.grid_points].clone()
        }
    }
}
