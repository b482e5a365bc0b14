//! Best interval representation of scalar functions on `[0,1]^n`.

use std::fmt;
use std::sync::Arc;

use crate::interval::Interval;

/// A scalar function `[0,1]^n -> [0,1]`, taking its arguments as a slice.
pub type ScalarFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Direction in which a scalar function moves with one of its arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotone {
    Increasing,
    Decreasing,
}

/// Default number of subdivisions per argument when a lift has to sample
/// the argument box.
pub const DEFAULT_RESOLUTION: usize = 16;

/// The interval extension `F(X1..Xn) = [min f, max f]` over the box
/// `X1 x ... x Xn`.
///
/// When every argument carries a monotonicity hint the extremes sit on box
/// corners and the lift is exact. Otherwise the box is sampled on a regular
/// `resolution`-step lattice and the result is an inner approximation.
#[derive(Clone)]
pub struct ScalarLift {
    name: String,
    f: ScalarFn,
    hints: Vec<Option<Monotone>>,
    resolution: usize,
}

impl ScalarLift {
    /// `hints` fixes the arity; use `None` for arguments without a known
    /// monotonicity.
    pub fn new(name: impl Into<String>, f: ScalarFn, hints: Vec<Option<Monotone>>) -> Self {
        assert!(!hints.is_empty(), "scalar lift of arity 0");
        ScalarLift {
            name: name.into(),
            f,
            hints,
            resolution: DEFAULT_RESOLUTION,
        }
    }

    pub fn with_resolution(mut self, resolution: usize) -> Self {
        self.resolution = resolution.max(1);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.hints.len()
    }

    pub fn scalar(&self) -> &ScalarFn {
        &self.f
    }

    /// True when the lift is computed by box sampling rather than at corners.
    pub fn is_approximate(&self) -> bool {
        self.hints.iter().any(Option::is_none)
    }

    pub fn eval(&self, args: &[Interval]) -> Interval {
        debug_assert_eq!(args.len(), self.arity());
        let (lo, hi) = if self.is_approximate() {
            box_extremes(&*self.f, args, self.resolution)
        } else {
            corner_extremes(&*self.f, args, &self.hints)
        };
        clamp_unit(lo, hi)
    }
}

impl fmt::Debug for ScalarLift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarLift")
            .field("name", &self.name)
            .field("hints", &self.hints)
            .field("resolution", &self.resolution)
            .finish()
    }
}

/// Rounding can push a `[0,1]`-valued formula a few ulps outside the range.
pub(crate) fn clamp_unit(lo: f64, hi: f64) -> Interval {
    Interval::hull(lo.clamp(0.0, 1.0), hi.clamp(0.0, 1.0))
}

/// Minimum and maximum of `f` at the two box corners selected by `hints`.
pub(crate) fn corner_extremes(
    f: &(dyn Fn(&[f64]) -> f64 + Send + Sync),
    args: &[Interval],
    hints: &[Option<Monotone>],
) -> (f64, f64) {
    let mut low_corner = Vec::with_capacity(args.len());
    let mut high_corner = Vec::with_capacity(args.len());
    for (x, h) in args.iter().zip(hints) {
        match h.expect("corner evaluation needs a hint per argument") {
            Monotone::Increasing => {
                low_corner.push(x.lo());
                high_corner.push(x.hi());
            }
            Monotone::Decreasing => {
                low_corner.push(x.hi());
                high_corner.push(x.lo());
            }
        }
    }
    let (a, b) = (f(&low_corner), f(&high_corner));
    (a.min(b), a.max(b))
}

/// Minimum and maximum of `f` over a regular lattice on the box.
pub(crate) fn box_extremes(
    f: &(dyn Fn(&[f64]) -> f64 + Send + Sync),
    args: &[Interval],
    resolution: usize,
) -> (f64, f64) {
    let axes: Vec<Vec<f64>> = args
        .iter()
        .map(|x| {
            if x.is_degenerate() {
                vec![x.lo()]
            } else {
                (0..=resolution)
                    .map(|t| {
                        if t == resolution {
                            x.hi()
                        } else {
                            x.lo() + x.width() * t as f64 / resolution as f64
                        }
                    })
                    .collect()
            }
        })
        .collect();
    let mut idx = vec![0usize; axes.len()];
    let mut point: Vec<f64> = axes.iter().map(|a| a[0]).collect();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    loop {
        let v = f(&point);
        lo = lo.min(v);
        hi = hi.max(v);
        // odometer step
        let mut k = axes.len();
        loop {
            if k == 0 {
                return (lo, hi);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < axes[k].len() {
                point[k] = axes[k][idx[k]];
                break;
            }
            idx[k] = 0;
            point[k] = axes[k][0];
        }
    }
}
