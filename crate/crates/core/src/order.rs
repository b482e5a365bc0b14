//! Orders on subintervals of `[0, 1]`.
//!
//! The Kulisch–Miranker order compares both endpoints and is only partial.
//! The total orders here are all generated by two key functions: `X < Y` iff
//! the first key of `X` is smaller, or the first keys tie and the second key
//! of `X` is smaller. An order of this kind is admissible when it refines
//! Kulisch–Miranker; [`is_admissible`] checks that (and the order axioms)
//! empirically over a sample of intervals.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::check::SamplingConfig;
use crate::interval::{Interval, EPS_FP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderRelation {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl OrderRelation {
    /// The relation seen from the other side.
    pub fn converse(self) -> OrderRelation {
        match self {
            OrderRelation::Less => OrderRelation::Greater,
            OrderRelation::Greater => OrderRelation::Less,
            r => r,
        }
    }

    pub fn is_le(self) -> bool {
        matches!(self, OrderRelation::Less | OrderRelation::Equal)
    }

    pub fn is_ge(self) -> bool {
        matches!(self, OrderRelation::Greater | OrderRelation::Equal)
    }
}

impl fmt::Display for OrderRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderRelation::Less => "less",
            OrderRelation::Equal => "equal",
            OrderRelation::Greater => "greater",
            OrderRelation::Incomparable => "incomparable",
        })
    }
}

/// Key functions `[0,1]^2 -> [0,1]` available to two-key orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Key {
    Lower,
    Upper,
    Mid,
    Width,
}

impl Key {
    pub const ALL: [Key; 4] = [Key::Lower, Key::Upper, Key::Mid, Key::Width];

    pub fn eval(self, x: Interval) -> f64 {
        match self {
            Key::Lower => x.lo(),
            Key::Upper => x.hi(),
            Key::Mid => x.mid(),
            Key::Width => x.width(),
        }
    }

    /// Sign of `key(x) - key(y)`, zero when within `eps`. With `eps == 0`
    /// the sign is exact in real arithmetic, so for example the midpoints of
    /// `[0.1,0.5]` and `[0.2,0.4]` tie even though their float sums differ.
    pub fn compare(self, x: Interval, y: Interval, eps: f64) -> i8 {
        let terms = match self {
            Key::Lower => return sign(x.lo() - y.lo(), eps),
            Key::Upper => return sign(x.hi() - y.hi(), eps),
            Key::Mid => [x.lo(), x.hi(), -y.lo(), -y.hi()],
            Key::Width => [x.hi(), -x.lo(), -y.hi(), y.lo()],
        };
        let e = expansion(terms);
        if eps == 0.0 {
            e.iter()
                .rev()
                .find(|c| **c != 0.0)
                .map_or(0, |c| sign(*c, 0.0))
        } else {
            let d: f64 = e.iter().sum();
            let d = if self == Key::Mid { d / 2.0 } else { d };
            sign(d, eps)
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Key::Lower => "lower",
            Key::Upper => "upper",
            Key::Mid => "mid",
            Key::Width => "width",
        }
    }
}

impl FromStr for Key {
    type Err = OrderParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Key::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| OrderParseError::UnknownKey(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    KulischMiranker,
    /// Lower endpoint, then upper endpoint.
    LexLower,
    /// Upper endpoint, then lower endpoint.
    LexUpper,
    /// Midpoint, then upper endpoint.
    XuYager,
    TwoKey(Key, Key),
}

impl OrderKind {
    fn keys(self) -> Option<(Key, Key)> {
        match self {
            OrderKind::KulischMiranker => None,
            OrderKind::LexLower => Some((Key::Lower, Key::Upper)),
            OrderKind::LexUpper => Some((Key::Upper, Key::Lower)),
            OrderKind::XuYager => Some((Key::Mid, Key::Upper)),
            OrderKind::TwoKey(k1, k2) => Some((k1, k2)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderParseError {
    #[error(
        "unknown order {0:?} (expected km, lex-lower, lex-upper, xu-yager or two-key:<k1>,<k2>)"
    )]
    UnknownOrder(String),
    #[error("unknown order key {0:?} (expected lower, upper, mid or width)")]
    UnknownKey(String),
}

/// An order on intervals together with the tolerance used to decide key ties.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderSpec {
    pub kind: OrderKind,
    pub tolerance: f64,
}

impl OrderSpec {
    pub const KM: OrderSpec = OrderSpec::new(OrderKind::KulischMiranker);
    pub const LEX_LOWER: OrderSpec = OrderSpec::new(OrderKind::LexLower);
    pub const LEX_UPPER: OrderSpec = OrderSpec::new(OrderKind::LexUpper);
    pub const XU_YAGER: OrderSpec = OrderSpec::new(OrderKind::XuYager);

    /// The three builtin admissible orders.
    pub const ADMISSIBLE: [OrderSpec; 3] = [
        OrderSpec::LEX_LOWER,
        OrderSpec::LEX_UPPER,
        OrderSpec::XU_YAGER,
    ];

    /// Kulisch–Miranker followed by the builtin admissible orders.
    pub const BUILTIN: [OrderSpec; 4] = [
        OrderSpec::KM,
        OrderSpec::LEX_LOWER,
        OrderSpec::LEX_UPPER,
        OrderSpec::XU_YAGER,
    ];

    pub const fn new(kind: OrderKind) -> Self {
        OrderSpec {
            kind,
            tolerance: 0.0,
        }
    }

    pub fn two_key(k1: Key, k2: Key) -> Self {
        OrderSpec::new(OrderKind::TwoKey(k1, k2))
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        assert!(tolerance >= 0.0, "negative order tolerance");
        self.tolerance = tolerance;
        self
    }

    pub fn is_total(&self) -> bool {
        !matches!(self.kind, OrderKind::KulischMiranker)
    }

    pub fn cmp(&self, x: Interval, y: Interval) -> OrderRelation {
        self.compare_with_slack(x, y, 0.0)
    }

    /// Like [`OrderSpec::cmp`], but key (or endpoint) differences up to
    /// `max(tolerance, slack)` count as ties.
    pub fn compare_with_slack(&self, x: Interval, y: Interval, slack: f64) -> OrderRelation {
        let eps = self.tolerance.max(slack);
        match self.kind.keys() {
            None => km_compare_with_slack(x, y, eps),
            Some((k1, k2)) => match k1.compare(x, y, eps) {
                0 => match k2.compare(x, y, eps) {
                    0 => OrderRelation::Equal,
                    s if s < 0 => OrderRelation::Less,
                    _ => OrderRelation::Greater,
                },
                s if s < 0 => OrderRelation::Less,
                _ => OrderRelation::Greater,
            },
        }
    }

    /// The larger of `x` and `y`. For Kulisch–Miranker this is the lattice
    /// join, which also covers incomparable pairs.
    ///
    /// Key differences up to `EPS_FP` count as ties here, so decimal inputs
    /// whose keys agree in real arithmetic are ordered by the next key rather
    /// than by representation error.
    pub fn max(&self, x: Interval, y: Interval) -> Interval {
        if !self.is_total() {
            return x.join(y);
        }
        match self.compare_with_slack(x, y, EPS_FP) {
            OrderRelation::Greater => x,
            _ => y,
        }
    }

    /// The smaller of `x` and `y`; the lattice meet for Kulisch–Miranker.
    pub fn min(&self, x: Interval, y: Interval) -> Interval {
        if !self.is_total() {
            return x.meet(y);
        }
        match self.compare_with_slack(x, y, EPS_FP) {
            OrderRelation::Less => x,
            _ => y,
        }
    }
}

impl fmt::Display for OrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OrderKind::KulischMiranker => f.write_str("km"),
            OrderKind::LexLower => f.write_str("lex-lower"),
            OrderKind::LexUpper => f.write_str("lex-upper"),
            OrderKind::XuYager => f.write_str("xu-yager"),
            OrderKind::TwoKey(a, b) => write!(f, "two-key:{},{}", a.name(), b.name()),
        }
    }
}

impl FromStr for OrderSpec {
    type Err = OrderParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let kind = match s {
            "km" => OrderKind::KulischMiranker,
            "lex-lower" => OrderKind::LexLower,
            "lex-upper" => OrderKind::LexUpper,
            "xu-yager" => OrderKind::XuYager,
            _ => {
                let keys = s
                    .strip_prefix("two-key:")
                    .ok_or_else(|| OrderParseError::UnknownOrder(s.to_string()))?;
                let (a, b) = keys
                    .split_once(',')
                    .ok_or_else(|| OrderParseError::UnknownOrder(s.to_string()))?;
                OrderKind::TwoKey(a.parse()?, b.parse()?)
            }
        };
        Ok(OrderSpec::new(kind))
    }
}

/// Error-free `a + b = s + e`.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Nonoverlapping expansion of `sum(terms)`, components in increasing
/// magnitude (zeros allowed). The exact sum has the sign of the last
/// nonzero component.
fn expansion<const N: usize>(terms: [f64; N]) -> Vec<f64> {
    let mut e: Vec<f64> = Vec::with_capacity(N);
    for b in terms {
        let mut q = b;
        for h in e.iter_mut() {
            let (s, err) = two_sum(q, *h);
            *h = err;
            q = s;
        }
        e.push(q);
    }
    e
}

fn sign(d: f64, eps: f64) -> i8 {
    if d.abs() <= eps {
        0
    } else if d < 0.0 {
        -1
    } else {
        1
    }
}

fn km_compare_with_slack(x: Interval, y: Interval, eps: f64) -> OrderRelation {
    let lo = sign(x.lo() - y.lo(), eps);
    let hi = sign(x.hi() - y.hi(), eps);
    match (lo, hi) {
        (0, 0) => OrderRelation::Equal,
        (l, h) if l <= 0 && h <= 0 => OrderRelation::Less,
        (l, h) if l >= 0 && h >= 0 => OrderRelation::Greater,
        _ => OrderRelation::Incomparable,
    }
}

/// Endpointwise comparison: `X <= Y` iff `X.lo <= Y.lo` and `X.hi <= Y.hi`.
pub fn km_compare(x: Interval, y: Interval) -> OrderRelation {
    km_compare_with_slack(x, y, 0.0)
}

/// A tally of one kind of admissibility violation, with the first few
/// offending intervals.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ViolationTally {
    pub count: u64,
    pub examples: Vec<Vec<Interval>>,
}

const MAX_EXAMPLES: usize = 5;

impl ViolationTally {
    fn record(&mut self, witness: &[Interval]) {
        self.count += 1;
        if self.examples.len() < MAX_EXAMPLES {
            self.examples.push(witness.to_vec());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub order: String,
    pub intervals_sampled: usize,
    pub pairs_checked: u64,
    pub triples_checked: u64,
    /// Pairs the order could not compare.
    pub totality: ViolationTally,
    /// Pairs where `cmp(X,Y)` and `cmp(Y,X)` are not converses.
    pub antisymmetry: ViolationTally,
    /// Distinct intervals the order declares equal.
    pub separation: ViolationTally,
    pub transitivity: ViolationTally,
    /// Pairs with `X <=_KM Y`, `X != Y` where the order does not give `X < Y`.
    pub km_refinement: ViolationTally,
    pub pass: bool,
}

/// Triple budget above which transitivity is checked on random triples
/// instead of all of them.
const MAX_EXHAUSTIVE_TRIPLES: u64 = 8_000_000;

/// Empirically checks that `order` is a total order refining Kulisch–Miranker
/// on the grid intervals of `cfg` plus `cfg.random_count` random intervals.
pub fn is_admissible(order: &OrderSpec, cfg: &SamplingConfig) -> AdmissibilityReport {
    let mut sample = cfg.grid_intervals();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.random_count {
        sample.push(Interval::hull(rng.gen(), rng.gen()));
    }
    let n = sample.len();

    let rel: Vec<OrderRelation> = (0..n * n)
        .map(|ij| order.cmp(sample[ij / n], sample[ij % n]))
        .collect();
    let at = |i: usize, j: usize| rel[i * n + j];

    let mut report = AdmissibilityReport {
        order: order.to_string(),
        intervals_sampled: n,
        pairs_checked: 0,
        triples_checked: 0,
        totality: ViolationTally::default(),
        antisymmetry: ViolationTally::default(),
        separation: ViolationTally::default(),
        transitivity: ViolationTally::default(),
        km_refinement: ViolationTally::default(),
        pass: false,
    };

    for i in 0..n {
        for j in 0..n {
            let (x, y) = (sample[i], sample[j]);
            let r = at(i, j);
            report.pairs_checked += 1;
            if r == OrderRelation::Incomparable {
                report.totality.record(&[x, y]);
            }
            if at(j, i) != r.converse() {
                report.antisymmetry.record(&[x, y]);
            }
            if r == OrderRelation::Equal && x != y {
                report.separation.record(&[x, y]);
            }
            if x != y && km_compare(x, y).is_le() && r != OrderRelation::Less {
                report.km_refinement.record(&[x, y]);
            }
        }
    }

    let check_triple = |i: usize, j: usize, k: usize, report: &mut AdmissibilityReport| {
        report.triples_checked += 1;
        let (ij, jk, ik) = (at(i, j), at(j, k), at(i, k));
        if ij.is_le() && jk.is_le() {
            let strict = ij == OrderRelation::Less || jk == OrderRelation::Less;
            let ok = if strict {
                ik == OrderRelation::Less
            } else {
                ik.is_le()
            };
            if !ok {
                report
                    .transitivity
                    .record(&[sample[i], sample[j], sample[k]]);
            }
        }
    };

    if (n as u64).pow(3) <= MAX_EXHAUSTIVE_TRIPLES {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    check_triple(i, j, k, &mut report);
                }
            }
        }
    } else {
        for _ in 0..MAX_EXHAUSTIVE_TRIPLES {
            let (i, j, k) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            check_triple(i, j, k, &mut report);
        }
    }

    report.pass = [
        &report.totality,
        &report.antisymmetry,
        &report.separation,
        &report.transitivity,
        &report.km_refinement,
    ]
    .iter()
    .all(|t| t.count == 0);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn km_examples() {
        assert_eq!(km_compare(iv(0.1, 0.4), iv(0.2, 0.5)), OrderRelation::Less);
        assert_eq!(
            km_compare(iv(0.1, 0.6), iv(0.2, 0.5)),
            OrderRelation::Incomparable
        );
        assert_eq!(km_compare(iv(0.3, 0.3), iv(0.3, 0.3)), OrderRelation::Equal);
        assert_eq!(
            km_compare(iv(0.2, 0.5), iv(0.1, 0.5)),
            OrderRelation::Greater
        );
    }

    #[test]
    fn total_order_examples() {
        assert_eq!(
            OrderSpec::LEX_LOWER.cmp(iv(0.2, 0.9), iv(0.3, 0.4)),
            OrderRelation::Less
        );
        // decimal midpoints tie only up to representation error
        assert_eq!(
            OrderSpec::XU_YAGER
                .with_tolerance(1e-12)
                .cmp(iv(0.1, 0.5), iv(0.2, 0.4)),
            OrderRelation::Greater
        );
        assert_eq!(
            OrderSpec::XU_YAGER.cmp(iv(0.125, 0.5), iv(0.25, 0.375)),
            OrderRelation::Greater
        );
        assert_eq!(
            OrderSpec::LEX_UPPER.cmp(iv(0.2, 0.9), iv(0.3, 0.4)),
            OrderRelation::Greater
        );
        for o in OrderSpec::ADMISSIBLE {
            assert_eq!(o.cmp(iv(0.2, 0.7), iv(0.2, 0.7)), OrderRelation::Equal);
        }
    }

    #[test]
    fn linear_keys_compare_exactly() {
        assert_eq!(Key::Mid.compare(iv(0.125, 0.5), iv(0.25, 0.375), 0.0), 0);
        assert_eq!(Key::Width.compare(iv(0.125, 0.375), iv(0.5, 0.75), 0.0), 0);
        // the rounded sums are both 1.0
        let tiny = f64::EPSILON / 2.0;
        assert_eq!(0.5 + (0.5 + tiny), 1.0);
        assert_eq!(Key::Mid.compare(iv(0.5, 0.5 + tiny), iv(0.5, 0.5), 0.0), 1);
        assert_eq!(Key::Mid.compare(iv(0.1, 0.5), iv(0.2, 0.4), 0.0), -1);
        assert_eq!(Key::Mid.compare(iv(0.0, 1e-300), iv(0.0, 0.0), 0.0), 1);
        assert_eq!(Key::Width.compare(iv(0.2, 0.9), iv(0.3, 0.4), 0.0), 1);
    }

    #[test]
    fn tolerance_absorbs_key_noise() {
        let x = iv(0.3, 0.5);
        let y = iv(0.3 + 1e-13, 0.4);
        assert_eq!(OrderSpec::LEX_LOWER.cmp(x, y), OrderRelation::Less);
        let tol = OrderSpec::LEX_LOWER.with_tolerance(1e-9);
        assert_eq!(tol.cmp(x, y), OrderRelation::Greater);
        assert_eq!(
            OrderSpec::KM.compare_with_slack(iv(0.5, 0.5), iv(0.5 - 1e-12, 0.6), 1e-9),
            OrderRelation::Less
        );
    }

    #[test]
    fn max_and_min() {
        let (a, b) = (iv(0.2, 0.9), iv(0.3, 0.4));
        assert_eq!(OrderSpec::LEX_LOWER.max(a, b), b);
        assert_eq!(OrderSpec::LEX_UPPER.max(a, b), a);
        assert_eq!(OrderSpec::KM.max(a, b), iv(0.3, 0.9));
        assert_eq!(OrderSpec::KM.min(a, b), iv(0.2, 0.4));
    }

    #[test]
    fn names_round_trip() {
        for s in [
            "km",
            "lex-lower",
            "lex-upper",
            "xu-yager",
            "two-key:mid,width",
        ] {
            assert_eq!(s.parse::<OrderSpec>().unwrap().to_string(), s);
        }
        assert!(matches!(
            "lexi".parse::<OrderSpec>(),
            Err(OrderParseError::UnknownOrder(_))
        ));
        assert!(matches!(
            "two-key:mid,len".parse::<OrderSpec>(),
            Err(OrderParseError::UnknownKey(_))
        ));
    }

    fn grid_cfg(step: f64) -> SamplingConfig {
        SamplingConfig {
            grid_step: step,
            ..SamplingConfig::default()
        }
    }

    #[test]
    fn lex_lower_is_admissible_on_eighth_grid() {
        let r = is_admissible(&OrderSpec::LEX_LOWER, &grid_cfg(0.125));
        assert_eq!(r.intervals_sampled, 45);
        assert_eq!(r.triples_checked, 45 * 45 * 45);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn equal_midpoints_break_separation() {
        let r = is_admissible(&OrderSpec::two_key(Key::Mid, Key::Mid), &grid_cfg(0.1));
        assert!(!r.pass);
        assert!(r.separation.count > 0);
        let w = &r.separation.examples[0];
        assert_ne!(w[0], w[1]);
        assert_eq!(w[0].mid(), w[1].mid());
    }

    #[test]
    fn km_is_not_total() {
        let r = is_admissible(&OrderSpec::KM, &grid_cfg(0.1));
        assert!(!r.pass);
        assert!(r.totality.count > 0);
    }

    #[test]
    fn width_first_does_not_refine_km() {
        let r = is_admissible(&OrderSpec::two_key(Key::Width, Key::Lower), &grid_cfg(0.25));
        assert!(!r.pass);
        assert!(r.km_refinement.count > 0);
    }

    #[test]
    fn random_samples_are_seeded() {
        let cfg = SamplingConfig {
            grid_step: 0.5,
            random_count: 30,
            seed: 11,
            ..SamplingConfig::default()
        };
        let a = is_admissible(&OrderSpec::XU_YAGER, &cfg);
        let b = is_admissible(&OrderSpec::XU_YAGER, &cfg);
        assert_eq!(a, b);
        assert_eq!(a.intervals_sampled, 6 + 30);
        assert!(a.pass);
    }
}
