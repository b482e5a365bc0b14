//! Exhaustive check of the interval arithmetic identities on a dyadic grid.

#![allow(dead_code)]

use ivmono::Interval;

/// Scale factors with exact products among themselves.
pub const ALPHAS: [f64; 9] = [-2.0, -1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0, 2.0];

pub fn dyadic_grid(bits: u32) -> Vec<Interval> {
    let m = 1u32 << bits;
    let mut out = Vec::new();
    for i in 0..=m {
        for j in i..=m {
            out.push(Interval::new(i as f64 / m as f64, j as f64 / m as f64).unwrap());
        }
    }
    out
}

fn ordered(x: Interval) -> bool {
    x.lo() <= x.hi()
}

/// Every law violation found on `grid`, described. Comparisons are
/// bit-exact.
pub fn violations(grid: &[Interval]) -> Vec<String> {
    let mut bad = Vec::new();
    let mut fail = |law: &str, args: String| {
        if bad.len() < 20 {
            bad.push(format!("{law}: {args}"));
        }
    };
    for &x in grid {
        if !ordered(x.opposite()) {
            fail("opposite ordered", format!("{x}"));
        }
        if x.opposite().opposite() != x {
            fail("opposite involution", format!("{x}"));
        }
        if x + Interval::ZERO != x || Interval::ZERO + x != x {
            fail("additive identity", format!("{x}"));
        }
        for a in ALPHAS {
            if !ordered(x.scale(a)) {
                fail("scale ordered", format!("{a} {x}"));
            }
            for b in ALPHAS {
                if x.scale(b).scale(a) != x.scale(a * b) {
                    fail("scale composition", format!("{a} {b} {x}"));
                }
            }
        }
        if x.is_degenerate() {
            let v = x.lo();
            for a in ALPHAS {
                let s = x.scale(a);
                if !s.is_degenerate() || s.mid() != a * v {
                    fail("degenerate scale", format!("{a} {x}"));
                }
            }
            if !x.opposite().is_degenerate() || x.opposite().mid() != -v {
                fail("degenerate opposite", format!("{x}"));
            }
        }
        for &y in grid {
            let (s, d) = (x + y, x - y);
            let p = x.mul_pos(y).expect("grid intervals are nonnegative");
            if !ordered(s) || !ordered(d) || !ordered(p) {
                fail("results ordered", format!("{x} {y}"));
            }
            if s != y + x {
                fail("add commutative", format!("{x} {y}"));
            }
            if d != x + y.opposite() {
                fail("sub via opposite", format!("{x} {y}"));
            }
            if s.width() != x.width() + y.width() || d.width() != x.width() + y.width() {
                fail("width additivity", format!("{x} {y}"));
            }
            if s != Interval::new(x.lo() + y.lo(), x.hi() + y.hi()).unwrap()
                || d != Interval::new(x.lo() - y.hi(), x.hi() - y.lo()).unwrap()
                || p != Interval::new(x.lo() * y.lo(), x.hi() * y.hi()).unwrap()
            {
                fail("endpoint formulas", format!("{x} {y}"));
            }
            if x.is_degenerate() && y.is_degenerate() {
                let (u, v) = (x.lo(), y.lo());
                if !(s.is_degenerate() && d.is_degenerate() && p.is_degenerate())
                    || s.mid() != u + v
                    || d.mid() != u - v
                    || p.mid() != u * v
                {
                    fail("degenerate closure", format!("{x} {y}"));
                }
            }
            for &z in grid {
                if (x + y) + z != x + (y + z) {
                    fail("add associative", format!("{x} {y} {z}"));
                }
            }
        }
    }
    bad
}
