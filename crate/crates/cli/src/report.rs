use std::fmt::Write as _;

use ivmono::claims::ClaimOutcome;
use ivmono::{AdmissibilityReport, CheckResult, SamplingConfig, Status, Witness};
use serde::{Deserialize, Serialize};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Result of one `check` invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub function: String,
    pub arity: usize,
    pub order: String,
    pub property: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(flatten)]
    pub result: CheckResult,
    pub timing_ms: u64,
}

/// Result of `verify-paper`: one outcome per suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub version: String,
    pub command: String,
    pub config: SamplingConfig,
    pub pass: bool,
    pub claims: Vec<ClaimOutcome>,
    pub timing_ms: u64,
}

/// Result of `orders validate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrdersReport {
    pub version: String,
    pub command: String,
    pub config: SamplingConfig,
    #[serde(flatten)]
    pub report: AdmissibilityReport,
    pub timing_ms: u64,
}

fn witness_lines(out: &mut String, w: &Witness, indent: &str) {
    let _ = writeln!(out, "{indent}base:       {}", w.base);
    let _ = writeln!(out, "{indent}shift:      {}", w.shift);
    let _ = writeln!(out, "{indent}shifted:    {}", w.shifted);
    let _ = writeln!(out, "{indent}F(base):    {}", w.before);
    let _ = writeln!(out, "{indent}F(shifted): {}", w.after);
    let _ = writeln!(out, "{indent}relation:   F(base) {} F(shifted)", w.relation);
}

impl Report {
    pub fn human(&self) -> String {
        let mut out = String::new();
        let r = &self.result;
        let _ = writeln!(out, "function:   {} (arity {})", self.function, self.arity);
        let _ = writeln!(out, "order:      {}", self.order);
        let _ = writeln!(out, "property:   {}", self.property);
        if let Some(d) = &self.direction {
            let _ = writeln!(out, "direction:  {d}");
        }
        if let Some(g) = &self.g {
            let _ = writeln!(out, "G:          {g}");
        }
        let _ = writeln!(out, "status:     {}", r.status);
        let _ = writeln!(
            out,
            "checked:    {} comparisons, {} failed, {} shifts skipped",
            r.points_checked, r.comparisons_failed, r.shifts_skipped
        );
        if let Some(w) = &r.witness {
            let _ = writeln!(out, "witness:");
            witness_lines(&mut out, w, "  ");
        }
        let _ = writeln!(
            out,
            "sampling:   grid step {}, {} random, {} shifts, seed {}",
            r.config.grid_step, r.config.random_count, r.config.shift_count, r.config.seed
        );
        let _ = writeln!(out, "time:       {} ms", self.timing_ms);
        out
    }

    pub fn exit_code(&self) -> i32 {
        match self.result.status {
            Status::Counterexample => 1,
            Status::VerifiedUpToSampling | Status::Vacuous => 0,
        }
    }
}

impl SuiteReport {
    pub fn human(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let asserted = c.checks.iter().filter(|k| k.asserted).count();
            let _ = writeln!(
                out,
                "{} {}: {} asserted of {} checks",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                asserted,
                c.checks.len()
            );
            if let Some(f) = c.first_failure() {
                let _ = writeln!(
                    out,
                    "  {} under {}, {}: {}",
                    f.function, f.order, f.property, f.result.status
                );
                if let Some(w) = &f.result.witness {
                    witness_lines(&mut out, w, "    ");
                }
            }
        }
        let _ = writeln!(out, "time: {} ms", self.timing_ms);
        out
    }
}

impl OrdersReport {
    pub fn human(&self) -> String {
        let r = &self.report;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "order {}: {} intervals, {} pairs, {} triples",
            r.order, r.intervals_sampled, r.pairs_checked, r.triples_checked
        );
        for (name, t) in [
            ("totality", &r.totality),
            ("antisymmetry", &r.antisymmetry),
            ("separation", &r.separation),
            ("transitivity", &r.transitivity),
            ("km-refinement", &r.km_refinement),
        ] {
            let _ = write!(out, "  {name:<14}{} violations", t.count);
            if let Some(e) = t.examples.first() {
                let items: Vec<String> = e.iter().map(ToString::to_string).collect();
                let _ = write!(out, " (e.g. {})", items.join(", "));
            }
            out.push('\n');
        }
        let _ = writeln!(out, "{}", if r.pass { "PASS" } else { "FAIL" });
        let _ = writeln!(out, "time: {} ms", self.timing_ms);
        out
    }
}
