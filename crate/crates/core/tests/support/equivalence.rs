//! Runs every checker next to its brute-force counterpart over the builtin
//! catalogue and orders.

#![allow(dead_code)]

use ivmono::claims::builtin_catalogue;
use ivmono::{
    check_directional_adm, check_directional_km, check_g_weak, check_increasing, check_weak_adm,
    check_weak_km, Builtin, CheckError, CheckResult, DegenerateVec, IVFunction, OrderSpec,
    RealPairs, SamplingConfig, Sense, Status,
};

use super::oracle::{self, Verdict};

pub struct Case {
    pub label: String,
    pub checker: Verdict,
    pub oracle: Verdict,
}

fn verdict(r: Result<CheckResult, CheckError>) -> Verdict {
    match r {
        Ok(r) => match r.status {
            Status::VerifiedUpToSampling => Verdict::Holds,
            Status::Counterexample => Verdict::Fails,
            Status::Vacuous => Verdict::Vacuous,
        },
        Err(CheckError::GContract { .. }) => Verdict::BadG,
        Err(e) => panic!("checker error: {e}"),
    }
}

const KM_PAIRS: [[(f64, f64); 2]; 3] = [
    [(1.0, 1.0), (1.0, 1.0)],
    [(-1.0, -1.0), (1.0, 1.0)],
    [(1.0, -1.0), (1.0, -1.0)],
];
const DEG_DIRS: [[f64; 2]; 3] = [[1.0, 1.0], [-1.0, 1.0], [0.0, 1.0]];

/// All (function, order, property) combinations at grid step `h`.
pub fn run(h: f64) -> Vec<Case> {
    let cfg = SamplingConfig::default().with_grid_step(h);
    let degenerate = SamplingConfig {
        degenerate_shifts: true,
        ..cfg.clone()
    };
    let probsum = IVFunction::from_builtin(Builtin::ProbabilisticSum, 2).unwrap();
    let mut cases = Vec::new();
    let mut push = |label: String, checker: Verdict, oracle: Verdict| {
        cases.push(Case {
            label,
            checker,
            oracle,
        })
    };
    for f in builtin_catalogue() {
        for order in OrderSpec::BUILTIN {
            let o = order.to_string();
            for (sense, inc) in [(Sense::Increasing, true), (Sense::Decreasing, false)] {
                let tag = |p: &str| format!("{f} {o} {p}-{sense}");
                push(
                    tag("standard"),
                    verdict(check_increasing(&f, &order, &cfg, sense)),
                    oracle::increasing(&f, &o, h, inc),
                );
                if order.is_total() {
                    push(
                        tag("weak"),
                        verdict(check_weak_adm(&f, &order, &cfg, sense)),
                        oracle::weak(&f, &o, h, false, inc),
                    );
                    push(
                        tag("weak-degenerate"),
                        verdict(check_weak_adm(&f, &order, &degenerate, sense)),
                        oracle::weak(&f, &o, h, true, inc),
                    );
                    for v in DEG_DIRS {
                        let dir = DegenerateVec::from_values(&v).unwrap();
                        push(
                            tag(&format!("dir{v:?}")),
                            verdict(check_directional_adm(&f, &dir, &order, &cfg, sense)),
                            oracle::directional_deg(&f, &v, &o, h, inc),
                        );
                    }
                } else {
                    push(
                        tag("weak-km(1,1)"),
                        verdict(check_weak_km(&f, (1.0, 1.0), &cfg, sense)),
                        oracle::directional_pairs(&f, &[(1.0, 1.0); 2], h, inc),
                    );
                    for p in KM_PAIRS {
                        let dir = RealPairs::new(p.to_vec()).unwrap();
                        push(
                            tag(&format!("dir-km{p:?}")),
                            verdict(check_directional_km(&f, &dir, &cfg, sense)),
                            oracle::directional_pairs(&f, &p, h, inc),
                        );
                    }
                }
                for g in [probsum.clone(), IVFunction::g_max(order)] {
                    push(
                        tag(&format!("g-weak[{g}]")),
                        verdict(check_g_weak(&f, &g, &order, &cfg, sense)),
                        oracle::g_weak(&f, &g, &o, h, inc),
                    );
                }
            }
        }
    }
    cases
}
