//! Run reports and their two renderings.
//!
//! JSON output carries exact fraction strings only. The human rendering adds
//! a four-place decimal next to every non-integral value.

use std::fmt::Write as _;

use serde::Serialize;
use stackprod_core::{Instance, Ratio, RawInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceSummary>,
    pub result: Payload,
    pub timing_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct FacilityRow {
    pub id: usize,
    pub p: Ratio,
    pub a: Ratio,
}

/// The instance after normalization: facilities by decreasing rate.
#[derive(Debug, Serialize)]
pub struct InstanceSummary {
    pub facilities: usize,
    #[serde(rename = "R_l")]
    pub leader_budget: Ratio,
    #[serde(rename = "R_f")]
    pub follower_budget: Ratio,
    pub total_quantity: Ratio,
    pub order: Vec<FacilityRow>,
}

impl InstanceSummary {
    pub fn new(inst: &Instance) -> Self {
        InstanceSummary {
            facilities: inst.len(),
            leader_budget: inst.leader_budget().clone(),
            follower_budget: inst.follower_budget().clone(),
            total_quantity: inst.total_quantity().clone(),
            order: inst
                .facilities()
                .iter()
                .map(|f| FacilityRow {
                    id: f.id,
                    p: f.p.clone(),
                    a: f.a.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TraceRow {
    /// Prefix length in normalized order.
    pub size: usize,
    /// Id of the facility that joined at this step.
    pub added: usize,
    pub rate: Ratio,
}

#[derive(Debug, Serialize)]
pub struct EvaluateRow {
    pub id: usize,
    pub production: Ratio,
    pub reduction: Ratio,
}

#[derive(Debug, Serialize)]
pub struct TrialRow {
    /// Seed and size that regenerate the trial instance; absent when the
    /// instance came from a file.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub n: usize,
    pub oracle_value: Ratio,
    pub solver_value: Ratio,
    pub gap: Ratio,
    pub agree: bool,
    /// Leader strategy under test (follower oracle only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<Ratio>>,
    /// Strategy attaining the oracle value, in input order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Ratio>>,
    /// Full instance, attached to disagreements.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<RawInstance>,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Solve {
        strategy: Vec<Ratio>,
        support: Vec<usize>,
        rate: Ratio,
        value: Ratio,
        classification: String,
        trace: Vec<TraceRow>,
        /// Id of the first facility rejected by the scan.
        stopped_at: Option<usize>,
    },
    Follower {
        x: Vec<Ratio>,
        destruction_ratios: Vec<Ratio>,
        order: Vec<usize>,
        threshold: usize,
        destroyed: Vec<usize>,
        y: Vec<Ratio>,
        value: Ratio,
        classification: String,
    },
    Evaluate {
        rows: Vec<EvaluateRow>,
        total_production: Ratio,
        total_reduction: Ratio,
        value: Ratio,
    },
    Check {
        oracle: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        resolution: Option<u32>,
        agreed: usize,
        total: usize,
        trials: Vec<TrialRow>,
    },
    Generate {
        n: usize,
        seed: u64,
        output: String,
    },
}

impl RunReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Human => self.human(),
        }
    }

    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "$ {}", self.command.join(" "));
        if let Some(s) = &self.instance {
            let _ = writeln!(
                out,
                "instance: {} facilities, R_l = {}, R_f = {}, Σa = {}",
                s.facilities,
                num(&s.leader_budget),
                num(&s.follower_budget),
                num(&s.total_quantity)
            );
            if s.order.len() <= 20 {
                for f in &s.order {
                    let _ = writeln!(out, "  facility {:>3}: p = {}, a = {}", f.id, num(&f.p), num(&f.a));
                }
            }
        }
        self.result.human(&mut out);
        let _ = writeln!(out, "time: {:.3} ms", self.timing_ms);
        out
    }
}

/// `28/3 (≈9.3333)`, or just `5` for integers.
pub fn num(r: &Ratio) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        format!("{r} (≈{})", r.to_decimal_string(4))
    }
}

fn ids(ids: &[usize]) -> String {
    let parts: Vec<String> = ids.iter().map(|i| i.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn per_facility(out: &mut String, label: &str, values: &[Ratio]) {
    let _ = writeln!(out, "{label}:");
    for (i, v) in values.iter().enumerate() {
        let _ = writeln!(out, "  facility {:>3}: {}", i + 1, num(v));
    }
}

impl Payload {
    fn human(&self, out: &mut String) {
        match self {
            Payload::Solve {
                strategy,
                support,
                rate,
                value,
                classification,
                trace,
                stopped_at,
            } => {
                if strategy.len() <= 50 {
                    per_facility(out, "optimal x", strategy);
                }
                let _ = writeln!(
                    out,
                    "support: {}",
                    if support.len() <= 50 {
                        ids(support)
                    } else {
                        format!("{} facilities", support.len())
                    }
                );
                let _ = writeln!(out, "composed rate: {}", num(rate));
                let _ = writeln!(out, "value: {}", num(value));
                let _ = writeln!(out, "class: {classification}");
                if trace.len() <= 50 {
                    let _ = writeln!(out, "trace:");
                    for row in trace {
                        let _ = writeln!(out, "  {:>3} (+{}): {}", row.size, row.added, num(&row.rate));
                    }
                } else {
                    let _ = writeln!(out, "trace: {} accepted prefixes", trace.len());
                }
                match stopped_at {
                    Some(id) => {
                        let _ = writeln!(out, "stopped before facility {id}");
                    }
                    None => {
                        let _ = writeln!(out, "all facilities accepted");
                    }
                }
            }
            Payload::Follower {
                x,
                destruction_ratios,
                order,
                threshold,
                destroyed,
                y,
                value,
                classification,
            } => {
                let _ = writeln!(out, "{:>10} {:>22} {:>22} {:>22}", "facility", "x", "ratio", "y");
                for i in 0..x.len() {
                    let _ = writeln!(
                        out,
                        "{:>10} {:>22} {:>22} {:>22}",
                        i + 1,
                        num(&x[i]),
                        num(&destruction_ratios[i]),
                        num(&y[i])
                    );
                }
                let _ = writeln!(out, "order ω: {}", ids(order));
                let _ = writeln!(out, "threshold q: {threshold}");
                let _ = writeln!(out, "destroyed A: {}", ids(destroyed));
                let _ = writeln!(out, "worst-case production: {}", num(value));
                let _ = writeln!(out, "class of x: {classification}");
            }
            Payload::Evaluate {
                rows,
                total_production,
                total_reduction,
                value,
            } => {
                let _ = writeln!(out, "{:>10} {:>22} {:>22}", "facility", "p·x", "p·x·y/a");
                for row in rows {
                    let _ = writeln!(
                        out,
                        "{:>10} {:>22} {:>22}",
                        row.id,
                        num(&row.production),
                        num(&row.reduction)
                    );
                }
                let _ = writeln!(
                    out,
                    "{:>10} {:>22} {:>22}",
                    "sum",
                    num(total_production),
                    num(total_reduction)
                );
                let _ = writeln!(out, "production after destruction: {}", num(value));
            }
            Payload::Check {
                oracle,
                resolution,
                agreed,
                total,
                trials,
            } => {
                match resolution {
                    Some(r) => {
                        let _ = writeln!(out, "oracle: {oracle} (resolution {r})");
                    }
                    None => {
                        let _ = writeln!(out, "oracle: {oracle}");
                    }
                }
                for (k, t) in trials.iter().enumerate() {
                    if trials.len() > 20 && t.agree {
                        continue;
                    }
                    let origin = t.seed.map_or(String::new(), |s| format!(" seed {s}"));
                    let _ = writeln!(
                        out,
                        "  trial {k}{origin} n={}: oracle {} solver {} gap {} {}",
                        t.n,
                        num(&t.oracle_value),
                        num(&t.solver_value),
                        num(&t.gap),
                        if t.agree { "agree" } else { "DISAGREE" }
                    );
                    if !t.agree {
                        if let Some(inst) = &t.instance {
                            let _ = writeln!(out, "{}", inst.to_json_pretty());
                        }
                    }
                }
                let _ = writeln!(out, "{agreed}/{total} agree");
            }
            Payload::Generate { n, seed, output } => {
                let _ = writeln!(out, "wrote {n} facilities (seed {seed}) to {output}");
            }
        }
    }
}
