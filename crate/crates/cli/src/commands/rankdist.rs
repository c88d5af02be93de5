use clap::Args;
use serde_json::json;

use crs_core::crs::{intersection_dim_distribution, marginal_csv, marginal_table, MarginalMode};
use crs_core::{Error, Result};

use crate::output::{approx, rat, Format, Sink};
use crate::RunConfig;

#[derive(Debug, Args)]
pub struct RankdistArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    kappa: usize,
    #[arg(long)]
    n: usize,
    /// Also enumerate every matrix and check the table against the count.
    #[arg(long, conflicts_with = "samples")]
    exact: bool,
    /// Number of uniform matrices to sample.
    #[arg(long)]
    samples: Option<u64>,
}

pub fn run(a: &RankdistArgs, cfg: &RunConfig, out: &mut Sink) -> Result<()> {
    crs_core::qlinalg::FieldSpec::new(a.q)?;
    let empirical = match a.samples {
        Some(samples) => Some(intersection_dim_distribution(
            a.q,
            a.kappa,
            a.n,
            MarginalMode::MonteCarlo {
                samples,
                seed: cfg.seed,
                workers: cfg.workers,
            },
        )?),
        None => None,
    };
    let rows = marginal_table(a.q, a.kappa, a.n, empirical.as_deref());
    if a.exact {
        let counted =
            intersection_dim_distribution(a.q, a.kappa, a.n, MarginalMode::Exact { cap: cfg.enum_cap })?;
        if let Some(row) = rows.iter().find(|r| r.exact != counted[r.k]) {
            return Err(Error::Invariant(format!(
                "k = {}: formula {} but enumeration {}",
                row.k, row.exact, counted[row.k]
            )));
        }
    }
    match cfg.format {
        Format::Csv => out.line(marginal_csv(&rows).trim_end()),
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| {
                    let mut v = json!({ "k": r.k, "exact": rat(&r.exact) });
                    if let (Some(e), Some(d)) = (&r.empirical, r.abs_err()) {
                        v["empirical"] = json!(rat(e));
                        v["abs_err"] = json!(rat(&d));
                    }
                    v
                })
                .collect();
            let mut doc = json!({
                "q": a.q,
                "kappa": a.kappa,
                "n": a.n,
                "mode": if a.samples.is_some() { "monte_carlo" } else if a.exact { "exact" } else { "formula" },
                "rows": rows,
            });
            if let Some(s) = a.samples {
                doc["samples"] = json!(s);
                doc["seed"] = json!(cfg.seed);
            }
            out.json(&doc);
        }
        Format::Plain => {
            out.line(format!("q = {}, kappa = {}, n = {}", a.q, a.kappa, a.n));
            for r in &rows {
                let mut line = format!("k = {}  exact {} ({})", r.k, rat(&r.exact), approx(&r.exact));
                if let (Some(e), Some(d)) = (&r.empirical, r.abs_err()) {
                    line.push_str(&format!("  empirical {} ({})  abs_err {}", rat(e), approx(e), approx(&d)));
                }
                out.line(line);
            }
        }
    }
    Ok(())
}
