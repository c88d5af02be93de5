use clap::Subcommand;
use serde_json::json;

use crs_core::torus2::{beta, beta_product_ratio, count_generating_pairs, decompose_tau};
use crs_core::{Error, Result};

use crate::output::{approx, rat, Format, Sink};
use crate::RunConfig;

#[derive(Debug, Subcommand)]
pub enum TorusCommand {
    /// Check τ_r = Σ α(k, r) ν_k pointwise on (Z/r)².
    Decompose {
        #[arg(long)]
        r: u64,
    },
    /// Table of β(r) against a brute-force count of generating pairs.
    Beta {
        #[arg(long)]
        r_max: u64,
    },
}

pub fn run(c: &TorusCommand, cfg: &RunConfig, out: &mut Sink) -> Result<()> {
    match c {
        TorusCommand::Decompose { r } => {
            let rep = decompose_tau(*r, cfg.enum_cap)?;
            match cfg.format {
                Format::Json => out.json(&json!({
                    "r": rep.r,
                    "points": rep.points_checked,
                    "alphas": rep.alphas.iter().map(|(k, a)| json!({"k": k, "alpha": rat(a)})).collect::<Vec<_>>(),
                    "residual": rat(&rep.max_discrepancy),
                })),
                Format::Csv => {
                    out.line("k,alpha");
                    for (k, a) in &rep.alphas {
                        out.line(format!("{k},{}", rat(a)));
                    }
                }
                Format::Plain => {
                    out.line(format!("r = {}, {} points checked", rep.r, rep.points_checked));
                    for (k, a) in &rep.alphas {
                        out.line(format!("alpha({k}, {}) = {}", rep.r, rat(a)));
                    }
                    out.line(format!("residual {}", rat(&rep.max_discrepancy)));
                }
            }
            if !rep.is_exact() {
                return Err(Error::Invariant(format!(
                    "nonzero residual {} at r = {r}",
                    rep.max_discrepancy
                )));
            }
        }
        TorusCommand::Beta { r_max } => {
            let mut rows = Vec::new();
            for r in 1..=*r_max {
                let b = beta(r)?;
                let brute = count_generating_pairs(r, cfg.enum_cap)?;
                rows.push((r, b, brute, beta_product_ratio(r)?));
            }
            match cfg.format {
                Format::Json => out.json(&json!({
                    "rows": rows.iter().map(|(r, b, c, q)| json!({
                        "r": r,
                        "beta": b.to_string(),
                        "brute": c.to_string(),
                        "beta_over_r2": rat(q),
                    })).collect::<Vec<_>>(),
                })),
                Format::Csv => {
                    out.line("r,beta,brute,beta_over_r2");
                    for (r, b, c, q) in &rows {
                        out.line(format!("{r},{b},{c},{}", rat(q)));
                    }
                }
                Format::Plain => {
                    for (r, b, c, q) in &rows {
                        out.line(format!("r = {r}  beta {b}  brute {c}  beta/r^2 {} ({})", rat(q), approx(q)));
                    }
                }
            }
            if let Some((r, b, c, _)) = rows.iter().find(|(_, b, c, _)| b != c) {
                return Err(Error::Invariant(format!("beta({r}) = {b} but brute force gives {c}")));
            }
        }
    }
    Ok(())
}
