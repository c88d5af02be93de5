use clap::{Args, Subcommand};
use serde_json::json;

use crs_core::crs::{
    classify_limit, enumerate_params, exact_distribution, sample, CrsParam, SequenceDescriptor, Side,
    TruncSubgroup,
};
use crs_core::finab::FinAbGroup;
use crs_core::{rng, Result};

use crate::output::{rat, Format, Sink};
use crate::RunConfig;

#[derive(Debug, Subcommand)]
pub enum CrsCommand {
    /// List parameters (m, F) on A_n with |F| <= max-order.
    Enum {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        max_order: u64,
    },
    /// Draw random subgroups of (Z/n)^coords.
    Sample {
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, default_value_t = 1)]
        samples: u64,
    },
    /// Exact truncated law by enumerating every homomorphism.
    Exact {
        #[command(flatten)]
        param: ParamArgs,
    },
    /// Limit parameter of a sequence described in JSON.
    Limit {
        #[arg(long)]
        descriptor: String,
    },
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    m: u64,
    /// Finite abelian group, e.g. "[2,4]", "Z/2 + Z/4" or "0".
    #[arg(long, default_value = "0")]
    group: String,
    #[arg(long)]
    coords: usize,
    /// ker or ann.
    #[arg(long, default_value = "ker")]
    side: String,
}

impl ParamArgs {
    fn resolve(&self) -> Result<(CrsParam, Side)> {
        let group: FinAbGroup = self.group.parse()?;
        Ok((CrsParam::new(self.n, self.m, group)?, self.side.parse()?))
    }
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Kernel => "ker",
        Side::Annihilator => "ann",
    }
}

fn param_json(p: &CrsParam) -> serde_json::Value {
    json!({
        "ambient_n": p.ambient_n(),
        "m": p.m(),
        "group": p.group().to_string(),
        "cyclic_orders": p.group().cyclic_orders(),
    })
}

fn gens_csv(s: &TruncSubgroup) -> String {
    let rows: Vec<String> = s
        .gens()
        .iter()
        .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    rows.join(";")
}

pub fn run(c: &CrsCommand, cfg: &RunConfig, out: &mut Sink) -> Result<()> {
    match c {
        CrsCommand::Enum { n, max_order } => {
            let params = enumerate_params(*n, *max_order);
            match cfg.format {
                Format::Json => out.json(&json!({
                    "n": n,
                    "max_order": max_order,
                    "params": params.iter().map(param_json).collect::<Vec<_>>(),
                })),
                Format::Csv => {
                    out.line("m,group");
                    for p in &params {
                        out.line(format!("{},{}", p.m(), p.group()));
                    }
                }
                Format::Plain => {
                    for p in &params {
                        out.line(p.to_string());
                    }
                }
            }
        }
        CrsCommand::Sample { param, samples } => {
            let (p, side) = param.resolve()?;
            let mut r = rng::stream(cfg.seed, 0);
            if cfg.format == Format::Csv {
                out.line("index,order,gens");
            }
            for i in 0..*samples {
                let s = sample(&p, side, param.coords, &mut r)?;
                match cfg.format {
                    Format::Json => out.line(
                        json!({ "index": i, "order": s.order().to_string(), "gens": s.gens() }).to_string(),
                    ),
                    Format::Csv => out.line(format!("{i},{},{}", s.order(), gens_csv(&s))),
                    Format::Plain => out.line(s.to_string()),
                }
            }
        }
        CrsCommand::Exact { param } => {
            let (p, side) = param.resolve()?;
            let d = exact_distribution(&p, side, param.coords, cfg.enum_cap)?;
            match cfg.format {
                Format::Json => out.line(d.to_json()),
                Format::Csv => {
                    out.line("prob,order,gens");
                    for (s, pr) in d.entries() {
                        out.line(format!("{},{},{}", rat(pr), s.order(), gens_csv(s)));
                    }
                }
                Format::Plain => {
                    out.line(format!(
                        "{p} on (Z/{})^{}, {} side, {} subgroups",
                        param.n,
                        param.coords,
                        side_name(side),
                        d.len()
                    ));
                    for (s, pr) in d.entries() {
                        out.line(format!("{}\t{s}", rat(pr)));
                    }
                }
            }
        }
        CrsCommand::Limit { descriptor } => {
            let seq = SequenceDescriptor::from_json(descriptor)?;
            let p = classify_limit(&seq);
            match cfg.format {
                Format::Json => out.json(&param_json(&p)),
                Format::Csv => {
                    out.line("m,group");
                    out.line(format!("{},{}", p.m(), p.group()));
                }
                Format::Plain => out.line(p.to_string()),
            }
        }
    }
    Ok(())
}
