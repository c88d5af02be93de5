use clap::Subcommand;
use serde_json::json;

use crs_core::freegrp::{
    adyan_word, schreier_basis, schreier_graph, verbal_subgroup, FinGroup, FreeWord, Perm, SchreierGraph,
};
use crs_core::{Error, Result};

use crate::output::{Format, Sink};
use crate::RunConfig;

#[derive(Debug, Subcommand)]
pub enum FreeCommand {
    /// Schreier graph and free basis of the kernel of F_r -> <images>.
    Schreier {
        #[arg(long)]
        rank: usize,
        /// Permutations in cycle notation separated by `;`.
        #[arg(long)]
        images: String,
        /// Use the action on points with this base point (1-based) instead
        /// of the regular action of the image group.
        #[arg(long)]
        base: Option<usize>,
    },
    /// The word (x1^{np} x2^{np} x1^{-np} x2^{-np})^n.
    Adyan {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
    },
    /// Verbal subgroup of a permutation group.
    Verbal {
        /// Generators in cycle notation separated by `;`.
        #[arg(long)]
        group: String,
        /// Words such as "x1^2" separated by `;`.
        #[arg(long)]
        words: String,
    },
}

/// Parses `;`-separated permutations at their common degree.
fn parse_perms(text: &str) -> Result<Vec<Perm>> {
    let parts: Vec<&str> = text.split(';').map(str::trim).collect();
    let mut degree = 0;
    for p in &parts {
        degree = degree.max(p.parse::<Perm>()?.degree());
    }
    parts.iter().map(|p| Perm::parse(p, degree)).collect()
}

fn parse_words(text: &str) -> Result<Vec<FreeWord>> {
    let words: Vec<FreeWord> = text.split(';').map(str::parse).collect::<Result<_>>()?;
    let rank = words.iter().map(FreeWord::rank).max().unwrap_or(1);
    words.iter().map(|w| w.with_rank(rank)).collect()
}

pub fn run(c: &FreeCommand, cfg: &RunConfig, out: &mut Sink) -> Result<()> {
    match c {
        FreeCommand::Schreier { rank, images, base } => {
            let perms = parse_perms(images)?;
            let g = match base {
                Some(0) => return Err(Error::Domain("base point is 1-based".into())),
                Some(b) => SchreierGraph::from_action(*rank, &perms, b - 1)?,
                None => schreier_graph(*rank, &perms, cfg.group_cap)?,
            };
            let basis = schreier_basis(&g);
            match cfg.format {
                Format::Json => out.json(&json!({
                    "rank": rank,
                    "index": g.index(),
                    "basis_size": basis.len(),
                    "basis": basis.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                })),
                Format::Csv => {
                    out.line("edge_from,generator,word");
                    for ((v, s), w) in g.non_tree_edges().iter().zip(&basis) {
                        out.line(format!("{v},x{},{w}", s + 1));
                    }
                }
                Format::Plain => {
                    out.line(format!("index {}", g.index()));
                    out.line(format!("basis size {}", basis.len()));
                    for w in &basis {
                        out.line(w.to_string());
                    }
                }
            }
        }
        FreeCommand::Adyan { n, p } => {
            let w = adyan_word(*n, *p)?;
            match cfg.format {
                Format::Json => out.json(&json!({ "n": n, "p": p, "word": w.to_string(), "length": w.len() })),
                Format::Csv => {
                    out.line("n,p,length,word");
                    out.line(format!("{n},{p},{},{w}", w.len()));
                }
                Format::Plain => {
                    out.line(w.to_string());
                    out.line(format!("length {}", w.len()));
                }
            }
        }
        FreeCommand::Verbal { group, words } => {
            let gens = parse_perms(group)?;
            let degree = gens.first().map_or(0, Perm::degree);
            let g = FinGroup::generate(degree, gens, cfg.group_cap)?;
            let w = parse_words(words)?;
            let v = verbal_subgroup(&g, &w, cfg.enum_cap)?;
            let elems: Vec<String> = v.element_set().iter().map(Perm::to_string).collect();
            match cfg.format {
                Format::Json => out.json(&json!({
                    "group_order": g.order(),
                    "order": v.order(),
                    "normal": v.is_normal_in(&g),
                    "elements": elems,
                })),
                Format::Csv => {
                    out.line("element");
                    for e in &elems {
                        out.line(e);
                    }
                }
                Format::Plain => {
                    out.line(format!("order {} (in a group of order {})", v.order(), g.order()));
                    for e in &elems {
                        out.line(e);
                    }
                }
            }
        }
    }
    Ok(())
}
