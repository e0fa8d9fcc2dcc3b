//! `cover-genus`: decompose fiber products of branched coverings given by
//! permutation monodromy, compute Galois closures and tameness verdicts, and
//! verify the genus inequalities on concrete or fuzzed instances.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cover_genus::bounds::{ratio_string, verify_all, VerifyConfig};
use cover_genus::fiber::{
    align, fiber_product, self_product_offdiagonal, Component, FiberProductDecomposition,
    SelfProductDecomposition,
};
use cover_genus::fixtures::{fixture, Fixture};
use cover_genus::normalization::{is_galois, is_tame, normalization_data};
use cover_genus::random::{fuzz, FuzzConfig};
use cover_genus::HurwitzSystem;

const DEFAULT_BUDGET: u64 = 10_000_000;
const BUDGET_ENV: &str = "COVER_GENUS_BUDGET";

#[derive(Parser)]
#[command(
    name = "cover-genus",
    version,
    about = "Genus computations for fiber products of branched coverings from permutation monodromy data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose the fiber product of two coverings into components
    Decompose {
        /// Covering P (JSON file)
        #[arg(long)]
        p: PathBuf,
        /// Covering W (JSON file)
        #[arg(long)]
        w: PathBuf,
    },
    /// Decompose the k-fold off-diagonal self product of a covering
    SelfProduct {
        /// Covering V (JSON file)
        #[arg(long)]
        v: PathBuf,
        /// Tuple length, 2 <= k <= deg V
        #[arg(long)]
        k: usize,
        /// Maximum number of tuples to enumerate
        #[arg(long)]
        tuple_budget: Option<u64>,
    },
    /// Monodromy order, orbifold characteristic, closure genus, Galois flag
    Normalize {
        /// Covering V (JSON file)
        #[arg(long)]
        v: PathBuf,
        #[arg(long)]
        group_order_cap: Option<u64>,
        #[arg(long)]
        tuple_budget: Option<u64>,
    },
    /// Tameness verdict with a wildness witness
    Tame {
        /// Covering A (JSON file)
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        tuple_budget: Option<u64>,
    },
    /// Evaluate every genus inequality on a pair; exit 1 if any applicable check fails
    Verify {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        w: PathBuf,
        #[arg(long)]
        group_order_cap: Option<u64>,
        #[arg(long)]
        tuple_budget: Option<u64>,
    },
    /// Seeded random verification campaign; exit 1 on any failed check
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, default_value_t = 5)]
        max_branch: usize,
        #[arg(long, default_value_t = 2)]
        max_base_genus: usize,
        #[arg(long)]
        group_order_cap: Option<u64>,
        #[arg(long)]
        tuple_budget: Option<u64>,
    },
    /// Emit a named fixture, e.g. power(3), chebyshev(4), zn_plus_inverse(2),
    /// hyperelliptic(2), dur, tame_quartic
    Fixture {
        name: String,
        /// For pair fixtures: emit only this side
        #[arg(long, value_enum)]
        part: Option<PairPart>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum PairPart {
    P,
    W,
}

fn env_budget() -> Option<u64> {
    std::env::var(BUDGET_ENV).ok()?.parse().ok()
}

fn resolve_budget(flag: Option<u64>) -> u64 {
    flag.or_else(env_budget).unwrap_or(DEFAULT_BUDGET)
}

fn load_system(path: &PathBuf) -> Result<HurwitzSystem> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    HurwitzSystem::from_json(&text)
        .with_context(|| format!("cannot parse covering from {}", path.display()))
}

#[derive(Serialize)]
struct ComponentOut {
    index: usize,
    orbit_key: u64,
    orbit_size: usize,
    deg_v: usize,
    deg_u: usize,
    chi: i64,
    genus: u64,
    off_diagonal: bool,
    passport: Vec<(String, Vec<usize>)>,
    covering: HurwitzSystem,
}

impl ComponentOut {
    fn new(index: usize, c: &Component) -> Self {
        ComponentOut {
            index,
            orbit_key: c.orbit_key,
            orbit_size: c.orbit_size,
            deg_v: c.deg_v,
            deg_u: c.deg_u,
            chi: c.chi,
            genus: c.genus,
            off_diagonal: c.off_diagonal,
            passport: c
                .covering
                .passport()
                .into_iter()
                .map(|(label, ct)| (label, ct.parts().to_vec()))
                .collect(),
            covering: c.covering.clone(),
        }
    }
}

fn passport_string(c: &Component) -> String {
    let entries: Vec<String> = c
        .covering
        .passport()
        .into_iter()
        .map(|(label, ct)| {
            let parts: Vec<String> = ct.parts().iter().map(|p| p.to_string()).collect();
            format!("{}:[{}]", label, parts.join(","))
        })
        .collect();
    entries.join(" ")
}

fn component_table(components: &[Component]) -> String {
    let mut out =
        String::from("  # orbit_key orbit_size deg_v deg_u  chi genus offdiag  passport\n");
    for (i, c) in components.iter().enumerate() {
        out.push_str(&format!(
            "{:>3} {:>9} {:>10} {:>5} {:>5} {:>4} {:>5} {:>7}  {}\n",
            i,
            c.orbit_key,
            c.orbit_size,
            c.deg_v,
            c.deg_u,
            c.chi,
            c.genus,
            c.off_diagonal,
            passport_string(c),
        ));
    }
    out
}

fn render_decompose(dec: &FiberProductDecomposition, format: Format) -> String {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                format_version: u32,
                deg_p: usize,
                deg_w: usize,
                n_components: usize,
                components: Vec<ComponentOut>,
            }
            let out = Out {
                format_version: 1,
                deg_p: dec.deg_p,
                deg_w: dec.deg_w,
                n_components: dec.components.len(),
                components: dec
                    .components
                    .iter()
                    .enumerate()
                    .map(|(i, c)| ComponentOut::new(i, c))
                    .collect(),
            };
            serde_json::to_string_pretty(&out).expect("serializable")
        }
        Format::Text => {
            let mut out = format!(
                "fiber product: deg P = {}, deg W = {}, components = {}\n",
                dec.deg_p,
                dec.deg_w,
                dec.components.len()
            );
            out.push_str(&component_table(&dec.components));
            out
        }
    }
}

fn render_self_product(dec: &SelfProductDecomposition, format: Format) -> String {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                format_version: u32,
                k: usize,
                deg_v: usize,
                total_points: u64,
                n_components: usize,
                components: Vec<ComponentOut>,
            }
            let out = Out {
                format_version: 1,
                k: dec.k,
                deg_v: dec.deg_v,
                total_points: dec.total_points,
                n_components: dec.components.len(),
                components: dec
                    .components
                    .iter()
                    .enumerate()
                    .map(|(i, c)| ComponentOut::new(i, c))
                    .collect(),
            };
            serde_json::to_string_pretty(&out).expect("serializable")
        }
        Format::Text => {
            let mut out = format!(
                "off-diagonal {}-fold self product: deg V = {}, tuples = {}, components = {}\n",
                dec.k,
                dec.deg_v,
                dec.total_points,
                dec.components.len()
            );
            out.push_str(&component_table(&dec.components));
            out
        }
    }
}

fn run(cli: Cli) -> Result<(String, bool)> {
    let format = cli.format;
    match cli.command {
        Command::Decompose { p, w } => {
            let pair = align(&load_system(&p)?, &load_system(&w)?)?;
            let dec = fiber_product(&pair)?;
            Ok((render_decompose(&dec, format), false))
        }
        Command::SelfProduct { v, k, tuple_budget } => {
            let sys = load_system(&v)?;
            let dec = self_product_offdiagonal(&sys, k, resolve_budget(tuple_budget))?;
            Ok((render_self_product(&dec, format), false))
        }
        Command::Normalize {
            v,
            group_order_cap,
            tuple_budget,
        } => {
            let sys = load_system(&v)?;
            let cap = group_order_cap
                .or_else(env_budget)
                .unwrap_or(DEFAULT_BUDGET);
            let data = normalization_data(&sys, cap, resolve_budget(tuple_budget))?;
            let galois = is_galois(&sys, cap)?;
            let chi_orb = data.orbifold.chi();
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct OrbifoldOut {
                        base_genus: usize,
                        indices: Vec<(String, u64)>,
                    }
                    #[derive(Serialize)]
                    struct Out {
                        format_version: u32,
                        degree: usize,
                        base_genus: usize,
                        genus: u64,
                        mon_order: String,
                        galois: bool,
                        orbifold: OrbifoldOut,
                        chi_orbifold: String,
                        chi_n: String,
                        genus_n: u64,
                        explicit_cover_degree: Option<usize>,
                        explicit_cover_genus: Option<u64>,
                    }
                    let out = Out {
                        format_version: 1,
                        degree: sys.degree(),
                        base_genus: sys.base_genus(),
                        genus: sys.genus()?,
                        mon_order: data.mon_order.to_string(),
                        galois,
                        orbifold: OrbifoldOut {
                            base_genus: data.orbifold.base_genus(),
                            indices: data
                                .orbifold
                                .indices()
                                .iter()
                                .map(|i| (i.label.clone(), i.nu))
                                .collect(),
                        },
                        chi_orbifold: ratio_string(&chi_orb),
                        chi_n: data.chi_n.to_string(),
                        genus_n: data.genus_n,
                        explicit_cover_degree: data.explicit_cover.as_ref().map(|c| c.degree()),
                        explicit_cover_genus: data
                            .explicit_cover
                            .as_ref()
                            .map(|c| c.genus())
                            .transpose()?,
                    };
                    Ok((serde_json::to_string_pretty(&out)?, false))
                }
                Format::Text => {
                    let indices: Vec<String> = data
                        .orbifold
                        .indices()
                        .iter()
                        .map(|i| format!("{}:{}", i.label, i.nu))
                        .collect();
                    let mut text = format!(
                        "degree: {}\ngenus: {}\nmonodromy order: {}\ngalois: {}\norbifold: genus {}, nu [{}]\nchi(orbifold): {}\nchi(closure): {}\ngenus(closure): {}\n",
                        sys.degree(),
                        sys.genus()?,
                        data.mon_order,
                        galois,
                        data.orbifold.base_genus(),
                        indices.join(", "),
                        ratio_string(&chi_orb),
                        data.chi_n,
                        data.genus_n,
                    );
                    match &data.explicit_cover {
                        Some(cover) => text.push_str(&format!(
                            "explicit closure: degree {}, genus {}\n",
                            cover.degree(),
                            cover.genus()?
                        )),
                        None => text.push_str("explicit closure: skipped (tuple budget)\n"),
                    }
                    Ok((text, false))
                }
            }
        }
        Command::Tame { a, tuple_budget } => {
            let sys = load_system(&a)?;
            let verdict = is_tame(&sys, resolve_budget(tuple_budget))?;
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct WitnessOut {
                        orbit_key: u64,
                        orbit_size: usize,
                        genus: u64,
                    }
                    #[derive(Serialize)]
                    struct Out {
                        format_version: u32,
                        degree: usize,
                        tame: bool,
                        witness: Option<WitnessOut>,
                    }
                    let out = Out {
                        format_version: 1,
                        degree: sys.degree(),
                        tame: verdict.tame,
                        witness: verdict.witness.map(|w| WitnessOut {
                            orbit_key: w.orbit_key,
                            orbit_size: w.orbit_size,
                            genus: w.genus,
                        }),
                    };
                    Ok((serde_json::to_string_pretty(&out)?, false))
                }
                Format::Text => {
                    let mut text = format!("tame: {}\n", verdict.tame);
                    if let Some(w) = verdict.witness {
                        text.push_str(&format!(
                            "witness: component of size {} (orbit key {}), genus {}\n",
                            w.orbit_size, w.orbit_key, w.genus
                        ));
                    }
                    Ok((text, false))
                }
            }
        }
        Command::Verify {
            p,
            w,
            group_order_cap,
            tuple_budget,
        } => {
            let pair = align(&load_system(&p)?, &load_system(&w)?)?;
            let config = VerifyConfig {
                group_order_cap: group_order_cap
                    .or_else(env_budget)
                    .unwrap_or(DEFAULT_BUDGET),
                tuple_budget: resolve_budget(tuple_budget),
            };
            let report = verify_all(&pair, &config)?;
            let text = match format {
                Format::Json => report.to_json(),
                Format::Text => report.render_text(),
            };
            Ok((text, report.any_failed()))
        }
        Command::Fuzz {
            seed,
            trials,
            max_degree,
            max_branch,
            max_base_genus,
            group_order_cap,
            tuple_budget,
        } => {
            let config = FuzzConfig {
                seed,
                trials,
                max_degree,
                max_branch,
                max_base_genus,
                group_order_cap: group_order_cap
                    .or_else(env_budget)
                    .unwrap_or(DEFAULT_BUDGET),
                tuple_budget: resolve_budget(tuple_budget),
            };
            let summary = fuzz(&config)?;
            let text = match format {
                Format::Json => summary.to_json(),
                Format::Text => summary.render_text(),
            };
            Ok((text, summary.any_failed()))
        }
        Command::Fixture { name, part } => {
            let fixture = fixture(&name)?;
            let text = match (fixture, part) {
                (Fixture::System(sys), None) => sys.to_json(),
                (Fixture::System(_), Some(_)) => {
                    bail!(
                        "fixture {:?} is a single covering; --part applies to pairs",
                        name
                    )
                }
                (Fixture::Pair(p, _), Some(PairPart::P)) => p.to_json(),
                (Fixture::Pair(_, w), Some(PairPart::W)) => w.to_json(),
                (Fixture::Pair(p, w), None) => {
                    #[derive(Serialize)]
                    struct PairOut {
                        p: HurwitzSystem,
                        w: HurwitzSystem,
                    }
                    serde_json::to_string_pretty(&PairOut { p, w })?
                }
            };
            Ok((text, false))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = cli.out.clone();
    match run(cli) {
        Ok((mut text, failed)) => {
            if !text.ends_with('\n') {
                text.push('\n');
            }
            match out_path {
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        eprintln!("error: cannot write {}: {}", path.display(), e);
                        return ExitCode::from(2);
                    }
                }
                None => print!("{}", text),
            }
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
