mod cache;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use kr_core::admissible::{display_name, AdmissibleTable};
use kr_core::local_model::{
    census, classify, table1_csv, table2_csv, table3_csv, FlagChainPoint, SignatureIndex,
    StandardChainContext,
};
use kr_core::strata::{
    almost_ordinary_components, connected_component_count, fermat_point_count,
    frobenius_graph_count, supersingular_summary, MassParams, ParahoricType,
};
use kr_core::weyl::hasse_diagram;
use serde_json::json;

use cache::Cache;

#[derive(Parser)]
#[command(name = "kr", version, about = "Admissible sets, local-model censuses and stratum counts")]
struct Cli {
    /// Directory for cached admissible tables and signature indices.
    #[arg(long, env = "KR_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the admissible set, sorted by (length, canonical form).
    Adm {
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = Format::Text)]
        format: Format,
    },
    /// Bruhat covers inside the admissible set.
    Hasse {
        #[arg(long, default_value_t = 2)]
        g: usize,
        #[arg(long, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Invariant tables for genus 2, recomputed from monomial points.
    Tables {
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Emit only table 1, 2 or 3.
        #[arg(long)]
        only: Option<u8>,
        #[arg(long, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Classify every F_q-point of the local model and compare with q^length.
    Census {
        #[arg(long, default_value_t = 2)]
        g: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Stratum of a point given as JSON {q, g, subspaces}.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Admissible table as written by `kr adm --format json`.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, default_value_t = Format::Text)]
        format: Format,
    },
    /// Connected components of a p-rank stratum at parahoric level k.
    Count {
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        f: usize,
        #[arg(long, default_value_t = Format::Text)]
        format: Format,
    },
    /// Supersingular component and singular-point counts, genus 2, Iwahori level.
    Mass {
        #[arg(long)]
        p: u64,
        #[arg(long = "N")]
        level: u64,
        #[arg(long, default_value_t = Format::Json)]
        format: Format,
    },
    /// Point counts of the Fermat curve and the Frobenius graph.
    Loci {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long, default_value_t = Format::Text)]
        format: Format,
    },
}

/// An internal consistency check failed (exit code 3).
#[derive(Debug)]
struct Violation(String);

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invariant violated: {}", self.0)
    }
}

impl std::error::Error for Violation {}

fn allow(command: &str, format: Format, allowed: &[Format]) -> Result<()> {
    if !allowed.contains(&format) {
        let names: Vec<String> = allowed.iter().map(Format::to_string).collect();
        bail!("`kr {command}` supports --format {}, not {format}", names.join("|"));
    }
    Ok(())
}

fn context(g: usize, q: u32) -> Result<StandardChainContext> {
    Ok(StandardChainContext::new(g, q)?)
}

fn run(cli: Cli) -> Result<String> {
    use Format::*;
    match cli.command {
        Command::Adm { g, format } => {
            allow("adm", format, &[Json, Csv, Dot, Text])?;
            let table = Cache::open(cli.cache_dir)?.table(g)?;
            Ok(match format {
                Json => table.to_json() + "\n",
                Csv => table.to_csv(),
                Dot => hasse_dot(&table)?,
                Text => adm_text(&table),
            })
        }
        Command::Hasse { g, format } => {
            allow("hasse", format, &[Dot, Json, Text])?;
            let table = Cache::open(cli.cache_dir)?.table(g)?;
            let elements: Vec<_> = table.elements().cloned().collect();
            let diagram = hasse_diagram(&elements)?;
            Ok(match format {
                Dot => diagram.to_dot(display_name),
                Json => {
                    let nodes: Vec<_> = diagram
                        .nodes
                        .iter()
                        .map(|x| json!({ "name": display_name(x), "element": x, "length": x.length() }))
                        .collect();
                    serde_json::to_string_pretty(&json!({ "nodes": nodes, "edges": diagram.edges }))? + "\n"
                }
                _ => diagram
                    .edges
                    .iter()
                    .map(|&(lo, hi)| {
                        format!("{} < {}\n", display_name(&diagram.nodes[lo]), display_name(&diagram.nodes[hi]))
                    })
                    .collect(),
            })
        }
        Command::Tables { q, only, format } => {
            allow("tables", format, &[Csv])?;
            let ctx = context(2, q)?;
            let tables = [table1_csv(), table2_csv(&ctx)?, table3_csv(&ctx)?];
            match only {
                Some(i @ 1..=3) => Ok(tables[usize::from(i) - 1].clone()),
                Some(i) => bail!("--only must be 1, 2 or 3, got {i}"),
                None => Ok(tables.join("\n")),
            }
        }
        Command::Census { g, q, format } => {
            allow("census", format, &[Csv, Json, Text])?;
            if g != 2 {
                bail!("the census enumerates genus 2 only, got g = {g}");
            }
            let ctx = context(g, q)?;
            let (table, index) = Cache::open(cli.cache_dir)?.index(g, &ctx)?;
            let report = census(&table, &index)?;
            let out = match format {
                Json => serde_json::to_string_pretty(&report)? + "\n",
                Csv => report.to_csv(),
                _ => {
                    let mut out = String::new();
                    for r in &report.rows {
                        out.push_str(&format!("{:<10} l={} expected={} observed={}\n", r.name, r.length, r.expected, r.observed));
                    }
                    out + &format!("total expected={} observed={}\n", report.total_expected, report.total_observed)
                }
            };
            if !report.is_consistent() {
                print!("{out}");
                return Err(Violation(format!("census over F_{q} disagrees with q^length")).into());
            }
            Ok(out)
        }
        Command::Classify { input, table, format } => {
            allow("classify", format, &[Text, Json])?;
            let text = std::fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let (point, ctx) = FlagChainPoint::from_json(&text)?;
            let index = match table {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    let table = AdmissibleTable::from_json(&text)?;
                    if table.g() != ctx.n {
                        bail!("table has g = {}, point has g = {}", table.g(), ctx.n);
                    }
                    SignatureIndex::new(&table, &ctx)?
                }
                None => Cache::open(cli.cache_dir)?.index(ctx.n, &ctx)?.1,
            };
            let x = classify(&point, &index)?;
            Ok(match format {
                Json => serde_json::to_string(&json!({ "name": display_name(&x), "element": x, "length": x.length() }))? + "\n",
                _ => format!("{} {} length {}\n", display_name(&x), x, x.length()),
            })
        }
        Command::Count { k, g, f, format } => {
            allow("count", format, &[Text, Json])?;
            if f > g {
                bail!("p-rank f = {f} exceeds g = {g}");
            }
            let pt = ParahoricType::new(k.clone(), g)?;
            let connected = connected_component_count(&pt, f)?;
            let almost = if f + 1 == g { Some(almost_ordinary_components(&pt)?) } else { None };
            Ok(match format {
                Json => {
                    let mut obj = json!({ "k": k, "g": g, "f": f, "connected_components": connected.to_string() });
                    if let Some(a) = almost {
                        obj["irreducible_components"] = json!(a.to_string());
                    }
                    serde_json::to_string(&obj)? + "\n"
                }
                _ => {
                    let mut out = format!("connected components: {connected}\n");
                    if let Some(a) = almost {
                        out.push_str(&format!("irreducible components: {a}\n"));
                    }
                    out
                }
            })
        }
        Command::Mass { p, level, format } => {
            allow("mass", format, &[Json, Text])?;
            let summary = supersingular_summary(&MassParams::new(p, level)?)?;
            Ok(match format {
                Json => {
                    let obj = json!({
                        "lambda": summary.lambda.to_string(),
                        "lambda_211": summary.lambda_211.to_string(),
                        "singular": summary.singular_points.to_string(),
                    });
                    serde_json::to_string(&obj)? + "\n"
                }
                _ => {
                    let mut out = format!(
                        "lambda: {}\nlambda_211: {}\ncomponents: {}\nsingular points: {}\n",
                        summary.lambda, summary.lambda_211, summary.components, summary.singular_points
                    );
                    for (name, count) in &summary.per_stratum {
                        out.push_str(&format!("  {name}: {}\n", serde_json::to_value(count)?.as_str().unwrap_or("")));
                    }
                    out
                }
            })
        }
        Command::Loci { p, e, format } => {
            allow("loci", format, &[Text, Json])?;
            let fermat = fermat_point_count(p)?;
            let graph = frobenius_graph_count(p, e)?;
            Ok(match format {
                Json => serde_json::to_string(&json!({
                    "p": p,
                    "e": e,
                    "fermat": fermat.to_string(),
                    "frobenius_graph": graph.to_string(),
                }))? + "\n",
                _ => format!("fermat curve over F_{p}^2: {fermat}\nfrobenius graph over F_{p}^{e}: {graph}\n"),
            })
        }
    }
}

fn adm_text(table: &AdmissibleTable) -> String {
    table
        .entries()
        .iter()
        .map(|e| {
            let name = e.name.as_deref().unwrap_or("-");
            format!("{name:<10} {:>2} {} {}\n", e.length, e.p_rank, e.element)
        })
        .collect()
}

fn hasse_dot(table: &AdmissibleTable) -> Result<String> {
    let elements: Vec<_> = table.elements().cloned().collect();
    Ok(hasse_diagram(&elements)?.to_dot(display_name))
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<Violation>() {
            return 3;
        }
        if let Some(e) = cause.downcast_ref::<kr_core::Error>() {
            return match e {
                kr_core::Error::Invariant(_) | kr_core::Error::NoMatch(_) => 3,
                _ => 2,
            };
        }
    }
    2
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
