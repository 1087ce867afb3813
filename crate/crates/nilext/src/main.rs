//! Command-line front end: validate catalog files, run the verification
//! pipeline, and inspect individual entries.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand};

use nilext::catalog::{self, fingerprint, sample_assignments};
use nilext::tabledsl::{self, parse_assignment, Presentation};
use nilext_core::cohomology::{cd_cocycle_space, coboundary_space, h2_dims};
use nilext_core::poly::Poly;
use nilext_core::sympair::{pair_count, pairs};
use nilext_core::SymCocycle;

#[derive(Parser)]
#[command(name = "nilext", about = "Exact verification of commutative nilpotent algebra catalogs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a catalog file and report structural problems.
    Validate { file: PathBuf },
    /// Run the full verification pipeline over a catalog file.
    Verify {
        file: PathBuf,
        /// Emit one JSON object per entry instead of text.
        #[arg(long)]
        json: bool,
        /// Print every check line, not only failures.
        #[arg(long, short)]
        verbose: bool,
        /// Verify a single entry by name.
        #[arg(long)]
        entry: Option<String>,
    },
    /// Print coboundary, CD-cocycle and cohomology data for one entry.
    Cohomology {
        file: PathBuf,
        name: String,
        /// Parameter assignment such as `alpha=3,lambda=-1/2`.
        #[arg(long, default_value = "")]
        param: String,
    },
    /// Centrally extend an entry by a cocycle given as Delta coordinates.
    Extend {
        file: PathBuf,
        name: String,
        /// Comma-separated coordinates c11,c12,...,cnn in the documented
        /// lexicographic pair order.
        #[arg(long)]
        cocycle: String,
        #[arg(long, default_value = "")]
        param: String,
    },
    /// Print the invariant fingerprint of one entry.
    Fingerprint {
        file: PathBuf,
        name: String,
        #[arg(long, default_value = "")]
        param: String,
    },
    /// Check the witness annotations of one entry.
    Witness { file: PathBuf, name: String },
}

fn main() -> ExitCode {
    match run() {
        Ok(ok) => {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn load(file: &PathBuf) -> Result<Vec<Presentation>> {
    catalog::load_catalog(file)
}

fn find<'a>(entries: &'a [Presentation], name: &str) -> Result<&'a Presentation> {
    entries
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| anyhow!("no entry named `{name}`"))
}

fn specialized(p: &Presentation, param: &str) -> Result<nilext_core::AlgebraTable> {
    let table = p.to_table()?;
    if param.is_empty() {
        return Ok(table);
    }
    let assignment = parse_assignment(&p.ring, param).map_err(|e| anyhow!("--param: {e}"))?;
    Ok(table.specialize(&assignment)?)
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { file } => {
            let entries = load(&file)?;
            for p in &entries {
                p.to_table()
                    .map_err(|e| anyhow!("entry `{}`: {e}", p.name))?;
            }
            println!("{}: {} entries valid", file.display(), entries.len());
            Ok(true)
        }
        Command::Verify {
            file,
            json,
            verbose,
            entry,
        } => {
            let mut entries = load(&file)?;
            if let Some(name) = entry {
                let p = find(&entries, &name)?.clone();
                entries = vec![p];
            }
            let report = catalog::verify_catalog(&entries);
            if json {
                for e in &report.entries {
                    println!("{}", serde_json::to_string(e)?);
                }
                println!(
                    "{}",
                    serde_json::json!({
                        "summary": {
                            "entries": report.entries.len(),
                            "passes": report.passes,
                            "failures": report.failures,
                            "fingerprint_collision_groups": report.fingerprint_collisions.len(),
                        }
                    })
                );
            } else {
                print!("{}", catalog::render_text(&report, verbose));
            }
            Ok(report.failures == 0)
        }
        Command::Cohomology { file, name, param } => {
            let entries = load(&file)?;
            let p = find(&entries, &name)?;
            let table = specialized(p, &param)?;
            let b2 = coboundary_space(&table)?;
            let z2d = cd_cocycle_space(&table)?;
            let (h2c, h2d) = h2_dims(&table)?;
            let n = table.dim();
            println!("entry {name} (dim {n}, Sym^2 dimension {})", pair_count(n));
            println!("coordinates are c_ij over pairs {:?}", pair_list(n));
            println!("dim B^2  = {}", b2.dim());
            for row in b2.basis() {
                println!("  b2 basis: {}", row_string(row));
            }
            println!("dim Z^2_D = {}", z2d.dim());
            for row in z2d.basis() {
                println!("  z2d basis: {}", row_string(row));
            }
            println!("h2c = {h2c}");
            println!("h2d = {h2d}");
            Ok(true)
        }
        Command::Extend {
            file,
            name,
            cocycle,
            param,
        } => {
            let entries = load(&file)?;
            let p = find(&entries, &name)?;
            let table = specialized(p, &param)?;
            let n = table.dim();
            let coords: Vec<&str> = cocycle.split(',').collect();
            if coords.len() != pair_count(n) {
                bail!(
                    "--cocycle needs {} comma-separated coordinates for dimension {n}",
                    pair_count(n)
                );
            }
            let ring = table.ring();
            let mut comp = Vec::with_capacity(coords.len());
            for piece in &coords {
                let text = format!("algebra X dim 1\ne1*e1 = ({}) e1\n", piece.trim());
                let parsed = tabledsl::parse(&text)
                    .map_err(|e| anyhow!("bad cocycle coordinate `{piece}`: {e}"))?;
                let val = parsed.equations[&(0, 0)][0]
                    .as_constant()
                    .ok_or_else(|| anyhow!("cocycle coordinates must be constants"))?;
                comp.push(Poly::constant(ring, val));
            }
            let theta = SymCocycle::from_components(ring, n, vec![comp])?;
            let ext = nilext_core::extension::central_extend(&table, &[theta])?;
            print!("{}", table_text(&format!("{name}_ext"), &ext));
            Ok(true)
        }
        Command::Fingerprint { file, name, param } => {
            let entries = load(&file)?;
            let p = find(&entries, &name)?;
            if param.is_empty() && !p.params().is_empty() {
                // report all three policy samples
                let table = p.to_table()?;
                for assignment in sample_assignments(p)? {
                    let spec = table.specialize(&assignment)?;
                    let fp = fingerprint(&spec)?;
                    let tag: Vec<String> =
                        assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    println!("[{}] {}", tag.join(","), serde_json::to_string(&fp)?);
                }
            } else {
                let table = specialized(p, &param)?;
                let fp = fingerprint(&table)?;
                println!("{}", serde_json::to_string(&fp)?);
            }
            Ok(true)
        }
        Command::Witness { file, name } => {
            let entries = load(&file)?;
            let p = find(&entries, &name)?;
            if p.expect.witnesses.is_empty() {
                println!("{name}: no witness annotations");
                return Ok(true);
            }
            let report = catalog::verify_entry(p);
            let mut ok = true;
            for c in report.checks.iter().filter(|c| c.kind.starts_with("witness")) {
                let mark = if c.pass { "ok" } else { "FAILED" };
                println!("{} {mark}: {}", c.kind, c.detail);
                ok &= c.pass;
            }
            Ok(ok)
        }
    }
}

fn pair_list(n: usize) -> Vec<String> {
    pairs(n).map(|(i, j)| format!("{}{}", i + 1, j + 1)).collect()
}

fn row_string(row: &[nilext_core::Scalar]) -> String {
    let parts: Vec<String> = row.iter().map(|s| s.to_string()).collect();
    parts.join(", ")
}

fn table_text(name: &str, table: &nilext_core::AlgebraTable) -> String {
    let mut out = format!("algebra {name} dim {}\n", table.dim());
    for (i, j) in pairs(table.dim()) {
        let coords = table.basis_product(i, j);
        if coords.iter().all(Poly::is_zero) {
            continue;
        }
        let mut rhs = Vec::new();
        for (k, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.as_constant().is_some_and(|s| s.is_one()) {
                rhs.push(format!("e{}", k + 1));
            } else {
                rhs.push(format!("({c}) e{}", k + 1));
            }
        }
        out.push_str(&format!("e{}*e{} = {}\n", i + 1, j + 1, rhs.join(" + ")));
    }
    out
}
