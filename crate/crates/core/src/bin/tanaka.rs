use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use tanaka_core::catalog::{self, CatalogEntry};
use tanaka_core::model::{validate, QuadricModel};
use tanaka_core::poly::{FieldJson, PolyVectorField};
use tanaka_core::prolong::{prolong_full, ProlongationJson, DEFAULT_DEGREE_CAP};
use tanaka_core::realize::realize_basis;
use tanaka_core::report::run_report;
use tanaka_core::verify::verify_hol;
use tanaka_core::{Error, Result};

#[derive(Parser)]
#[command(name = "tanaka", version, about = "Exact Tanaka prolongation of quadric CR models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check Hermitian symmetry, independence, nondegeneracy and the Tumanov condition
    Validate(Common),
    /// Compute the full prolongation with structure constants
    Prolong(Common),
    /// Realize every basis element of one degree as a holomorphic vector field
    Realize {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        degree: i32,
    },
    /// Decide whether a holomorphic field is an infinitesimal automorphism
    Verify {
        #[command(flatten)]
        common: Common,
        /// Field JSON file
        #[arg(long)]
        field: PathBuf,
    },
    /// Run the whole pipeline and summarize the jet determination order
    Report(Common),
    /// Built-in models
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List the entries
    List,
    /// Write the model JSON and every known field JSON into a directory
    Export {
        name: String,
        #[arg(long)]
        dir: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        extra: usize,
    },
}

#[derive(Args)]
struct Common {
    /// Model JSON file
    model: Option<PathBuf>,
    /// Use a catalog entry instead of a file
    #[arg(long)]
    catalog: Option<String>,
    /// Parameter of so_family
    #[arg(long)]
    n: Option<usize>,
    /// Parameter of su_family
    #[arg(long)]
    m: Option<usize>,
    /// Number of appended sphere directions
    #[arg(long, default_value_t = 0)]
    extra: usize,
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    max_degree: usize,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, conflicts_with = "text")]
    json: bool,
    #[arg(long)]
    text: bool,
}

struct Loaded {
    name: String,
    model: QuadricModel,
    entry: Option<CatalogEntry>,
}

impl Common {
    fn load(&self) -> Result<Loaded> {
        match (&self.model, &self.catalog) {
            (Some(_), Some(_)) => Err(Error::Input("give either a model file or --catalog, not both".into())),
            (None, None) => Err(Error::Input("a model file or --catalog is required".into())),
            (Some(path), None) => {
                let model = QuadricModel::from_json_str(&fs::read_to_string(path)?)?;
                Ok(Loaded { name: path.display().to_string(), model, entry: None })
            }
            (None, Some(name)) => {
                let entry = catalog::lookup(name, self.n.or(self.m), self.extra)?;
                Ok(Loaded { name: entry.name.clone(), model: entry.model.clone(), entry: Some(entry) })
            }
        }
    }

    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> Result<()> {
        let body = if self.text {
            text()
        } else {
            serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))? + "\n"
        };
        write_out(self.out.as_deref(), &body)
    }
}

fn write_out(out: Option<&Path>, body: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, body).map_err(|e| Error::Internal(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate(c) => {
            let loaded = c.load()?;
            let report = validate(&loaded.model);
            c.emit(&report, || {
                let mut s = format!("model {}: {}\n", loaded.name, if report.passed { "passed" } else { "failed" });
                for note in &report.notes {
                    s.push_str(&format!("note: {note}\n"));
                }
                s
            })?;
            if report.passed {
                Ok(())
            } else {
                Err(Error::Validation(report.notes.join("; ")))
            }
        }
        Command::Prolong(c) => {
            let loaded = c.load()?;
            let r = prolong_full(&loaded.model, c.max_degree)?;
            r.algebra.check_jacobi()?;
            c.emit(&ProlongationJson(&r), || {
                let dims: Vec<String> = r.dims.iter().map(|(d, n)| format!("g_{d}: {n}")).collect();
                format!("{}\ntop degree: {}\njet order: {}\n", dims.join("\n"), r.top_degree, r.jet_order)
            })
        }
        Command::Realize { common: c, degree } => {
            let loaded = c.load()?;
            let r = prolong_full(&loaded.model, c.max_degree)?;
            let fields = realize_basis(&r, degree)?;
            let json: Vec<FieldJson> = fields.iter().map(PolyVectorField::to_json).collect();
            c.emit(&json, || fields.iter().map(|f| format!("{f}\n")).collect())
        }
        Command::Verify { common: c, field } => {
            let loaded = c.load()?;
            let json: FieldJson = serde_json::from_str(&fs::read_to_string(&field)?)?;
            let x = PolyVectorField::from_json(&json)?;
            let cert = verify_hol(&x, &loaded.model)?;
            c.emit(&cert.to_json(), || {
                let mut s = format!("verdict: {}\n", cert.verdict);
                for (j, r) in cert.residuals.iter().enumerate() {
                    s.push_str(&format!("residual {}: {r}\n", j + 1));
                }
                s
            })?;
            if cert.verdict {
                Ok(())
            } else {
                Err(Error::Validation("field is not tangent to the model".into()))
            }
        }
        Command::Report(c) => {
            let loaded = c.load()?;
            let notes = loaded.entry.as_ref().and_then(|e| e.note.clone()).into_iter().collect();
            let report = run_report(&loaded.name, &loaded.model, c.max_degree, notes)?;
            c.emit(&report, || report.to_text())
        }
        Command::Catalog { action: CatalogAction::List } => {
            for (name, desc) in catalog::list() {
                println!("{name:<12} {desc}");
            }
            Ok(())
        }
        Command::Catalog { action: CatalogAction::Export { name, dir, n, m, extra } } => {
            let entry = catalog::lookup(&name, n.or(m), extra)?;
            fs::create_dir_all(&dir).map_err(|e| Error::Internal(format!("cannot create {}: {e}", dir.display())))?;
            let stem = name.clone();
            write_out(Some(&dir.join(format!("{stem}.json"))), &(entry.model.to_json_string() + "\n"))?;
            for (fname, f) in &entry.known_fields {
                let body = serde_json::to_string_pretty(&f.to_json()).map_err(|e| Error::Internal(e.to_string()))?;
                write_out(Some(&dir.join(format!("{stem}.{fname}.field.json"))), &(body + "\n"))?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
