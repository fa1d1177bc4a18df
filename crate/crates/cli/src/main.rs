use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use quandle_core::analysis::{is_simple, proper_quotients};
use quandle_core::catalog::{self, Source};
use quandle_core::cocycle2::{connected_binary_extensions, f2_cocycles, is_coboundary};
use quandle_core::construct::{alexander_quandle, AlexanderSpec};
use quandle_core::enumerate::{enumerate_connected, EnumerateOptions};
use quandle_core::io::{self, format_bit_matrices, format_table, quotient_label, Layout};
use quandle_core::iso::are_isomorphic;
use quandle_core::{Error, QuandleTable};

const EXIT_INVALID: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_NO_INPUT: u8 = 66;
const EXIT_BUDGET: u8 = 75;

/// Finite quandles: checking, analysis, enumeration and extensions.
#[derive(Parser, Debug)]
#[command(name = "quandles", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the quandle axioms for a table file.
    Verify {
        file: PathBuf,
        /// The file has a header row and row labels.
        #[arg(long)]
        labelled: bool,
    },
    /// Print invariants of a table file or catalog entry.
    Analyze {
        input: String,
        #[arg(long)]
        labelled: bool,
    },
    /// List the connected quandles of one order.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Directory for one table per class and the summaries.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        budget: Option<f64>,
        /// Progress file used to resume an interrupted run.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Decide whether two quandles are isomorphic.
    Isomorphic {
        a: String,
        b: String,
        #[arg(long)]
        labelled: bool,
    },
    /// The built-in named quandles.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Print the table of an Alexander quandle.
    Alexander {
        /// Cyclic factors of the module, e.g. `2,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        moduli: Vec<u64>,
        /// Matrix of T, rows separated by `;`, e.g. `0,1;1,1`.
        #[arg(long)]
        matrix: String,
    },
    /// List the connected extensions with a two-element fiber.
    Extend {
        #[arg(long)]
        base: String,
        #[arg(long, default_value_t = 2)]
        fiber: usize,
        #[arg(long)]
        labelled: bool,
    },
    /// Dimensions of the F₂ cocycle and coboundary spaces.
    Cohomology {
        input: String,
        #[arg(long)]
        labelled: bool,
        /// Also print both bases as 0/1 matrices.
        #[arg(long)]
        bases: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show { name: String },
    Dump { dir: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget { .. } => EXIT_BUDGET,
            Error::Io(_) => EXIT_NO_INPUT,
            _ => EXIT_DATA,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn layout(labelled: bool) -> Layout {
    if labelled {
        Layout::Labelled
    } else {
        Layout::Plain
    }
}

/// A path to a table file, or failing that a catalog name.
fn load(input: &str, labelled: bool) -> Result<QuandleTable, Failure> {
    let path = Path::new(input);
    if path.exists() {
        return Ok(io::read_table(path, layout(labelled))?);
    }
    match catalog::entry(input) {
        Some(e) => Ok(e.table.clone()),
        None => Err(Failure::new(
            EXIT_NO_INPUT,
            format!("{input}: no such file or catalog entry"),
        )),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verify(file: &Path, labelled: bool) -> Outcome {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::new(EXIT_NO_INPUT, format!("{}: {e}", file.display())))?;
    match io::parse_table_with(&text, layout(labelled)) {
        Ok(q) => {
            println!("valid quandle of order {}", q.order());
            Ok(0)
        }
        Err(e) => {
            println!("invalid: {e}");
            Ok(EXIT_INVALID)
        }
    }
}

fn analyze(q: &QuandleTable) -> Outcome {
    let connected = q.is_connected();
    println!("order: {}", q.order());
    println!("connected: {}", yes_no(connected));
    println!("faithful: {}", yes_no(q.is_faithful()));
    println!("phi-image order: {}", q.phi_image().0.order());
    println!("|Int|: {}", q.inner_group().order());
    if connected {
        let simple = q.order() > 1 && is_simple(q)?;
        println!("simple: {}", yes_no(simple));
        let quotients: Vec<String> = proper_quotients(q).iter().map(quotient_label).collect();
        println!(
            "quotients: {}",
            if quotients.is_empty() { "-".into() } else { quotients.join(", ") }
        );
    } else {
        println!("simple: no");
    }
    if let Some(name) = catalog::identify(q) {
        println!("catalog: {name}");
    }
    Ok(0)
}

fn enumerate(order: usize, jobs: Option<usize>, out: Option<PathBuf>, budget: Option<f64>, checkpoint: Option<PathBuf>) -> Outcome {
    if let Some(b) = budget {
        if !(b.is_finite() && b > 0.0) {
            return Err(Failure::new(EXIT_USAGE, "--budget must be a positive number of seconds"));
        }
    }
    let checkpoint = checkpoint.or_else(|| {
        budget.map(|_| {
            out.clone()
                .unwrap_or_else(|| PathBuf::from("."))
                .join(format!("checkpoint-{order}.json"))
        })
    });
    let options = EnumerateOptions {
        jobs,
        budget: budget.map(Duration::from_secs_f64),
        checkpoint: checkpoint.clone(),
    };
    if let (Some(dir), Some(_)) = (&out, &checkpoint) {
        std::fs::create_dir_all(dir).map_err(|e| Failure::from(Error::Io(e)))?;
    }
    let report = match enumerate_connected(order, &options) {
        Err(Error::Precondition(msg)) => return Err(Failure::new(EXIT_USAGE, msg)),
        other => other?,
    };
    let summary = io::EnumerationSummary::from(&report);
    print!("{}", io::summary_text(&summary));
    if let Some(dir) = out {
        let written = io::write_enumeration(&report, &dir)?;
        eprintln!("wrote {} files to {}", written.len(), dir.display());
    }
    if let Some(cp) = checkpoint {
        if cp.exists() {
            std::fs::remove_file(cp).map_err(|e| Failure::from(Error::Io(e)))?;
        }
    }
    eprintln!(
        "{} classes, {} nodes, {:.2}s",
        report.count(),
        report.nodes,
        report.elapsed.as_secs_f64()
    );
    Ok(0)
}

fn isomorphic(a: &QuandleTable, b: &QuandleTable) -> Outcome {
    match are_isomorphic(a, b) {
        Some(w) => {
            println!("isomorphic");
            println!("witness: {w}");
            Ok(0)
        }
        None => {
            println!("not isomorphic");
            Ok(1)
        }
    }
}

fn catalog_command(action: CatalogAction) -> Outcome {
    match action {
        CatalogAction::List => {
            for e in catalog::catalog() {
                println!("{:<6} {:>3}  {}", e.name, e.table.order(), e.description);
            }
        }
        CatalogAction::Show { name } => {
            let e = catalog::entry(&name).ok_or_else(|| Failure::new(EXIT_NO_INPUT, format!("no catalog entry {name}")))?;
            println!("# {}: {}", e.name, e.description);
            if let Source::Constructed(recipe) = e.source {
                println!("# {recipe}");
            }
            let x = &e.expected;
            println!(
                "# |Int| = {}, faithful: {}, phi-image order: {}, simple: {}",
                x.int_order,
                yes_no(x.faithful),
                x.phi_image_order,
                yes_no(x.simple)
            );
            if !x.surjects_to.is_empty() {
                println!("# surjects to {}", x.surjects_to.join(", "));
            }
            print!("{}", format_table(&e.table));
        }
        CatalogAction::Dump { dir } => {
            std::fs::create_dir_all(&dir).map_err(|e| Failure::from(Error::Io(e)))?;
            for e in catalog::catalog() {
                std::fs::write(dir.join(format!("{}.txt", e.name)), format_table(&e.table))
                    .map_err(|e| Failure::from(Error::Io(e)))?;
            }
            eprintln!("wrote {} tables to {}", catalog::catalog().len(), dir.display());
        }
    }
    Ok(0)
}

fn parse_matrix(text: &str) -> Result<Vec<Vec<i64>>, Failure> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<i64>()
                        .map_err(|_| Failure::new(EXIT_USAGE, format!("bad matrix entry {v:?}")))
                })
                .collect()
        })
        .collect()
}

fn alexander(moduli: Vec<u64>, matrix: &str) -> Outcome {
    let spec = AlexanderSpec::new(moduli, parse_matrix(matrix)?).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    let q = alexander_quandle(&spec)?;
    println!("# {spec}, connected: {}", yes_no(spec.one_minus_t_invertible()));
    print!("{}", format_table(&q));
    Ok(0)
}

fn extend(base: &QuandleTable, fiber: usize) -> Outcome {
    if fiber != 2 {
        return Err(Failure::new(EXIT_USAGE, "only --fiber 2 is supported"));
    }
    if !base.is_connected() {
        return Err(Failure::new(EXIT_DATA, "the base must be connected"));
    }
    let found = connected_binary_extensions(base)?;
    println!("connected extensions: {}", found.len());
    for (i, (table, pair)) in found.iter().enumerate() {
        let coboundary = pair.gamma_vanishes() && is_coboundary(base, pair.beta_bits())?.is_some();
        println!();
        println!(
            "# extension {}: order {}, gamma zero: {}, beta coboundary: {}, catalog: {}",
            i + 1,
            table.order(),
            yes_no(pair.gamma_vanishes()),
            yes_no(coboundary),
            catalog::identify(table).unwrap_or("-")
        );
        print!("{}", format_table(table));
    }
    Ok(0)
}

fn cohomology(q: &QuandleTable, bases: bool) -> Outcome {
    let h = f2_cocycles(q);
    println!("dim Z2: {}", h.dim_cocycles());
    println!("dim B2: {}", h.dim_coboundaries());
    println!("dim H2: {}", h.dim_quotient());
    if bases {
        println!("\n# cocycle basis");
        print!("{}", format_bit_matrices(&h.cocycles, q.order()));
        println!("\n# coboundary basis");
        print!("{}", format_bit_matrices(&h.coboundaries, q.order()));
    }
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify { file, labelled } => verify(&file, labelled),
        Command::Analyze { input, labelled } => analyze(&load(&input, labelled)?),
        Command::Enumerate {
            order,
            jobs,
            out,
            budget,
            checkpoint,
        } => enumerate(order, jobs, out, budget, checkpoint),
        Command::Isomorphic { a, b, labelled } => isomorphic(&load(&a, labelled)?, &load(&b, labelled)?),
        Command::Catalog { action } => catalog_command(action),
        Command::Alexander { moduli, matrix } => alexander(moduli, &matrix),
        Command::Extend { base, fiber, labelled } => extend(&load(&base, labelled)?, fiber),
        Command::Cohomology { input, labelled, bases } => cohomology(&load(&input, labelled)?, bases),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
