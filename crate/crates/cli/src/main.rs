use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hooktree::bijection::{split, MarkKind, MarkedKmTree};
use hooktree::counting::{catalan, catalan_km, catalan_m};
use hooktree::enumerate::{km_trees, mary_trees, plane_forests};
use hooktree::hookpoly::{
    h_forest_closed, h_forest_enum, h_forest_recur, h_mary_closed, h_mary_enum, h_mary_recur,
};
use hooktree::series::{solve_c, verify_k2_ode};
use hooktree::tree::{forest_to_paren, forest_to_structured};
use hooktree::verify::{self, Identity, Status, VerificationReport};
use hooktree::{BigInt, Error, PlaneTree, RationalPolynomial, DEFAULT_CAP};

/// Exact counting, enumeration and identity checks for m-ary trees,
/// (k,m)-ary trees and plane forests.
#[derive(Parser)]
#[command(name = "hooktree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form counts.
    Count {
        #[arg(long, value_enum)]
        family: CountFamily,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        /// A single n or an inclusive range a..b.
        #[arg(long)]
        n: Values,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Lists every structure of a family, one per line.
    Enumerate {
        #[arg(long, value_enum)]
        family: EnumFamily,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "paren")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Hook length polynomial H_n(x), coefficients in ascending degree.
    Hookpoly {
        #[arg(long, value_enum)]
        family: PolyFamily,
        /// Total arity of the m-ary trees.
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "closed")]
        method: Method,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Runs a named identity (or `all`) over a parameter grid.
    Verify {
        #[arg(long)]
        identity: String,
        /// Values of k: N, a..b or a comma list.
        #[arg(long)]
        k: Option<Values>,
        #[arg(long)]
        m: Option<Values>,
        #[arg(long)]
        n: Option<Values>,
        /// Shorthand for --n 0..MAX_N.
        #[arg(long)]
        max_n: Option<u64>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Coefficients of C(z) = (1 + z C(z)^m)^k through z^order.
    Series {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Checks the differential equation of the (k,2) generating function.
    Ode {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Splits a (k,m)-ary tree at a circled crucial vertex and prints the trace.
    Split {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        m: u32,
        /// Tree in paren form.
        #[arg(long)]
        tree: PlaneTree,
        /// Preorder index of the crucial vertex.
        #[arg(long)]
        mark: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CountFamily {
    Catalan,
    Mary,
    Km,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumFamily {
    Mary,
    Km,
    Forest,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyFamily {
    Mary,
    Forest,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Enum,
    Recur,
    Closed,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Paren,
    Human,
}

/// `N`, `a..b` (inclusive) or `a,b,c`.
#[derive(Clone, Debug)]
struct Values(Vec<u64>);

impl FromStr for Values {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
        if let Some((a, b)) = s.split_once("..") {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            return Ok(Values((a..=b).collect()));
        }
        s.split(',').map(num).collect::<Result<_, _>>().map(Values)
    }
}

enum Failure {
    Usage(String),
    Identity,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn require<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{flag} is required for this family")))
}

fn reject_format(format: Format, allowed: &[Format]) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        let names: Vec<_> = allowed.iter().map(|f| f.to_possible_value().unwrap().get_name().to_string()).collect();
        Err(Failure::Usage(format!("--format must be one of: {}", names.join(", "))))
    }
}

fn cmd_count(family: CountFamily, k: Option<u32>, m: Option<u32>, ns: &[u64], format: Format) -> Result<(), Failure> {
    reject_format(format, &[Format::Csv, Format::Json, Format::Human])?;
    let counts: Vec<BigInt> = match family {
        CountFamily::Catalan => ns.iter().map(|&n| catalan(n)).collect(),
        CountFamily::Mary => {
            let m = require(m, "m")?;
            ns.iter().map(|&n| catalan_m(m as u64, n)).collect()
        }
        CountFamily::Km => {
            let (k, m) = (require(k, "k")?, require(m, "m")?);
            ns.iter().map(|&n| catalan_km(k as u64, m as u64, n)).collect()
        }
    };
    match format {
        Format::Csv => {
            let row: Vec<_> = counts.iter().map(ToString::to_string).collect();
            println!("{}", row.join(","));
        }
        Format::Json => {
            let rows: Vec<Value> =
                ns.iter().zip(&counts).map(|(n, c)| json!({ "n": n, "count": c.to_string() })).collect();
            println!("{}", Value::Array(rows));
        }
        _ => {
            for (n, c) in ns.iter().zip(&counts) {
                println!("{n:>4}  {c}");
            }
        }
    }
    Ok(())
}

fn cmd_enumerate(
    family: EnumFamily,
    k: Option<u32>,
    m: Option<u32>,
    n: usize,
    format: Format,
    cap: u64,
) -> Result<(), Failure> {
    reject_format(format, &[Format::Paren, Format::Json])?;
    let lines: Vec<String> = match family {
        EnumFamily::Mary => render_trees(mary_trees(require(m, "m")?, n, cap)?, format),
        EnumFamily::Km => render_trees(km_trees(require(k, "k")?, require(m, "m")?, n, cap)?, format),
        EnumFamily::Forest => plane_forests(n, cap)?
            .iter()
            .map(|f| if format == Format::Json { forest_to_structured(f) } else { forest_to_paren(f) })
            .collect(),
    };
    for line in &lines {
        println!("{line}");
    }
    eprintln!("count: {}", lines.len());
    Ok(())
}

fn render_trees(trees: Vec<PlaneTree>, format: Format) -> Vec<String> {
    trees.iter().map(|t| if format == Format::Json { t.to_structured() } else { t.to_paren() }).collect()
}

fn cmd_hookpoly(
    family: PolyFamily,
    m: Option<u32>,
    n: usize,
    method: Method,
    format: Format,
    cap: u64,
) -> Result<(), Failure> {
    reject_format(format, &[Format::Human, Format::Json])?;
    let poly: RationalPolynomial = match family {
        PolyFamily::Mary => {
            let m = require(m, "m")?;
            if m == 0 {
                return Err(Failure::Usage("--m must be at least 1".into()));
            }
            match method {
                Method::Enum => h_mary_enum(n, m, cap)?,
                Method::Recur => h_mary_recur(n, m),
                Method::Closed => h_mary_closed(n, m),
            }
        }
        PolyFamily::Forest => match method {
            Method::Enum => h_forest_enum(n, cap)?,
            Method::Recur => h_forest_recur(n),
            Method::Closed => h_forest_closed(n),
        },
    };
    if format == Format::Json {
        println!("{}", json!(poly.to_strings()));
    } else {
        println!("{poly}");
    }
    Ok(())
}

struct GridFlags {
    k: Option<Values>,
    m: Option<Values>,
    n: Option<Values>,
    max_n: Option<u64>,
    order: Option<usize>,
    cap: Option<u64>,
}

fn cmd_verify(name: &str, flags: GridFlags, format: Format) -> Result<(), Failure> {
    reject_format(format, &[Format::Human, Format::Json])?;
    let identities = if name == "all" {
        Identity::ALL.to_vec()
    } else {
        vec![name.parse::<Identity>()?]
    };
    if flags.n.is_some() && flags.max_n.is_some() {
        return Err(Failure::Usage("--n and --max-n are mutually exclusive".into()));
    }
    let narrow = |v: &Values| v.0.iter().map(|&x| x as u32).collect::<Vec<_>>();
    let mut reports = Vec::new();
    for id in identities {
        let mut grid = id.default_grid();
        if let Some(v) = &flags.k {
            grid.ks = narrow(v);
        }
        if let Some(v) = &flags.m {
            grid.ms = narrow(v);
        }
        if let Some(v) = &flags.n {
            grid.ns = v.0.iter().map(|&x| x as usize).collect();
        }
        if let Some(max) = flags.max_n {
            grid.ns = (0..=max as usize).collect();
        }
        if let Some(order) = flags.order {
            grid.order = order;
        }
        if let Some(cap) = flags.cap {
            grid.cap = cap;
        }
        reports.push(verify::run(id, &grid)?);
    }
    match format {
        Format::Json if reports.len() == 1 => println!("{}", reports[0].to_json()),
        Format::Json => {
            let all: Vec<Value> = reports.iter().map(|r| serde_json::to_value(r).expect("serializable")).collect();
            println!("{}", serde_json::to_string_pretty(&all).expect("serializable"));
        }
        _ => reports.iter().for_each(print_summary),
    }
    if reports.iter().all(VerificationReport::all_passed) {
        Ok(())
    } else {
        Err(Failure::Identity)
    }
}

fn print_summary(report: &VerificationReport) {
    let verdict = if report.all_passed() { "pass" } else { "FAIL" };
    println!(
        "{verdict}  {}: {}/{} cells ({:.1} ms)",
        report.identity,
        report.passed,
        report.cells.len(),
        report.wall_time_ms
    );
    for cell in report.cells.iter().filter(|c| c.status == Status::Fail) {
        println!("  fail [{}]", cell.params);
        for w in &cell.witnesses {
            println!("    {}: {} != {}", w.check, w.lhs, w.rhs);
        }
    }
}

fn cmd_series(k: u32, m: u32, order: usize, format: Format) -> Result<(), Failure> {
    reject_format(format, &[Format::Csv, Format::Json])?;
    let coeffs = solve_c(k, m, order).to_strings();
    if format == Format::Json {
        println!("{}", json!(coeffs));
    } else {
        println!("{}", coeffs.join(","));
    }
    Ok(())
}

fn cmd_ode(k: u32, order: usize) -> Result<(), Failure> {
    let check = verify_k2_ode(k, order)?;
    if check.holds() {
        println!("pass");
        Ok(())
    } else {
        println!(
            "fail: differentiated={} alpha={} integrated={} recurrence={}",
            check.differentiated, check.alpha, check.integrated, check.recurrence_form
        );
        Err(Failure::Identity)
    }
}

fn cmd_split(k: u32, m: u32, tree: PlaneTree, mark: usize) -> Result<(), Failure> {
    let input = MarkedKmTree::new(tree, mark, MarkKind::Crucial);
    let out = split(&input, k, m)?;
    let structured = |t: &PlaneTree| -> Value { serde_json::from_str(&t.to_structured()).expect("valid json") };
    let trace = json!({
        "input": { "tree": structured(&input.tree), "mark": input.mark },
        "ordered": out.ordered.iter().map(structured).collect::<Vec<_>>(),
        "last": { "tree": structured(&out.last.tree), "mark": out.last.mark },
    });
    println!("{}", serde_json::to_string_pretty(&trace).expect("serializable"));
    Ok(())
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Count { family, k, m, n, format } => cmd_count(family, k, m, &n.0, format),
        Command::Enumerate { family, k, m, n, format, cap } => cmd_enumerate(family, k, m, n, format, cap),
        Command::Hookpoly { family, m, n, method, format, cap } => cmd_hookpoly(family, m, n, method, format, cap),
        Command::Verify { identity, k, m, n, max_n, order, cap, format } => {
            cmd_verify(&identity, GridFlags { k, m, n, max_n, order, cap }, format)
        }
        Command::Series { k, m, order, format } => cmd_series(k, m, order, format),
        Command::Ode { k, order } => cmd_ode(k, order),
        Command::Split { k, m, tree, mark } => cmd_split(k, m, tree, mark),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Identity) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
