//! `fquandle`: command-line front end for the f-quandle library.
//!
//! Exit codes: 0 success, 1 a checked property fails, 2 usage error,
//! 3 malformed input.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fquandle::classify::{DEFAULT_ORDER_CAP, MAX_ORDER_CAP};
use fquandle::cohomology::{brute_force_kernel_with, cohomology_with, BRUTE_FORCE_CAP};
use fquandle::{
    build_extension, check_dynamical_cocycle, classify_with_cap, compare_reference, enumerate_all_with_cap,
    enveloping_presentation, filter_no_quandle, make_alexander, quotient_crossed_set, twist, validate,
    validate_exhaustive, AxiomReport, Catalog, CohomologyResult, Convention, DynamicalCocycle, FTable, Level,
    ModuleData, ReferenceComparison, ScalarModule,
};

#[derive(Parser)]
#[command(name = "fquandle", version, about = "Finite f-shelves, f-racks, f-quandles and f-crossed sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an FTable at an axiom level.
    Check {
        file: PathBuf,
        #[arg(long, default_value = "quandle")]
        level: Level,
        /// Report every witness instead of the first per condition.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate and classify all f-quandles of one order.
    Classify {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum)]
        filter: Option<Filter>,
        /// Catalog destination; only the summary is printed without it.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, env = "FQUANDLE_ORDER_CAP", default_value_t = DEFAULT_ORDER_CAP)]
        order_cap: usize,
    },
    /// Cohomology with scalar coefficients in Z_m. Without FILE the
    /// Alexander structure `T x + S y` on Z_m is used.
    Cohom {
        file: Option<PathBuf>,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long = "T")]
        t: u64,
        #[arg(long = "S")]
        s: u64,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long, default_value = "uniform")]
        convention: Convention,
        /// Append the side-by-side record for the two reference Z_3 instances.
        #[arg(long)]
        compare_reference: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Twist a table by an automorphism given as images, e.g. "1 0".
    Twist {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the extension of BASE by a dynamical cocycle or module data.
    Extend {
        base: PathBuf,
        cocycle: PathBuf,
        #[arg(long, default_value = "quandle")]
        level: Level,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enveloping group presentation, optionally with the crossed quotient.
    Envelope {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the quotient crossed set and its projection here.
        #[arg(long)]
        quotient: Option<PathBuf>,
    },
    /// Class counts for every order up to a bound, as CSV.
    Catalog {
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        #[arg(long, env = "FQUANDLE_ORDER_CAP", default_value_t = DEFAULT_ORDER_CAP)]
        order_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Filter {
    NoQuandle,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn input(message: impl Into<String>) -> Failure {
    Failure { code: 3, message: message.into() }
}

impl From<fquandle::Error> for Failure {
    fn from(e: fquandle::Error) -> Self {
        use fquandle::Error::*;
        let code = match &e {
            NotAUnit { .. } | ZeroModulus | OrderTooLarge { .. } | DegreeOutOfRange(_) | SearchTooLarge { .. } => 2,
            NotEndomorphism { .. }
            | NotAutomorphism
            | NotTableAutomorphism { .. }
            | DiagonalMismatch { .. }
            | IllDefinedQuotient { .. }
            | Precondition { .. } => 1,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Result of a command that ran to completion: whether the checked
/// property held.
type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { file, level, exhaustive, format } => cmd_check(&file, level, exhaustive, format),
        Command::Classify { order, filter, out, format, order_cap } => {
            cmd_classify(order, filter, out.as_deref(), format, order_cap)
        }
        Command::Cohom { file, modulus, t, s, max_degree, convention, compare_reference, out, format } => {
            cmd_cohom(file.as_deref(), modulus, t, s, max_degree, convention, compare_reference, out.as_deref(), format)
        }
        Command::Twist { file, phi, out } => cmd_twist(&file, &phi, out.as_deref()),
        Command::Extend { base, cocycle, level, out } => cmd_extend(&base, &cocycle, level, out.as_deref()),
        Command::Envelope { file, format, out, quotient } => {
            cmd_envelope(&file, format, out.as_deref(), quotient.as_deref())
        }
        Command::Catalog { max_order, order_cap, out } => cmd_catalog(max_order, order_cap, out.as_deref()),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Writes to `out`, or standard output when absent.
fn emit(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, content).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes()).map_err(|e| usage(e.to_string()))
        }
    }
}

fn check_cap(cap: usize) -> Result<(), Failure> {
    if cap > MAX_ORDER_CAP {
        return Err(usage(format!("order cap {cap} exceeds the hard limit {MAX_ORDER_CAP}")));
    }
    Ok(())
}

fn report_text(r: &AxiomReport) -> String {
    let mut s = format!("level {:?}: {}\n", r.level_requested, if r.passed { "passed" } else { "failed" }).to_lowercase();
    for v in &r.violations {
        s.push_str(&format!("  {} at {:?}\n", serde_json::to_value(v.condition).unwrap().as_str().unwrap(), v.witness));
    }
    s
}

fn cmd_check(file: &Path, level: Level, exhaustive: bool, format: Format) -> Outcome {
    let t: FTable = read_json(file)?;
    let r = if exhaustive { validate_exhaustive(&t, level) } else { validate(&t, level) };
    match format {
        Format::Json => emit(None, &to_json(&r))?,
        Format::Text => emit(None, &report_text(&r))?,
        Format::Csv => return Err(usage("check supports json and text")),
    }
    Ok(r.passed)
}

fn summary_line(c: &Catalog) -> String {
    format!(
        "order {}: iso_classes {}, twisted_classes {}, no_quandle_classes {}\n",
        c.order,
        c.iso_class_count,
        c.twisted_class_count,
        c.no_quandle_count()
    )
}

fn rows_compact(t: &FTable) -> String {
    t.rows()
        .iter()
        .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(";")
}

fn catalog_csv(c: &Catalog) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| usage(e.to_string());
    w.write_record(["class", "member", "contains_quandle", "is_latin", "is_group_like", "table"]).map_err(err)?;
    for (ci, class) in c.classes.iter().enumerate() {
        for &m in &class.members {
            w.write_record([
                ci.to_string(),
                m.to_string(),
                class.contains_quandle.to_string(),
                class.is_latin.to_string(),
                class.is_group_like.to_string(),
                rows_compact(&c.tables[m]),
            ])
            .map_err(err)?;
        }
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| usage(e.to_string()))?).expect("csv is utf-8"))
}

fn cmd_classify(order: usize, filter: Option<Filter>, out: Option<&Path>, format: Format, cap: usize) -> Outcome {
    check_cap(cap)?;
    if order == 0 {
        return Err(usage("order must be positive"));
    }
    let full = classify_with_cap(order, cap)?;
    let mut summary = summary_line(&full);
    let catalog = match filter {
        Some(Filter::NoQuandle) => {
            let f = filter_no_quandle(&full);
            summary.push_str(&format!("no-quandle filter: {} classes\n", f.twisted_class_count));
            f
        }
        None => full,
    };
    emit(None, &summary)?;
    if let Some(p) = out {
        let body = match format {
            Format::Json => to_json(&catalog),
            Format::Csv => catalog_csv(&catalog)?,
            Format::Text => return Err(usage("catalog output supports json and csv")),
        };
        emit(Some(p), &body)?;
    }
    Ok(true)
}

#[derive(Serialize)]
struct DegreeRecord {
    #[serde(flatten)]
    result: CohomologyResult,
    /// `|ker delta^n|` counted by enumeration, when within the search cap.
    brute_force_cocycles: Option<u128>,
    oracle_agrees: Option<bool>,
}

#[derive(Serialize)]
struct CohomRecord {
    table: FTable,
    module: ScalarModule,
    convention: Convention,
    degrees: Vec<DegreeRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference: Option<Vec<ReferenceComparison>>,
}

fn cohom_text(r: &CohomRecord) -> String {
    let mut s = format!("module: m={} T={} S={} g={}\n", r.module.m, r.module.t, r.module.s, r.module.g);
    for d in &r.degrees {
        let res = &d.result;
        let dim = res.dimension.map_or("-".to_string(), |v| v.to_string());
        let bf = d.brute_force_cocycles.map_or("-".to_string(), |v| v.to_string());
        let agree = match d.oracle_agrees {
            Some(true) => "agree",
            Some(false) => "DISAGREE",
            None => "skipped",
        };
        s.push_str(&format!(
            "H^{}: dim {} divisors {:?} cocycles {} brute-force {} oracle {} complex {}\n",
            res.degree,
            dim,
            res.elementary_divisors,
            res.cocycle_count(),
            bf,
            agree,
            if res.image_in_kernel { "ok" } else { "defective" }
        ));
    }
    if let Some(refs) = &r.reference {
        for c in refs {
            s.push_str(&format!(
                "reference {}: H^1 {} vs reported {}, H^2 {} vs reported {}, delta^1 zero {} vs reported {}, \
                 displayed-equation failures {:?}, complex failures {:?}\n",
                c.instance.label,
                c.h1_dim,
                c.instance.reported_h1_dim,
                c.h2_dim,
                c.instance.reported_h2_dim,
                c.delta1_zero,
                c.instance.reported_delta1_zero,
                c.displayed_failures,
                c.complex_failures
            ));
        }
    }
    s
}

#[allow(clippy::too_many_arguments)]
fn cmd_cohom(
    file: Option<&Path>,
    m: u64,
    t: u64,
    s: u64,
    max_degree: usize,
    conv: Convention,
    reference: bool,
    out: Option<&Path>,
    format: Format,
) -> Outcome {
    if m == 0 {
        return Err(usage("modulus must be positive"));
    }
    let module = ScalarModule::new(m, t, s)?;
    if !(1..=2).contains(&max_degree) {
        return Err(usage("max-degree must be 1 or 2"));
    }
    let table = match file {
        Some(p) => read_json(p)?,
        None => make_alexander(m, t, s)?,
    };
    let pairs = module.pairs(table.order());
    let mut degrees = Vec::new();
    for n in 1..=max_degree {
        let result = cohomology_with(&table, &module, n, conv)?;
        let dim = (table.order() as u32).pow(n as u32);
        let within = (m as u128).checked_pow(dim).is_some_and(|v| v <= BRUTE_FORCE_CAP);
        let brute = if within { Some(brute_force_kernel_with(&table, &pairs, n, conv)?.len() as u128) } else { None };
        degrees.push(DegreeRecord {
            oracle_agrees: brute.map(|b| b == result.cocycle_count()),
            brute_force_cocycles: brute,
            result,
        });
    }
    let reference = if reference { Some(compare_reference(conv)?) } else { None };
    let ok = degrees.iter().all(|d| d.oracle_agrees != Some(false));
    let record = CohomRecord { table, module, convention: conv, degrees, reference };
    let body = match format {
        Format::Json => to_json(&record),
        Format::Text => cohom_text(&record),
        Format::Csv => return Err(usage("cohom supports json and text")),
    };
    emit(out, &body)?;
    Ok(ok)
}

fn parse_map(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|w| !w.is_empty())
        .map(|w| w.parse().map_err(|_| usage(format!("bad map entry {w:?}"))))
        .collect()
}

fn cmd_twist(file: &Path, phi: &str, out: Option<&Path>) -> Outcome {
    let t: FTable = read_json(file)?;
    let phi = parse_map(phi)?;
    let twisted = twist(&t, &phi)?;
    emit(out, &to_json(&twisted))?;
    Ok(true)
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum CocycleInput {
    Dynamical(DynamicalCocycle),
    Module(ModuleData),
}

fn cmd_extend(base: &Path, cocycle: &Path, level: Level, out: Option<&Path>) -> Outcome {
    let t: FTable = read_json(base)?;
    let c = match read_json::<CocycleInput>(cocycle)? {
        CocycleInput::Dynamical(c) => c,
        CocycleInput::Module(md) => md.to_dynamical_cocycle()?,
    };
    let report = check_dynamical_cocycle(&t, &c, level)?;
    let ext = build_extension(&t, &c)?;
    let ext_report = validate(&ext, level);
    eprint!("cocycle {}extension {}", report_text(&report), report_text(&ext_report));
    emit(out, &to_json(&ext))?;
    Ok(report.passed)
}

fn cmd_envelope(file: &Path, format: Format, out: Option<&Path>, quotient: Option<&Path>) -> Outcome {
    let t: FTable = read_json(file)?;
    let p = enveloping_presentation(&t);
    let body = match format {
        Format::Json => to_json(&p),
        Format::Text => p.to_text(),
        Format::Csv => return Err(usage("envelope supports json and text")),
    };
    emit(out, &body)?;
    if let Some(q) = quotient {
        let cq = quotient_crossed_set(&t)?;
        emit(Some(q), &to_json(&cq))?;
    }
    Ok(true)
}

fn cmd_catalog(max_order: usize, cap: usize, out: Option<&Path>) -> Outcome {
    check_cap(cap)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| usage(e.to_string());
    w.write_record(["order", "labelled_tables", "iso_classes", "twisted_classes", "no_quandle_classes"]).map_err(err)?;
    for n in 1..=max_order {
        let labelled = enumerate_all_with_cap(n, cap)?.len();
        let c = classify_with_cap(n, cap)?;
        w.write_record([
            n.to_string(),
            labelled.to_string(),
            c.iso_class_count.to_string(),
            c.twisted_class_count.to_string(),
            c.no_quandle_count().to_string(),
        ])
        .map_err(err)?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| usage(e.to_string()))?).expect("csv is utf-8");
    emit(out, &body)?;
    Ok(true)
}
