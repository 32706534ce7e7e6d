//! `kpq`: spectra, DS decisions, atlases and verification suites for the
//! nearly complete bipartite graphs.

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use kpq_spectra::ds::{self, DsStatus, DsVerdict};
use kpq_spectra::graph::{self, graph6_decode, graph6_encode, FamilyKind};
use kpq_spectra::oracle::{self, CospectralClass, EnumerationSpec};
use kpq_spectra::poly::char_poly;
use kpq_spectra::spectra::{self, QuarticSpectrum};
use kpq_spectra::suites::{self, Suite, SuiteOptions};

const EXIT_NOT_DS: u8 = 10;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(
    name = "kpq",
    version,
    about = "Exact spectral tools for K(p,q), K-(p,q) and K+(p,q)"
)]
struct Cli {
    /// Worker threads for the exhaustive searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form spectrum of a family member.
    Spectrum(SpectrumArgs),
    /// Decide whether a family member is determined by its spectrum.
    Ds(FamilyArgs),
    /// All non-DS K+(p,q) with q <= max-q, as JSON records.
    Atlas(AtlasArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Exact characteristic polynomials of graph6 graphs (arguments or stdin).
    Charpoly(CharpolyArgs),
    /// Exhaustive search for cospectral mates of graph6 graphs (arguments or stdin).
    Mates(MatesArgs),
    /// Cospectral classes of all graphs on n vertices.
    Classes(ClassesArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Complete bipartite K(p,q).
    #[value(name = "kpq")]
    Complete,
    /// K(p,q) minus one edge.
    #[value(name = "kpq-")]
    Minus,
    /// K(p,q) plus a pendant edge at the smaller part.
    #[value(name = "kpq+")]
    Plus,
}

impl Family {
    fn label(self, p: u64, q: u64) -> String {
        let (p, q) = (p.min(q), p.max(q));
        match self {
            Family::Complete => format!("K_{{{p},{q}}}"),
            Family::Minus => format!("K_{{{p},{q}}}-"),
            Family::Plus => format!("K_{{{p},{q}}}+"),
        }
    }
}

#[derive(Args)]
struct FamilyArgs {
    family: Family,
    p: u64,
    q: u64,
    /// Emit JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    target: FamilyArgs,
    /// Print the characteristic polynomial.
    #[arg(long)]
    poly: bool,
    /// Also print approximate decimal eigenvalues (not used by any check).
    #[arg(long)]
    approx: bool,
}

#[derive(Args)]
struct AtlasArgs {
    #[arg(long, default_value_t = 20)]
    max_q: u64,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// smallest-pair, minus-edge-window, plus-pendant-mates, closed-forms or parametrization.
    suite: String,
    /// Largest vertex count for exhaustive windows.
    #[arg(long)]
    n: Option<usize>,
    /// Largest q for sweeps (closed-forms: 50, parametrization: 2000).
    #[arg(long)]
    max_q: Option<u64>,
    /// Include the 10-vertex, 19-edge search for K+(3,6).
    #[arg(long)]
    flagship: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CharpolyArgs {
    graphs: Vec<String>,
    /// Emit coefficient arrays (lowest degree first) as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct MatesArgs {
    graphs: Vec<String>,
}

#[derive(Args)]
struct ClassesArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    edges: Option<usize>,
    #[arg(long)]
    bipartite: bool,
    /// Keep classes with a single member.
    #[arg(long)]
    singletons: bool,
    /// Write BASE.g6 and BASE.json instead of printing JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Data(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Data(_) => EXIT_DATA,
            Failure::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Data(m) | Failure::Io(m) => m,
        }
    }
}

impl From<kpq_spectra::Error> for Failure {
    fn from(e: kpq_spectra::Error) -> Self {
        match e {
            kpq_spectra::Error::Parse { .. } => Failure::Data(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("kpq: cannot configure threads: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let result = match cli.command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Ds(a) => cmd_ds(a),
        Command::Atlas(a) => cmd_atlas(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Charpoly(a) => cmd_charpoly(a),
        Command::Mates(a) => cmd_mates(a),
        Command::Classes(a) => cmd_classes(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("kpq: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn print_json(v: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string(v).map_err(|e| Failure::Io(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn approx_pairs(ev: &[f64]) -> String {
    ev.iter()
        .map(|x| format!("{x:.6}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn cmd_spectrum(a: SpectrumArgs) -> Outcome {
    let FamilyArgs { family, p, q, json } = a.target;
    let (data, poly, approx) = match family {
        Family::Complete => {
            let s = spectra::spectrum_complete_bipartite(p, q)?;
            let c = graph::complete_bipartite(p as usize, q as usize)?;
            let lambda = (p as f64 * q as f64).sqrt();
            (
                serde_json::to_value(&s).unwrap(),
                char_poly(&c),
                vec![lambda, -lambda],
            )
        }
        Family::Minus | Family::Plus => {
            let s = if matches!(family, Family::Minus) {
                spectra::spectrum_k_minus(p, q)?
            } else {
                spectra::spectrum_k_plus(p, q)?
            };
            let poly = spectra::quartic_to_poly(&s);
            (
                serde_json::to_value(&s).unwrap(),
                poly,
                s.approx_eigenvalues().to_vec(),
            )
        }
    };
    if json {
        let mut v = data;
        if a.poly {
            v["poly"] = serde_json::to_value(&poly).unwrap();
        }
        if a.approx {
            v["approx"] = json!(approx);
        }
        print_json(&v)?;
    } else if a.poly && !a.approx {
        println!("{poly}");
    } else {
        let fields: Vec<String> = data
            .as_object()
            .unwrap()
            .iter()
            .map(|(k, v)| {
                format!(
                    "{k}={}",
                    v.as_str().map(str::to_string).unwrap_or(v.to_string())
                )
            })
            .collect();
        println!("{}: {}", family.label(p, q), fields.join(" "));
        if a.poly {
            println!("poly: {poly}");
        }
        if a.approx {
            println!("approx nonzero eigenvalues: {}", approx_pairs(&approx));
        }
    }
    Ok(0)
}

fn mate_graph6(v: &DsVerdict) -> Option<String> {
    ds::build_mate(v).ok().map(|g| graph6_encode(&g))
}

fn cmd_ds(a: FamilyArgs) -> Outcome {
    let FamilyArgs { family, p, q, json } = a;
    let label = family.label(p, q);
    let status = match family {
        Family::Complete => {
            let v = ds::ds_check_complete_bipartite(p, q)?;
            if json {
                print_json(&v)?;
            } else {
                println!("{label}: {}", status_name(v.status));
                for m in &v.mates {
                    println!("mate K_{{{},{}}} u {}K1", m.p2, m.q2, m.isolated);
                }
            }
            v.status
        }
        Family::Minus | Family::Plus => {
            let v = if matches!(family, Family::Minus) {
                ds::ds_check_k_minus(p, q)?
            } else {
                ds::ds_check_k_plus(p, q)?
            };
            let g6 = mate_graph6(&v);
            if json {
                let mut value = serde_json::to_value(&v).unwrap();
                if let Some(g6) = &g6 {
                    value["mate_graph6"] = json!(g6);
                }
                print_json(&value)?;
            } else {
                println!("{label}: {}", status_name(v.status));
                if let Some(m) = v.mate {
                    println!("mate {}", m.name());
                    if let Some(g6) = g6 {
                        println!("mate graph6 {g6}");
                    }
                }
                for w in &v.witnesses {
                    println!("witness (a,b,b',t) = ({},{},{},{})", w.a, w.b, w.bp, w.t);
                }
            }
            v.status
        }
    };
    Ok(match status {
        DsStatus::Ds => 0,
        DsStatus::NotDs => EXIT_NOT_DS,
    })
}

fn status_name(s: DsStatus) -> &'static str {
    match s {
        DsStatus::Ds => "DS",
        DsStatus::NotDs => "NotDS",
    }
}

#[derive(Serialize)]
struct AtlasRecord {
    family: FamilyKind,
    n: u64,
    e: u64,
    quartic: QuarticSpectrum,
    verdict: DsVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    mate_graph6: Option<String>,
}

fn atlas(max_q: u64) -> Result<Vec<AtlasRecord>, Failure> {
    ds::enumerate_non_ds(max_q)
        .into_iter()
        .map(|verdict| {
            let (p, q) = (verdict.p, verdict.q);
            Ok(AtlasRecord {
                family: FamilyKind::PlusPendant {
                    p: p as usize,
                    q: q as usize,
                },
                n: p + q + 1,
                e: p * q + 1,
                quartic: spectra::spectrum_k_plus(p, q)?,
                mate_graph6: mate_graph6(&verdict),
                verdict,
            })
        })
        .collect()
}

fn cmd_atlas(a: AtlasArgs) -> Outcome {
    if a.max_q < 3 {
        return Err(Failure::Usage("--max-q must be at least 3".into()));
    }
    let records = atlas(a.max_q)?;
    let text =
        serde_json::to_string_pretty(&records).map_err(|e| Failure::Io(e.to_string()))? + "\n";
    match a.out {
        Some(path) => {
            fs::write(&path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?
        }
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(0)
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let suite = Suite::from_name(&a.suite).ok_or_else(|| {
        let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
        Failure::Usage(format!(
            "unknown suite '{}'; expected one of {}",
            a.suite,
            names.join(", ")
        ))
    })?;
    let default_q = if suite == Suite::Parametrization {
        2000
    } else {
        50
    };
    let opts = SuiteOptions {
        n_max: a.n.unwrap_or(9),
        max_q: a.max_q.unwrap_or(default_q),
        flagship: a.flagship,
    };
    if opts.n_max > oracle::DEFAULT_ENUMERATION_CAP {
        return Err(Failure::Usage(format!(
            "--n {} exceeds the enumeration cap of {}",
            opts.n_max,
            oracle::DEFAULT_ENUMERATION_CAP
        )));
    }
    let report = suites::run_suite(suite, &opts);
    if a.json {
        print_json(&report)?;
    } else {
        print!("{}", report.render());
    }
    Ok(if report.passed { 0 } else { 1 })
}

/// Graph6 inputs from the arguments, or from stdin one per line.
fn graph_inputs(args: Vec<String>) -> Result<Vec<String>, Failure> {
    if !args.is_empty() {
        return Ok(args);
    }
    let mut out = Vec::new();
    for line in io::stdin().lock().lines() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        if !line.is_empty() {
            out.push(line.to_string());
        }
    }
    Ok(out)
}

fn cmd_charpoly(a: CharpolyArgs) -> Outcome {
    for text in graph_inputs(a.graphs)? {
        let g = graph6_decode(&text)?;
        let p = char_poly(&g);
        if a.json {
            print_json(&p)?;
        } else {
            println!("{}", p.render("x"));
        }
    }
    Ok(0)
}

fn cmd_mates(a: MatesArgs) -> Outcome {
    let mut all_ds = true;
    for text in graph_inputs(a.graphs)? {
        let g = graph6_decode(&text)?;
        let check = oracle::verify_ds(&g)?;
        all_ds &= check.is_ds_within_n;
        let mut v = serde_json::to_value(&check).unwrap();
        v["graph6"] = Value::String(text);
        print_json(&v)?;
    }
    Ok(if all_ds { 0 } else { EXIT_NOT_DS })
}

fn write_archive(classes: &[CospectralClass], base: &Path) -> io::Result<()> {
    let mut lines = String::new();
    for c in classes {
        for g6 in c.graph6_members() {
            lines.push_str(&g6);
            lines.push('\n');
        }
    }
    fs::write(base.with_extension("g6"), lines)?;
    let index = serde_json::to_string_pretty(classes).map_err(io::Error::other)?;
    fs::write(base.with_extension("json"), index + "\n")
}

fn cmd_classes(a: ClassesArgs) -> Outcome {
    let mut spec = EnumerationSpec::new(a.n);
    if let Some(e) = a.edges {
        spec = spec.with_edges(e);
    }
    if a.bipartite {
        spec = spec.bipartite();
    }
    let classes = oracle::cospectral_classes(&spec, a.singletons)?;
    match a.out {
        Some(base) => write_archive(&classes, &base)
            .map_err(|e| Failure::Io(format!("{}: {e}", base.display())))?,
        None => print_json(&classes)?,
    }
    Ok(0)
}
