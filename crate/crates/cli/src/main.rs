use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vtsbd::experiment::{matrix_csv, run_fig1};
use vtsbd::io::{parse_config, parse_node_file, FactorsDocument, ReportDocument, SbdDocument, FACTORS_SCHEMA};
use vtsbd::scalar::F64_EPSILON;
use vtsbd::{
    compare_sbd, dense_matrix, exact_rank, fix_bottom_right, reconstruct, sbd, sbd_expand, sbd_rbv_scaled,
    tn_sample_check, ConfigExact, FactorSequence, NodeConfig, Rational, Scalar, SingularityFreeBD,
};

/// Singularity-free bidiagonal decompositions of Vandermonde-type matrices.
#[derive(Parser)]
#[command(name = "vtsbd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScalarArg {
    Rational,
    F64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    /// B/C storage built from the node formulas.
    Standard,
    /// Rational Bernstein-Vandermonde only: the weight-scaled factorization.
    Scaled,
}

#[derive(clap::Args)]
struct ConfigArgs {
    /// JSON node configuration.
    config: PathBuf,
    /// Replace the configuration's nodes by those in a node file (one per line).
    #[arg(long)]
    nodes: Option<PathBuf>,
    /// Enforce node domains and parameter ranges (overrides the file's setting).
    #[arg(long, value_name = "BOOL", num_args = 0..=1, default_missing_value = "true")]
    strict: Option<bool>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the decomposition of a configured matrix.
    Decompose {
        #[command(flatten)]
        input: ConfigArgs,
        #[arg(long, value_enum, default_value = "rational")]
        scalar: ScalarArg,
        /// Output file (standard output if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Normalize every bidiagonal factor to a unit (n,n) entry.
        #[arg(long)]
        fix_corner: bool,
        #[arg(long, value_enum, default_value = "standard")]
        variant: Variant,
    },
    /// Compare binary64 against exact arithmetic and run the exact checks.
    Verify {
        #[command(flatten)]
        input: ConfigArgs,
        /// Number of random minors sampled in strict mode.
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the exact rank of the configured matrix.
    Rank {
        #[command(flatten)]
        input: ConfigArgs,
    },
    /// Multiply out a decomposition document and print the matrix as CSV.
    Reconstruct {
        document: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the 24x24 q-Bernstein-Vandermonde artifacts.
    #[command(name = "experiment-fig1")]
    ExperimentFig1 {
        #[arg(long)]
        out: PathBuf,
    },
    /// Recompute a stored decomposition from its own configuration and
    /// compare.
    #[command(name = "check-file")]
    CheckFile { document: PathBuf },
}

/// Errors mapped to exit code 2.
struct Usage(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.into())
    }
}

/// `Ok(true)` when every check passed.
type Outcome = Result<bool, Usage>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Decompose {
            input,
            scalar,
            out,
            fix_corner,
            variant,
        } => decompose(&input, scalar, out.as_deref(), fix_corner, variant),
        Command::Verify {
            input,
            trials,
            seed,
            out,
        } => verify(&input, trials, seed, out.as_deref()),
        Command::Rank { input } => rank(&input),
        Command::Reconstruct { document, out } => reconstruct_document(&document, out.as_deref()),
        Command::ExperimentFig1 { out } => experiment_fig1(&out),
        Command::CheckFile { document } => check_file(&document),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("writing {}", path.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => write_atomic(path, contents),
        None => {
            print!("{contents}");
            if !contents.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn load_config(args: &ConfigArgs) -> anyhow::Result<ConfigExact> {
    let text = read(&args.config)?;
    let doc: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", args.config.display()))?;
    let mut doc = doc;
    if let Some(strict) = args.strict {
        doc["strict"] = Value::Bool(strict);
    }
    if let Some(path) = &args.nodes {
        let nodes: Vec<Rational> = parse_node_file(&read(path)?)?;
        doc["nodes"] = nodes.iter().map(|x| Value::String(x.to_canonical_string())).collect();
        if let Some(obj) = doc.as_object_mut() {
            obj.remove("n");
        }
    }
    Ok(parse_config(&doc.to_string())?)
}

fn decompose_as<T: Scalar>(config: &ConfigExact, fix_corner: bool, variant: Variant) -> anyhow::Result<String> {
    let config: NodeConfig<T> = config.convert()?;
    let factors: Option<FactorSequence<T>> = match variant {
        Variant::Scaled => Some(sbd_rbv_scaled(&config)?),
        Variant::Standard if fix_corner => Some(sbd_expand(&sbd(&config)?)),
        Variant::Standard => None,
    };
    Ok(match factors {
        Some(fs) => {
            let fs = if fix_corner { fix_bottom_right(&fs) } else { fs };
            FactorsDocument::new(&config, &fs).to_json()
        }
        None => SbdDocument::new(&config, &sbd(&config)?).to_json(),
    })
}

fn decompose(input: &ConfigArgs, scalar: ScalarArg, out: Option<&Path>, fix_corner: bool, variant: Variant) -> Outcome {
    let config = load_config(input)?;
    let text = match scalar {
        ScalarArg::Rational => decompose_as::<Rational>(&config, fix_corner, variant)?,
        ScalarArg::F64 => decompose_as::<f64>(&config, fix_corner, variant)?,
    };
    emit(out, &text)?;
    Ok(true)
}

fn accuracy_bound(n: usize) -> f64 {
    50.0 * n as f64 * F64_EPSILON
}

fn verify(input: &ConfigArgs, trials: usize, seed: u64, out: Option<&Path>) -> Outcome {
    let config = load_config(input)?;
    let n = config.n();
    let exact = sbd(&config)?;
    let dense = dense_matrix(&config)?;
    let reconstruction_exact = reconstruct(&sbd_expand(&exact)) == dense;

    // The binary64 run sees the nodes rounded to binary64; it is compared
    // against the exact decomposition of those rounded values.
    let float_config: NodeConfig<f64> = config.convert()?;
    let lifted: ConfigExact = float_config.convert()?;
    let reference = sbd(&lifted)?;
    let (report, float_error) = match sbd(&float_config) {
        Ok(float) => {
            let mut report = compare_sbd(&float, &reference)?;
            report.seed = Some(seed);
            (Some(report), None)
        }
        Err(e) => (None, Some(e.to_string())),
    };
    let bound = accuracy_bound(n);
    let accurate = report.as_ref().is_some_and(|r| r.within(bound));

    let tn = config.strict.then(|| tn_sample_check(&dense, trials, seed));
    let tn_passed = tn.as_ref().is_none_or(|t| t.passed());
    let passed = reconstruction_exact && accurate && tn_passed;

    let mut doc = match &report {
        Some(r) => serde_json::to_value(ReportDocument::from(r))?,
        None => json!({ "n": n, "seed": seed, "binary64_error": float_error }),
    };
    doc["bound"] = json!(format!("{bound:e}"));
    doc["reconstruction_exact"] = json!(reconstruction_exact);
    if let Some(t) = &tn {
        doc["tn_minors_sampled"] = json!(t.trials);
        doc["tn_negative_minors"] = t
            .negative
            .iter()
            .map(|m| json!({ "rows": m.rows, "cols": m.cols, "value": m.value.to_canonical_string() }))
            .collect();
    }
    doc["passed"] = json!(passed);
    emit(out, &serde_json::to_string_pretty(&doc)?)?;
    if !passed {
        eprintln!("verification failed");
    }
    Ok(passed)
}

fn rank(input: &ConfigArgs) -> Outcome {
    let config = load_config(input)?;
    println!("{}", exact_rank(&dense_matrix(&config)?));
    Ok(true)
}

fn schema_of(text: &str) -> anyhow::Result<String> {
    let v: Value = serde_json::from_str(text)?;
    v.get("schema")
        .and_then(Value::as_str)
        .map(str::to_string)
        .ok_or_else(|| anyhow!("document has no schema field"))
}

fn product_csv<T: Scalar>(fs: &FactorSequence<T>) -> String {
    matrix_csv(&reconstruct(fs))
}

fn reconstruct_document(path: &Path, out: Option<&Path>) -> Outcome {
    let text = read(path)?;
    let csv = if schema_of(&text)? == FACTORS_SCHEMA {
        let doc = FactorsDocument::from_json(&text)?;
        if doc.scalar == "binary64" {
            product_csv(&doc.factor_sequence::<f64>()?)
        } else {
            product_csv(&doc.factor_sequence::<Rational>()?)
        }
    } else {
        let doc = SbdDocument::from_json(&text)?;
        if doc.scalar == "binary64" {
            product_csv(&sbd_expand(&doc.decomposition::<f64>()?))
        } else {
            product_csv(&sbd_expand(&doc.decomposition::<Rational>()?))
        }
    };
    emit(out, &csv)?;
    Ok(true)
}

fn experiment_fig1(dir: &Path) -> Outcome {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let fig = run_fig1()?;
    write_atomic(&dir.join("sbd.json"), &SbdDocument::new(&fig.config, &fig.sbd).to_json())?;
    write_atomic(&dir.join("rank.txt"), &format!("{}\n", fig.rank))?;
    write_atomic(&dir.join("matrix_hiprec.csv"), &matrix_csv(&fig.matrix))?;
    for name in ["sbd.json", "rank.txt", "matrix_hiprec.csv"] {
        println!("{}", dir.join(name).display());
    }
    Ok(true)
}

/// First entry where `stored` and `fresh` disagree, 1-based.
fn first_difference<T: Scalar>(stored: &SingularityFreeBD<T>, fresh: &SingularityFreeBD<T>) -> Option<String> {
    for (part, a, b) in [("B", stored.b_matrix(), fresh.b_matrix()), ("C", stored.c_matrix(), fresh.c_matrix())] {
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                if a[(r, c)] != b[(r, c)] {
                    return Some(format!(
                        "{part}[{}][{}] is {} but should be {}",
                        r + 1,
                        c + 1,
                        a[(r, c)].to_canonical_string(),
                        b[(r, c)].to_canonical_string()
                    ));
                }
            }
        }
    }
    None
}

fn check_file(path: &Path) -> Outcome {
    let text = read(path)?;
    let doc = SbdDocument::from_json(&text)?;
    let config: ConfigExact = doc.config()?;
    let problem = match doc.scalar.as_str() {
        "rational" => match doc.decomposition::<Rational>() {
            Ok(stored) => first_difference(&stored, &sbd(&config)?),
            Err(e) => Some(e.to_string()),
        },
        "binary64" => match doc.decomposition::<f64>() {
            Ok(stored) => {
                let float_config: NodeConfig<f64> = config.convert()?;
                let lifted: ConfigExact = float_config.convert()?;
                let report = compare_sbd(&stored, &sbd(&lifted)?)?;
                let bound = accuracy_bound(config.n());
                (!report.within(bound)).then(|| {
                    format!(
                        "relative error {} at {}[{}][{}] exceeds {bound:e}",
                        report.max_rel_error(),
                        report.worst.part,
                        report.worst.i,
                        report.worst.j
                    )
                })
            }
            Err(e) => Some(e.to_string()),
        },
        other => return Err(Usage(anyhow!("unknown scalar kind \"{other}\""))),
    };
    match problem {
        None => {
            println!("ok");
            Ok(true)
        }
        Some(msg) => {
            eprintln!("{}: {msg}", path.display());
            Ok(false)
        }
    }
}
