use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use super::format::{self, DocError, Value};
use crate::cyclo::Cyclotomic;
use crate::enumerate::{classify, generate_gram_matrices, CorpusSpec, EnumerateError};
use crate::lattice::parse_integer_matrix;
use crate::moddata::{
    colored_link_invariant, fusion_probabilities, verify, verlinde_fusion, FramedLink, Label, ModularData,
    ModularDataError, DEFAULT_CANONICAL_RANK_BOUND,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "gbcat", version, about = "Exact modular data of pointed theories built from even lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the modular data of an even lattice from its Gram matrix.
    Construct {
        /// Gram matrix file, one row per line.
        #[arg(long)]
        b: PathBuf,
        /// Write the modular data document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every relation exactly; exit status 1 if any fails.
    Verify {
        #[arg(long)]
        data: PathBuf,
    },
    /// Fusion outcomes of two labels with multiplicities and probabilities.
    Fusion {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Invariant of a colored framed link (lattice data only).
    Link {
        #[arg(long)]
        data: PathBuf,
        /// Linking matrix file, framings on the diagonal, or a link document.
        #[arg(long)]
        linking: PathBuf,
        /// Comma-separated label per component.
        #[arg(long, value_delimiter = ',')]
        colors: Option<Vec<usize>>,
    },
    /// Classify the modular data of every Gram matrix within the bounds.
    Enumerate {
        #[arg(long)]
        max_dim: usize,
        #[arg(long)]
        max_entry: i64,
        /// Largest |det B| kept in the corpus.
        #[arg(long, default_value_t = DEFAULT_CANONICAL_RANK_BOUND as u64)]
        max_rank: u64,
    },
    /// Human-readable summary of a modular data document.
    Show {
        #[arg(long)]
        data: PathBuf,
        /// Also print floating-point approximations.
        #[arg(long)]
        approx: bool,
    },
}

/// A failed command: exit status and message for stderr.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn doc(path: &Path, e: DocError) -> Self {
        match e {
            DocError::Parse { line, column, message } => {
                Failure::usage(format!("{}:{line}:{column}: {message}", path.display()))
            }
            other => Failure::usage(format!("{}: {other}", path.display())),
        }
    }
}

impl From<ModularDataError> for Failure {
    fn from(e: ModularDataError) -> Self {
        let code = match e {
            ModularDataError::NonIntegralFusion { .. } | ModularDataError::NotProbabilistic { .. } => {
                EXIT_VERIFICATION_FAILED
            }
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(String, i32), Failure>;

/// Runs the tool on `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            return if informational {
                let _ = out.write_all(rendered.as_bytes());
                EXIT_OK
            } else {
                let _ = err.write_all(rendered.as_bytes());
                EXIT_USAGE
            };
        }
    };
    match dispatch(cli.command) {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_data(path: &Path) -> Result<ModularData, Failure> {
    format::parse_modular_data(&read(path)?).map_err(|e| Failure::doc(path, e))
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Construct { b, out } => construct(&b, out.as_deref()),
        Command::Verify { data } => verify_cmd(&data),
        Command::Fusion { data, i, j } => fusion(&data, i, j),
        Command::Link { data, linking, colors } => link(&data, &linking, colors),
        Command::Enumerate {
            max_dim,
            max_entry,
            max_rank,
        } => enumerate(max_dim, max_entry, max_rank),
        Command::Show { data, approx } => show(&data, approx),
    }
}

fn construct(b_path: &Path, out: Option<&Path>) -> Outcome {
    let b = format::parse_gram(&read(b_path)?).map_err(|e| Failure::doc(b_path, e))?;
    let md = ModularData::from_lattice(&b)?;
    let text = format::serialize(&Value::Modular(md));
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            Ok((String::new(), EXIT_OK))
        }
        None => Ok((text, EXIT_OK)),
    }
}

fn verify_cmd(path: &Path) -> Outcome {
    let md = load_data(path)?;
    let report = verify(&md);
    let mut text = String::new();
    for c in &report.checks {
        let status = if c.passed { "pass" } else { "FAIL" };
        writeln!(text, "{status}  {:<22}{}", c.relation.id(), c.relation.description()).unwrap();
    }
    if report.all_passed() {
        writeln!(text, "result: pass ({} checks)", report.checks.len()).unwrap();
        Ok((text, EXIT_OK))
    } else {
        let failing: Vec<&str> = report.failures().map(|r| r.id()).collect();
        writeln!(text, "result: fail ({})", failing.join(", ")).unwrap();
        Ok((text, EXIT_VERIFICATION_FAILED))
    }
}

fn fusion(path: &Path, i: usize, j: usize) -> Outcome {
    let md = load_data(path)?;
    md.check_label(Label(i))?;
    md.check_label(Label(j))?;
    let ft = verlinde_fusion(&md)?;
    let probabilities = fusion_probabilities(&md, &ft, Label(i), Label(j))?;
    let mut text = String::from("outcome\tmultiplicity\tprobability\n");
    for ((k, n), (_, p)) in ft.outcomes(Label(i), Label(j)).zip(&probabilities) {
        writeln!(text, "{}\t{n}\t{p}", k.0).unwrap();
    }
    Ok((text, EXIT_OK))
}

fn link(data: &Path, linking_path: &Path, colors: Option<Vec<usize>>) -> Outcome {
    let md = load_data(data)?;
    let linking_text = read(linking_path)?;
    let from_doc = match format::parse(&linking_text) {
        Ok(Value::Link(l)) => Some(l),
        _ => None,
    };
    let link = match (from_doc, colors) {
        (Some(l), None) => l,
        (Some(l), Some(c)) => FramedLink::new(l.linking().to_vec(), c.into_iter().map(Label).collect())?,
        (None, colors) => {
            let rows = parse_integer_matrix(&linking_text).map_err(|e| Failure::doc(linking_path, e.into()))?;
            let colors = colors.ok_or_else(|| Failure::usage("--colors is required for a bare linking matrix"))?;
            FramedLink::new(rows, colors.into_iter().map(Label).collect())?
        }
    };
    let value = colored_link_invariant(&md, &link)?;
    Ok((format!("{value}\n"), EXIT_OK))
}

fn enumerate(max_dim: usize, max_entry: i64, max_rank: u64) -> Outcome {
    let spec = CorpusSpec::new(max_dim, max_entry, Some(max_rank)).map_err(enumerate_failure)?;
    let corpus = generate_gram_matrices(&spec);
    let classes = classify(&corpus).map_err(enumerate_failure)?;
    let text = format!(
        "{classes}total\t{}\tfrom {} matrices\n",
        classes.total_classes(),
        corpus.len()
    );
    Ok((text, EXIT_OK))
}

fn enumerate_failure(e: EnumerateError) -> Failure {
    match e {
        EnumerateError::ModularData(e) => e.into(),
        other => Failure::usage(other.to_string()),
    }
}

fn approx(c: &Cyclotomic) -> String {
    let clean = |x: f64| if x.abs() < 5e-7 { 0.0 } else { x };
    let (re, im) = c.approx_complex();
    format!("{:.6}{:+.6}i", clean(re), clean(im))
}

fn show(path: &Path, with_approx: bool) -> Outcome {
    let md = load_data(path)?;
    let mut text = String::new();
    let join = |xs: Vec<String>| xs.join(", ");
    writeln!(text, "rank: {}", md.rank()).unwrap();
    if let Some(names) = md.label_names() {
        writeln!(text, "labels: {}", names.join(", ")).unwrap();
    }
    writeln!(text, "twists: {}", join(md.twists().iter().map(ToString::to_string).collect())).unwrap();
    text.push_str("s_tilde:\n");
    for row in md.s_tilde() {
        writeln!(text, "  {}", join(row.iter().map(ToString::to_string).collect())).unwrap();
    }
    let dims = md.quantum_dimensions();
    writeln!(text, "quantum dimensions: {}", join(dims.iter().map(ToString::to_string).collect())).unwrap();
    let gauss = md.gauss_data();
    writeln!(text, "D^2: {}", gauss.d_squared).unwrap();
    writeln!(text, "p+: {}", gauss.p_plus).unwrap();
    writeln!(text, "p-: {}", gauss.p_minus).unwrap();
    match md.dual_permutation() {
        Ok(dual) => {
            writeln!(text, "duals: {}", join(dual.iter().map(|l| l.0.to_string()).collect())).unwrap();
        }
        Err(_) => text.push_str("duals: none (S~^2 is not D^2 times a permutation)\n"),
    }
    if let Some(p) = md.provenance() {
        writeln!(text, "lattice: {}", p.gram).unwrap();
        let factors: Vec<String> = p.group.invariant_factors().iter().map(ToString::to_string).collect();
        writeln!(text, "discriminant group invariant factors: {}", factors.join(" ")).unwrap();
    }
    if with_approx {
        text.push_str("approximate values:\n");
        writeln!(text, "  D^2 = {}", approx(&gauss.d_squared)).unwrap();
        writeln!(text, "  p+ = {}", approx(&gauss.p_plus)).unwrap();
        writeln!(text, "  p- = {}", approx(&gauss.p_minus)).unwrap();
        let twists: Vec<String> = md.twists().iter().map(|t| approx(&t.to_cyclotomic())).collect();
        writeln!(text, "  twists = {}", twists.join(", ")).unwrap();
        text.push_str("  s_tilde =\n");
        for row in md.s_tilde() {
            writeln!(text, "    {}", join(row.iter().map(approx).collect())).unwrap();
        }
    }
    Ok((text, EXIT_OK))
}
