use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use narrative_iaa::corpus::{inspect, read_corpus_file, LoadIssue};
use narrative_iaa::{
    alpha_for_representation, factorial_table, full_agreement_by_label, generate_synthetic_corpus,
    krippendorff_alpha, least_agreed_triples, load_corpus, select_task2_documents, CategorySystem,
    CausalTreeModel, Error, LoadOptions, LoadedCorpus, Metric, NoiseRates, RepresentationKind,
    SynthConfig, Tier,
};

#[derive(Parser)]
#[command(
    name = "narrative-iaa",
    version,
    about = "Inter-annotator agreement for causal narrative graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct LoadArgs {
    corpus: PathBuf,
    /// Skip invalid cells (treated as missing) with a warning instead of failing.
    #[arg(long)]
    lenient_load: bool,
    /// Accept cyclic graphs (reported as warnings).
    #[arg(long)]
    allow_cycles: bool,
}

impl LoadArgs {
    fn options(&self) -> LoadOptions {
        LoadOptions {
            lenient: self.lenient_load,
            allow_cycles: self.allow_cycles,
        }
    }

    fn load(&self) -> Result<LoadedCorpus, Error> {
        let corpus = load_corpus(&self.corpus, self.options())?;
        report_warnings(&corpus.warnings);
        Ok(corpus)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Load and validate a corpus; exits 0 iff no errors were found.
    Validate {
        #[command(flatten)]
        load: LoadArgs,
    },
    /// Krippendorff's alpha for one task (and, for task 2, one representation and tier).
    Alpha {
        #[command(flatten)]
        load: LoadArgs,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        task: u8,
        #[arg(long)]
        representation: Option<RepresentationKind>,
        #[arg(long)]
        tier: Option<Tier>,
    },
    /// All representation × tier cells.
    Table {
        #[command(flatten)]
        load: LoadArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Resolve document labels and list the documents selected for graph annotation.
    Select {
        #[command(flatten)]
        load: LoadArgs,
    },
    /// Full agreement by label (task 1) or least-agreed triples (task 2).
    Disagreement {
        #[command(flatten)]
        load: LoadArgs,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        task: u8,
    },
    /// Write a synthetic corpus with controlled annotator noise.
    Synth {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        units: usize,
        #[arg(long, default_value_t = 4)]
        annotators: usize,
        /// Rate applied to every noise channel not set individually.
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long)]
        node_drop: Option<f64>,
        #[arg(long)]
        relation_flip: Option<f64>,
        #[arg(long)]
        spurious: Option<f64>,
        /// Output file (standard output if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// A failure with its exit status and machine-readable code.
struct Failure {
    status: u8,
    code: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Io(_) => 4,
            Error::NoPairableUnits | Error::DegenerateData | Error::InsufficientGroups(_) => 3,
            Error::UnknownMetric(_)
            | Error::UnknownRepresentation(_)
            | Error::InvalidArgument(_) => 1,
            _ => 2,
        };
        Failure {
            status,
            code: e.code(),
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        status: 1,
        code: "usage",
        message: message.into(),
    }
}

fn report_warnings(warnings: &[LoadIssue]) {
    let mut err = std::io::stderr().lock();
    for w in warnings {
        let _ = writeln!(err, "warning: {w}");
    }
}

fn print_json(value: &serde_json::Value) {
    let mut s = serde_json::to_string_pretty(value).expect("json output");
    s.push('\n');
    print!("{s}");
}

fn to_json(value: impl serde::Serialize) -> serde_json::Value {
    serde_json::to_value(value).expect("json output")
}

fn validate(load: &LoadArgs) -> Result<(), Failure> {
    let file = read_corpus_file(&load.corpus)?;
    let inspection = inspect(&file, load.corpus.parent(), load.options())?;
    print_json(&serde_json::json!({
        "clean": inspection.is_clean(),
        "units": inspection.corpus.task2.n_units(),
        "annotators": inspection.corpus.task2.n_annotators(),
        "errors": inspection.errors,
        "warnings": inspection.corpus.warnings,
    }));
    if inspection.is_clean() {
        Ok(())
    } else {
        Err(Error::Validation(format!("{} invalid cell(s)", inspection.errors.len())).into())
    }
}

fn alpha(
    load: &LoadArgs,
    task: u8,
    representation: Option<RepresentationKind>,
    tier: Option<Tier>,
) -> Result<(), Failure> {
    let result = match (task, representation, tier) {
        (1, None, None) => krippendorff_alpha(&load.load()?.task1, Metric::Nominal)?,
        (1, _, _) => return Err(usage("--representation and --tier apply to task 2 only")),
        (_, Some(kind), Some(tier)) => {
            let corpus = load.load()?;
            alpha_for_representation(&corpus.task2, kind, tier, &corpus.target)?
        }
        _ => return Err(usage("task 2 requires --representation and --tier")),
    };
    print_json(&to_json(result));
    Ok(())
}

fn table(load: &LoadArgs, format: Format) -> Result<(), Failure> {
    let corpus = load.load()?;
    let report = factorial_table(&corpus.task2, &corpus.target)?;
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Csv => print!("{}", report.to_csv()),
        Format::Json => print_json(&report.to_json()),
    }
    Ok(())
}

fn disagreement(load: &LoadArgs, task: u8) -> Result<(), Failure> {
    let corpus = load.load()?;
    if task == 1 {
        print_json(&to_json(full_agreement_by_label(&corpus.task1)?));
    } else {
        print_json(&to_json(least_agreed_triples(&corpus.task2)?));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn synth(
    seed: u64,
    units: usize,
    annotators: usize,
    noise: f64,
    node_drop: Option<f64>,
    relation_flip: Option<f64>,
    spurious: Option<f64>,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let config = SynthConfig {
        seed,
        n_units: units,
        n_annotators: annotators,
        noise: NoiseRates {
            node_drop_rate: node_drop.unwrap_or(noise),
            relation_flip_rate: relation_flip.unwrap_or(noise),
            spurious_triple_rate: spurious.unwrap_or(noise),
        },
    };
    let categories = CategorySystem::inflation_default();
    let model = CausalTreeModel::new(&categories);
    let graphs = generate_synthetic_corpus(&config, &model)?;
    let text = LoadedCorpus::from_graphs(graphs, categories)?
        .to_file()?
        .to_json_pretty();
    match output {
        Some(path) => std::fs::write(path, text).map_err(Error::from)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { load } => validate(&load),
        Command::Alpha {
            load,
            task,
            representation,
            tier,
        } => alpha(&load, task, representation, tier),
        Command::Table { load, format } => table(&load, format),
        Command::Select { load } => {
            let corpus = load.load()?;
            print_json(&to_json(select_task2_documents(&corpus.task1)?));
            Ok(())
        }
        Command::Disagreement { load, task } => disagreement(&load, task),
        Command::Synth {
            seed,
            units,
            annotators,
            noise,
            node_drop,
            relation_flip,
            spurious,
            output,
        } => synth(
            seed,
            units,
            annotators,
            noise,
            node_drop,
            relation_flip,
            spurious,
            output.as_deref(),
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(status);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let body = serde_json::json!({"error": f.code, "message": f.message});
            eprintln!("{body}");
            ExitCode::from(f.status)
        }
    }
}
