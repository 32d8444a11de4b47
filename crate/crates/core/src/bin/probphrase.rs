//! Command-line front end. Exit codes: 0 success, 2 invalid input, 3 a
//! computation that could not be carried out.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use probphrase::experiment::DEFAULT_TASKS_PER_SUBJECT;
use probphrase::fitting::{per_phrase_regression, DEFAULT_BAND_COUNT};
use probphrase::io::svg::{render_classifier, render_fit};
use probphrase::io::{self as pio, report, Metadata, ParameterDocument};
use probphrase::{
    bayes_update, evaluate_accuracy, explain_update, fit_selection_function, generate_tasks,
    simulate_responses, table1_function, Classifier, Error, HypothesisModel, HypothesisName,
    NoiseModel, ProbabilityPct, UpdatePair,
};

#[derive(Parser)]
#[command(
    name = "probphrase",
    version,
    about = "Relative probability phrases for probability updates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a prior -> posterior update in words.
    Verbalize {
        #[arg(long)]
        prior: f64,
        #[arg(long)]
        posterior: f64,
        #[command(flatten)]
        source: ClassifierArgs,
        /// Proposition name used in the sentence.
        #[arg(long, default_value = "the event")]
        name: String,
        /// Append the numbers to the sentence.
        #[arg(long)]
        numbers: bool,
    },
    /// Fit partition lines to a response dataset.
    Fit {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BAND_COUNT)]
        bands: usize,
        /// Where to write the fitted parameter document (JSON).
        #[arg(long)]
        out: PathBuf,
        /// Write the text report here instead of standard output.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Scattergram of the data with the fitted lines.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Add per-phrase and per-boundary quadratic regressions to the report.
        #[arg(long)]
        diagnostics: bool,
        /// Timestamp to record in the parameter metadata.
        #[arg(long)]
        created: Option<String>,
    },
    /// Label task sheets with synthetic responses.
    Simulate {
        /// Number of subjects (ignored with --tasks).
        #[arg(long, required_unless_present = "tasks")]
        subjects: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_TASKS_PER_SUBJECT)]
        tasks_per_subject: usize,
        /// Use existing task sheets instead of generating them.
        #[arg(long)]
        tasks: Option<PathBuf>,
        #[command(flatten)]
        source: ClassifierArgs,
        #[arg(long, value_enum, default_value_t = NoiseArg::None)]
        noise: NoiseArg,
        /// Flip probability for --noise flip.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Score standard deviation for --noise gaussian.
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate randomized questionnaire task sheets.
    GenerateTasks {
        #[arg(long)]
        subjects: usize,
        #[arg(long, default_value_t = DEFAULT_TASKS_PER_SUBJECT)]
        tasks_per_subject: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score a classifier against a response dataset.
    Evaluate {
        #[arg(long)]
        data: PathBuf,
        #[command(flatten)]
        source: ClassifierArgs,
    },
    /// Apply a likelihood ratio to a prior and describe the update.
    Explain {
        #[arg(long)]
        prior: f64,
        /// Likelihood ratio applied to the prior odds.
        #[arg(long)]
        lr: f64,
        #[command(flatten)]
        source: ClassifierArgs,
        #[arg(long, default_value = "the event")]
        name: String,
        #[arg(long)]
        numbers: bool,
    },
    /// Draw the phrase regions of a selection function.
    Render {
        #[command(flatten)]
        source: ClassifierArgs,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long)]
        title: Option<String>,
    },
}

#[derive(Args)]
struct ClassifierArgs {
    /// Built-in selection function.
    #[arg(long, value_enum, conflicts_with = "params")]
    model: Option<ModelArg>,
    /// Parameter document (JSON) to load instead of a built-in model.
    #[arg(long)]
    params: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Table1,
    H1,
    H2,
    H3,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum NoiseArg {
    None,
    Flip,
    Gaussian,
}

struct Failure {
    code: u8,
    message: String,
}

fn code_for(e: &Error) -> u8 {
    if e.is_validation() {
        2
    } else {
        3
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: code_for(&e),
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

trait Context<T> {
    fn context(self, what: impl std::fmt::Display) -> Result<T, Failure>;
}

impl<T> Context<T> for probphrase::Result<T> {
    fn context(self, what: impl std::fmt::Display) -> Result<T, Failure> {
        self.map_err(|e| Failure {
            code: code_for(&e),
            message: format!("{what}: {e}"),
        })
    }
}

fn open(path: &Path, flag: &str) -> Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| invalid(format!("{flag} {}: {e}", path.display())))
}

fn create(path: &Path, flag: &str) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| invalid(format!("{flag} {}: {e}", path.display())))
}

fn write_text(path: &Path, flag: &str, text: &str) -> Result<(), Failure> {
    let mut w = create(path, flag)?;
    w.write_all(text.as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| invalid(format!("{flag} {}: {e}", path.display())))
}

fn percent(flag: &'static str, v: f64) -> Result<ProbabilityPct, Failure> {
    ProbabilityPct::checked(flag, v).map_err(Failure::from)
}

impl ClassifierArgs {
    fn load(&self) -> Result<Classifier, Failure> {
        if let Some(path) = &self.params {
            let text = std::fs::read_to_string(path)
                .map_err(|e| invalid(format!("--params {}: {e}", path.display())))?;
            let doc = ParameterDocument::from_json(&text)
                .context(format_args!("--params {}", path.display()))?;
            return Ok(doc.classifier);
        }
        Ok(match self.model.unwrap_or(ModelArg::Table1) {
            ModelArg::Table1 => table1_function().into(),
            ModelArg::H1 => HypothesisModel::default_for(HypothesisName::H1).into(),
            ModelArg::H2 => HypothesisModel::default_for(HypothesisName::H2).into(),
            ModelArg::H3 => HypothesisModel::default_for(HypothesisName::H3).into(),
        })
    }
}

fn say(
    name: &str,
    pair: UpdatePair,
    classifier: &Classifier,
    numbers: bool,
) -> Result<(), Failure> {
    let explanation = explain_update(name, pair, classifier, numbers)?;
    println!("{}", explanation.sentence);
    if let Some(range) = explanation.numeric_range {
        println!(
            "Posterior range for this phrase at a {}% prior: {range}",
            pair.prior
        );
    }
    Ok(())
}

fn noise_model(
    noise: NoiseArg,
    epsilon: Option<f64>,
    sigma: Option<f64>,
) -> Result<NoiseModel, Failure> {
    let model = match noise {
        NoiseArg::None => NoiseModel::None,
        NoiseArg::Flip => NoiseModel::AdjacentFlip {
            epsilon: epsilon.ok_or_else(|| invalid("--noise flip needs --epsilon"))?,
        },
        NoiseArg::Gaussian => NoiseModel::ScoreGaussian {
            sigma: sigma.ok_or_else(|| invalid("--noise gaussian needs --sigma"))?,
        },
    };
    model.validate().map_err(|_| match model {
        NoiseModel::AdjacentFlip { epsilon } => {
            invalid(format!("--epsilon must lie in [0, 1], got {epsilon}"))
        }
        NoiseModel::ScoreGaussian { sigma } => invalid(format!(
            "--sigma must be finite and non-negative, got {sigma}"
        )),
        NoiseModel::None => unreachable!(),
    })?;
    Ok(model)
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Verbalize {
            prior,
            posterior,
            source,
            name,
            numbers,
        } => {
            let pair = UpdatePair {
                prior: percent("--prior", prior)?,
                posterior: percent("--posterior", posterior)?,
            };
            say(&name, pair, &source.load()?, numbers)
        }
        Command::Explain {
            prior,
            lr,
            source,
            name,
            numbers,
        } => {
            let prior = percent("--prior", prior)?;
            if !(lr.is_finite() && lr > 0.0) {
                return Err(invalid(format!(
                    "--lr must be a positive finite number, got {lr}"
                )));
            }
            let classifier = source.load()?;
            let posterior = bayes_update(prior, lr).context("--lr")?;
            say(&name, UpdatePair { prior, posterior }, &classifier, numbers)
        }
        Command::Fit {
            data,
            bands,
            out,
            report: report_path,
            svg,
            diagnostics,
            created,
        } => {
            if bands < 2 {
                return Err(invalid(format!("--bands must be at least 2, got {bands}")));
            }
            let dataset = pio::read_dataset(open(&data, "--data")?)
                .context(format_args!("--data {}", data.display()))?;
            let fit = fit_selection_function(&dataset, bands)?;
            let metadata = Metadata {
                source: Some(format!(
                    "fit of {} ({} responses, {} bands)",
                    data.display(),
                    dataset.len(),
                    bands
                )),
                created,
            };
            let doc = ParameterDocument::new(fit.fitted.clone(), metadata);
            write_text(&out, "--out", &doc.to_json()?)?;
            let regressions = diagnostics.then(|| per_phrase_regression(&dataset));
            let text = report::fit_report(&fit, regressions.as_ref());
            match report_path {
                Some(path) => write_text(&path, "--report", &text)?,
                None => print!("{text}"),
            }
            if let Some(path) = svg {
                let points: Vec<_> = fit
                    .boundaries
                    .iter()
                    .flat_map(|b| b.points.iter().copied())
                    .collect();
                let figure = render_fit(
                    &dataset,
                    &fit.fitted.clone().into(),
                    &points,
                    "Phrase partition lines",
                );
                write_text(&path, "--svg", &figure)?;
            }
            Ok(())
        }
        Command::Simulate {
            subjects,
            tasks_per_subject,
            tasks,
            source,
            noise,
            epsilon,
            sigma,
            seed,
            out,
        } => {
            let noise = noise_model(noise, epsilon, sigma)?;
            let classifier = source.load()?;
            let sheets = match (&tasks, subjects) {
                (Some(path), _) => pio::read_task_sheets(open(path, "--tasks")?)
                    .context(format_args!("--tasks {}", path.display()))?,
                (None, Some(n)) => generate_tasks(n, tasks_per_subject, seed)
                    .context("--subjects/--tasks-per-subject")?,
                (None, None) => return Err(invalid("either --subjects or --tasks is required")),
            };
            let dataset = simulate_responses(&sheets, &classifier, noise, seed)?;
            let mut w = create(&out, "--out")?;
            pio::write_dataset(&mut w, &dataset)?;
            w.flush()
                .map_err(|e| invalid(format!("--out {}: {e}", out.display())))
        }
        Command::GenerateTasks {
            subjects,
            tasks_per_subject,
            seed,
            out,
        } => {
            let sheets = generate_tasks(subjects, tasks_per_subject, seed)
                .context("--subjects/--tasks-per-subject")?;
            let mut w = create(&out, "--out")?;
            pio::write_task_sheets(&mut w, &sheets)?;
            w.flush()
                .map_err(|e| invalid(format!("--out {}: {e}", out.display())))
        }
        Command::Evaluate { data, source } => {
            let classifier = source.load()?;
            let dataset = pio::read_dataset(open(&data, "--data")?)
                .context(format_args!("--data {}", data.display()))?;
            let evaluation = evaluate_accuracy(&classifier, &dataset)?;
            print!(
                "{}",
                report::evaluation_report(&evaluation, classifier.as_lines())
            );
            Ok(())
        }
        Command::Render { source, svg, title } => {
            let classifier = source.load()?;
            let title = title.unwrap_or_else(|| match &classifier {
                Classifier::Lines(_) => "Phrase partition lines".to_string(),
                Classifier::Thresholds(th) => {
                    let d = HypothesisName::from_family(th.family()).description();
                    format!("{}{}", d[..1].to_uppercase(), &d[1..])
                }
            });
            write_text(&svg, "--svg", &render_classifier(&classifier, &title))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("probphrase: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
