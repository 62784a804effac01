use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cad_augment::augmentation::{augment_full, balance, split, BalanceMode};
use cad_augment::corpus::{write_corpus, CorpusConfig};
use cad_augment::dataset::{Dataset, Role};
use cad_augment::experiment::{
    labelled_dataset, run_pipeline, write_report, ExperimentConfig, LabellerKind, ResultMatrix,
};
use cad_augment::features::{fit_distinct_filter, RANK_TOLERANCE};
use cad_augment::labelling::{label_all, read_labels_csv, write_labels_csv, LabelOutcome};
use cad_augment::ml::{train, CvPlan, Grids, ModelKind, TrainedModel};
use cad_augment::seed::{derive_seed, stages};
use cad_augment::smtlib::{dedup_syntactic, ingest_dir, read_jsonl, write_jsonl};
use cad_augment::{Error, Result};

/// Variable-ordering datasets for cylindrical algebraic decomposition:
/// ingestion, labelling, symmetry-based balancing and augmentation, and
/// model evaluation.
#[derive(Parser)]
#[command(name = "cadaug", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a directory of SMT-LIB scripts into instances.jsonl.
    Ingest {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "instances.jsonl")]
        out: PathBuf,
    },
    /// Label instances with their best variable ordering.
    Label {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        labeller: LabellerArgs,
        #[arg(long, default_value = "labels.csv")]
        out: PathBuf,
    },
    /// Compute the 384 raw features of every labelled instance.
    Featurize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long, default_value = "dataset.csv")]
        out: PathBuf,
    },
    /// Split by instance, fit the feature filter on the training part and
    /// write filtered train.csv and test.csv.
    Split {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0.2)]
        test_fraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Rename each row by one permutation to even out the classes.
    Balance {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "random")]
        balance_mode: BalanceMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Replace each row by its six renamed images.
    Augment {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cross-validate and fit models; writes <kind>.json into --out.
    Train {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        models: ModelArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Accuracy of a saved model on a dataset.
    Evaluate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        input: PathBuf,
    },
    /// The full experiment, from scripts to report.
    Run {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        labeller: LabellerArgs,
        #[arg(long, default_value_t = 0.2)]
        test_fraction: f64,
        #[arg(long, default_value = "random")]
        balance_mode: BalanceMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        models: ModelArgs,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Regenerate report.md, matrix.csv and datasets.json from matrix.json.
    Report {
        /// matrix.json, or the directory holding it.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a synthetic corpus of SMT-LIB scripts.
    Generate {
        #[arg(long, default_value_t = 300)]
        instances: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct LabellerArgs {
    #[arg(long, default_value = "sotd")]
    labeller: LabellerKind,
    /// CSV with columns instance_id,ordering,seconds.
    #[arg(long)]
    timings: Option<PathBuf>,
    #[arg(long, default_value_t = 60.0)]
    timeout: f64,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, default_value = "knn,dt,rf", value_delimiter = ',')]
    models: Vec<ModelKind>,
    #[arg(long, default_value_t = 5)]
    cv_folds: usize,
    /// JSON hyperparameter grids; kinds left out keep the defaults.
    #[arg(long)]
    grid: Option<PathBuf>,
}

impl ModelArgs {
    fn grids(&self) -> Result<Grids> {
        match &self.grid {
            Some(p) => Grids::from_json_file(p),
            None => Ok(Grids::default()),
        }
    }
}

fn config(input: PathBuf, l: &LabellerArgs) -> ExperimentConfig {
    ExperimentConfig {
        input,
        labeller: l.labeller,
        timings: l.timings.clone(),
        timeout: l.timeout,
        ..ExperimentConfig::default()
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::from(e).in_file(dir))?;
    }
    Ok(BufWriter::new(File::create(path).map_err(|e| Error::from(e).in_file(path))?))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path).map_err(|e| Error::from(e).in_file(path))?))
}

fn save(ds: &Dataset, path: &Path, seed: Option<u64>, mode: Option<String>) -> Result<()> {
    create(path)?;
    ds.save(path, &ds.sidecar(seed, mode))
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Ingest { input, out } => {
            let ingested = ingest_dir(&input)?;
            let parsed = ingested.instances.len();
            let instances = dedup_syntactic(ingested.instances);
            write_jsonl(create(&out)?, &instances)?;
            println!(
                "{} instances written to {}, {} duplicates dropped, {} files rejected",
                instances.len(),
                out.display(),
                parsed - instances.len(),
                ingested.rejected.len()
            );
        }
        Command::Label { input, labeller, out } => {
            let instances = read_jsonl(open(&input)?).map_err(|e| e.in_file(&input))?;
            let cfg = config(input, &labeller);
            let outcomes = label_all(cfg.build_labeller()?.as_ref(), &instances)?;
            let pairs: Vec<(String, LabelOutcome)> =
                instances.iter().map(|i| i.id.clone()).zip(outcomes).collect();
            write_labels_csv(create(&out)?, &pairs)?;
            let discarded = pairs.iter().filter(|(_, o)| o.label().is_none()).count();
            println!("{} labels written to {}, {discarded} discarded", pairs.len(), out.display());
        }
        Command::Featurize { input, labels, out } => {
            let instances = read_jsonl(open(&input)?).map_err(|e| e.in_file(&input))?;
            let labels = read_labels_csv(open(&labels)?).map_err(|e| e.in_file(&labels))?;
            let outcomes = instances
                .iter()
                .map(|i| {
                    labels
                        .get(&i.id)
                        .copied()
                        .ok_or_else(|| Error::Data(format!("no label for `{}`", i.id)))
                })
                .collect::<Result<Vec<_>>>()?;
            let ds = labelled_dataset(&instances, &outcomes)?;
            save(&ds, &out, None, None)?;
            println!("{} rows written to {}", ds.len(), out.display());
        }
        Command::Split {
            input,
            test_fraction,
            seed,
            out,
        } => {
            let (ds, _) = Dataset::load(&input)?;
            let split_seed = derive_seed(seed, stages::SPLIT);
            let (train, test) = split(&ds, test_fraction, split_seed)?;
            let rows: Vec<Vec<f64>> = train.rows.iter().map(|r| r.features.clone()).collect();
            let schema = fit_distinct_filter(&ds.schema, &rows, RANK_TOLERANCE)?;
            let (train, test) = (train.project(&schema)?, test.project(&schema)?);
            save(&train, &out.join("train.csv"), Some(split_seed), None)?;
            save(&test, &out.join("test.csv"), Some(split_seed), None)?;
            println!(
                "{} train and {} test rows, {} of {} features kept",
                train.len(),
                test.len(),
                schema.len(),
                ds.schema.len()
            );
        }
        Command::Balance {
            input,
            balance_mode,
            seed,
            out,
        } => {
            let (ds, _) = Dataset::load(&input)?;
            let stage = match ds.role {
                Role::Train => stages::BALANCE_TRAIN,
                Role::Test => stages::BALANCE_TEST,
            };
            let seed = derive_seed(seed, stage);
            let bal = balance(&ds, balance_mode, seed)?;
            save(&bal, &out, Some(seed), Some(balance_mode.to_string()))?;
            println!("class counts {:?}", bal.class_counts());
        }
        Command::Augment { input, out } => {
            let (ds, side) = Dataset::load(&input)?;
            let aug = augment_full(&ds)?;
            save(&aug, &out, side.seed, None)?;
            println!("{} rows, class counts {:?}", aug.len(), aug.class_counts());
        }
        Command::Train {
            input,
            models,
            seed,
            out,
        } => {
            let (ds, _) = Dataset::load(&input)?;
            let plan = CvPlan::new(models.cv_folds, models.grids()?, seed)?;
            std::fs::create_dir_all(&out).map_err(|e| Error::from(e).in_file(&out))?;
            for kind in &models.models {
                let model = train(*kind, &ds, &plan)?;
                let path = out.join(format!("{kind}.json"));
                model.save(&path)?;
                let cv = model.cv.as_ref().map(|c| c.points[c.selected].mean_accuracy).unwrap_or(f64::NAN);
                println!("{kind}: {} (CV accuracy {cv:.3}) -> {}", model.hyperparameters, path.display());
            }
        }
        Command::Evaluate { model, input } => {
            let m = TrainedModel::load(&model)?;
            let (ds, _) = Dataset::load(&input)?;
            println!("{:.6}", m.accuracy(&ds)?);
        }
        Command::Run {
            input,
            labeller,
            test_fraction,
            balance_mode,
            seed,
            models,
            out,
        } => {
            let cfg = ExperimentConfig {
                test_fraction,
                balance_mode,
                seed,
                models: models.models.clone(),
                cv_folds: models.cv_folds,
                grids: models.grids()?,
                out,
                ..config(input, &labeller)
            };
            run_pipeline(&cfg)?;
            println!("report written to {}", cfg.out.join("report.md").display());
        }
        Command::Report { input, out } => {
            let path = if input.is_dir() { input.join("matrix.json") } else { input };
            let text = std::fs::read_to_string(&path).map_err(|e| Error::from(e).in_file(&path))?;
            let matrix = ResultMatrix::from_json(&text).map_err(|e| e.in_file(&path))?;
            let dir = out.unwrap_or_else(|| path.parent().map(Path::to_path_buf).unwrap_or_default());
            write_report(&matrix, &dir)?;
            println!("report written to {}", dir.join("report.md").display());
        }
        Command::Generate { instances, seed, out } => {
            let files = write_corpus(
                &out,
                &CorpusConfig {
                    instances,
                    seed,
                    ..CorpusConfig::default()
                },
            )?;
            println!("{} scripts written to {}", files.len(), out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.class().exit_code() as u8)
        }
    }
}
