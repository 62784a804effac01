//! The end-to-end experiment: three training and three testing datasets
//! derived from one labelled corpus, every model trained on each training
//! set and scored on each testing set.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::augmentation::{augment_full, balance, split, BalanceMode};
use crate::dataset::{Dataset, Provenance, Role, Row};
use crate::error::{Error, Result};
use crate::features::{featurize, fit_distinct_filter, FeatureSchema, RANK_TOLERANCE};
use crate::labelling::{
    label_all, read_timings_csv, write_labels_csv, LabelOutcome, Labeller, ProjectionBudget, SotdLabeller,
    TimingsLabeller,
};
use crate::ml::{train, CvPlan, Grids, Hyperparameters, ModelKind, TrainedModel};
use crate::seed::{derive_seed, stages};
use crate::smtlib::{dedup_syntactic, ingest_dir, write_jsonl, ProblemInstance};
use crate::symmetry::OrderingLabel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabellerKind {
    Timings,
    #[default]
    Sotd,
}

impl FromStr for LabellerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "timings" => Ok(LabellerKind::Timings),
            "sotd" => Ok(LabellerKind::Sotd),
            _ => Err(Error::Config(format!("unknown labeller `{s}` (expected timings or sotd)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Directory of `.smt2` scripts.
    pub input: PathBuf,
    pub labeller: LabellerKind,
    pub timings: Option<PathBuf>,
    pub timeout: f64,
    pub budget: ProjectionBudget,
    pub test_fraction: f64,
    pub balance_mode: BalanceMode,
    pub seed: u64,
    pub models: Vec<ModelKind>,
    pub cv_folds: usize,
    pub grids: Grids,
    pub out: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            input: PathBuf::from("corpus"),
            labeller: LabellerKind::Sotd,
            timings: None,
            timeout: 60.0,
            budget: ProjectionBudget::default(),
            test_fraction: 0.2,
            balance_mode: BalanceMode::Random,
            seed: 0,
            models: ModelKind::ALL.to_vec(),
            cv_folds: 5,
            grids: Grids::default(),
            out: PathBuf::from("out"),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.input.is_dir() {
            return Err(Error::Config(format!("input `{}` is not a directory", self.input.display())));
        }
        if !(self.test_fraction > 0.0 && self.test_fraction < 1.0) {
            return Err(Error::Config(format!("test fraction {} outside (0, 1)", self.test_fraction)));
        }
        if self.labeller == LabellerKind::Timings {
            match &self.timings {
                Some(p) if p.is_file() => {}
                Some(p) => return Err(Error::Config(format!("timings file `{}` not found", p.display()))),
                None => return Err(Error::Config("the timings labeller needs --timings".into())),
            }
        }
        if !(self.timeout > 0.0) {
            return Err(Error::Config(format!("timeout {} must be positive", self.timeout)));
        }
        if self.cv_folds < 2 {
            return Err(Error::Config(format!("need at least 2 folds, got {}", self.cv_folds)));
        }
        if self.models.is_empty() {
            return Err(Error::Config("no model kinds given".into()));
        }
        Ok(())
    }

    pub fn build_labeller(&self) -> Result<Box<dyn Labeller>> {
        Ok(match self.labeller {
            LabellerKind::Sotd => Box::new(SotdLabeller { budget: self.budget }),
            LabellerKind::Timings => {
                let path = self
                    .timings
                    .as_ref()
                    .ok_or_else(|| Error::Config("the timings labeller needs --timings".into()))?;
                let file = File::open(path).map_err(|e| Error::from(e).in_file(path))?;
                let records = read_timings_csv(BufReader::new(file)).map_err(|e| e.in_file(path))?;
                Box::new(TimingsLabeller::new(records.into_values(), self.timeout))
            }
        })
    }
}

/// Featurizes the labelled instances into an unbalanced dataset over the raw
/// schema; discarded instances are dropped.
pub fn labelled_dataset(instances: &[ProblemInstance], outcomes: &[LabelOutcome]) -> Result<Dataset> {
    let schema = FeatureSchema::raw();
    let rows: Vec<Row> = instances
        .par_iter()
        .zip(outcomes)
        .filter_map(|(inst, o)| {
            o.label().map(|label| Row {
                id: inst.id.clone(),
                features: featurize(inst, &schema).values,
                label,
            })
        })
        .collect();
    if rows.is_empty() {
        return Err(Error::Data("empty labelled dataset".into()));
    }
    Dataset::new(rows, Provenance::Unbalanced, Role::Train, schema)
}

/// The six datasets of the experiment, all over the filtered schema.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSet {
    pub raw_features: usize,
    pub schema: FeatureSchema,
    pub datasets: BTreeMap<(Provenance, Role), Dataset>,
}

impl DatasetSet {
    pub fn get(&self, p: Provenance, r: Role) -> &Dataset {
        &self.datasets[&(p, r)]
    }
}

/// Splits by instance, fits the distinct-feature filter on the unbalanced
/// training data and derives the balanced and augmented variants.
pub fn derive_datasets(labelled: &Dataset, cfg: &ExperimentConfig) -> Result<DatasetSet> {
    let (train_raw, test_raw) =
        split(labelled, cfg.test_fraction, derive_seed(cfg.seed, stages::SPLIT)).map_err(|e| e.in_stage("split"))?;
    let train_rows: Vec<Vec<f64>> = train_raw.rows.iter().map(|r| r.features.clone()).collect();
    let schema =
        fit_distinct_filter(&labelled.schema, &train_rows, RANK_TOLERANCE).map_err(|e| e.in_stage("filter"))?;
    let train = train_raw.project(&schema)?;
    let test = test_raw.project(&schema)?;
    let stage = |e: Error| e.in_stage("balance");
    let bal_train = balance(&train, cfg.balance_mode, derive_seed(cfg.seed, stages::BALANCE_TRAIN)).map_err(stage)?;
    let bal_test = balance(&test, cfg.balance_mode, derive_seed(cfg.seed, stages::BALANCE_TEST)).map_err(stage)?;
    let aug_train = augment_full(&train).map_err(|e| e.in_stage("augment"))?;
    let aug_test = augment_full(&test).map_err(|e| e.in_stage("augment"))?;
    let mut datasets = BTreeMap::new();
    for ds in [train, test, bal_train, bal_test, aug_train, aug_test] {
        datasets.insert((ds.provenance, ds.role), ds);
    }
    Ok(DatasetSet {
        raw_features: labelled.schema.len(),
        schema,
        datasets,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub model: ModelKind,
    pub train: Provenance,
    pub test: Provenance,
    pub accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub provenance: Provenance,
    pub role: Role,
    pub rows: usize,
    pub class_counts: [usize; 6],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub model: ModelKind,
    pub train: Provenance,
    pub hyperparameters: Hyperparameters,
    pub cv_accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct CorpusSummary {
    /// Distinct instances after dropping syntactic duplicates.
    pub ingested: usize,
    pub rejected: usize,
    pub duplicates: usize,
    pub discarded: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultMatrix {
    pub seed: u64,
    pub corpus: CorpusSummary,
    pub raw_features: usize,
    pub filtered_features: usize,
    pub datasets: Vec<DatasetSummary>,
    pub cells: Vec<Cell>,
    pub selections: Vec<Selection>,
}

impl ResultMatrix {
    pub fn accuracy(&self, model: ModelKind, train: Provenance, test: Provenance) -> Option<f64> {
        self.cells
            .iter()
            .find(|c| c.model == model && c.train == train && c.test == test)
            .map(|c| c.accuracy)
    }

    pub fn models(&self) -> Vec<ModelKind> {
        let mut m: Vec<ModelKind> = self.cells.iter().map(|c| c.model).collect();
        m.sort();
        m.dedup();
        m
    }

    pub fn dataset(&self, p: Provenance, r: Role) -> Option<&DatasetSummary> {
        self.datasets.iter().find(|d| d.provenance == p && d.role == r)
    }

    /// Every model has all nine cells and every accuracy lies in [0, 1].
    pub fn check_complete(&self) -> Result<()> {
        for m in self.models() {
            for tr in Provenance::ALL {
                for te in Provenance::ALL {
                    match self.accuracy(m, tr, te) {
                        Some(a) if (0.0..=1.0).contains(&a) => {}
                        Some(a) => return Err(Error::Data(format!("{m} {tr}/{te}: accuracy {a} outside [0, 1]"))),
                        None => return Err(Error::Data(format!("{m} {tr}/{te}: missing cell"))),
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: ResultMatrix = serde_json::from_str(text)?;
        m.check_complete()?;
        Ok(m)
    }
}

pub fn summarize(ds: &Dataset) -> DatasetSummary {
    DatasetSummary {
        provenance: ds.provenance,
        role: ds.role,
        rows: ds.len(),
        class_counts: ds.class_counts(),
    }
}

/// Trains each model kind on each training set and scores it on every
/// testing set. Fitted models are returned alongside the cells.
pub fn train_and_evaluate(
    sets: &DatasetSet,
    models: &[ModelKind],
    plan: &CvPlan,
) -> Result<(Vec<Cell>, Vec<Selection>, Vec<(Provenance, TrainedModel)>)> {
    let mut cells = Vec::new();
    let mut selections = Vec::new();
    let mut fitted = Vec::new();
    for &kind in models {
        for tr in Provenance::ALL {
            let start = Instant::now();
            let model = train(kind, sets.get(tr, Role::Train), plan).map_err(|e| e.in_stage("train"))?;
            log::info!("trained {kind} on {tr} data in {:.1?}: {}", start.elapsed(), model.hyperparameters);
            let cv_accuracy = model
                .cv
                .as_ref()
                .map(|cv| cv.points[cv.selected].mean_accuracy)
                .unwrap_or(f64::NAN);
            selections.push(Selection {
                model: kind,
                train: tr,
                hyperparameters: model.hyperparameters,
                cv_accuracy,
            });
            for te in Provenance::ALL {
                let accuracy = model.accuracy(sets.get(te, Role::Test)).map_err(|e| e.in_stage("evaluate"))?;
                cells.push(Cell {
                    model: kind,
                    train: tr,
                    test: te,
                    accuracy,
                });
            }
            fitted.push((tr, model));
        }
    }
    Ok((cells, selections, fitted))
}

fn timed<T>(stage: &'static str, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let start = Instant::now();
    let out = f().map_err(|e| match e {
        e @ Error::Stage { .. } => e,
        e => e.in_stage(stage),
    })?;
    log::info!("{stage} finished in {:.1?}", start.elapsed());
    Ok(out)
}

fn create_dir(p: &Path) -> Result<()> {
    std::fs::create_dir_all(p).map_err(|e| Error::from(e).in_file(p))
}

/// File name of a derived dataset inside `<out>/datasets`.
pub fn dataset_file_name(p: Provenance, r: Role) -> String {
    format!("{p}-{r}.csv")
}

/// Runs every stage and writes all artifacts under `cfg.out`:
/// `instances.jsonl`, `labels.csv`, `datasets/`, `models/`, `matrix.json`
/// and the report files.
pub fn run_pipeline(cfg: &ExperimentConfig) -> Result<ResultMatrix> {
    cfg.validate()?;
    create_dir(&cfg.out)?;
    let labeller = cfg.build_labeller()?;

    let ingested = timed("ingest", || ingest_dir(&cfg.input))?;
    let parsed = ingested.instances.len();
    let instances = dedup_syntactic(ingested.instances);
    if instances.is_empty() {
        return Err(Error::Data("no usable instances in the input corpus".into()).in_stage("ingest"));
    }
    timed("ingest", || {
        let path = cfg.out.join("instances.jsonl");
        let f = File::create(&path).map_err(|e| Error::from(e).in_file(&path))?;
        write_jsonl(BufWriter::new(f), &instances)
    })?;

    let outcomes = timed("label", || label_all(labeller.as_ref(), &instances))?;
    timed("label", || {
        let pairs: Vec<(String, LabelOutcome)> =
            instances.iter().map(|i| i.id.clone()).zip(outcomes.iter().copied()).collect();
        let path = cfg.out.join("labels.csv");
        let f = File::create(&path).map_err(|e| Error::from(e).in_file(&path))?;
        write_labels_csv(BufWriter::new(f), &pairs)
    })?;
    let discarded = outcomes.iter().filter(|o| o.label().is_none()).count();

    let labelled = timed("featurize", || labelled_dataset(&instances, &outcomes))?;
    let sets = timed("split", || derive_datasets(&labelled, cfg))?;
    log::info!(
        "{} labelled instances, {} of {} features kept",
        labelled.len(),
        sets.schema.len(),
        sets.raw_features
    );

    let data_dir = cfg.out.join("datasets");
    create_dir(&data_dir)?;
    for ((p, r), ds) in &sets.datasets {
        let (seed, mode) = match p {
            Provenance::Balanced => {
                let stage = if *r == Role::Train { stages::BALANCE_TRAIN } else { stages::BALANCE_TEST };
                (Some(derive_seed(cfg.seed, stage)), Some(cfg.balance_mode.to_string()))
            }
            _ => (Some(derive_seed(cfg.seed, stages::SPLIT)), None),
        };
        ds.save(&data_dir.join(dataset_file_name(*p, *r)), &ds.sidecar(seed, mode))?;
    }

    let plan = CvPlan::new(cfg.cv_folds, cfg.grids.clone(), cfg.seed)?;
    let (cells, selections, fitted) = timed("train", || train_and_evaluate(&sets, &cfg.models, &plan))?;
    let model_dir = cfg.out.join("models");
    create_dir(&model_dir)?;
    for (tr, model) in &fitted {
        model.save(&model_dir.join(format!("{}-{tr}.json", model.kind)))?;
    }

    let matrix = ResultMatrix {
        seed: cfg.seed,
        corpus: CorpusSummary {
            ingested: instances.len(),
            rejected: ingested.rejected.len(),
            duplicates: parsed - instances.len(),
            discarded,
        },
        raw_features: sets.raw_features,
        filtered_features: sets.schema.len(),
        datasets: sets.datasets.values().map(summarize).collect(),
        cells,
        selections,
    };
    timed("report", || {
        std::fs::write(cfg.out.join("matrix.json"), matrix.to_json()?)?;
        write_report(&matrix, &cfg.out)
    })?;
    Ok(matrix)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelImprovement {
    pub model: ModelKind,
    pub balanced_vs_unbalanced: f64,
    pub augmented_vs_unbalanced: f64,
}

/// Relative accuracy changes on the balanced test set, averaged over models.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Improvement {
    pub per_model: Vec<ModelImprovement>,
    pub balanced_vs_unbalanced: f64,
    pub augmented_vs_unbalanced: f64,
}

fn relative(new: f64, old: f64) -> f64 {
    if old == 0.0 {
        if new == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (new - old) / old
    }
}

pub fn improvement_summary(matrix: &ResultMatrix) -> Improvement {
    let test = Provenance::Balanced;
    let per_model: Vec<ModelImprovement> = matrix
        .models()
        .into_iter()
        .filter_map(|m| {
            let base = matrix.accuracy(m, Provenance::Unbalanced, test)?;
            let bal = matrix.accuracy(m, Provenance::Balanced, test)?;
            let aug = matrix.accuracy(m, Provenance::Augmented, test)?;
            Some(ModelImprovement {
                model: m,
                balanced_vs_unbalanced: relative(bal, base),
                augmented_vs_unbalanced: relative(aug, base),
            })
        })
        .collect();
    let mean = |f: fn(&ModelImprovement) -> f64| {
        if per_model.is_empty() {
            0.0
        } else {
            per_model.iter().map(f).sum::<f64>() / per_model.len() as f64
        }
    };
    Improvement {
        balanced_vs_unbalanced: mean(|m| m.balanced_vs_unbalanced),
        augmented_vs_unbalanced: mean(|m| m.augmented_vs_unbalanced),
        per_model,
    }
}

/// One `model,train,test,accuracy` line per cell, accuracies to six places.
pub fn matrix_csv(matrix: &ResultMatrix) -> String {
    let mut s = String::from("model,train,test,accuracy\n");
    for m in matrix.models() {
        for tr in Provenance::ALL {
            for te in Provenance::ALL {
                if let Some(a) = matrix.accuracy(m, tr, te) {
                    let _ = writeln!(s, "{m},{tr},{te},{a:.6}");
                }
            }
        }
    }
    s
}

fn percent(x: f64) -> String {
    format!("{:+.1}%", 100.0 * x)
}

pub fn render_markdown(matrix: &ResultMatrix) -> String {
    let mut s = String::from("# Variable ordering experiment\n\n");
    let _ = writeln!(
        s,
        "Seed {}. {} distinct instances ingested ({} duplicates dropped), {} files rejected, \
         {} instances discarded by the labeller. {} of {} features kept after filtering.\n",
        matrix.seed,
        matrix.corpus.ingested,
        matrix.corpus.duplicates,
        matrix.corpus.rejected,
        matrix.corpus.discarded,
        matrix.filtered_features,
        matrix.raw_features
    );
    s.push_str("Orderings: ");
    let names: Vec<String> = OrderingLabel::ALL
        .iter()
        .map(|l| {
            let [a, b, c] = l.variables();
            format!("{l} = {a} > {b} > {c}")
        })
        .collect();
    s.push_str(&names.join(", "));
    s.push_str(".\n\n## Datasets\n\n| dataset | rows | 0 | 1 | 2 | 3 | 4 | 5 |\n|---|---:|---:|---:|---:|---:|---:|---:|\n");
    for d in &matrix.datasets {
        let counts: Vec<String> = d.class_counts.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(s, "| {} {} | {} | {} |", d.provenance, d.role, d.rows, counts.join(" | "));
    }
    let models = matrix.models();
    for tr in Provenance::ALL {
        let _ = write!(
            s,
            "\n## Trained on {tr} data\n\n| model | unbalanced test | balanced test | augmented test |\n|---|---:|---:|---:|\n"
        );
        let best: Vec<f64> = Provenance::ALL
            .iter()
            .map(|&te| {
                models
                    .iter()
                    .filter_map(|&m| matrix.accuracy(m, tr, te))
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        for &m in &models {
            let cols: Vec<String> = Provenance::ALL
                .iter()
                .zip(&best)
                .map(|(&te, &b)| match matrix.accuracy(m, tr, te) {
                    Some(a) if format!("{a:.3}") == format!("{b:.3}") => format!("**{a:.3}**"),
                    Some(a) => format!("{a:.3}"),
                    None => "-".into(),
                })
                .collect();
            let _ = writeln!(s, "| {m} | {} |", cols.join(" | "));
        }
    }
    let imp = improvement_summary(matrix);
    s.push_str("\n## Change on the balanced test set\n\nRelative to the model trained on unbalanced data.\n\n");
    s.push_str("| model | balanced training | augmented training |\n|---|---:|---:|\n");
    for m in &imp.per_model {
        let _ = writeln!(
            s,
            "| {} | {} | {} |",
            m.model,
            percent(m.balanced_vs_unbalanced),
            percent(m.augmented_vs_unbalanced)
        );
    }
    let _ = writeln!(
        s,
        "| average | {} | {} |",
        percent(imp.balanced_vs_unbalanced),
        percent(imp.augmented_vs_unbalanced)
    );
    if !matrix.selections.is_empty() {
        s.push_str("\n## Selected hyperparameters\n\n| model | training data | hyperparameters | CV accuracy |\n|---|---|---|---:|\n");
        for sel in &matrix.selections {
            let _ = writeln!(s, "| {} | {} | {} | {:.3} |", sel.model, sel.train, sel.hyperparameters, sel.cv_accuracy);
        }
    }
    s
}

#[derive(Serialize)]
struct DatasetsFile<'a> {
    raw_features: usize,
    filtered_features: usize,
    datasets: &'a [DatasetSummary],
}

/// Writes `report.md`, `matrix.csv` and `datasets.json` into `out`.
pub fn write_report(matrix: &ResultMatrix, out: &Path) -> Result<()> {
    create_dir(out)?;
    let write = |name: &str, text: String| {
        let path = out.join(name);
        std::fs::write(&path, text).map_err(|e| Error::from(e).in_file(&path))
    };
    write("report.md", render_markdown(matrix))?;
    write("matrix.csv", matrix_csv(matrix))?;
    write(
        "datasets.json",
        serde_json::to_string_pretty(&DatasetsFile {
            raw_features: matrix.raw_features,
            filtered_features: matrix.filtered_features,
            datasets: &matrix.datasets,
        })?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(f: impl Fn(ModelKind, Provenance, Provenance) -> f64) -> ResultMatrix {
        let mut cells = Vec::new();
        for m in ModelKind::ALL {
            for tr in Provenance::ALL {
                for te in Provenance::ALL {
                    cells.push(Cell {
                        model: m,
                        train: tr,
                        test: te,
                        accuracy: f(m, tr, te),
                    });
                }
            }
        }
        ResultMatrix {
            seed: 1,
            corpus: CorpusSummary::default(),
            raw_features: 384,
            filtered_features: 99,
            datasets: vec![DatasetSummary {
                provenance: Provenance::Augmented,
                role: Role::Test,
                rows: 12,
                class_counts: [2; 6],
            }],
            cells,
            selections: vec![],
        }
    }

    #[test]
    fn no_change_is_zero() {
        let imp = improvement_summary(&matrix(|_, _, _| 0.4));
        assert_eq!(imp.balanced_vs_unbalanced, 0.0);
        assert_eq!(imp.augmented_vs_unbalanced, 0.0);
    }

    #[test]
    fn point_two_to_point_three() {
        let m = matrix(|_, tr, _| if tr == Provenance::Unbalanced { 0.2 } else { 0.3 });
        let imp = improvement_summary(&m);
        assert!((imp.balanced_vs_unbalanced - 0.5).abs() < 1e-12);
        assert!((imp.augmented_vs_unbalanced - 0.5).abs() < 1e-12);
    }

    #[test]
    fn csv_has_nine_rows_per_model() {
        let csv = matrix_csv(&matrix(|_, _, _| 0.5));
        assert_eq!(csv.lines().count(), 1 + 27);
        assert!(csv.contains("knn,unbalanced,balanced,0.500000"));
    }

    #[test]
    fn bolds_column_maximum() {
        let m = matrix(|m, _, te| match (m, te) {
            (ModelKind::Rf, Provenance::Balanced) => 0.9,
            (ModelKind::Knn, _) => 0.7,
            _ => 0.2,
        });
        let md = render_markdown(&m);
        assert!(md.contains("| rf | 0.200 | **0.900** | 0.200 |"));
        assert!(md.contains("| knn | **0.700** | 0.700 | **0.700** |"));
    }

    #[test]
    fn incomplete_matrix_rejected() {
        let mut m = matrix(|_, _, _| 0.5);
        m.cells.pop();
        assert!(m.check_complete().is_err());
        let bad = matrix(|_, _, _| 1.5);
        assert!(bad.check_complete().is_err());
    }

    #[test]
    fn config_validation() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = ExperimentConfig {
            input: dir.path().to_path_buf(),
            ..ExperimentConfig::default()
        };
        assert!(cfg.validate().is_ok());
        cfg.test_fraction = 1.0;
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
        cfg.test_fraction = 0.2;
        cfg.labeller = LabellerKind::Timings;
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
    }
}
