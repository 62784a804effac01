//! Desk-scale classifiers with grouped cross-validated model selection.

mod forest;
mod knn;
mod matrix;
mod standardize;
mod tree;

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::features::FeatureSchema;
use crate::seed::{derive_seed, stages};
use crate::symmetry::OrderingLabel;

pub use forest::{tree_seed, ForestParams, RandomForest};
pub use knn::Knn;
pub use matrix::{dataset_xy, Matrix};
pub use standardize::Standardizer;
pub use tree::{DecisionTree, Node, TreeParams};

pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Knn,
    Dt,
    Rf,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [ModelKind::Knn, ModelKind::Dt, ModelKind::Rf];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Knn => "knn",
            ModelKind::Dt => "dt",
            ModelKind::Rf => "rf",
        }
    }

    /// Parses a comma-separated list such as `knn,dt,rf`.
    pub fn parse_list(s: &str) -> Result<Vec<ModelKind>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let k: ModelKind = part.parse()?;
            if !out.contains(&k) {
                out.push(k);
            }
        }
        if out.is_empty() {
            return Err(Error::Config("no model kinds given".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown model kind `{s}` (expected knn, dt or rf)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaxFeatures {
    Sqrt,
    Third,
    All,
}

impl MaxFeatures {
    pub fn resolve(self, d: usize) -> usize {
        let m = match self {
            MaxFeatures::Sqrt => (d as f64).sqrt().floor() as usize,
            MaxFeatures::Third => d / 3,
            MaxFeatures::All => d,
        };
        m.clamp(1, d.max(1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnnParams {
    pub k: usize,
}

fn one() -> usize {
    1
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DtParams {
    pub max_depth: Option<usize>,
    #[serde(default = "one")]
    pub min_leaf: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RfParams {
    pub trees: usize,
    pub max_depth: Option<usize>,
    pub max_features: MaxFeatures,
    #[serde(default = "one")]
    pub min_leaf: usize,
    #[serde(default = "yes")]
    pub bootstrap: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Hyperparameters {
    Knn(KnnParams),
    Dt(DtParams),
    Rf(RfParams),
}

impl Hyperparameters {
    pub fn kind(&self) -> ModelKind {
        match self {
            Hyperparameters::Knn(_) => ModelKind::Knn,
            Hyperparameters::Dt(_) => ModelKind::Dt,
            Hyperparameters::Rf(_) => ModelKind::Rf,
        }
    }
}

impl fmt::Display for Hyperparameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let depth = |d: &Option<usize>| d.map_or("none".to_string(), |d| d.to_string());
        match self {
            Hyperparameters::Knn(p) => write!(f, "k={}", p.k),
            Hyperparameters::Dt(p) => write!(f, "max_depth={} min_leaf={}", depth(&p.max_depth), p.min_leaf),
            Hyperparameters::Rf(p) => write!(
                f,
                "trees={} max_depth={} max_features={:?} min_leaf={}",
                p.trees,
                depth(&p.max_depth),
                p.max_features,
                p.min_leaf
            ),
        }
    }
}

/// Hyperparameter grids per model kind. Missing kinds in a grid file fall
/// back to the defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grids {
    #[serde(default = "default_knn_grid")]
    pub knn: Vec<KnnParams>,
    #[serde(default = "default_dt_grid")]
    pub dt: Vec<DtParams>,
    #[serde(default = "default_rf_grid")]
    pub rf: Vec<RfParams>,
}

fn default_knn_grid() -> Vec<KnnParams> {
    [1, 3, 5, 11, 21].into_iter().map(|k| KnnParams { k }).collect()
}

fn default_dt_grid() -> Vec<DtParams> {
    let mut g = Vec::new();
    for max_depth in [Some(4), Some(8), Some(16), None] {
        for min_leaf in [1, 5] {
            g.push(DtParams { max_depth, min_leaf });
        }
    }
    g
}

fn default_rf_grid() -> Vec<RfParams> {
    let mut g = Vec::new();
    for max_depth in [Some(8), Some(16), None] {
        for max_features in [MaxFeatures::Sqrt, MaxFeatures::Third] {
            g.push(RfParams {
                trees: 100,
                max_depth,
                max_features,
                min_leaf: 1,
                bootstrap: true,
            });
        }
    }
    g
}

impl Default for Grids {
    fn default() -> Self {
        Grids {
            knn: default_knn_grid(),
            dt: default_dt_grid(),
            rf: default_rf_grid(),
        }
    }
}

impl Grids {
    pub fn for_kind(&self, kind: ModelKind) -> Vec<Hyperparameters> {
        match kind {
            ModelKind::Knn => self.knn.iter().copied().map(Hyperparameters::Knn).collect(),
            ModelKind::Dt => self.dt.iter().copied().map(Hyperparameters::Dt).collect(),
            ModelKind::Rf => self.rf.iter().copied().map(Hyperparameters::Rf).collect(),
        }
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path))?;
        let grids: Grids = serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        for kind in ModelKind::ALL {
            if grids.for_kind(kind).is_empty() {
                return Err(Error::Config(format!("{}: empty {kind} grid", path.display())));
            }
        }
        Ok(grids)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvPlan {
    pub folds: usize,
    pub grids: Grids,
    pub seed: u64,
}

impl CvPlan {
    pub fn new(folds: usize, grids: Grids, seed: u64) -> Result<Self> {
        if folds < 2 {
            return Err(Error::Config(format!("need at least 2 folds, got {folds}")));
        }
        Ok(CvPlan { folds, grids, seed })
    }
}

impl Default for CvPlan {
    fn default() -> Self {
        CvPlan {
            folds: 5,
            grids: Grids::default(),
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvPoint {
    pub hyperparameters: Hyperparameters,
    pub fold_accuracy: Vec<f64>,
    pub mean_accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvReport {
    pub folds: usize,
    pub points: Vec<CvPoint>,
    pub selected: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Payload {
    Knn(Knn),
    Tree(DecisionTree),
    Forest(RandomForest),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub format_version: u32,
    pub kind: ModelKind,
    pub hyperparameters: Hyperparameters,
    pub seed: u64,
    pub schema: FeatureSchema,
    pub standardizer: Option<Standardizer>,
    pub payload: Payload,
    pub cv: Option<CvReport>,
}

fn fit_payload(h: &Hyperparameters, x: &Matrix, y: &[u8], seed: u64) -> Result<(Option<Standardizer>, Payload)> {
    let idx: Vec<usize> = (0..x.rows()).collect();
    Ok(match h {
        Hyperparameters::Knn(p) => {
            let st = Standardizer::fit(x)?;
            (Some(st.clone()), Payload::Knn(Knn::fit(p.k, &st.apply_matrix(x), y)))
        }
        Hyperparameters::Dt(p) => {
            let tp = TreeParams {
                max_depth: p.max_depth,
                min_leaf: p.min_leaf,
                max_features: None,
            };
            (None, Payload::Tree(DecisionTree::fit(x, y, &idx, tp, None)))
        }
        Hyperparameters::Rf(p) => {
            let params = ForestParams {
                trees: p.trees,
                tree: TreeParams {
                    max_depth: p.max_depth,
                    min_leaf: p.min_leaf,
                    max_features: match p.max_features {
                        MaxFeatures::All => None,
                        m => Some(m.resolve(x.cols)),
                    },
                },
                bootstrap: p.bootstrap,
            };
            (None, Payload::Forest(RandomForest::fit(x, y, params, seed)))
        }
    })
}

fn predict_payload(st: Option<&Standardizer>, payload: &Payload, q: &[f64]) -> u8 {
    let z;
    let q = match st {
        Some(st) => {
            z = st.apply(q);
            &z[..]
        }
        None => q,
    };
    match payload {
        Payload::Knn(m) => m.predict(q),
        Payload::Tree(t) => t.predict(q),
        Payload::Forest(f) => f.predict(q),
    }
}

fn check_trainable(ds: &Dataset, min_rows: usize) -> Result<()> {
    if ds.len() < min_rows.max(2) {
        return Err(Error::DegenerateDataset(format!(
            "{} rows, need at least {}",
            ds.len(),
            min_rows.max(2)
        )));
    }
    if ds.class_counts().iter().filter(|&&c| c > 0).count() < 2 {
        return Err(Error::DegenerateDataset("training data has a single class".into()));
    }
    Ok(())
}

/// Fold index of every row. Rows of one instance (including its renamed
/// images) share a fold.
pub fn assign_folds(ds: &Dataset, folds: usize, seed: u64) -> Result<Vec<usize>> {
    let groups: BTreeSet<&str> = ds.rows.iter().map(|r| r.instance_id()).collect();
    if groups.len() < folds {
        return Err(Error::DegenerateDataset(format!(
            "{} distinct instances for {folds} folds",
            groups.len()
        )));
    }
    let mut order: Vec<&str> = groups.into_iter().collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let fold_of: std::collections::HashMap<&str, usize> =
        order.iter().enumerate().map(|(i, g)| (*g, i % folds)).collect();
    Ok(ds.rows.iter().map(|r| fold_of[r.instance_id()]).collect())
}

fn accuracy_of(pred: &[u8], y: &[u8]) -> f64 {
    let hits = pred.iter().zip(y).filter(|(a, b)| a == b).count();
    hits as f64 / y.len() as f64
}

/// Fits one hyperparameter point on the whole dataset, without
/// cross-validation.
pub fn fit(h: Hyperparameters, ds: &Dataset, seed: u64) -> Result<TrainedModel> {
    check_trainable(ds, 2)?;
    let (x, y) = dataset_xy(ds);
    let (standardizer, payload) = fit_payload(&h, &x, &y, seed)?;
    Ok(TrainedModel {
        format_version: MODEL_FORMAT_VERSION,
        kind: h.kind(),
        hyperparameters: h,
        seed,
        schema: ds.schema.clone(),
        standardizer,
        payload,
        cv: None,
    })
}

/// Grid search by grouped k-fold cross-validation, then a refit of the best
/// point on the full dataset. Ties keep the earliest grid point.
pub fn train(kind: ModelKind, ds: &Dataset, plan: &CvPlan) -> Result<TrainedModel> {
    check_trainable(ds, plan.folds)?;
    let grid = plan.grids.for_kind(kind);
    if grid.is_empty() {
        return Err(Error::Config(format!("empty {kind} grid")));
    }
    let fold_of = assign_folds(ds, plan.folds, derive_seed(plan.seed, stages::CV))?;
    let model_seed = derive_seed(plan.seed, stages::MODEL);
    let (x, y) = dataset_xy(ds);

    let per_fold: Vec<Vec<f64>> = (0..plan.folds)
        .into_par_iter()
        .map(|f| -> Result<Vec<f64>> {
            let tr: Vec<usize> = (0..x.rows()).filter(|&i| fold_of[i] != f).collect();
            let va: Vec<usize> = (0..x.rows()).filter(|&i| fold_of[i] == f).collect();
            let (xt, xv) = (x.select(&tr), x.select(&va));
            let yt: Vec<u8> = tr.iter().map(|&i| y[i]).collect();
            let yv: Vec<u8> = va.iter().map(|&i| y[i]).collect();
            if kind == ModelKind::Knn {
                let st = Standardizer::fit(&xt)?;
                let ks: Vec<usize> = grid
                    .iter()
                    .map(|h| match h {
                        Hyperparameters::Knn(p) => p.k.max(1),
                        _ => unreachable!("knn grid holds knn points"),
                    })
                    .collect();
                let m = Knn::fit(1, &st.apply_matrix(&xt), &yt);
                let preds = m.predict_many_k(&st.apply_matrix(&xv), &ks);
                return Ok(preds.iter().map(|p| accuracy_of(p, &yv)).collect());
            }
            grid.iter()
                .map(|h| {
                    let (st, payload) = fit_payload(h, &xt, &yt, model_seed)?;
                    let pred: Vec<u8> =
                        (0..xv.rows()).map(|i| predict_payload(st.as_ref(), &payload, xv.row(i))).collect();
                    Ok(accuracy_of(&pred, &yv))
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let points: Vec<CvPoint> = grid
        .iter()
        .enumerate()
        .map(|(g, h)| {
            let fold_accuracy: Vec<f64> = per_fold.iter().map(|f| f[g]).collect();
            let mean_accuracy = fold_accuracy.iter().sum::<f64>() / fold_accuracy.len() as f64;
            CvPoint {
                hyperparameters: *h,
                fold_accuracy,
                mean_accuracy,
            }
        })
        .collect();
    let mut selected = 0;
    for (i, p) in points.iter().enumerate() {
        if p.mean_accuracy > points[selected].mean_accuracy {
            selected = i;
        }
    }
    let h = points[selected].hyperparameters;
    let (standardizer, payload) = fit_payload(&h, &x, &y, model_seed)?;
    Ok(TrainedModel {
        format_version: MODEL_FORMAT_VERSION,
        kind,
        hyperparameters: h,
        seed: model_seed,
        schema: ds.schema.clone(),
        standardizer,
        payload,
        cv: Some(CvReport {
            folds: plan.folds,
            points,
            selected,
        }),
    })
}

impl TrainedModel {
    pub fn predict(&self, fv: &[f64]) -> Result<OrderingLabel> {
        self.schema.check_len(fv.len())?;
        Ok(OrderingLabel::ALL[predict_payload(self.standardizer.as_ref(), &self.payload, fv) as usize])
    }

    pub fn predict_dataset(&self, ds: &Dataset) -> Result<Vec<OrderingLabel>> {
        if ds.schema != self.schema {
            return Err(Error::SchemaMismatch {
                expected: self.schema.len(),
                got: ds.schema.len(),
            });
        }
        Ok(ds
            .rows
            .par_iter()
            .map(|r| OrderingLabel::ALL[predict_payload(self.standardizer.as_ref(), &self.payload, &r.features) as usize])
            .collect())
    }

    pub fn accuracy(&self, ds: &Dataset) -> Result<f64> {
        if ds.is_empty() {
            return Err(Error::Data("accuracy of an empty dataset".into()));
        }
        let pred = self.predict_dataset(ds)?;
        let hits = pred.iter().zip(&ds.rows).filter(|(p, r)| **p == r.label).count();
        Ok(hits as f64 / ds.len() as f64)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: TrainedModel = serde_json::from_str(text)?;
        if m.format_version != MODEL_FORMAT_VERSION {
            return Err(Error::Data(format!(
                "model format version {} (supported: {MODEL_FORMAT_VERSION})",
                m.format_version
            )));
        }
        if m.hyperparameters.kind() != m.kind {
            return Err(Error::Data("model kind does not match its hyperparameters".into()));
        }
        Ok(m)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?).map_err(|e| Error::from(e).in_file(path))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path))?;
        TrainedModel::from_json(&text).map_err(|e| e.in_file(path))
    }
}

/// Accuracy of a predictor drawing labels uniformly at random. The draws
/// come from their own derived stream, so reusing a balancing seed here
/// does not correlate guesses with labels.
pub fn uniform_random_accuracy(ds: &Dataset, seed: u64) -> Result<f64> {
    if ds.is_empty() {
        return Err(Error::Data("accuracy of an empty dataset".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, stages::BASELINE));
    let hits = ds
        .rows
        .iter()
        .filter(|r| rng.random_range(0..6) == r.label.index())
        .count();
    Ok(hits as f64 / ds.len() as f64)
}
