//! End-to-end acceptance checks. Runs without the libtest harness so every
//! criterion reports a PASS/FAIL line even when an earlier one fails.

#[path = "common/blobs.rs"]
mod blobs;

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cad_augment::augmentation::{augment_full, balance, permute_ordering_label, BalanceMode};
use cad_augment::corpus::{write_corpus, CorpusConfig};
use cad_augment::dataset::{Dataset, Provenance, Role, Row};
use cad_augment::experiment::{run_pipeline, ExperimentConfig, ResultMatrix};
use cad_augment::features::{evaluate_descriptor, featurize_exact, permute_values, Aggregate, Base, FeatureSchema, Shape};
use cad_augment::labelling::{label_from_timings, projection_chain, sotd, LabelOutcome, ProjectionBudget, Timing, TimingRecord};
use cad_augment::ml::{train, uniform_random_accuracy, CvPlan, ModelKind};
use cad_augment::poly::{discriminant, resultant};
use cad_augment::smtlib::ProblemInstance;
use cad_augment::{Monomial, OrderingLabel, Polynomial, Variable, VariablePermutation};

const WORKED_EXAMPLE_BUDGET: Duration = Duration::from_millis(1);
const EQUIVARIANCE_INSTANCES: usize = 500;
const EQUIVARIANCE_BUDGET: Duration = Duration::from_secs(60);
const AUGMENTATION_BUDGET: Duration = Duration::from_secs(5);
const EXPERIMENT_INSTANCES: usize = 1000;
const EXPERIMENT_SEED: u64 = 7;
const EXPERIMENT_BUDGET: Duration = Duration::from_secs(600);
const ORDERING_SLACK: f64 = 0.02;
const CHANCE: f64 = 1.0 / 6.0;
const BLOB_ACCURACY: f64 = 0.9;
const RANDOM_TOLERANCE: f64 = 0.03;
const REFERENCE_COUNTS: [usize; 6] = [406, 93, 135, 51, 202, 132];

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg.into()) }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn p(s: &str) -> Polynomial {
    s.parse().unwrap()
}

fn worked_examples() -> Outcome {
    let inst = ProblemInstance::new("w", [p("x2^2 - x2*x1"), p("x3^3*x1 - x1^2 + 1")]).map_err(|e| e.to_string())?;
    let shape = |monomial_agg, sign_after_monomial| Shape {
        base: Base::VarDegree,
        monomial_agg,
        sign_after_monomial,
        polynomial_agg: Aggregate::Sum,
        sign_after_polynomial: false,
    };
    let avg_sum = shape(Aggregate::Avg, false).at(Variable::X1);
    let sign_sum = shape(Aggregate::Sum, true).at(Variable::X2);
    let start = Instant::now();
    let a = evaluate_descriptor(&inst, &avg_sum);
    let b = evaluate_descriptor(&inst, &sign_sum);
    let took = start.elapsed();
    ensure(a == q(3, 2), format!("avg->sum over x1 is {a}"))?;
    ensure(b == q(1, 1), format!("sum->sign->sum over x2 is {b}"))?;
    ensure(took < WORKED_EXAMPLE_BUDGET, format!("took {took:?}"))?;
    Ok(format!("3/2 and 1 exactly in {took:?}"))
}

fn schema_counts(matrix: &ResultMatrix) -> Outcome {
    ensure(FeatureSchema::raw().len() == 384, "raw schema is not 384 wide")?;
    ensure(matrix.raw_features == 384, format!("pipeline raw width {}", matrix.raw_features))?;
    let n = matrix.filtered_features;
    ensure(n % 3 == 0 && n <= 384 && n > 0, format!("filtered width {n}"))?;
    Ok(format!("raw 384, filtered {n}"))
}

fn random_instance(rng: &mut ChaCha8Rng, id: usize) -> ProblemInstance {
    let npolys = rng.random_range(1..=5);
    let mut polys: Vec<Polynomial> = (0..npolys)
        .map(|_| {
            let terms = rng.random_range(1..=5);
            Polynomial::from_terms((0..terms).map(|_| {
                let mut e = [0u32; 3];
                for _ in 0..rng.random_range(0..=4) {
                    e[rng.random_range(0..3)] += 1;
                }
                let c = rng.random_range(-9i64..=9);
                (q(c, rng.random_range(1..=4)), Monomial::new(e))
            }))
        })
        .filter(|p| !p.is_constant())
        .collect();
    for v in Variable::ALL {
        if !polys.iter().any(|p| p.contains(v)) {
            polys.push(&Polynomial::var(v) + &Polynomial::integer(rng.random_range(1..=3)));
        }
    }
    ProblemInstance::new(format!("r{id}"), polys).unwrap()
}

fn equivariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let schema = FeatureSchema::raw();
    let start = Instant::now();
    for i in 0..EQUIVARIANCE_INSTANCES {
        let inst = random_instance(&mut rng, i);
        let base = featurize_exact(&inst, &schema);
        for sigma in VariablePermutation::all() {
            let renamed = featurize_exact(&inst.rename(&sigma), &schema);
            let moved = permute_values(&base, &sigma, &schema).map_err(|e| e.to_string())?;
            ensure(renamed == moved, format!("instance {i} fails under {}", sigma.code()))?;
        }
    }
    let took = start.elapsed();
    ensure(took < EQUIVARIANCE_BUDGET, format!("took {took:?}"))?;
    Ok(format!("{EQUIVARIANCE_INSTANCES} instances x 6 permutations in {took:.1?}"))
}

fn group_action() -> Outcome {
    let perms = VariablePermutation::all();
    let mut identities = 0;
    for s in &perms {
        for t in &perms {
            for l in OrderingLabel::ALL {
                let lhs = permute_ordering_label(permute_ordering_label(l, t), s);
                ensure(lhs == permute_ordering_label(l, &s.compose(t)), format!("{} . {} on {l}", s.code(), t.code()))?;
            }
            identities += 1;
        }
    }
    for l in OrderingLabel::ALL {
        let orbit: Vec<usize> = perms.iter().map(|s| permute_ordering_label(l, s).index()).collect();
        ensure(orbit.iter().collect::<BTreeSet<_>>().len() == 6, format!("orbit of {l} is {orbit:?}"))?;
    }
    let swap = VariablePermutation::swap(Variable::X1, Variable::X2);
    let fixed = permute_ordering_label(OrderingLabel::from_variables([Variable::X1, Variable::X2, Variable::X3]), &swap);
    ensure(fixed == OrderingLabel::from_variables([Variable::X2, Variable::X1, Variable::X3]), "transposition example")?;
    Ok(format!("{identities} composition identities, 6 full orbits"))
}

fn augmentation_structure() -> Outcome {
    let rows: Vec<Row> = REFERENCE_COUNTS
        .iter()
        .enumerate()
        .flat_map(|(l, &c)| std::iter::repeat_n(l, c))
        .enumerate()
        .map(|(i, l)| Row {
            id: format!("i{i:04}"),
            features: (0..6).map(|j| ((i * 13 + j * 5) % 11) as f64).collect(),
            label: OrderingLabel::ALL[l],
        })
        .collect();
    let schema = FeatureSchema::from_shapes(Shape::all()[..2].to_vec());
    let ds = Dataset::new(rows, Provenance::Unbalanced, Role::Train, schema).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let aug = augment_full(&ds).map_err(|e| e.to_string())?;
    let bal = balance(&ds, BalanceMode::Exact, 11).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(ds.len() == 1019, format!("{} rows", ds.len()))?;
    ensure(aug.len() == 6114 && aug.class_counts() == [1019; 6], format!("augmented {:?}", aug.class_counts()))?;
    let counts = bal.class_counts();
    ensure(counts.iter().all(|&c| c == 169 || c == 170), format!("balanced {counts:?}"))?;
    ensure(took < AUGMENTATION_BUDGET, format!("took {took:?}"))?;
    Ok(format!("6114 rows, 1019 per class, exact balance {counts:?}"))
}

fn labelling() -> Outcome {
    use Timing::{Seconds as S, Timeout as T};
    let rec = TimingRecord::new("t", [S(3.0), S(0.7), T, S(0.4), S(80.0), S(1.0)]);
    let l = label_from_timings(&rec, 60.0).map_err(|e| e.to_string())?;
    ensure(l.label().map(|l| l.index()) == Some(3), format!("argmin gave {l:?}"))?;
    let all_out = TimingRecord::new("u", [T, T, S(61.0), T, T, T]);
    ensure(label_from_timings(&all_out, 60.0).ok() == Some(LabelOutcome::Discard), "all-timeout record kept")?;

    let polys = [p("x1^2 - x2")].into_iter().collect();
    let chain = projection_chain(&polys, OrderingLabel::ALL[0], &ProjectionBudget::UNLIMITED).map_err(|e| e.to_string())?;
    ensure(sotd(&chain) == 4, format!("sotd {}", sotd(&chain)))?;

    let r = resultant(&p("x1^2 - 1"), &p("x1 - 1"), Variable::X1).map_err(|e| e.to_string())?;
    ensure(r.is_zero(), format!("res = {r}"))?;
    let d = discriminant(&p("x1^2 + x2*x1 + x3"), Variable::X1).map_err(|e| e.to_string())?;
    ensure(d == p("4*x3 - x2^2"), format!("disc = {d}"))?;
    Ok("argmin, discard, sotd 4, res 0, disc 4c - b^2".into())
}

fn experiment(matrix: &ResultMatrix, took: Duration) -> Outcome {
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for kind in matrix.models() {
        let acc = |train| matrix.accuracy(kind, train, Provenance::Balanced).unwrap_or(f64::NAN);
        let (u, b, a) = (acc(Provenance::Unbalanced), acc(Provenance::Balanced), acc(Provenance::Augmented));
        lines.push(format!("{kind} {u:.3}/{b:.3}/{a:.3}"));
        if !(a >= b - ORDERING_SLACK) {
            failures.push(format!("{kind}: augmented {a:.3} < balanced {b:.3} - {ORDERING_SLACK}"));
        }
        if !(b >= u - ORDERING_SLACK) {
            failures.push(format!("{kind}: balanced {b:.3} < unbalanced {u:.3} - {ORDERING_SLACK}"));
        }
        if !(a > u) {
            failures.push(format!("{kind}: augmented {a:.3} <= unbalanced {u:.3}"));
        }
        for (name, v) in [("unbalanced", u), ("balanced", b), ("augmented", a)] {
            if !(v > CHANCE) {
                failures.push(format!("{kind}: {name}-trained {v:.3} at or below chance"));
            }
        }
    }
    if took >= EXPERIMENT_BUDGET {
        failures.push(format!("took {took:?}"));
    }
    let summary = format!("{} (unbal/bal/aug on balanced test, {took:.1?})", lines.join(", "));
    if failures.is_empty() { Ok(summary) } else { Err(format!("{summary}; {}", failures.join("; "))) }
}

fn ml_sanity() -> Outcome {
    let data = blobs::blobs(600, 4, 1, "b");
    let split = |rows: &[Row]| Dataset::new(rows.to_vec(), data.provenance, data.role, data.schema.clone()).unwrap();
    let (tr, te) = (split(&data.rows[..480]), split(&data.rows[480..]));
    let mut parts = Vec::new();
    for kind in ModelKind::ALL {
        let m = train(kind, &tr, &CvPlan::new(5, Default::default(), 3).unwrap()).map_err(|e| e.to_string())?;
        let acc = m.accuracy(&te).map_err(|e| e.to_string())?;
        ensure(acc >= BLOB_ACCURACY, format!("{kind} holdout {acc:.3}"))?;
        parts.push(format!("{kind} {acc:.3}"));
    }
    let rows: Vec<Row> = REFERENCE_COUNTS
        .iter()
        .enumerate()
        .flat_map(|(l, &c)| std::iter::repeat_n(l, c))
        .enumerate()
        .map(|(i, l)| Row {
            id: format!("u{i:04}"),
            features: vec![0.0; 3],
            label: OrderingLabel::ALL[l],
        })
        .collect();
    let schema = FeatureSchema::from_shapes(Shape::all()[..1].to_vec());
    let aug = augment_full(&Dataset::new(rows, Provenance::Unbalanced, Role::Test, schema).unwrap()).unwrap();
    let r = uniform_random_accuracy(&aug, 5).map_err(|e| e.to_string())?;
    ensure((r - CHANCE).abs() <= RANDOM_TOLERANCE, format!("uniform random {r:.4} on {} rows", aug.len()))?;
    parts.push(format!("uniform random {r:.4} on {} rows", aug.len()));
    Ok(parts.join(", "))
}

fn determinism(dir: &Path) -> Outcome {
    let corpus = dir.join("det-corpus");
    write_corpus(&corpus, &CorpusConfig { instances: 150, seed: 3, ..CorpusConfig::default() }).map_err(|e| e.to_string())?;
    let mut csvs = Vec::new();
    for run in ["det-a", "det-b"] {
        let status = Command::new(env!("CARGO_BIN_EXE_cadaug"))
            .args(["run", "--input"])
            .arg(&corpus)
            .args(["--seed", "3", "--out"])
            .arg(dir.join(run))
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.success(), format!("run exited with {status}"))?;
        csvs.push(std::fs::read(dir.join(run).join("matrix.csv")).map_err(|e| e.to_string())?);
    }
    ensure(csvs[0] == csvs[1], "matrix.csv differs between runs")?;
    Ok(format!("matrix.csv identical ({} bytes)", csvs[0].len()))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let corpus = dir.path().join("corpus");
    let start = Instant::now();
    let pipeline = write_corpus(
        &corpus,
        &CorpusConfig {
            instances: EXPERIMENT_INSTANCES,
            seed: EXPERIMENT_SEED,
            ..CorpusConfig::default()
        },
    )
    .and_then(|_| {
        run_pipeline(&ExperimentConfig {
            input: corpus.clone(),
            seed: EXPERIMENT_SEED,
            out: dir.path().join("experiment"),
            ..ExperimentConfig::default()
        })
    })
    .map(|m| (m, start.elapsed()))
    .map_err(|e| format!("pipeline failed: {e}"));

    let results: Vec<(&str, Outcome)> = vec![
        ("feature worked examples", worked_examples()),
        ("schema counts", pipeline.as_ref().map_err(Clone::clone).and_then(|(m, _)| schema_counts(m))),
        ("featurization equivariance", equivariance()),
        ("label group action", group_action()),
        ("augmentation structure", augmentation_structure()),
        ("labelling", labelling()),
        ("experiment orderings", pipeline.as_ref().map_err(Clone::clone).and_then(|(m, t)| experiment(m, *t))),
        ("ml sanity", ml_sanity()),
        ("determinism", determinism(dir.path())),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
