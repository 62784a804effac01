#[path = "common/blobs.rs"]
mod blobs;

use blobs::blobs;
use cad_augment::ml::{
    fit, train, CvPlan, DecisionTree, DtParams, Grids, Hyperparameters, KnnParams, MaxFeatures, ModelKind, Payload,
    RfParams, TrainedModel,
};

fn quick_plan(seed: u64) -> CvPlan {
    let grids = Grids {
        rf: vec![RfParams {
            trees: 25,
            max_depth: Some(8),
            max_features: MaxFeatures::Sqrt,
            min_leaf: 1,
            bootstrap: true,
        }],
        ..Grids::default()
    };
    CvPlan::new(5, grids, seed).unwrap()
}

#[test]
fn separable_blobs_are_learned() {
    let data = blobs(600, 4, 1, "b");
    let (train_rows, hold_rows) = data.rows.split_at(480);
    let mk = |rows: &[cad_augment::dataset::Row]| {
        cad_augment::dataset::Dataset::new(rows.to_vec(), data.provenance, data.role, data.schema.clone()).unwrap()
    };
    let (tr, te) = (mk(train_rows), mk(hold_rows));
    for kind in ModelKind::ALL {
        let m = train(kind, &tr, &quick_plan(3)).unwrap();
        let acc = m.accuracy(&te).unwrap();
        assert!(acc >= 0.9, "{kind}: {acc}");
    }
}

#[test]
fn training_is_deterministic() {
    let data = blobs(120, 2, 5, "d");
    for kind in ModelKind::ALL {
        let a = train(kind, &data, &quick_plan(9)).unwrap();
        let b = train(kind, &data, &quick_plan(9)).unwrap();
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap(), "{kind}");
    }
}

#[test]
fn tree_depth_is_bounded() {
    let data = blobs(300, 3, 2, "t");
    for depth in [1, 2, 3, 5] {
        let m = fit(
            Hyperparameters::Dt(DtParams {
                max_depth: Some(depth),
                min_leaf: 1,
            }),
            &data,
            0,
        )
        .unwrap();
        let Payload::Tree(t) = &m.payload else { panic!() };
        assert!(t.depth() <= depth);
    }
}

#[test]
fn single_tree_forest_matches_cart() {
    let data = blobs(200, 2, 8, "f");
    let dt = fit(
        Hyperparameters::Dt(DtParams {
            max_depth: Some(6),
            min_leaf: 2,
        }),
        &data,
        0,
    )
    .unwrap();
    let rf = fit(
        Hyperparameters::Rf(RfParams {
            trees: 1,
            max_depth: Some(6),
            max_features: MaxFeatures::All,
            min_leaf: 2,
            bootstrap: false,
        }),
        &data,
        42,
    )
    .unwrap();
    let (Payload::Tree(t), Payload::Forest(f)) = (&dt.payload, &rf.payload) else { panic!() };
    assert_eq!(&f.trees[0], t);
    assert_eq!(dt.predict_dataset(&data).unwrap(), rf.predict_dataset(&data).unwrap());
    let _: &DecisionTree = t;
}

#[test]
fn one_nn_memorizes_training_data() {
    let data = blobs(90, 2, 4, "k");
    let m = fit(Hyperparameters::Knn(KnnParams { k: 1 }), &data, 0).unwrap();
    assert_eq!(m.accuracy(&data).unwrap(), 1.0);
}

#[test]
fn saved_models_reload() {
    let data = blobs(60, 1, 6, "s");
    let dir = tempfile::tempdir().unwrap();
    for kind in ModelKind::ALL {
        let m = train(kind, &data, &quick_plan(1)).unwrap();
        let path = dir.path().join(format!("{kind}.json"));
        m.save(&path).unwrap();
        let back = TrainedModel::load(&path).unwrap();
        assert_eq!(back.predict_dataset(&data).unwrap(), m.predict_dataset(&data).unwrap());
    }
    std::fs::write(dir.path().join("bad.json"), r#"{"format_version": 99}"#).unwrap();
    assert!(TrainedModel::load(&dir.path().join("bad.json")).is_err());
}
