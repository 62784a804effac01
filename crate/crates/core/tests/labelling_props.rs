mod common;

use proptest::prelude::*;

use cad_augment::labelling::{
    label_from_timings, projection_chain, sotd, sotd_profile, LabelOutcome, Labeller, ProjectionBudget, SotdLabeller,
    Timing, TimingRecord,
};
use cad_augment::{OrderingLabel, Polynomial, VariablePermutation};

fn timing() -> impl Strategy<Value = Timing> {
    prop_oneof![
        (0u32..100).prop_map(|t| Timing::Seconds(t as f64 / 2.0)),
        Just(Timing::Timeout),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn sotd_profile_is_equivariant(inst in common::instance(3, 2), s in common::permutation()) {
        let budget = ProjectionBudget::default();
        let base = sotd_profile(inst.polynomials(), &budget).unwrap();
        let renamed = sotd_profile(inst.rename(&s).polynomials(), &budget).unwrap();
        for o in OrderingLabel::ALL {
            prop_assert_eq!(renamed[o.permute(&s).index()], base[o.index()]);
        }
    }

    #[test]
    fn sotd_argmin_set_moves_with_rename(inst in common::instance(3, 2), s in common::permutation()) {
        let budget = ProjectionBudget::default();
        let argmins = |p: &[Option<u64>; 6]| {
            let best = p.iter().flatten().min().copied();
            OrderingLabel::ALL.iter().filter(|o| best.is_some() && p[o.index()] == best).copied().collect::<Vec<_>>()
        };
        let base = argmins(&sotd_profile(inst.polynomials(), &budget).unwrap());
        let mut moved: Vec<OrderingLabel> = base.iter().map(|o| o.permute(&s)).collect();
        moved.sort();
        prop_assert_eq!(argmins(&sotd_profile(inst.rename(&s).polynomials(), &budget).unwrap()), moved);
    }

    #[test]
    fn timing_label_is_argmin(times in prop::array::uniform6(timing()), timeout in 1u32..80) {
        let timeout = timeout as f64;
        let rec = TimingRecord::new("r", times);
        let finite: Vec<(usize, f64)> = times
            .iter()
            .enumerate()
            .filter_map(|(i, t)| match t {
                Timing::Seconds(s) if *s <= timeout => Some((i, *s)),
                _ => None,
            })
            .collect();
        let got = label_from_timings(&rec, timeout).unwrap();
        match finite.iter().copied().reduce(|a, b| if b.1 < a.1 { b } else { a }) {
            None => prop_assert_eq!(got, LabelOutcome::Discard),
            Some((i, _)) => prop_assert_eq!(got, LabelOutcome::Label(OrderingLabel::ALL[i])),
        }
    }

    #[test]
    fn timing_labels_are_equivariant(times in prop::array::uniform6(0u32..50), s in common::permutation()) {
        // distinct times so the argmin is unique
        let times = std::array::from_fn(|i| Timing::Seconds(times[i] as f64 + i as f64 / 10.0));
        let rec = TimingRecord::new("r", times);
        let base = label_from_timings(&rec, 60.0).unwrap().label().unwrap();
        let renamed = label_from_timings(&rec.rename(&s), 60.0).unwrap().label().unwrap();
        prop_assert_eq!(renamed, base.permute(&s));
    }
}

#[test]
fn hand_computed_chain() {
    let polys = ["x1^2 - x2"].iter().map(|s| s.parse::<Polynomial>().unwrap()).collect();
    let chain = projection_chain(&polys, OrderingLabel::ALL[0], &ProjectionBudget::UNLIMITED).unwrap();
    // level 2: coefficient -x2 of x1^0 and the discriminant -4*x2, both normalized to x2
    assert_eq!(chain[1].iter().map(|p| p.to_string()).collect::<Vec<_>>(), ["x2"]);
    assert!(chain[2].is_empty());
    assert_eq!(sotd(&chain), 4);
}

#[test]
fn tiny_budget_discards() {
    let inst = cad_augment::smtlib::ProblemInstance::new(
        "b",
        ["x1^3*x2 + x3^2 - 1", "x2^2*x3 + x1"].iter().map(|s| s.parse::<Polynomial>().unwrap().primitive()),
    )
    .unwrap();
    let tight = SotdLabeller {
        budget: ProjectionBudget {
            max_polys: 1,
            max_degree: 200,
        },
    };
    assert_eq!(tight.label(&inst).unwrap(), LabelOutcome::Discard);
    assert!(SotdLabeller::default().label(&inst).unwrap().label().is_some());
    let _ = VariablePermutation::IDENTITY;
}
