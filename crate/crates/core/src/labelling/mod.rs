//! Best-ordering labels, from recorded CAD timings or from a projection-cost
//! proxy.

mod projection;
mod timings;

pub use projection::{mccallum_projection, projection_chain, sotd, sotd_profile, ProjectionBudget, SotdLabeller};
pub use timings::{label_from_timings, read_timings_csv, write_timings_csv, Timing, TimingRecord, TimingsLabeller};

use std::collections::BTreeMap;
use std::io::{Read, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::smtlib::ProblemInstance;
use crate::symmetry::OrderingLabel;

/// Result of labelling one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelOutcome {
    Label(OrderingLabel),
    /// Every ordering timed out or exceeded its budget.
    Discard,
}

impl LabelOutcome {
    pub fn label(self) -> Option<OrderingLabel> {
        match self {
            LabelOutcome::Label(l) => Some(l),
            LabelOutcome::Discard => None,
        }
    }
}

/// Source of ground-truth labels. Implementations must be pure per instance.
pub trait Labeller: Sync {
    fn label(&self, instance: &ProblemInstance) -> Result<LabelOutcome>;
}

/// Labels every instance, in parallel, keeping input order.
pub fn label_all(labeller: &dyn Labeller, instances: &[ProblemInstance]) -> Result<Vec<LabelOutcome>> {
    instances.par_iter().map(|i| labeller.label(i)).collect()
}

/// Writes `instance_id,label` rows; discarded instances get `discard`.
pub fn write_labels_csv<W: Write>(w: W, labels: &[(String, LabelOutcome)]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(w);
    writer.write_record(["instance_id", "label"])?;
    for (id, outcome) in labels {
        let l = match outcome {
            LabelOutcome::Label(l) => l.to_string(),
            LabelOutcome::Discard => "discard".to_string(),
        };
        writer.write_record([id.as_str(), l.as_str()])?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_labels_csv<R: Read>(r: R) -> Result<BTreeMap<String, LabelOutcome>> {
    let mut reader = csv::Reader::from_reader(r);
    if reader.headers()?.iter().collect::<Vec<_>>() != ["instance_id", "label"] {
        return Err(Error::Data("labels CSV header must be `instance_id,label`".into()));
    }
    let mut out = BTreeMap::new();
    for rec in reader.records() {
        let rec = rec?;
        let outcome = match &rec[1] {
            "discard" => LabelOutcome::Discard,
            l => LabelOutcome::Label(l.parse()?),
        };
        if out.insert(rec[0].to_string(), outcome).is_some() {
            return Err(Error::Data(format!("duplicate label for `{}`", &rec[0])));
        }
    }
    Ok(out)
}

/// Index of the smallest cost; `None` entries are treated as timeouts and
/// ties go to the lowest ordering index.
pub(crate) fn argmin_ordering<T: PartialOrd + Copy>(costs: &[Option<T>; 6]) -> LabelOutcome {
    let mut best: Option<(usize, T)> = None;
    for (i, c) in costs.iter().enumerate() {
        if let Some(c) = *c {
            if best.is_none_or(|(_, b)| c < b) {
                best = Some((i, c));
            }
        }
    }
    match best {
        Some((i, _)) => LabelOutcome::Label(OrderingLabel::ALL[i]),
        None => LabelOutcome::Discard,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_csv_round_trip() {
        let labels = vec![
            ("a".to_string(), LabelOutcome::Label(OrderingLabel::ALL[4])),
            ("b/c".to_string(), LabelOutcome::Discard),
        ];
        let mut buf = Vec::new();
        write_labels_csv(&mut buf, &labels).unwrap();
        let back = read_labels_csv(buf.as_slice()).unwrap();
        assert_eq!(back.into_iter().collect::<Vec<_>>(), labels);
        assert!(read_labels_csv("id,label\na,1\n".as_bytes()).is_err());
    }

    #[test]
    fn argmin_ties_and_timeouts() {
        assert_eq!(argmin_ordering(&[Some(3), Some(2), Some(2), None, None, None]).label(), Some(OrderingLabel::ALL[1]));
        assert_eq!(argmin_ordering::<u64>(&[None; 6]), LabelOutcome::Discard);
    }
}
