use std::collections::BTreeMap;
use std::collections::HashMap;
use std::io::{Read, Write};

use super::{argmin_ordering, LabelOutcome, Labeller};
use crate::error::{Error, Result};
use crate::smtlib::ProblemInstance;
use crate::symmetry::{OrderingLabel, VariablePermutation};

/// Measured CAD time for one ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Timing {
    Seconds(f64),
    Timeout,
}

impl Timing {
    fn parse(s: &str) -> Result<Timing> {
        let s = s.trim();
        if s == "TIMEOUT" {
            return Ok(Timing::Timeout);
        }
        match s.parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(Timing::Seconds(t)),
            _ => Err(Error::Data(format!("invalid timing `{s}`: expected a positive number or TIMEOUT"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimingRecord {
    pub instance_id: String,
    pub times: BTreeMap<OrderingLabel, Timing>,
}

impl TimingRecord {
    pub fn new(instance_id: impl Into<String>, times: [Timing; 6]) -> Self {
        TimingRecord {
            instance_id: instance_id.into(),
            times: OrderingLabel::ALL.into_iter().zip(times).collect(),
        }
    }

    /// Timings of the renamed problem: the time of ordering `o` becomes the
    /// time of `o` permuted by `σ`.
    pub fn rename(&self, sigma: &VariablePermutation) -> TimingRecord {
        TimingRecord {
            instance_id: format!("{}#{}", self.instance_id, sigma.code()),
            times: self.times.iter().map(|(o, t)| (o.permute(sigma), *t)).collect(),
        }
    }
}

/// Fastest ordering, treating anything above `timeout` seconds as a timeout.
/// Records where every ordering timed out are discarded.
pub fn label_from_timings(rec: &TimingRecord, timeout: f64) -> Result<LabelOutcome> {
    let mut costs = [None; 6];
    for o in OrderingLabel::ALL {
        let t = rec.times.get(&o).ok_or_else(|| Error::MissingOrdering {
            id: rec.instance_id.clone(),
            ordering: o,
        })?;
        costs[o.index()] = match *t {
            Timing::Seconds(s) if s <= timeout => Some(s),
            _ => None,
        };
    }
    Ok(argmin_ordering(&costs))
}

/// Reads `instance_id,ordering,seconds` rows, grouped per instance.
pub fn read_timings_csv<R: Read>(r: R) -> Result<BTreeMap<String, TimingRecord>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let headers = reader.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["instance_id", "ordering", "seconds"] {
        return Err(Error::Data(format!(
            "timings header must be `instance_id,ordering,seconds`, got `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut out: BTreeMap<String, TimingRecord> = BTreeMap::new();
    for row in reader.records() {
        let row = row?;
        let id = row[0].to_string();
        let ordering: OrderingLabel = row[1].parse()?;
        let timing = Timing::parse(&row[2])?;
        let rec = out.entry(id.clone()).or_insert_with(|| TimingRecord {
            instance_id: id.clone(),
            times: BTreeMap::new(),
        });
        if rec.times.insert(ordering, timing).is_some() {
            return Err(Error::Data(format!("duplicate timing for `{id}` ordering {ordering}")));
        }
    }
    Ok(out)
}

pub fn write_timings_csv<W: Write>(w: W, records: &[TimingRecord]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(w);
    writer.write_record(["instance_id", "ordering", "seconds"])?;
    for rec in records {
        for (o, t) in &rec.times {
            let secs = match t {
                Timing::Seconds(s) => s.to_string(),
                Timing::Timeout => "TIMEOUT".to_string(),
            };
            writer.write_record([rec.instance_id.as_str(), &o.to_string(), &secs])?;
        }
    }
    writer.flush()?;
    Ok(())
}

/// Labels instances from their recorded timings.
#[derive(Debug, Clone)]
pub struct TimingsLabeller {
    pub records: HashMap<String, TimingRecord>,
    pub timeout: f64,
}

impl TimingsLabeller {
    pub fn new(records: impl IntoIterator<Item = TimingRecord>, timeout: f64) -> Self {
        TimingsLabeller {
            records: records.into_iter().map(|r| (r.instance_id.clone(), r)).collect(),
            timeout,
        }
    }
}

impl Labeller for TimingsLabeller {
    fn label(&self, instance: &ProblemInstance) -> Result<LabelOutcome> {
        let rec = instance
            .timings
            .as_ref()
            .or_else(|| self.records.get(&instance.id))
            .ok_or_else(|| Error::Data(format!("no timing record for `{}`", instance.id)))?;
        label_from_timings(rec, self.timeout)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Timing::{Seconds as S, Timeout as T};

    fn label(times: [Timing; 6]) -> LabelOutcome {
        label_from_timings(&TimingRecord::new("r", times), 60.0).unwrap()
    }

    #[test]
    fn argmin_over_finished_orderings() {
        assert_eq!(label([S(1.2), T, S(0.5), S(3.0), S(7.0), S(9.0)]).label().unwrap().index(), 2);
    }

    #[test]
    fn all_timeouts_discard() {
        assert_eq!(label([T; 6]), LabelOutcome::Discard);
        // over the threshold counts as a timeout
        assert_eq!(label([S(61.0), T, T, T, T, S(75.0)]), LabelOutcome::Discard);
    }

    #[test]
    fn ties_go_to_lowest_index() {
        assert_eq!(label([S(0.5), S(0.5), S(1.0), S(1.0), S(1.0), S(1.0)]).label().unwrap().index(), 0);
    }

    #[test]
    fn missing_ordering_is_an_error() {
        let mut rec = TimingRecord::new("r", [S(1.0); 6]);
        rec.times.remove(&OrderingLabel::ALL[3]);
        assert!(matches!(label_from_timings(&rec, 60.0), Err(Error::MissingOrdering { .. })));
    }

    #[test]
    fn csv_round_trip_and_validation() {
        let recs = vec![TimingRecord::new("a", [S(1.5), T, S(0.25), S(3.0), T, S(9.0)])];
        let mut buf = Vec::new();
        write_timings_csv(&mut buf, &recs).unwrap();
        let back = read_timings_csv(buf.as_slice()).unwrap();
        assert_eq!(back["a"], recs[0]);

        let bad = "instance_id,ordering,seconds\na,0,-1\n";
        assert!(read_timings_csv(bad.as_bytes()).is_err());
        let bad = "instance_id,ordering,seconds\na,6,1\n";
        assert!(read_timings_csv(bad.as_bytes()).is_err());
        let bad = "id,ord,sec\n";
        assert!(read_timings_csv(bad.as_bytes()).is_err());
    }

    #[test]
    fn renamed_record_relabels_consistently() {
        let rec = TimingRecord::new("a", [S(4.0), S(2.0), S(3.0), S(0.5), S(9.0), T]);
        let base = label_from_timings(&rec, 60.0).unwrap().label().unwrap();
        for sigma in VariablePermutation::all() {
            let l = label_from_timings(&rec.rename(&sigma), 60.0).unwrap().label().unwrap();
            assert_eq!(l, base.permute(&sigma));
        }
    }
}
