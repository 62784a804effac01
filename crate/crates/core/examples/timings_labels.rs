//! Labels instances from measured CAD timings: the fastest ordering wins,
//! and instances where every ordering exceeded the timeout are discarded.
//!
//! cargo run --example timings_labels -- [timings.csv] [timeout-seconds]

use cad_augment::labelling::{label_from_timings, read_timings_csv, write_timings_csv, Timing, TimingRecord};
use cad_augment::VariablePermutation;

fn main() -> cad_augment::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next();
    let timeout: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(60.0);

    let records = match &path {
        Some(p) => read_timings_csv(std::fs::File::open(p)?)?.into_values().collect(),
        None => {
            use Timing::{Seconds as S, Timeout as T};
            vec![
                TimingRecord::new("fast-x2-first", [S(4.1), S(9.3), S(0.8), S(1.2), S(30.0), T]),
                TimingRecord::new("hopeless", [T, T, T, S(75.0), T, T]),
                TimingRecord::new("tie", [S(2.0), S(2.0), S(5.0), T, S(3.5), S(2.5)]),
            ]
        }
    };
    if path.is_none() {
        let mut csv = Vec::new();
        write_timings_csv(&mut csv, &records[..1])?;
        print!("{}", String::from_utf8_lossy(&csv));
    }
    for rec in &records {
        let outcome = label_from_timings(rec, timeout)?;
        println!("{}: {outcome:?}", rec.instance_id);
        // renaming moves the label with the timings, except that a tie
        // always resolves to the lowest ordering index
        let sigma = VariablePermutation::all()[3];
        let renamed = label_from_timings(&rec.rename(&sigma), timeout)?;
        println!(
            "  renamed by {sigma}: {renamed:?}, moved label {:?}",
            outcome.label().map(|l| l.permute(&sigma))
        );
    }
    Ok(())
}
