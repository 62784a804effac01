use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::{BufRead, Write};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labelling::TimingRecord;
use crate::poly::{Coefficient, Monomial, Polynomial};
use crate::symmetry::{Variable, VariablePermutation};

/// A set of polynomials in `x1, x2, x3` drawn from one script.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    pub id: String,
    polynomials: BTreeSet<Polynomial>,
    /// Original name of each canonical variable, in declaration order.
    variable_map: Vec<(String, Variable)>,
    pub timings: Option<TimingRecord>,
}

impl ProblemInstance {
    /// Builds an instance from polynomials, removing duplicates.
    ///
    /// Fails unless the set is non-empty, free of zero polynomials and
    /// mentions all three variables.
    pub fn new(id: impl Into<String>, polys: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let id = id.into();
        let polynomials: BTreeSet<Polynomial> = polys.into_iter().collect();
        if polynomials.is_empty() {
            return Err(Error::Data(format!("instance `{id}` has no polynomials")));
        }
        if polynomials.iter().any(Polynomial::is_zero) {
            return Err(Error::Data(format!("instance `{id}` contains the zero polynomial")));
        }
        let used: Vec<Variable> = Variable::ALL
            .into_iter()
            .filter(|&v| polynomials.iter().any(|p| p.contains(v)))
            .collect();
        if used.len() != 3 {
            return Err(Error::VariableCount {
                found: used.len(),
                names: used.iter().map(ToString::to_string).collect(),
            });
        }
        let variable_map = Variable::ALL.iter().map(|v| (v.to_string(), *v)).collect();
        Ok(ProblemInstance {
            id,
            polynomials,
            variable_map,
            timings: None,
        })
    }

    pub fn with_variable_map(mut self, map: Vec<(String, Variable)>) -> Self {
        self.variable_map = map;
        self
    }

    pub fn polynomials(&self) -> &BTreeSet<Polynomial> {
        &self.polynomials
    }

    pub fn variable_map(&self) -> &[(String, Variable)] {
        &self.variable_map
    }

    /// The same problem with every variable `v` renamed to `σ(v)`. The id
    /// gets a `#<σ>` suffix and the variable map follows the renaming.
    pub fn rename(&self, sigma: &VariablePermutation) -> ProblemInstance {
        ProblemInstance {
            id: format!("{}#{}", self.id, sigma.code()),
            polynomials: self.polynomials.iter().map(|p| p.rename(sigma)).collect(),
            variable_map: self
                .variable_map
                .iter()
                .map(|(n, v)| (n.clone(), sigma.apply(*v)))
                .collect(),
            timings: self.timings.as_ref().map(|t| t.rename(sigma)),
        }
    }

    /// Renders the instance as a script asserting `p = 0` for each polynomial.
    pub fn to_smtlib(&self) -> String {
        let mut s = String::from("(set-logic QF_NRA)\n");
        for v in Variable::ALL {
            let _ = writeln!(s, "(declare-fun {v} () Real)");
        }
        for p in &self.polynomials {
            let _ = writeln!(s, "(assert (= {} 0))", smt_term(p));
        }
        s.push_str("(check-sat)\n");
        s
    }

    pub fn to_record(&self) -> InstanceRecord {
        InstanceRecord {
            id: self.id.clone(),
            polys: self
                .polynomials
                .iter()
                .map(|p| {
                    p.terms()
                        .map(|(m, c)| (c.numer().to_string(), c.denom().to_string(), m.exponents()))
                        .collect()
                })
                .collect(),
            varmap: self.variable_map.iter().map(|(n, v)| (n.clone(), v.to_string())).collect(),
        }
    }

    pub fn from_record(rec: InstanceRecord) -> Result<Self> {
        let mut polys = Vec::with_capacity(rec.polys.len());
        for terms in &rec.polys {
            let mut ts = Vec::with_capacity(terms.len());
            for (num, den, exps) in terms {
                let num: BigInt = num.parse().map_err(|_| Error::Data(format!("bad numerator `{num}`")))?;
                let den: BigInt = den.parse().map_err(|_| Error::Data(format!("bad denominator `{den}`")))?;
                if den == BigInt::from(0) {
                    return Err(Error::Data("zero denominator".into()));
                }
                ts.push((Coefficient::new(num, den), Monomial::new(*exps)));
            }
            polys.push(Polynomial::from_terms(ts));
        }
        let mut varmap = Vec::with_capacity(rec.varmap.len());
        for (name, v) in rec.varmap {
            varmap.push((name, v.parse::<Variable>()?));
        }
        varmap.sort_by_key(|(_, v)| *v);
        Ok(ProblemInstance::new(rec.id, polys)?.with_variable_map(varmap))
    }
}

fn smt_rational(c: &Coefficient) -> String {
    let n = c.numer().magnitude().to_string();
    let body = if c.is_integer() {
        n
    } else {
        format!("(/ {n} {})", c.denom())
    };
    if c.numer().sign() == num_bigint::Sign::Minus {
        format!("(- {body})")
    } else {
        body
    }
}

pub(crate) fn smt_term(p: &Polynomial) -> String {
    let terms: Vec<String> = p
        .terms()
        .rev()
        .map(|(m, c)| {
            let mut factors = vec![smt_rational(c)];
            for v in Variable::ALL {
                for _ in 0..m.degree_of(v) {
                    factors.push(v.to_string());
                }
            }
            format!("(* {})", factors.join(" "))
        })
        .collect();
    match terms.len() {
        1 => terms.into_iter().next().unwrap(),
        _ => format!("(+ {})", terms.join(" ")),
    }
}

/// One line of the instance JSONL file. Terms are
/// `[numerator, denominator, [e1, e2, e3]]` with exact decimal integers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub id: String,
    pub polys: Vec<Vec<(String, String, [u32; 3])>>,
    pub varmap: BTreeMap<String, String>,
}

pub fn write_jsonl<W: Write>(mut w: W, instances: &[ProblemInstance]) -> Result<()> {
    for inst in instances {
        serde_json::to_writer(&mut w, &inst.to_record())?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_jsonl<R: BufRead>(r: R) -> Result<Vec<ProblemInstance>> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: InstanceRecord = serde_json::from_str(&line)
            .map_err(|e| Error::Data(format!("line {}: {e}", i + 1)))?;
        out.push(ProblemInstance::from_record(rec)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smtlib::parse_script;

    fn sample() -> ProblemInstance {
        let s = "(declare-fun a () Real)(declare-fun b () Real)(declare-fun c () Real)\
                 (assert (or (> (* a a b) (/ 3 7)) (< (- c) (* 2.25 a c c))))";
        parse_script("sample", s).unwrap()
    }

    #[test]
    fn smtlib_rendering_round_trips() {
        let inst = sample();
        let again = parse_script("sample", &inst.to_smtlib()).unwrap();
        assert_eq!(again.polynomials(), inst.polynomials());
    }

    #[test]
    fn jsonl_round_trips() {
        let inst = sample();
        let mut buf = Vec::new();
        write_jsonl(&mut buf, std::slice::from_ref(&inst)).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("{\"id\":\"sample\",\"polys\":[[["));
        let back = read_jsonl(buf.as_slice()).unwrap();
        assert_eq!(back, vec![inst]);
    }

    #[test]
    fn rejects_invalid_sets() {
        let p: Polynomial = "x1 + x2".parse().unwrap();
        assert!(ProblemInstance::new("e", Vec::new()).is_err());
        assert!(matches!(ProblemInstance::new("two", [p.clone()]), Err(Error::VariableCount { .. })));
        assert!(ProblemInstance::new("z", [p, Polynomial::zero(), Polynomial::var(Variable::X3)]).is_err());
    }
}
