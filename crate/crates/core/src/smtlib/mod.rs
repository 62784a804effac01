//! Ingestion of QF_NRA SMT-LIB 2 scripts into polynomial problem instances.

mod instance;
mod sexpr;
mod translate;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::symmetry::Variable;

pub(crate) use instance::smt_term;
pub use instance::{read_jsonl, write_jsonl, InstanceRecord, ProblemInstance};
pub use sexpr::{read_all, AtomKind, Pos, SExpr};
pub use translate::{evaluate_script, RawAtom, RawPoly, RawScript};

/// Parses one script into a canonical problem instance.
pub fn parse_script(id: &str, text: &str) -> Result<ProblemInstance> {
    let commands = read_all(text)?;
    let raw = evaluate_script(&commands)?;
    canonicalize_variables(id, raw)
}

/// Renames the used real constants to `x1, x2, x3` in declaration order and
/// normalizes every atom polynomial to its primitive form.
pub fn canonicalize_variables(id: &str, raw: RawScript) -> Result<ProblemInstance> {
    let mut used = vec![false; raw.declarations.len()];
    for atom in &raw.atoms {
        for i in atom.poly.used_variables() {
            used[i] = true;
        }
    }
    let used_idx: Vec<usize> = (0..used.len()).filter(|&i| used[i]).collect();
    if used_idx.len() != 3 {
        return Err(Error::VariableCount {
            found: used_idx.len(),
            names: used_idx.iter().map(|&i| raw.declarations[i].clone()).collect(),
        });
    }
    let mut slot = BTreeMap::new();
    let mut variable_map = Vec::new();
    for (k, &i) in used_idx.iter().enumerate() {
        let v = Variable::ALL[k];
        slot.insert(i, v);
        variable_map.push((raw.declarations[i].clone(), v));
    }

    let mut polys = Vec::with_capacity(raw.atoms.len());
    for atom in &raw.atoms {
        if atom.poly.is_constant() {
            return Err(Error::ConstantAtom {
                line: atom.pos.line,
                column: atom.pos.column,
            });
        }
        let p = Polynomial::from_terms(atom.poly.terms.iter().map(|(exps, c)| {
            let mut e = [0u32; 3];
            for (i, &d) in exps.iter().enumerate() {
                if d > 0 {
                    e[slot[&i].pos()] = d;
                }
            }
            (c.clone(), Monomial::new(e))
        }));
        polys.push(p.primitive());
    }
    ProblemInstance::new(id, polys).map(|inst| inst.with_variable_map(variable_map))
}

/// Keeps the first instance of every group with identical polynomial sets.
pub fn dedup_syntactic(instances: Vec<ProblemInstance>) -> Vec<ProblemInstance> {
    let mut seen = std::collections::HashSet::new();
    instances
        .into_iter()
        .filter(|inst| seen.insert(inst.polynomials().clone()))
        .collect()
}

/// Outcome of ingesting a directory: parsed instances (in path order) and
/// the files that were rejected.
#[derive(Debug, Default)]
pub struct Ingested {
    pub instances: Vec<ProblemInstance>,
    pub rejected: Vec<(PathBuf, Error)>,
}

/// `.smt2` files under `dir`, in lexicographic path order.
pub fn list_scripts(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in walkdir::WalkDir::new(dir).sort_by_file_name() {
        let entry = entry.map_err(|e| Error::Io(e.into()))?;
        if entry.file_type().is_file() && entry.path().extension().is_some_and(|x| x == "smt2") {
            files.push(entry.into_path());
        }
    }
    files.sort();
    Ok(files)
}

/// Instance id of a script: its path relative to the corpus root without
/// extension (the file stem for flat directories).
pub fn instance_id(root: &Path, file: &Path) -> String {
    let rel = file.strip_prefix(root).unwrap_or(file).with_extension("");
    rel.components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}

/// Parses every script under `dir` in parallel; output order follows the
/// sorted file list. Rejected files are logged and collected.
pub fn ingest_dir(dir: &Path) -> Result<Ingested> {
    let files = list_scripts(dir)?;
    let results: Vec<_> = files
        .par_iter()
        .map(|f| {
            let id = instance_id(dir, f);
            std::fs::read_to_string(f)
                .map_err(Error::from)
                .and_then(|text| parse_script(&id, &text))
        })
        .collect();
    let mut out = Ingested::default();
    for (f, r) in files.into_iter().zip(results) {
        match r {
            Ok(inst) => out.instances.push(inst),
            Err(e) => {
                log::warn!("skipping {}: {e}", f.display());
                out.rejected.push((f, e));
            }
        }
    }
    Ok(out)
}
