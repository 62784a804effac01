//! Evaluation of QF_NRA commands into raw polynomial atoms.
//!
//! Terms are evaluated over the declared constants (indexed by declaration
//! order). Boolean structure is walked but discarded: each relational atom
//! contributes `lhs - rhs`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::sexpr::{parse_error, AtomKind, Pos, SExpr};
use crate::error::{Error, Result};
use crate::poly::Coefficient;

/// Polynomial over the declared constants; exponent vectors are indexed by
/// declaration position.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawPoly {
    pub terms: BTreeMap<Vec<u32>, Coefficient>,
}

impl RawPoly {
    fn constant(c: Coefficient) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        RawPoly { terms }
    }

    fn var(index: usize) -> Self {
        let mut exps = vec![0; index + 1];
        exps[index] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, Coefficient::one());
        RawPoly { terms }
    }

    fn add_term(&mut self, mut exps: Vec<u32>, c: Coefficient) {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        let slot = self.terms.entry(exps).or_insert_with(Coefficient::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    fn add(&self, other: &RawPoly, sign: bool) -> RawPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), if sign { c.clone() } else { -c.clone() });
        }
        out
    }

    fn mul(&self, other: &RawPoly) -> RawPoly {
        let mut out = RawPoly::default();
        for (ea, a) in &self.terms {
            for (eb, b) in &other.terms {
                let n = ea.len().max(eb.len());
                let exps = (0..n)
                    .map(|i| ea.get(i).unwrap_or(&0) + eb.get(i).unwrap_or(&0))
                    .collect();
                out.add_term(exps, a * b);
            }
        }
        out
    }

    fn scale(&self, c: &Coefficient) -> RawPoly {
        RawPoly {
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    fn as_constant(&self) -> Option<Coefficient> {
        match self.terms.len() {
            0 => Some(Coefficient::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Declaration indices of the constants that occur with positive degree.
    pub fn used_variables(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms
            .keys()
            .flat_map(|e| e.iter().enumerate().filter(|(_, &d)| d > 0).map(|(i, _)| i))
    }
}

/// A relational atom `lhs ⋈ rhs` reduced to `lhs - rhs`.
#[derive(Debug, Clone)]
pub struct RawAtom {
    pub poly: RawPoly,
    pub pos: Pos,
}

#[derive(Debug, Clone)]
enum Value {
    Term(RawPoly),
    Formula(Vec<RawAtom>),
}

/// Result of evaluating a whole script.
#[derive(Debug, Default)]
pub struct RawScript {
    /// Real constants in declaration order.
    pub declarations: Vec<String>,
    pub atoms: Vec<RawAtom>,
}

pub fn evaluate_script(commands: &[SExpr]) -> Result<RawScript> {
    let mut ev = Evaluator::default();
    for cmd in commands {
        ev.command(cmd)?;
    }
    Ok(RawScript {
        declarations: ev.declarations,
        atoms: ev.atoms,
    })
}

#[derive(Default)]
struct Evaluator {
    declarations: Vec<String>,
    index: HashMap<String, usize>,
    /// Nullary `define-fun` macros.
    definitions: HashMap<String, Value>,
    scopes: Vec<HashMap<String, Value>>,
    atoms: Vec<RawAtom>,
}

fn unsupported(pos: Pos, message: impl Into<String>) -> Error {
    Error::Unsupported {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

impl Evaluator {
    fn command(&mut self, cmd: &SExpr) -> Result<()> {
        let SExpr::List { items, pos } = cmd else {
            return Err(parse_error(cmd.pos(), "expected a command"));
        };
        let pos = *pos;
        let head = items
            .first()
            .and_then(SExpr::symbol)
            .ok_or_else(|| parse_error(pos, "expected a command name"))?;
        match head {
            "set-logic" | "set-info" | "set-option" | "check-sat" | "exit" | "get-model" | "get-info"
            | "get-value" | "get-option" | "echo" | "get-assertions" | "get-unsat-core" => Ok(()),
            "declare-fun" => {
                let [_, name, SExpr::List { items: args, .. }, sort] = items.as_slice() else {
                    return Err(parse_error(pos, "malformed declare-fun"));
                };
                if !args.is_empty() {
                    return Err(unsupported(pos, "uninterpreted functions of positive arity"));
                }
                self.declare(name, sort)
            }
            "declare-const" => {
                let [_, name, sort] = items.as_slice() else {
                    return Err(parse_error(pos, "malformed declare-const"));
                };
                self.declare(name, sort)
            }
            "define-fun" => {
                let [_, name, SExpr::List { items: args, .. }, sort, body] = items.as_slice() else {
                    return Err(parse_error(pos, "malformed define-fun"));
                };
                if !args.is_empty() {
                    return Err(unsupported(pos, "define-fun with parameters"));
                }
                let name = name.symbol().ok_or_else(|| parse_error(pos, "expected a symbol"))?;
                let value = self.eval(body)?;
                match (sort.symbol(), &value) {
                    (Some("Real"), Value::Term(_)) | (Some("Bool"), Value::Formula(_)) => {}
                    _ => return Err(unsupported(pos, "define-fun sort must be Real or Bool and match its body")),
                }
                self.definitions.insert(name.to_string(), value);
                Ok(())
            }
            "assert" => {
                let [_, body] = items.as_slice() else {
                    return Err(parse_error(pos, "malformed assert"));
                };
                match self.eval(body)? {
                    Value::Formula(atoms) => {
                        self.atoms.extend(atoms);
                        Ok(())
                    }
                    Value::Term(_) => Err(parse_error(body.pos(), "assertion is not Boolean")),
                }
            }
            other => Err(unsupported(pos, format!("command `{other}`"))),
        }
    }

    fn declare(&mut self, name: &SExpr, sort: &SExpr) -> Result<()> {
        let pos = name.pos();
        let name = name.symbol().ok_or_else(|| parse_error(pos, "expected a symbol"))?;
        match sort.symbol() {
            Some("Real") => {}
            Some("Bool") => {
                // Boolean constants carry no polynomial; treat as opaque formulas.
                self.definitions.insert(name.to_string(), Value::Formula(Vec::new()));
                return Ok(());
            }
            _ => return Err(unsupported(sort.pos(), "only Real and Bool sorts are supported")),
        }
        if self.index.contains_key(name) {
            return Err(parse_error(pos, format!("`{name}` declared twice")));
        }
        self.index.insert(name.to_string(), self.declarations.len());
        self.declarations.push(name.to_string());
        Ok(())
    }

    fn lookup(&self, name: &str) -> Option<Value> {
        for scope in self.scopes.iter().rev() {
            if let Some(v) = scope.get(name) {
                return Some(v.clone());
            }
        }
        if let Some(v) = self.definitions.get(name) {
            return Some(v.clone());
        }
        self.index.get(name).map(|&i| Value::Term(RawPoly::var(i)))
    }

    fn eval(&mut self, e: &SExpr) -> Result<Value> {
        match e {
            SExpr::Atom { kind, text, pos } => match kind {
                AtomKind::Numeral => Ok(Value::Term(RawPoly::constant(Coefficient::from_integer(
                    text.parse::<BigInt>().expect("numeral token"),
                )))),
                AtomKind::Decimal => Ok(Value::Term(RawPoly::constant(decimal(text)))),
                AtomKind::Symbol => match text.as_str() {
                    "true" | "false" => Ok(Value::Formula(Vec::new())),
                    _ => self
                        .lookup(text)
                        .ok_or_else(|| parse_error(*pos, format!("undeclared symbol `{text}`"))),
                },
                AtomKind::BitLiteral | AtomKind::Str | AtomKind::Keyword => {
                    Err(unsupported(*pos, format!("literal `{text}`")))
                }
            },
            SExpr::List { items, pos } => self.eval_app(items, *pos),
        }
    }

    fn eval_app(&mut self, items: &[SExpr], pos: Pos) -> Result<Value> {
        let Some((head, args)) = items.split_first() else {
            return Err(parse_error(pos, "empty application"));
        };
        let Some(op) = head.symbol() else {
            return Err(unsupported(head.pos(), "indexed or qualified identifiers"));
        };
        match op {
            "let" => self.eval_let(args, pos),
            "!" => {
                let body = args.first().ok_or_else(|| parse_error(pos, "malformed annotation"))?;
                self.eval(body)
            }
            "forall" | "exists" => Err(unsupported(pos, format!("quantifier `{op}`"))),
            "and" | "or" | "not" | "=>" | "xor" | "ite" => {
                if op == "ite" {
                    let vals = self.eval_args(args)?;
                    if vals.iter().skip(1).any(|v| matches!(v, Value::Term(_))) {
                        return Err(unsupported(pos, "term-level ite"));
                    }
                    return formula(vals, pos);
                }
                let vals = self.eval_args(args)?;
                formula(vals, pos)
            }
            "<" | "<=" | ">" | ">=" | "=" | "distinct" => {
                let vals = self.eval_args(args)?;
                if vals.len() < 2 {
                    return Err(parse_error(pos, format!("`{op}` needs at least two arguments")));
                }
                if vals.iter().all(|v| matches!(v, Value::Formula(_))) && matches!(op, "=" | "distinct") {
                    return formula(vals, pos);
                }
                let terms = terms(vals, pos)?;
                let pairs: Vec<(usize, usize)> = if op == "distinct" {
                    (0..terms.len())
                        .flat_map(|i| (i + 1..terms.len()).map(move |j| (i, j)))
                        .collect()
                } else {
                    (1..terms.len()).map(|i| (i - 1, i)).collect()
                };
                let atoms = pairs
                    .into_iter()
                    .map(|(i, j)| RawAtom {
                        poly: terms[i].add(&terms[j], false),
                        pos,
                    })
                    .collect();
                Ok(Value::Formula(atoms))
            }
            "+" | "-" | "*" | "/" => {
                let vals = self.eval_args(args)?;
                let terms = terms(vals, pos)?;
                let Some((first, rest)) = terms.split_first() else {
                    return Err(parse_error(pos, format!("`{op}` needs arguments")));
                };
                let out = match op {
                    "+" => rest.iter().fold(first.clone(), |acc, t| acc.add(t, true)),
                    "-" if rest.is_empty() => first.scale(&-Coefficient::one()),
                    "-" => rest.iter().fold(first.clone(), |acc, t| acc.add(t, false)),
                    "*" => rest.iter().fold(first.clone(), |acc, t| acc.mul(t)),
                    _ => {
                        if rest.is_empty() {
                            return Err(parse_error(pos, "`/` needs two arguments"));
                        }
                        let mut acc = first.clone();
                        for t in rest {
                            match t.as_constant() {
                                Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                                Some(_) => return Err(unsupported(pos, "division by zero")),
                                None => return Err(unsupported(pos, "division by a non-numeric term")),
                            }
                        }
                        acc
                    }
                };
                Ok(Value::Term(out))
            }
            other => {
                if args.is_empty() {
                    return self.eval(head);
                }
                Err(unsupported(pos, format!("function symbol `{other}`")))
            }
        }
    }

    fn eval_args(&mut self, args: &[SExpr]) -> Result<Vec<Value>> {
        args.iter().map(|a| self.eval(a)).collect()
    }

    fn eval_let(&mut self, args: &[SExpr], pos: Pos) -> Result<Value> {
        let [SExpr::List { items: bindings, .. }, body] = args else {
            return Err(parse_error(pos, "malformed let"));
        };
        let mut scope = HashMap::new();
        for b in bindings {
            let SExpr::List { items, pos: bpos } = b else {
                return Err(parse_error(b.pos(), "malformed let binding"));
            };
            let [name, value] = items.as_slice() else {
                return Err(parse_error(*bpos, "malformed let binding"));
            };
            let name = name.symbol().ok_or_else(|| parse_error(*bpos, "expected a symbol"))?;
            // parallel binding: values see the enclosing scope only
            let v = self.eval(value)?;
            scope.insert(name.to_string(), v);
        }
        self.scopes.push(scope);
        let out = self.eval(body);
        self.scopes.pop();
        out
    }
}

fn formula(vals: Vec<Value>, pos: Pos) -> Result<Value> {
    let mut atoms = Vec::new();
    for v in vals {
        match v {
            Value::Formula(a) => atoms.extend(a),
            Value::Term(_) => return Err(parse_error(pos, "expected a Boolean argument")),
        }
    }
    Ok(Value::Formula(atoms))
}

fn terms(vals: Vec<Value>, pos: Pos) -> Result<Vec<RawPoly>> {
    vals.into_iter()
        .map(|v| match v {
            Value::Term(t) => Ok(t),
            Value::Formula(_) => Err(parse_error(pos, "expected a Real argument")),
        })
        .collect()
}

fn decimal(text: &str) -> Coefficient {
    let (int, frac) = text.split_once('.').expect("decimal token");
    let scale = BigInt::from(10u32).pow(frac.len() as u32);
    let digits: BigInt = format!("{int}{frac}").parse().expect("decimal digits");
    Coefficient::new(digits, scale)
}
