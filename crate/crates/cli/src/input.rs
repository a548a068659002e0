//! Instance readers: the native JSON schema and DIMACS CNF.

use std::collections::BTreeSet;
use std::path::Path;

use serde::Deserialize;

use imp_core::csp::{Constraint, ConstraintLanguage, CspInstance, Relation};

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dimacs,
}

pub fn infer_format(path: &Path) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("cnf") | Some("dimacs") => Format::Dimacs,
        _ => Format::Json,
    }
}

#[derive(Deserialize)]
struct JsonRelation {
    name: String,
    arity: usize,
    tuples: Vec<Vec<u8>>,
}

#[derive(Deserialize)]
struct JsonConstraint {
    relation: String,
    scope: Vec<u32>,
}

#[derive(Deserialize)]
struct JsonInstance {
    num_vars: u32,
    relations: Vec<JsonRelation>,
    constraints: Vec<JsonConstraint>,
}

pub fn parse_instance(
    path: &Path,
    format: Format,
) -> Result<(CspInstance, ConstraintLanguage), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    match format {
        Format::Json => parse_json(&text),
        Format::Dimacs => parse_dimacs(&text),
    }
}

fn parse_json(text: &str) -> Result<(CspInstance, ConstraintLanguage), String> {
    let raw: JsonInstance = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let mut relations = Vec::new();
    for r in raw.relations {
        for t in &r.tuples {
            if t.len() != r.arity {
                return Err(format!(
                    "relation {}: tuple length {} does not match arity {}",
                    r.name,
                    t.len(),
                    r.arity
                ));
            }
            if t.iter().any(|&b| b > 1) {
                return Err(format!("relation {}: tuples must be 0/1", r.name));
            }
        }
        relations.push(Relation::new(
            r.name,
            r.arity,
            r.tuples.iter().map(|t| t.iter().map(|&b| b == 1).collect()),
        ));
    }
    let lang = ConstraintLanguage::new(relations);
    let constraints = raw
        .constraints
        .into_iter()
        .map(|c| Constraint { relation: c.relation, scope: c.scope })
        .collect();
    Ok((CspInstance::new(raw.num_vars, constraints), lang))
}

/// Each distinct polarity pattern becomes one relation "or<k>_<pattern>",
/// whose tuples are exactly the assignments satisfying the clause shape.
fn parse_dimacs(text: &str) -> Result<(CspInstance, ConstraintLanguage), String> {
    let mut num_vars: Option<u32> = None;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if fields.len() != 3 || fields[0] != "cnf" {
                return Err(format!("bad problem line: {line}"));
            }
            num_vars = Some(fields[1].parse().map_err(|_| format!("bad var count: {line}"))?);
            continue;
        }
        for tok in line.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| format!("bad literal: {tok}"))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    let n = num_vars.ok_or("missing \"p cnf\" line")?;

    let mut lang = ConstraintLanguage::new([]);
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut constraints = Vec::new();
    for clause in &clauses {
        if clause.is_empty() {
            return Err("empty clause".into());
        }
        for &lit in clause {
            let v = lit.unsigned_abs() as u32;
            if v == 0 || v > n {
                return Err(format!("literal {lit} out of range 1..={n}"));
            }
        }
        let polarity: Vec<bool> = clause.iter().map(|&l| l > 0).collect();
        let pattern: String = polarity.iter().map(|&p| if p { 'p' } else { 'n' }).collect();
        let name = format!("or{}_{}", clause.len(), pattern);
        if seen.insert(name.clone()) {
            let k = clause.len();
            let tuples = (0..1u32 << k).filter_map(|bits| {
                let t: Vec<bool> = (0..k).map(|i| bits >> i & 1 == 1).collect();
                t.iter().zip(&polarity).any(|(&b, &p)| b == p).then_some(t)
            });
            lang.insert(Relation::new(name.clone(), k, tuples));
        }
        constraints.push(Constraint {
            relation: name,
            scope: clause.iter().map(|&l| l.unsigned_abs() as u32).collect(),
        });
    }
    Ok((CspInstance::new(n, constraints), lang))
}
