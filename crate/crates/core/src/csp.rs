//! Boolean relations and constraint languages: polymorphism detection, the
//! tractability classification, entailed-clause extraction, and
//! class-specific satisfiability solvers with partial-assignment support.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use crate::{Error, Result};

/// Default variable cap for the exhaustive-search fallback.
pub const FALLBACK_VAR_LIMIT: u32 = 20;

/// An extensional Boolean relation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Relation {
    pub name: String,
    pub arity: usize,
    tuples: BTreeSet<Vec<bool>>,
}

impl Relation {
    pub fn new(name: impl Into<String>, arity: usize, tuples: impl IntoIterator<Item = Vec<bool>>) -> Self {
        let tuples: BTreeSet<Vec<bool>> = tuples.into_iter().collect();
        for t in &tuples {
            assert_eq!(t.len(), arity, "tuple length must equal arity");
        }
        Relation { name: name.into(), arity, tuples }
    }

    /// Build from 0/1 integer rows, a convenience for tests and parsers.
    pub fn from_rows(name: impl Into<String>, arity: usize, rows: &[&[u8]]) -> Self {
        Relation::new(
            name,
            arity,
            rows.iter().map(|r| r.iter().map(|&b| b != 0).collect()),
        )
    }

    pub fn tuples(&self) -> impl Iterator<Item = &Vec<bool>> {
        self.tuples.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn contains(&self, t: &[bool]) -> bool {
        self.tuples.contains(t)
    }
}

/// A named, finite collection of relations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintLanguage {
    relations: BTreeMap<String, Relation>,
}

impl ConstraintLanguage {
    pub fn new(relations: impl IntoIterator<Item = Relation>) -> Self {
        let mut map = BTreeMap::new();
        for r in relations {
            let prev = map.insert(r.name.clone(), r);
            assert!(prev.is_none(), "duplicate relation name");
        }
        ConstraintLanguage { relations: map }
    }

    pub fn get(&self, name: &str) -> Result<&Relation> {
        self.relations
            .get(name)
            .ok_or_else(|| Error::UnknownRelation(name.to_string()))
    }

    pub fn relations(&self) -> impl Iterator<Item = &Relation> {
        self.relations.values()
    }

    pub fn insert(&mut self, r: Relation) {
        self.relations.insert(r.name.clone(), r);
    }
}

/// One applied constraint: a relation name and a 1-based variable scope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub relation: String,
    pub scope: Vec<u32>,
}

/// A CSP instance over variables x1..xn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CspInstance {
    pub num_vars: u32,
    pub constraints: Vec<Constraint>,
}

impl CspInstance {
    pub fn new(num_vars: u32, constraints: Vec<Constraint>) -> Self {
        CspInstance { num_vars, constraints }
    }

    /// Check referential integrity against a language.
    pub fn validate(&self, lang: &ConstraintLanguage) -> Result<()> {
        for c in &self.constraints {
            let r = lang.get(&c.relation)?;
            if c.scope.len() != r.arity {
                return Err(Error::ArityMismatch {
                    name: c.relation.clone(),
                    want: r.arity,
                    got: c.scope.len(),
                });
            }
            for &v in &c.scope {
                if v < 1 || v > self.num_vars {
                    return Err(Error::VariableOutOfRange(v, self.num_vars));
                }
            }
        }
        Ok(())
    }

    /// True when the total assignment (index v−1 for variable v) satisfies
    /// every constraint.
    pub fn satisfied_by(&self, lang: &ConstraintLanguage, a: &[bool]) -> Result<bool> {
        for c in &self.constraints {
            let r = lang.get(&c.relation)?;
            let t: Vec<bool> = c.scope.iter().map(|&v| a[(v - 1) as usize]).collect();
            if !r.contains(&t) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A consistent set of variable pins.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct PartialAssignment {
    bindings: BTreeMap<u32, bool>,
}

impl PartialAssignment {
    pub fn new() -> Self {
        PartialAssignment::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, bool)>) -> Self {
        PartialAssignment { bindings: pairs.into_iter().collect() }
    }

    pub fn bind(&mut self, v: u32, value: bool) {
        self.bindings.insert(v, value);
    }

    pub fn get(&self, v: u32) -> Option<bool> {
        self.bindings.get(&v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, bool)> + '_ {
        self.bindings.iter().map(|(&v, &b)| (v, b))
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// True when the total assignment agrees with every pin.
    pub fn consistent_with(&self, a: &[bool]) -> bool {
        self.iter().all(|(v, b)| a[(v - 1) as usize] == b)
    }
}

/// The seven operations of the Boolean dichotomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Polymorphism {
    Const0,
    Const1,
    Negation,
    Min,
    Max,
    Majority,
    Minority,
}

pub const ALL_POLYMORPHISMS: [Polymorphism; 7] = [
    Polymorphism::Const0,
    Polymorphism::Const1,
    Polymorphism::Negation,
    Polymorphism::Min,
    Polymorphism::Max,
    Polymorphism::Majority,
    Polymorphism::Minority,
];

/// Where the dichotomy routes a language.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tractability {
    MajorityTract,
    MinTract,
    MaxTract,
    MinorityTract,
    /// Membership is coNP-hard already at the stated query degree.
    Hard(u8),
    /// Both constants, no negation, none of the four operations: the
    /// degree-1 complexity is open; degree 2 is hard.
    OpenImp1,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub polymorphisms: BTreeSet<Polymorphism>,
    pub tractability: Tractability,
}

impl Classification {
    pub fn has(&self, p: Polymorphism) -> bool {
        self.polymorphisms.contains(&p)
    }
}

fn apply_majority(a: bool, b: bool, c: bool) -> bool {
    (a & b) | (a & c) | (b & c)
}

fn apply_minority(a: bool, b: bool, c: bool) -> bool {
    a ^ b ^ c
}

/// Exhaustively test closure of a relation under one operation.
pub fn check_polymorphism(r: &Relation, op: Polymorphism) -> bool {
    let tuples: Vec<&Vec<bool>> = r.tuples().collect();
    match op {
        Polymorphism::Const0 => r.is_empty() || r.contains(&vec![false; r.arity]),
        Polymorphism::Const1 => r.is_empty() || r.contains(&vec![true; r.arity]),
        Polymorphism::Negation => tuples
            .iter()
            .all(|t| r.contains(&t.iter().map(|&b| !b).collect::<Vec<_>>())),
        Polymorphism::Min | Polymorphism::Max => {
            let f = |a: bool, b: bool| match op {
                Polymorphism::Min => a & b,
                _ => a | b,
            };
            tuples.iter().all(|s| {
                tuples.iter().all(|t| {
                    let image: Vec<bool> = s.iter().zip(t.iter()).map(|(&a, &b)| f(a, b)).collect();
                    r.contains(&image)
                })
            })
        }
        Polymorphism::Majority | Polymorphism::Minority => {
            let f = match op {
                Polymorphism::Majority => apply_majority,
                _ => apply_minority,
            };
            tuples.iter().all(|s| {
                tuples.iter().all(|t| {
                    tuples.iter().all(|u| {
                        let image: Vec<bool> = (0..r.arity).map(|i| f(s[i], t[i], u[i])).collect();
                        r.contains(&image)
                    })
                })
            })
        }
    }
}

/// Intersect polymorphisms over the language and derive the dichotomy route.
pub fn classify_language(lang: &ConstraintLanguage) -> Classification {
    let polymorphisms: BTreeSet<Polymorphism> = ALL_POLYMORPHISMS
        .into_iter()
        .filter(|&op| lang.relations().all(|r| check_polymorphism(r, op)))
        .collect();
    let has = |p| polymorphisms.contains(&p);
    let tractability = if has(Polymorphism::Majority) {
        Tractability::MajorityTract
    } else if has(Polymorphism::Min) {
        Tractability::MinTract
    } else if has(Polymorphism::Max) {
        Tractability::MaxTract
    } else if has(Polymorphism::Minority) {
        Tractability::MinorityTract
    } else if !has(Polymorphism::Const0) && !has(Polymorphism::Const1) {
        // Not even satisfiability is tractable.
        Tractability::Hard(0)
    } else if has(Polymorphism::Const0) != has(Polymorphism::Const1) {
        Tractability::Hard(1)
    } else if has(Polymorphism::Negation) {
        Tractability::Hard(1)
    } else {
        Tractability::OpenImp1
    };
    Classification { polymorphisms, tractability }
}

/// Clause shapes used by the structured encoders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClauseShape {
    /// At most two literals (2-SAT / Majority).
    Width2,
    /// At most one positive literal (Min).
    Horn,
    /// At most one negative literal (Max).
    DualHorn,
}

/// A disjunction of literals; `(index, true)` is the positive literal.
/// Indices are relation coordinates (0-based) in [`extract_clauses`] output
/// and 1-based variables elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    pub literals: Vec<(u32, bool)>,
}

impl Clause {
    pub fn satisfied_by(&self, t: &[bool]) -> bool {
        self.literals
            .iter()
            .any(|&(i, pos)| t[i as usize] == pos)
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }
}

fn shape_ok(lits: &[(u32, bool)], shape: ClauseShape) -> bool {
    match shape {
        ClauseShape::Width2 => lits.len() <= 2,
        ClauseShape::Horn => lits.iter().filter(|&&(_, pos)| pos).count() <= 1,
        ClauseShape::DualHorn => lits.iter().filter(|&&(_, pos)| !pos).count() <= 1,
    }
}

fn clause_candidates(arity: usize, shape: ClauseShape) -> Vec<Clause> {
    // All nonempty literal sets over distinct coordinates conforming to the
    // shape, tautology-free by construction (one polarity per coordinate).
    let mut out = Vec::new();
    let k = arity as u32;
    // Choose, per coordinate, absent / positive / negative.
    let mut pick = vec![0u8; arity];
    loop {
        let lits: Vec<(u32, bool)> = (0..k)
            .filter_map(|i| match pick[i as usize] {
                1 => Some((i, true)),
                2 => Some((i, false)),
                _ => None,
            })
            .collect();
        if !lits.is_empty() && shape_ok(&lits, shape) {
            out.push(Clause { literals: lits });
        }
        let mut i = 0;
        loop {
            if i == arity {
                return out;
            }
            pick[i] += 1;
            if pick[i] == 3 {
                pick[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

fn subsumes(a: &Clause, b: &Clause) -> bool {
    a.literals.iter().all(|l| b.literals.contains(l))
}

type ClauseCacheKey = (ClauseShape, usize, Vec<Vec<bool>>);

fn clause_cache() -> &'static Mutex<HashMap<ClauseCacheKey, Result<Vec<Clause>>>> {
    static CACHE: OnceLock<Mutex<HashMap<ClauseCacheKey, Result<Vec<Clause>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All shape-conforming clauses over the relation's coordinates that hold on
/// every tuple, subsumption-minimized; errors when their conjunction does not
/// reconstruct the relation (the closure precondition fails). An empty
/// relation yields the single empty clause.
pub fn extract_clauses(r: &Relation, shape: ClauseShape) -> Result<Vec<Clause>> {
    let key: ClauseCacheKey = (shape, r.arity, r.tuples().cloned().collect());
    if let Some(hit) = clause_cache().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let computed = extract_clauses_uncached(r, shape);
    clause_cache().lock().unwrap().insert(key, computed.clone());
    computed
}

fn extract_clauses_uncached(r: &Relation, shape: ClauseShape) -> Result<Vec<Clause>> {
    if r.is_empty() {
        return Ok(vec![Clause { literals: vec![] }]);
    }
    let entailed: Vec<Clause> = clause_candidates(r.arity, shape)
        .into_iter()
        .filter(|c| r.tuples().all(|t| c.satisfied_by(t)))
        .collect();
    let minimal: Vec<Clause> = entailed
        .iter()
        .filter(|c| {
            !entailed
                .iter()
                .any(|d| d.literals.len() < c.literals.len() && subsumes(d, c))
        })
        .cloned()
        .collect();
    // The conjunction must have truth table exactly R.
    for bits in 0..(1u32 << r.arity) {
        let t: Vec<bool> = (0..r.arity).map(|i| bits >> i & 1 == 1).collect();
        let sat = minimal.iter().all(|c| c.satisfied_by(&t));
        if sat != r.contains(&t) {
            return Err(Error::ShapeMismatch);
        }
    }
    Ok(minimal)
}

/// Map a coordinate clause onto a constraint scope, deduplicating literals;
/// `None` when the clause becomes a tautology.
pub fn instantiate_clause(c: &Clause, scope: &[u32]) -> Option<Clause> {
    let mut lits: Vec<(u32, bool)> = Vec::new();
    for &(i, pos) in &c.literals {
        let v = scope[i as usize];
        if lits.contains(&(v, !pos)) {
            return None;
        }
        if !lits.contains(&(v, pos)) {
            lits.push((v, pos));
        }
    }
    lits.sort_unstable();
    Some(Clause { literals: lits })
}

/// Variable-level clauses of a whole instance under one shape.
pub fn instance_clauses(
    inst: &CspInstance,
    lang: &ConstraintLanguage,
    shape: ClauseShape,
) -> Result<Vec<Clause>> {
    let mut out = BTreeSet::new();
    for c in &inst.constraints {
        let r = lang.get(&c.relation)?;
        for clause in extract_clauses(r, shape)? {
            if let Some(cl) = instantiate_clause(&clause, &c.scope) {
                out.insert(cl);
            }
        }
    }
    Ok(out.into_iter().collect())
}

enum Engine {
    TwoSat(Vec<Clause>),
    Horn(Vec<Clause>),
    DualHorn(Vec<Clause>),
    /// Rows (coefficient bitset over variables, rhs) of a GF(2) system.
    Affine(Vec<(Vec<bool>, bool)>),
    Exhaustive,
}

/// Reusable per-instance solver: clause extraction and system construction
/// happen once, then `solve`/`is_extendable` may be called with many partial
/// assignments.
pub struct SolverContext<'a> {
    inst: &'a CspInstance,
    lang: &'a ConstraintLanguage,
    engine: Engine,
    max_fallback_vars: u32,
}

impl<'a> SolverContext<'a> {
    pub fn new(
        inst: &'a CspInstance,
        lang: &'a ConstraintLanguage,
        cls: &Classification,
    ) -> Result<Self> {
        Self::with_limit(inst, lang, cls, FALLBACK_VAR_LIMIT)
    }

    pub fn with_limit(
        inst: &'a CspInstance,
        lang: &'a ConstraintLanguage,
        cls: &Classification,
        max_fallback_vars: u32,
    ) -> Result<Self> {
        inst.validate(lang)?;
        let engine = match cls.tractability {
            Tractability::MajorityTract => {
                Engine::TwoSat(instance_clauses(inst, lang, ClauseShape::Width2)?)
            }
            Tractability::MinTract => {
                Engine::Horn(instance_clauses(inst, lang, ClauseShape::Horn)?)
            }
            Tractability::MaxTract => {
                Engine::DualHorn(instance_clauses(inst, lang, ClauseShape::DualHorn)?)
            }
            Tractability::MinorityTract => Engine::Affine(affine_system(inst, lang)?),
            _ => Engine::Exhaustive,
        };
        Ok(SolverContext { inst, lang, engine, max_fallback_vars })
    }

    /// A full satisfying assignment extending `partial`, if any.
    pub fn solve(&self, partial: &PartialAssignment) -> Result<Option<Vec<bool>>> {
        let n = self.inst.num_vars as usize;
        let solution = match &self.engine {
            Engine::TwoSat(clauses) => solve_two_sat(n, clauses, partial),
            Engine::Horn(clauses) => solve_horn(n, clauses, partial, false),
            Engine::DualHorn(clauses) => solve_horn(n, clauses, partial, true),
            Engine::Affine(rows) => solve_affine(n, rows, partial),
            Engine::Exhaustive => {
                if self.inst.num_vars > self.max_fallback_vars {
                    return Err(Error::InstanceTooLarge(
                        self.inst.num_vars,
                        self.max_fallback_vars,
                    ));
                }
                let mut found = None;
                for bits in 0..(1u64 << n) {
                    let a: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
                    if partial.consistent_with(&a) && self.inst.satisfied_by(self.lang, &a)? {
                        found = Some(a);
                        break;
                    }
                }
                found
            }
        };
        if let Some(a) = &solution {
            debug_assert!(self.inst.satisfied_by(self.lang, a)?);
            debug_assert!(partial.consistent_with(a));
        }
        Ok(solution)
    }

    pub fn is_extendable(&self, partial: &PartialAssignment) -> Result<bool> {
        Ok(self.solve(partial)?.is_some())
    }
}

/// One-shot wrapper over [`SolverContext`].
pub fn solve(
    inst: &CspInstance,
    lang: &ConstraintLanguage,
    partial: &PartialAssignment,
    cls: &Classification,
) -> Result<Option<Vec<bool>>> {
    SolverContext::new(inst, lang, cls)?.solve(partial)
}

pub fn is_extendable(
    inst: &CspInstance,
    lang: &ConstraintLanguage,
    partial: &PartialAssignment,
    cls: &Classification,
) -> Result<bool> {
    Ok(solve(inst, lang, partial, cls)?.is_some())
}

/// 2-SAT by implication-graph strongly connected components (Kosaraju).
fn solve_two_sat(n: usize, clauses: &[Clause], partial: &PartialAssignment) -> Option<Vec<bool>> {
    // Node 2v is "xv+1 true", 2v+1 is "xv+1 false".
    let node = |v: usize, pos: bool| 2 * v + usize::from(!pos);
    let mut adj = vec![Vec::new(); 2 * n];
    let mut radj = vec![Vec::new(); 2 * n];
    let add = |from: usize, to: usize, adj: &mut Vec<Vec<usize>>, radj: &mut Vec<Vec<usize>>| {
        adj[from].push(to);
        radj[to].push(from);
    };
    let unit = |v: usize, pos: bool, adj: &mut Vec<Vec<usize>>, radj: &mut Vec<Vec<usize>>| {
        add(node(v, !pos), node(v, pos), adj, radj);
    };
    for c in clauses {
        match c.literals.as_slice() {
            [] => return None,
            &[(v, pos)] => unit((v - 1) as usize, pos, &mut adj, &mut radj),
            &[(v, vp), (w, wp)] => {
                let (v, w) = ((v - 1) as usize, (w - 1) as usize);
                add(node(v, !vp), node(w, wp), &mut adj, &mut radj);
                add(node(w, !wp), node(v, vp), &mut adj, &mut radj);
            }
            _ => unreachable!("width-2 clause with more than two literals"),
        }
    }
    for (v, b) in partial.iter() {
        unit((v - 1) as usize, b, &mut adj, &mut radj);
    }

    // Kosaraju: order by finish time, then reverse sweep.
    let m = 2 * n;
    let mut order = Vec::with_capacity(m);
    let mut seen = vec![false; m];
    for s in 0..m {
        if seen[s] {
            continue;
        }
        let mut stack = vec![(s, 0usize)];
        seen[s] = true;
        while let Some(&mut (u, ref mut i)) = stack.last_mut() {
            if *i < adj[u].len() {
                let w = adj[u][*i];
                *i += 1;
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(u);
                stack.pop();
            }
        }
    }
    let mut comp = vec![usize::MAX; m];
    let mut c = 0;
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = c;
        while let Some(u) = stack.pop() {
            for &w in &radj[u] {
                if comp[w] == usize::MAX {
                    comp[w] = c;
                    stack.push(w);
                }
            }
        }
        c += 1;
    }
    let mut a = vec![false; n];
    for v in 0..n {
        let (t, f) = (comp[node(v, true)], comp[node(v, false)]);
        if t == f {
            return None;
        }
        // Kosaraju numbers components in topological order; choosing the
        // literal whose component comes later respects every implication.
        a[v] = t > f;
    }
    Some(a)
}

/// Horn (least model) and, via `flip`, dual-Horn (greatest model) solving
/// with pinned variables.
fn solve_horn(n: usize, clauses: &[Clause], partial: &PartialAssignment, flip: bool) -> Option<Vec<bool>> {
    // Under `flip` we solve the bitwise complement problem: dual-Horn clauses
    // on x are Horn clauses on ¬x.
    let pin = |b: bool| b != flip;
    let mut forced = vec![false; n]; // "true" in the flipped space
    let mut queue: Vec<usize> = Vec::new();
    for (v, b) in partial.iter() {
        if pin(b) {
            let i = (v - 1) as usize;
            if !forced[i] {
                forced[i] = true;
                queue.push(i);
            }
        }
    }
    let lit = |&(v, pos): &(u32, bool)| ((v - 1) as usize, pos != flip);
    // Unit propagation to the least model containing the pins.
    loop {
        let mut changed = false;
        for c in clauses {
            if c.is_empty() {
                return None;
            }
            let mut head: Option<usize> = None;
            let mut satisfied = false;
            let mut all_body_forced = true;
            for l in &c.literals {
                let (i, pos) = lit(l);
                if pos {
                    if forced[i] {
                        satisfied = true;
                        break;
                    }
                    head = Some(i);
                } else if !forced[i] {
                    all_body_forced = false;
                }
            }
            if satisfied || !all_body_forced {
                continue;
            }
            match head {
                Some(i) => {
                    if !forced[i] {
                        forced[i] = true;
                        changed = true;
                    }
                }
                // All-negative clause with every variable forced true.
                None => return None,
            }
        }
        if !changed {
            break;
        }
    }
    // Pins to the non-default value must not clash with the closure.
    for (v, b) in partial.iter() {
        if !pin(b) && forced[(v - 1) as usize] {
            return None;
        }
    }
    let a: Vec<bool> = (0..n).map(|i| forced[i] != flip).collect();
    // Minimality makes this check complete: a violated clause here means the
    // instance has no solution above the pins.
    for c in clauses {
        if !c.satisfied_by_vars(&a) {
            return None;
        }
    }
    Some(a)
}

impl Clause {
    /// Evaluate against a 1-based variable assignment.
    fn satisfied_by_vars(&self, a: &[bool]) -> bool {
        self.literals
            .iter()
            .any(|&(v, pos)| a[(v - 1) as usize] == pos)
    }
}

/// All parity constraints a·y = b valid on every tuple of every constraint,
/// lifted to instance variables.
fn affine_system(inst: &CspInstance, lang: &ConstraintLanguage) -> Result<Vec<(Vec<bool>, bool)>> {
    let n = inst.num_vars as usize;
    let mut rows = Vec::new();
    for c in &inst.constraints {
        let r = lang.get(&c.relation)?;
        if r.is_empty() {
            rows.push((vec![false; n], true)); // 0 = 1
            continue;
        }
        let k = r.arity;
        for mask in 0..(1u32 << k) {
            for rhs in [false, true] {
                if mask == 0 && !rhs {
                    continue;
                }
                let holds = r.tuples().all(|t| {
                    let parity = (0..k).fold(false, |acc, i| acc ^ (mask >> i & 1 == 1 && t[i]));
                    parity == rhs
                });
                if holds {
                    let mut row = vec![false; n];
                    for i in 0..k {
                        if mask >> i & 1 == 1 {
                            row[(c.scope[i] - 1) as usize] ^= true;
                        }
                    }
                    rows.push((row, rhs));
                }
            }
        }
    }
    Ok(rows)
}

/// Gaussian elimination over GF(2) with pinned variables.
fn solve_affine(
    n: usize,
    rows: &[(Vec<bool>, bool)],
    partial: &PartialAssignment,
) -> Option<Vec<bool>> {
    let mut system: Vec<(Vec<bool>, bool)> = rows.to_vec();
    for (v, b) in partial.iter() {
        let mut row = vec![false; n];
        row[(v - 1) as usize] = true;
        system.push((row, b));
    }
    let mut pivot_of = vec![usize::MAX; n];
    let mut reduced: Vec<(Vec<bool>, bool)> = Vec::new();
    for (mut row, mut rhs) in system {
        for &(ref pr, prb) in reduced.iter() {
            let p = pr.iter().position(|&x| x).unwrap();
            if row[p] {
                for i in 0..n {
                    row[i] ^= pr[i];
                }
                rhs ^= prb;
            }
        }
        match row.iter().position(|&x| x) {
            Some(p) => {
                pivot_of[p] = reduced.len();
                reduced.push((row, rhs));
            }
            None => {
                if rhs {
                    return None; // 0 = 1
                }
            }
        }
    }
    // Back-substitute with free variables set to 0.
    let mut a = vec![false; n];
    for (row, rhs) in reduced.iter().rev() {
        let p = row.iter().position(|&x| x).unwrap();
        let mut val = *rhs;
        for i in (p + 1)..n {
            if row[i] {
                val ^= a[i];
            }
        }
        a[p] = val;
    }
    Some(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn implication() -> Relation {
        Relation::from_rows("imp", 2, &[&[0, 0], &[0, 1], &[1, 1]])
    }

    fn nae() -> Relation {
        Relation::from_rows(
            "nae",
            3,
            &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 0]],
        )
    }

    #[test]
    fn polymorphisms_of_implication() {
        let r = implication();
        assert!(check_polymorphism(&r, Polymorphism::Min));
        assert!(check_polymorphism(&r, Polymorphism::Max));
        assert!(check_polymorphism(&r, Polymorphism::Majority));
        assert!(check_polymorphism(&r, Polymorphism::Const0));
        assert!(check_polymorphism(&r, Polymorphism::Const1));
        // Witness (0,0),(0,1),(1,1) maps to (1,0) under Minority.
        assert!(!check_polymorphism(&r, Polymorphism::Minority));
    }

    #[test]
    fn all_equal_relations_pass_idempotent_ops() {
        let r = Relation::from_rows("eq3", 3, &[&[0, 0, 0], &[1, 1, 1]]);
        for op in [
            Polymorphism::Min,
            Polymorphism::Max,
            Polymorphism::Majority,
            Polymorphism::Minority,
        ] {
            assert!(check_polymorphism(&r, op));
        }
    }

    #[test]
    fn classify_cases() {
        let c = classify_language(&ConstraintLanguage::new([implication()]));
        assert_eq!(c.tractability, Tractability::MajorityTract);
        assert!(c.has(Polymorphism::Min) && c.has(Polymorphism::Max));

        let c = classify_language(&ConstraintLanguage::new([nae()]));
        assert_eq!(c.tractability, Tractability::Hard(0));
        // NAE is self-complementary but has no constant or semilattice
        // polymorphism.
        assert_eq!(c.polymorphisms, BTreeSet::from([Polymorphism::Negation]));

        let c = classify_language(&ConstraintLanguage::default());
        assert_eq!(c.polymorphisms.len(), ALL_POLYMORPHISMS.len());
    }

    #[test]
    fn clauses_of_implication() {
        let cl = extract_clauses(&implication(), ClauseShape::Width2).unwrap();
        assert_eq!(cl, vec![Clause { literals: vec![(0, false), (1, true)] }]);
    }

    #[test]
    fn clauses_of_at_least_one() {
        let r = Relation::from_rows(
            "alo",
            3,
            &[
                &[1, 1, 1],
                &[1, 1, 0],
                &[1, 0, 1],
                &[0, 1, 1],
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1],
            ],
        );
        let cl = extract_clauses(&r, ClauseShape::DualHorn).unwrap();
        assert_eq!(
            cl,
            vec![Clause { literals: vec![(0, true), (1, true), (2, true)] }]
        );
    }

    #[test]
    fn clauses_of_full_relation() {
        let full = Relation::from_rows("full", 2, &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        for shape in [ClauseShape::Width2, ClauseShape::Horn, ClauseShape::DualHorn] {
            assert_eq!(extract_clauses(&full, shape).unwrap(), vec![]);
        }
    }

    #[test]
    fn clause_extraction_shape_mismatch() {
        // NAE needs a width-3 mixed clause; Horn cannot express it.
        assert_eq!(extract_clauses(&nae(), ClauseShape::Horn), Err(Error::ShapeMismatch));
    }

    fn two_sat_instance() -> (CspInstance, ConstraintLanguage) {
        // (x1 ∨ x2) ∧ (¬x1 ∨ x2)
        let or2 = Relation::from_rows("or", 2, &[&[0, 1], &[1, 0], &[1, 1]]);
        let lang = ConstraintLanguage::new([or2, implication()]);
        let inst = CspInstance::new(
            2,
            vec![
                Constraint { relation: "or".into(), scope: vec![1, 2] },
                Constraint { relation: "imp".into(), scope: vec![1, 2] },
            ],
        );
        (inst, lang)
    }

    #[test]
    fn solve_two_sat_instance() {
        let (inst, lang) = two_sat_instance();
        let cls = classify_language(&lang);
        assert_eq!(cls.tractability, Tractability::MajorityTract);
        let a = solve(&inst, &lang, &PartialAssignment::new(), &cls).unwrap().unwrap();
        assert!(a[1], "x2 must be 1 in every solution");
        // Pinning x2 = 0 kills it.
        let p = PartialAssignment::from_pairs([(2, false)]);
        assert_eq!(solve(&inst, &lang, &p, &cls).unwrap(), None);
    }

    #[test]
    fn solve_horn_instance() {
        // ¬x1 ∨ ¬x2 ∨ x3
        let horn = Relation::from_rows(
            "h",
            3,
            &[
                &[0, 0, 0], &[0, 0, 1], &[0, 1, 0], &[0, 1, 1],
                &[1, 0, 0], &[1, 0, 1], &[1, 1, 1],
            ],
        );
        let lang = ConstraintLanguage::new([horn]);
        let cls = classify_language(&lang);
        assert_eq!(cls.tractability, Tractability::MinTract);
        let inst = CspInstance::new(3, vec![Constraint { relation: "h".into(), scope: vec![1, 2, 3] }]);
        let p = PartialAssignment::from_pairs([(1, true), (2, true), (3, false)]);
        assert_eq!(solve(&inst, &lang, &p, &cls).unwrap(), None);
        let p = PartialAssignment::from_pairs([(1, true), (2, true)]);
        let a = solve(&inst, &lang, &p, &cls).unwrap().unwrap();
        assert!(a[2]);
    }

    #[test]
    fn solve_empty_instance_extends_partial() {
        let lang = ConstraintLanguage::default();
        let inst = CspInstance::new(2, vec![]);
        let cls = classify_language(&lang);
        let p = PartialAssignment::from_pairs([(1, false)]);
        let a = solve(&inst, &lang, &p, &cls).unwrap().unwrap();
        assert!(!a[0]);
    }

    #[test]
    fn solve_affine_instance() {
        // x1 ⊕ x2 ⊕ x3 = 1; the binary xor relation would be majority-closed
        // (only two tuples), so the ternary one exercises the affine engine.
        let xor3 = Relation::new(
            "xor3",
            3,
            (0..8u32).filter(|b| b.count_ones() % 2 == 1).map(|b| {
                (0..3).map(|i| b >> i & 1 == 1).collect::<Vec<_>>()
            }),
        );
        let lang = ConstraintLanguage::new([xor3]);
        let cls = classify_language(&lang);
        assert_eq!(cls.tractability, Tractability::MinorityTract);
        let inst = CspInstance::new(
            3,
            vec![Constraint { relation: "xor3".into(), scope: vec![1, 2, 3] }],
        );
        let p = PartialAssignment::from_pairs([(1, true), (2, false)]);
        let a = solve(&inst, &lang, &p, &cls).unwrap().unwrap();
        assert_eq!(a, vec![true, false, false]);
        let p = PartialAssignment::from_pairs([(1, true), (2, false), (3, true)]);
        assert_eq!(solve(&inst, &lang, &p, &cls).unwrap(), None);
    }

    #[test]
    fn exhaustive_fallback_and_limit() {
        let lang = ConstraintLanguage::new([nae()]);
        let cls = classify_language(&lang);
        let inst = CspInstance::new(3, vec![Constraint { relation: "nae".into(), scope: vec![1, 2, 3] }]);
        let a = solve(&inst, &lang, &PartialAssignment::new(), &cls).unwrap().unwrap();
        assert!(a.iter().any(|&b| b) && !a.iter().all(|&b| b));

        let big = CspInstance::new(25, vec![]);
        let ctx = SolverContext::new(&big, &lang, &cls).unwrap();
        assert_eq!(
            ctx.solve(&PartialAssignment::new()),
            Err(Error::InstanceTooLarge(25, FALLBACK_VAR_LIMIT))
        );
    }
}
