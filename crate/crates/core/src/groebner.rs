//! Gröbner machinery: Buchberger's algorithm (generic and structure-aware),
//! autoreduction, semantic membership for 2-terms polynomials, truncated
//! bases for Horn/dual-Horn ideals, and elimination ideals.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::csp::{
    classify_language, ConstraintLanguage, CspInstance, PartialAssignment, Polymorphism,
    SolverContext,
};
use crate::encoder::{GeneratorSet, Provenance};
use crate::poly::{
    classify_two_terms, coprime_leading, decompose_interlacing, divide, interlaced_spair,
    s_polynomial, DivisionTranscript, Monomial, MonomialOrder, Polynomial, Term, TwoTermsTag,
};
use crate::{Error, Result};

/// Which Horn-like semilattice class a 2-terms computation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemilatticeClass {
    Min,
    Max,
}

/// Structure tag carried by structure-aware bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    Majority,
    Min,
    Max,
}

/// Buchberger pair-reduction strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Generic,
    Majority,
    TwoTerms,
}

/// A (possibly reduced, possibly degree-truncated) Gröbner basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub polynomials: Vec<Polynomial>,
    pub order: MonomialOrder,
    pub reduced: bool,
    pub truncated_at: Option<u32>,
    pub structure: Option<Structure>,
}

/// Machine-checkable membership evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipEvidence {
    /// An exact division-to-zero identity f = Σ qᵢ·gᵢ against the divisors.
    Syntactic { transcript: DivisionTranscript, divisors: Vec<Polynomial> },
    /// Minimal non-vanishing partial assignments, each non-extendable.
    Semantic { assignments: Vec<PartialAssignment> },
    /// A satisfying assignment on which the polynomial is nonzero.
    Witness { assignment: Vec<bool> },
}

/// Resource limits for the engine.
#[derive(Debug, Clone)]
pub struct EngineConfig {
    /// Maximum basis size during Buchberger runs.
    pub basis_budget: usize,
    /// Maximum number of enumerated candidates in truncated_basis.
    pub candidate_budget: usize,
    /// When set, shuffles the pair-processing order deterministically.
    pub shuffle_seed: Option<u64>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { basis_budget: 5000, candidate_budget: 2_000_000, shuffle_seed: None }
    }
}

/// A Buchberger run together with its instrumentation.
#[derive(Debug, Clone)]
pub struct BuchbergerOutcome {
    pub basis: GroebnerBasis,
    /// Number of polynomials inserted beyond the input generators.
    pub insertions: usize,
    /// Whether every basis member (input and inserted) stayed in the
    /// structure class of the strategy. Always true for Generic.
    pub structured_throughout: bool,
}

fn structure_of(p: &Provenance) -> Option<Structure> {
    match p {
        Provenance::Generic => None,
        Provenance::Majority => Some(Structure::Majority),
        Provenance::Min => Some(Structure::Min),
        Provenance::Max => Some(Structure::Max),
    }
}

fn in_structure(p: &Polynomial, s: Structure) -> bool {
    let c = classify_two_terms(p);
    match s {
        Structure::Majority => c.in_majority_family(),
        Structure::Min => c.in_tplus(),
        Structure::Max => c.in_tminus(),
    }
}

fn unit_basis(ord: &MonomialOrder, structure: Option<Structure>) -> GroebnerBasis {
    GroebnerBasis {
        polynomials: vec![Polynomial::one()],
        order: ord.clone(),
        reduced: true,
        truncated_at: None,
        structure,
    }
}

/// Buchberger's algorithm with a FIFO pair queue and the coprime-leading
/// skip. Structure-aware strategies reduce the interlaced S(f,g)* instead of
/// the raw S-polynomial.
pub fn buchberger(gens: &GeneratorSet, ord: &MonomialOrder, strategy: Strategy) -> Result<GroebnerBasis> {
    Ok(buchberger_with(gens, ord, strategy, &EngineConfig::default())?.basis)
}

pub fn buchberger_with(
    gens: &GeneratorSet,
    ord: &MonomialOrder,
    strategy: Strategy,
    config: &EngineConfig,
) -> Result<BuchbergerOutcome> {
    let hint = match (strategy, gens.provenance) {
        (Strategy::Generic, _) => None,
        (Strategy::Majority, Provenance::Majority) => Some(TwoTermsTag::Quadratic),
        (Strategy::TwoTerms, Provenance::Min) => Some(TwoTermsTag::PositiveTwoTerms),
        (Strategy::TwoTerms, Provenance::Max) => Some(TwoTermsTag::NegativeTwoTerms),
        _ => return Err(Error::StrategyMismatch),
    };
    let structure = structure_of(&gens.provenance).filter(|_| strategy != Strategy::Generic);

    let mut g: Vec<Polynomial> = Vec::new();
    for p in &gens.polynomials {
        if p.is_zero() {
            continue;
        }
        if p.is_constant() {
            return Ok(BuchbergerOutcome {
                basis: unit_basis(ord, structure),
                insertions: 0,
                structured_throughout: true,
            });
        }
        let m = p.monic(ord)?;
        if !g.contains(&m) {
            g.push(m);
        }
    }
    if let Some(seed) = config.shuffle_seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        g.shuffle(&mut rng);
    }
    let mut structured = structure.map_or(true, |s| g.iter().all(|p| in_structure(p, s)));

    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
    for i in 0..g.len() {
        for j in (i + 1)..g.len() {
            pairs.push_back((i, j));
        }
    }
    let mut insertions = 0usize;

    while let Some((i, j)) = pairs.pop_front() {
        if coprime_leading(&g[i], &g[j], ord)? {
            continue;
        }
        let target = match hint {
            None => s_polynomial(&g[i], &g[j], ord)?,
            Some(h) => match decompose_interlacing(&g[i], &g[j], h, ord) {
                Ok(dec) => {
                    let (sstar, _, _) = interlaced_spair(&g[i], &g[j], &dec, ord)?;
                    sstar.multilinearize()
                }
                // The interlacing lemma covers every pair the structured
                // encoders can produce; anything else falls back to the
                // classical S-polynomial.
                Err(Error::InterlacingUnavailable) | Err(Error::NotTwoTerms) => {
                    s_polynomial(&g[i], &g[j], ord)?
                }
                Err(e) => return Err(e),
            },
        };
        let r = divide(&target, &g, ord)?.remainder;
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(BuchbergerOutcome {
                basis: unit_basis(ord, structure),
                insertions: insertions + 1,
                structured_throughout: structured,
            });
        }
        let r = r.monic(ord)?;
        if let Some(s) = structure {
            structured &= in_structure(&r, s);
        }
        let k = g.len();
        g.push(r);
        insertions += 1;
        if g.len() > config.basis_budget {
            return Err(Error::BasisBudgetExceeded(g.len()));
        }
        for i in 0..k {
            pairs.push_back((i, k));
        }
    }

    Ok(BuchbergerOutcome {
        basis: GroebnerBasis {
            polynomials: g,
            order: ord.clone(),
            reduced: false,
            truncated_at: None,
            structure,
        },
        insertions,
        structured_throughout: structured,
    })
}

/// Inter-reduce to the unique reduced basis: monic members, each fully
/// reduced modulo the others, zeros discarded, sorted ascending in the order.
pub fn autoreduce(basis: &GroebnerBasis) -> Result<GroebnerBasis> {
    let ord = &basis.order;
    let mut polys: Vec<Polynomial> = Vec::new();
    for p in &basis.polynomials {
        if p.is_zero() {
            continue;
        }
        if p.is_constant() {
            return Ok(GroebnerBasis { truncated_at: basis.truncated_at, ..unit_basis(ord, basis.structure) });
        }
        let m = p.monic(ord)?;
        if !polys.contains(&m) {
            polys.push(m);
        }
    }
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < polys.len() {
            let p = polys.remove(i);
            let r = divide(&p, &polys, ord)?.remainder;
            if r.is_zero() {
                changed = true;
                continue;
            }
            if r.is_constant() {
                return Ok(GroebnerBasis { truncated_at: basis.truncated_at, ..unit_basis(ord, basis.structure) });
            }
            let r = r.monic(ord)?;
            if r != p {
                changed = true;
            }
            polys.insert(i, r);
            i += 1;
        }
        if !changed {
            break;
        }
    }
    polys.sort_by(|a, b| {
        ord.compare(&a.leading_monomial(ord).unwrap(), &b.leading_monomial(ord).unwrap())
    });
    Ok(GroebnerBasis {
        polynomials: polys,
        order: ord.clone(),
        reduced: true,
        truncated_at: basis.truncated_at,
        structure: basis.structure,
    })
}

/// Buchberger's criterion by direct computation: every pairwise
/// S-polynomial must reduce to zero modulo the set.
pub fn is_groebner(polys: &[Polynomial], ord: &MonomialOrder) -> Result<bool> {
    for i in 0..polys.len() {
        for j in (i + 1)..polys.len() {
            let s = s_polynomial(&polys[i], &polys[j], ord)?;
            if !divide(&s, polys, ord)?.remainder.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Evaluate a 2-terms term on a 0/1 point pattern: the value it takes when
/// "active" (every factor nonzero), and the pin that makes it active.
fn term_value(t: &Term) -> i64 {
    if t.negative {
        let s = if t.vars.len() % 2 == 0 { 1 } else { -1 };
        i64::from(t.sign) * s
    } else {
        i64::from(t.sign)
    }
}

fn active_pin(t: &Term) -> bool {
    // Positive factors xᵢ are nonzero at 1; negative factors (xᵢ−1) at 0.
    !t.negative
}

fn subsume_minimize(mut list: Vec<PartialAssignment>) -> Vec<PartialAssignment> {
    list.sort();
    list.dedup();
    let keep: Vec<bool> = list
        .iter()
        .map(|a| {
            !list.iter().any(|b| {
                b.len() < a.len() && b.iter().all(|(v, x)| a.get(v) == Some(x))
            })
        })
        .collect();
    list.into_iter().zip(keep).filter_map(|(a, k)| k.then_some(a)).collect()
}

fn minimal_nonvanishing_terms(terms: &[&Term]) -> Vec<PartialAssignment> {
    let mut out = Vec::new();
    match terms {
        [] => {}
        [t] => {
            let mut a = PartialAssignment::new();
            for &v in &t.vars {
                a.bind(v, active_pin(t));
            }
            out.push(a);
        }
        [t1, t2] => {
            // Both terms active.
            if term_value(t1) + term_value(t2) != 0 {
                let mut a = PartialAssignment::new();
                for t in [t1, t2] {
                    for &v in &t.vars {
                        a.bind(v, active_pin(t));
                    }
                }
                out.push(a);
            }
            // One active, the other killed by a single variable outside the
            // active support set.
            for (on, off) in [(t1, t2), (t2, t1)] {
                for &j in &off.vars {
                    if on.vars.contains(&j) {
                        continue;
                    }
                    let mut a = PartialAssignment::new();
                    for &v in &on.vars {
                        a.bind(v, active_pin(on));
                    }
                    a.bind(j, !active_pin(off));
                    out.push(a);
                }
            }
        }
        _ => unreachable!("2-terms pair has at most two terms"),
    }
    subsume_minimize(out)
}

/// The minimal partial assignments on the support of p whose every total
/// extension keeps p nonzero. Boolean polynomials (identically zero on the
/// cube) yield the empty list.
pub fn minimal_nonvanishing_assignments(
    p: &Polynomial,
    cls: SemilatticeClass,
) -> Result<Vec<PartialAssignment>> {
    let c = classify_two_terms(p);
    if c.boolean.is_some() {
        return Ok(Vec::new());
    }
    let pair = match cls {
        SemilatticeClass::Min => c.positive.as_ref(),
        SemilatticeClass::Max => c.negative.as_ref(),
    }
    .ok_or(Error::NotTwoTerms)?;
    let terms: Vec<&Term> = [pair.first.as_ref(), pair.second.as_ref()]
        .into_iter()
        .flatten()
        .collect();
    Ok(minimal_nonvanishing_terms(&terms))
}

fn member_by_assignments(
    assignments: &[PartialAssignment],
    ctx: &SolverContext,
) -> Result<(bool, Option<Vec<bool>>)> {
    for a in assignments {
        if let Some(solution) = ctx.solve(a)? {
            return Ok((false, Some(solution)));
        }
    }
    Ok((true, None))
}

/// Semantic ideal membership for a 2-terms polynomial: p ∈ I iff no minimal
/// non-vanishing partial assignment extends to a solution.
pub fn two_terms_member(
    p: &Polynomial,
    inst: &CspInstance,
    lang: &ConstraintLanguage,
    cls: SemilatticeClass,
) -> Result<(bool, MembershipEvidence)> {
    let classification = classify_language(lang);
    let required = match cls {
        SemilatticeClass::Min => Polymorphism::Min,
        SemilatticeClass::Max => Polymorphism::Max,
    };
    if !classification.has(required) {
        return Err(Error::UnsupportedClass);
    }
    let ctx = SolverContext::new(inst, lang, &classification)?;
    let assignments = minimal_nonvanishing_assignments(p, cls)?;
    match member_by_assignments(&assignments, &ctx)? {
        (true, _) => Ok((true, MembershipEvidence::Semantic { assignments })),
        (false, Some(assignment)) => Ok((false, MembershipEvidence::Witness { assignment })),
        _ => unreachable!(),
    }
}

fn subsets_up_to(n: u32, d: u32) -> Vec<Vec<u32>> {
    // All subsets of {1..n} of size ≤ d, the empty set included.
    let mut out: Vec<Vec<u32>> = vec![vec![]];
    let mut frontier: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..d {
        let mut next = Vec::new();
        for s in &frontier {
            let lo = s.last().map_or(1, |&v| v + 1);
            for v in lo..=n {
                let mut t = s.clone();
                t.push(v);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn term_of(vars: &[u32], sign: i8, cls: SemilatticeClass) -> Term {
    match cls {
        SemilatticeClass::Min => Term::positive(sign, vars.to_vec()),
        SemilatticeClass::Max => Term::negative(sign, vars.to_vec()),
    }
}

/// The degree-≤ d part of the reduced grlex basis of a Horn (Min) or
/// dual-Horn (Max) instance, computed by semantic filtering of all
/// sign-normalized 2-terms candidates followed by inter-reduction.
pub fn truncated_basis(
    inst: &CspInstance,
    lang: &ConstraintLanguage,
    cls: SemilatticeClass,
    d: u32,
) -> Result<GroebnerBasis> {
    truncated_basis_with(inst, lang, cls, d, &EngineConfig::default())
}

pub fn truncated_basis_with(
    inst: &CspInstance,
    lang: &ConstraintLanguage,
    cls: SemilatticeClass,
    d: u32,
    config: &EngineConfig,
) -> Result<GroebnerBasis> {
    assert!(d >= 1, "truncation degree must be at least 1");
    let classification = classify_language(lang);
    let required = match cls {
        SemilatticeClass::Min => Polymorphism::Min,
        SemilatticeClass::Max => Polymorphism::Max,
    };
    if !classification.has(required) {
        return Err(Error::UnsupportedClass);
    }
    let ord = MonomialOrder::grlex();
    let structure = Some(match cls {
        SemilatticeClass::Min => Structure::Min,
        SemilatticeClass::Max => Structure::Max,
    });
    let ctx = SolverContext::new(inst, lang, &classification)?;
    if ctx.solve(&PartialAssignment::new())?.is_none() {
        return Ok(GroebnerBasis { truncated_at: Some(d), ..unit_basis(&ord, structure) });
    }

    let subsets = subsets_up_to(inst.num_vars, d);
    let nonempty = subsets.len() - 1;
    let candidate_count = nonempty + 2 * nonempty * (subsets.len() - 1);
    if candidate_count > config.candidate_budget {
        return Err(Error::CandidateBudgetExceeded(candidate_count));
    }

    let mut kept: Vec<Polynomial> = Vec::new();
    let lead_mono = |s: &[u32]| Monomial::squarefree(s.iter().copied());
    for s in subsets.iter().filter(|s| !s.is_empty()) {
        let head = term_of(s, 1, cls);
        // Single-term candidate.
        let assignments = minimal_nonvanishing_terms(&[&head]);
        if member_by_assignments(&assignments, &ctx)?.0 {
            kept.push(head.expand());
        }
        // Two-term candidates with this head: the second term must be
        // strictly smaller in grlex so the leading coefficient is +1.
        let hm = lead_mono(s);
        for t in &subsets {
            if t == s {
                continue;
            }
            let tm = lead_mono(t);
            if ord.compare(&hm, &tm) != std::cmp::Ordering::Greater {
                continue;
            }
            for alpha in [1i8, -1] {
                let tail = term_of(t, alpha, cls);
                let assignments = minimal_nonvanishing_terms(&[&head, &tail]);
                if member_by_assignments(&assignments, &ctx)?.0 {
                    let p = &head.expand() + &tail.expand();
                    if !p.is_zero() {
                        kept.push(p);
                    }
                }
            }
        }
    }
    if d >= 2 {
        kept.extend((1..=inst.num_vars).map(Polynomial::boolean));
    }
    let candidate_basis = GroebnerBasis {
        polynomials: kept,
        order: ord,
        reduced: false,
        truncated_at: Some(d),
        structure,
    };
    let mut reduced = autoreduce(&candidate_basis)?;
    reduced.polynomials.retain(|p| p.total_degree() <= d || p.is_constant());
    Ok(reduced)
}

/// Eliminate the given variables: a lex basis with those variables greatest,
/// restricted to the members not mentioning them. The result generates the
/// elimination ideal.
pub fn elimination_ideal(gens: &GeneratorSet, elim: &[u32]) -> Result<GeneratorSet> {
    elimination_ideal_with(gens, elim, &EngineConfig::default())
}

pub fn elimination_ideal_with(
    gens: &GeneratorSet,
    elim: &[u32],
    config: &EngineConfig,
) -> Result<GeneratorSet> {
    for &v in elim {
        if v < 1 || v > gens.num_vars {
            return Err(Error::VariableOutOfRange(v, gens.num_vars));
        }
    }
    let ord = MonomialOrder::elimination(elim);
    let generic = GeneratorSet { provenance: Provenance::Generic, ..gens.clone() };
    let run = buchberger_with(&generic, &ord, Strategy::Generic, config)?;
    let reduced = autoreduce(&run.basis)?;
    let polynomials: Vec<Polynomial> = reduced
        .polynomials
        .into_iter()
        .filter(|p| p.support().iter().all(|v| !elim.contains(v)))
        .collect();
    Ok(GeneratorSet {
        polynomials,
        num_vars: gens.num_vars,
        provenance: Provenance::Generic,
        includes_domain: gens.includes_domain,
    })
}
