//! Top-level ideal-membership decisions: classification dispatch, evidence
//! production and verification, the sparse-polynomial algorithm, and the
//! hardness-reduction instance builders.

use std::collections::BTreeMap;

use num::Zero;

use crate::csp::{
    classify_language, is_extendable, Classification, Constraint, ConstraintLanguage, CspInstance,
    PartialAssignment, SolverContext, Tractability,
};
use crate::encoder::encode_majority;
use crate::groebner::{
    autoreduce, buchberger, minimal_nonvanishing_assignments, truncated_basis, GroebnerBasis,
    MembershipEvidence, SemilatticeClass, Strategy,
};
use crate::oracle::{enumerate_solutions, vanishes_on};
use crate::poly::{classify_two_terms, coeff, divide, Coeff, MonomialOrder, Polynomial, Term};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    In,
    NotIn,
}

/// Which algorithm produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pipeline {
    /// Zero or constant f, settled by satisfiability alone.
    Trivial,
    Majority,
    MinTruncated,
    MaxTruncated,
    /// Brute-force fallback, tagged with the classification that forced it.
    Oracle(Tractability),
    Sparse(SemilatticeClass),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub decision: Decision,
    pub evidence: MembershipEvidence,
    pub pipeline: Pipeline,
}

impl MembershipVerdict {
    pub fn witness(&self) -> Option<&Vec<bool>> {
        match &self.evidence {
            MembershipEvidence::Witness { assignment } => Some(assignment),
            _ => None,
        }
    }
}

/// One ideal-membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpQuery {
    pub instance: CspInstance,
    pub language: ConstraintLanguage,
    pub f: Polynomial,
    pub degree_bound: Option<u32>,
}

impl ImpQuery {
    pub fn validate(&self) -> Result<()> {
        self.instance.validate(&self.language)?;
        for v in self.f.support() {
            if v > self.instance.num_vars {
                return Err(Error::VariableOutOfRange(v, self.instance.num_vars));
            }
        }
        if let Some(d) = self.degree_bound {
            let got = self.f.total_degree();
            if got > d {
                return Err(Error::DegreeBound { bound: d, got });
            }
        }
        Ok(())
    }
}

fn syntactic_in(
    m: &Polynomial,
    divisors: &[Polynomial],
    ord: &MonomialOrder,
    pipeline: Pipeline,
) -> Result<Option<MembershipVerdict>> {
    let transcript = divide(m, divisors, ord)?;
    if transcript.remainder.is_zero() {
        Ok(Some(MembershipVerdict {
            decision: Decision::In,
            evidence: MembershipEvidence::Syntactic { transcript, divisors: divisors.to_vec() },
            pipeline,
        }))
    } else {
        Ok(None)
    }
}

/// A satisfying assignment on which the nonzero remainder r (a normal form
/// of the query polynomial) does not vanish. Tries the 2-terms structural
/// enumeration first, then exhausts the support of r.
fn witness_from_remainder(r: &Polynomial, ctx: &SolverContext) -> Result<Vec<bool>> {
    let c = classify_two_terms(r);
    let structured = if c.in_tplus() {
        Some(SemilatticeClass::Min)
    } else if c.in_tminus() {
        Some(SemilatticeClass::Max)
    } else {
        None
    };
    if let Some(cls) = structured {
        for a in minimal_nonvanishing_assignments(r, cls)? {
            if let Some(sol) = ctx.solve(&a)? {
                return Ok(sol);
            }
        }
    }
    let support = r.support();
    for bits in 0..(1u64 << support.len()) {
        let partial = PartialAssignment::from_pairs(
            support.iter().enumerate().map(|(i, &v)| (v, bits >> i & 1 == 1)),
        );
        let point: BTreeMap<u32, bool> = partial.iter().collect();
        if r.evaluate_bool(&point)?.is_zero() {
            continue;
        }
        if let Some(sol) = ctx.solve(&partial)? {
            return Ok(sol);
        }
    }
    // r is a nonzero normal form, so some solution keeps it nonzero.
    Err(Error::ZeroPolynomial)
}

fn not_in(witness: Vec<bool>, pipeline: Pipeline) -> MembershipVerdict {
    MembershipVerdict {
        decision: Decision::NotIn,
        evidence: MembershipEvidence::Witness { assignment: witness },
        pipeline,
    }
}

/// The reduced basis used by the Majority pipeline.
fn majority_basis(inst: &CspInstance, lang: &ConstraintLanguage) -> Result<GroebnerBasis> {
    let ord = MonomialOrder::grlex();
    let enc = encode_majority(inst, lang)?;
    autoreduce(&buchberger(&enc, &ord, Strategy::Majority)?)
}

/// Decide f ∈ I(instance) with evidence.
pub fn decide(q: &ImpQuery) -> Result<MembershipVerdict> {
    q.validate()?;
    let ord = MonomialOrder::grlex();
    let m = q.f.multilinearize();
    if m.is_zero() {
        return Ok(syntactic_in(&m, &[], &ord, Pipeline::Trivial)?.expect("0 divides to 0"));
    }
    let cls = classify_language(&q.language);
    let ctx = SolverContext::new(&q.instance, &q.language, &cls)?;
    if m.is_constant() {
        // Weak Nullstellensatz: a nonzero constant lies in I iff the
        // instance is unsatisfiable.
        return match ctx.solve(&PartialAssignment::new())? {
            None => Ok(syntactic_in(&m, &[Polynomial::one()], &ord, Pipeline::Trivial)?
                .expect("constant divides by 1")),
            Some(sol) => Ok(not_in(sol, Pipeline::Trivial)),
        };
    }
    match cls.tractability {
        Tractability::MajorityTract => {
            let red = majority_basis(&q.instance, &q.language)?;
            match syntactic_in(&m, &red.polynomials, &ord, Pipeline::Majority)? {
                Some(v) => Ok(v),
                None => {
                    let r = divide(&m, &red.polynomials, &ord)?.remainder;
                    Ok(not_in(witness_from_remainder(&r, &ctx)?, Pipeline::Majority))
                }
            }
        }
        Tractability::MinTract | Tractability::MaxTract => {
            let (sem, pipeline) = if cls.tractability == Tractability::MinTract {
                (SemilatticeClass::Min, Pipeline::MinTruncated)
            } else {
                (SemilatticeClass::Max, Pipeline::MaxTruncated)
            };
            let d = q.degree_bound.unwrap_or_else(|| m.total_degree()).max(m.total_degree());
            let basis = truncated_basis(&q.instance, &q.language, sem, d.max(1))?;
            match syntactic_in(&m, &basis.polynomials, &ord, pipeline)? {
                Some(v) => Ok(v),
                None => {
                    let r = divide(&m, &basis.polynomials, &ord)?.remainder;
                    Ok(not_in(witness_from_remainder(&r, &ctx)?, pipeline))
                }
            }
        }
        other => {
            let sols = enumerate_solutions(&q.instance, &q.language)?;
            if vanishes_on(&m, &sols) {
                Ok(MembershipVerdict {
                    decision: Decision::In,
                    // Exhaustive search found no non-vanishing point; there
                    // is no partial assignment left to attest.
                    evidence: MembershipEvidence::Semantic { assignments: vec![] },
                    pipeline: Pipeline::Oracle(other),
                })
            } else {
                let witness = sols
                    .points
                    .iter()
                    .find(|a| {
                        let p: BTreeMap<u32, bool> =
                            a.iter().enumerate().map(|(i, &b)| (i as u32 + 1, b)).collect();
                        !m.evaluate_bool(&p).unwrap().is_zero()
                    })
                    .cloned()
                    .expect("some solution keeps f nonzero");
                Ok(not_in(witness, Pipeline::Oracle(other)))
            }
        }
    }
}

/// A satisfying assignment on which f is nonzero, or None when f ∈ I.
pub fn find_witness(
    inst: &CspInstance,
    lang: &ConstraintLanguage,
    cls: &Classification,
    f: &Polynomial,
) -> Result<Option<Vec<bool>>> {
    let ord = MonomialOrder::grlex();
    let m = f.multilinearize();
    if m.is_zero() {
        return Ok(None);
    }
    let ctx = SolverContext::new(inst, lang, cls)?;
    if m.is_constant() {
        return ctx.solve(&PartialAssignment::new());
    }
    let basis = match cls.tractability {
        Tractability::MajorityTract => majority_basis(inst, lang)?,
        Tractability::MinTract => truncated_basis(inst, lang, SemilatticeClass::Min, m.total_degree().max(1))?,
        Tractability::MaxTract => truncated_basis(inst, lang, SemilatticeClass::Max, m.total_degree().max(1))?,
        _ => {
            let sols = enumerate_solutions(inst, lang)?;
            return Ok(sols.points.iter().find(|a| {
                let p: BTreeMap<u32, bool> =
                    a.iter().enumerate().map(|(i, &b)| (i as u32 + 1, b)).collect();
                !m.evaluate_bool(&p).unwrap().is_zero()
            }).cloned());
        }
    };
    let r = divide(&m, &basis.polynomials, &ord)?.remainder;
    if r.is_zero() {
        Ok(None)
    } else {
        Ok(Some(witness_from_remainder(&r, &ctx)?))
    }
}

/// Independent re-check of a verdict against its query.
pub fn verify_evidence(v: &MembershipVerdict, q: &ImpQuery) -> bool {
    let check = || -> Result<bool> {
        let m = q.f.multilinearize();
        match (&v.decision, &v.evidence) {
            (Decision::In, MembershipEvidence::Syntactic { transcript, divisors }) => {
                Ok(transcript.remainder.is_zero() && transcript.reexpand(divisors) == m)
            }
            (Decision::In, MembershipEvidence::Semantic { assignments }) => {
                let cls = classify_language(&q.language);
                for a in assignments {
                    if is_extendable(&q.instance, &q.language, a, &cls)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (Decision::NotIn, MembershipEvidence::Witness { assignment }) => {
                if assignment.len() != q.instance.num_vars as usize {
                    return Ok(false);
                }
                if !q.instance.satisfied_by(&q.language, assignment)? {
                    return Ok(false);
                }
                let point: BTreeMap<u32, bool> = assignment
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| (i as u32 + 1, b))
                    .collect();
                Ok(!q.f.evaluate_bool(&point)?.is_zero())
            }
            _ => Ok(false),
        }
    };
    check().unwrap_or(false)
}

/// Substitute xv ↦ xv + 1 for every variable (used to read a polynomial in
/// the (x−1)-product basis).
fn shift_up(p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    for (mono, c) in p.terms() {
        let mut t = Polynomial::constant(c.clone());
        for (v, e) in mono.iter() {
            let shifted = &Polynomial::var(v) + &Polynomial::one();
            for _ in 0..e {
                t = &t * &shifted;
            }
        }
        out = &out + &t;
    }
    out
}

/// The k-sparse representation of f in the class basis: coefficient and
/// variable set per product term.
fn sparse_terms(f: &Polynomial, cls: SemilatticeClass) -> Vec<(Coeff, Vec<u32>)> {
    let m = f.multilinearize();
    let in_basis = match cls {
        SemilatticeClass::Min => m,
        SemilatticeClass::Max => shift_up(&m),
    };
    in_basis
        .terms()
        .map(|(mono, c)| (c.clone(), mono.vars().collect()))
        .collect()
}

fn basis_term(vars: &[u32], sign: i8, cls: SemilatticeClass) -> Term {
    match cls {
        SemilatticeClass::Min => Term::positive(sign, vars.to_vec()),
        SemilatticeClass::Max => Term::negative(sign, vars.to_vec()),
    }
}

pub fn decide_sparse(q: &ImpQuery, cls: SemilatticeClass) -> Result<MembershipVerdict> {
    Ok(decide_sparse_counting(q, cls)?.0)
}

/// The iterative pairing algorithm; also returns the number of 2-terms
/// membership tests performed.
pub fn decide_sparse_counting(
    q: &ImpQuery,
    cls: SemilatticeClass,
) -> Result<(MembershipVerdict, usize)> {
    q.validate()?;
    let classification = classify_language(&q.language);
    let required = match cls {
        SemilatticeClass::Min => crate::csp::Polymorphism::Min,
        SemilatticeClass::Max => crate::csp::Polymorphism::Max,
    };
    if !classification.has(required) {
        return Err(Error::UnsupportedClass);
    }
    let ctx = SolverContext::new(&q.instance, &q.language, &classification)?;
    let mut rep: Vec<(Coeff, Vec<u32>)> = sparse_terms(&q.f, cls)
        .into_iter()
        .filter(|(c, _)| !c.is_zero())
        .collect();
    let k = rep.len();
    let mut tests = 0usize;
    let mut attestations: Vec<PartialAssignment> = Vec::new();
    let pipeline = Pipeline::Sparse(cls);

    let member = |p: &Polynomial, tests: &mut usize| -> Result<Option<Vec<PartialAssignment>>> {
        *tests += 1;
        let assignments = minimal_nonvanishing_assignments(p, cls)?;
        for a in &assignments {
            if ctx.solve(a)?.is_some() {
                return Ok(None);
            }
        }
        Ok(Some(assignments))
    };

    for _round in 0..=k {
        if rep.is_empty() {
            return Ok((
                MembershipVerdict {
                    decision: Decision::In,
                    evidence: MembershipEvidence::Semantic { assignments: attestations },
                    pipeline,
                },
                tests,
            ));
        }
        let mut progressed = false;
        'search: for i in 0..rep.len() {
            // α = 0: the single product term.
            let mu_i = basis_term(&rep[i].1, 1, cls).expand();
            if let Some(a) = member(&mu_i, &mut tests)? {
                attestations.extend(a);
                rep.remove(i);
                progressed = true;
                break 'search;
            }
            for j in 0..rep.len() {
                if j == i || rep[i].1 == rep[j].1 {
                    continue;
                }
                for alpha in [1i8, -1] {
                    let p = &mu_i + &basis_term(&rep[j].1, alpha, cls).expand();
                    if let Some(a) = member(&p, &mut tests)? {
                        attestations.extend(a);
                        // f' ← f' − wᵢ·(μᵢ + α·μⱼ).
                        let wi = rep[i].0.clone();
                        let alpha_c = coeff(i64::from(alpha));
                        rep[j].0 = &rep[j].0 - &(&wi * &alpha_c);
                        rep.remove(i);
                        rep.retain(|(c, _)| !c.is_zero());
                        progressed = true;
                        break 'search;
                    }
                }
            }
        }
        if !progressed {
            // No pair lies in the ideal, hence f does not; produce and
            // double-check a concrete witness.
            let witness = find_witness(&q.instance, &q.language, &classification, &q.f)?
                .ok_or(Error::ZeroPolynomial)?;
            let verdict = not_in(witness, pipeline);
            debug_assert!(verify_evidence(&verdict, q));
            return Ok((verdict, tests));
        }
    }
    // Each successful round removes a term, so k rounds always suffice.
    unreachable!("pairing loop exceeded its round bound");
}

/// Which hardness reduction to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HardnessCase {
    /// The language keeps only the constant c; variables pinned to 1−c are
    /// merged and queried.
    OneConstant(bool),
    TwoConstants,
    Negation,
}

fn singleton_pins(
    base: &CspInstance,
    lang: &ConstraintLanguage,
) -> Result<(Vec<u32>, Vec<u32>, Vec<String>)> {
    let mut pinned0 = Vec::new();
    let mut pinned1 = Vec::new();
    let mut pin_relations = Vec::new();
    for c in &base.constraints {
        let r = lang.get(&c.relation)?;
        if r.arity == 1 && r.len() == 1 {
            let value = r.tuples().next().unwrap()[0];
            if value {
                pinned1.push(c.scope[0]);
            } else {
                pinned0.push(c.scope[0]);
            }
            if !pin_relations.contains(&c.relation) {
                pin_relations.push(c.relation.clone());
            }
        }
    }
    Ok((pinned0, pinned1, pin_relations))
}

/// Rewrite an instance: drop singleton pin constraints on the given
/// variables and merge each listed class onto its representative (the class
/// minimum). Non-representative merged variables become unconstrained.
fn merge_vars(
    base: &CspInstance,
    lang: &ConstraintLanguage,
    classes: &[&[u32]],
) -> Result<CspInstance> {
    let mut map: BTreeMap<u32, u32> = BTreeMap::new();
    for class in classes {
        let rep = *class.iter().min().expect("nonempty merge class");
        for &v in *class {
            map.insert(v, rep);
        }
    }
    let mut constraints = Vec::new();
    for c in &base.constraints {
        let r = lang.get(&c.relation)?;
        let is_pin = r.arity == 1 && r.len() == 1 && map.contains_key(&c.scope[0]);
        if is_pin {
            continue;
        }
        let scope: Vec<u32> = c.scope.iter().map(|v| *map.get(v).unwrap_or(v)).collect();
        constraints.push(Constraint { relation: c.relation.clone(), scope });
    }
    Ok(CspInstance::new(base.num_vars, constraints))
}

fn strip_relations(lang: &ConstraintLanguage, names: &[String]) -> ConstraintLanguage {
    ConstraintLanguage::new(
        lang.relations()
            .filter(|r| !names.contains(&r.name))
            .cloned(),
    )
}

/// Build the ideal-membership query of the satisfiability reduction: the
/// pinned variables are merged, the pins dropped from instance and language,
/// and f chosen so that f ∉ I iff the base instance was satisfiable.
pub fn build_hardness_instance(
    base: &CspInstance,
    lang: &ConstraintLanguage,
    case: HardnessCase,
) -> Result<ImpQuery> {
    base.validate(lang)?;
    let (pinned0, pinned1, pin_relations) = singleton_pins(base, lang)?;
    match case {
        HardnessCase::OneConstant(c) => {
            let merged = if c { &pinned0 } else { &pinned1 };
            if merged.is_empty() {
                return Err(Error::NoPinnedVariables);
            }
            let rep = *merged.iter().min().unwrap();
            let instance = merge_vars(base, lang, &[merged])?;
            let f = Polynomial::var_minus(rep, i64::from(c));
            Ok(ImpQuery { instance, language: strip_relations(lang, &pin_relations), f, degree_bound: Some(1) })
        }
        HardnessCase::TwoConstants | HardnessCase::Negation => {
            if pinned0.is_empty() || pinned1.is_empty() {
                return Err(Error::NoPinnedVariables);
            }
            let a = *pinned0.iter().min().unwrap();
            let b = *pinned1.iter().min().unwrap();
            let instance = merge_vars(base, lang, &[&pinned0, &pinned1])?;
            let language = strip_relations(lang, &pin_relations);
            let (f, d) = match case {
                // f = x_b(1 − x_a).
                HardnessCase::TwoConstants => {
                    (&Polynomial::var(b) * &(&Polynomial::one() - &Polynomial::var(a)), 2)
                }
                _ => (&Polynomial::var(a) - &Polynomial::var(b), 1),
            };
            Ok(ImpQuery { instance, language, f, degree_bound: Some(d) })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csp::Relation;
    use crate::oracle::membership_by_evaluation;
    use crate::poly::parse_polynomial;

    fn two_sat() -> (CspInstance, ConstraintLanguage) {
        let or2 = Relation::from_rows("or", 2, &[&[0, 1], &[1, 0], &[1, 1]]);
        let imp = Relation::from_rows("imp", 2, &[&[0, 0], &[0, 1], &[1, 1]]);
        let lang = ConstraintLanguage::new([or2, imp]);
        let inst = CspInstance::new(
            2,
            vec![
                Constraint { relation: "or".into(), scope: vec![1, 2] },
                Constraint { relation: "imp".into(), scope: vec![1, 2] },
            ],
        );
        (inst, lang)
    }

    fn horn3() -> (CspInstance, ConstraintLanguage) {
        let horn = Relation::from_rows(
            "h",
            3,
            &[
                &[0, 0, 0], &[0, 0, 1], &[0, 1, 0], &[0, 1, 1],
                &[1, 0, 0], &[1, 0, 1], &[1, 1, 1],
            ],
        );
        let lang = ConstraintLanguage::new([horn]);
        let inst =
            CspInstance::new(3, vec![Constraint { relation: "h".into(), scope: vec![1, 2, 3] }]);
        (inst, lang)
    }

    fn query(inst: &CspInstance, lang: &ConstraintLanguage, f: &str) -> ImpQuery {
        ImpQuery {
            instance: inst.clone(),
            language: lang.clone(),
            f: parse_polynomial(f).unwrap(),
            degree_bound: None,
        }
    }

    #[test]
    fn decide_majority_in() {
        let (inst, lang) = two_sat();
        let q = query(&inst, &lang, "x2 - 1");
        let v = decide(&q).unwrap();
        assert_eq!(v.decision, Decision::In);
        assert_eq!(v.pipeline, Pipeline::Majority);
        assert!(matches!(v.evidence, MembershipEvidence::Syntactic { .. }));
        assert!(verify_evidence(&v, &q));
    }

    #[test]
    fn decide_horn_not_in_with_witness() {
        let (inst, lang) = horn3();
        let q = query(&inst, &lang, "x1*x3 - x1");
        let v = decide(&q).unwrap();
        assert_eq!(v.decision, Decision::NotIn);
        assert_eq!(v.pipeline, Pipeline::MinTruncated);
        assert_eq!(v.witness(), Some(&vec![true, false, false]));
        assert!(verify_evidence(&v, &q));
    }

    #[test]
    fn decide_unsat_constant() {
        let t = Relation::from_rows("t", 1, &[&[1]]);
        let f = Relation::from_rows("f", 1, &[&[0]]);
        let lang = ConstraintLanguage::new([t, f]);
        let inst = CspInstance::new(
            1,
            vec![
                Constraint { relation: "t".into(), scope: vec![1] },
                Constraint { relation: "f".into(), scope: vec![1] },
            ],
        );
        let q = query(&inst, &lang, "1");
        let v = decide(&q).unwrap();
        assert_eq!(v.decision, Decision::In);
        assert_eq!(v.pipeline, Pipeline::Trivial);
        assert!(verify_evidence(&v, &q));
    }

    #[test]
    fn decide_oracle_fallback() {
        let nae = Relation::from_rows(
            "nae",
            3,
            &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 0]],
        );
        let lang = ConstraintLanguage::new([nae]);
        let inst =
            CspInstance::new(3, vec![Constraint { relation: "nae".into(), scope: vec![1, 2, 3] }]);
        let q = query(&inst, &lang, "x1");
        let v = decide(&q).unwrap();
        assert_eq!(v.decision, Decision::NotIn);
        assert_eq!(v.pipeline, Pipeline::Oracle(Tractability::Hard(0)));
        assert!(verify_evidence(&v, &q));

        // x1·x2·x3 vanishes on every NAE tuple: (1,1,1) is excluded.
        let q = query(&inst, &lang, "x1*x2*x3");
        let v = decide(&q).unwrap();
        assert_eq!(v.decision, Decision::In);
        assert!(verify_evidence(&v, &q));
    }

    #[test]
    fn sparse_examples() {
        let (inst, lang) = horn3();
        let q = query(&inst, &lang, "x1*x2*x3 - x1*x2");
        let (v, tests) = decide_sparse_counting(&q, SemilatticeClass::Min).unwrap();
        assert_eq!(v.decision, Decision::In);
        assert!(tests >= 1);

        // Units ¬x1, ¬x2: the only solution is (0,0); x1 + x2 ∈ I termwise.
        let f0 = Relation::from_rows("f", 1, &[&[0]]);
        let lang = ConstraintLanguage::new([f0]);
        let inst = CspInstance::new(
            2,
            vec![
                Constraint { relation: "f".into(), scope: vec![1] },
                Constraint { relation: "f".into(), scope: vec![2] },
            ],
        );
        let q = query(&inst, &lang, "x1 + x2");
        let v = decide_sparse(&q, SemilatticeClass::Min).unwrap();
        assert_eq!(v.decision, Decision::In);

        // Empty instance: x1 − x2 is nonzero at (1,0).
        let q = query(&CspInstance::new(2, vec![]), &ConstraintLanguage::default(), "x1 - x2");
        let v = decide_sparse(&q, SemilatticeClass::Min).unwrap();
        assert_eq!(v.decision, Decision::NotIn);
        assert!(verify_evidence(&v, &q));
    }

    #[test]
    fn sparse_agrees_with_decide_on_max() {
        // Dual-Horn: clause x1 ∨ x2, f in the (x−1) basis.
        let or2 = Relation::from_rows("or", 2, &[&[0, 1], &[1, 0], &[1, 1]]);
        let lang = ConstraintLanguage::new([or2]);
        let inst = CspInstance::new(2, vec![Constraint { relation: "or".into(), scope: vec![1, 2] }]);
        for f in ["x1*x2 - x1 - x2 + 1", "x1 - 1", "x1*x2"] {
            let q = query(&inst, &lang, f);
            let v = decide_sparse(&q, SemilatticeClass::Max).unwrap();
            let oracle = membership_by_evaluation(&inst, &lang, &q.f).unwrap();
            assert_eq!(v.decision == Decision::In, oracle, "{f}");
        }
    }

    #[test]
    fn find_witness_examples() {
        let (inst, lang) = horn3();
        let cls = classify_language(&lang);
        let f = parse_polynomial("x1*x3 - x1").unwrap();
        assert_eq!(
            find_witness(&inst, &lang, &cls, &f).unwrap(),
            Some(vec![true, false, false])
        );
        let f = parse_polynomial("x1*x2*x3 - x1*x2").unwrap();
        assert_eq!(find_witness(&inst, &lang, &cls, &f).unwrap(), None);

        // Forced solution (1,1): any nonzero-at-(1,1) f has that witness.
        let t = Relation::from_rows("t", 1, &[&[1]]);
        let lang = ConstraintLanguage::new([t]);
        let inst = CspInstance::new(
            2,
            vec![
                Constraint { relation: "t".into(), scope: vec![1] },
                Constraint { relation: "t".into(), scope: vec![2] },
            ],
        );
        let cls = classify_language(&lang);
        let f = parse_polynomial("x1").unwrap();
        assert_eq!(find_witness(&inst, &lang, &cls, &f).unwrap(), Some(vec![true, true]));
    }

    #[test]
    fn verify_rejects_tampering() {
        let (inst, lang) = two_sat();
        let q = query(&inst, &lang, "x2 - 1");
        let mut v = decide(&q).unwrap();
        if let MembershipEvidence::Syntactic { transcript, .. } = &mut v.evidence {
            transcript.cofactors[0] = &transcript.cofactors[0] + &Polynomial::one();
        }
        assert!(!verify_evidence(&v, &q));

        let bad = not_in(vec![false, false], Pipeline::Majority);
        assert!(!verify_evidence(&bad, &q));
    }

    fn pin_language(base: ConstraintLanguage) -> ConstraintLanguage {
        let mut lang = base;
        lang.insert(Relation::from_rows("pin0", 1, &[&[0]]));
        lang.insert(Relation::from_rows("pin1", 1, &[&[1]]));
        lang
    }

    #[test]
    fn hardness_negation_equivalence() {
        // Base over a self-complementary relation (xor) with both pins.
        let xor = Relation::from_rows("xor", 2, &[&[0, 1], &[1, 0]]);
        let lang = pin_language(ConstraintLanguage::new([xor]));
        for (pins, expect_sat) in [
            (vec![(3u32, "pin0"), (4u32, "pin1")], true),
            (vec![(3, "pin0"), (4, "pin1"), (1, "pin0"), (2, "pin0")], false),
        ] {
            let mut constraints = vec![
                Constraint { relation: "xor".into(), scope: vec![1, 2] },
                Constraint { relation: "xor".into(), scope: vec![3, 4] },
            ];
            for (v, r) in &pins {
                constraints.push(Constraint { relation: (*r).to_string(), scope: vec![*v] });
            }
            let base = CspInstance::new(4, constraints);
            let q = build_hardness_instance(&base, &lang, HardnessCase::Negation).unwrap();
            let in_ideal = membership_by_evaluation(&q.instance, &q.language, &q.f).unwrap();
            assert_eq!(!in_ideal, expect_sat);
        }
    }

    #[test]
    fn hardness_one_constant_and_two_constants() {
        // Horn-ish base: implication chain with a 1-pin at the end.
        let imp = Relation::from_rows("imp", 2, &[&[0, 0], &[0, 1], &[1, 1]]);
        let lang = pin_language(ConstraintLanguage::new([imp]));
        let base = CspInstance::new(
            3,
            vec![
                Constraint { relation: "imp".into(), scope: vec![1, 2] },
                Constraint { relation: "pin1".into(), scope: vec![3] },
            ],
        );
        let q = build_hardness_instance(&base, &lang, HardnessCase::OneConstant(false)).unwrap();
        assert_eq!(q.f, parse_polynomial("x3").unwrap());
        let in_ideal = membership_by_evaluation(&q.instance, &q.language, &q.f).unwrap();
        assert!(!in_ideal, "satisfiable base must leave f outside the ideal");

        let base2 = CspInstance::new(
            4,
            vec![
                Constraint { relation: "imp".into(), scope: vec![1, 2] },
                Constraint { relation: "pin0".into(), scope: vec![3] },
                Constraint { relation: "pin1".into(), scope: vec![4] },
            ],
        );
        let q = build_hardness_instance(&base2, &lang, HardnessCase::TwoConstants).unwrap();
        assert_eq!(q.degree_bound, Some(2));
        let in_ideal = membership_by_evaluation(&q.instance, &q.language, &q.f).unwrap();
        assert!(!in_ideal);

        assert_eq!(
            build_hardness_instance(&base, &lang, HardnessCase::TwoConstants),
            Err(Error::NoPinnedVariables)
        );
    }

    #[test]
    fn decide_agreement_small_sweep() {
        let (inst, lang) = horn3();
        for f in ["x1", "x3 - 1", "x1*x2*x3 - x1*x2", "x1*x2 - x2*x3", "x2^2 - x2"] {
            let q = query(&inst, &lang, f);
            let v = decide(&q).unwrap();
            let oracle = membership_by_evaluation(&inst, &lang, &q.f).unwrap();
            assert_eq!(v.decision == Decision::In, oracle, "{f}");
            assert!(verify_evidence(&v, &q), "{f}");
        }
    }
}
