//! Brute-force ground truth on small instances: solution enumeration,
//! membership by evaluation, and a reference reduced Gröbner basis.

use std::collections::{BTreeMap, BTreeSet};

use num::Zero;

use crate::csp::{ConstraintLanguage, CspInstance};
use crate::encoder::encode_generic;
use crate::groebner::{autoreduce, buchberger_with, EngineConfig, GroebnerBasis, Strategy};
use crate::poly::{MonomialOrder, Polynomial};
use crate::{Error, Result};

/// Default variable cap for exhaustive enumeration.
pub const ENUMERATION_VAR_LIMIT: u32 = 20;
/// Default variable cap for the reference basis computation.
pub const REFERENCE_VAR_LIMIT: u32 = 12;

/// The full solution set of an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    pub n: u32,
    pub points: BTreeSet<Vec<bool>>,
}

impl SolutionSet {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub fn enumerate_solutions(inst: &CspInstance, lang: &ConstraintLanguage) -> Result<SolutionSet> {
    enumerate_solutions_with(inst, lang, ENUMERATION_VAR_LIMIT)
}

pub fn enumerate_solutions_with(
    inst: &CspInstance,
    lang: &ConstraintLanguage,
    max_vars: u32,
) -> Result<SolutionSet> {
    if inst.num_vars > max_vars {
        return Err(Error::InstanceTooLarge(inst.num_vars, max_vars));
    }
    inst.validate(lang)?;
    let n = inst.num_vars;
    let mut points = BTreeSet::new();
    for bits in 0..(1u64 << n) {
        let a: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
        if inst.satisfied_by(lang, &a)? {
            points.insert(a);
        }
    }
    Ok(SolutionSet { n, points })
}

/// f ∈ I iff f vanishes on every solution: the combinatorial ideal is
/// radical, so evaluation decides membership exactly.
pub fn membership_by_evaluation(
    inst: &CspInstance,
    lang: &ConstraintLanguage,
    f: &Polynomial,
) -> Result<bool> {
    let sols = enumerate_solutions(inst, lang)?;
    Ok(vanishes_on(f, &sols))
}

/// True when f evaluates to zero on every listed point.
pub fn vanishes_on(f: &Polynomial, sols: &SolutionSet) -> bool {
    sols.points.iter().all(|a| {
        let point: BTreeMap<u32, bool> =
            a.iter().enumerate().map(|(i, &b)| (i as u32 + 1, b)).collect();
        f.evaluate_bool(&point).expect("solution covers all variables").is_zero()
    })
}

/// Generic Buchberger on the generic encoding, autoreduced: the ground-truth
/// basis the structural pipelines are checked against.
pub fn reference_reduced_gb(
    inst: &CspInstance,
    lang: &ConstraintLanguage,
    ord: &MonomialOrder,
) -> Result<GroebnerBasis> {
    reference_reduced_gb_with(inst, lang, ord, REFERENCE_VAR_LIMIT, &EngineConfig::default())
}

pub fn reference_reduced_gb_with(
    inst: &CspInstance,
    lang: &ConstraintLanguage,
    ord: &MonomialOrder,
    max_vars: u32,
    config: &EngineConfig,
) -> Result<GroebnerBasis> {
    if inst.num_vars > max_vars {
        return Err(Error::InstanceTooLarge(inst.num_vars, max_vars));
    }
    let gens = encode_generic(inst, lang)?;
    let run = buchberger_with(&gens, ord, Strategy::Generic, config)?;
    autoreduce(&run.basis)
}
