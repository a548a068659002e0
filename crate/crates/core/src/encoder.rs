//! Translation of CSP instances into ideal generator sets: the generic
//! indicator-product encoding and the clause-based degree-bounded encodings
//! for majority-, min-, and max-closed languages.

use crate::csp::{
    classify_language, instance_clauses, Clause, ClauseShape, ConstraintLanguage, CspInstance,
    Polymorphism,
};
use crate::poly::{MonomialOrder, Polynomial};
use crate::{Error, Result};

/// How a generator set was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Generic,
    Majority,
    Min,
    Max,
}

/// Generators of the combinatorial ideal of an instance. The 0/1 common
/// zeros of `polynomials` are exactly the solutions of the instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub polynomials: Vec<Polynomial>,
    pub num_vars: u32,
    pub provenance: Provenance,
    pub includes_domain: bool,
}

fn domain_polynomials(n: u32) -> impl Iterator<Item = Polynomial> {
    (1..=n).map(Polynomial::boolean)
}

fn normalize(p: Polynomial, ord: &MonomialOrder) -> Polynomial {
    p.normalized_sign(ord)
}

/// Indicator-product generator of one constraint: vanishes on a 0/1 point
/// exactly when the scope restriction lies in the relation. An empty
/// relation yields the constant 1.
fn indicator_generator(tuples: impl Iterator<Item = Vec<bool>>, scope: &[u32]) -> Polynomial {
    let mut prod = Polynomial::one();
    for t in tuples {
        let mut hit = Polynomial::one();
        for (j, &bit) in t.iter().enumerate() {
            let x = Polynomial::var(scope[j]);
            // δ1(x) = x, δ0(x) = 1 − x.
            let delta = if bit { x } else { &Polynomial::one() - &x };
            hit = &hit * &delta;
        }
        prod = &prod * &(&Polynomial::one() - &hit);
    }
    prod
}

/// The generic encoding: one indicator product per constraint plus the
/// domain polynomials xi² − xi.
pub fn encode_generic(inst: &CspInstance, lang: &ConstraintLanguage) -> Result<GeneratorSet> {
    inst.validate(lang)?;
    let ord = MonomialOrder::grlex();
    let mut polynomials = Vec::new();
    for c in &inst.constraints {
        let r = lang.get(&c.relation)?;
        let g = indicator_generator(r.tuples().cloned(), &c.scope);
        if !g.is_zero() {
            polynomials.push(normalize(g, &ord));
        }
    }
    polynomials.extend(domain_polynomials(inst.num_vars));
    Ok(GeneratorSet {
        polynomials,
        num_vars: inst.num_vars,
        provenance: Provenance::Generic,
        includes_domain: true,
    })
}

/// A clause's vanishing polynomial: the product of (x − 1) over positive
/// literals and x over negative ones, zero on a 0/1 point iff the clause is
/// satisfied there. The empty clause gives the constant 1.
fn clause_polynomial(c: &Clause) -> Polynomial {
    let mut prod = Polynomial::one();
    for &(v, pos) in &c.literals {
        let factor = if pos { Polynomial::var_minus(v, 1) } else { Polynomial::var(v) };
        prod = &prod * &factor;
    }
    prod
}

fn encode_clauses(
    inst: &CspInstance,
    lang: &ConstraintLanguage,
    shape: ClauseShape,
    required: Polymorphism,
    provenance: Provenance,
) -> Result<GeneratorSet> {
    inst.validate(lang)?;
    if !classify_language(lang).has(required) {
        return Err(Error::UnsupportedClass);
    }
    let ord = MonomialOrder::grlex();
    let mut polynomials: Vec<Polynomial> = instance_clauses(inst, lang, shape)?
        .iter()
        .map(|c| normalize(clause_polynomial(c), &ord))
        .collect();
    polynomials.extend(domain_polynomials(inst.num_vars));
    Ok(GeneratorSet {
        polynomials,
        num_vars: inst.num_vars,
        provenance,
        includes_domain: true,
    })
}

/// Degree ≤ 2 encoding of a majority-closed instance via width-2 clauses.
pub fn encode_majority(inst: &CspInstance, lang: &ConstraintLanguage) -> Result<GeneratorSet> {
    encode_clauses(inst, lang, ClauseShape::Width2, Polymorphism::Majority, Provenance::Majority)
}

/// Positive 2-terms encoding of a min-closed (Horn) instance.
pub fn encode_min(inst: &CspInstance, lang: &ConstraintLanguage) -> Result<GeneratorSet> {
    encode_clauses(inst, lang, ClauseShape::Horn, Polymorphism::Min, Provenance::Min)
}

/// Negative 2-terms encoding of a max-closed (dual-Horn) instance.
pub fn encode_max(inst: &CspInstance, lang: &ConstraintLanguage) -> Result<GeneratorSet> {
    encode_clauses(inst, lang, ClauseShape::DualHorn, Polymorphism::Max, Provenance::Max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csp::{Constraint, Relation};
    use crate::poly::{classify_two_terms, parse_polynomial};
    use std::collections::BTreeMap;

    fn lang1(r: Relation) -> ConstraintLanguage {
        ConstraintLanguage::new([r])
    }

    fn zeros_on_cube(p: &Polynomial, n: u32) -> Vec<Vec<bool>> {
        let mut out = Vec::new();
        for bits in 0..(1u32 << n) {
            let a: BTreeMap<u32, bool> = (1..=n).map(|v| (v, bits >> (v - 1) & 1 == 1)).collect();
            if p.evaluate_bool(&a).unwrap() == crate::poly::coeff(0) {
                out.push((1..=n).map(|v| a[&v]).collect());
            }
        }
        out
    }

    #[test]
    fn singleton_relation() {
        let r = Relation::from_rows("one", 1, &[&[1]]);
        let lang = lang1(r);
        let inst = CspInstance::new(1, vec![Constraint { relation: "one".into(), scope: vec![1] }]);
        let g = encode_generic(&inst, &lang).unwrap();
        assert_eq!(
            g.polynomials,
            vec![parse_polynomial("x1 - 1").unwrap(), Polynomial::boolean(1)]
        );
    }

    #[test]
    fn equality_relation_variety() {
        let r = Relation::from_rows("eq", 2, &[&[0, 0], &[1, 1]]);
        let lang = lang1(r);
        let inst = CspInstance::new(2, vec![Constraint { relation: "eq".into(), scope: vec![1, 2] }]);
        let g = encode_generic(&inst, &lang).unwrap();
        assert_eq!(zeros_on_cube(&g.polynomials[0], 2), vec![
            vec![false, false],
            vec![true, true],
        ]);
    }

    #[test]
    fn empty_constraint_list_gives_domain_only() {
        let g = encode_generic(&CspInstance::new(3, vec![]), &ConstraintLanguage::default()).unwrap();
        assert_eq!(g.polynomials, (1..=3).map(Polynomial::boolean).collect::<Vec<_>>());
        assert!(g.includes_domain);
    }

    #[test]
    fn unsatisfiable_constraint_emits_one() {
        let empty = Relation::new("none", 1, Vec::<Vec<bool>>::new());
        let lang = lang1(empty);
        let inst = CspInstance::new(1, vec![Constraint { relation: "none".into(), scope: vec![1] }]);
        let g = encode_generic(&inst, &lang).unwrap();
        assert_eq!(g.polynomials[0], Polynomial::one());
    }

    #[test]
    fn majority_clause_polynomials() {
        // (x1 ∨ x2) and (¬x1 ∨ x2) and units.
        let or2 = Relation::from_rows("or", 2, &[&[0, 1], &[1, 0], &[1, 1]]);
        let imp = Relation::from_rows("imp", 2, &[&[0, 0], &[0, 1], &[1, 1]]);
        let unit = Relation::from_rows("t", 1, &[&[1]]);
        let lang = ConstraintLanguage::new([or2, imp, unit]);
        let inst = CspInstance::new(
            3,
            vec![
                Constraint { relation: "or".into(), scope: vec![1, 2] },
                Constraint { relation: "imp".into(), scope: vec![1, 2] },
                Constraint { relation: "t".into(), scope: vec![3] },
            ],
        );
        let g = encode_majority(&inst, &lang).unwrap();
        let want = [
            parse_polynomial("x1*x2 - x1 - x2 + 1").unwrap(), // (x1−1)(x2−1)
            parse_polynomial("x1*x2 - x1").unwrap(),          // x1(x2−1)
            parse_polynomial("x3 - 1").unwrap(),
        ];
        for w in &want {
            assert!(g.polynomials.contains(w), "missing {w}");
        }
        for p in &g.polynomials {
            assert!(classify_two_terms(p).in_majority_family(), "{p} outside the majority sets");
        }
    }

    #[test]
    fn horn_and_dual_horn_encodings() {
        // ¬x1 ∨ ¬x2 ∨ x3.
        let horn = Relation::from_rows(
            "h",
            3,
            &[
                &[0, 0, 0], &[0, 0, 1], &[0, 1, 0], &[0, 1, 1],
                &[1, 0, 0], &[1, 0, 1], &[1, 1, 1],
            ],
        );
        let lang = lang1(horn);
        let inst = CspInstance::new(3, vec![Constraint { relation: "h".into(), scope: vec![1, 2, 3] }]);
        let g = encode_min(&inst, &lang).unwrap();
        let want = parse_polynomial("x1*x2*x3 - x1*x2").unwrap();
        assert!(g.polynomials.contains(&want));
        for p in &g.polynomials {
            assert!(classify_two_terms(p).in_tplus(), "{p} outside the positive sets");
        }

        // x1 ∨ x2 ∨ ¬x3 and x1 ∨ x2.
        let dh = Relation::from_rows(
            "d",
            3,
            &[
                &[1, 0, 0], &[1, 0, 1], &[0, 1, 0], &[0, 1, 1],
                &[1, 1, 0], &[1, 1, 1], &[0, 0, 0],
            ],
        );
        let or2 = Relation::from_rows("or", 2, &[&[0, 1], &[1, 0], &[1, 1]]);
        let lang = ConstraintLanguage::new([dh, or2]);
        let inst = CspInstance::new(
            3,
            vec![
                Constraint { relation: "d".into(), scope: vec![1, 2, 3] },
                Constraint { relation: "or".into(), scope: vec![1, 2] },
            ],
        );
        let g = encode_max(&inst, &lang).unwrap();
        let clause = &(&Polynomial::var(3) * &Polynomial::var_minus(1, 1)) * &Polynomial::var_minus(2, 1);
        let pos2 = &Polynomial::var_minus(1, 1) * &Polynomial::var_minus(2, 1);
        assert!(g.polynomials.contains(&clause.normalized_sign(&MonomialOrder::grlex())));
        assert!(g.polynomials.contains(&pos2));
        for p in &g.polynomials {
            assert!(classify_two_terms(p).in_tminus(), "{p} outside the negative sets");
        }
    }

    #[test]
    fn class_encoder_precondition() {
        let nae = Relation::from_rows(
            "nae",
            3,
            &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 0]],
        );
        let lang = lang1(nae);
        let inst = CspInstance::new(3, vec![Constraint { relation: "nae".into(), scope: vec![1, 2, 3] }]);
        assert_eq!(encode_majority(&inst, &lang), Err(Error::UnsupportedClass));
        assert_eq!(encode_min(&inst, &lang), Err(Error::UnsupportedClass));
    }

    #[test]
    fn encoders_agree_on_variety() {
        let imp = Relation::from_rows("imp", 2, &[&[0, 0], &[0, 1], &[1, 1]]);
        let lang = lang1(imp);
        let inst = CspInstance::new(
            3,
            vec![
                Constraint { relation: "imp".into(), scope: vec![1, 2] },
                Constraint { relation: "imp".into(), scope: vec![2, 3] },
            ],
        );
        let common = |g: &GeneratorSet| -> Vec<Vec<bool>> {
            (0..(1u32 << 3))
                .map(|bits| (0..3).map(|i| bits >> i & 1 == 1).collect::<Vec<bool>>())
                .filter(|a| {
                    let m: BTreeMap<u32, bool> =
                        a.iter().enumerate().map(|(i, &b)| (i as u32 + 1, b)).collect();
                    g.polynomials
                        .iter()
                        .all(|p| p.evaluate_bool(&m).unwrap() == crate::poly::coeff(0))
                })
                .collect()
        };
        let generic = encode_generic(&inst, &lang).unwrap();
        for g in [
            encode_majority(&inst, &lang).unwrap(),
            encode_min(&inst, &lang).unwrap(),
            encode_max(&inst, &lang).unwrap(),
        ] {
            assert_eq!(common(&g), common(&generic));
        }
    }
}
