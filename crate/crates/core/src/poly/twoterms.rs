//! Recognition of 2-terms polynomials and the interlacing decomposition of
//! S-polynomial pairs.
//!
//! A *term* here is ε·∏_{i∈S} x_i (positive) or ε·∏_{i∈S} (x_i − 1)
//! (negative) with ε ∈ {±1}; a 2-terms polynomial is a sum of at most two
//! such terms, or ±(x_i² − x_i). The interlacing decomposition writes a pair
//! f = h·f1 + f2, g = h·g1 + g2 over a shared factor h so that the
//! S-polynomial reduces to the structured normal form
//! S(f,g)* = (f2·g1 − f1·g2)|_{f,g} / (LC(h)·LC(f1)·LC(g1)).

use std::cmp::Ordering;

use super::{coeff, divide, Coeff, Monomial, MonomialOrder, Polynomial};
use crate::{Error, Result};

/// A single recognized term ε·∏_{i∈S}(x_i − shift), shift 1 when `negative`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    /// ε ∈ {−1, 1}.
    pub sign: i8,
    /// The variable set S, ascending. Empty set means the constant ε.
    pub vars: Vec<u32>,
    pub negative: bool,
}

impl Term {
    pub fn positive(sign: i8, mut vars: Vec<u32>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        Term { sign, vars, negative: false }
    }

    pub fn negative(sign: i8, mut vars: Vec<u32>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        // A constant is shift-agnostic; canonicalize to the positive reading.
        let negative = !vars.is_empty();
        Term { sign, vars, negative }
    }

    pub fn expand(&self) -> Polynomial {
        let mut p = Polynomial::constant(coeff(self.sign as i64));
        for &v in &self.vars {
            let factor = if self.negative {
                Polynomial::var_minus(v, 1)
            } else {
                Polynomial::var(v)
            };
            p = &p * &factor;
        }
        p
    }

    /// The leading monomial ∏_{i∈S} x_i (any order agrees).
    pub fn leading_monomial(&self) -> Monomial {
        Monomial::squarefree(self.vars.iter().copied())
    }

    pub fn degree(&self) -> u32 {
        self.vars.len() as u32
    }

    fn shift(&self) -> u8 {
        u8::from(self.negative)
    }

    fn factors(&self) -> Vec<(u32, u8)> {
        self.vars.iter().map(|&v| (v, self.shift())).collect()
    }
}

/// A decomposition into at most two terms; `first` is the term carrying the
/// grlex leading monomial when both are present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermPair {
    pub first: Option<Term>,
    pub second: Option<Term>,
}

impl TermPair {
    pub fn expand(&self) -> Polynomial {
        let mut p = Polynomial::zero();
        for t in [&self.first, &self.second].into_iter().flatten() {
            p = &p + &t.expand();
        }
        p
    }

    fn terms(&self) -> impl Iterator<Item = &Term> {
        [&self.first, &self.second].into_iter().flatten()
    }

    fn all_positive(&self) -> bool {
        self.terms().all(|t| !t.negative || t.vars.is_empty())
    }

    fn all_negative(&self) -> bool {
        self.terms().all(|t| t.negative || t.vars.is_empty())
    }
}

/// Primary tag of a recognized polynomial; finer membership (a quadratic may
/// simultaneously be a negative 2-terms polynomial) is carried by the class
/// fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoTermsTag {
    PositiveTwoTerms,
    NegativeTwoTerms,
    Boolean,
    Quadratic,
    Linear,
    ZeroDegree,
    NotTwoTerms,
}

/// Membership in the degree-≤2 sets driving the Majority pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MajorityTag {
    /// ±(x_i² − x_i).
    Boolean,
    /// ±(x_i − α)(x_j − β), i ≠ j.
    Quadratic,
    /// 0, ±x_i, ±(x_i − 1), ±(x_i − x_j), ±(x_i + x_j − 1).
    Linear,
    /// ±1.
    ZeroDegree,
}

/// Everything recognized about a polynomial's 2-terms structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoTermsClass {
    pub tag: TwoTermsTag,
    /// Set for ±(x_v² − x_v): the variable and the sign.
    pub boolean: Option<(u32, i8)>,
    /// A decomposition into two positive terms, when one exists.
    pub positive: Option<TermPair>,
    /// A decomposition into two negative terms, when one exists.
    pub negative: Option<TermPair>,
    /// A mixed positive/negative decomposition, when no pure one exists.
    pub mixed: Option<TermPair>,
    pub majority: Option<MajorityTag>,
}

impl TwoTermsClass {
    /// Some decomposition into two terms exists (Booleans included).
    pub fn is_two_terms(&self) -> bool {
        self.boolean.is_some()
            || self.positive.is_some()
            || self.negative.is_some()
            || self.mixed.is_some()
    }

    /// Membership in 𝒯⁺ (positive pairs and Booleans).
    pub fn in_tplus(&self) -> bool {
        self.boolean.is_some() || self.positive.is_some()
    }

    /// Membership in 𝒯⁻ (negative pairs and Booleans).
    pub fn in_tminus(&self) -> bool {
        self.boolean.is_some() || self.negative.is_some()
    }

    /// Membership in ℬ ∪ 𝒬 ∪ ℒ ∪ 𝒵.
    pub fn in_majority_family(&self) -> bool {
        self.majority.is_some()
    }
}

fn sign_of(c: &Coeff) -> Option<i8> {
    if *c == coeff(1) {
        Some(1)
    } else if *c == coeff(-1) {
        Some(-1)
    } else {
        None
    }
}

/// Recognize a polynomial that is a single term (or zero → Ok(None)).
fn single_term(r: &Polynomial) -> Option<Option<Term>> {
    if r.is_zero() {
        return Some(None);
    }
    let ord = MonomialOrder::grlex();
    let (lm, lc) = r.leading(&ord).ok()?;
    if !lm.is_squarefree() {
        return None;
    }
    let sign = sign_of(lc)?;
    let vars: Vec<u32> = lm.vars().collect();
    if r.num_terms() == 1 {
        return Some(Some(Term::positive(sign, vars)));
    }
    let t = Term::negative(sign, vars);
    if t.expand() == *r {
        Some(Some(t))
    } else {
        None
    }
}

/// Recognize p = ε·∏_{i∈S}(x_i − a_i) with a_i ∈ {0,1} and S = vars(LM(p)).
fn full_factorization(p: &Polynomial) -> Option<(i8, Vec<(u32, u8)>)> {
    let ord = MonomialOrder::grlex();
    let (lm, lc) = p.leading(&ord).ok()?;
    if !lm.is_squarefree() {
        return None;
    }
    let sign = sign_of(lc)?;
    let lm = lm.clone();
    let mut factors = Vec::new();
    for v in lm.vars() {
        let without = lm.div(&Monomial::var(v)).unwrap();
        // In ε·∏(x_i − a_i) the coefficient of LM/x_v is ε·(−a_v).
        let c = p.coefficient(&without) * coeff(-(sign as i64));
        let a = if c == coeff(0) {
            0
        } else if c == coeff(1) {
            1
        } else {
            return None;
        };
        factors.push((v, a));
    }
    let mut cand = Polynomial::constant(coeff(sign as i64));
    for &(v, a) in &factors {
        cand = &cand * &Polynomial::var_minus(v, a as i64);
    }
    if cand == *p {
        Some((sign, factors))
    } else {
        None
    }
}

fn linear_family_tag(p: &Polynomial) -> Option<MajorityTag> {
    if p.is_zero() {
        return Some(MajorityTag::Linear);
    }
    let support = p.support();
    if p.total_degree() <= 1 {
        let candidates: Vec<Polynomial> = match support.as_slice() {
            [] => vec![Polynomial::one()],
            [i] => vec![Polynomial::var(*i), Polynomial::var_minus(*i, 1)],
            [i, j] => vec![
                &Polynomial::var(*i) - &Polynomial::var(*j),
                &(&Polynomial::var(*i) + &Polynomial::var(*j)) - &Polynomial::one(),
            ],
            _ => vec![],
        };
        for c in candidates {
            if *p == c || *p == -&c {
                return Some(if support.is_empty() {
                    MajorityTag::ZeroDegree
                } else {
                    MajorityTag::Linear
                });
            }
        }
        return None;
    }
    if let [i, j] = support.as_slice() {
        for a in 0..=1i64 {
            for b in 0..=1i64 {
                let c = &Polynomial::var_minus(*i, a) * &Polynomial::var_minus(*j, b);
                if *p == c || *p == -&c {
                    return Some(MajorityTag::Quadratic);
                }
            }
        }
    }
    None
}

/// Recognize the 2-terms structure of a polynomial by expansion and match.
pub fn classify_two_terms(p: &Polynomial) -> TwoTermsClass {
    let ord = MonomialOrder::grlex();
    let mut class = TwoTermsClass {
        tag: TwoTermsTag::NotTwoTerms,
        boolean: None,
        positive: None,
        negative: None,
        mixed: None,
        majority: None,
    };

    // ±(x_v² − x_v).
    if let [v] = p.support().as_slice() {
        for sign in [1i8, -1] {
            if *p == Polynomial::boolean(*v).scale(&coeff(sign as i64)) {
                class.boolean = Some((*v, sign));
            }
        }
    }

    let record = |pair: TermPair, class: &mut TwoTermsClass| {
        if pair.all_positive() {
            class.positive.get_or_insert(pair.clone());
        }
        if pair.all_negative() {
            class.negative.get_or_insert(pair.clone());
        }
        class.mixed.get_or_insert(pair);
    };

    if p.is_zero() {
        record(TermPair { first: None, second: None }, &mut class);
    } else if let Ok((lm, _)) = p.leading(&ord) {
        if lm.is_squarefree() {
            let lm = lm.clone();
            let vars: Vec<u32> = lm.vars().collect();
            for sign in [1i8, -1] {
                for negative in [false, true] {
                    let t1 = if negative {
                        Term::negative(sign, vars.clone())
                    } else {
                        Term::positive(sign, vars.clone())
                    };
                    let r = p - &t1.expand();
                    if let Some(t2) = single_term(&r) {
                        record(TermPair { first: Some(t1), second: t2 }, &mut class);
                    }
                }
            }
        }
        // Cancellation reading ε(τ⁻(S) − τ⁺(S)) whose top monomials cancel.
        let s = p.support();
        for sign in [1i8, -1] {
            let tneg = Term::negative(sign, s.clone());
            let tpos = Term::positive(-sign, s.clone());
            if &tneg.expand() + &tpos.expand() == *p {
                record(TermPair { first: Some(tneg), second: Some(tpos) }, &mut class);
            }
        }
    }

    class.majority = if class.boolean.is_some() {
        Some(MajorityTag::Boolean)
    } else {
        linear_family_tag(p)
    };

    class.tag = if class.boolean.is_some() {
        TwoTermsTag::Boolean
    } else if class.majority == Some(MajorityTag::ZeroDegree) {
        TwoTermsTag::ZeroDegree
    } else if class.positive.is_some() {
        TwoTermsTag::PositiveTwoTerms
    } else if class.negative.is_some() {
        TwoTermsTag::NegativeTwoTerms
    } else if class.majority == Some(MajorityTag::Quadratic) {
        TwoTermsTag::Quadratic
    } else if class.majority == Some(MajorityTag::Linear) {
        TwoTermsTag::Linear
    } else {
        TwoTermsTag::NotTwoTerms
    };
    class
}

/// The pieces of the interlacing split f = h·f1 + f2, g = h·g1 + g2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlacingDecomposition {
    pub h: Polynomial,
    pub f1: Polynomial,
    pub f2: Polynomial,
    pub g1: Polynomial,
    pub g2: Polynomial,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum HeadMode {
    Positive,
    Negative,
    General,
}

struct Head {
    sign: i8,
    factors: Vec<(u32, u8)>,
}

fn pair_head(pair: &TermPair, p: &Polynomial, ord: &MonomialOrder) -> Option<Head> {
    let first = pair.first.as_ref()?;
    let head = match &pair.second {
        None => first,
        Some(second) => match ord.compare(&first.leading_monomial(), &second.leading_monomial()) {
            Ordering::Greater => first,
            Ordering::Less => second,
            // No strict head: the decomposition cannot satisfy the
            // leading-monomial dominance conditions.
            Ordering::Equal => return None,
        },
    };
    // Guard against a head whose monomial is not the actual leading monomial
    // (possible only through cancellation readings, excluded above).
    let lm = p.leading_monomial(ord).ok()?;
    if head.leading_monomial() != *lm {
        return None;
    }
    Some(Head { sign: head.sign, factors: head.factors() })
}

fn head_of(
    p: &Polynomial,
    class: &TwoTermsClass,
    mode: HeadMode,
    ord: &MonomialOrder,
) -> Result<Head> {
    if let Some((v, sign)) = class.boolean {
        return Ok(Head { sign, factors: vec![(v, 0), (v, 1)] });
    }
    let pairs: Vec<&Option<TermPair>> = match mode {
        HeadMode::Positive => vec![&class.positive],
        HeadMode::Negative => vec![&class.negative],
        HeadMode::General => vec![&class.positive, &class.negative, &class.mixed],
    };
    if mode == HeadMode::General {
        if let Some((sign, factors)) = full_factorization(p) {
            return Ok(Head { sign, factors });
        }
    }
    for pair in pairs.into_iter().flatten() {
        if let Some(h) = pair_head(pair, p, ord) {
            return Ok(h);
        }
    }
    Err(Error::InterlacingUnavailable)
}

fn product_of(factors: &[(u32, u8)]) -> Polynomial {
    let mut p = Polynomial::one();
    for &(v, a) in factors {
        p = &p * &Polynomial::var_minus(v, a as i64);
    }
    p
}

/// Split f and g over their shared head factors so the Interlacing Lemma
/// applies: f = h·f1 + f2, g = h·g1 + g2 with h·f1, h·g1 ≠ 0, the h-part
/// dominating the tail, and LM(f1), LM(g1) coprime. Heads sharing a variable
/// with mismatched shifts are rewritten on the f side, pushing the correction
/// into f2.
pub fn decompose_interlacing(
    f: &Polynomial,
    g: &Polynomial,
    hint: TwoTermsTag,
    ord: &MonomialOrder,
) -> Result<InterlacingDecomposition> {
    let cf = classify_two_terms(f);
    let cg = classify_two_terms(g);
    let compatible = match hint {
        TwoTermsTag::PositiveTwoTerms => cf.in_tplus() && cg.in_tplus(),
        TwoTermsTag::NegativeTwoTerms => cf.in_tminus() && cg.in_tminus(),
        TwoTermsTag::Boolean
        | TwoTermsTag::Quadratic
        | TwoTermsTag::Linear
        | TwoTermsTag::ZeroDegree => cf.in_majority_family() && cg.in_majority_family(),
        TwoTermsTag::NotTwoTerms => cf.is_two_terms() && cg.is_two_terms(),
    };
    if !compatible {
        return Err(Error::NotTwoTerms);
    }
    let mode = match hint {
        TwoTermsTag::PositiveTwoTerms => HeadMode::Positive,
        TwoTermsTag::NegativeTwoTerms => HeadMode::Negative,
        _ => HeadMode::General,
    };
    let hf = head_of(f, &cf, mode, ord)?;
    let hg = head_of(g, &cg, mode, ord)?;

    let mut shared: Vec<(u32, u8)> = Vec::new();
    let mut g_rem = hg.factors.clone();
    let mut f_rem: Vec<(u32, u8)> = Vec::new();
    for fac in hf.factors {
        if let Some(i) = g_rem.iter().position(|&x| x == fac) {
            g_rem.remove(i);
            shared.push(fac);
        } else {
            f_rem.push(fac);
        }
    }
    // Mismatched shifts on a shared variable: adopt g's shift into h and let
    // the exact subtraction below absorb the correction into f2.
    f_rem.retain(|&(v, _)| {
        if let Some(i) = g_rem.iter().position(|&(w, _)| w == v) {
            let adopted = g_rem.remove(i);
            shared.push(adopted);
            false
        } else {
            true
        }
    });

    let h = product_of(&shared);
    let f1 = product_of(&f_rem).scale(&coeff(hf.sign as i64));
    let g1 = product_of(&g_rem).scale(&coeff(hg.sign as i64));
    let f2 = f - &(&h * &f1);
    let g2 = g - &(&h * &g1);

    let d = InterlacingDecomposition { h, f1, f2, g1, g2 };
    verify_conditions(f, g, &d, ord)?;
    Ok(d)
}

fn verify_conditions(
    f: &Polynomial,
    g: &Polynomial,
    d: &InterlacingDecomposition,
    ord: &MonomialOrder,
) -> Result<()> {
    let hf1 = &d.h * &d.f1;
    let hg1 = &d.h * &d.g1;
    if hf1.is_zero() || hg1.is_zero() {
        return Err(Error::InterlacingUnavailable);
    }
    debug_assert_eq!(&hf1 + &d.f2, *f);
    debug_assert_eq!(&hg1 + &d.g2, *g);
    for (prod, tail) in [(&hf1, &d.f2), (&hg1, &d.g2)] {
        if !tail.is_zero()
            && ord.compare(prod.leading_monomial(ord)?, tail.leading_monomial(ord)?)
                != Ordering::Greater
        {
            return Err(Error::InterlacingUnavailable);
        }
    }
    let lf = d.f1.leading_monomial(ord)?;
    let lg = d.g1.leading_monomial(ord)?;
    if !lf.gcd(lg).is_one() {
        return Err(Error::InterlacingUnavailable);
    }
    Ok(())
}

/// The structured normal form of S(f, g) and the exact cofactors of the
/// identity S(f,g) = C·(bg·g + bf·f) + sstar with
/// C = 1/(LC(h)·LC(f1)·LC(g1)). Returns (sstar, bf, bg).
pub fn interlaced_spair(
    f: &Polynomial,
    g: &Polynomial,
    d: &InterlacingDecomposition,
    ord: &MonomialOrder,
) -> Result<(Polynomial, Polynomial, Polynomial)> {
    let q = &(&d.f2 * &d.g1) - &(&d.f1 * &d.g2);
    let t = divide(&q, &[f.clone(), g.clone()], ord)?;
    let c = (d.h.leading_coeff(ord)? * d.f1.leading_coeff(ord)? * d.g1.leading_coeff(ord)?).recip();
    let sstar = t.remainder.scale(&c);
    let af = &t.cofactors[0];
    let ag = &t.cofactors[1];
    let bg = &(&d.f1 - &d.f1.leading_term(ord)?) + ag;
    let bf = &(&d.g1.leading_term(ord)? - &d.g1) + af;
    Ok((sstar, bf, bg))
}
