use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use super::{Monomial, MonomialOrder};
use crate::{Error, Result};

/// Coefficient type: arbitrary-precision rationals.
pub type Coeff = BigRational;

/// A sparse multivariate polynomial with rational coefficients. Storage is
/// order-agnostic; leading data is computed against an explicit order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Coeff>,
}

pub fn coeff(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(coeff(1))
    }

    pub fn constant(c: Coeff) -> Self {
        Polynomial::from_terms([(Monomial::one(), c)])
    }

    pub fn var(v: u32) -> Self {
        Polynomial::from_terms([(Monomial::var(v), coeff(1))])
    }

    /// x_v − c, the ubiquitous shifted variable factor.
    pub fn var_minus(v: u32, c: i64) -> Self {
        Polynomial::from_terms([(Monomial::var(v), coeff(1)), (Monomial::one(), coeff(-c))])
    }

    /// The Boolean polynomial x_v² − x_v.
    pub fn boolean(v: u32) -> Self {
        Polynomial::from_terms([
            (Monomial::from_pairs([(v, 2)]), coeff(1)),
            (Monomial::var(v), coeff(-1)),
        ])
    }

    pub fn monomial(m: Monomial, c: Coeff) -> Self {
        Polynomial::from_terms([(m, c)])
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Coeff::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Total degree; zero polynomial reports 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// Distinct variables occurring in any term, ascending.
    pub fn support(&self) -> Vec<u32> {
        let mut vars: Vec<u32> = self.terms.keys().flat_map(|m| m.vars()).collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    /// The ord-maximal monomial, or an error on the zero polynomial.
    pub fn leading_monomial(&self, ord: &MonomialOrder) -> Result<&Monomial> {
        self.terms
            .keys()
            .reduce(|a, b| ord.max(a, b))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading(&self, ord: &MonomialOrder) -> Result<(&Monomial, &Coeff)> {
        let m = self.leading_monomial(ord)?;
        Ok((m, &self.terms[m]))
    }

    pub fn leading_coeff(&self, ord: &MonomialOrder) -> Result<Coeff> {
        Ok(self.leading(ord)?.1.clone())
    }

    /// LT(p) as a polynomial.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<Polynomial> {
        let (m, c) = self.leading(ord)?;
        Ok(Polynomial::monomial(m.clone(), c.clone()))
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    /// Rescale so the leading coefficient is 1.
    pub fn monic(&self, ord: &MonomialOrder) -> Result<Polynomial> {
        let lc = self.leading_coeff(ord)?;
        Ok(self.scale(&lc.recip()))
    }

    /// Remainder modulo {x_i² − x_i}: cap all exponents at 1.
    pub fn multilinearize(&self) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.multilinear(), c.clone())),
        )
    }

    /// Evaluate at a total 0/1 (or rational) point covering the support.
    pub fn evaluate(&self, a: &BTreeMap<u32, Coeff>) -> Result<Coeff> {
        let mut total = Coeff::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for (v, e) in m.iter() {
                let x = a.get(&v).ok_or(Error::MissingVariable(v))?;
                for _ in 0..e {
                    val *= x;
                }
            }
            total += val;
        }
        Ok(total)
    }

    /// Evaluate at a Boolean point given as a bit per variable.
    pub fn evaluate_bool(&self, a: &BTreeMap<u32, bool>) -> Result<Coeff> {
        let mut total = Coeff::zero();
        'term: for (m, c) in &self.terms {
            for v in m.vars() {
                match a.get(&v) {
                    Some(true) => {}
                    Some(false) => continue 'term,
                    None => return Err(Error::MissingVariable(v)),
                }
            }
            total += c;
        }
        Ok(total)
    }

    /// Substitute x_v := value and simplify.
    pub fn substitute(&self, v: u32, value: &Coeff) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| {
            let e = m.exponent(v);
            if e == 0 {
                return (m.clone(), c.clone());
            }
            let rest = Monomial::from_pairs(m.iter().filter(|&(w, _)| w != v));
            let mut k = c.clone();
            for _ in 0..e {
                k *= value;
            }
            (rest, k)
        }))
    }

    /// Clear denominators and content: integer coefficients with gcd 1, sign of
    /// the ord-leading coefficient positive.
    pub fn normalized_sign(&self, ord: &MonomialOrder) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
        }
        let scaled: Vec<(Monomial, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), (c * BigRational::from_integer(denom_lcm.clone())).to_integer()))
            .collect();
        let mut content = BigInt::zero();
        for (_, c) in &scaled {
            content = num::integer::gcd(content, c.abs());
        }
        let lead = self.leading_coeff(ord).expect("nonzero");
        if lead.is_negative() {
            content = -content;
        }
        Polynomial::from_terms(
            scaled
                .into_iter()
                .map(|(m, c)| (m, BigRational::from_integer(c / content.clone()))),
        )
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&coeff(-1))
    }
}
