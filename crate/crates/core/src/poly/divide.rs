use super::{Coeff, MonomialOrder, Polynomial};
use crate::{Error, Result};

/// The result of dividing f by an ordered divisor sequence: the exact identity
/// f = Σ cofactor_i · divisor_i + remainder, with no remainder term divisible
/// by any divisor's leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionTranscript {
    /// One cofactor per divisor, in the input order (zeros included).
    pub cofactors: Vec<Polynomial>,
    pub remainder: Polynomial,
}

impl DivisionTranscript {
    /// Re-expand Σ cofactor_i · divisor_i + remainder.
    pub fn reexpand(&self, divisors: &[Polynomial]) -> Polynomial {
        let mut total = self.remainder.clone();
        for (q, g) in self.cofactors.iter().zip(divisors) {
            total = &total + &(q * g);
        }
        total
    }
}

/// Deterministic multivariate division: at each step the leading reducible
/// term of the running polynomial is cancelled by the first divisor whose
/// leading monomial divides it; irreducible leading terms move to the
/// remainder.
pub fn divide(
    f: &Polynomial,
    divisors: &[Polynomial],
    ord: &MonomialOrder,
) -> Result<DivisionTranscript> {
    let mut leads = Vec::with_capacity(divisors.len());
    for g in divisors {
        let (m, c) = g.leading(ord).map_err(|_| Error::ZeroDivisor)?;
        leads.push((m.clone(), c.clone()));
    }

    let mut cofactors = vec![Polynomial::zero(); divisors.len()];
    let mut remainder = Polynomial::zero();
    let mut p = f.clone();

    while !p.is_zero() {
        let (lm, lc) = {
            let (m, c) = p.leading(ord)?;
            (m.clone(), c.clone())
        };
        let mut reduced = false;
        for (i, (gm, gc)) in leads.iter().enumerate() {
            if let Some(q) = lm.div(gm) {
                let coeff: Coeff = &lc / gc;
                cofactors[i] = &cofactors[i] + &Polynomial::monomial(q.clone(), coeff.clone());
                p = &p - &divisors[i].mul_monomial(&q, &coeff);
                reduced = true;
                break;
            }
        }
        if !reduced {
            remainder = &remainder + &Polynomial::monomial(lm.clone(), lc.clone());
            p = &p - &Polynomial::monomial(lm, lc);
        }
    }

    Ok(DivisionTranscript { cofactors, remainder })
}

/// Reduce f modulo the set and return only the remainder.
pub fn remainder(f: &Polynomial, divisors: &[Polynomial], ord: &MonomialOrder) -> Result<Polynomial> {
    Ok(divide(f, divisors, ord)?.remainder)
}

/// S(f, g) = (x^γ / LT(f))·f − (x^γ / LT(g))·g with x^γ = lcm(LM f, LM g).
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Result<Polynomial> {
    let (fm, fc) = f.leading(ord)?;
    let (gm, gc) = g.leading(ord)?;
    let gamma = fm.lcm(gm);
    let qf = gamma.div(fm).expect("lcm divisible by lm");
    let qg = gamma.div(gm).expect("lcm divisible by lm");
    Ok(&f.mul_monomial(&qf, &fc.recip()) - &g.mul_monomial(&qg, &gc.recip()))
}

/// True when the S-polynomial of a coprime-leading-monomial pair is forced to
/// reduce to zero (Buchberger's first criterion).
pub fn coprime_leading(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Result<bool> {
    let fm = f.leading_monomial(ord)?;
    let gm = g.leading_monomial(ord)?;
    Ok(fm.gcd(gm).is_one())
}
