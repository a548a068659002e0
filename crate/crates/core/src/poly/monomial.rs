use std::collections::BTreeMap;
use std::fmt;

/// A power product of variables. Variables are 1-based indices; exponents are
/// strictly positive, so the empty map is the monomial 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exponents: BTreeMap<u32, u32>,
}

impl Monomial {
    /// The monomial 1.
    pub fn one() -> Self {
        Monomial::default()
    }

    /// A single variable x_v.
    pub fn var(v: u32) -> Self {
        assert!(v >= 1, "variables are 1-based");
        let mut exponents = BTreeMap::new();
        exponents.insert(v, 1);
        Monomial { exponents }
    }

    /// Build from (variable, exponent) pairs; zero exponents are dropped.
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            assert!(v >= 1, "variables are 1-based");
            if e > 0 {
                *m.exponents.entry(v).or_insert(0) += e;
            }
        }
        m
    }

    /// Squarefree product of a variable set.
    pub fn squarefree<I: IntoIterator<Item = u32>>(vars: I) -> Self {
        Monomial::from_pairs(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponent(&self, v: u32) -> u32 {
        self.exponents.get(&v).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exponents.values().sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = u32> + '_ {
        self.exponents.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.exponents.iter().map(|(&v, &e)| (v, e))
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.values().all(|&e| e == 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (&v, &e) in &other.exponents {
            *out.exponents.entry(v).or_insert(0) += e;
        }
        out
    }

    /// Componentwise quotient, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.clone();
        for (&v, &e) in &other.exponents {
            let have = out.exponents.get(&v).copied().unwrap_or(0);
            if have < e {
                return None;
            }
            if have == e {
                out.exponents.remove(&v);
            } else {
                out.exponents.insert(v, have - e);
            }
        }
        Some(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        other.div(self).is_some()
    }

    /// Componentwise max.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (&v, &e) in &other.exponents {
            let entry = out.exponents.entry(v).or_insert(0);
            *entry = (*entry).max(e);
        }
        out
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = BTreeMap::new();
        for (&v, &e) in &self.exponents {
            let o = other.exponent(v);
            let m = e.min(o);
            if m > 0 {
                out.insert(v, m);
            }
        }
        Monomial { exponents: out }
    }

    /// Cap every exponent at 1.
    pub fn multilinear(&self) -> Monomial {
        Monomial::squarefree(self.vars())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&v, &e) in &self.exponents {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}
