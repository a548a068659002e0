use std::cmp::Ordering;

use super::Monomial;

/// Which base order to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    /// Graded lexicographic: total degree first, lex tie-break.
    Grlex,
    /// Pure lexicographic.
    Lex,
}

/// A monomial order: a kind plus a variable priority permutation. Variables
/// earlier in `priority` are greater; variables absent from `priority` rank
/// below all listed ones, among themselves by ascending index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    priority: Vec<u32>,
}

impl MonomialOrder {
    /// Default priority x1 > x2 > … .
    pub fn new(kind: OrderKind) -> Self {
        MonomialOrder { kind, priority: Vec::new() }
    }

    pub fn grlex() -> Self {
        MonomialOrder::new(OrderKind::Grlex)
    }

    pub fn lex() -> Self {
        MonomialOrder::new(OrderKind::Lex)
    }

    /// Custom priority; listed variables are greatest, in the given order.
    pub fn with_priority(kind: OrderKind, priority: Vec<u32>) -> Self {
        let mut seen = std::collections::BTreeSet::new();
        for &v in &priority {
            assert!(v >= 1 && seen.insert(v), "priority must list distinct 1-based variables");
        }
        MonomialOrder { kind, priority }
    }

    /// Lex order with `elim` greatest — the order used for elimination ideals.
    pub fn elimination(elim: &[u32]) -> Self {
        MonomialOrder::with_priority(OrderKind::Lex, elim.to_vec())
    }

    /// Rank of a variable: lower rank means greater in the order.
    fn rank(&self, v: u32) -> (usize, u32) {
        match self.priority.iter().position(|&p| p == v) {
            Some(i) => (i, 0),
            None => (self.priority.len(), v),
        }
    }

    fn lex_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        // Walk variables of both monomials from greatest to least rank.
        let mut vars: Vec<u32> = a.vars().chain(b.vars()).collect();
        vars.sort_by_key(|&v| self.rank(v));
        vars.dedup();
        for v in vars {
            match a.exponent(v).cmp(&b.exponent(v)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Compare two monomials; `Greater` means `a` is larger in this order.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Grlex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| self.lex_cmp(a, b)),
            OrderKind::Lex => self.lex_cmp(a, b),
        }
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.compare(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}
