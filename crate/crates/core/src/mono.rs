//! Exponent vectors and the graded lexicographic order.

use smallvec::SmallVec;
use std::cmp::Ordering;

/// Exponent vector, one entry per ambient variable.
pub type ExpVec = SmallVec<[u16; 8]>;

pub fn exp_zero(nvars: usize) -> ExpVec {
    let mut e = ExpVec::new();
    e.resize(nvars, 0);
    e
}

pub fn exp_unit(nvars: usize, var: usize) -> ExpVec {
    let mut e = exp_zero(nvars);
    e[var] = 1;
    e
}

pub fn exp_total(e: &ExpVec) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

pub fn exp_add(a: &ExpVec, b: &ExpVec) -> ExpVec {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b.iter()).map(|(&x, &y)| x + y).collect()
}

/// Graded lexicographic order: first by total degree, ties broken
/// lexicographically in the ambient variable order.
pub fn grlex_cmp(a: &ExpVec, b: &ExpVec) -> Ordering {
    match exp_total(a).cmp(&exp_total(b)) {
        Ordering::Equal => a.cmp(b),
        o => o,
    }
}

/// A monomial: exponents over a fixed ambient variable list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exps: ExpVec,
}

impl Monomial {
    pub fn new(exps: ExpVec) -> Self {
        Monomial { exps }
    }

    pub fn total_degree(&self) -> u32 {
        exp_total(&self.exps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::smallvec;

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        let x2: ExpVec = smallvec![2, 0];
        let xy: ExpVec = smallvec![1, 1];
        let y: ExpVec = smallvec![0, 1];
        assert_eq!(grlex_cmp(&y, &x2), Ordering::Less);
        assert_eq!(grlex_cmp(&xy, &x2), Ordering::Less);
        assert_eq!(grlex_cmp(&x2, &x2), Ordering::Equal);
    }
}
