use alloc::vec::Vec;
use core::cmp::Ordering;

use super::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Grevlex,
    Lex,
    GradedLex,
}

/// A term order on monomials, with an optional variable priority.
///
/// Without a permutation the natural order `x0 > x1 > ⋯` is used. With
/// `perm = [p0, p1, …]` variable `x_{p0}` is the most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    perm: Option<Vec<usize>>,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        Self::grevlex()
    }
}

impl MonomialOrder {
    pub fn new(kind: OrderKind) -> Self {
        Self { kind, perm: None }
    }

    pub fn grevlex() -> Self {
        Self::new(OrderKind::Grevlex)
    }

    pub fn lex() -> Self {
        Self::new(OrderKind::Lex)
    }

    pub fn graded_lex() -> Self {
        Self::new(OrderKind::GradedLex)
    }

    /// `perm` must be a permutation of `0..n` for the variable count in use.
    pub fn with_permutation(kind: OrderKind, perm: Vec<usize>) -> Self {
        Self { kind, perm: Some(perm) }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn permutation(&self) -> Option<&[usize]> {
        self.perm.as_deref()
    }

    fn exps_in_priority<'a>(&'a self, m: &'a Monomial) -> impl DoubleEndedIterator<Item = u32> + 'a {
        let e = m.exponents();
        let n = e.len();
        (0..n).map(move |k| match &self.perm {
            Some(p) => e[p[k]],
            None => e[k],
        })
    }

    fn lex_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for (x, y) in self.exps_in_priority(a).zip(self.exps_in_priority(b)) {
            match x.cmp(&y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => self.lex_cmp(a, b),
            OrderKind::GradedLex => a.degree().cmp(&b.degree()).then_with(|| self.lex_cmp(a, b)),
            OrderKind::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in self.exps_in_priority(a).rev().zip(self.exps_in_priority(b).rev()) {
                    match x.cmp(&y) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn sort(&self, monomials: &mut [Monomial]) {
        monomials.sort_by(|a, b| self.cmp(a, b));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_degree_two() {
        let o = MonomialOrder::grevlex();
        let mut v = vec![m(&[0, 2]), m(&[2, 0]), m(&[1, 1]), m(&[0, 0]), m(&[1, 0])];
        o.sort(&mut v);
        assert_eq!(v, vec![m(&[0, 0]), m(&[1, 0]), m(&[0, 2]), m(&[1, 1]), m(&[2, 0])]);
    }

    #[test]
    fn grevlex_and_graded_lex_differ_in_three_vars() {
        // x0*x2^2 vs x1^3 ... classic: x1^2 vs x0*x2 in degree 2
        let a = m(&[1, 0, 1]);
        let b = m(&[0, 2, 0]);
        assert_eq!(MonomialOrder::graded_lex().cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::grevlex().cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn lex_with_permutation() {
        let o = MonomialOrder::with_permutation(OrderKind::Lex, vec![1, 0]);
        assert_eq!(o.cmp(&m(&[5, 0]), &m(&[0, 1])), Ordering::Less);
        assert_eq!(MonomialOrder::lex().cmp(&m(&[5, 0]), &m(&[0, 1])), Ordering::Greater);
    }
}
