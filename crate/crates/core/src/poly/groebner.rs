use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use super::{Monomial, MonomialOrder, Poly};
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// An ideal given by generators, optionally with its reduced Gröbner basis and
/// standard-monomial basis of the quotient ring.
#[derive(Debug, Clone)]
pub struct IdealPresentation {
    nvars: usize,
    order: MonomialOrder,
    generators: Vec<Poly>,
    reduced_gb: Option<Vec<Poly>>,
    std_monomials: Option<Vec<Monomial>>,
}

impl IdealPresentation {
    /// Generators only; call [`groebner`] to complete the presentation.
    pub fn new(nvars: usize, generators: Vec<Poly>, order: MonomialOrder) -> Result<Self> {
        check_arity(nvars, &generators)?;
        Ok(Self { nvars, order, generators, reduced_gb: None, std_monomials: None })
    }

    /// Wraps a basis that is already the reduced Gröbner basis under `order`
    /// (monic, sorted by increasing leading monomial).
    pub(crate) fn from_reduced_basis(nvars: usize, gb: Vec<Poly>, order: MonomialOrder) -> Self {
        let std_monomials = standard_monomials(nvars, &gb, &order);
        Self { nvars, order, generators: gb.clone(), reduced_gb: Some(gb), std_monomials }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn reduced_gb(&self) -> Option<&[Poly]> {
        self.reduced_gb.as_deref()
    }

    /// Standard monomials in increasing order; `None` unless the ideal is
    /// zero-dimensional with a known Gröbner basis.
    pub fn std_monomials(&self) -> Option<&[Monomial]> {
        self.std_monomials.as_deref()
    }

    /// `dim ℚ[x]/J` when finite.
    pub fn colength(&self) -> Option<usize> {
        self.std_monomials.as_ref().map(Vec::len)
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.std_monomials.is_some()
    }

    pub fn is_unit(&self) -> bool {
        self.reduced_gb.as_ref().is_some_and(|gb| gb.len() == 1 && gb[0].is_constant())
    }

    /// Leading monomials of the reduced basis.
    pub fn leading_monomials(&self) -> Option<Vec<Monomial>> {
        let gb = self.reduced_gb.as_ref()?;
        Some(gb.iter().filter_map(|g| g.leading_monomial(&self.order).cloned()).collect())
    }

    /// True when both presentations carry the same reduced basis under the same order.
    pub fn same_ideal(&self, other: &IdealPresentation) -> bool {
        self.order == other.order && self.reduced_gb.is_some() && self.reduced_gb == other.reduced_gb
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(normal_form(p, self)?.is_zero())
    }
}

fn check_arity(nvars: usize, polys: &[Poly]) -> Result<()> {
    for p in polys {
        if p.nvars() != nvars {
            return Err(Error::ArityMismatch { expected: nvars, found: p.nvars() });
        }
    }
    Ok(())
}

struct Divisor<'a> {
    lm: &'a Monomial,
    lc: &'a Rational,
    poly: &'a Poly,
}

fn divisors<'a>(basis: &'a [Poly], order: &MonomialOrder) -> Vec<Divisor<'a>> {
    basis
        .iter()
        .filter_map(|g| g.leading_term(order).map(|(lm, lc)| Divisor { lm, lc, poly: g }))
        .collect()
}

/// Full multivariate division remainder of `p` by `basis`.
fn reduce_full(p: &Poly, basis: &[Divisor<'_>], order: &MonomialOrder) -> Poly {
    let mut rest = p.clone();
    let mut rem = Poly::zero(p.nvars());
    loop {
        let Some((m, c)) = rest.leading_term(order) else { break };
        let (m, c) = (m.clone(), c.clone());
        match basis.iter().find(|d| d.lm.divides(&m)) {
            Some(d) => {
                let q = m.div(d.lm).expect("divisibility checked");
                rest.sub_scaled(&q, &(&c / d.lc), d.poly);
            }
            None => {
                rest.add_term(m.clone(), -c.clone());
                rem.add_term(m, c);
            }
        }
    }
    rem
}

/// The S-polynomial of `f` and `g` under `order`.
pub fn s_polynomial(f: &Poly, g: &Poly, order: &MonomialOrder) -> Poly {
    let (Some((lf, cf)), Some((lg, cg))) = (f.leading_term(order), g.leading_term(order)) else {
        return Poly::zero(f.nvars());
    };
    let l = lf.lcm(lg);
    let a = f.mul_term(&l.div(lf).expect("lcm"), &cf.recip());
    let b = g.mul_term(&l.div(lg).expect("lcm"), &cg.recip());
    &a - &b
}

/// Remainder of `p` modulo the ideal, supported on standard monomials.
pub fn normal_form(p: &Poly, ideal: &IdealPresentation) -> Result<Poly> {
    let gb = ideal.reduced_gb.as_ref().ok_or(Error::MissingGroebnerBasis)?;
    if p.nvars() != ideal.nvars {
        return Err(Error::ArityMismatch { expected: ideal.nvars, found: p.nvars() });
    }
    Ok(reduce_full(p, &divisors(gb, &ideal.order), &ideal.order))
}

/// `dim ℚ[x]/J` if finite; `None` when the ideal is not zero-dimensional.
pub fn colength(ideal: &IdealPresentation) -> Result<Option<usize>> {
    if ideal.reduced_gb.is_none() {
        return Err(Error::MissingGroebnerBasis);
    }
    Ok(ideal.colength())
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Buchberger's algorithm with the normal selection strategy, the coprime
/// leading-monomial criterion and the chain criterion. The result is monic
/// and sorted by increasing leading monomial.
pub fn groebner(gens: &[Poly], order: &MonomialOrder) -> Result<IdealPresentation> {
    let nvars = gens.first().map(Poly::nvars).ok_or_else(|| Error::InvalidArgument("empty generator list".into()))?;
    check_arity(nvars, gens)?;
    let gb = reduced_groebner_basis(gens, order);
    let mut ideal = IdealPresentation::from_reduced_basis(nvars, gb, order.clone());
    ideal.generators = gens.to_vec();
    Ok(ideal)
}

fn reduced_groebner_basis(gens: &[Poly], order: &MonomialOrder) -> Vec<Poly> {
    let mut basis: Vec<Poly> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        if g.is_constant() {
            return alloc::vec![Poly::one(g.nvars())];
        }
        basis.push(g.monic(order));
    }
    if basis.is_empty() {
        return basis;
    }

    let lm = |p: &Poly| p.leading_monomial(order).cloned().expect("nonzero");
    let mut lms: Vec<Monomial> = basis.iter().map(lm).collect();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }

    while !pending.is_empty() {
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                let la = lms[a.0].lcm(&lms[a.1]);
                let lb = lms[b.0].lcm(&lms[b.1]);
                order.cmp(&la, &lb).then(a.cmp(b))
            })
            .expect("nonempty");
        pending.remove(&(i, j));

        if lms[i].is_coprime(&lms[j]) {
            continue;
        }
        let l = lms[i].lcm(&lms[j]);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lms[k].divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce_full(&s, &divisors(&basis, order), order);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return alloc::vec![Poly::one(r.nvars())];
        }
        let r = r.monic(order);
        let k = basis.len();
        lms.push(lm(&r));
        basis.push(r);
        for i in 0..k {
            pending.insert((i, k));
        }
    }

    interreduce(basis, order)
}

/// Minimalizes and fully reduces a Gröbner basis.
fn interreduce(basis: Vec<Poly>, order: &MonomialOrder) -> Vec<Poly> {
    let lm = |p: &Poly| p.leading_monomial(order).cloned().expect("nonzero");
    let mut minimal: Vec<Poly> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let m = lm(g);
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let hm = lm(h);
            k != idx && hm.divides(&m) && (hm != m || k < idx)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Poly> = Vec::with_capacity(minimal.len());
    for (idx, g) in minimal.iter().enumerate() {
        let others: Vec<Poly> =
            minimal.iter().enumerate().filter(|&(k, _)| k != idx).map(|(_, h)| h.clone()).collect();
        let m = lm(g);
        // Leading term stays; reduce the tail only.
        let mut tail = g.clone();
        tail.add_term(m.clone(), -g.coeff(&m));
        let tail = reduce_full(&tail, &divisors(&others, order), order);
        let mut out = tail;
        out.add_term(m, g.coeff(&lm(g)));
        reduced.push(out.monic(order));
    }
    reduced.sort_by(|a, b| order.cmp(&lm(a), &lm(b)));
    reduced
}

/// Monomials outside the leading-term ideal, if there are finitely many.
fn standard_monomials(nvars: usize, gb: &[Poly], order: &MonomialOrder) -> Option<Vec<Monomial>> {
    let lms: Vec<Monomial> = gb.iter().filter_map(|g| g.leading_monomial(order).cloned()).collect();
    if lms.iter().any(Monomial::is_one) {
        return Some(Vec::new());
    }
    let zero_dim = (0..nvars).all(|i| lms.iter().any(|m| m.pure_power_var() == Some(i)));
    if !zero_dim {
        return None;
    }
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut queue = VecDeque::from([Monomial::one(nvars)]);
    while let Some(m) = queue.pop_front() {
        if seen.contains(&m) || lms.iter().any(|l| l.divides(&m)) {
            continue;
        }
        for i in 0..nvars {
            queue.push_back(m.mul_var(i));
        }
        seen.insert(m);
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort_by(|a, b| order.cmp(a, b));
    Some(out)
}

/// Checks Buchberger's criterion on a basis: all S-polynomials reduce to zero.
pub fn satisfies_buchberger_criterion(basis: &[Poly], order: &MonomialOrder) -> bool {
    let divs = divisors(basis, order);
    for j in 0..basis.len() {
        for i in 0..j {
            let s = s_polynomial(&basis[i], &basis[j], order);
            if !reduce_full(&s, &divs, order).is_zero() {
                return false;
            }
        }
    }
    true
}

impl PartialEq for IdealPresentation {
    /// Ideal equality via reduced bases (both must be computed).
    fn eq(&self, other: &Self) -> bool {
        self.same_ideal(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use crate::poly::parse_poly;

    fn polys(src: &[&str], n: usize) -> Vec<Poly> {
        src.iter().map(|s| parse_poly(s, n).unwrap()).collect()
    }

    fn gb(src: &[&str], n: usize) -> IdealPresentation {
        groebner(&polys(src, n), &MonomialOrder::grevlex()).unwrap()
    }

    fn monos(src: &[&str], n: usize) -> Vec<Monomial> {
        src.iter().map(|s| parse_poly(s, n).unwrap().leading_monomial(&MonomialOrder::grevlex()).unwrap().clone()).collect()
    }

    #[test]
    fn groebner_examples() {
        let i = gb(&["x0", "x1"], 2);
        assert_eq!(i.reduced_gb().unwrap(), polys(&["x1", "x0"], 2).as_slice());
        assert_eq!(i.std_monomials().unwrap(), monos(&["1"], 2).as_slice());
        assert_eq!(i.colength(), Some(1));

        let i = gb(&["x0^2", "x1"], 2);
        assert_eq!(i.reduced_gb().unwrap(), polys(&["x1", "x0^2"], 2).as_slice());
        assert_eq!(i.std_monomials().unwrap(), monos(&["1", "x0"], 2).as_slice());

        let i = gb(&["x0^2 - x0", "x1"], 2);
        assert_eq!(i.colength(), Some(2));
        assert_eq!(i.std_monomials().unwrap(), monos(&["1", "x0"], 2).as_slice());
    }

    #[test]
    fn unit_ideal() {
        let i = gb(&["x0 + 1", "x0"], 2);
        assert_eq!(i.reduced_gb().unwrap(), &[Poly::one(2)]);
        assert_eq!(i.std_monomials().unwrap().len(), 0);
        assert!(i.is_unit());
    }

    #[test]
    fn colength_examples() {
        assert_eq!(colength(&gb(&["x0", "x1"], 2)).unwrap(), Some(1));
        assert_eq!(colength(&gb(&["x0^2", "x0*x1", "x1^2"], 2)).unwrap(), Some(3));
        assert_eq!(colength(&gb(&["x0"], 2)).unwrap(), None);
        let bare = IdealPresentation::new(2, polys(&["x0"], 2), MonomialOrder::grevlex()).unwrap();
        assert_eq!(colength(&bare), Err(Error::MissingGroebnerBasis));
    }

    #[test]
    fn normal_form_examples() {
        let i = gb(&["x0^2", "x1"], 2);
        assert!(normal_form(&parse_poly("x0^2", 2).unwrap(), &i).unwrap().is_zero());
        assert_eq!(normal_form(&parse_poly("x0*x1 + 3", 2).unwrap(), &i).unwrap(), Poly::constant(2, int(3)));
        assert_eq!(normal_form(&Poly::one(2), &i).unwrap(), Poly::one(2));
        let bare = IdealPresentation::new(2, polys(&["x0"], 2), MonomialOrder::grevlex()).unwrap();
        assert_eq!(normal_form(&Poly::one(2), &bare), Err(Error::MissingGroebnerBasis));
    }

    #[test]
    fn idempotent_and_criterion() {
        for order in [MonomialOrder::grevlex(), MonomialOrder::lex(), MonomialOrder::graded_lex()] {
            let i = groebner(&polys(&["x0^2 + x1*x2 - 1", "x1^2 - x2", "x2^2 - x0 + 2"], 3), &order).unwrap();
            let basis = i.reduced_gb().unwrap().to_vec();
            assert!(satisfies_buchberger_criterion(&basis, &order));
            let again = groebner(&basis, &order).unwrap();
            assert_eq!(again.reduced_gb().unwrap(), basis.as_slice());
        }
    }

    #[test]
    fn colength_is_order_independent() {
        let g = polys(&["x0^2 + x1*x2 - 1", "x1^2 - x2", "x2^2 - x0 + 2"], 3);
        let a = groebner(&g, &MonomialOrder::grevlex()).unwrap().colength();
        let b = groebner(&g, &MonomialOrder::lex()).unwrap().colength();
        assert_eq!(a, b);
        assert_eq!(a, Some(8));
    }

    #[test]
    fn empty_generators_rejected() {
        assert!(groebner(&[], &MonomialOrder::grevlex()).is_err());
    }

    #[test]
    fn zero_generators_give_zero_ideal() {
        let i = groebner(&[Poly::zero(2)], &MonomialOrder::grevlex()).unwrap();
        assert!(i.reduced_gb().unwrap().is_empty());
        assert!(!i.is_zero_dimensional());
    }
}
