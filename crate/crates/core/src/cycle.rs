//! The Hilbert–Chow map: the support cycle `Σ ν_l [p_l]` of a commuting datum.
//!
//! A point `p = (λ_0, …, λ_{n-1})` of the support is a joint eigenvalue of the
//! `B_i`, and its multiplicity is the dimension of the joint generalized
//! eigenspace `∩_i ker (B_i − λ_i)^c`. This module handles the case where every
//! eigenvalue is rational; the floating-point path lives in the std crate.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::adhm::AdhmDatum;
use crate::error::{Error, Result};
use crate::linalg::{int, Matrix, Rational, Vector};
use crate::poly::Poly;
use crate::univariate::{charpoly, UniPoly};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldTag {
    Exact,
    /// Points closer than this were merged.
    Approximate(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CyclePoint<S> {
    pub coords: Vec<S>,
    pub multiplicity: usize,
}

/// A formal sum of points with positive multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCycle<S = Rational> {
    pub n: usize,
    pub points: Vec<CyclePoint<S>>,
    pub field_tag: FieldTag,
}

impl<S> ZeroCycle<S> {
    /// `Σ ν_l`, which equals `c` for cycles of a datum.
    pub fn degree(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    /// Multiplicities sorted in decreasing order: the stratum of the cycle.
    pub fn partition(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.points.iter().map(|p| p.multiplicity).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

/// Distinct rational roots of `p` with multiplicities, plus the cofactor
/// that has no rational roots.
fn split_rational(p: &UniPoly) -> (Vec<(Rational, usize)>, UniPoly) {
    let mut rest = p.clone();
    let mut out = Vec::new();
    for r in p.rational_roots() {
        let lin = UniPoly::linear(&r);
        let mut mult = 0;
        loop {
            let (q, rem) = rest.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            rest = q;
            mult += 1;
        }
        out.push((r, mult));
    }
    (out, rest)
}

/// Joint generalized eigenspaces of a commuting family with rational spectra.
///
/// Returns each joint eigenvalue with a basis of its generalized eigenspace
/// (as the columns of a `c × ν` matrix), sorted by eigenvalue.
pub fn joint_eigenspaces(b: &[Matrix]) -> Result<Vec<(Vector, Matrix)>> {
    let c = b.first().map(Matrix::rows).ok_or(Error::InvalidArgument("no matrices".into()))?;
    let mut spaces: Vec<(Vector, Matrix)> = alloc::vec![(Vec::new(), Matrix::identity(c))];
    for (idx, bi) in b.iter().enumerate() {
        let (roots, rest) = split_rational(&charpoly(bi));
        if rest.degree() > 0 {
            return Err(Error::IrrationalEigenvalues { matrix: idx, factor: rest.to_string() });
        }
        let shifted: Vec<(Rational, Matrix)> = roots
            .into_iter()
            .map(|(r, _)| {
                let m = (bi - &Matrix::scalar(c, &r)).pow(c as u32);
                (r, m)
            })
            .collect();
        let mut next = Vec::new();
        for (pt, u) in &spaces {
            for (r, m) in &shifted {
                let ker = (m * u).kernel();
                if ker.is_empty() {
                    continue;
                }
                let k = Matrix::from_columns(u.cols(), &ker)?;
                let mut coords = pt.clone();
                coords.push(r.clone());
                next.push((coords, u * &k));
            }
        }
        spaces = next;
    }
    spaces.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(spaces)
}

/// Support cycle of a commuting datum whose matrices have rational spectra.
pub fn hilbert_chow_exact(x: &AdhmDatum) -> Result<ZeroCycle> {
    if let Some((i, j)) = x.commutation_violation() {
        return Err(Error::NonCommuting(i, j));
    }
    let points = joint_eigenspaces(x.matrices())?
        .into_iter()
        .map(|(coords, basis)| CyclePoint { coords, multiplicity: basis.cols() })
        .collect();
    let cycle = ZeroCycle { n: x.n(), points, field_tag: FieldTag::Exact };
    debug_assert_eq!(cycle.degree(), x.c());
    Ok(cycle)
}

/// Checks `tr p(B) = Σ ν_l p(p_l)` exactly for each probe.
pub fn cycle_trace_check(x: &AdhmDatum, cycle: &ZeroCycle, probes: &[Poly]) -> Result<bool> {
    for p in probes {
        let lhs = p.eval_matrices(x.matrices())?.trace();
        let mut rhs = Rational::zero();
        for pt in &cycle.points {
            rhs += p.eval(&pt.coords)? * int(pt.multiplicity as i64);
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All monomials in `n` variables of total degree at most `d`.
pub fn monomial_probes(n: usize, d: u32) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut exps = alloc::vec![0u32; n];
    fn rec(k: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Poly>) {
        if k == exps.len() {
            out.push(Poly::term(crate::poly::Monomial::from_exponents(exps.clone()), Rational::from_integer(1.into())));
            return;
        }
        for e in 0..=left {
            exps[k] = e;
            rec(k + 1, left - e, exps, out);
        }
        exps[k] = 0;
    }
    rec(0, d, &mut exps, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit_vector;
    use crate::poly::{groebner, parse_poly, MonomialOrder};
    use alloc::vec;

    fn cp(coords: &[i64], m: usize) -> CyclePoint<Rational> {
        CyclePoint { coords: coords.iter().map(|&x| int(x)).collect(), multiplicity: m }
    }

    fn jordan() -> AdhmDatum {
        AdhmDatum::new(vec![Matrix::from_i64(&[&[0, 0], &[1, 0]]), Matrix::zeros(2, 2)], unit_vector(2, 0)).unwrap()
    }

    #[test]
    fn diagonal_points() {
        let x = AdhmDatum::from_points(&[vec![int(0), int(0)], vec![int(1), int(0)]], 2).unwrap();
        let z = hilbert_chow_exact(&x).unwrap();
        assert_eq!(z.points, vec![cp(&[0, 0], 1), cp(&[1, 0], 1)]);
        assert_eq!(z.partition(), vec![1, 1]);
    }

    #[test]
    fn double_point() {
        let z = hilbert_chow_exact(&jordan()).unwrap();
        assert_eq!(z.points, vec![cp(&[0, 0], 2)]);
    }

    #[test]
    fn three_points_from_ideal() {
        let o = MonomialOrder::grevlex();
        let pts = [vec![int(1), int(2)], vec![int(-1), int(0)], vec![int(3), int(3)]];
        let x = AdhmDatum::from_points(&pts, 2).unwrap();
        let via_ideal = AdhmDatum::ideal_to_datum(&x.datum_to_ideal(&o).unwrap()).unwrap();
        let z = hilbert_chow_exact(&via_ideal).unwrap();
        assert_eq!(z.points, vec![cp(&[-1, 0], 1), cp(&[1, 2], 1), cp(&[3, 3], 1)]);
    }

    #[test]
    fn irrational_spectrum_is_reported() {
        // x0^2 - 2, x1
        let o = MonomialOrder::grevlex();
        let j = groebner(&[parse_poly("x0^2 - 2", 2).unwrap(), parse_poly("x1", 2).unwrap()], &o).unwrap();
        let x = AdhmDatum::ideal_to_datum(&j).unwrap();
        assert_eq!(
            hilbert_chow_exact(&x),
            Err(Error::IrrationalEigenvalues { matrix: 0, factor: "t^2 - 2".into() })
        );
    }

    #[test]
    fn trace_identity_examples() {
        let x = AdhmDatum::from_points(&[vec![int(0), int(0)], vec![int(1), int(0)]], 2).unwrap();
        let z = hilbert_chow_exact(&x).unwrap();
        assert!(cycle_trace_check(&x, &z, &[Poly::one(2), Poly::var(2, 0)]).unwrap());
        let j = jordan();
        let zj = hilbert_chow_exact(&j).unwrap();
        let xy = &Poly::var(2, 0) * &Poly::var(2, 1);
        assert!(cycle_trace_check(&j, &zj, &[xy]).unwrap());
        // a wrong cycle is caught
        let wrong = ZeroCycle { n: 2, points: vec![cp(&[1, 0], 2)], field_tag: FieldTag::Exact };
        assert!(!cycle_trace_check(&j, &wrong, &[Poly::var(2, 0)]).unwrap());
    }

    #[test]
    fn probes_enumerate_all_monomials() {
        assert_eq!(monomial_probes(2, 3).len(), 10);
        assert_eq!(monomial_probes(3, 3).len(), 20);
    }
}
