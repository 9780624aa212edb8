//! Dense univariate polynomials over ℚ: characteristic polynomials,
//! square-free decomposition and exact rational roots.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{int, Matrix, Rational};

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: alloc::vec![Rational::one()] }
    }

    /// `t - r`
    pub fn linear(r: &Rational) -> Self {
        Self::new(alloc::vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = crate::linalg::zero_vector(self.coeffs.len() + other.coeffs.len() - 1);
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let dl = d.leading();
        let shift_max = rem.len() - d.coeffs.len();
        let mut quot = crate::linalg::zero_vector(shift_max + 1);
        for shift in (0..=shift_max).rev() {
            let top = rem[shift + d.coeffs.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let q = &top / &dl;
            for (k, c) in d.coeffs.iter().enumerate() {
                rem[shift + k] -= &q * c;
            }
            quot[shift] = q;
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's square-free decomposition: `self = lc · Π f_k^k` with each `f_k`
    /// monic, square-free and pairwise coprime. Returns `(f_k, k)` for
    /// non-constant factors.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.div_rem(&a).0;
        let mut c = fp.div_rem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut k = 1;
        while b.degree() > 0 {
            a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), k));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            k += 1;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[Rational], i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
        Self::new((0..n).map(|i| get(&self.coeffs, i) - get(&other.coeffs, i)).collect())
    }

    /// Distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let sqf = self.div_rem(&self.gcd(&self.derivative())).0.monic();
        // Clear denominators, then substitute t = s / a_d so that the
        // polynomial in s is monic with integer coefficients: rational roots
        // of the original become integer roots.
        let den_lcm = sqf.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = sqf.coeffs.iter().map(|c| (c * Rational::from_integer(den_lcm.clone())).to_integer()).collect();
        let d = ints.len() - 1;
        let lead = ints[d].clone();
        let monic_int: Vec<BigInt> = ints
            .iter()
            .enumerate()
            .map(|(i, a)| if i == d { BigInt::one() } else { a * num_traits::pow(lead.clone(), d - 1 - i) })
            .collect();
        let h = UniPoly::new(monic_int.iter().map(|a| Rational::from_integer(a.clone())).collect());
        let lead_q = Rational::from_integer(lead);
        let mut roots: Vec<Rational> = integer_roots(&h).into_iter().map(|s| Rational::from_integer(s) / &lead_q).collect();
        roots.sort();
        roots
    }
}

/// Integer roots of a square-free monic polynomial with integer coefficients,
/// isolated with a Sturm sequence over integer intervals.
fn integer_roots(h: &UniPoly) -> Vec<BigInt> {
    let bound: BigInt = BigInt::one()
        + h.coeffs.iter().map(|c| c.to_integer().abs()).max().unwrap_or_else(BigInt::zero);
    let sturm = sturm_sequence(h);
    let changes = |x: &BigInt| -> usize {
        let xq = Rational::from_integer(x.clone());
        let signs: Vec<i8> = sturm
            .iter()
            .map(|p| {
                let v = p.eval(&xq);
                if v.is_positive() {
                    1
                } else if v.is_negative() {
                    -1
                } else {
                    0
                }
            })
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let mut roots = Vec::new();
    // Roots in (lo, hi] number changes(lo) - changes(hi) for square-free h.
    let mut stack = alloc::vec![(-bound.clone() - BigInt::one(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = changes(&lo) - changes(&hi);
        if count == 0 {
            continue;
        }
        if &hi - &lo == BigInt::one() {
            if h.eval(&Rational::from_integer(hi.clone())).is_zero() {
                roots.push(hi);
            }
            continue;
        }
        let mid = (&lo + &hi).div_floor(&BigInt::from(2));
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    roots
}

fn sturm_sequence(h: &UniPoly) -> Vec<UniPoly> {
    let mut seq = alloc::vec![h.clone(), h.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].div_rem(&seq[n - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(UniPoly::new(r.coeffs.into_iter().map(|c| -c).collect()));
    }
    seq
}

/// Characteristic polynomial `det(t·Id - m)` by the Faddeev–LeVerrier recursion.
pub fn charpoly(m: &Matrix) -> UniPoly {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut coeffs = crate::linalg::zero_vector(n + 1);
    coeffs[n] = Rational::one();
    let mut mk = Matrix::zeros(n, n);
    let mut c_prev = Rational::one();
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I ; c_{n-k} = -tr(A·M_k)/k
        mk = &(m * &mk) + &Matrix::scalar(n, &c_prev);
        let am = m * &mk;
        let c = -am.trace() / int(k as i64);
        coeffs[n - k] = c.clone();
        c_prev = c;
    }
    UniPoly::new(coeffs)
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;
    use alloc::string::ToString;
    use alloc::vec;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn charpoly_small() {
        // [[2,1],[0,3]] -> t^2 - 5t + 6
        let m = Matrix::from_i64(&[&[2, 1], &[0, 3]]);
        assert_eq!(charpoly(&m), up(&[6, -5, 1]));
        assert_eq!(charpoly(&Matrix::zeros(3, 3)), up(&[0, 0, 0, 1]));
    }

    #[test]
    fn rational_roots_found_exactly() {
        // (2t - 1)(t + 3)(t^2 + 1)
        let q = up(&[-1, 2]).mul(&up(&[3, 1])).mul(&up(&[1, 0, 1]));
        assert_eq!(q.rational_roots(), vec![int(-3), frac(1, 2)]);
        // repeated roots are reported once
        let r = up(&[-1, 1]).pow(3).mul(&up(&[0, 1]));
        assert_eq!(r.rational_roots(), vec![int(0), int(1)]);
        assert!(up(&[-2, 0, 1]).rational_roots().is_empty());
    }

    #[test]
    fn large_integer_root() {
        let r = Rational::from_integer(BigInt::from(10).pow(12u32) + BigInt::from(7));
        let p = UniPoly::linear(&r).mul(&UniPoly::linear(&frac(-5, 3)));
        assert_eq!(p.rational_roots(), vec![frac(-5, 3), r]);
    }

    #[test]
    fn squarefree_decomposition_multiplicities() {
        // t^2 (t-1)^3 (t^2+1)
        let p = up(&[0, 1]).pow(2).mul(&up(&[-1, 1]).pow(3)).mul(&up(&[1, 0, 1]));
        let dec = p.squarefree_decomposition();
        assert_eq!(dec.len(), 3);
        assert_eq!(dec[0], (up(&[1, 0, 1]), 1));
        assert_eq!(dec[1], (up(&[0, 1]), 2));
        assert_eq!(dec[2], (up(&[-1, 1]), 3));
    }

    #[test]
    fn display() {
        assert_eq!(up(&[1, 0, -1]).to_string(), "-t^2 + 1");
        assert_eq!(up(&[0, 3]).to_string(), "3*t");
    }
}
