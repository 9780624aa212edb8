//! The perfect extended monad of a stable datum.
//!
//! For `X = (B_0, …, B_{n-1}, I)` put `A_j = B_j z_n − z_j`. The complex has
//! terms `V ⊗ Λ^{k}ℚ^n` in degree `1 − k` (for `k ≥ 2`), `V^{⊕n} ⊕ W` in degree
//! 0 and `V` in degree 1, with differentials given by the Koszul complex of the
//! commuting operators `A_j`:
//!
//! ```text
//! α_0      = ( A_0  A_1  ⋯  A_{n-1}  I z_n )
//! α_{-1}   : e_{ij} ↦ A_j e_i − A_i e_j          (i < j, zero W row)
//! α_{-k}   : e_T ↦ −Σ_m (−1)^m A_{t_m} e_{T∖t_m}  (|T| = k + 1)
//! ```
//!
//! For `n = 3` these are exactly the classical three maps; for larger `n` the
//! deeper differentials follow the same sign rule, and every monad produced
//! here is checked with [`check_complex`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adhm::AdhmDatum;
use crate::cycle::joint_eigenspaces;
use crate::error::{Error, Result};
use crate::linalg::{int, is_zero_vector, Matrix, Rational, Vector};

/// Dimensions of the terms, keyed by degree `1 − n ..= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonadShape {
    pub n: usize,
    pub c: usize,
    pub r: usize,
    pub dims: BTreeMap<i32, usize>,
}

impl MonadShape {
    /// `dims[1] = c`, `dims[0] = n·c + r`, `dims[i] = C(n, 1 − i)·c` for `i < 0`.
    pub fn new(n: usize, c: usize, r: usize) -> Self {
        let mut dims = BTreeMap::new();
        dims.insert(1, c);
        dims.insert(0, n * c + r);
        for k in 2..=n {
            dims.insert(1 - k as i32, binomial(n, k) * c);
        }
        Self { n, c, r, dims }
    }

    pub fn lowest_degree(&self) -> i32 {
        1 - self.n as i32
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    /// `Σ (−1)^i dims[i]`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().map(|(&d, &v)| if d.rem_euclid(2) == 0 { v as i64 } else { -(v as i64) }).sum()
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A matrix of linear forms `Σ_k z_k · coeffs[k]` in `z_0, …, z_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFormMap {
    pub rows: usize,
    pub cols: usize,
    pub coeffs: Vec<Matrix>,
}

impl LinearFormMap {
    pub fn zero(rows: usize, cols: usize, nforms: usize) -> Self {
        Self { rows, cols, coeffs: (0..nforms).map(|_| Matrix::zeros(rows, cols)).collect() }
    }

    pub fn eval(&self, z: &[Rational]) -> Result<Matrix> {
        if z.len() != self.coeffs.len() {
            return Err(Error::ArityMismatch { expected: self.coeffs.len(), found: z.len() });
        }
        let mut out = Matrix::zeros(self.rows, self.cols);
        for (zk, ck) in z.iter().zip(&self.coeffs) {
            if !zk.is_zero() {
                out = &out + &ck.scale(zk);
            }
        }
        Ok(out)
    }

    fn set_block(&mut self, form: usize, r0: usize, c0: usize, block: &Matrix) {
        self.coeffs[form].set_block(r0, c0, block);
    }
}

/// Terms and differentials; `alphas[i]` maps degree `i` to degree `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedMonad {
    pub shape: MonadShape,
    pub alphas: BTreeMap<i32, LinearFormMap>,
}

/// A failed coefficient identity `α'^k α^l + α'^l α^k = 0` (or `α'^k α^k = 0`
/// when `k == l`) for the composite out of `degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexViolation {
    Coefficient { degree: i32, k: usize, l: usize },
    /// Consecutive maps whose sizes do not chain.
    Shape { degree: i32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexReport {
    pub violations: Vec<ComplexViolation>,
}

impl ComplexReport {
    pub fn is_complex(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lexicographically ordered `size`-subsets of `0..n`.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Places `sign · A_j = sign · (B_j z_n − z_j)` into block `(row, col)`.
fn put_a(map: &mut LinearFormMap, x: &AdhmDatum, j: usize, sign: i64, row: usize, col: usize) {
    let c = x.c();
    let n = x.n();
    let s = int(sign);
    map.set_block(n, row * c, col * c, &x.matrices()[j].scale(&s));
    map.set_block(j, row * c, col * c, &Matrix::scalar(c, &-s));
}

/// Assembles the monad maps from any datum, without checking commutation or
/// stability. Non-commuting input yields a pseudo-monad that fails
/// [`check_complex`].
pub fn assemble_monad(x: &AdhmDatum) -> Result<ExtendedMonad> {
    let (n, c) = (x.n(), x.c());
    if n < 2 {
        return Err(Error::InvalidArgument("the monad needs n ≥ 2".into()));
    }
    let shape = MonadShape::new(n, c, 1);
    let forms = n + 1;
    let mut alphas = BTreeMap::new();

    // α_0 : V^n ⊕ W → V
    let mut a0 = LinearFormMap::zero(c, n * c + 1, forms);
    for j in 0..n {
        put_a(&mut a0, x, j, 1, 0, j);
    }
    a0.coeffs[n].set_block(0, n * c, &x.i_matrix());
    alphas.insert(0, a0);

    // α_{1-s} : V ⊗ Λ^s → V ⊗ Λ^{s-1}, for s = 2..n
    for s in 2..=n {
        let sources = subsets(n, s);
        let targets = subsets(n, s - 1);
        let index: BTreeMap<&Vec<usize>, usize> = targets.iter().enumerate().map(|(k, t)| (t, k)).collect();
        let rows = shape.dim(2 - s as i32);
        let mut map = LinearFormMap::zero(rows, sources.len() * c, forms);
        for (col, t) in sources.iter().enumerate() {
            for (m, &j) in t.iter().enumerate() {
                let mut face = t.clone();
                face.remove(m);
                let row = index[&face];
                let sign = if m % 2 == 0 { -1 } else { 1 };
                put_a(&mut map, x, j, sign, row, col);
            }
        }
        alphas.insert(1 - s as i32, map);
    }
    Ok(ExtendedMonad { shape, alphas })
}

/// The monad of a commuting stable datum; the result is verified to be a complex.
pub fn build_monad(x: &AdhmDatum) -> Result<ExtendedMonad> {
    if !x.is_stable()? {
        return Err(Error::Unstable { rank: x.krylov().rank, c: x.c() });
    }
    let m = assemble_monad(x)?;
    let report = check_complex(&m);
    if !report.is_complex() {
        return Err(Error::InvalidArgument(alloc::format!("assembled maps are not a complex: {:?}", report.violations)));
    }
    Ok(m)
}

/// Checks the coefficient identities that make consecutive differentials compose to zero.
pub fn check_complex(m: &ExtendedMonad) -> ComplexReport {
    let mut violations = Vec::new();
    for (&deg, first) in &m.alphas {
        let Some(second) = m.alphas.get(&(deg + 1)) else { continue };
        if second.cols != first.rows || first.coeffs.len() != second.coeffs.len() {
            violations.push(ComplexViolation::Shape { degree: deg });
            continue;
        }
        let forms = first.coeffs.len();
        for k in 0..forms {
            for l in k..forms {
                let mut s = &second.coeffs[k] * &first.coeffs[l];
                if l != k {
                    s = &s + &(&second.coeffs[l] * &first.coeffs[k]);
                }
                if !s.is_zero() {
                    violations.push(ComplexViolation::Coefficient { degree: deg, k, l });
                }
            }
        }
    }
    ComplexReport { violations }
}

/// Rank of the outgoing map and cohomology dimension at one degree of a fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiberDegree {
    pub rank: usize,
    pub cohomology: usize,
}

/// Evaluates the monad at a point `z ≠ 0` of projective space.
pub fn fiber_profile(m: &ExtendedMonad, z: &[Rational]) -> Result<BTreeMap<i32, FiberDegree>> {
    if z.len() != m.shape.n + 1 {
        return Err(Error::ArityMismatch { expected: m.shape.n + 1, found: z.len() });
    }
    if is_zero_vector(z) {
        return Err(Error::InvalidArgument("z must be a nonzero vector".into()));
    }
    let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
    for (&deg, a) in &m.alphas {
        ranks.insert(deg, a.eval(z)?.rank());
    }
    let mut out = BTreeMap::new();
    for (&deg, &dim) in &m.shape.dims {
        let out_rank = ranks.get(&deg).copied().unwrap_or(0);
        let in_rank = ranks.get(&(deg - 1)).copied().unwrap_or(0);
        let cohomology = dim.checked_sub(out_rank + in_rank).ok_or_else(|| {
            Error::InvalidArgument(alloc::format!("maps around degree {deg} do not compose to zero"))
        })?;
        out.insert(deg, FiberDegree { rank: out_rank, cohomology });
    }
    Ok(out)
}

/// A random point with small integer coordinates and `z_n ≠ 0`.
pub fn random_chart_point(n: usize, rng: &mut impl Rng) -> Vector {
    let mut z: Vector = (0..n).map(|_| int(rng.gen_range(-5..=5))).collect();
    let mut last = 0;
    while last == 0 {
        last = rng.gen_range(-3..=3);
    }
    z.push(int(last));
    z
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurjectivityOutcome {
    /// Every sampled fiber of `α_0` had full rank `c`.
    FullRank { fibers: usize },
    /// A fiber with rank below `c`.
    RankDeficient { z: Vector, rank: usize },
    /// No deficient fiber among the rational joint eigenvalue candidates.
    NoDeficientFiber,
    /// Candidates could not be enumerated exactly (irrational spectrum).
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurjectivityReport {
    pub stable: bool,
    pub outcome: SurjectivityOutcome,
}

impl SurjectivityReport {
    /// True when the fibers of `α_0` agree with the stability of the datum.
    pub fn holds(&self) -> bool {
        matches!(
            (self.stable, &self.outcome),
            (true, SurjectivityOutcome::FullRank { .. }) | (false, SurjectivityOutcome::RankDeficient { .. })
        )
    }
}

/// Cross-checks "α_0 is surjective ⇔ X is stable" on fibers.
///
/// Stable data: `samples` random chart fibers must all have rank `c`. Unstable
/// data: a deficient fiber is searched among `z = (λ, 1)` for the joint
/// eigenvalues `λ` of the `B_i`, which is where the dual kernel must live.
pub fn check_surjectivity_certificate(x: &AdhmDatum, samples: usize, seed: u64) -> Result<SurjectivityReport> {
    let stable = x.is_stable()?;
    let a0 = alpha_zero(x);
    let c = x.c();
    if stable {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let z = random_chart_point(x.n(), &mut rng);
            let rank = a0.eval(&z)?.rank();
            if rank < c {
                return Ok(SurjectivityReport { stable, outcome: SurjectivityOutcome::RankDeficient { z, rank } });
            }
        }
        return Ok(SurjectivityReport { stable, outcome: SurjectivityOutcome::FullRank { fibers: samples } });
    }
    let spaces = match joint_eigenspaces(x.matrices()) {
        Ok(s) => s,
        Err(Error::IrrationalEigenvalues { .. }) => {
            return Ok(SurjectivityReport { stable, outcome: SurjectivityOutcome::Inconclusive })
        }
        Err(e) => return Err(e),
    };
    for (lambda, _) in spaces {
        let mut z = lambda;
        z.push(Rational::one());
        let rank = a0.eval(&z)?.rank();
        if rank < c {
            return Ok(SurjectivityReport { stable, outcome: SurjectivityOutcome::RankDeficient { z, rank } });
        }
    }
    Ok(SurjectivityReport { stable, outcome: SurjectivityOutcome::NoDeficientFiber })
}

/// `α_0 = (A_0 ⋯ A_{n-1} | I z_n)`, defined for every `n ≥ 1`.
fn alpha_zero(x: &AdhmDatum) -> LinearFormMap {
    let (n, c) = (x.n(), x.c());
    let mut a0 = LinearFormMap::zero(c, n * c + 1, n + 1);
    for j in 0..n {
        put_a(&mut a0, x, j, 1, 0, j);
    }
    a0.coeffs[n].set_block(0, n * c, &x.i_matrix());
    a0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit_vector;
    use alloc::vec;

    fn dims(m: &ExtendedMonad) -> Vec<usize> {
        m.shape.dims.values().copied().collect()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 4), 1);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn point_at_origin_in_three_space() {
        let x = AdhmDatum::new(vec![Matrix::zeros(1, 1); 3], vec![int(1)]).unwrap();
        let m = build_monad(&x).unwrap();
        assert_eq!(dims(&m), vec![1, 3, 4, 1]);
        // α_0 evaluated symbolically: (−z_0, −z_1, −z_2, z_3)
        let a0 = &m.alphas[&0];
        for (k, expect) in [(0, [-1, 0, 0, 0]), (1, [0, -1, 0, 0]), (2, [0, 0, -1, 0]), (3, [0, 0, 0, 1])] {
            assert_eq!(a0.coeffs[k], Matrix::from_i64(&[&expect]));
        }
        assert!(check_complex(&m).is_complex());
    }

    #[test]
    fn three_space_maps_match_the_classical_matrices() {
        // Generic commuting 2×2 data, compared block-by-block with the n = 3 formulas.
        let b0 = Matrix::from_i64(&[&[1, 0], &[2, 1]]);
        let b1 = Matrix::from_i64(&[&[3, 0], &[5, 3]]);
        let b2 = Matrix::from_i64(&[&[0, 0], &[1, 0]]);
        let x = AdhmDatum::new(vec![b0.clone(), b1.clone(), b2.clone()], unit_vector(2, 0)).unwrap();
        let m = build_monad(&x).unwrap();
        assert_eq!(dims(&m), vec![2, 6, 7, 2]);
        let z = vec![int(2), int(-1), int(3), int(5)];
        let a = |b: &Matrix, j: usize| &b.scale(&z[3]) - &Matrix::scalar(2, &z[j]);
        let (a0_, a1_, a2_) = (a(&b0, 0), a(&b1, 1), a(&b2, 2));
        let zero = Matrix::zeros(2, 2);

        let am2 = m.alphas[&-2].eval(&z).unwrap();
        let expect = [-&a2_, a1_.clone(), -&a0_];
        for (r, blk) in expect.iter().enumerate() {
            assert_eq!(&am2.block(2 * r, 0, 2, 2), blk);
        }

        let am1 = m.alphas[&-1].eval(&z).unwrap();
        let expect = [
            [a1_.clone(), a2_.clone(), zero.clone()],
            [-&a0_, zero.clone(), a2_.clone()],
            [zero.clone(), -&a0_, -&a1_],
        ];
        for (r, row) in expect.iter().enumerate() {
            for (col, blk) in row.iter().enumerate() {
                assert_eq!(&am1.block(2 * r, 2 * col, 2, 2), blk);
            }
        }
        assert!(am1.block(6, 0, 1, 6).is_zero());

        let a0 = m.alphas[&0].eval(&z).unwrap();
        for (col, blk) in [&a0_, &a1_, &a2_].into_iter().enumerate() {
            assert_eq!(&a0.block(0, 2 * col, 2, 2), blk);
        }
        assert_eq!(a0.column(6), vec![int(5), int(0)]);
    }

    #[test]
    fn plane_shape() {
        let x = AdhmDatum::new(
            vec![Matrix::from_i64(&[&[0, 0], &[1, 0]]), Matrix::zeros(2, 2)],
            unit_vector(2, 0),
        )
        .unwrap();
        let m = build_monad(&x).unwrap();
        assert_eq!(dims(&m), vec![2, 5, 2]);
        assert_eq!(m.shape.euler_characteristic(), 1);
    }

    #[test]
    fn injected_commutator_breaks_the_complex() {
        let x = AdhmDatum::new(
            vec![
                Matrix::from_i64(&[&[0, 0], &[1, 0]]),
                Matrix::from_i64(&[&[0, 0], &[1, 0]]),
                Matrix::zeros(2, 2),
            ],
            unit_vector(2, 0),
        )
        .unwrap();
        let mut b = x.matrices().to_vec();
        b[1][(0, 1)] = int(1);
        let bad = AdhmDatum::new(b, unit_vector(2, 0)).unwrap();
        assert_eq!(bad.commutation_violation(), Some((0, 1)));
        let report = check_complex(&assemble_monad(&bad).unwrap());
        assert!(!report.is_complex());
        // The products of the z_3-coefficients carry the commutators.
        assert!(report.violations.contains(&ComplexViolation::Coefficient { degree: -1, k: 3, l: 3 }));
        assert!(build_monad(&bad).is_err());
    }

    #[test]
    fn zero_maps_form_a_complex() {
        let shape = MonadShape::new(3, 1, 1);
        let mut alphas = BTreeMap::new();
        alphas.insert(-2, LinearFormMap::zero(3, 1, 4));
        alphas.insert(-1, LinearFormMap::zero(4, 3, 4));
        alphas.insert(0, LinearFormMap::zero(1, 4, 4));
        assert!(check_complex(&ExtendedMonad { shape, alphas }).is_complex());
    }

    fn two_points_in_three_space() -> AdhmDatum {
        AdhmDatum::from_points(&[vec![int(0), int(0), int(0)], vec![int(1), int(2), int(0)]], 3).unwrap()
    }

    #[test]
    fn fiber_profiles() {
        let m = build_monad(&two_points_in_three_space()).unwrap();
        let generic = fiber_profile(&m, &[int(3), int(-1), int(2), int(1)]).unwrap();
        assert_eq!(generic[&-2].cohomology, 0);
        assert_eq!(generic[&-1].cohomology, 0);
        assert_eq!(generic[&0].cohomology, 1);
        assert_eq!(generic[&0].rank, 2);

        let at_point = fiber_profile(&m, &[int(1), int(2), int(0), int(1)]).unwrap();
        assert!(at_point[&0].cohomology >= 2);

        let hyperplane = fiber_profile(&m, &[int(1), int(-2), int(5), int(0)]).unwrap();
        assert_eq!(hyperplane[&0].cohomology, 1);

        assert!(fiber_profile(&m, &vec![int(0); 4]).is_err());
    }

    #[test]
    fn surjectivity_certificates() {
        let r = check_surjectivity_certificate(&two_points_in_three_space(), 10, 1).unwrap();
        assert!(r.stable && r.holds());

        let zero = AdhmDatum::new(vec![Matrix::zeros(2, 2); 3], unit_vector(2, 0)).unwrap();
        let r = check_surjectivity_certificate(&zero, 10, 1).unwrap();
        assert!(!r.stable);
        assert_eq!(
            r.outcome,
            SurjectivityOutcome::RankDeficient { z: vec![int(0), int(0), int(0), int(1)], rank: 1 }
        );
        assert!(r.holds());

        let single = AdhmDatum::new(vec![Matrix::from_i64(&[&[4]]); 3], vec![int(-2)]).unwrap();
        assert!(check_surjectivity_certificate(&single, 5, 9).unwrap().holds());
    }
}
