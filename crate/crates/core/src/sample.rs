//! Seeded generators for corpora of ideals and ADHM data.
//!
//! Every function takes the random source explicitly, so a fixed seed gives a
//! fixed corpus.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::adhm::AdhmDatum;
use crate::error::Result;
use crate::linalg::{frac, int, unit_vector, IncrementalSpan, Matrix, Rational, SpanInsert, Vector};
use crate::poly::{groebner, IdealPresentation, Monomial, MonomialOrder, Poly};

/// A down-closed set of monomials (a staircase); its complement is a monomial ideal.
pub type Staircase = BTreeSet<Monomial>;

/// Cells that can be added to `s` keeping it down-closed.
fn addable_cells(s: &Staircase, n: usize) -> Vec<Monomial> {
    let mut out = BTreeSet::new();
    for m in s {
        for i in 0..n {
            let cand = m.mul_var(i);
            if s.contains(&cand) {
                continue;
            }
            let closed = (0..n).all(|j| match cand.div(&Monomial::var(n, j)) {
                Some(d) => s.contains(&d),
                None => true,
            });
            if closed {
                out.insert(cand);
            }
        }
    }
    out.into_iter().collect()
}

/// All staircases with `1..=max_size` cells in `n` variables: partitions for
/// `n = 2`, plane partitions for `n = 3`.
pub fn staircases(n: usize, max_size: usize) -> Vec<Staircase> {
    let mut all = Vec::new();
    if max_size == 0 {
        return all;
    }
    let mut layer: BTreeSet<Staircase> = BTreeSet::new();
    layer.insert([Monomial::one(n)].into_iter().collect());
    for _ in 1..max_size {
        let mut next = BTreeSet::new();
        for s in &layer {
            for cell in addable_cells(s, n) {
                let mut t = s.clone();
                t.insert(cell);
                next.insert(t);
            }
        }
        all.extend(core::mem::replace(&mut layer, next));
    }
    all.extend(layer);
    all
}

/// A random staircase grown one addable cell at a time.
pub fn random_staircase(n: usize, size: usize, rng: &mut impl Rng) -> Staircase {
    let mut s: Staircase = [Monomial::one(n)].into_iter().collect();
    while s.len() < size {
        let cells = addable_cells(&s, n);
        s.insert(cells.choose(rng).expect("a finite staircase always has an addable cell").clone());
    }
    s
}

/// Generators of the monomial ideal spanned by everything outside `s`.
pub fn staircase_generators(s: &Staircase, n: usize) -> Vec<Poly> {
    let mut gens = BTreeSet::new();
    for m in s {
        for i in 0..n {
            let cand = m.mul_var(i);
            if !s.contains(&cand) {
                gens.insert(cand);
            }
        }
    }
    gens.into_iter().map(|m| Poly::term(m, Rational::one())).collect()
}

/// The monomial ideal of a staircase, as a reduced Gröbner basis.
pub fn monomial_ideal(s: &Staircase, n: usize, order: &MonomialOrder) -> Result<IdealPresentation> {
    groebner(&staircase_generators(s, n), order)
}

/// A small random rational: an integer in `[-6, 6]`, sometimes halved or thirded.
fn small_rational(rng: &mut impl Rng) -> Rational {
    let num = rng.gen_range(-6..=6);
    let den = *[1, 1, 1, 2, 3].choose(rng).expect("non-empty");
    frac(num, den)
}

/// `k` distinct random points in `ℚ^n`.
pub fn random_points(k: usize, n: usize, rng: &mut impl Rng) -> Vec<Vector> {
    let mut pts: Vec<Vector> = Vec::with_capacity(k);
    while pts.len() < k {
        let p: Vector = (0..n).map(|_| small_rational(rng)).collect();
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

/// Generators of the vanishing ideal of distinct points, computed without
/// matrices: monomials are visited in increasing order and each one whose
/// evaluation vector depends on the earlier independent ones yields a
/// polynomial vanishing on all points. The resulting basis is then scrambled
/// by adding random multiples of earlier elements to later ones, so it is no
/// longer reduced.
pub fn point_ideal_generators(points: &[Vector], n: usize, order: &MonomialOrder, rng: &mut impl Rng) -> Result<Vec<Poly>> {
    let k = points.len();
    let mut span = IncrementalSpan::new(k);
    let mut standard: Vec<Monomial> = Vec::new();
    let mut leading: Vec<Monomial> = Vec::new();
    let mut gens: Vec<Poly> = Vec::new();
    let mut degree = 0u32;
    while !span.is_full() || leading.is_empty() || !covers_all_variables(&leading, n) {
        let mut layer = monomials_of_degree(n, degree);
        order.sort(&mut layer);
        for m in layer {
            if leading.iter().any(|l| l.divides(&m)) {
                continue;
            }
            let term = Poly::term(m.clone(), Rational::one());
            let values = points.iter().map(|p| term.eval(p)).collect::<Result<Vector>>()?;
            match span.insert(&values)? {
                SpanInsert::New => standard.push(m),
                SpanInsert::Dependent(coords) => {
                    let mut g = term;
                    for (c, s) in coords.iter().zip(&standard) {
                        g.add_term(s.clone(), -c.clone());
                    }
                    leading.push(m);
                    gens.push(g);
                }
            }
        }
        degree += 1;
    }
    // Elementary operations g_i += h·g_j (j < i) keep the ideal unchanged.
    let mut scrambled = gens;
    for i in 1..scrambled.len() {
        let j = rng.gen_range(0..i);
        let h = Poly::term(Monomial::var(n, rng.gen_range(0..n)), int(rng.gen_range(-3..=3)));
        let add = &h * &scrambled[j];
        scrambled[i] = (&scrambled[i] + &add).scale(&int(rng.gen_range(1..=4)));
    }
    Ok(scrambled)
}

/// Every variable has a pure power among the leading monomials.
fn covers_all_variables(leading: &[Monomial], n: usize) -> bool {
    (0..n).all(|i| leading.iter().any(|m| m.pure_power_var() == Some(i)))
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(k: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k + 1 == exps.len() {
            exps[k] = left;
            out.push(Monomial::from_exponents(exps.clone()));
            return;
        }
        for e in 0..=left {
            exps[k] = e;
            rec(k + 1, left - e, exps, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(0, d, &mut alloc::vec![0; n], &mut out);
    out
}

/// A random matrix in `GL_c(ℚ)` with small entries: `P·L·D·U` with a
/// permutation `P`, unit triangular `L`, `U` and a nonzero diagonal `D`.
pub fn random_invertible(c: usize, rng: &mut impl Rng) -> Matrix {
    let mut l = Matrix::identity(c);
    let mut u = Matrix::identity(c);
    let mut d = Matrix::identity(c);
    for r in 0..c {
        for s in 0..r {
            l[(r, s)] = int(rng.gen_range(-2..=2));
            u[(s, r)] = int(rng.gen_range(-2..=2));
        }
        let mut v = 0;
        while v == 0 {
            v = rng.gen_range(-3..=3);
        }
        d[(r, r)] = int(v);
    }
    let mut perm: Vec<usize> = (0..c).collect();
    perm.shuffle(rng);
    let mut p = Matrix::zeros(c, c);
    for (r, &s) in perm.iter().enumerate() {
        p[(r, s)] = Rational::one();
    }
    &(&(&p * &l) * &d) * &u
}

/// A stable datum of size `c`: either distinct points or a random monomial
/// ideal, moved by a random gauge transformation.
pub fn random_stable_datum(n: usize, c: usize, rng: &mut impl Rng) -> Result<AdhmDatum> {
    let base = if rng.gen_bool(0.5) {
        AdhmDatum::from_points(&random_points(c, n, rng), n)?
    } else {
        let s = random_staircase(n, c, rng);
        AdhmDatum::ideal_to_datum(&monomial_ideal(&s, n, &MonomialOrder::grevlex())?)?
    };
    base.act(&random_invertible(c, rng))
}

/// A commuting datum with a proper invariant subspace containing `I`.
///
/// Built block-diagonally from a stable datum of size `p < c` (which holds
/// `I`) and an arbitrary commuting block of size `c − p`, then conjugated by
/// a block unipotent matrix (making it block upper triangular) and by a random
/// `g`. Requires `c ≥ 2`.
pub fn unstable_block_datum(n: usize, c: usize, rng: &mut impl Rng) -> Result<AdhmDatum> {
    assert!(c >= 2, "an unstable datum needs c ≥ 2");
    let p = rng.gen_range(1..c);
    let q = c - p;
    let stable = random_stable_datum(n, p, rng)?;
    let rest = if rng.gen_bool(0.5) { diagonal_tuple(n, q, rng) } else { jordan_tower_tuple(n, q, rng) };
    let mut b = Vec::with_capacity(n);
    for (bp, br) in stable.matrices().iter().zip(&rest) {
        let mut m = Matrix::zeros(c, c);
        m.set_block(0, 0, bp);
        m.set_block(p, p, br);
        b.push(m);
    }
    let mut i = stable.vector().to_vec();
    i.extend((0..q).map(|_| Rational::zero()));
    let mut unipotent = Matrix::identity(c);
    for r in 0..p {
        for s in p..c {
            unipotent[(r, s)] = int(rng.gen_range(-2..=2));
        }
    }
    AdhmDatum::new(b, i)?.act(&unipotent)?.act(&random_invertible(c, rng))
}

/// Simultaneously diagonal matrices whose joint eigenvalues are distinct points.
fn diagonal_tuple(n: usize, c: usize, rng: &mut impl Rng) -> Vec<Matrix> {
    let pts = random_points(c, n, rng);
    (0..n).map(|i| Matrix::diagonal(&pts.iter().map(|p| p[i].clone()).collect::<Vec<_>>())).collect()
}

/// `B_i = a_i + Σ_k r_{ik} N^k` for the lower shift `N`, with `B_0 = a_0 + N`.
fn jordan_tower_tuple(n: usize, c: usize, rng: &mut impl Rng) -> Vec<Matrix> {
    let mut shift = Matrix::zeros(c, c);
    for r in 1..c {
        shift[(r, r - 1)] = Rational::one();
    }
    let powers: Vec<Matrix> = (0..c as u32).map(|k| shift.pow(k)).collect();
    (0..n)
        .map(|i| {
            let mut m = powers[0].scale(&int(rng.gen_range(-3..=3)));
            for (k, nk) in powers.iter().enumerate().skip(1) {
                let coeff = if i == 0 { int(i64::from(k == 1)) } else { int(rng.gen_range(-2..=2)) };
                m = &m + &nk.scale(&coeff);
            }
            m
        })
        .collect()
}

/// A commuting, typically unstable tuple for the stabilizing search:
/// simultaneously diagonalizable with distinct joint eigenvalues, or a
/// single Jordan tower, gauged by a random `g`. `I` is a fixed basis vector,
/// which fails to be cyclic in most draws.
pub fn commuting_search_tuple(n: usize, c: usize, rng: &mut impl Rng) -> Result<AdhmDatum> {
    let (b, i) = if rng.gen_bool(0.5) {
        (diagonal_tuple(n, c, rng), unit_vector(c, 0))
    } else {
        (jordan_tower_tuple(n, c, rng), unit_vector(c, c - 1))
    };
    AdhmDatum::new(b, i)?.act(&random_invertible(c, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn staircase_counts_are_partition_numbers() {
        let count = |n, k| staircases(n, 6).iter().filter(|s| s.len() == k).count();
        assert_eq!((1..=6).map(|k| count(2, k)).collect::<Vec<_>>(), [1, 2, 3, 5, 7, 11]);
        assert_eq!((1..=6).map(|k| count(3, k)).collect::<Vec<_>>(), [1, 3, 6, 13, 24, 48]);
    }

    #[test]
    fn monomial_ideal_has_the_staircase_as_standard_monomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = random_staircase(3, 5, &mut rng);
        let j = monomial_ideal(&s, 3, &MonomialOrder::grevlex()).unwrap();
        let std: Staircase = j.std_monomials().unwrap().iter().cloned().collect();
        assert_eq!(std, s);
    }

    #[test]
    fn point_generators_vanish_and_have_right_colength() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let o = MonomialOrder::grevlex();
        for k in 1..=5 {
            let pts = random_points(k, 3, &mut rng);
            let gens = point_ideal_generators(&pts, 3, &o, &mut rng).unwrap();
            for g in &gens {
                for p in &pts {
                    assert!(g.eval(p).unwrap().is_zero());
                }
            }
            assert_eq!(groebner(&gens, &o).unwrap().colength(), Some(k));
        }
    }

    #[test]
    fn generated_data_have_their_labels() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for c in 2..=4 {
            let g = random_invertible(c, &mut rng);
            assert!(g.is_invertible());
            let x = random_stable_datum(3, c, &mut rng).unwrap();
            assert!(x.is_commuting() && x.is_stable().unwrap());
            let y = unstable_block_datum(3, c, &mut rng).unwrap();
            assert!(y.is_commuting() && !y.is_stable().unwrap());
            let t = commuting_search_tuple(3, c, &mut rng).unwrap();
            assert!(t.is_commuting());
        }
    }
}
