//! Floating-point Hilbert–Chow map.
//!
//! A random integer combination `L = Σ γ_i B_i` separates the support points
//! for generic `γ`. Its characteristic polynomial is split exactly into
//! square-free parts `f_m` (the roots of `f_m` have multiplicity `m`), so the
//! multiplicity structure is never guessed from floating-point eigenvalues,
//! which would be off by about `ε^{1/m}` on Jordan blocks. Each root `μ` of
//! `f_m` is found numerically, the generalized eigenspace `ker (L − μ)^m` is
//! read off an SVD, and the joint eigenvalue is the normalized trace of each
//! `B_i` compressed to that space. Points are finally merged by single-linkage
//! clustering at the user tolerance.

use adhm_core::cycle::{CyclePoint, FieldTag, ZeroCycle};
use adhm_core::linalg::{int, to_f64};
use adhm_core::univariate::{charpoly, UniPoly};
use adhm_core::{AdhmDatum, Error as CoreError, Matrix, Poly};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AppError, AppResult};

/// Square-free decomposition of the characteristic polynomial of a random
/// combination, redrawn until two consecutive draws see the same number of
/// distinct eigenvalues.
fn generic_combination(x: &AdhmDatum, rng: &mut ChaCha8Rng) -> (Matrix, Vec<(UniPoly, usize)>) {
    let draw = |rng: &mut ChaCha8Rng| {
        let mut l = Matrix::zeros(x.c(), x.c());
        for b in x.matrices() {
            let g = int(rng.gen_range(-7..=7));
            l = &l + &b.scale(&g);
        }
        let parts = charpoly(&l).squarefree_decomposition();
        let distinct: usize = parts.iter().map(|(f, _)| f.degree()).sum();
        (l, parts, distinct)
    };
    let mut prev = draw(rng);
    for _ in 0..32 {
        let next = draw(rng);
        let agree = next.2 == prev.2;
        // Prefer the draw that separates more points.
        if next.2 >= prev.2 {
            prev = next;
        }
        if agree {
            break;
        }
    }
    (prev.0, prev.1)
}

fn to_complex(m: &Matrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |r, c| Complex64::new(to_f64(&m[(r, c)]), 0.0))
}

fn eval_complex(f: &UniPoly, z: Complex64) -> (Complex64, Complex64) {
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    for c in f.coeffs().iter().rev() {
        deriv = deriv * z + value;
        value = value * z + to_f64(c);
    }
    (value, deriv)
}

/// Roots of a square-free polynomial: companion-matrix eigenvalues polished
/// by a few Newton steps.
fn roots(f: &UniPoly) -> Vec<Complex64> {
    let f = f.monic();
    let d = f.degree();
    if d == 0 {
        return Vec::new();
    }
    let coeffs: Vec<f64> = f.coeffs().iter().map(to_f64).collect();
    let companion = DMatrix::from_fn(d, d, |r, c| {
        if c == d - 1 {
            -coeffs[r]
        } else if r == c + 1 {
            1.0
        } else {
            0.0
        }
    });
    companion
        .complex_eigenvalues()
        .iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..3 {
                let (v, dv) = eval_complex(&f, z);
                if dv.norm() == 0.0 {
                    break;
                }
                let step = v / dv;
                if !step.re.is_finite() || !step.im.is_finite() {
                    break;
                }
                z -= step;
            }
            z
        })
        .collect()
}

/// Orthonormal basis (columns) of the `m` least singular directions of `a`.
fn near_kernel(a: &DMatrix<Complex64>, m: usize) -> DMatrix<Complex64> {
    let svd = a.clone().svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let cols: Vec<_> = idx[..m].iter().map(|&k| v_t.row(k).adjoint()).collect();
    DMatrix::from_columns(&cols)
}

fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Single-linkage clustering; multiplicity-weighted means as representatives.
///
/// A pair of points closer than `2·tol` but not closer than `tol/2` has no
/// clear answer, and is reported instead of merged or split.
fn cluster(points: Vec<CyclePoint<Complex64>>, tol: f64) -> AppResult<Vec<CyclePoint<Complex64>>> {
    let k = points.len();
    for a in 0..k {
        for b in a + 1..k {
            let d = distance(&points[a].coords, &points[b].coords);
            if d >= tol / 2.0 && d <= 2.0 * tol {
                return Err(AppError::ClusteringAmbiguity { distance: d, tolerance: tol });
            }
        }
    }
    let mut label: Vec<usize> = (0..k).collect();
    fn find(label: &mut [usize], mut i: usize) -> usize {
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for a in 0..k {
        for b in a + 1..k {
            if distance(&points[a].coords, &points[b].coords) < tol {
                let (ra, rb) = (find(&mut label, a), find(&mut label, b));
                label[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut merged: Vec<(usize, CyclePoint<Complex64>)> = Vec::new();
    for (i, p) in points.into_iter().enumerate() {
        let root = find(&mut label, i);
        let w = p.multiplicity as f64;
        match merged.iter_mut().find(|(r, _)| *r == root) {
            Some((_, q)) => {
                let total = q.multiplicity as f64 + w;
                for (qc, pc) in q.coords.iter_mut().zip(&p.coords) {
                    *qc = (*qc * q.multiplicity as f64 + pc * w) / total;
                }
                q.multiplicity += p.multiplicity;
            }
            None => merged.push((root, p)),
        }
    }
    Ok(merged.into_iter().map(|(_, p)| p).collect())
}

fn lexicographic(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if o.is_ne() {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

/// Approximate support cycle of a commuting datum; deterministic for a fixed seed.
pub fn hilbert_chow_approx(x: &AdhmDatum, tolerance: f64, seed: u64) -> AppResult<ZeroCycle<Complex64>> {
    if !(tolerance > 0.0) {
        return Err(AppError::Core(CoreError::InvalidArgument("tolerance must be positive".into())));
    }
    if let Some((i, j)) = x.commutation_violation() {
        return Err(CoreError::NonCommuting(i, j).into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (l, parts) = generic_combination(x, &mut rng);
    let lc = to_complex(&l);
    let bs: Vec<DMatrix<Complex64>> = x.matrices().iter().map(to_complex).collect();
    let c = x.c();
    let mut points = Vec::new();
    for (f, m) in &parts {
        for mu in roots(f) {
            let shifted = &lc - DMatrix::<Complex64>::identity(c, c) * mu;
            let mut power = shifted.clone();
            for _ in 1..*m {
                power = &power * &shifted;
            }
            let v = near_kernel(&power, *m);
            let coords = bs.iter().map(|b| (v.adjoint() * b * &v).trace() / *m as f64).collect();
            points.push(CyclePoint { coords, multiplicity: *m });
        }
    }
    let mut points = cluster(points, tolerance)?;
    points.sort_by(|a, b| lexicographic(&a.coords, &b.coords));
    let cycle = ZeroCycle { n: x.n(), points, field_tag: FieldTag::Approximate(tolerance) };
    debug_assert_eq!(cycle.degree(), c);
    Ok(cycle)
}

fn eval_poly_complex(p: &Poly, z: &[Complex64]) -> Complex64 {
    p.terms()
        .map(|(m, coeff)| {
            m.exponents().iter().zip(z).fold(Complex64::new(to_f64(coeff), 0.0), |acc, (&e, zi)| acc * zi.powu(e))
        })
        .sum()
}

/// `|tr p(B) − Σ ν p(p_l)| ≤ c · tol · ‖p‖₁ · max(1, max |p_l|)^deg p` for each probe.
pub fn approx_trace_check(x: &AdhmDatum, cycle: &ZeroCycle<Complex64>, probes: &[Poly], tolerance: f64) -> AppResult<bool> {
    let radius = cycle
        .points
        .iter()
        .flat_map(|p| p.coords.iter().map(|w| w.norm()))
        .fold(1.0, f64::max);
    for p in probes {
        let lhs = to_f64(&p.eval_matrices(x.matrices())?.trace());
        let rhs: Complex64 =
            cycle.points.iter().map(|pt| eval_poly_complex(p, &pt.coords) * pt.multiplicity as f64).sum();
        let deg = p.total_degree().unwrap_or(0) as i32;
        let bound = x.c() as f64 * tolerance * to_f64(&p.coeff_norm1()).max(1.0) * radius.powi(deg.max(1));
        if (rhs - lhs).norm() > bound {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether an approximate cycle matches an exact one point by point within `tol`.
pub fn cycles_agree(exact: &ZeroCycle, approx: &ZeroCycle<Complex64>, tol: f64) -> bool {
    if exact.points.len() != approx.points.len() {
        return false;
    }
    exact.points.iter().all(|p| {
        let target: Vec<Complex64> = p.coords.iter().map(|q| Complex64::new(to_f64(q), 0.0)).collect();
        approx
            .points
            .iter()
            .any(|a| a.multiplicity == p.multiplicity && distance(&a.coords, &target) <= tol)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use adhm_core::cycle::{hilbert_chow_exact, monomial_probes};
    use adhm_core::linalg::{frac, unit_vector};
    use adhm_core::poly::{groebner, parse_poly};
    use adhm_core::MonomialOrder;

    fn jordan() -> AdhmDatum {
        AdhmDatum::new(vec![Matrix::from_i64(&[&[0, 0], &[1, 0]]), Matrix::zeros(2, 2)], unit_vector(2, 0)).unwrap()
    }

    #[test]
    fn diagonal_points_agree_with_exact() {
        let x = AdhmDatum::from_points(&[vec![int(0), int(0)], vec![int(1), int(0)]], 2).unwrap();
        let z = hilbert_chow_approx(&x, 1e-8, 0).unwrap();
        assert!(cycles_agree(&hilbert_chow_exact(&x).unwrap(), &z, 1e-10));
    }

    #[test]
    fn jordan_gives_one_double_point() {
        let z = hilbert_chow_approx(&jordan(), 1e-8, 1).unwrap();
        assert_eq!(z.points.len(), 1);
        assert_eq!(z.points[0].multiplicity, 2);
        assert!(distance(&z.points[0].coords, &[Complex64::new(0.0, 0.0); 2]) < 1e-12);
    }

    #[test]
    fn close_points_merge_far_below_tolerance() {
        let eps = frac(1, 1_000_000_000);
        let x = AdhmDatum::from_points(&[vec![int(1), int(0)], vec![int(1) + eps, int(0)]], 2).unwrap();
        let z = hilbert_chow_approx(&x, 1e-6, 3).unwrap();
        assert_eq!(z.partition(), vec![2]);
    }

    #[test]
    fn ambiguous_gap_is_an_error() {
        let x = AdhmDatum::from_points(&[vec![int(0)], vec![frac(1, 1_000_000)]], 1).unwrap();
        assert!(matches!(hilbert_chow_approx(&x, 1e-6, 0), Err(AppError::ClusteringAmbiguity { .. })));
        assert!(hilbert_chow_approx(&x, 1e-9, 0).unwrap().points.len() == 2);
        assert!(hilbert_chow_approx(&x, 1e-3, 0).unwrap().points.len() == 1);
    }

    #[test]
    fn complex_points_of_an_irrational_ideal() {
        let o = MonomialOrder::grevlex();
        let gens = [parse_poly("x0^2 + 1", 2).unwrap(), parse_poly("x1 - x0", 2).unwrap()];
        let x = AdhmDatum::ideal_to_datum(&groebner(&gens, &o).unwrap()).unwrap();
        let z = hilbert_chow_approx(&x, 1e-8, 7).unwrap();
        assert_eq!(z.partition(), vec![1, 1]);
        for p in &z.points {
            assert!((p.coords[0].norm() - 1.0).abs() < 1e-12);
            assert!((p.coords[0] - p.coords[1]).norm() < 1e-12);
        }
        assert!(approx_trace_check(&x, &z, &monomial_probes(2, 3), 1e-8).unwrap());
    }

    #[test]
    fn trace_check_catches_a_wrong_cycle() {
        let mut z = hilbert_chow_approx(&jordan(), 1e-8, 1).unwrap();
        assert!(approx_trace_check(&jordan(), &z, &monomial_probes(2, 3), 1e-8).unwrap());
        z.points[0].coords[0] = Complex64::new(0.5, 0.0);
        assert!(!approx_trace_check(&jordan(), &z, &monomial_probes(2, 3), 1e-8).unwrap());
    }

    #[test]
    fn non_commuting_is_rejected() {
        let x = AdhmDatum::new(
            vec![Matrix::from_i64(&[&[0, 1], &[0, 0]]), Matrix::from_i64(&[&[0, 0], &[1, 0]])],
            unit_vector(2, 0),
        )
        .unwrap();
        assert!(matches!(hilbert_chow_approx(&x, 1e-8, 0), Err(AppError::Core(CoreError::NonCommuting(0, 1)))));
    }
}
