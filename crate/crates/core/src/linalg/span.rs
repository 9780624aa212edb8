use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{zero_vector, Matrix, Rational, Vector};
use crate::error::{Error, Result};

/// Outcome of [`IncrementalSpan::insert`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpanInsert {
    /// The vector was independent and has been appended to the basis.
    New,
    /// The vector already lies in the span; `coords[j]` is its coefficient on
    /// the `j`-th previously inserted basis vector.
    Dependent(Vector),
}

impl SpanInsert {
    pub fn was_new(&self) -> bool {
        matches!(self, SpanInsert::New)
    }
}

#[derive(Debug, Clone)]
struct EchelonRow {
    pivot: usize,
    /// Normalized so that `row[pivot] == 1`; zero at every earlier pivot.
    row: Vector,
    /// `row` as a combination of the original inserted vectors.
    combo: Vector,
}

/// A growing span of vectors in ℚ^d.
///
/// Keeps an echelon form for membership tests together with the change of
/// basis back to the inserted vectors, so dependent vectors can be expressed
/// in terms of the original basis.
#[derive(Debug, Clone)]
pub struct IncrementalSpan {
    ambient_dim: usize,
    basis: Vec<Vector>,
    echelon: Vec<EchelonRow>,
}

impl IncrementalSpan {
    pub fn new(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Vec::new(), echelon: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The inserted independent vectors, in insertion order.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.echelon.iter().map(|e| e.pivot).collect()
    }

    /// Basis vectors as the columns of an `ambient_dim × rank` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim, &self.basis).expect("basis vectors have ambient length")
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient_dim
    }

    /// Reduces `v` against the echelon rows; returns the residual and the
    /// combination `c` with `v = residual + Σ c_j basis_j`.
    fn reduce(&self, v: &[Rational]) -> (Vector, Vector) {
        let mut r = v.to_vec();
        let mut coords = zero_vector(self.basis.len());
        for e in &self.echelon {
            if r[e.pivot].is_zero() {
                continue;
            }
            let f = r[e.pivot].clone();
            for (x, y) in r.iter_mut().zip(&e.row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in coords.iter_mut().zip(&e.combo) {
                if !y.is_zero() {
                    *x += &f * y;
                }
            }
        }
        (r, coords)
    }

    /// Coordinates of `v` in the current basis, if it lies in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vector>> {
        self.check_len(v)?;
        let (r, coords) = self.reduce(v);
        Ok(r.iter().all(Zero::is_zero).then_some(coords))
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn insert(&mut self, v: &[Rational]) -> Result<SpanInsert> {
        self.check_len(v)?;
        let (mut r, coords) = self.reduce(v);
        let Some(pivot) = r.iter().position(|x| !x.is_zero()) else {
            return Ok(SpanInsert::Dependent(coords));
        };
        // r = v - Σ coords_j basis_j, so in terms of originals:
        let k = self.basis.len();
        let mut combo: Vector = coords.into_iter().map(|c| -c).collect();
        combo.push(Rational::one());
        let inv = r[pivot].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for x in combo.iter_mut() {
            *x *= &inv;
        }
        for e in &mut self.echelon {
            e.combo.push(Rational::zero());
        }
        debug_assert_eq!(combo.len(), k + 1);
        self.echelon.push(EchelonRow { pivot, row: r, combo });
        self.basis.push(v.to_vec());
        Ok(SpanInsert::New)
    }

    fn check_len(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, unit_vector};
    use alloc::vec;

    #[test]
    fn insert_examples() {
        let mut s = IncrementalSpan::new(2);
        assert_eq!(s.insert(&unit_vector(2, 0)).unwrap(), SpanInsert::New);
        assert_eq!(s.rank(), 1);
        assert_eq!(s.insert(&unit_vector(2, 0)).unwrap(), SpanInsert::Dependent(vec![int(1)]));
        assert_eq!(s.insert(&unit_vector(2, 1)).unwrap(), SpanInsert::New);
        assert_eq!(
            s.insert(&[int(1), int(1)]).unwrap(),
            SpanInsert::Dependent(vec![int(1), int(1)])
        );
    }

    #[test]
    fn coordinates_refer_to_original_vectors() {
        let mut s = IncrementalSpan::new(3);
        let a = vec![int(1), int(2), int(3)];
        let b = vec![int(0), int(1), int(5)];
        s.insert(&a).unwrap();
        s.insert(&b).unwrap();
        let v: Vector = a.iter().zip(&b).map(|(x, y)| x * int(3) - y * int(7)).collect();
        assert_eq!(s.coordinates(&v).unwrap(), Some(vec![int(3), int(-7)]));
        assert_eq!(s.coordinates(&unit_vector(3, 0)).unwrap(), None);
    }

    #[test]
    fn dimension_mismatch() {
        let mut s = IncrementalSpan::new(2);
        assert!(matches!(s.insert(&[int(1)]), Err(Error::DimensionMismatch { .. })));
    }
}
