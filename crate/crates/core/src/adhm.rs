//! ADHM data `X = (B_0, …, B_{n-1}, I)` and their correspondence with
//! zero-dimensional ideals.
//!
//! For commuting data the evaluation map `Φ_X(p) = p(B)·I` is a ring map from
//! ℚ[x_0, …, x_{n-1}] onto the stabilizing subspace of `X`. A stable datum is
//! one for which `Φ_X` is surjective, and `ker Φ_X` is then an ideal of
//! colength `c`. Conversely the multiplication matrices of a quotient ring on
//! its standard-monomial basis, together with the class of `1`, form a stable
//! datum. Data related by the gauge action `g·(B, I) = (gBg⁻¹, gI)` give the
//! same ideal.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{int, is_zero_vector, unit_vector, IncrementalSpan, Matrix, Rational, SpanInsert, Vector};
use crate::poly::{groebner, normal_form, IdealPresentation, Monomial, MonomialOrder, Poly};

/// `n` commuting-or-not `c × c` matrices and a vector `I ∈ ℚ^c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdhmDatum {
    b: Vec<Matrix>,
    i: Vector,
}

/// Result of the Krylov sweep from `I(1)`.
#[derive(Debug, Clone)]
pub struct KrylovResult {
    pub rank: usize,
    /// One monomial per accepted basis vector, in acceptance order.
    pub basis_monomials: Vec<Monomial>,
    pub span: IncrementalSpan,
}

/// An invertible `g` with `g·X = Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub g: Matrix,
}

impl EquivalenceWitness {
    /// Checks `g B_i^X g⁻¹ = B_i^Y` (as `g B_i^X = B_i^Y g`) and `g I^X = I^Y` exactly.
    pub fn verify(&self, x: &AdhmDatum, y: &AdhmDatum) -> bool {
        if x.n() != y.n() || x.c() != y.c() || self.g.rows() != x.c() || !self.g.is_invertible() {
            return false;
        }
        let conj = x.b.iter().zip(&y.b).all(|(bx, by)| &self.g * bx == by * &self.g);
        conj && self.g.mul_vec(&x.i).ok().as_ref() == Some(&y.i)
    }
}

/// Outcome of the monomial sweep shared by `krylov` and `datum_to_ideal`.
struct Sweep {
    std_monomials: Vec<Monomial>,
    span: IncrementalSpan,
    basis: Vec<Poly>,
}

impl AdhmDatum {
    /// Validates shapes: `n ≥ 1` square `c × c` matrices with `c ≥ 1`, `I ∈ ℚ^c`.
    pub fn new(b: Vec<Matrix>, i: Vector) -> Result<Self> {
        let c = i.len();
        if c == 0 {
            return Err(Error::EmptySpace);
        }
        if b.is_empty() {
            return Err(Error::InvalidArgument("an ADHM datum needs at least one matrix".into()));
        }
        for m in &b {
            if m.rows() != c || m.cols() != c {
                return Err(Error::DimensionMismatch { expected: c, found: if m.rows() != c { m.rows() } else { m.cols() } });
            }
        }
        Ok(Self { b, i })
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn c(&self) -> usize {
        self.i.len()
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.b
    }

    pub fn vector(&self) -> &[Rational] {
        &self.i
    }

    /// `I` as a `c × 1` matrix.
    pub fn i_matrix(&self) -> Matrix {
        Matrix::column_vector(&self.i)
    }

    /// Some pair `(i, j)`, `i < j`, with `[B_i, B_j] ≠ 0`.
    pub fn commutation_violation(&self) -> Option<(usize, usize)> {
        let n = self.n();
        for i in 0..n {
            for j in i + 1..n {
                if &self.b[i] * &self.b[j] != &self.b[j] * &self.b[i] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_commuting(&self) -> bool {
        self.commutation_violation().is_none()
    }

    fn require_commuting(&self) -> Result<()> {
        match self.commutation_violation() {
            Some((i, j)) => Err(Error::NonCommuting(i, j)),
            None => Ok(()),
        }
    }

    /// Basis of the stabilizing subspace: the smallest subspace containing
    /// `I(1)` and invariant under every `B_i`.
    ///
    /// For commuting data the monomials are visited in grevlex order, so the
    /// accepted monomials are the standard monomials of `ker Φ_X`. Otherwise
    /// the span is closed breadth-first over all words in the `B_i`, and each
    /// accepted vector is labelled by the exponent vector of its word.
    pub fn krylov(&self) -> KrylovResult {
        if self.is_commuting() {
            let sweep = self.sweep(&MonomialOrder::grevlex());
            return KrylovResult { rank: sweep.span.rank(), basis_monomials: sweep.std_monomials, span: sweep.span };
        }
        let n = self.n();
        let mut span = IncrementalSpan::new(self.c());
        let mut monomials = Vec::new();
        let mut queue = alloc::collections::VecDeque::new();
        if span.insert(&self.i).expect("length c").was_new() {
            monomials.push(Monomial::one(n));
            queue.push_back((self.i.clone(), Monomial::one(n)));
        }
        while let Some((v, m)) = queue.pop_front() {
            for (k, bk) in self.b.iter().enumerate() {
                let w = bk.mul_vec(&v).expect("square c");
                if span.insert(&w).expect("length c").was_new() {
                    let wm = m.mul_var(k);
                    monomials.push(wm.clone());
                    queue.push_back((w, wm));
                }
            }
        }
        KrylovResult { rank: span.rank(), basis_monomials: monomials, span }
    }

    /// Stable iff the Krylov span is all of `V`.
    pub fn is_stable(&self) -> Result<bool> {
        self.require_commuting()?;
        Ok(self.krylov().rank == self.c())
    }

    /// `Φ_X(p) = p(B_0, …, B_{n-1})·I(1)`.
    pub fn apply_phi(&self, p: &Poly) -> Result<Vector> {
        if p.nvars() != self.n() {
            return Err(Error::ArityMismatch { expected: self.n(), found: p.nvars() });
        }
        self.require_commuting()?;
        // Accumulate term by term on the vector rather than forming p(B).
        let mut out = crate::linalg::zero_vector(self.c());
        let mut cache: BTreeMap<Monomial, Vector> = BTreeMap::new();
        for (m, coeff) in p.terms() {
            let v = self.monomial_image(m, &mut cache);
            for (o, x) in out.iter_mut().zip(&v) {
                *o += coeff * x;
            }
        }
        Ok(out)
    }

    fn monomial_image(&self, m: &Monomial, cache: &mut BTreeMap<Monomial, Vector>) -> Vector {
        if let Some(v) = cache.get(m) {
            return v.clone();
        }
        let v = match m.some_var() {
            None => self.i.clone(),
            Some(k) => {
                let mut e = m.exponents().to_vec();
                e[k] -= 1;
                let prev = self.monomial_image(&Monomial::from_exponents(e), cache);
                self.b[k].mul_vec(&prev).expect("square c")
            }
        };
        cache.insert(m.clone(), v.clone());
        v
    }

    /// Visits monomials in increasing `order`, skipping multiples of leading
    /// monomials already found. Each `Φ_X(m)` is inserted into a growing span:
    /// independent images give standard monomials, dependent ones give the
    /// basis element `m − Σ coords_j m_j`. Requires commuting data.
    fn sweep(&self, order: &MonomialOrder) -> Sweep {
        let n = self.n();
        let mut span = IncrementalSpan::new(self.c());
        let mut std_monomials: Vec<Monomial> = Vec::new();
        let mut leading: Vec<Monomial> = Vec::new();
        let mut basis: Vec<Poly> = Vec::new();
        let mut candidates: BTreeMap<Monomial, Vector> = BTreeMap::new();
        candidates.insert(Monomial::one(n), self.i.clone());

        while let Some(m) = candidates.keys().max_by(|a, b| order.cmp(b, a)).cloned() {
            let v = candidates.remove(&m).expect("present");
            if leading.iter().any(|l| l.divides(&m)) {
                continue;
            }
            match span.insert(&v).expect("length c") {
                SpanInsert::New => {
                    for (k, bk) in self.b.iter().enumerate() {
                        let next = m.mul_var(k);
                        if !candidates.contains_key(&next) {
                            candidates.insert(next, bk.mul_vec(&v).expect("square c"));
                        }
                    }
                    std_monomials.push(m);
                }
                SpanInsert::Dependent(coords) => {
                    let mut g = Poly::term(m.clone(), Rational::one());
                    for (sm, coeff) in std_monomials.iter().zip(coords) {
                        g.add_term(sm.clone(), -coeff);
                    }
                    basis.push(g);
                    leading.push(m);
                }
            }
        }
        Sweep { std_monomials, span, basis }
    }

    /// `Ψ(X) = ker Φ_X`, as a reduced Gröbner basis under `order`.
    ///
    /// Fails for non-commuting or unstable data. Gauge-equivalent data give
    /// identical bases.
    pub fn datum_to_ideal(&self, order: &MonomialOrder) -> Result<IdealPresentation> {
        self.require_commuting()?;
        let sweep = self.sweep(order);
        if sweep.span.rank() != self.c() {
            return Err(Error::Unstable { rank: sweep.span.rank(), c: self.c() });
        }
        let ideal = IdealPresentation::from_reduced_basis(self.n(), sweep.basis, order.clone());
        debug_assert_eq!(ideal.std_monomials(), Some(sweep.std_monomials.as_slice()));
        Ok(ideal)
    }

    /// `Ψ'(J)`: multiplication matrices on the standard monomials of `J` and
    /// `I = [1]`.
    ///
    /// Uses the reduced basis attached to `ideal`, computing it first if absent.
    pub fn ideal_to_datum(ideal: &IdealPresentation) -> Result<AdhmDatum> {
        let owned;
        let ideal = if ideal.reduced_gb().is_some() {
            ideal
        } else {
            owned = groebner(ideal.generators(), ideal.order())?;
            &owned
        };
        if ideal.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let std = ideal.std_monomials().ok_or(Error::NotZeroDimensional)?;
        let c = std.len();
        let n = ideal.nvars();
        let index: BTreeMap<&Monomial, usize> = std.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut b = Vec::with_capacity(n);
        for var in 0..n {
            let mut mat = Matrix::zeros(c, c);
            for (j, m) in std.iter().enumerate() {
                let nf = normal_form(&Poly::term(m.mul_var(var), Rational::one()), ideal)?;
                for (mono, coeff) in nf.terms() {
                    let row = *index.get(mono).expect("normal forms are supported on standard monomials");
                    mat[(row, j)] = coeff.clone();
                }
            }
            b.push(mat);
        }
        let one = index.get(&Monomial::one(n)).copied().expect("1 is standard for a proper ideal");
        AdhmDatum::new(b, unit_vector(c, one))
    }

    /// `g·X = (g B_i g⁻¹, g I)`.
    pub fn act(&self, g: &Matrix) -> Result<AdhmDatum> {
        if g.rows() != self.c() || g.cols() != self.c() {
            return Err(Error::DimensionMismatch { expected: self.c(), found: g.rows() });
        }
        let inv = g.inverse()?;
        let b = self.b.iter().map(|m| &(g * m) * &inv).collect();
        let i = g.mul_vec(&self.i)?;
        Ok(AdhmDatum { b, i })
    }

    /// Krylov vectors `Φ_X(m)` for the given monomials, as columns.
    fn krylov_matrix(&self, monomials: &[Monomial]) -> Matrix {
        let mut cache = BTreeMap::new();
        let cols: Vec<Vector> = monomials.iter().map(|m| self.monomial_image(m, &mut cache)).collect();
        Matrix::from_columns(self.c(), &cols).expect("length c")
    }

    /// Decides whether `x` and `y` lie in the same gauge orbit.
    ///
    /// Both must be commuting and stable. When their ideals agree the witness
    /// maps `Φ_X(m_j) ↦ Φ_Y(m_j)` on the shared standard monomials and is
    /// checked by direct conjugation before being returned.
    pub fn are_equivalent(x: &AdhmDatum, y: &AdhmDatum, order: &MonomialOrder) -> Result<Option<EquivalenceWitness>> {
        let jx = x.datum_to_ideal(order)?;
        let jy = y.datum_to_ideal(order)?;
        if x.n() != y.n() || x.c() != y.c() || !jx.same_ideal(&jy) {
            return Ok(None);
        }
        let std = jx.std_monomials().expect("stable data give zero-dimensional ideals");
        let kx = x.krylov_matrix(std);
        let ky = y.krylov_matrix(std);
        let g = &ky * &kx.inverse()?;
        let witness = EquivalenceWitness { g };
        if witness.verify(x, y) {
            Ok(Some(witness))
        } else {
            debug_assert!(false, "equal ideals must yield a verified witness");
            Ok(None)
        }
    }

    /// Diagonal datum of distinct points: `B_i = diag(p_{·,i})`, `I = (1, …, 1)`.
    pub fn from_points(points: &[Vector], n: usize) -> Result<AdhmDatum> {
        if points.is_empty() {
            return Err(Error::EmptySpace);
        }
        for (k, p) in points.iter().enumerate() {
            if p.len() != n {
                return Err(Error::ArityMismatch { expected: n, found: p.len() });
            }
            if points[..k].contains(p) {
                return Err(Error::DuplicatePoint(k));
            }
        }
        let b = (0..n)
            .map(|i| Matrix::diagonal(&points.iter().map(|p| p[i].clone()).collect::<Vec<_>>()))
            .collect();
        AdhmDatum::new(b, points.iter().map(|_| Rational::one()).collect())
    }

    /// Largest entrywise distance between the matrices of two data of equal shape.
    pub fn matrix_distance(&self, other: &AdhmDatum) -> Rational {
        self.b
            .iter()
            .zip(&other.b)
            .map(|(a, b)| (a - b).max_abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Randomized probe for a stable datum near a commuting `x`.
    ///
    /// Each trial moves the `B_i` only along directions that keep them exactly
    /// commuting (a polynomial `B_i + ε_i p_i(B)` and a conjugation by an
    /// elementary unipotent matrix), keeps the entrywise distance to `x` at
    /// most `radius`, and draws a fresh integer `I`. Commutation and
    /// stability are re-verified exactly before a candidate is returned.
    /// Deterministic for a fixed seed; `None` proves nothing.
    pub fn stabilize_search(&self, trials: usize, seed: u64, radius: &Rational) -> Result<Option<AdhmDatum>> {
        self.require_commuting()?;
        if radius.is_negative() {
            return Err(Error::InvalidArgument("radius must be non-negative".into()));
        }
        if self.is_stable()? {
            return Ok(Some(self.clone()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, c) = (self.n(), self.c());
        for _ in 0..trials {
            let mut b = self.b.clone();
            if radius.is_positive() {
                b = perturb_polynomially(&b, radius, &mut rng);
                if let Some(conj) = conjugate_nearby(&self.b, &b, radius, &mut rng) {
                    b = conj;
                }
            }
            let mut i: Vector = (0..c).map(|_| int(rng.gen_range(-5..=5))).collect();
            if is_zero_vector(&i) {
                i[0] = Rational::one();
            }
            let candidate = AdhmDatum { b, i };
            debug_assert_eq!(candidate.n(), n);
            if candidate.is_commuting() && self.matrix_distance(&candidate) <= *radius && candidate.is_stable()? {
                return Ok(Some(candidate));
            }
        }
        Ok(None)
    }
}

/// A random polynomial of degree ≤ 2 with small integer coefficients.
fn random_poly(n: usize, rng: &mut ChaCha8Rng) -> Poly {
    let mut p = Poly::zero(n);
    p.add_term(Monomial::one(n), int(rng.gen_range(-2..=2)));
    for k in 0..n {
        p.add_term(Monomial::var(n, k), int(rng.gen_range(-2..=2)));
        let j = rng.gen_range(0..n);
        p.add_term(Monomial::var(n, k).mul_var(j), int(rng.gen_range(-1..=1)));
    }
    p
}

/// `B_i + ε_i p_i(B)` with `|ε_i p_i(B)| ≤ radius` entrywise.
fn perturb_polynomially(b: &[Matrix], radius: &Rational, rng: &mut ChaCha8Rng) -> Vec<Matrix> {
    let n = b.len();
    b.iter()
        .map(|bi| {
            let dir = random_poly(n, rng).eval_matrices(b).expect("matching arity");
            let size = dir.max_abs();
            if size.is_zero() {
                return bi.clone();
            }
            let t = Rational::new(rng.gen_range(1..=8).into(), 8.into());
            let eps = radius / size * t;
            bi + &dir.scale(&eps)
        })
        .collect()
}

/// Conjugates by `Id + t·E_rs`, shrinking `t` until the result stays within
/// `radius` of `original`.
fn conjugate_nearby(original: &[Matrix], b: &[Matrix], radius: &Rational, rng: &mut ChaCha8Rng) -> Option<Vec<Matrix>> {
    let c = b[0].rows();
    if c < 2 {
        return None;
    }
    let r = rng.gen_range(0..c);
    let s = (r + rng.gen_range(1..c)) % c;
    let mut t = radius.clone();
    for _ in 0..16 {
        let mut g = Matrix::identity(c);
        g[(r, s)] = t.clone();
        let mut ginv = Matrix::identity(c);
        ginv[(r, s)] = -t.clone();
        let conj: Vec<Matrix> = b.iter().map(|m| &(&g * m) * &ginv).collect();
        let dist = original.iter().zip(&conj).map(|(a, b)| (a - b).max_abs()).max().unwrap_or_else(Rational::zero);
        if dist <= *radius {
            return Some(conj);
        }
        t /= int(2);
    }
    None
}
