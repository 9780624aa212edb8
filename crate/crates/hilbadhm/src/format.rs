//! Text and JSON formats for data, ideals, varieties, monads and cycles.
//!
//! Rationals are always written as strings (`"3"`, `"-1/2"`) so documents are
//! exact and re-parse to identical values.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use adhm_core::linalg::{parse_rational, Rational};
use adhm_core::monad::{ExtendedMonad, LinearFormMap, MonadShape};
use adhm_core::poly::{groebner, max_variable_index, parse_poly};
use adhm_core::{AdhmDatum, Error as CoreError, IdealPresentation, Matrix, Monomial, MonomialOrder, OrderKind, Poly, ZeroCycle};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{AppError, AppResult};

pub fn rational_string(q: &Rational) -> String {
    q.to_string()
}

fn parse_rational_field(s: &str, what: &str) -> AppResult<Rational> {
    parse_rational(s).ok_or_else(|| AppError::Parse(format!("{what}: '{s}' is not a rational number")))
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(rational_string).collect()).collect()
}

fn parse_matrix(rows: &[Vec<String>], what: &str) -> AppResult<Matrix> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_rational_field(s, what)).collect::<AppResult<Vec<_>>>())
        .collect::<AppResult<Vec<_>>>()?;
    if parsed.is_empty() {
        return Err(AppError::Parse(format!("{what}: empty matrix")));
    }
    Matrix::from_rows(parsed).map_err(|e| AppError::Parse(format!("{what}: {e}")))
}

fn json_error(e: serde_json::Error) -> AppError {
    AppError::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
}

/// Pretty JSON with arrays of scalars kept on one line, so matrices read as rows.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("documents always serialize");
    let mut out = String::new();
    render(&v, 0, &mut out);
    out.push('\n');
    out
}

fn render(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |k: usize| "  ".repeat(k);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = items.iter().map(|x| serde_json::to_string(x).expect("scalars serialize")).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                render(x, indent + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(key).expect("keys serialize"));
                out.push_str(": ");
                render(x, indent + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("scalars serialize")),
    }
}

pub fn order_name(order: &MonomialOrder) -> &'static str {
    match order.kind() {
        OrderKind::Grevlex => "grevlex",
        OrderKind::Lex => "lex",
        OrderKind::GradedLex => "deglex",
    }
}

pub fn parse_order(name: &str) -> AppResult<MonomialOrder> {
    match name {
        "grevlex" => Ok(MonomialOrder::grevlex()),
        "lex" => Ok(MonomialOrder::lex()),
        "deglex" => Ok(MonomialOrder::graded_lex()),
        other => Err(AppError::Parse(format!("unknown monomial order '{other}'"))),
    }
}

/// `{"n", "c", "B": [[[..]]], "I": [..], "basis"?, "seed"?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumDocument {
    pub n: usize,
    pub c: usize,
    #[serde(rename = "B")]
    pub b: Vec<Vec<Vec<String>>>,
    #[serde(rename = "I")]
    pub i: Vec<String>,
    /// Labels of the basis of `V` when it comes from standard monomials.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    /// Seed of the randomized command that produced the datum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl DatumDocument {
    pub fn from_datum(x: &AdhmDatum, basis: Option<&[Monomial]>) -> Self {
        Self {
            n: x.n(),
            c: x.c(),
            b: x.matrices().iter().map(matrix_strings).collect(),
            i: x.vector().iter().map(rational_string).collect(),
            basis: basis.map(|ms| ms.iter().map(ToString::to_string).collect()),
            seed: None,
        }
    }

    pub fn to_datum(&self) -> AppResult<AdhmDatum> {
        if self.b.len() != self.n {
            return Err(AppError::Parse(format!("expected {} matrices, found {}", self.n, self.b.len())));
        }
        let b = self
            .b
            .iter()
            .enumerate()
            .map(|(k, m)| parse_matrix(m, &format!("B{k}")))
            .collect::<AppResult<Vec<_>>>()?;
        let i = self.i.iter().map(|s| parse_rational_field(s, "I")).collect::<AppResult<Vec<_>>>()?;
        for (k, m) in b.iter().enumerate() {
            if m.rows() != self.c || m.cols() != self.c {
                return Err(AppError::Parse(format!("B{k} is {}x{}, expected {c}x{c}", m.rows(), m.cols(), c = self.c)));
            }
        }
        if i.len() != self.c {
            return Err(AppError::Parse(format!("I has length {}, expected {}", i.len(), self.c)));
        }
        AdhmDatum::new(b, i).map_err(|e| AppError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn parse(src: &str) -> AppResult<Self> {
        serde_json::from_str(src).map_err(json_error)
    }
}

pub fn parse_datum(src: &str) -> AppResult<AdhmDatum> {
    DatumDocument::parse(src)?.to_datum()
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines().enumerate().filter_map(|(k, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((k + 1, body))
    })
}

/// Parses a polynomial list file (one per line, `#` comments). The variable
/// count is `nvars` if given, otherwise one more than the largest index used
/// but at least 2.
pub fn parse_poly_lines(src: &str, nvars: Option<usize>) -> AppResult<(usize, Vec<Poly>)> {
    let n = match nvars {
        Some(n) => n,
        None => content_lines(src).filter_map(|(_, l)| max_variable_index(l)).max().map_or(2, |m| (m + 1).max(2)),
    };
    let polys = content_lines(src)
        .map(|(line, body)| {
            parse_poly(body, n).map_err(|e| match e {
                CoreError::Parse { pos, msg } => AppError::Parse(format!("line {line}, column {}: {msg}", pos + 1)),
                other => AppError::Core(other),
            })
        })
        .collect::<AppResult<Vec<_>>>()?;
    Ok((n, polys))
}

/// Reduced Gröbner basis, colength and standard monomials of an ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDocument {
    pub nvars: usize,
    pub order: String,
    pub basis: Vec<String>,
    pub colength: Option<usize>,
    pub standard_monomials: Option<Vec<String>>,
}

impl IdealDocument {
    pub fn from_ideal(j: &IdealPresentation) -> Self {
        let basis = j.reduced_gb().unwrap_or(j.generators()).iter().map(ToString::to_string).collect();
        Self {
            nvars: j.nvars(),
            order: order_name(j.order()).into(),
            basis,
            colength: j.colength(),
            standard_monomials: j.std_monomials().map(|ms| ms.iter().map(ToString::to_string).collect()),
        }
    }

    /// Recomputes the ideal from the stored basis.
    pub fn to_ideal(&self) -> AppResult<IdealPresentation> {
        let order = parse_order(&self.order)?;
        let (_, polys) = parse_poly_lines(&self.basis.join("\n"), Some(self.nvars))?;
        Ok(groebner(&polys, &order)?)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn parse(src: &str) -> AppResult<Self> {
        serde_json::from_str(src).map_err(json_error)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.basis {
            let _ = writeln!(out, "{g}");
        }
        match self.colength {
            Some(k) => {
                let _ = writeln!(out, "# colength: {k}");
            }
            None => out.push_str("# colength: infinite\n"),
        }
        if let Some(std) = &self.standard_monomials {
            let _ = writeln!(out, "# standard monomials: {}", std.join(", "));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimEntry {
    pub degree: i32,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    /// Source degree; the map goes to `degree + 1`.
    pub degree: i32,
    pub rows: usize,
    pub cols: usize,
    /// Coefficient matrix of `z_k` for `k = 0..=n`.
    pub coeffs: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonadDocument {
    pub n: usize,
    pub c: usize,
    pub r: usize,
    pub dims: Vec<DimEntry>,
    pub maps: Vec<MapEntry>,
}

impl MonadDocument {
    pub fn from_monad(m: &ExtendedMonad) -> Self {
        Self {
            n: m.shape.n,
            c: m.shape.c,
            r: m.shape.r,
            dims: m.shape.dims.iter().map(|(&degree, &dim)| DimEntry { degree, dim }).collect(),
            maps: m
                .alphas
                .iter()
                .map(|(&degree, a)| MapEntry {
                    degree,
                    rows: a.rows,
                    cols: a.cols,
                    coeffs: a.coeffs.iter().map(matrix_strings).collect(),
                })
                .collect(),
        }
    }

    pub fn to_monad(&self) -> AppResult<ExtendedMonad> {
        let dims: BTreeMap<i32, usize> = self.dims.iter().map(|d| (d.degree, d.dim)).collect();
        let shape = MonadShape { n: self.n, c: self.c, r: self.r, dims };
        let mut alphas = BTreeMap::new();
        for e in &self.maps {
            let coeffs = e
                .coeffs
                .iter()
                .map(|m| {
                    if e.rows == 0 || e.cols == 0 {
                        return Ok(Matrix::zeros(e.rows, e.cols));
                    }
                    parse_matrix(m, &format!("map out of degree {}", e.degree))
                })
                .collect::<AppResult<Vec<_>>>()?;
            if coeffs.iter().any(|m| m.rows() != e.rows || m.cols() != e.cols) {
                return Err(AppError::Parse(format!("map out of degree {} has inconsistent sizes", e.degree)));
            }
            alphas.insert(e.degree, LinearFormMap { rows: e.rows, cols: e.cols, coeffs });
        }
        Ok(ExtendedMonad { shape, alphas })
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn parse(src: &str) -> AppResult<Self> {
        serde_json::from_str(src).map_err(json_error)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyclePointEntry<S> {
    pub coords: Vec<S>,
    pub multiplicity: usize,
}

/// Exact coordinates are rational strings, approximate ones `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleDocument<S> {
    pub n: usize,
    pub c: usize,
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub partition: Vec<usize>,
    pub points: Vec<CyclePointEntry<S>>,
}

pub type ExactCycleDocument = CycleDocument<String>;
pub type ApproxCycleDocument = CycleDocument<[f64; 2]>;

impl ExactCycleDocument {
    pub fn from_cycle(z: &ZeroCycle) -> Self {
        Self {
            n: z.n,
            c: z.degree(),
            field: "exact".into(),
            tolerance: None,
            seed: None,
            partition: z.partition(),
            points: z
                .points
                .iter()
                .map(|p| CyclePointEntry { coords: p.coords.iter().map(rational_string).collect(), multiplicity: p.multiplicity })
                .collect(),
        }
    }
}

impl ApproxCycleDocument {
    pub fn from_cycle(z: &ZeroCycle<Complex64>, tolerance: f64, seed: u64) -> Self {
        Self {
            n: z.n,
            c: z.degree(),
            field: "approximate".into(),
            tolerance: Some(tolerance),
            seed: Some(seed),
            partition: z.partition(),
            points: z
                .points
                .iter()
                .map(|p| CyclePointEntry { coords: p.coords.iter().map(|w| [w.re, w.im]).collect(), multiplicity: p.multiplicity })
                .collect(),
        }
    }
}

impl<S: Serialize + for<'de> Deserialize<'de>> CycleDocument<S> {
    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn parse(src: &str) -> AppResult<Self> {
        serde_json::from_str(src).map_err(json_error)
    }
}

fn partition_string(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Header line, then one `(coords) xν` line per point.
pub fn exact_cycle_text(z: &ZeroCycle) -> String {
    let mut out = format!("c = {}, n = {}, partition = {}\n", z.degree(), z.n, partition_string(&z.partition()));
    for p in &z.points {
        let coords: Vec<String> = p.coords.iter().map(rational_string).collect();
        let _ = writeln!(out, "({}) x{}", coords.join(", "), p.multiplicity);
    }
    out
}

fn complex_string(w: &Complex64, tolerance: f64) -> String {
    if w.im.abs() <= tolerance {
        format!("{}", w.re)
    } else {
        format!("{}{:+}i", w.re, w.im)
    }
}

pub fn approx_cycle_text(z: &ZeroCycle<Complex64>, tolerance: f64) -> String {
    let mut out = format!("c = {}, n = {}, partition = {}\n", z.degree(), z.n, partition_string(&z.partition()));
    for p in &z.points {
        let coords: Vec<String> = p.coords.iter().map(|w| complex_string(w, tolerance)).collect();
        let _ = writeln!(out, "({}) x{}", coords.join(", "), p.multiplicity);
    }
    out
}
