//! Command definitions and dispatch. Every command returns the text for
//! stdout; failures carry their exit code in [`AppError::exit_code`].

use std::fmt::Write as _;
use std::io::Read as _;
use std::path::{Path, PathBuf};

use adhm_core::cycle::{cycle_trace_check, hilbert_chow_exact, monomial_probes};
use adhm_core::linalg::{parse_rational, Matrix, Rational, Vector};
use adhm_core::monad::{build_monad, check_complex, fiber_profile, random_chart_point};
use adhm_core::poly::groebner;
use adhm_core::sample::{
    commuting_search_tuple, monomial_ideal, point_ideal_generators, random_points, random_stable_datum, staircases,
    unstable_block_datum,
};
use adhm_core::variety::{is_in_hilb_variety, variety_residuals};
use adhm_core::{AdhmDatum, Error as CoreError, MonomialOrder, VarietyConstraint};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::approx::{approx_trace_check, cycles_agree, hilbert_chow_approx};
use crate::error::{AppError, AppResult};
use crate::format::{
    approx_cycle_text, exact_cycle_text, parse_datum, parse_order, parse_poly_lines, rational_string, to_json, ApproxCycleDocument,
    DatumDocument, ExactCycleDocument, IdealDocument, MonadDocument,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SampleKind {
    /// Distinct random rational points (`c` of them).
    Points,
    /// A random stable datum, gauged by a random `g`.
    Stable,
    /// A commuting datum with an invariant proper subspace containing `I`.
    Unstable,
    /// A commuting tuple (diagonalizable or Jordan tower) with a fixed `I`.
    Commuting,
}

#[derive(Debug, Parser)]
#[command(name = "hilbadhm", version, about = "Ideals of points, commuting matrices and ADHM data over the rationals")]
pub struct Cli {
    /// Monomial order for Gröbner bases.
    #[arg(long, global = true, env = "HILBADHM_ORDER", default_value = "grevlex",
          value_parser = ["grevlex", "lex", "deglex"])]
    pub order: String,
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "HILBADHM_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Clustering tolerance of the approximate Hilbert–Chow path.
    #[arg(long, global = true, env = "HILBADHM_TOLERANCE", default_value_t = 1e-8)]
    pub tolerance: f64,
    /// Output format of reports.
    #[arg(long, global = true, env = "HILBADHM_FORMAT", value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiplication matrices of a zero-dimensional ideal (writes a datum document).
    Ideal2adhm {
        file: PathBuf,
        /// Number of variables; inferred from the largest index otherwise.
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Reduced Gröbner basis of the kernel of a stable datum.
    Adhm2ideal { file: PathBuf },
    /// Ideal → datum → ideal, compared with the Gröbner basis of the input.
    Roundtrip {
        file: PathBuf,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Gauge equivalence of two data.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        /// Print the conjugating matrix g.
        #[arg(long)]
        witness: bool,
    },
    /// Commutation and stability of a datum.
    Stability { file: PathBuf },
    /// Support cycle with multiplicities.
    Hilbchow {
        file: PathBuf,
        /// Exact rational path (default).
        #[arg(long, conflicts_with = "approx")]
        exact: bool,
        /// Floating-point path with clustering at --tolerance.
        #[arg(long)]
        approx: bool,
    },
    /// Builds the monad and checks it is a complex with the expected fibers.
    Monadcheck {
        file: PathBuf,
        /// Number of random fibers to sample.
        #[arg(long, default_value_t = 20)]
        fibers: usize,
    },
    /// Writes the monad of a stable datum as a document.
    Monad { file: PathBuf },
    /// Membership in the Hilbert scheme of Y = Z(f_1, …, f_k).
    Variety { datum: PathBuf, variety: PathBuf },
    /// Generates a seeded datum document.
    Sample {
        #[arg(long, value_enum, default_value_t = SampleKind::Stable)]
        kind: SampleKind,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        c: usize,
    },
    /// Searches for a stable datum near a commuting one.
    Stabilize {
        file: PathBuf,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Entrywise distance bound, a rational such as 1/2.
        #[arg(long, default_value = "1")]
        radius: String,
    },
    /// Runs the round-trip and Hilbert–Chow checks over a generated corpus.
    Corpus {
        /// Largest colength of the monomial ideals.
        #[arg(long, default_value_t = 4)]
        max_colength: usize,
        /// Number of random point ideals.
        #[arg(long, default_value_t = 10)]
        points: usize,
    },
}

fn read_input(path: &Path) -> AppResult<String> {
    let io = |source| AppError::Io { path: path.to_path_buf(), source };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(io)
}

fn read_datum(path: &Path) -> AppResult<AdhmDatum> {
    parse_datum(&read_input(path)?)
}

/// Left-aligned columns separated by two spaces.
pub fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|k| rows.iter().filter_map(|r| r.get(k)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> =
            r.iter().enumerate().map(|(k, s)| format!("{s:<w$}", w = widths[k])).collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}

fn matrix_text(m: &Matrix, indent: &str) -> String {
    let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(rational_string).collect()).collect();
    table(&rows).lines().map(|l| format!("{indent}{l}\n")).collect()
}

pub fn run(cli: &Cli) -> AppResult<String> {
    let order = parse_order(&cli.order)?;
    match &cli.command {
        Command::Ideal2adhm { file, nvars } => ideal2adhm(&read_input(file)?, *nvars, &order),
        Command::Adhm2ideal { file } => adhm2ideal(&read_datum(file)?, &order, cli.format),
        Command::Roundtrip { file, nvars } => roundtrip(&read_input(file)?, *nvars, &order, cli.format),
        Command::Equiv { first, second, witness } => {
            equiv(&read_datum(first)?, &read_datum(second)?, &order, *witness, cli.format)
        }
        Command::Stability { file } => stability(&read_datum(file)?, cli.format),
        Command::Hilbchow { file, approx, .. } => {
            let x = read_datum(file)?;
            if *approx {
                hilbchow_approx(&x, cli.tolerance, cli.seed, cli.format)
            } else {
                hilbchow_exact(&x, cli.format)
            }
        }
        Command::Monadcheck { file, fibers } => monadcheck(&read_datum(file)?, *fibers, cli.seed, cli.format),
        Command::Monad { file } => Ok(MonadDocument::from_monad(&build_monad(&read_datum(file)?)?).to_json()),
        Command::Variety { datum, variety } => {
            let x = read_datum(datum)?;
            let (_, gens) = parse_poly_lines(&read_input(variety)?, Some(x.n()))?;
            variety_report(&x, &VarietyConstraint::new(x.n(), gens)?, cli.format)
        }
        Command::Sample { kind, n, c } => sample(*kind, *n, *c, cli.seed),
        Command::Stabilize { file, trials, radius } => {
            let radius = parse_rational(radius).ok_or_else(|| AppError::Parse(format!("radius '{radius}' is not a rational")))?;
            stabilize(&read_datum(file)?, *trials, &radius, cli.seed)
        }
        Command::Corpus { max_colength, points } => corpus(*max_colength, *points, &order, cli.tolerance, cli.seed, cli.format),
    }
}

pub fn ideal2adhm(src: &str, nvars: Option<usize>, order: &MonomialOrder) -> AppResult<String> {
    let (_, gens) = parse_poly_lines(src, nvars)?;
    let j = groebner(&gens, order)?;
    let x = AdhmDatum::ideal_to_datum(&j)?;
    Ok(DatumDocument::from_datum(&x, j.std_monomials()).to_json())
}

pub fn adhm2ideal(x: &AdhmDatum, order: &MonomialOrder, format: Format) -> AppResult<String> {
    let doc = IdealDocument::from_ideal(&x.datum_to_ideal(order)?);
    Ok(match format {
        Format::Text => doc.to_text(),
        Format::Json => doc.to_json(),
    })
}

#[derive(Serialize)]
struct RoundtripReport {
    nvars: usize,
    order: String,
    colength: usize,
    roundtrip: bool,
    basis: Vec<String>,
}

pub fn roundtrip(src: &str, nvars: Option<usize>, order: &MonomialOrder, format: Format) -> AppResult<String> {
    let (n, gens) = parse_poly_lines(src, nvars)?;
    let j = groebner(&gens, order)?;
    let x = AdhmDatum::ideal_to_datum(&j)?;
    let back = x.datum_to_ideal(order)?;
    let ok = back.reduced_gb() == j.reduced_gb();
    let doc = IdealDocument::from_ideal(&back);
    if !ok {
        return Err(AppError::Core(CoreError::InvalidArgument("round trip changed the ideal".into())));
    }
    let report = RoundtripReport {
        nvars: n,
        order: doc.order.clone(),
        colength: x.c(),
        roundtrip: ok,
        basis: doc.basis,
    };
    Ok(match format {
        Format::Text => format!("roundtrip: ok, colength {}\n", report.colength),
        Format::Json => to_json(&report),
    })
}

#[derive(Serialize)]
struct EquivReport {
    equivalent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<Vec<String>>>,
}

pub fn equiv(x: &AdhmDatum, y: &AdhmDatum, order: &MonomialOrder, witness: bool, format: Format) -> AppResult<String> {
    let w = AdhmDatum::are_equivalent(x, y, order)?;
    let g = w.as_ref().filter(|_| witness).map(|w| w.g.clone());
    Ok(match format {
        Format::Text => {
            let mut out = format!("equivalent: {}\n", w.is_some());
            if let Some(g) = &g {
                out.push_str("g =\n");
                out.push_str(&matrix_text(g, "  "));
            }
            out
        }
        Format::Json => to_json(&EquivReport {
            equivalent: w.is_some(),
            witness: g.map(|g| g.to_rows().iter().map(|r| r.iter().map(rational_string).collect()).collect()),
        }),
    })
}

#[derive(Serialize)]
struct StabilityReport {
    commuting: bool,
    stable: bool,
    krylov_rank: usize,
    c: usize,
}

pub fn stability(x: &AdhmDatum, format: Format) -> AppResult<String> {
    let stable = x.is_stable()?;
    let rank = x.krylov().rank;
    Ok(match format {
        Format::Text => format!("stable: {stable}, krylov rank {rank}/{}\n", x.c()),
        Format::Json => to_json(&StabilityReport { commuting: true, stable, krylov_rank: rank, c: x.c() }),
    })
}

pub fn hilbchow_exact(x: &AdhmDatum, format: Format) -> AppResult<String> {
    let z = hilbert_chow_exact(x)?;
    Ok(match format {
        Format::Text => exact_cycle_text(&z),
        Format::Json => ExactCycleDocument::from_cycle(&z).to_json(),
    })
}

pub fn hilbchow_approx(x: &AdhmDatum, tolerance: f64, seed: u64, format: Format) -> AppResult<String> {
    let z = hilbert_chow_approx(x, tolerance, seed)?;
    Ok(match format {
        Format::Text => format!("seed: {seed}\n{}", approx_cycle_text(&z, tolerance)),
        Format::Json => ApproxCycleDocument::from_cycle(&z, tolerance, seed).to_json(),
    })
}

#[derive(Serialize)]
struct MonadCheckReport {
    complex: bool,
    dims: Vec<usize>,
    seed: u64,
    fibers: usize,
    negative_degree_cohomology: usize,
    degree_zero_cohomology: Vec<usize>,
}

/// Whether `z` (with `z_n ≠ 0`) lies over a support point: the `A_j(z)` share a kernel vector.
fn over_support(x: &AdhmDatum, z: &Vector) -> bool {
    let zn = z.last().expect("n + 1 coordinates");
    let blocks: Vec<Matrix> = x
        .matrices()
        .iter()
        .zip(z)
        .map(|(b, zj)| b - &Matrix::scalar(x.c(), &(zj / zn)))
        .collect();
    let stacked = blocks.iter().skip(1).fold(blocks[0].clone(), |acc, b| acc.vstack(b).expect("equal widths"));
    stacked.rank() < x.c()
}

pub fn monadcheck(x: &AdhmDatum, fibers: usize, seed: u64, format: Format) -> AppResult<String> {
    let m = build_monad(x)?;
    let report = check_complex(&m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut negative = 0;
    let mut degree_zero = Vec::new();
    let mut sampled = 0;
    while sampled < fibers {
        let z = random_chart_point(x.n(), &mut rng);
        if over_support(x, &z) {
            continue;
        }
        let profile = fiber_profile(&m, &z)?;
        negative = negative.max(profile.range(..0).map(|(_, f)| f.cohomology).sum());
        let h0 = profile[&0].cohomology;
        if !degree_zero.contains(&h0) {
            degree_zero.push(h0);
        }
        sampled += 1;
    }
    degree_zero.sort_unstable();
    let doc = MonadCheckReport {
        complex: report.is_complex(),
        dims: m.shape.dims.values().copied().collect(),
        seed,
        fibers,
        negative_degree_cohomology: negative,
        degree_zero_cohomology: degree_zero,
    };
    Ok(match format {
        Format::Text => format!(
            "complex: {}, fibers sampled: {}, negative-degree cohomology: {}\nseed: {seed}\n",
            if doc.complex { "ok" } else { "FAILED" },
            doc.fibers,
            doc.negative_degree_cohomology
        ),
        Format::Json => to_json(&doc),
    })
}

#[derive(Serialize)]
struct ResidualEntry {
    generator: String,
    zero: bool,
    residual: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct VarietyReport {
    member: bool,
    residuals: Vec<ResidualEntry>,
}

pub fn variety_report(x: &AdhmDatum, y: &VarietyConstraint, format: Format) -> AppResult<String> {
    let member = is_in_hilb_variety(x, y)?;
    let residuals = variety_residuals(x, y)?;
    Ok(match format {
        Format::Text => {
            let mut rows = vec![vec!["generator".to_string(), "residual".to_string()]];
            for (f, r) in y.generators().iter().zip(&residuals) {
                rows.push(vec![f.to_string(), if r.is_zero() { "0".into() } else { "nonzero".into() }]);
            }
            format!("member: {member}\n{}", table(&rows))
        }
        Format::Json => to_json(&VarietyReport {
            member,
            residuals: y
                .generators()
                .iter()
                .zip(&residuals)
                .map(|(f, r)| ResidualEntry {
                    generator: f.to_string(),
                    zero: r.is_zero(),
                    residual: r.to_rows().iter().map(|row| row.iter().map(rational_string).collect()).collect(),
                })
                .collect(),
        }),
    })
}

pub fn sample(kind: SampleKind, n: usize, c: usize, seed: u64) -> AppResult<String> {
    if n == 0 || c == 0 {
        return Err(AppError::Usage("n and c must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = match kind {
        SampleKind::Points => AdhmDatum::from_points(&random_points(c, n, &mut rng), n)?,
        SampleKind::Stable => random_stable_datum(n, c, &mut rng)?,
        SampleKind::Unstable => {
            if c < 2 {
                return Err(AppError::Usage("an unstable sample needs c ≥ 2".into()));
            }
            unstable_block_datum(n, c, &mut rng)?
        }
        SampleKind::Commuting => commuting_search_tuple(n, c, &mut rng)?,
    };
    let mut doc = DatumDocument::from_datum(&x, None);
    doc.seed = Some(seed);
    Ok(doc.to_json())
}

pub fn stabilize(x: &AdhmDatum, trials: usize, radius: &Rational, seed: u64) -> AppResult<String> {
    match x.stabilize_search(trials, seed, radius)? {
        Some(y) => {
            let mut doc = DatumDocument::from_datum(&y, None);
            doc.seed = Some(seed);
            Ok(doc.to_json())
        }
        None => Err(AppError::Core(CoreError::Unstable { rank: x.krylov().rank, c: x.c() })),
    }
}

#[derive(Serialize)]
struct CorpusRow {
    family: String,
    ideals: usize,
    roundtrip: usize,
    trace: usize,
    approx: usize,
}

#[derive(Serialize)]
struct CorpusReport {
    seed: u64,
    tolerance: f64,
    rows: Vec<CorpusRow>,
    ok: bool,
}

pub fn corpus(max_colength: usize, points: usize, order: &MonomialOrder, tolerance: f64, seed: u64, format: Format) -> AppResult<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut families: Vec<(String, Vec<adhm_core::IdealPresentation>)> = Vec::new();
    for n in [2, 3] {
        let ideals = staircases(n, max_colength)
            .iter()
            .map(|s| monomial_ideal(s, n, order))
            .collect::<Result<Vec<_>, _>>()?;
        families.push((format!("monomial n={n}"), ideals));
    }
    let mut pts = Vec::new();
    for _ in 0..points {
        let n = rand::Rng::gen_range(&mut rng, 1..=4);
        let k = rand::Rng::gen_range(&mut rng, 1..=6);
        let p = random_points(k, n, &mut rng);
        pts.push(groebner(&point_ideal_generators(&p, n, order, &mut rng)?, order)?);
    }
    families.push(("points".into(), pts));

    let mut rows = Vec::new();
    for (family, ideals) in &families {
        let mut row = CorpusRow { family: family.clone(), ideals: ideals.len(), roundtrip: 0, trace: 0, approx: 0 };
        for j in ideals {
            let x = AdhmDatum::ideal_to_datum(j)?;
            if x.datum_to_ideal(order)?.reduced_gb() == j.reduced_gb() {
                row.roundtrip += 1;
            }
            let z = hilbert_chow_exact(&x)?;
            if z.degree() == x.c() && cycle_trace_check(&x, &z, &monomial_probes(x.n(), 3))? {
                row.trace += 1;
            }
            if cycles_agree(&z, &hilbert_chow_approx(&x, tolerance, seed)?, tolerance)
                && approx_trace_check(&x, &hilbert_chow_approx(&x, tolerance, seed)?, &monomial_probes(x.n(), 3), tolerance)?
            {
                row.approx += 1;
            }
        }
        rows.push(row);
    }
    let ok = rows.iter().all(|r| r.roundtrip == r.ideals && r.trace == r.ideals && r.approx == r.ideals);
    Ok(match format {
        Format::Text => {
            let mut t = vec![vec!["family".into(), "ideals".into(), "roundtrip".into(), "trace".into(), "approx".into()]];
            for r in &rows {
                t.push(vec![
                    r.family.clone(),
                    r.ideals.to_string(),
                    r.roundtrip.to_string(),
                    r.trace.to_string(),
                    r.approx.to_string(),
                ]);
            }
            format!("seed: {seed}\n{}all passed: {ok}\n", table(&t))
        }
        Format::Json => to_json(&CorpusReport { seed, tolerance, rows, ok }),
    })
}
