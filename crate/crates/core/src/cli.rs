//! Command-line front end: argument types, the subcommand runner and its output.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bounds::{find_crossover, selmer_upper, BoundParams, CrossoverReport};
use crate::combinatorics::{binomial, kn_upper_bound, witt_dimension, zn_n_lower_bound, BigCount};
use crate::eigen::{
    degree_two_signs_oracle, f0_count, f0_upper_bound, low_degree_minus_dim,
    minus_partial_sum_bound, sn_minus_dim, sym_eigen_dims, wdr2_dim, wdr2_dim_oracle,
    wdr_lower_bound,
};
use crate::error::Error;
use crate::hall::{generate_hall, verify_hall_spans, BigradeCell, HallEntry};
use crate::oracle::{Budget, Oracle, Pairing};
use crate::quotient::{QuotientDimRecord, QuotientDims};
use crate::zeros::{
    count_vanishing_indices, fiber_partition, prefix_count_bounds, AnnihilatorProfile,
    ExponentMatrix, FiberReport, H2Params, PrefixBounds, VanishingReport,
};

#[derive(Parser, Debug, Clone)]
#[command(
    name = "liedim",
    version,
    about = "Graded dimensions of metabelian and surface Lie algebras, and the bounds built from them"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug, Clone, Default)]
pub struct OutputArgs {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "tsv")]
    pub json: bool,
    /// Emit tab-separated values (the default).
    #[arg(long, global = true)]
    pub tsv: bool,
}

impl OutputArgs {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            Format::Tsv
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    /// Largest alphabet the exact oracle accepts.
    #[arg(long, global = true, default_value_t = Budget::default().max_generators)]
    pub budget_generators: usize,
    /// Largest degree the exact oracle accepts.
    #[arg(long, global = true, default_value_t = Budget::default().max_degree)]
    pub budget_degree: usize,
}

impl Default for BudgetArgs {
    fn default() -> Self {
        let b = Budget::default();
        BudgetArgs {
            budget_generators: b.max_generators,
            budget_degree: b.max_degree,
        }
    }
}

impl BudgetArgs {
    fn oracle(&self) -> Oracle {
        Oracle::new(Budget {
            max_generators: self.budget_generators,
            max_degree: self.budget_degree,
        })
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum PairingArg {
    #[default]
    Consecutive,
    Split,
}

impl From<PairingArg> for Pairing {
    fn from(p: PairingArg) -> Self {
        match p {
            PairingArg::Consecutive => Pairing::Consecutive,
            PairingArg::Split => Pairing::Split,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct H2Args {
    /// Per-degree H^2 constant B, as "p/q" or an integer.
    #[arg(long = "B", alias = "b", value_parser = parse_rational, conflicts_with_all = ["m", "a"])]
    pub b: Option<BigRational>,
    /// Generator count m (split form m*A + A').
    #[arg(long, requires = "a")]
    pub m: Option<u64>,
    /// Constant A of the split form.
    #[arg(long = "A", value_parser = parse_rational, requires = "m")]
    pub a: Option<BigRational>,
    /// Constant A' of the split form.
    #[arg(long = "A-prime", value_parser = parse_rational, requires = "m")]
    pub a_prime: Option<BigRational>,
    /// Selmer-side constant for degrees 1 and 2.
    #[arg(long, default_value_t = 0)]
    pub c0: u64,
}

impl H2Args {
    fn params(&self) -> H2Params {
        match (self.m, &self.a) {
            (Some(m), Some(a)) => H2Params::Split {
                m,
                a: a.clone(),
                a_prime: self.a_prime.clone().unwrap_or_else(BigRational::zero),
            },
            _ => H2Params::Direct {
                b: self.b.clone().unwrap_or_else(BigRational::zero),
            },
        }
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Hall elements by derived-series level, or their bigraded counts.
    Hall {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        degree: usize,
        /// Emit only the counts |H_n(i)|.
        #[arg(long)]
        counts: bool,
    },
    /// Exact quotient dimensions next to the closed formulas.
    Dims {
        #[arg(long)]
        g: usize,
        /// Degrees as "a..b" (inclusive) or a single degree.
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<u64>,
        #[arg(long, value_enum, default_value_t)]
        pairing: PairingArg,
    },
    /// Eigenspace, F^0 and Euler-characteristic tables.
    Bounds {
        #[arg(long)]
        g: u64,
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<u64>,
        #[command(flatten)]
        h2: H2Args,
    },
    /// Fiber partition of multi-indices under an exponent matrix.
    Zeros {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        n: u64,
        /// Exponent matrix, CSV (entries "p/q") or JSON.
        #[arg(long)]
        matrix: PathBuf,
        /// Annihilator profile JSON {l, m, roots: {prefix: [values]}}.
        #[arg(long)]
        profile: Option<PathBuf>,
    },
    /// First degree where the upper bound falls below the lower bound for good.
    Crossover {
        #[arg(long)]
        g: u64,
        #[arg(long, default_value_t = 200)]
        horizon: u64,
        #[command(flatten)]
        h2: H2Args,
    },
    /// Formula-against-oracle checks; exits 1 on any failure.
    Verify {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        max_n: usize,
    },
}

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    VerificationFailed = 1,
    Usage = 2,
    BudgetExceeded = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn of(e: &Error) -> Status {
        match e {
            Error::BudgetExceeded(_) => Status::BudgetExceeded,
            Error::InvalidInput(_) | Error::Domain { .. } | Error::RankDeficient { .. } => {
                Status::Usage
            }
            Error::MixedDegree { .. } | Error::Overflow => Status::VerificationFailed,
        }
    }
}

/// What a run writes and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            status: Status::Ok,
            stdout,
            stderr: String::new(),
        }
    }

    fn failed(e: Error) -> Self {
        Self::partial(String::new(), e)
    }

    fn partial(stdout: String, e: Error) -> Self {
        Outcome {
            status: Status::of(&e),
            stdout,
            stderr: format!("error: {e}\n"),
        }
    }
}

pub fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| format!("{s:?} is not a rational \"p/q\": {e}"))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

pub fn run(cli: &Cli) -> Outcome {
    let format = cli.output.format();
    let oracle = cli.budget.oracle();
    match &cli.command {
        Command::Hall { k, degree, counts } => run_hall(*k, *degree, *counts, format),
        Command::Dims { g, n, pairing } => run_dims(oracle, *g, n, (*pairing).into(), format),
        Command::Bounds { g, n, h2 } => run_bounds(*g, n, h2, format),
        Command::Zeros {
            g,
            n,
            matrix,
            profile,
        } => run_zeros(*g, *n, matrix, profile.as_deref(), format),
        Command::Crossover { g, horizon, h2 } => run_crossover(*g, *horizon, h2, format),
        Command::Verify { g, max_n } => run_verify(oracle, *g, *max_n, format),
    }
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct HallDump {
    pub k: usize,
    pub max_degree: usize,
    pub entries: Vec<HallEntry>,
}

fn run_hall(k: usize, degree: usize, counts: bool, format: Format) -> Outcome {
    let table = match generate_hall(k, degree) {
        Ok(t) => t,
        Err(e) => return Outcome::failed(e),
    };
    if counts {
        let dims = table.bigrade_dims();
        return Outcome::ok(match format {
            Format::Json => json(&dims),
            Format::Tsv => {
                let mut s = String::from("level\tdegree\tcount\n");
                for BigradeCell {
                    level,
                    degree,
                    count,
                } in &dims.cells
                {
                    writeln!(s, "{level}\t{degree}\t{count}").unwrap();
                }
                s
            }
        });
    }
    let dump = HallDump {
        k,
        max_degree: degree,
        entries: table.entries(),
    };
    Outcome::ok(match format {
        Format::Json => json(&dump),
        Format::Tsv => {
            let mut s = String::from("level\tdegree\tmonomial\n");
            for e in &dump.entries {
                writeln!(s, "{}\t{}\t{}", e.level, e.degree, e.monomial).unwrap();
            }
            s
        }
    })
}

const DIMS_HEADER: &str = "g\tn\tdim_L\tdim_I\tdim_I_plus_R\tdim_Znprime\tformula_Znprime\tdim_Zn\tlower_bound_Zn\tslack\trelation_image\trelation_bound\n";

fn dims_row(r: &QuotientDimRecord) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
        r.g,
        r.n,
        r.dim_l,
        r.dim_i,
        r.dim_i_plus_r,
        r.dim_znprime,
        r.formula_znprime,
        r.dim_zn,
        r.lower_bound_zn,
        r.slack(),
        r.relation_image_exact,
        r.relation_image_bound
    )
}

fn render_dims(records: &[QuotientDimRecord], format: Format) -> String {
    match format {
        Format::Json => json(&records),
        Format::Tsv => {
            let mut s = String::from(DIMS_HEADER);
            for r in records {
                s.push_str(&dims_row(r));
            }
            s
        }
    }
}

fn run_dims(
    oracle: Oracle,
    g: usize,
    n: &RangeInclusive<u64>,
    pairing: Pairing,
    format: Format,
) -> Outcome {
    if *n.start() == 0 {
        return Outcome::failed(Error::InvalidInput("degrees start at 1".into()));
    }
    let dims = match QuotientDims::new(oracle, g, pairing) {
        Ok(d) => d,
        Err(e) => return Outcome::failed(e),
    };
    let degrees: Vec<usize> = n.clone().map(|d| d as usize).collect();
    let mut done = Vec::new();
    for r in dims.records(&degrees) {
        match r {
            Ok(r) => done.push(r),
            Err(e) => return Outcome::partial(render_dims(&done, format), e),
        }
    }
    Outcome::ok(render_dims(&done, format))
}

/// One degree of the eigenspace / F^0 / Euler-characteristic tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub n: u64,
    pub sym_plus: BigCount,
    pub sym_minus: BigCount,
    pub sn_minus: BigCount,
    pub kn_bound: BigCount,
    pub f0_count: BigCount,
    pub f0_bound: BigCount,
    pub zn_lower: BigCount,
    /// Running majorant of `sum_{i <= n} dim Z_i(N)^-`.
    pub minus_partial_sum: BigCount,
    pub wdr_lower: Option<BigCount>,
    pub selmer_upper: Option<BigCount>,
}

pub fn bounds_row(params: &BoundParams, n: u64) -> crate::Result<BoundsRow> {
    let g = params.g;
    let split = sym_eigen_dims(g, n.saturating_sub(2));
    Ok(BoundsRow {
        n,
        sym_plus: split.plus,
        sym_minus: split.minus,
        sn_minus: sn_minus_dim(g, n)?,
        kn_bound: kn_upper_bound(g, n)?,
        f0_count: f0_count(g, n)?,
        f0_bound: f0_upper_bound(g, n)?,
        zn_lower: zn_n_lower_bound(g, n)?,
        minus_partial_sum: minus_partial_sum_bound(g, n)?,
        wdr_lower: (n >= 3).then(|| wdr_lower_bound(g, n)).transpose()?,
        selmer_upper: (n >= 3).then(|| selmer_upper(params, n)).transpose()?,
    })
}

fn run_bounds(g: u64, n: &RangeInclusive<u64>, h2: &H2Args, format: Format) -> Outcome {
    if *n.start() < 2 {
        return Outcome::failed(Error::InvalidInput("bounds tables start at n = 2".into()));
    }
    let params = match BoundParams::new(g, h2.params(), h2.c0, 3) {
        Ok(p) => p,
        Err(e) => return Outcome::failed(e),
    };
    let rows = match n
        .clone()
        .map(|d| bounds_row(&params, d))
        .collect::<crate::Result<Vec<_>>>()
    {
        Ok(r) => r,
        Err(e) => return Outcome::failed(e),
    };
    Outcome::ok(match format {
        Format::Json => json(&rows),
        Format::Tsv => {
            let mut s = String::from(
                "n\tsym_plus\tsym_minus\tsn_minus\tkn_bound\tf0_count\tf0_bound\tzn_lower\tminus_partial_sum\twdr_lower\tselmer_upper\n",
            );
            for r in &rows {
                writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.n,
                    r.sym_plus,
                    r.sym_minus,
                    r.sn_minus,
                    r.kn_bound,
                    r.f0_count,
                    r.f0_bound,
                    r.zn_lower,
                    r.minus_partial_sum,
                    opt(&r.wdr_lower),
                    opt(&r.selmer_upper)
                )
                .unwrap();
            }
            s
        }
    })
}

/// Output of the `zeros` subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZerosReport {
    pub fibers: FiberReport,
    pub prefix: PrefixBounds,
    pub vanishing: Option<VanishingReport>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixJson {
    Scaled {
        denominator: u64,
        numerators: Vec<Vec<i64>>,
    },
    Entries(Vec<Vec<serde_json::Value>>),
}

fn json_entry(v: &serde_json::Value) -> Result<BigRational, String> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(format!("matrix entry {other} is not a number")),
    }
}

/// Reads an exponent matrix from CSV (one row per line, entries "p/q") or JSON
/// (`[[...]]` or `{"denominator": M, "numerators": [[...]]}`).
pub fn parse_matrix(text: &str) -> crate::Result<ExponentMatrix> {
    let bad = |e: String| Error::InvalidInput(format!("exponent matrix: {e}"));
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        let parsed: MatrixJson = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        return match parsed {
            MatrixJson::Scaled {
                denominator,
                numerators,
            } => ExponentMatrix::new(numerators, denominator),
            MatrixJson::Entries(rows) => {
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(json_entry).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(bad)?;
                ExponentMatrix::from_rationals(&rows)
            }
        };
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let rows = reader
        .records()
        .map(|r| {
            r.map_err(|e| e.to_string())?
                .iter()
                .map(parse_rational)
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(bad)?;
    ExponentMatrix::from_rationals(&rows)
}

fn read(path: &Path) -> crate::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn zeros_report(
    g: u64,
    n: u64,
    matrix: &Path,
    profile: Option<&Path>,
) -> crate::Result<ZerosReport> {
    let d = parse_matrix(&read(matrix)?)?;
    let profile = profile
        .map(|p| {
            serde_json::from_str::<AnnihilatorProfile>(&read(p)?)
                .map_err(|e| Error::InvalidInput(format!("annihilator profile: {e}")))
        })
        .transpose()?;
    let fibers = fiber_partition(&d, g, n)?;
    let prefix = prefix_count_bounds(g, d.cols() as u64, d.denominator(), &d.abs(), n)?;
    let vanishing = profile
        .map(|p| count_vanishing_indices(&d, &p, g, n))
        .transpose()?;
    Ok(ZerosReport {
        fibers,
        prefix,
        vanishing,
    })
}

fn run_zeros(g: u64, n: u64, matrix: &Path, profile: Option<&Path>, format: Format) -> Outcome {
    let report = match zeros_report(g, n, matrix, profile) {
        Ok(r) => r,
        Err(e) => return Outcome::failed(e),
    };
    Outcome::ok(match format {
        Format::Json => json(&report),
        Format::Tsv => {
            let f = &report.fibers;
            let mut s = String::new();
            writeln!(s, "# g={} n={} denominator={} total={} expected_total={} max_fiber={} kernel_box_count={}",
                f.g, f.n, f.denominator, f.total, f.expected_total, f.max_fiber, f.kernel_box_count).unwrap();
            writeln!(
                s,
                "# prefix_exact={} prefix_cube={}",
                report.prefix.exact, report.prefix.cube
            )
            .unwrap();
            if let Some(v) = &report.vanishing {
                writeln!(s, "# vanishing={} vanishing_bound={}", v.count, v.bound).unwrap();
            }
            s.push_str("delta\tsize\n");
            for fiber in &f.fibers {
                let delta: Vec<String> = fiber.delta.iter().map(i64::to_string).collect();
                writeln!(s, "{}\t{}", delta.join(","), fiber.size).unwrap();
            }
            s
        }
    })
}

fn render_crossover(r: &CrossoverReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Tsv => {
            let mut s = String::new();
            writeln!(
                s,
                "# g={} B={} c0={} horizon={} n0={} leading_ok={} leading={}<{}",
                r.g,
                r.h2_coefficient,
                r.c0,
                r.horizon,
                opt(&r.n0),
                r.leading_ok,
                r.leading_upper,
                r.leading_lower
            )
            .unwrap();
            if let Some(d) = &r.diagnostic {
                writeln!(s, "# {d}").unwrap();
            }
            s.push_str("n\tupper\tlower\tholds\n");
            for row in &r.trace {
                writeln!(
                    s,
                    "{}\t{}\t{}\t{}",
                    row.n,
                    row.upper,
                    row.lower,
                    row.holds()
                )
                .unwrap();
            }
            s
        }
    }
}

fn run_crossover(g: u64, horizon: u64, h2: &H2Args, format: Format) -> Outcome {
    let report = BoundParams::new(g, h2.params(), h2.c0, horizon).and_then(|p| find_crossover(&p));
    match report {
        Ok(r) => Outcome::ok(render_crossover(&r, format)),
        Err(e) => Outcome::failed(e),
    }
}

/// One line of the `verify` report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub check: String,
    pub n: Option<usize>,
    pub ok: bool,
    pub detail: String,
}

fn check(name: &str, n: Option<usize>, ok: bool, detail: String) -> Check {
    Check {
        check: name.to_string(),
        n,
        ok,
        detail,
    }
}

/// The formula-against-oracle suite for one genus and degrees up to `max_n`.
///
/// Stops at the first error and returns the checks completed so far with it.
pub fn verify_suite(oracle: &Oracle, g: usize, max_n: usize) -> (Vec<Check>, Option<Error>) {
    let mut out = Vec::new();
    let err = verify_into(oracle, g, max_n, &mut out).err();
    (out, err)
}

fn verify_into(oracle: &Oracle, g: usize, max_n: usize, out: &mut Vec<Check>) -> crate::Result<()> {
    if g == 0 || max_n < 2 {
        return Err(Error::InvalidInput(
            "verify needs g >= 1 and max-n >= 2".into(),
        ));
    }
    let k = 2 * g;
    let (gu, ku) = (g as u64, k as u64);

    for n in 1..=max_n {
        let rank = oracle.free_piece(k, n)?.rank();
        let witt = witt_dimension(ku, n as u64);
        out.push(check(
            "witt_rank",
            Some(n),
            witt == rank as u64,
            format!("rank={rank} witt={witt}"),
        ));
    }

    let dims = QuotientDims::new(*oracle, g, Pairing::default())?;
    let degrees: Vec<usize> = (2..=max_n).collect();
    for r in dims.records(&degrees) {
        let r = r?;
        let n = Some(r.n);
        out.push(check(
            "metabelian_formula",
            n,
            !r.formula_mismatch(),
            format!("exact={} formula={}", r.dim_znprime, r.formula_znprime),
        ));
        out.push(check(
            "surface_lower_bound",
            n,
            !r.lower_bound_violated(),
            format!(
                "exact={} lower={} slack={}",
                r.dim_zn,
                r.lower_bound_zn,
                r.slack()
            ),
        ));
        out.push(check(
            "relation_image_bound",
            n,
            !r.relation_bound_violated(),
            format!(
                "exact={} bound={}",
                r.relation_image_exact, r.relation_image_bound
            ),
        ));
    }

    for n in 2..=max_n {
        let h = dims.verify_h1_independence(n)?;
        out.push(check(
            "h1_independent",
            Some(n),
            h.independent,
            format!("h1={} dim_I={} joint={}", h.h1_count, h.dim_i, h.joint_rank),
        ));
    }

    for n in 1..=max_n {
        let h = verify_hall_spans(oracle, k, n)?;
        out.push(check(
            "hall_spans",
            Some(n),
            h.ok,
            format!(
                "rank={} witt={} deep={} derived={} union={}",
                h.total_rank, h.witt, h.deep_rank, h.derived_rank, h.union_rank
            ),
        ));
    }

    let max_m = 2 * max_n + 1;
    let eigen_ok = (0..=max_m as u64).all(|m| {
        let s = sym_eigen_dims(gu, m);
        s.total() == binomial(m + 2 * gu - 1, 2 * gu - 1) && (m % 2 == 0 || s.plus == s.minus)
    });
    out.push(check("eigen_split", None, eigen_ok, format!("m<={max_m}")));

    for n in 2..=max_n {
        let (c, b) = (f0_count(gu, n as u64)?, f0_upper_bound(gu, n as u64)?);
        out.push(check(
            "f0_count",
            Some(n),
            c <= b,
            format!("count={c} bound={b}"),
        ));
    }

    let (w, wo) = (wdr2_dim(gu)?, wdr2_dim_oracle(oracle, g)?);
    out.push(check(
        "wdr2_dim",
        Some(2),
        w == wo,
        format!("formula={w} oracle={wo}"),
    ));

    let signs = degree_two_signs_oracle(oracle, g)?;
    let c2 = low_degree_minus_dim(gu);
    out.push(check(
        "low_degree_minus",
        Some(2),
        signs.omega_is_minus && c2 == (g + signs.quotient_minus) as u64,
        format!(
            "c2={c2} oracle={} omega_minus={}",
            g + signs.quotient_minus,
            signs.omega_is_minus
        ),
    ));

    if g >= 2 {
        let r = find_crossover(&BoundParams::new(gu, H2Params::default(), 0, 200)?)?;
        out.push(check(
            "crossover",
            r.n0.map(|v| v as usize),
            r.n0.is_some() && r.leading_ok,
            format!(
                "n0={} leading={}<{}",
                opt(&r.n0),
                r.leading_upper,
                r.leading_lower
            ),
        ));
    }

    // D sends alpha to (sum of odd coordinates, sum of even coordinates)
    let d = ExponentMatrix::new(
        (0..k)
            .map(|i| if i % 2 == 0 { vec![1, 0] } else { vec![0, 1] })
            .collect(),
        1,
    )?;
    for n in 2..=max_n {
        let f = fiber_partition(&d, gu, n as u64)?;
        out.push(check(
            "fiber_partition",
            Some(n),
            f.is_consistent(),
            format!(
                "total={} max_fiber={} kernel_box={}",
                f.total, f.max_fiber, f.kernel_box_count
            ),
        ));
    }
    Ok(())
}

fn render_checks(checks: &[Check], format: Format) -> String {
    match format {
        Format::Json => json(&checks),
        Format::Tsv => {
            let mut s = String::from("check\tn\tstatus\tdetail\n");
            for c in checks {
                let status = if c.ok { "PASS" } else { "FAIL" };
                writeln!(s, "{}\t{}\t{}\t{}", c.check, opt(&c.n), status, c.detail).unwrap();
            }
            s
        }
    }
}

fn run_verify(oracle: Oracle, g: usize, max_n: usize, format: Format) -> Outcome {
    let (checks, err) = verify_suite(&oracle, g, max_n);
    let stdout = render_checks(&checks, format);
    match err {
        Some(e) => Outcome::partial(stdout, e),
        None if checks.iter().all(|c| c.ok) => Outcome::ok(stdout),
        None => Outcome {
            status: Status::VerificationFailed,
            stdout,
            stderr: format!(
                "{} of {} checks failed\n",
                checks.iter().filter(|c| !c.ok).count(),
                checks.len()
            ),
        },
    }
}
