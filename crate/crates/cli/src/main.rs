use std::f64::consts::SQRT_2;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::Integer;
use serde_json::{json, Map, Value};

use mertensff::curve::{EnsembleSpec, HyperellipticCurve};
use mertensff::ensemble::{convergence_json, convergence_table, run_scan, ScanConfig};
use mertensff::finite_field::make_field_split;
use mertensff::li::{li_report, relation_search, RationalAngles, DEFAULT_HEIGHT, DEFAULT_PRECISION_BITS};
use mertensff::mertens::{
    b_elliptic, elliptic_classify, elliptic_trace_admissible, prime_power, trace_window, MertensReport,
};
use mertensff::output::{f64_value, float_string, int_value, SCHEMA_VERSION};
use mertensff::rmt::{
    closed_form_prob_g1, prob_phi_leq, quadrature_prob, sample_eigenangles, verify_minimum, MinimumMode,
    SamplerKind,
};
use mertensff::zeta::{explicit_local_prediction, mobius_coefficients, polynomial_ring_series, MobiusSeries, ZetaData};
use mertensff::Error;

/// Largest X accepted by `mertens --xmax`.
const MAX_XMAX: usize = 200_000;
/// Largest Monte Carlo sample count accepted by `rmt`.
const MAX_SAMPLES: usize = 50_000_000;

/// Möbius sums, Mertens constants, LI diagnostics and random-matrix
/// statistics for hyperelliptic curves y² = f(x) over finite fields.
///
/// Exit codes: 0 ok, 2 bad input, 3 budget or resource limit,
/// 4 internal assertion (including a minimum-verification counterexample).
#[derive(Parser, Debug)]
#[command(name = "mertensff", version)]
struct Cli {
    /// Worker threads for parallel stages (default: all cores). Results do
    /// not depend on this value.
    #[arg(long, global = true, env = "MERTENSFF_THREADS", value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the result here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Point counts, the numerator P(u), inverse zeros and angles of one curve.
    Zeta(ZetaArgs),
    /// Möbius coefficients b_k, M(X), M(X)/Q^{X/2}, φ, B and β-verdicts.
    Mertens(MertensArgs),
    /// Exact degeneracy tests and integer-relation search on the angles.
    Li(LiArgs),
    /// Random-matrix probability Prob(φ(U) ≤ β) over USp(2g).
    Rmt(RmtArgs),
    /// Scan or sample the family of genus-g curves over F_{p^(mn)}.
    Ensemble(EnsembleArgs),
    /// Closed-form statements for elliptic curves with trace a over F_q.
    Elliptic(EllipticArgs),
}

#[derive(Args, Debug)]
struct CurveArgs {
    /// Characteristic, an odd prime.
    #[arg(long)]
    p: Option<u32>,

    /// Degree of the base field: q = p^m.
    #[arg(long, default_value_t = 1)]
    m: u32,

    /// Degree of the extension: the curve lives over F_Q with Q = q^n.
    #[arg(long, default_value_t = 1)]
    n: u32,

    /// Genus; checked against deg f = 2g + 1 when given.
    #[arg(long)]
    g: Option<u32>,

    /// Coefficients of f, comma separated, low to high degree. Each entry is
    /// an element of F_Q written as an integer whose base-p digits are its
    /// coordinates (so over a prime field it is the residue itself); negative
    /// entries are reduced mod p.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    f: Vec<i64>,
}

#[derive(Args, Debug)]
struct ZetaArgs {
    #[command(flatten)]
    curve: CurveArgs,

    /// Working precision in bits for zeros and angles.
    #[arg(long, default_value_t = 128)]
    precision: u32,
}

#[derive(Args, Debug)]
struct MertensArgs {
    #[command(flatten)]
    curve: CurveArgs,

    /// Genus-0 mode: the rational function field F_Q(t) (needs --p, --m, --n only).
    #[arg(long, conflicts_with_all = ["ring", "f"])]
    rational: bool,

    /// The polynomial ring F_Q[t] (needs --p, --m, --n only).
    #[arg(long, conflicts_with = "f")]
    ring: bool,

    /// Number of rows X = 1..=xmax.
    #[arg(long, default_value_t = 50)]
    xmax: usize,

    /// β values to classify, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, SQRT_2])]
    beta: Vec<f64>,

    /// Add a column b_{X-1} minus its explicit-formula value
    /// -2 Re Σ γ^X / Z'(1/γ); it vanishes for g ≥ 2, and for g = 1 from X = 2 on.
    #[arg(long)]
    residual: bool,

    /// Working precision in bits for zeros and constants.
    #[arg(long, default_value_t = 128)]
    precision: u32,

    /// Height bound for the LI relation search.
    #[arg(long = "H", default_value_t = DEFAULT_HEIGHT)]
    h: u64,

    /// Precision in bits for the LI relation search.
    #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
    li_precision: u32,
}

#[derive(Args, Debug)]
struct LiArgs {
    #[command(flatten)]
    curve: CurveArgs,

    /// Test planted angles θ = (a/b)·π instead of a curve, given as a/b
    /// fractions, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "f")]
    angles: Vec<String>,

    /// Height bound: relations with max |c_i| ≤ H are searched.
    #[arg(long = "H", default_value_t = DEFAULT_HEIGHT)]
    h: u64,

    /// Precision in bits of the angles fed to lattice reduction.
    #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
    precision: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MinimumArg {
    /// φ over USp(2g), target 1.
    Symplectic,
    /// Σ 1/|Z'| over U(N), target 1.
    Unitary,
    /// Σ |Z'|^{2k} over U(N) with k < 0, target N^{2k+1}.
    UnitaryK,
}

#[derive(Args, Debug)]
struct RmtArgs {
    /// Genus: the group is USp(2g).
    #[arg(long, default_value_t = 1)]
    g: usize,

    /// β values, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [1.0])]
    beta: Vec<f64>,

    /// Monte Carlo sample count (also the row count of --format csv dumps).
    #[arg(long, default_value_t = 100_000)]
    samples: usize,

    /// Random seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Sampler: exact_g1, rejection or mcmc. Default: exact_g1 for g = 1,
    /// rejection for g ≤ 3, mcmc above.
    #[arg(long)]
    method: Option<String>,

    /// Also integrate by quadrature with this many points per axis.
    #[arg(long, value_name = "POINTS")]
    quadrature: Option<usize>,

    /// Search for values below the claimed global minimum instead of
    /// estimating probabilities; exits 4 on a counterexample.
    #[arg(long, value_enum)]
    verify_minimum: Option<MinimumArg>,

    /// g for symplectic, N for the unitary modes (default: --g).
    #[arg(long)]
    size: Option<usize>,

    /// Exponent k for --verify-minimum unitary-k (must be negative).
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    k: f64,

    /// Random restarts for --verify-minimum.
    #[arg(long, default_value_t = 64)]
    trials: usize,
}

#[derive(Args, Debug)]
struct EnsembleArgs {
    /// Characteristic, an odd prime.
    #[arg(long)]
    p: u32,

    /// Degree of the base field: q = p^m.
    #[arg(long, default_value_t = 1)]
    m: u32,

    /// Degree of the extension: curves over F_Q with Q = q^n.
    #[arg(long, default_value_t = 1)]
    n: u32,

    /// Genus of the family.
    #[arg(long, default_value_t = 1)]
    g: u32,

    /// β values, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, SQRT_2])]
    beta: Vec<f64>,

    /// Truncation levels T for the average of min(φ, T), comma separated.
    #[arg(long = "T", value_delimiter = ',')]
    t: Vec<f64>,

    /// Sample this many curves (with replacement) instead of the whole family.
    #[arg(long)]
    samples: Option<u64>,

    /// Seed for --samples.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Monte Carlo samples for the random-matrix reference when g ≥ 4.
    #[arg(long, default_value_t = 100_000)]
    rmt_samples: usize,

    /// Seed for the random-matrix reference.
    #[arg(long, default_value_t = 0)]
    rmt_seed: u64,

    /// Height bound for the LI relation search.
    #[arg(long = "H", default_value_t = DEFAULT_HEIGHT)]
    h: u64,

    /// Precision in bits for the LI relation search.
    #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
    precision: u32,

    /// Also write one CSV row per curve to this path.
    #[arg(long, value_name = "PATH")]
    curves: Option<PathBuf>,

    /// Instead of one scan, tabulate the satisfies-fraction at the first β
    /// over F_{q^n} for each listed n (comma separated).
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["n", "samples", "curves"])]
    convergence: Vec<u32>,
}

#[derive(Args, Debug)]
struct EllipticArgs {
    /// Field size, an odd prime power.
    #[arg(long)]
    q: u64,

    /// Trace of Frobenius a = q + 1 - #E(F_q).
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,

    /// List the traces whose B lies in the open window (lo, hi), given as lo,hi.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    window: Vec<f64>,
}

enum Failure {
    Core(Error),
    Usage(String),
    /// The computation ran, but a verified statement did not hold.
    Assertion(String, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<String, Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter(_)
        | Error::InconsistentCounts(_)
        | Error::WeilViolation(_)
        | Error::UnsupportedMultiplicity
        | Error::Unsupported(_) => 2,
        Error::Resource(_) | Error::Indeterminate(_) => 3,
        Error::Internal(_) => 4,
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn with_schema(fields: Value) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA_VERSION));
    if let Value::Object(m) = fields {
        out.extend(m);
    }
    Value::Object(out)
}

impl CurveArgs {
    fn field_only(&self) -> Result<mertensff::finite_field::Field, Failure> {
        let Some(p) = self.p else {
            return usage("--p is required");
        };
        Ok(make_field_split(p, self.m, self.n)?)
    }

    fn build(&self) -> Result<HyperellipticCurve, Failure> {
        let field = self.field_only()?;
        if self.f.is_empty() {
            return usage("--f is required");
        }
        let p = field.characteristic() as i64;
        let q = field.order_u64();
        let mut idx = Vec::with_capacity(self.f.len());
        for &c in &self.f {
            if c < 0 {
                idx.push(c.rem_euclid(p) as u64);
            } else if q.is_some_and(|q| c as u64 >= q) {
                return usage(format!("coefficient {c} is not an element index below Q = {}", field.order()));
            } else {
                idx.push(c as u64);
            }
        }
        let curve = HyperellipticCurve::from_indices(&field, &idx)?;
        if let Some(g) = self.g {
            if g != curve.genus() {
                return usage(format!("--g {g} does not match deg f = {}", 2 * curve.genus() + 1));
            }
        }
        Ok(curve)
    }
}

fn cmd_zeta(a: &ZetaArgs, format: Format) -> Outcome {
    let curve = a.curve.build()?;
    let z = ZetaData::from_curve(&curve, a.precision)?;
    match format {
        Format::Json => {
            let mut v = with_schema(json!({
                "field": curve.field().label(),
                "curve": curve.label(),
            }));
            if let (Value::Object(m), Value::Object(zj)) = (&mut v, z.to_json()) {
                m.extend(zj);
            }
            Ok(render(&v))
        }
        Format::Csv => {
            let mut s = String::from("quantity,index,value\n");
            for (k, c) in z.counts().iter().enumerate() {
                writeln!(s, "count,{},{c}", k + 1).unwrap();
            }
            for (i, c) in z.p().iter().enumerate() {
                writeln!(s, "P,{i},{c}").unwrap();
            }
            for (j, g) in z.gammas().iter().enumerate() {
                writeln!(s, "gamma_re,{},{}", j + 1, float_string(&g.re)).unwrap();
                writeln!(s, "gamma_im,{},{}", j + 1, float_string(&g.im)).unwrap();
            }
            for (j, t) in z.thetas().iter().enumerate() {
                writeln!(s, "theta,{},{}", j + 1, float_string(t)).unwrap();
            }
            Ok(s)
        }
    }
}

fn series_rows(series: &MobiusSeries, residual: &[f64]) -> Result<Vec<Value>, Failure> {
    let mut rows = Vec::with_capacity(series.x_max());
    for x in 1..=series.x_max() {
        let mut row = json!({
            "X": x,
            "b": int_value(&series.coefficients()[x - 1]),
            "M": int_value(series.mertens(x)?),
            "M_normalized": f64_value(series.normalized(x)?),
        });
        if let Some(r) = residual.get(x - 1) {
            row["residual"] = f64_value(*r);
        }
        rows.push(row);
    }
    Ok(rows)
}

fn series_csv(series: &MobiusSeries, residual: &[f64]) -> Result<String, Failure> {
    let mut s = String::from("X,b,M,M_normalized");
    if !residual.is_empty() {
        s.push_str(",residual");
    }
    s.push('\n');
    for x in 1..=series.x_max() {
        write!(
            s,
            "{x},{},{},{:e}",
            series.coefficients()[x - 1],
            series.mertens(x)?,
            series.normalized(x)?
        )
        .unwrap();
        if let Some(r) = residual.get(x - 1) {
            write!(s, ",{r:e}").unwrap();
        }
        s.push('\n');
    }
    Ok(s)
}

fn cmd_mertens(a: &MertensArgs, format: Format) -> Outcome {
    if a.xmax == 0 {
        return usage("--xmax must be at least 1");
    }
    if a.xmax > MAX_XMAX {
        return Err(Error::Resource(format!("--xmax above {MAX_XMAX}")).into());
    }
    if a.beta.iter().any(|b| !(*b > 0.0)) {
        return usage("every β must be positive");
    }
    if a.rational || a.ring {
        if a.residual {
            return usage("--residual needs a curve");
        }
        let field = a.curve.field_only()?;
        let q = field.order().clone();
        let (mode, series) = if a.rational {
            ("rational", mobius_coefficients(&[Integer::from(1)], &q, a.xmax)?)
        } else {
            ("ring", polynomial_ring_series(&q, a.xmax)?)
        };
        return match format {
            Format::Json => Ok(render(&with_schema(json!({
                "mode": mode,
                "Q": int_value(&q),
                "series": series_rows(&series, &[])?,
            })))),
            Format::Csv => series_csv(&series, &[]),
        };
    }
    let curve = a.curve.build()?;
    let z = ZetaData::from_curve(&curve, a.precision)?;
    let series = mobius_coefficients(z.p(), z.q(), a.xmax)?;
    let mut residual = Vec::new();
    if a.residual {
        for x in 1..=a.xmax {
            let pred = explicit_local_prediction(&z, x as u32)?;
            let diff = rug::Float::with_val(pred.prec(), &series.coefficients()[x - 1]) - pred;
            residual.push(diff.to_f64());
        }
    }
    match format {
        Format::Json => {
            let li = li_report(&z, a.h, a.li_precision)?;
            let report = MertensReport::new(&z, li, curve.label())?;
            Ok(render(&with_schema(json!({
                "mode": "curve",
                "field": curve.field().label(),
                "report": report.to_json(&a.beta),
                "series": series_rows(&series, &residual)?,
            }))))
        }
        Format::Csv => series_csv(&series, &residual),
    }
}

fn parse_fraction(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Usage(format!("angle '{s}' is not a fraction a/b"));
    let (num, den) = s.trim().split_once('/').unwrap_or((s.trim(), "1"));
    let num: i64 = num.trim().parse().map_err(|_| bad())?;
    let den: i64 = den.trim().parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(bad());
    }
    Ok((num, den))
}

fn cmd_li(a: &LiArgs, format: Format) -> Outcome {
    let (source, report) = if a.angles.is_empty() {
        let curve = a.curve.build()?;
        let z = ZetaData::from_curve(&curve, a.precision.max(128))?;
        (curve.label(), li_report(&z, a.h, a.precision)?)
    } else {
        let angles = a.angles.iter().map(|s| parse_fraction(s)).collect::<Result<Vec<_>, _>>()?;
        let label = a.angles.iter().map(|s| s.trim()).collect::<Vec<_>>().join(",");
        (format!("angles={label}"), relation_search(&RationalAngles(angles), a.h, a.precision)?)
    };
    match format {
        Format::Json => {
            let mut v = with_schema(json!({ "source": source }));
            if let (Value::Object(m), Value::Object(r)) = (&mut v, report.to_json()) {
                m.extend(r);
            }
            Ok(render(&v))
        }
        Format::Csv => {
            let rel: Vec<String> = report
                .relations
                .iter()
                .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            Ok(format!(
                "source,status,witness,H,precision_bits,relations\n\"{}\",{},{},{},{},{}\n",
                source,
                report.status.name(),
                report.witness.name(),
                report.height_bound,
                report.precision_bits,
                rel.join(";")
            ))
        }
    }
}

fn default_method(g: usize) -> SamplerKind {
    match g {
        1 => SamplerKind::ExactG1,
        2 | 3 => SamplerKind::Rejection,
        _ => SamplerKind::Mcmc,
    }
}

fn cmd_rmt(a: &RmtArgs, format: Format) -> Outcome {
    if let Some(mode) = a.verify_minimum {
        let size = a.size.unwrap_or(a.g);
        let mode = match mode {
            MinimumArg::Symplectic => MinimumMode::Symplectic,
            MinimumArg::Unitary => MinimumMode::Unitary,
            MinimumArg::UnitaryK => MinimumMode::UnitaryK(a.k),
        };
        if format == Format::Csv {
            return usage("--verify-minimum only writes JSON");
        }
        let report = verify_minimum(size, mode, a.trials, a.seed)?;
        let v = with_schema(json!({
            "minimum": serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?,
        }));
        if !report.passed {
            return Err(Failure::Assertion(render(&v), report.message));
        }
        return Ok(render(&v));
    }
    if a.samples > MAX_SAMPLES {
        return Err(Error::Resource(format!("--samples above {MAX_SAMPLES}")).into());
    }
    let method = match &a.method {
        Some(s) => SamplerKind::parse(s)?,
        None => default_method(a.g),
    };
    if format == Format::Csv {
        let draws = sample_eigenangles(a.g, a.samples, a.seed, method)?;
        let mut s = (1..=a.g).map(|j| format!("theta_{j}")).collect::<Vec<_>>().join(",");
        s.push('\n');
        for d in draws {
            let row: Vec<String> = d.thetas().iter().map(|t| format!("{t:e}")).collect();
            s.push_str(&row.join(","));
            s.push('\n');
        }
        return Ok(s);
    }
    let mut estimates = Vec::with_capacity(a.beta.len());
    for &beta in &a.beta {
        let mc = prob_phi_leq(a.g, beta, a.samples, a.seed, method)?;
        let mut e = json!({ "beta": f64_value(beta), "estimate": mc.to_json() });
        if a.g == 1 {
            e["closed_form"] = f64_value(closed_form_prob_g1(beta));
        }
        if let Some(m) = a.quadrature {
            e["quadrature"] = quadrature_prob(a.g, beta, m)?.to_json();
        }
        estimates.push(e);
    }
    Ok(render(&with_schema(json!({
        "group": format!("USp({})", 2 * a.g),
        "g": a.g,
        "estimates": estimates,
    }))))
}

fn cmd_ensemble(a: &EnsembleArgs, format: Format) -> Outcome {
    if a.beta.is_empty() || a.beta.iter().any(|b| !(*b > 0.0)) {
        return usage("need at least one β, all positive");
    }
    if !a.convergence.is_empty() {
        if format == Format::Csv {
            return usage("--convergence only writes JSON");
        }
        let field = make_field_split(a.p, a.m, 1)?;
        let q = field.order_u64().ok_or_else(|| Error::Resource("q too large".into()))?;
        let start = Instant::now();
        let rows = convergence_table(q, a.g, &a.convergence, a.beta[0])?;
        eprintln!("convergence table in {:.2}s", start.elapsed().as_secs_f64());
        return Ok(render(&convergence_json(&rows, a.beta[0])));
    }
    let field = make_field_split(a.p, a.m, a.n)?;
    let spec = match a.samples {
        Some(k) => EnsembleSpec::sampled(&field, a.g, k, a.seed),
        None => EnsembleSpec::exhaustive(&field, a.g),
    };
    spec.validate()?;
    let cfg = ScanConfig {
        betas: a.beta.clone(),
        t_list: a.t.clone(),
        rmt_samples: a.rmt_samples,
        rmt_seed: a.rmt_seed,
        li_height: a.h,
        li_precision: a.precision,
        keep_curves: a.curves.is_some() || format == Format::Csv,
    };
    eprintln!("scanning genus-{} curves over {}", a.g, field.label());
    let start = Instant::now();
    let res = run_scan(&spec, &cfg)?;
    eprintln!(
        "{} curves, {} classes in {:.2}s",
        res.total,
        res.classes.len(),
        start.elapsed().as_secs_f64()
    );
    if let Some(path) = &a.curves {
        std::fs::write(path, res.per_curve_csv())
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    match format {
        Format::Json => Ok(render(&res.summary_json())),
        Format::Csv => Ok(res.per_curve_csv()),
    }
}

fn cmd_elliptic(a: &EllipticArgs, format: Format) -> Outcome {
    let (p, m) = prime_power(a.q)?;
    if a.a.is_none() && a.window.is_empty() {
        return usage("give --a, --window or both");
    }
    let mut v = with_schema(json!({ "q": a.q, "p": p, "m": m }));
    let mut csv = String::new();
    if let Some(t) = a.a {
        let verdict = elliptic_classify(a.q, p, m, t)?;
        let admissible = elliptic_trace_admissible(a.q, p, m, t)?;
        let b = b_elliptic(a.q, t).ok();
        v["a"] = json!(t);
        v["admissible"] = json!(admissible);
        v["verdict"] = json!(verdict.name());
        v["B_LI"] = b.map_or(Value::Null, f64_value);
        csv.push_str("q,a,admissible,verdict,B_LI\n");
        writeln!(
            csv,
            "{},{t},{admissible},{},{}",
            a.q,
            verdict.name(),
            b.map_or(String::new(), |x| format!("{x:e}"))
        )
        .unwrap();
    }
    if !a.window.is_empty() {
        let [lo, hi] = a.window[..] else {
            return usage("--window takes exactly two values lo,hi");
        };
        let traces = trace_window(a.q, p, lo, hi)?;
        v["window"] = json!([f64_value(lo), f64_value(hi)]);
        v["traces"] = json!(traces);
        if format == Format::Csv {
            csv.push_str("trace,B_LI\n");
            for t in &traces {
                writeln!(csv, "{t},{:e}", b_elliptic(a.q, *t)?).unwrap();
            }
        }
    }
    match format {
        Format::Json => Ok(render(&v)),
        Format::Csv => Ok(csv),
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Zeta(a) => cmd_zeta(a, cli.format),
        Command::Mertens(a) => cmd_mertens(a, cli.format),
        Command::Li(a) => cmd_li(a, cli.format),
        Command::Rmt(a) => cmd_rmt(a, cli.format),
        Command::Ensemble(a) => cmd_ensemble(a, cli.format),
        Command::Elliptic(a) => cmd_elliptic(a, cli.format),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k as usize).build_global() {
            eprintln!("error: cannot start {k} threads: {e}");
            return ExitCode::from(3);
        }
    }
    let (text, code) = match run(&cli) {
        Ok(text) => (Some(text), 0),
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            (None, exit_code(&e))
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            (None, 2)
        }
        Err(Failure::Assertion(text, msg)) => {
            eprintln!("assertion failed: {msg}");
            (Some(text), 4)
        }
    };
    if let Some(text) = text {
        if let Err(e) = emit(&cli, &text) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
