//! Command-line front end. Every command produces a [`RunReport`], printed
//! either as a text table or as JSON; the process exit status is zero only
//! when the command succeeded and every check passed.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::classify::{finiteness_report, group_order, GroupOrder};
use crate::closure::{self, closure_matrix, emit_diagram, ClosureError, DEFAULT_PAIR_LIMIT};
use crate::diagram::{parse_file, CoxeterDiagram, DiagramError, DiagramFile, Subset};
use crate::fixtures;
use crate::growth::{self, integer_taylor, GrowthError};
use crate::nerve::{self, NerveError};
use crate::numeric::{self, NumericError};
use crate::series::{MultiPoly, RationalFn, SeriesError, UniPoly};
use crate::words::{parse_word, WordEngine, WordsError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Words(#[from] WordsError),
    #[error(transparent)]
    Growth(#[from] GrowthError),
    #[error(transparent)]
    Closure(#[from] ClosureError),
    #[error(transparent)]
    Nerve(#[from] NerveError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "coxkit", version, about = "Normal closures of parabolic subgroups of Coxeter groups")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a diagram file and check its invariants.
    Validate { file: PathBuf },
    /// Classify the finite components of a diagram or a subset of it.
    Classify(ClassifyArgs),
    /// Normal form of a word.
    Reduce(ReduceArgs),
    /// Growth series of the whole group, or of the closure of T.
    Growth(GrowthArgs),
    /// Generators and Coxeter matrix of the closure of T.
    Closure(ClosureArgs),
    /// f-polynomial of the closure's nerve or of a link in it.
    NerveF(NerveArgs),
    /// Real-root count and complex roots of a polynomial.
    Roots(RootsArgs),
    /// Run the bundled ten-generator example and check every value.
    Example(ExampleArgs),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    pub file: PathBuf,
    /// Comma-separated generator names to restrict to.
    #[arg(long, value_delimiter = ',')]
    pub subset: Option<Vec<String>>,
    /// Restrict to the complement of T.
    #[arg(long, conflicts_with = "subset")]
    pub complement: bool,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    pub file: PathBuf,
    /// Space-separated generator names.
    pub word: String,
    /// Force braid-move reduction instead of the root-lattice path.
    #[arg(long)]
    pub tits: bool,
}

#[derive(Debug, Args)]
pub struct GrowthArgs {
    pub file: PathBuf,
    /// Print the first N+1 coefficients of the ordinary growth series.
    #[arg(long)]
    pub taylor: Option<usize>,
    /// Series of the normal closure of T instead of the whole group.
    #[arg(long)]
    pub closure: bool,
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    pub file: PathBuf,
    /// Write the closure's diagram to this path.
    #[arg(long)]
    pub emit_diagram: Option<PathBuf>,
    /// Include the Coxeter matrix in the report.
    #[arg(long)]
    pub matrix: bool,
    /// Largest number of generator pairs to reduce.
    #[arg(long, default_value_t = DEFAULT_PAIR_LIMIT)]
    pub pair_limit: usize,
}

#[derive(Debug, Args)]
pub struct NerveArgs {
    pub file: PathBuf,
    /// One variable for all of T.
    #[arg(long)]
    pub diagonal: bool,
    /// Link of a simplex given as `t:k` items, e.g. `t1:1,t2:3`.
    #[arg(long, conflicts_with = "faces")]
    pub link: Option<String>,
    /// Link of the simplex named by the file's `face` lines.
    #[arg(long)]
    pub faces: bool,
    /// Also compute the clique sum over the closure generators.
    #[arg(long)]
    pub brute_force: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct RootsArgs {
    /// JSON polynomial `{"vars": [..], "terms": [{"e": [..], "c": ".."}]}` in one variable.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Coefficients, constant term first.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum RouteChoice {
    #[default]
    Both,
    SerreOnly,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    #[arg(long, value_enum, default_value_t = RouteChoice::Both)]
    pub route: RouteChoice,
    /// Use this diagram file instead of the bundled one.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &str, expected: impl ToString, actual: impl ToString, pass: bool) -> Check {
        Check {
            name: name.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        }
    }

    pub fn equal(name: &str, expected: impl ToString, actual: impl ToString) -> Check {
        let (e, a) = (expected.to_string(), actual.to_string());
        let pass = e == a;
        Check {
            name: name.to_string(),
            expected: e,
            actual: a,
            pass,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub fingerprint: String,
    pub results: Value,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl RunReport {
    fn new(command: &str, d: Option<&CoxeterDiagram>) -> RunReport {
        RunReport {
            command: command.to_string(),
            fingerprint: d.map(|d| d.fingerprint()).unwrap_or_default(),
            results: json!({}),
            checks: Vec::new(),
            lines: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = self.lines.join("\n");
        if !self.checks.is_empty() {
            if !out.is_empty() {
                out.push('\n');
            }
            let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &self.checks {
                let mark = if c.pass { "PASS" } else { "FAIL" };
                out.push_str(&format!("{mark}  {:<width$}  {}", c.name, c.actual));
                if !c.pass {
                    out.push_str(&format!("  (expected {})", c.expected));
                }
                out.push('\n');
            }
            let failed = self.checks.iter().filter(|c| !c.pass).count();
            out.push_str(&format!("{} checks, {} failed", self.checks.len(), failed));
        }
        out
    }

    fn set(&mut self, key: &str, v: Value) {
        self.results
            .as_object_mut()
            .expect("results is an object")
            .insert(key.to_string(), v);
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(path: &PathBuf) -> Result<DiagramFile, CliError> {
    Ok(parse_file(&read(path)?)?)
}

fn names(d: &CoxeterDiagram, a: Subset) -> Vec<String> {
    d.subset_names(a).into_iter().map(String::from).collect()
}

fn int_strings<I: IntoIterator<Item = BigInt>>(it: I) -> Vec<String> {
    it.into_iter().map(|c| c.to_string()).collect()
}

pub fn cmd_validate(text: &str) -> Result<RunReport, CliError> {
    let file = parse_file(text)?;
    let d = &file.diagram;
    let mut r = RunReport::new("validate", Some(d));
    let phi = d.partition();
    let classes: serde_json::Map<String, Value> = phi
        .vars()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), json!(names(d, phi.members(i)))))
        .collect();
    r.set("generators", json!(d.names()));
    r.set("t", json!(d.t_set().map(|t| names(d, t))));
    r.set("partition", Value::Object(classes));
    r.set("right_angled", json!(d.is_right_angled()));
    r.lines.push(format!("{} generators, fingerprint {}", d.rank(), d.fingerprint()));
    if let Some(t) = d.t_set() {
        r.lines.push(format!("T = {{{}}}", names(d, t).join(", ")));
        let hyp = closure::check_hypothesis(d, t);
        r.set(
            "hypothesis",
            json!(match &hyp {
                Ok(()) => "ok".to_string(),
                Err(v) => v.to_string(),
            }),
        );
        match hyp {
            Ok(()) => r.lines.push("T-labels even or infinite: closure is a kernel".into()),
            Err(v) => r.lines.push(format!("warning: {v}")),
        }
    }
    if !file.faces.is_empty() {
        r.set("faces", json!(file.faces));
    }
    r.lines.push("valid".into());
    Ok(r)
}

pub fn cmd_classify(text: &str, subset: Option<&[String]>, complement: bool) -> Result<RunReport, CliError> {
    let d = parse_file(text)?.diagram;
    let a = match (subset, complement) {
        (Some(names), _) => {
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            d.subset_of(&refs)
                .ok_or_else(|| CliError::Usage(format!("unknown generator in {}", names.join(","))))?
        }
        (None, true) => d.all().difference(d.t_set().unwrap_or_default()),
        (None, false) => d.all(),
    };
    let mut r = RunReport::new("classify", Some(&d));
    let report = finiteness_report(&d, a);
    let order = group_order(&d, a);
    r.results = serde_json::to_value(&report).expect("serializable");
    r.set(
        "order",
        json!(match &order {
            GroupOrder::Finite(n) => n.to_string(),
            GroupOrder::Infinite => "infinite".to_string(),
        }),
    );
    let line = match order {
        GroupOrder::Finite(n) => {
            let types: Vec<String> = report
                .components
                .iter()
                .map(|c| c.kind.map(|k| k.to_string()).unwrap_or_default())
                .collect();
            let shape = if types.is_empty() { "trivial".to_string() } else { types.join(" x ") };
            format!("{shape}, order {n}")
        }
        GroupOrder::Infinite => {
            let bad: Vec<String> = report
                .components
                .iter()
                .filter(|c| c.kind.is_none())
                .map(|c| format!("{{{}}}", c.generators.join(", ")))
                .collect();
            format!("infinite; non-finite components {}", bad.join(" "))
        }
    };
    r.lines.push(line);
    Ok(r)
}

pub fn cmd_reduce(text: &str, word: &str, tits: bool) -> Result<RunReport, CliError> {
    let d = parse_file(text)?.diagram;
    let engine = if tits { WordEngine::tits(&d) } else { WordEngine::new(&d) };
    let w = engine.reduce(&parse_word(&d, word)?);
    let rl = engine.refined_length(&w, &d.partition())?;
    let mut r = RunReport::new("reduce", Some(&d));
    r.set("normal_form", json!(w.names(&d)));
    r.set("length", json!(w.len()));
    r.set("support", json!(names(&d, w.support())));
    let refined: serde_json::Map<String, Value> = rl.counts.iter().map(|(v, c)| (v.clone(), json!(c))).collect();
    r.set("refined_length", Value::Object(refined));
    r.lines.push(format!("{}  (length {})", w.display(&d), w.len()));
    Ok(r)
}

fn ordinary_taylor(series: &RationalFn, n: usize) -> Result<Vec<BigInt>, CliError> {
    let s = series.diagonal("x");
    Ok(integer_taylor(&s, "x", n)?)
}

pub fn cmd_growth(text: &str, taylor: Option<usize>, closure: bool) -> Result<RunReport, CliError> {
    let d = parse_file(text)?.diagram;
    let mut r = RunReport::new("growth", Some(&d));
    let series = if closure {
        let c = growth::closure_growth_by_specialization(&d)?;
        r.set("route", json!(c.closure.route));
        r.set("series", serde_json::to_value(&c.closure.series).unwrap());
        r.set("parabolic", serde_json::to_value(&c.parabolic).unwrap());
        r.set("complement_order", json!(c.complement_order.to_string()));
        r.lines.push(format!("closure growth: {}", c.closure.series));
        r.lines.push(format!("parabolic W_T: {}", c.parabolic));
        c.closure.series
    } else {
        let g = growth::growth(&d, d.all(), &d.partition())?;
        r.set("route", json!(g.route));
        r.set("series", serde_json::to_value(&g.series).unwrap());
        r.lines.push(format!("growth ({}): {}", serde_json::to_value(g.route).unwrap().as_str().unwrap(), g.series));
        g.series
    };
    if let Some(n) = taylor {
        let coeffs = ordinary_taylor(&series, n)?;
        r.lines.push(format!("taylor: {}", int_strings(coeffs.clone()).join(",")));
        r.set("taylor", json!(int_strings(coeffs)));
    }
    Ok(r)
}

pub fn cmd_closure(text: &str, matrix: bool, pair_limit: usize, emit: Option<&PathBuf>) -> Result<RunReport, CliError> {
    let d = parse_file(text)?.diagram;
    let t = d.t_set().ok_or_else(|| CliError::Usage("diagram declares no T".into()))?;
    let limit = if matrix || emit.is_some() { pair_limit } else { 0 };
    let p = closure_matrix(&d, t, limit)?;
    let mut r = RunReport::new("closure", Some(&d));
    let gen_names: Vec<String> = p.generators.iter().map(|g| g.name(&d)).collect();
    r.set("generator_count", json!(p.generators.len()));
    let per_base: serde_json::Map<String, Value> = t
        .iter()
        .map(|b| {
            let n = p.generators.iter().filter(|g| g.base == b).count();
            (d.name(b).to_string(), json!(n))
        })
        .collect();
    r.lines.push(format!(
        "{} generators ({}); right-angled: {}",
        p.generators.len(),
        per_base
            .iter()
            .map(|(k, v)| format!("{k}: {v}"))
            .collect::<Vec<_>>()
            .join(", "),
        p.right_angled
    ));
    r.set("per_base", Value::Object(per_base));
    r.set("right_angled", json!(p.right_angled));
    if matrix {
        match &p.matrix {
            Some(m) => {
                let n = p.generators.len();
                let rows: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| m[i * n + j].to_string()).collect()).collect();
                for (name, row) in gen_names.iter().zip(&rows) {
                    r.lines.push(format!("{name}: {}", row.join(" ")));
                }
                r.set("matrix", json!(rows));
            }
            None => {
                return Err(ClosureError::TooManyPairs {
                    pairs: p.generators.len() * (p.generators.len() - 1) / 2,
                    limit: pair_limit,
                }
                .into())
            }
        }
    }
    r.set("generators", json!(gen_names));
    if let Some(path) = emit {
        let out = emit_diagram(&d, &p).ok_or_else(|| {
            CliError::Usage(format!("closure matrix unavailable or rank above {}", crate::diagram::MAX_RANK))
        })?;
        std::fs::write(path, out.to_dsl()).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        r.lines.push(format!("wrote {}", path.display()));
    }
    Ok(r)
}

pub fn cmd_nerve_f(text: &str, diagonal: bool, link: Option<&str>, faces: bool, brute: bool) -> Result<RunReport, CliError> {
    let file = parse_file(text)?;
    let d = &file.diagram;
    let t = d.t_set().ok_or_else(|| CliError::Usage("diagram declares no T".into()))?;
    let phi = nerve::per_generator_partition(d, t);
    let sigma = match (link, faces) {
        (Some(spec), _) => Some(nerve::parse_link_spec(d, t, spec)?),
        (None, true) => Some(nerve::family_from_faces(d, t, &file.faces)?),
        _ => None,
    };
    let mut f = match &sigma {
        Some(s) => nerve::f_link(d, t, &phi, s)?,
        None => nerve::f_closure(d, t, &phi)?,
    };
    if diagonal {
        f = f.diagonal("t");
    }
    let mut r = RunReport::new("nerve-f", Some(d));
    if let Some(s) = &sigma {
        r.set("link_of", serde_json::to_value(s.describe(d)).unwrap());
    }
    r.set("f", serde_json::to_value(&f.poly).unwrap());
    r.lines.push(format!("f = {}", f.poly));
    if f.poly.used_vars().len() <= 1 {
        let coeffs = f.coefficients();
        r.lines.push(format!("coefficients: {}", int_strings(coeffs.clone()).join(",")));
        r.set("coefficients", json!(int_strings(coeffs)));
    }
    if brute {
        let b = nerve::brute_force_nerve(d, t, &phi, nerve::DEFAULT_NERVE_CAP)?;
        let b = if diagonal { b.diagonal("t") } else { b };
        r.checks.push(Check::equal("clique sum agrees", &f.poly, &b.poly));
    }
    Ok(r)
}

pub fn cmd_roots(p: &UniPoly) -> Result<RunReport, CliError> {
    let report = numeric::approx_roots(p)?;
    let mut r = RunReport::new("roots", None);
    r.results = serde_json::to_value(&report).unwrap();
    r.lines.push(format!(
        "degree {}, {} distinct real roots (exact), relative residual {:.1e}",
        p.degree(),
        report.real_count,
        report.residual
    ));
    for z in &report.roots {
        r.lines.push(if z.is_real() {
            format!("  {:.6e}", z.re)
        } else {
            format!("  {:.6e} {:+.6e}i", z.re, z.im)
        });
    }
    r.checks.push(Check::new(
        "residual",
        format!("< {:e}", numeric::RESIDUAL_BOUND),
        format!("{:.1e}", report.residual),
        report.residual < numeric::RESIDUAL_BOUND,
    ));
    Ok(r)
}

/// A polynomial from a JSON file in the series encoding.
pub fn read_poly_file(text: &str) -> Result<UniPoly, CliError> {
    let p: MultiPoly =
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad polynomial JSON: {e}")))?;
    let vars = p.used_vars();
    match vars.len() {
        0 => Ok(UniPoly::new(vec![p.constant_term()])),
        1 => Ok(p.to_uni(&vars[0])?),
        _ => Err(SeriesError::NotUnivariate(vars.join(",")).into()),
    }
}

fn poly_string(coeffs: &[BigInt]) -> String {
    int_strings(coeffs.iter().cloned()).join(",")
}

fn uni_ints(p: &UniPoly) -> Vec<BigInt> {
    p.0.iter().map(|c| c.to_integer()).collect()
}

/// Runs every check on the bundled example (or `text`, when given).
pub fn cmd_example(text: Option<&str>, route: RouteChoice) -> Result<RunReport, CliError> {
    let text = text.unwrap_or(fixtures::EXAMPLE_87);
    let d = parse_file(text)?.diagram;
    let mut r = RunReport::new("example", Some(&d));
    let sub = |names: &[&str]| d.subset_of(names).ok_or_else(|| CliError::Usage(format!("missing {names:?}")));
    let t = d.t_set().ok_or_else(|| CliError::Usage("diagram declares no T".into()))?;
    let rest = d.all().difference(t);

    for (label, a, expect) in [
        ("order S-T (E8)", rest, fixtures::ORDER_E8),
        ("order S-T-s8 (E7)", rest.difference(sub(&["s8"])?), fixtures::ORDER_E7),
        ("order S-T-s2 (D7)", rest.difference(sub(&["s2"])?), fixtures::ORDER_D7),
    ] {
        let got = match group_order(&d, a) {
            GroupOrder::Finite(n) => n.to_string(),
            GroupOrder::Infinite => "infinite".into(),
        };
        r.checks.push(Check::equal(label, expect, got));
    }

    r.checks.push(Check::equal("closure right-angled", true, closure::is_right_angled_closure(&d, t)));
    let families = nerve::enumerate_sigma(&d, t)?;
    r.checks.push(Check::equal("families", fixtures::SIGMA_FAMILIES, families.len()));

    let phi = nerve::per_generator_partition(&d, t);
    let f2 = nerve::f_closure(&d, t, &phi)?;
    let expected2 = expected_two_variable();
    r.checks.push(Check::equal("f(t1, t2)", &expected2, &f2.poly));
    r.set("f_two_variable", serde_json::to_value(&f2.poly).unwrap());

    let fd = nerve::f_closure(&d, t, &d.partition())?;
    let diag = fd.coefficients();
    let diag_expect: Vec<BigInt> = fixtures::F_DIAGONAL.iter().map(|&c| BigInt::from(c)).collect();
    r.checks.push(Check::equal("f(t, t)", poly_string(&diag_expect), poly_string(&diag)));
    r.checks.push(Check::equal(
        "diagonal of f(t1, t2)",
        poly_string(&diag_expect),
        poly_string(&f2.diagonal("t").coefficients()),
    ));
    r.set("f_diagonal", json!(int_strings(diag.clone())));
    let generators: BigInt = diag.get(1).cloned().unwrap_or_default();
    r.checks.push(Check::equal(
        "closure generators",
        fixtures::GENERATORS_T1 + fixtures::GENERATORS_T2,
        generators,
    ));

    let recip_expect = expected_reciprocal_growth();
    let special = growth::closure_growth_by_specialization(&d)?;
    let recip_special = special.closure.series.recip()?;
    r.checks.push(Check::equal(
        "1/growth by specialization",
        format_rational(&recip_expect),
        format_rational(&recip_special),
    ));
    let wt = RationalFn::from_poly(MultiPoly::univariate_int("x", &[1, 2, 1]));
    r.checks.push(Check::equal("parabolic growth W_T", format_rational(&wt), format_rational(&special.parabolic)));
    r.set("reciprocal_growth", serde_json::to_value(&recip_special).unwrap());
    if route == RouteChoice::Both {
        let via_f = growth::growth_from_f(&fd.poly)?;
        let recip_f = via_f.series.recip()?;
        r.checks.push(Check::equal(
            "1/growth from f",
            format_rational(&recip_expect),
            format_rational(&recip_f),
        ));
        r.checks.push(Check::new(
            "routes agree",
            "equal",
            if recip_f == recip_special { "equal" } else { "different" },
            recip_f == recip_special,
        ));
    }

    let poles = numeric::poles_of_growth(&special.closure.series)?;
    let pole_text: Vec<String> = poles.roots.iter().map(format_root).collect();
    let expect_text: Vec<String> = fixtures::POLES
        .iter()
        .map(|&(re, im)| format_root(&numeric::Root { re, im }))
        .collect();
    r.checks.push(Check::new(
        "poles (2 significant digits)",
        expect_text.join(" "),
        pole_text.join(" "),
        numeric::matches_two_digits(&poles, &fixtures::POLES),
    ));
    r.set("poles", serde_json::to_value(&poles).unwrap());

    let fd_uni = fd.to_uni();
    let real = numeric::sturm_real_count(&fd_uni, None)?;
    r.checks.push(Check::equal("distinct real roots of f(t, t)", fixtures::F_DIAGONAL_REAL_ROOTS, real));
    r.checks.push(Check::new(
        "non-real roots exist",
        "> 0",
        fd_uni.degree() - real,
        fd_uni.degree() > real,
    ));

    let link_k = nerve::parse_link_spec(&d, t, fixtures::LINK_K_SPEC)?;
    let fk = nerve::f_link(&d, t, &d.partition(), &link_k)?;
    let fk_expect: Vec<BigInt> = fixtures::F_LINK_K.iter().map(|&c| BigInt::from(c)).collect();
    r.checks.push(Check::equal("f_K = (1+2t)^4", poly_string(&fk_expect), poly_string(&fk.coefficients())));
    let link_l = nerve::parse_link_spec(&d, t, fixtures::LINK_L_SPEC)?;
    let fl = nerve::f_link(&d, t, &d.partition(), &link_l)?;
    let half = BigRational::new((-1).into(), 2.into());
    let value = fl.eval_diagonal(&half);
    r.checks.push(Check::new("f_L(-1/2) != 0", "nonzero", &value, value != BigRational::from_integer(0.into())));
    r.set("f_link_l", json!(int_strings(fl.coefficients())));

    let euler = fd.eval_diagonal(&BigRational::from_integer((-1).into()));
    r.checks.push(Check::equal("f(-1) (7-sphere)", 1, euler));
    Ok(r)
}

fn format_root(z: &numeric::Root) -> String {
    if z.im == 0.0 {
        format!("{:.1e}", z.re)
    } else {
        format!("{:.1e}{:+.1e}i", z.re, z.im)
    }
}

/// `Σ c t1^a t2^b` from the fixture table.
pub fn expected_two_variable() -> MultiPoly {
    let vars = ["t1", "t2"];
    MultiPoly::from_terms(
        &vars,
        fixtures::F_TWO_VARIABLE
            .iter()
            .map(|&(a, b, c)| (vec![a, b], BigRational::from_integer(c.into()))),
    )
    .unwrap()
}

/// The fixture reciprocal growth function in `x`.
pub fn expected_reciprocal_growth() -> RationalFn {
    let num = MultiPoly::univariate_int("x", &fixtures::RECIPROCAL_GROWTH_NUMERATOR);
    let den = MultiPoly::univariate_int("x", &[1, 1]).pow(fixtures::RECIPROCAL_GROWTH_DENOMINATOR_POWER);
    RationalFn::new(num, den).expect("nonzero denominator")
}

/// `num_coeffs / den_coeffs` in the normalized form.
pub fn format_rational(r: &RationalFn) -> String {
    let side = |p: &MultiPoly| match p.used_vars().first() {
        Some(v) => poly_string(&uni_ints(&p.to_uni(v).unwrap())),
        None => p.constant_term().to_string(),
    };
    format!("({}) / ({})", side(r.num()), side(r.den()))
}

/// Dispatches a parsed command line.
pub fn run(cli: &Cli) -> Result<RunReport, CliError> {
    match &cli.command {
        Command::Validate { file } => cmd_validate(&read(file)?),
        Command::Classify(a) => cmd_classify(&read(&a.file)?, a.subset.as_deref(), a.complement),
        Command::Reduce(a) => cmd_reduce(&read(&a.file)?, &a.word, a.tits),
        Command::Growth(a) => cmd_growth(&read(&a.file)?, a.taylor, a.closure),
        Command::Closure(a) => cmd_closure(&read(&a.file)?, a.matrix, a.pair_limit, a.emit_diagram.as_ref()),
        Command::NerveF(a) => cmd_nerve_f(&read(&a.file)?, a.diagonal, a.link.as_deref(), a.faces, a.brute_force),
        Command::Roots(a) => {
            let p = match (&a.file, &a.poly) {
                (Some(f), _) => read_poly_file(&read(f)?)?,
                (None, Some(s)) => numeric::parse_coefficients(s)?,
                (None, None) => return Err(CliError::Usage("give --file or --poly".into())),
            };
            cmd_roots(&p)
        }
        Command::Example(a) => match &a.file {
            Some(f) => cmd_example(Some(&read(f)?), a.route),
            None => cmd_example(None, a.route),
        },
    }
}

/// Keeps `load` reachable for callers holding a path.
pub fn load_diagram(path: &PathBuf) -> Result<DiagramFile, CliError> {
    load(path)
}
