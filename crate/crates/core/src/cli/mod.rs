//! Command-line drivers. Each subcommand calls into the library, collects
//! named checks and renders a report as text, JSON or CSV.

mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::exactalg::{
    binomial, factorial, int_rat, lazard_generators, partition_count, GradedPoly, IntegerSet, Ring,
};
use crate::fgl::{self, alpha_monomials, by_name, lazard_basis, load_or_build, LazardLattice};
use crate::homsolver::{self, Mode, Seed};
use crate::pontryagin::{self, beta1_power, composition_sum, format_beta, structure_constants};

pub use report::{Check, Report, REPORT_VERSION};

/// Environment variable naming the directory that holds `fgl.json`.
pub const CACHE_ENV: &str = "FGLCALC_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolveMode {
    Graded,
    Ungraded,
    Rational,
}

#[derive(Debug, Parser)]
#[command(name = "fglcalc", version, about = "Exact formal group law computations")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check unitality, commutativity and associativity of a law.
    Axioms {
        #[arg(long)]
        fgl: String,
        #[arg(long, default_value_t = 8)]
        degree: u32,
    },
    /// Pontrjagin structure constants c_ij^k with i + j <= max.
    Table {
        #[arg(long)]
        fgl: String,
        #[arg(long, default_value_t = 10)]
        max: u32,
        /// Compare against the closed form of the law (additive, multiplicative, k-theory).
        #[arg(long)]
        verify_closed_form: bool,
    },
    /// Expand the n-fold product of β1.
    Beta1 {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "universal")]
        fgl: String,
    },
    /// Solve g(F(x,y)) = G(g(x), g(y)) degree by degree.
    Homsolve {
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value = "graded")]
        mode: SolveMode,
        /// Weight bound for ungraded mode (defaults to the degree).
        #[arg(long)]
        max_weight: Option<u32>,
        /// Parameter values to sweep: `-5..5` or `0,1,2`.
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        /// Raise the degree up to --degree until only 0 survives in the window.
        #[arg(long)]
        discover: bool,
        #[arg(long, default_value_t = homsolver::DEFAULT_WINDOW)]
        window: u64,
        /// Expected surviving parameters (`0`, `-1,0,1`, `-3..3` or `all`).
        #[arg(long, allow_hyphen_values = true)]
        expect_surviving: Option<String>,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Smallest n with n! not dividing λ^n.
    Divisibility {
        /// Values of λ: `6`, `-20..20` or `1,2,3`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 30)]
        bound: u32,
    },
    /// Compare both sides of the K-theory coaction identity.
    Coaction {
        #[arg(long, allow_hyphen_values = true, default_value = "0..2")]
        lambda: String,
    },
    /// Integer bases of the Lazard ring in degrees 2..2K.
    Lazard {
        #[arg(long)]
        max: u32,
        /// Path of the fgl.json cache (defaults to $FGLCALC_CACHE_DIR/fgl.json when set).
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CmdResult = Result<Report, Failure>;

/// `a..b` (inclusive), a comma list, or a single integer.
pub fn parse_values(text: &str) -> Result<Vec<i64>, String> {
    let text = text.trim();
    if let Some((a, b)) = text.split_once("..") {
        let a: i64 = a.trim().parse().map_err(|_| format!("bad range start in {text:?}"))?;
        let b: i64 = b.trim().parse().map_err(|_| format!("bad range end in {text:?}"))?;
        if a > b {
            return Err(format!("empty range {text:?}"));
        }
        return Ok((a..=b).collect());
    }
    text.split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| format!("bad integer {s:?}")))
        .collect()
}

fn law(name: &str, cutoff: u32) -> Result<fgl::FormalGroupLaw<GradedPoly>, Failure> {
    if !fgl::LAW_NAMES.contains(&name) {
        return Err(Failure::Usage(format!(
            "unknown law {name:?}; expected one of {}",
            fgl::LAW_NAMES.join(", ")
        )));
    }
    by_name(name, cutoff).map_err(Failure::from)
}

fn positive(name: &str, v: u32) -> Result<(), Failure> {
    if v == 0 {
        Err(Failure::Usage(format!("--{name} must be positive")))
    } else {
        Ok(())
    }
}

fn cache_path(explicit: &Option<PathBuf>) -> Option<PathBuf> {
    explicit
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(|d| PathBuf::from(d).join("fgl.json")))
}

fn lattice(max: u32, cache: &Option<PathBuf>) -> Result<LazardLattice, Failure> {
    match cache_path(cache) {
        Some(path) => Ok(load_or_build(&path, max)?.0),
        None => Ok(lazard_basis(max)?),
    }
}

fn cmd_axioms(name: &str, degree: u32) -> CmdResult {
    positive("degree", degree)?;
    let f = law(name, degree)?;
    let report = f.check_axioms()?;
    let mut r = Report::new("axioms");
    for c in &report.checks {
        let detail = match &c.offending {
            None => format!("holds through degree {degree}"),
            Some(o) => format!("fails at {} with residual {}", o.monomial, o.residual),
        };
        r.check(c.axiom.to_string(), c.passed, detail);
    }
    r.data = serde_json::to_value(&report).expect("serializable");
    r.line(format!("law: {} over {}", f.name(), f.ring()));
    r.line(format!("F(x,y) = {}", f.series().truncate(degree.min(3))));
    Ok(r)
}

fn cmd_table(name: &str, max: u32, verify: bool) -> CmdResult {
    positive("max", max)?;
    if verify && name == "universal" {
        return Err(Failure::Usage("the universal law has no closed form to verify against".into()));
    }
    let f = law(name, max)?;
    let table = structure_constants(&f, max)?;
    let mut r = Report::new("table");
    r.check(
        "symmetry c_ij^k = c_ji^k",
        table.symmetry_violation().is_none(),
        format!("{:?}", table.symmetry_violation()),
    );
    let unit_ok = (0..=max).all(|j| (0..=max).all(|k| {
        let c = table.get(0, j, k);
        if j == k { c.is_one() } else { c.is_zero() }
    }));
    r.check("β0 is the unit", unit_ok, String::new());
    let assoc_bound = max.min(7);
    let assoc = structure_constants(&f, assoc_bound)?.associativity_violation();
    r.check(
        format!("associativity for i+j+l <= {assoc_bound}"),
        assoc.is_none(),
        format!("{assoc:?}"),
    );
    let sum_bound = max.min(8);
    let mut bad = None;
    'outer: for i in 0..=sum_bound {
        for j in 0..=sum_bound - i {
            for k in 0..=i + j {
                if composition_sum(&f, i, j, k) != table.get(i, j, k) {
                    bad = Some((i, j, k));
                    break 'outer;
                }
            }
        }
    }
    r.check(
        format!("composition sum equals [x^i y^j]F^k for i+j <= {sum_bound}"),
        bad.is_none(),
        format!("{bad:?}"),
    );
    if verify {
        let mut bad = None;
        for i in 0..=max {
            for j in 0..=max - i {
                for k in 0..=i + j {
                    let expect = closed_form(name, i, j, k);
                    if table.get(i, j, k) != expect {
                        bad = Some((i, j, k));
                    }
                }
            }
        }
        r.check(
            format!("closed form of the {name} law for i+j <= {max}"),
            bad.is_none(),
            format!("{bad:?}"),
        );
    }
    r.data = table.to_json();
    r.csv = Some(table.to_csv());
    for i in 1..=max.min(3) {
        for j in i..=max.min(3) {
            if i + j <= max {
                let prod = table.product(
                    &pontryagin::PontryaginTable::<GradedPoly>::basis_vector(i),
                    &pontryagin::PontryaginTable::<GradedPoly>::basis_vector(j),
                )?;
                r.line(format!("β{i} • β{j} = {}", format_beta(&prod)));
            }
        }
    }
    Ok(r)
}

fn closed_form(name: &str, i: u32, j: u32, k: u32) -> GradedPoly {
    match name {
        "additive" => {
            if k == i + j {
                GradedPoly::constant(int_rat(binomial(i + j, i)))
            } else {
                GradedPoly::zero()
            }
        }
        "multiplicative" => {
            // t = 1 in the K-theory closed form
            let form = pontryagin::k_theory_closed_form(i, j);
            let c = form.coeffs.get(&k).cloned().unwrap_or_default();
            GradedPoly::constant(int_rat(c))
        }
        _ => pontryagin::k_theory_closed_form(i, j).to_beta().get(k as usize).cloned().unwrap_or_else(GradedPoly::zero),
    }
}

fn cmd_beta1(name: &str, n: u32) -> CmdResult {
    positive("n", n)?;
    let f = law(name, n)?;
    let table = structure_constants(&f, n)?;
    let mut r = Report::new("beta1");
    let mut rows = Vec::new();
    for m in 1..=n {
        let p = beta1_power(&table, m)?;
        let lead = p[m as usize].clone();
        let expect = GradedPoly::constant(int_rat(factorial(m)));
        r.check(format!("leading coefficient of β1^{m} is {m}!"), lead == expect, lead.to_string());
        r.line(format!("β1^{m} = {}", format_beta(&p)));
        rows.push(serde_json::json!({
            "n": m,
            "expansion": p.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        }));
    }
    r.data = serde_json::json!({ "fgl": name, "powers": rows });
    Ok(r)
}

#[allow(clippy::too_many_arguments)]
fn cmd_homsolve(
    src: &str,
    dst: &str,
    degree: u32,
    mode: SolveMode,
    max_weight: Option<u32>,
    params: &Option<String>,
    discover: bool,
    window: u64,
    expect: &Option<String>,
    cache: &Option<PathBuf>,
) -> CmdResult {
    positive("degree", degree)?;
    let source = law(src, degree)?;
    let target = law(dst, degree)?;
    let params = params
        .as_deref()
        .map(parse_values)
        .transpose()
        .map_err(Failure::Usage)?;
    let expected = match expect.as_deref() {
        None => None,
        Some("all") => Some(None),
        Some(text) => Some(Some(parse_values(text).map_err(Failure::Usage)?)),
    };
    let needs_lattice = mode != SolveMode::Rational;
    if needs_lattice && src != "universal" {
        return Err(Failure::Usage(format!(
            "{} mode needs the universal law as source",
            if mode == SolveMode::Graded { "graded" } else { "ungraded" }
        )));
    }
    let weight = max_weight.unwrap_or(degree);
    let lat = if needs_lattice {
        Some(lattice(degree.max(weight), cache)?)
    } else {
        None
    };
    let (mode_value, seed) = match (mode, &lat) {
        (SolveMode::Graded, Some(l)) => (Mode::Graded(l), Seed::lazard(l)),
        (SolveMode::Ungraded, Some(l)) => (
            Mode::BoundedUngraded {
                lattice: l,
                max_weight: weight,
            },
            Seed::scalar(),
        ),
        _ => (Mode::Rational, Seed::scalar()),
    };

    let mut r = Report::new("homsolve");
    let (solution, n_star) = if discover {
        let iso = homsolver::isolation_degree(&source, &target, degree, mode_value, &seed, window)?;
        for (d, s) in &iso.survivors_by_degree {
            r.line(format!("degree {d}: survivors with |λ| <= {window}: {}", s.len()));
        }
        match iso.n_star {
            Some(n) => r.line(format!("isolation degree N* = {n}")),
            None => r.line(format!("no isolation degree up to {degree}")),
        }
        r.check(
            format!("only λ = 0 survives within |λ| <= {window} at some degree <= {degree}"),
            iso.n_star.is_some(),
            format!("{:?}", iso.n_star),
        );
        let sym: Vec<i64> = iso
            .solution
            .surviving
            .within(window)
            .iter()
            .map(|n| i64::try_from(n).expect("window fits"))
            .collect();
        r.check(
            "fixed-value sweep agrees with the symbolic set",
            sym == iso.search_survivors,
            format!("{:?}", iso.search_survivors),
        );
        (iso.solution, iso.n_star)
    } else {
        (homsolver::solve(&source, &target, degree, mode_value, &seed)?, None)
    };
    r.check(
        format!("g(F(x,y)) - G(g(x),g(y)) vanishes through degree {}", solution.degree),
        solution.residual_zero,
        String::new(),
    );
    r.line(format!("mode: {}", solution.mode));
    if mode == SolveMode::Ungraded {
        r.line(format!(
            "components of weight above {} are unchecked; this truncation is weaker evidence than graded mode",
            2 * weight
        ));
    }
    for (k, c) in solution.coefficients.iter().enumerate().take(4) {
        r.line(format!("g_{} = {}", k + 1, c));
    }
    r.line(format!("surviving λ: {}", solution.surviving));

    let swept = match &params {
        Some(values) => {
            let got = homsolver::param_search(&source, &target, solution.degree, mode_value, &seed, values)?;
            let sym: Vec<i64> = values
                .iter()
                .copied()
                .filter(|v| solution.surviving.contains(&(*v).into()))
                .collect();
            r.check("parameter sweep agrees with the symbolic set", got == sym, format!("{got:?}"));
            r.line(format!("sweep survivors: {got:?}"));
            Some(got)
        }
        None => None,
    };
    if let Some(exp) = &expected {
        let (passed, detail) = match (exp, &swept) {
            (None, _) => (solution.surviving == IntegerSet::All, solution.surviving.to_string()),
            (Some(values), Some(got)) => (values == got, format!("{got:?}")),
            (Some(values), None) => {
                let inside: Vec<i64> = solution
                    .surviving
                    .within(window)
                    .iter()
                    .map(|n| i64::try_from(n).expect("window fits"))
                    .collect();
                (*values == inside, format!("{inside:?}"))
            }
        };
        r.check("surviving set matches --expect-surviving", passed, detail);
    }
    let mut data = solution.to_json(window);
    if let Some(n) = n_star {
        data["n_star"] = n.into();
    }
    if let Some(got) = swept {
        data["sweep"] = got.into();
    }
    r.data = data;
    Ok(r)
}

fn cmd_divisibility(lambda: &str, bound: u32) -> CmdResult {
    if bound < 2 {
        return Err(Failure::Usage("--bound must be at least 2".into()));
    }
    let values = parse_values(lambda).map_err(Failure::Usage)?;
    let mut r = Report::new("divisibility");
    let mut rows = Vec::new();
    for l in values {
        let n = homsolver::factorial_divisibility(l, bound);
        let p = homsolver::prime_witness(l);
        match (n, p) {
            (Some(n), Some(p)) => {
                let minimal = (2..n).all(|k| !homsolver::witness_holds(l, k));
                r.check(
                    format!("λ = {l}: {n}! does not divide λ^{n}, minimal"),
                    homsolver::witness_holds(l, n) && minimal,
                    String::new(),
                );
                r.check(
                    format!("λ = {l}: prime witness {p}"),
                    homsolver::witness_holds(l, p as u32),
                    String::new(),
                );
                r.line(format!("λ = {l}: n = {n}, prime witness p = {p}"));
            }
            (None, None) => r.line(format!("λ = {l}: divisible for every n")),
            (None, Some(p)) => {
                r.line(format!("λ = {l}: no witness up to {bound}, prime witness p = {p}"));
            }
            (Some(_), None) => unreachable!("λ = 0 has no witness"),
        }
        rows.push(serde_json::json!({ "lambda": l, "n": n, "prime_witness": p }));
    }
    r.data = serde_json::json!({ "bound": bound, "results": rows });
    Ok(r)
}

fn cmd_coaction(lambda: &str) -> CmdResult {
    let values = parse_values(lambda).map_err(Failure::Usage)?;
    let mut r = Report::new("coaction");
    let inst = homsolver::CoactionInstance::new();
    r.line(format!("(id ⊗ g)ψ(t²Y₂) = {}", inst.lhs));
    r.line(format!("ψ(g(t²Y₂)) = {}", inst.rhs));
    let mut rows = Vec::new();
    for l in values {
        let c = homsolver::coaction_check(l);
        r.line(format!(
            "λ₂ = {l}: {} (difference {})",
            if c.equal { "equal" } else { "unequal" },
            c.difference
        ));
        rows.push(serde_json::json!({
            "lambda": l,
            "lhs": c.lhs.to_string(),
            "rhs": c.rhs.to_string(),
            "equal": c.equal,
            "difference": c.difference.to_string(),
        }));
    }
    let set = homsolver::coaction_solve()?;
    r.line(format!("surviving λ₂ set: {set}"));
    r.check("both sides agree only for λ₂ = 0", set == IntegerSet::singleton(0), set.to_string());
    r.data = serde_json::json!({ "checks": rows, "surviving": set.to_string() });
    Ok(r)
}

fn cmd_lazard(max: u32, cache: &Option<PathBuf>) -> CmdResult {
    positive("max", max)?;
    let l = lattice(max, cache)?;
    let mut r = Report::new("lazard");
    let mut ranks = Vec::new();
    for k in 1..=max {
        let rank = l.rank(k)?;
        r.check(
            format!("rank L_{} = partitions({k})", 2 * k),
            rank as u64 == partition_count(k),
            rank.to_string(),
        );
        ranks.push(rank);
    }
    let alpha_bound = max.min(6);
    let univ = fgl::universal_fgl(alpha_bound + 1)?;
    let mut all_in = true;
    for k in 1..=alpha_bound {
        for p in alpha_monomials(&univ, k) {
            all_in &= l.contains(k, &p)?;
        }
    }
    r.check(
        format!("every α-monomial of weight <= {} lies in the lattice", 2 * alpha_bound),
        all_in,
        String::new(),
    );
    let gens = lazard_generators(max as usize);
    let m1 = GradedPoly::generator(&gens, 0);
    r.check(
        "m1 is not in L_2",
        !l.contains(1, &m1)?,
        String::new(),
    );
    for k in 1..=max.min(4) {
        let basis: Vec<String> = l.basis_polys(k)?.iter().map(|p| p.to_string()).collect();
        r.line(format!("L_{}: {}", 2 * k, basis.join(", ")));
    }
    let degrees: Vec<_> = l
        .degrees()
        .iter()
        .map(|d| {
            serde_json::json!({
                "k": d.k,
                "rank": d.rank(),
                "denominator": d.denominator.to_string(),
                "basis": l.basis_polys(d.k).expect("in range").iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    r.data = serde_json::json!({ "max": max, "ranks": ranks, "degrees": degrees });
    Ok(r)
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Axioms { fgl, degree } => cmd_axioms(fgl, *degree),
        Command::Table {
            fgl,
            max,
            verify_closed_form,
        } => cmd_table(fgl, *max, *verify_closed_form),
        Command::Beta1 { n, fgl } => cmd_beta1(fgl, *n),
        Command::Homsolve {
            src,
            dst,
            degree,
            mode,
            max_weight,
            params,
            discover,
            window,
            expect_surviving,
            cache,
        } => cmd_homsolve(
            src,
            dst,
            *degree,
            *mode,
            *max_weight,
            params,
            *discover,
            *window,
            expect_surviving,
            cache,
        ),
        Command::Divisibility { lambda, bound } => cmd_divisibility(lambda, *bound),
        Command::Coaction { lambda } => cmd_coaction(lambda),
        Command::Lazard { max, cache } => cmd_lazard(*max, cache),
    }
}

/// Runs the CLI on `args` (including the program name), writing the report to
/// `out` (or `--output`) and diagnostics to `err`. Returns the exit code:
/// 0 when every check passes, 1 on a failed check or runtime error, 2 on usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let report = match dispatch(&cli) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 1;
        }
    };
    let rendered = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, rendered.as_bytes()),
        None => out.write_all(rendered.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 1;
    }
    for c in report.checks.iter().filter(|c| !c.passed) {
        let _ = writeln!(err, "check failed: {} {}", c.name, c.detail);
    }
    if report.passed() {
        0
    } else {
        1
    }
}
