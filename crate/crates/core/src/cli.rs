//! Batch front end: one subcommand per advice algorithm, file inputs, a
//! payload on stdout and an outcome line for stderr.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::advice::{Integrality, IntermedAdvice, Parity};
use crate::basics::{distinct_members, find_class, floor_with_intnot, floor_with_parity, is_valid_prefix, leading_digits_with_bit};
use crate::error::{Error, Outcome, Result};
use crate::exact::RatMatrix;
use crate::geometry::{extchull_enumerate, extchull_with_count};
use crate::io;
use crate::linalg::{diag_with_count, eigenvalues_with_multiplicity, evec_with_logmult, lineq_with_rank, min_mult_log_upper, rank_with_upper};
use crate::name::{Fuel, MatrixName, Precision, RealName, VectorName};
use crate::rational::{int, parse_rational, ratio, Rational};
use crate::rootfind::{hovering_pair, ivt_with_advice, piecewise_linear_funcname};
use crate::search::BoundStream;
use crate::witness;

const ADVICE_HELP: &str = "\
Advice syntax by subcommand:
  floor       parity:even|odd  or  int:yes|no
  digits      bit:<n>:<0|1>
  classes     size:<k>
  members     count:<t>
  rank        rank:<r>  or  upper:<u0,u1,...>
  lineq       rank:<r>
  diag        count:<t>
  evec        logmult:<l>
  chull       extreme:<M>  (omit to enumerate)
  ivt         rational:<p/q>  or  isolated";

#[derive(Debug, Parser)]
#[command(name = "advreal", version, about = "Validated real computation with discrete advice", after_help = ADVICE_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Output precision k: results are within 2^-k.
    #[arg(long, global = true, default_value_t = 20)]
    pub precision: Precision,
    /// Precision cap of every search.
    #[arg(long, global = true, default_value_t = 64)]
    pub fuel_precision: Precision,
    /// Step budget shared by every search.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub fuel_steps: u64,
    /// Discrete advice; syntax depends on the subcommand.
    #[arg(long, global = true)]
    pub advice: Option<String>,
    /// Input file; standard input when absent.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Evaluate search rounds on the rayon pool. Output is unchanged.
    #[arg(long, global = true)]
    pub parallel: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Floor of a real (tuple file with one rational).
    Floor,
    /// First n binary digits after the point of a real in [0, 1).
    Digits,
    /// 1-based indices of one equality class of a tuple.
    Classes,
    /// One member per equality class of a tuple.
    Members,
    /// Rank of a matrix.
    Rank,
    /// Non-zero solution of A x = 0.
    Lineq,
    /// Sorted eigenvalues with multiplicity of a symmetric matrix.
    Eig,
    /// Eigenvalues and an orthonormal eigenbasis of a symmetric matrix.
    Diag,
    /// One eigenvector of a symmetric matrix.
    Evec,
    /// Upper bound on floor(log2) of the least eigenspace dimension.
    Minmultlog,
    /// 1-based indices of the extreme points of a point set.
    Chull,
    /// Zero of a piecewise-linear function with f(0) < 0 < f(1).
    Ivt,
    /// Emit a fixture family member.
    #[command(subcommand)]
    Witness(WitnessKind),
    /// Run the built-in example checks.
    Selfcheck,
}

/// Lists are comma-separated; `-` is the empty list.
#[derive(Debug, Subcommand)]
pub enum WitnessKind {
    /// Tuple with k+1 distinct values in dimension d.
    Card { dim: usize, stages: String },
    /// Diagonal matrix of rank len(stages).
    Rank { rows: usize, cols: usize, stages: String },
    /// Stagewise-constant name of a dyadic near 1/2, printed at --precision.
    Adic { signs: String, stages: String },
    /// Hovering piecewise-linear function selected by a 0/1 path.
    Intermed { path: String, stages: String },
    /// One of the two hovering functions of height 1/(2n): side 0 or 1.
    Hover { n: u64, side: u8 },
    /// Symmetric matrix with eigenspaces W^(js).
    Evec { d: u32, js: String, stages: String },
    /// Rank-raising perturbations of the input matrix, blank-line separated.
    Lineq { delta: String },
    /// Symmetry-breaking perturbation of the input matrix.
    Diagbreak { lambda: String, w: String, eps: String },
    /// Encoding of a sequence as a dyadic rational.
    Borel { stages: String },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Advice {
    Parity(Parity),
    Integer(Integrality),
    Bit { position: u32, value: bool },
    Rank(usize),
    Upper(Vec<i64>),
    Count(usize),
    Size(usize),
    LogMult(u32),
    Extreme(usize),
    Ivt(IntermedAdvice),
}

fn number<T: std::str::FromStr>(text: &str, what: &str) -> Result<T> {
    text.parse().map_err(|_| Error::input(format!("malformed {what} `{text}`")))
}

pub fn parse_advice(text: &str) -> Result<Advice> {
    let text = text.strip_prefix("ivt:").unwrap_or(text);
    let (key, rest) = text.split_once(':').unwrap_or((text, ""));
    Ok(match (key, rest) {
        ("parity", "even") => Advice::Parity(Parity::Even),
        ("parity", "odd") => Advice::Parity(Parity::Odd),
        ("int", "yes") => Advice::Integer(Integrality::IsInteger),
        ("int", "no") => Advice::Integer(Integrality::NotInteger),
        ("bit", rest) => {
            let (n, b) = rest.split_once(':').ok_or_else(|| Error::input("bit advice is bit:<n>:<0|1>"))?;
            let value = match b {
                "0" => false,
                "1" => true,
                _ => return Err(Error::input(format!("bit value `{b}` is not 0 or 1"))),
            };
            Advice::Bit { position: number(n, "bit position")?, value }
        }
        ("rank", r) => Advice::Rank(number(r, "rank")?),
        ("upper", list) => Advice::Upper(list.split(',').map(|u| number(u, "upper bound")).collect::<Result<_>>()?),
        ("count", t) => Advice::Count(number(t, "count")?),
        ("size", k) => Advice::Size(number(k, "class size")?),
        ("logmult", l) => Advice::LogMult(number(l, "log multiplicity")?),
        ("extreme", m) => Advice::Extreme(number(m, "extreme count")?),
        ("rational", q) => Advice::Ivt(IntermedAdvice::Rational(parse_rational(q)?)),
        ("isolated", "") => Advice::Ivt(IntermedAdvice::Isolated),
        _ => return Err(Error::input(format!("unrecognized advice `{text}`"))),
    })
}

/// Outcome, payload and accounting of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub outcome: Outcome,
    pub stdout: String,
    pub message: Option<String>,
    pub precision: Precision,
    pub fuel_steps: u64,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        self.outcome.exit_code()
    }

    /// The stderr text: an optional message line, then the outcome line.
    pub fn diagnostics(&self) -> String {
        let mut out = String::new();
        if let Some(m) = &self.message {
            let _ = writeln!(out, "{m}");
        }
        let _ = writeln!(out, "outcome={} precision={} fuel_steps={}", self.outcome.label(), self.precision, self.fuel_steps);
        out
    }
}

/// Accumulates stdout; every rational is checked to parse back to itself.
#[derive(Default)]
struct Payload(String);

impl Payload {
    fn text(&mut self, line: impl std::fmt::Display) {
        let _ = writeln!(self.0, "{line}");
    }

    fn rationals(&mut self, xs: &[Rational]) {
        let line = io::format_row(xs);
        for (tok, x) in line.split(' ').zip(xs) {
            assert_eq!(&parse_rational(tok).expect("printed rational parses"), x, "rational output must round-trip");
        }
        self.text(line);
    }

    fn rational(&mut self, x: &Rational) {
        self.rationals(std::slice::from_ref(x));
    }
}

struct Context<'a> {
    opts: &'a Options,
    fuel: Fuel,
    stdin: &'a mut dyn FnMut() -> std::io::Result<String>,
}

impl Context<'_> {
    fn input(&mut self) -> Result<String> {
        let read = match &self.opts.input {
            Some(path) => std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display())),
            None => (self.stdin)().map_err(|e| format!("cannot read standard input: {e}")),
        };
        read.map_err(Error::InvalidInput)
    }

    fn advice(&self) -> Result<Option<Advice>> {
        self.opts.advice.as_deref().map(parse_advice).transpose()
    }

    fn required(&self, what: &str) -> Result<Advice> {
        self.advice()?.ok_or_else(|| Error::input(format!("this subcommand needs {what} advice")))
    }

    fn real(&mut self) -> Result<RealName> {
        match io::parse_tuple(&self.input()?)?.as_slice() {
            [x] => Ok(RealName::exact(x.clone())),
            other => Err(Error::input(format!("expected one rational, found {}", other.len()))),
        }
    }

    fn reals(&mut self) -> Result<Vec<RealName>> {
        Ok(io::parse_tuple(&self.input()?)?.into_iter().map(RealName::exact).collect())
    }

    fn matrix(&mut self) -> Result<RatMatrix> {
        io::parse_matrix(&self.input()?)
    }

    fn symmetric(&mut self) -> Result<MatrixName> {
        let m = self.matrix()?;
        if !m.is_square() || !m.is_symmetric() {
            return Err(Error::input("matrix must be square and symmetric"));
        }
        Ok(MatrixName::exact(m))
    }
}

fn mismatch(advice: &Advice) -> Error {
    Error::input(format!("advice {advice:?} does not apply to this subcommand"))
}

fn list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    if text.is_empty() || text == "-" {
        return Ok(Vec::new());
    }
    text.split(',').map(|t| number(t, what)).collect()
}

fn execute(cmd: &Command, cx: &mut Context<'_>, out: &mut Payload) -> Result<()> {
    let k = cx.opts.precision;
    let fuel = cx.fuel.clone();
    match cmd {
        Command::Floor => {
            let x = cx.real()?;
            let v = match cx.required("parity or integrality")? {
                Advice::Parity(p) => floor_with_parity(&x, p),
                Advice::Integer(i) => floor_with_intnot(&x, i, &fuel)?,
                other => return Err(mismatch(&other)),
            };
            out.rational(&Rational::from_integer(v));
        }
        Command::Digits => {
            let x = cx.real()?;
            let Advice::Bit { position, value } = cx.required("bit")? else {
                return Err(Error::input("digits needs bit:<n>:<0|1> advice"));
            };
            for b in leading_digits_with_bit(&x, position, value, &fuel)? {
                out.text(b as u8);
            }
        }
        Command::Classes => {
            let xs = cx.reals()?;
            let Advice::Size(size) = cx.required("size")? else {
                return Err(Error::input("classes needs size:<k> advice"));
            };
            for i in find_class(&xs, size, &fuel)? {
                out.text(i + 1);
            }
        }
        Command::Members => {
            let xs = cx.reals()?;
            let Advice::Count(t) = cx.required("count")? else {
                return Err(Error::input("members needs count:<t> advice"));
            };
            for m in distinct_members(&xs, t, &fuel)? {
                out.rational(&m.query(k));
            }
        }
        Command::Rank => {
            let a = MatrixName::exact(cx.matrix()?);
            let upper = match cx.required("rank or upper")? {
                Advice::Rank(r) => BoundStream::constant(r as i64),
                Advice::Upper(us) => BoundStream::from_values(us),
                other => return Err(mismatch(&other)),
            };
            out.text(rank_with_upper(&a, &upper, &fuel)?);
        }
        Command::Lineq => {
            let a = MatrixName::exact(cx.matrix()?);
            let Advice::Rank(r) = cx.required("rank")? else {
                return Err(Error::input("lineq needs rank:<r> advice"));
            };
            out.rationals(&lineq_with_rank(&a, r, k, &fuel)?.value);
        }
        Command::Eig => {
            let a = cx.symmetric()?;
            for v in eigenvalues_with_multiplicity(&a, k)? {
                out.rational(&v);
            }
        }
        Command::Diag => {
            let a = cx.symmetric()?;
            let Advice::Count(t) = cx.required("count")? else {
                return Err(Error::input("diag needs count:<t> advice"));
            };
            let dg = diag_with_count(&a, t, k, &fuel)?;
            for v in &dg.approx_values {
                out.rational(v);
            }
            for v in &dg.approx_vectors {
                out.rationals(v);
            }
        }
        Command::Evec => {
            let a = cx.symmetric()?;
            let Advice::LogMult(l) = cx.required("logmult")? else {
                return Err(Error::input("evec needs logmult:<l> advice"));
            };
            let ev = evec_with_logmult(&a, l, k, &fuel)?;
            out.rational(&ev.eigenvalue.query(k));
            out.rationals(&ev.value);
        }
        Command::Minmultlog => {
            let a = cx.symmetric()?;
            out.text(min_mult_log_upper(&a, k)?);
        }
        Command::Chull => {
            let pts: Vec<VectorName> = io::parse_points(&cx.input()?)?.into_iter().map(VectorName::exact).collect();
            let indices = match cx.advice()? {
                Some(Advice::Extreme(m)) => extchull_with_count(&pts, m, &fuel)?,
                None => extchull_enumerate(&pts, &fuel).into_iter().map(|w| w.index).collect(),
                Some(other) => return Err(mismatch(&other)),
            };
            for i in indices {
                out.text(i + 1);
            }
        }
        Command::Ivt => {
            let f = io::parse_pwl(&cx.input()?)?;
            let Advice::Ivt(advice) = cx.required("rational or isolated")? else {
                return Err(Error::input("ivt needs rational:<p/q> or isolated advice"));
            };
            out.rational(&ivt_with_advice(&piecewise_linear_funcname(&f), &advice, k, &fuel)?.approx);
        }
        Command::Witness(kind) => emit_witness(kind, cx, out)?,
        Command::Selfcheck => {
            let failed = selfcheck(out);
            if !failed.is_empty() {
                return Err(Error::AdviceSuspect(format!("self-check failed: {}", failed.join(", "))));
            }
        }
    }
    Ok(())
}

fn emit_witness(kind: &WitnessKind, cx: &mut Context<'_>, out: &mut Payload) -> Result<()> {
    let text = match kind {
        WitnessKind::Card { dim, stages } => io::format_tuple(&witness::card_flag(*dim, &list(stages, "stage")?)?),
        WitnessKind::Rank { rows, cols, stages } => io::format_matrix(&witness::rank_flag(*rows, *cols, &list(stages, "stage")?)?),
        WitnessKind::Adic { signs, stages } => {
            let x = witness::adic_flag_name(&list(signs, "sign")?, &list(stages, "stage")?)?;
            io::format_tuple(&[x.query(cx.opts.precision)])
        }
        WitnessKind::Intermed { path, stages } => {
            let (f, _) = witness::intermed_flag(&list(path, "path bit")?, &list(stages, "stage")?)?;
            io::format_pwl(&f)
        }
        WitnessKind::Hover { n, side } => {
            if *n == 0 || *side > 1 {
                return Err(Error::input("hover needs n >= 1 and side 0 or 1"));
            }
            let (g, h) = hovering_pair(*n);
            io::format_pwl(if *side == 0 { &g } else { &h })
        }
        WitnessKind::Evec { d, js, stages } => io::format_matrix(&witness::evec_break(*d, &list(js, "j bit")?, &list(stages, "stage")?)?),
        WitnessKind::Lineq { delta } => {
            let a = cx.matrix()?;
            let ms = witness::lineq_perturb(&a, &parse_rational(delta)?)?;
            ms.iter().map(io::format_matrix).collect::<Vec<_>>().join("\n")
        }
        WitnessKind::Diagbreak { lambda, w, eps } => {
            let a = cx.matrix()?;
            let w = w.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
            io::format_matrix(&witness::diag_break(&a, &parse_rational(lambda)?, &w, &parse_rational(eps)?)?)
        }
        WitnessKind::Borel { stages } => io::format_tuple(&[witness::borel_encode(&list(stages, "stage")?)?]),
    };
    out.0 += &text;
    Ok(())
}

/// Fixed examples with independently known answers; one PASS/FAIL line
/// each. Returns the names of the failed examples.
fn selfcheck(out: &mut Payload) -> Vec<&'static str> {
    let fuel = || Fuel::default();
    let x = RealName::exact(ratio(37, 10));
    let swap = MatrixName::exact(RatMatrix::from_ints(&[&[0, 1], &[1, 0]]));
    let square = [vec![int(0), int(0)], vec![int(1), int(0)], vec![int(0), int(1)], vec![int(1), int(1)], vec![ratio(1, 2), ratio(1, 2)]];
    let checks: Vec<(&'static str, bool)> = vec![
        ("floor parity", floor_with_parity(&x, Parity::Odd) == 3.into()),
        ("floor integrality", floor_with_intnot(&x, Integrality::NotInteger, &fuel()).ok() == Some(3.into())),
        (
            "digits",
            leading_digits_with_bit(&RealName::exact(ratio(5, 8)), 3, true, &fuel())
                .is_ok_and(|bits| is_valid_prefix(&bits, &ratio(5, 8))),
        ),
        (
            "rank",
            rank_with_upper(&MatrixName::exact(RatMatrix::from_ints(&[&[1, 2], &[2, 4]])), &BoundStream::from_values(vec![2, 1]), &fuel()).ok()
                == Some(1),
        ),
        ("eigenvalues", eigenvalues_with_multiplicity(&swap, 20).ok() == Some(vec![int(-1), int(1)])),
        ("diag", diag_with_count(&swap, 2, 20, &fuel()).is_ok()),
        ("diag wrong count", diag_with_count(&swap, 1, 20, &fuel()).is_err()),
        (
            "chull",
            extchull_with_count(&square.iter().cloned().map(VectorName::exact).collect::<Vec<_>>(), 4, &fuel()).ok()
                == Some(vec![0, 1, 2, 3]),
        ),
        (
            "ivt",
            ivt_with_advice(
                &piecewise_linear_funcname(&crate::rootfind::plateau()),
                &IntermedAdvice::Rational(ratio(1, 2)),
                20,
                &fuel(),
            )
            .is_ok_and(|r| r.approx == ratio(1, 2)),
        ),
    ];
    let mut failed = Vec::new();
    for (name, ok) in checks {
        if !ok {
            failed.push(name);
        }
        out.text(format!("{} {name}", if ok { "PASS" } else { "FAIL" }));
    }
    failed
}

/// Parse and run with an explicit stdin source.
pub fn run_with_stdin<I, T>(args: I, stdin: &mut dyn FnMut() -> std::io::Result<String>) -> RunReport
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let ok = !e.use_stderr();
            let text = e.render().to_string();
            return RunReport {
                outcome: if ok { Outcome::Ok } else { Outcome::InputError },
                stdout: if ok { text.clone() } else { String::new() },
                message: (!ok).then(|| text.trim_end().to_string()),
                precision: 0,
                fuel_steps: 0,
            };
        }
    };
    let fuel = Fuel::new(cli.opts.fuel_precision, cli.opts.fuel_steps).with_parallel(cli.opts.parallel);
    let mut cx = Context { opts: &cli.opts, fuel: fuel.clone(), stdin };
    let mut out = Payload::default();
    let result = execute(&cli.command, &mut cx, &mut out);
    let (outcome, stdout, message) = match result {
        Ok(()) => (Outcome::Ok, out.0, None),
        Err(e) => (e.outcome(), String::new(), Some(e.to_string())),
    };
    RunReport { outcome, stdout, message, precision: cli.opts.precision, fuel_steps: fuel.used() }
}

/// Parse and run, reading standard input when no `--input` is given.
pub fn run<I, T>(args: I) -> RunReport
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_stdin(args, &mut || std::io::read_to_string(std::io::stdin()))
}
