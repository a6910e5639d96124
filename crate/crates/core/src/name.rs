//! Names: memoized query interfaces for reals, vectors, matrices and
//! functions, plus the fuel budget that bounds every search over them.
//!
//! A name answers `query(n)` with a rational within `2^-n` of the value it
//! represents. Answers are cached; the first answer stored for a precision is
//! the one every later caller sees.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::RatMatrix;
use crate::interval::Interval;
use crate::rational::{self, Rational};

pub type Precision = u32;

type QueryFn<T> = dyn Fn(Precision) -> T + Send + Sync;

struct ApproxInner<T> {
    query: Box<QueryFn<T>>,
    memo: RwLock<BTreeMap<Precision, T>>,
}

/// Memoized approximation stream shared by all name kinds.
pub struct Approx<T> {
    inner: Arc<ApproxInner<T>>,
}

impl<T> Clone for Approx<T> {
    fn clone(&self) -> Self {
        Approx { inner: Arc::clone(&self.inner) }
    }
}

impl<T: Clone + Send + Sync + 'static> Approx<T> {
    pub fn new(query: impl Fn(Precision) -> T + Send + Sync + 'static) -> Self {
        Approx { inner: Arc::new(ApproxInner { query: Box::new(query), memo: RwLock::new(BTreeMap::new()) }) }
    }

    pub fn query(&self, n: Precision) -> T {
        if let Some(v) = self.inner.memo.read().expect("memo lock poisoned").get(&n) {
            return v.clone();
        }
        // computed outside the lock; a concurrent first insert wins
        let v = (self.inner.query)(n);
        self.inner.memo.write().expect("memo lock poisoned").entry(n).or_insert(v).clone()
    }

    /// Snapshot of every answered query.
    pub fn answered(&self) -> Vec<(Precision, T)> {
        self.inner.memo.read().expect("memo lock poisoned").iter().map(|(k, v)| (*k, v.clone())).collect()
    }
}

/// Name of a real number.
#[derive(Clone)]
pub struct RealName {
    approx: Approx<Rational>,
    exact: Option<Rational>,
}

impl RealName {
    pub fn exact(q: Rational) -> Self {
        let v = q.clone();
        RealName { approx: Approx::new(move |_| v.clone()), exact: Some(q) }
    }

    pub fn from_fn(query: impl Fn(Precision) -> Rational + Send + Sync + 'static) -> Self {
        RealName { approx: Approx::new(query), exact: None }
    }

    pub fn query(&self, n: Precision) -> Rational {
        self.approx.query(n)
    }

    /// The exact value, when the name was built from one.
    pub fn exact_value(&self) -> Option<&Rational> {
        self.exact.as_ref()
    }

    /// `[q_n - 2^-n, q_n + 2^-n]`, which always contains the value.
    pub fn interval(&self, n: Precision) -> Interval {
        Interval::around(&self.query(n), &rational::pow2(-(n as i64)))
    }

    pub fn answered(&self) -> Vec<(Precision, Rational)> {
        self.approx.answered()
    }

    /// `|q_n - q_m| <= 2^-n + 2^-m` over every pair of answered queries.
    pub fn is_consistent(&self) -> bool {
        pairwise_consistent(&self.answered(), |a, b| (a - b).abs())
    }

    pub fn sum(a: &RealName, b: &RealName) -> RealName {
        if let (Some(x), Some(y)) = (&a.exact, &b.exact) {
            return RealName::exact(x + y);
        }
        let (a, b) = (a.clone(), b.clone());
        RealName::from_fn(move |n| a.query(n + 1) + b.query(n + 1))
    }

    pub fn neg(&self) -> RealName {
        self.scale(&rational::int(-1))
    }

    pub fn sub(a: &RealName, b: &RealName) -> RealName {
        RealName::sum(a, &b.neg())
    }

    pub fn scale(&self, c: &Rational) -> RealName {
        if let Some(x) = &self.exact {
            return RealName::exact(x * c);
        }
        let extra = if c.abs() > Rational::from_integer(1.into()) {
            rational::ceil_log2_rational(&c.abs()).max(0) as Precision
        } else {
            0
        };
        let (a, c) = (self.clone(), c.clone());
        RealName::from_fn(move |n| &c * a.query(n + extra))
    }
}

impl fmt::Debug for RealName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(q) => write!(f, "RealName({})", rational::format_rational(q)),
            None => write!(f, "RealName(<stream>)"),
        }
    }
}

fn pairwise_consistent<T>(answers: &[(Precision, T)], dist: impl Fn(&T, &T) -> Rational) -> bool {
    answers.iter().enumerate().all(|(i, (n, a))| {
        answers[i + 1..].iter().all(|(m, b)| dist(a, b) <= rational::pow2(-(*n as i64)) + rational::pow2(-(*m as i64)))
    })
}

/// Name of a vector in max-entry metric.
#[derive(Clone)]
pub struct VectorName {
    len: usize,
    approx: Approx<Vec<Rational>>,
}

impl VectorName {
    pub fn exact(v: Vec<Rational>) -> Self {
        let len = v.len();
        VectorName { len, approx: Approx::new(move |_| v.clone()) }
    }

    pub fn from_fn(len: usize, query: impl Fn(Precision) -> Vec<Rational> + Send + Sync + 'static) -> Self {
        VectorName {
            len,
            approx: Approx::new(move |n| {
                let v = query(n);
                assert_eq!(v.len(), len, "vector name returned the wrong length");
                v
            }),
        }
    }

    /// Vector whose components are the given real names.
    pub fn from_components(parts: Vec<RealName>) -> Self {
        let len = parts.len();
        VectorName::from_fn(len, move |n| parts.iter().map(|p| p.query(n)).collect())
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn query(&self, n: Precision) -> Vec<Rational> {
        self.approx.query(n)
    }

    pub fn intervals(&self, n: Precision) -> Vec<Interval> {
        let r = rational::pow2(-(n as i64));
        self.query(n).iter().map(|q| Interval::around(q, &r)).collect()
    }

    pub fn component(&self, i: usize) -> RealName {
        assert!(i < self.len);
        let v = self.clone();
        RealName::from_fn(move |n| v.query(n)[i].clone())
    }

    pub fn components(&self) -> Vec<RealName> {
        (0..self.len).map(|i| self.component(i)).collect()
    }

    pub fn answered(&self) -> Vec<(Precision, Vec<Rational>)> {
        self.approx.answered()
    }

    pub fn is_consistent(&self) -> bool {
        pairwise_consistent(&self.answered(), |a, b| max_entry_distance(a, b))
    }
}

impl fmt::Debug for VectorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorName(len {})", self.len)
    }
}

pub fn max_entry_distance(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(Rational::zero(), |acc, v| if v > acc { v } else { acc })
}

/// Name of a matrix in max-entry metric. Symmetric-flagged names return
/// symmetric approximants.
#[derive(Clone)]
pub struct MatrixName {
    rows: usize,
    cols: usize,
    symmetric: bool,
    approx: Approx<RatMatrix>,
    exact: Option<RatMatrix>,
}

impl MatrixName {
    /// Exact name; flagged symmetric when the matrix is.
    pub fn exact(m: RatMatrix) -> Self {
        let (rows, cols) = m.shape();
        let symmetric = m.is_symmetric();
        let v = m.clone();
        MatrixName { rows, cols, symmetric, approx: Approx::new(move |_| v.clone()), exact: Some(m) }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        symmetric: bool,
        query: impl Fn(Precision) -> RatMatrix + Send + Sync + 'static,
    ) -> Self {
        MatrixName {
            rows,
            cols,
            symmetric,
            approx: Approx::new(move |n| {
                let m = query(n);
                assert_eq!(m.shape(), (rows, cols), "matrix name returned the wrong shape");
                m
            }),
            exact: None,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn exact_value(&self) -> Option<&RatMatrix> {
        self.exact.as_ref()
    }

    pub fn query(&self, n: Precision) -> RatMatrix {
        self.approx.query(n)
    }

    pub fn entry(&self, i: usize, j: usize) -> RealName {
        if let Some(m) = &self.exact {
            return RealName::exact(m.get(i, j).clone());
        }
        let a = self.clone();
        RealName::from_fn(move |n| a.query(n).get(i, j).clone())
    }

    /// Name of `A - lambda I`: `B_n = A_{n+1} - lambda_{n+1} I`.
    pub fn shifted(&self, lambda: &RealName) -> MatrixName {
        assert_eq!(self.rows, self.cols, "shift of a non-square matrix");
        if let (Some(m), Some(l)) = (&self.exact, lambda.exact_value()) {
            return MatrixName::exact(m.shift(l));
        }
        let (a, l) = (self.clone(), lambda.clone());
        MatrixName::from_fn(self.rows, self.cols, self.symmetric, move |n| a.query(n + 1).shift(&l.query(n + 1)))
    }

    pub fn answered(&self) -> Vec<(Precision, RatMatrix)> {
        self.approx.answered()
    }

    pub fn is_consistent(&self) -> bool {
        pairwise_consistent(&self.answered(), |a, b| max_entry_distance(a.entries(), b.entries()))
    }
}

impl fmt::Debug for MatrixName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixName({}x{}{})", self.rows, self.cols, if self.symmetric { ", symmetric" } else { "" })
    }
}

type EvalFn = dyn Fn(&Rational, Precision) -> Rational + Send + Sync;

/// Name of a real function: `eval(q, n)` lies within `2^-n` of `f(q)`.
#[derive(Clone)]
pub struct FuncName {
    eval: Arc<EvalFn>,
}

impl FuncName {
    pub fn new(eval: impl Fn(&Rational, Precision) -> Rational + Send + Sync + 'static) -> Self {
        FuncName { eval: Arc::new(eval) }
    }

    /// Function evaluated exactly at rational points.
    pub fn exact(f: impl Fn(&Rational) -> Rational + Send + Sync + 'static) -> Self {
        FuncName::new(move |q, _| f(q))
    }

    pub fn eval(&self, q: &Rational, n: Precision) -> Rational {
        (self.eval)(q, n)
    }

    pub fn eval_interval(&self, q: &Rational, n: Precision) -> Interval {
        Interval::around(&self.eval(q, n), &rational::pow2(-(n as i64)))
    }
}

impl fmt::Debug for FuncName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FuncName")
    }
}

/// Set-once record of the discrete choices behind an emitted name.
pub struct NameEmitter<C> {
    commitment: OnceLock<C>,
    guard: Mutex<()>,
}

impl<C> Default for NameEmitter<C> {
    fn default() -> Self {
        NameEmitter { commitment: OnceLock::new(), guard: Mutex::new(()) }
    }
}

impl<C> NameEmitter<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self) -> Option<&C> {
        self.commitment.get()
    }

    /// Resolve the commitment once; later calls return the stored value
    /// without running `resolve`.
    pub fn commit_with(&self, resolve: impl FnOnce() -> Result<C>) -> Result<&C> {
        if let Some(c) = self.commitment.get() {
            return Ok(c);
        }
        let _held = self.guard.lock().expect("emitter lock poisoned");
        if let Some(c) = self.commitment.get() {
            return Ok(c);
        }
        let c = resolve()?;
        Ok(self.commitment.get_or_init(|| c))
    }
}

impl<C: fmt::Debug> fmt::Debug for NameEmitter<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NameEmitter").field("commitment", &self.commitment.get()).finish()
    }
}

/// Precision and step budget for semi-decision searches. Clones share the
/// step counter, so nested searches draw from one budget.
#[derive(Clone)]
pub struct Fuel {
    max_precision: Precision,
    max_steps: u64,
    parallel: bool,
    used: Arc<AtomicU64>,
}

impl Fuel {
    pub const DEFAULT_PRECISION: Precision = 64;
    pub const DEFAULT_STEPS: u64 = 1_000_000;

    pub fn new(max_precision: Precision, max_steps: u64) -> Self {
        assert!(max_precision > 0 && max_steps > 0, "fuel bounds must be positive");
        Fuel { max_precision, max_steps, parallel: false, used: Arc::new(AtomicU64::new(0)) }
    }

    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn max_precision(&self) -> Precision {
        self.max_precision
    }

    pub fn max_steps(&self) -> u64 {
        self.max_steps
    }

    pub fn parallel(&self) -> bool {
        self.parallel
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::SeqCst)
    }

    /// Same bounds, fresh counter.
    pub fn refreshed(&self) -> Self {
        Fuel { used: Arc::new(AtomicU64::new(0)), ..self.clone() }
    }

    /// Consume one step.
    pub fn tick(&self) -> Result<()> {
        let prev = self.used.fetch_add(1, Ordering::SeqCst);
        if prev >= self.max_steps {
            self.used.store(self.max_steps, Ordering::SeqCst);
            return Err(Error::fuel(format!("step budget of {} exhausted", self.max_steps)));
        }
        Ok(())
    }
}

impl Default for Fuel {
    fn default() -> Self {
        Fuel::new(Self::DEFAULT_PRECISION, Self::DEFAULT_STEPS)
    }
}

impl fmt::Debug for Fuel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fuel")
            .field("max_precision", &self.max_precision)
            .field("max_steps", &self.max_steps)
            .field("used", &self.used())
            .field("parallel", &self.parallel)
            .finish()
    }
}
