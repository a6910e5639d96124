//! Semi-decision engine: the dovetail scheduler, strict order separation
//! and the meet-in-the-middle integer resolver.

use std::fmt;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::name::{Fuel, Precision, RealName};

/// A verified candidate together with where the schedule found it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Found<C> {
    pub candidate: C,
    pub index: usize,
    pub precision: Precision,
    pub round: u64,
}

/// Lazily materialized prefix of a candidate sequence.
struct CandidateCache<C, I> {
    seen: Vec<C>,
    rest: Option<I>,
}

impl<C: Clone, I: Iterator<Item = C>> CandidateCache<C, I> {
    /// Make indices `0..=upto` available if the sequence is that long;
    /// returns the available count.
    fn fill(&mut self, upto: usize) -> usize {
        while self.seen.len() <= upto {
            match self.rest.as_mut().and_then(Iterator::next) {
                Some(c) => self.seen.push(c),
                None => {
                    self.rest = None;
                    break;
                }
            }
        }
        self.seen.len()
    }
}

/// Fair search over `candidates` with a monotone `verifier`.
///
/// Round `t` tests candidates `0..=t` at precision `min(t, max_precision)`;
/// once the precision is capped only the newly admitted candidate needs a
/// test, since older ones already failed at that precision. Every verifier
/// call costs one step. The returned candidate is the first verified one in
/// schedule order whether or not the round is evaluated in parallel.
pub fn dovetail<C, I, V>(candidates: I, verifier: V, fuel: &Fuel) -> Result<Found<C>>
where
    C: Clone + Send + Sync,
    I: IntoIterator<Item = C>,
    V: Fn(&C, Precision) -> bool + Sync,
{
    let mut cache = CandidateCache { seen: Vec::new(), rest: Some(candidates.into_iter()) };
    let cap = fuel.max_precision() as u64;
    for t in 0u64.. {
        let p = t.min(cap) as Precision;
        let first = if t <= cap { 0 } else { t as usize };
        let available = cache.fill(t as usize);
        if first >= available {
            if cache.rest.is_none() && t > cap {
                return Err(Error::fuel("every candidate failed at the precision cap"));
            }
            continue;
        }
        let last = (t as usize).min(available - 1);
        let batch = &cache.seen[first..=last];
        let verdicts: Vec<bool> = if fuel.parallel() && batch.len() > 1 {
            batch.par_iter().map(|c| verifier(c, p)).collect()
        } else {
            Vec::new()
        };
        for (offset, c) in batch.iter().enumerate() {
            fuel.tick()?;
            let ok = if verdicts.is_empty() { verifier(c, p) } else { verdicts[offset] };
            if ok {
                return Ok(Found { candidate: c.clone(), index: first + offset, precision: p, round: t });
            }
        }
    }
    unreachable!("the round counter is unbounded")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    XLess,
    XGreater,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Separation {
    pub order: Order,
    pub precision: Precision,
}

/// Semi-decide the order of two distinct reals by strict disjointness of
/// their query intervals.
pub fn sep_order(x: &RealName, y: &RealName, fuel: &Fuel) -> Result<Separation> {
    for n in 0..=fuel.max_precision() {
        fuel.tick()?;
        let (ix, iy) = (x.interval(n), y.interval(n));
        if ix.strictly_below(&iy) {
            return Ok(Separation { order: Order::XLess, precision: n });
        }
        if iy.strictly_below(&ix) {
            return Ok(Separation { order: Order::XGreater, precision: n });
        }
    }
    Err(Error::fuel("intervals never separated"))
}

/// Monotone integer stream indexed from 0, e.g. advice bounds.
#[derive(Clone)]
pub struct BoundStream(Arc<dyn Fn(usize) -> i64 + Send + Sync>);

impl BoundStream {
    pub fn from_fn(f: impl Fn(usize) -> i64 + Send + Sync + 'static) -> Self {
        BoundStream(Arc::new(f))
    }

    pub fn constant(v: i64) -> Self {
        BoundStream::from_fn(move |_| v)
    }

    /// Finite prefix whose last value repeats forever.
    pub fn from_values(values: Vec<i64>) -> Self {
        assert!(!values.is_empty(), "bound stream needs at least one value");
        BoundStream::from_fn(move |t| values[t.min(values.len() - 1)])
    }

    pub fn at(&self, t: usize) -> i64 {
        (self.0)(t)
    }
}

impl fmt::Debug for BoundStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<i64> = (0..4).map(|t| self.at(t)).collect();
        write!(f, "BoundStream({head:?}, ...)")
    }
}

/// Resolve an integer from converging lower and upper bound streams,
/// returning it at the first index where they meet. One step per index;
/// indices never exceed the precision cap.
pub fn resolve_integer(lower: &BoundStream, upper: &BoundStream, fuel: &Fuel) -> Result<i64> {
    let mut prev: Option<(i64, i64)> = None;
    for t in 0..=fuel.max_precision() as usize {
        fuel.tick()?;
        let (l, u) = (lower.at(t), upper.at(t));
        if let Some((pl, pu)) = prev {
            if l < pl {
                return Err(Error::MonotonicityViolation { stream: "lower", index: t });
            }
            if u > pu {
                return Err(Error::MonotonicityViolation { stream: "upper", index: t });
            }
        }
        if l > u {
            return Err(Error::AdviceSuspect(format!("bounds crossed at index {t}: lower {l} > upper {u}")));
        }
        if l == u {
            return Ok(l);
        }
        prev = Some((l, u));
    }
    Err(Error::fuel("bound streams never met"))
}

/// Lower bound stream backed by a memoized running maximum of `f`.
pub fn running_max(f: impl Fn(usize) -> i64 + Send + Sync + 'static) -> BoundStream {
    let memo: Mutex<Vec<i64>> = Mutex::new(Vec::new());
    BoundStream::from_fn(move |t| {
        let mut m = memo.lock().expect("bound memo poisoned");
        while m.len() <= t {
            let v = f(m.len());
            let best = m.last().map_or(v, |&last| last.max(v));
            m.push(best);
        }
        m[t]
    })
}
