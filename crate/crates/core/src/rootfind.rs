//! Intermediate value theorem with countable advice: either a rational
//! zero is supplied, or the zero set is promised to have empty interior and
//! a trisection search finds a zero.

use std::sync::{Arc, Mutex};

use num_traits::{Signed, Zero};

use crate::advice::IntermedAdvice;
use crate::error::{Error, Result};
use crate::name::{FuncName, Fuel, Precision, RealName};
use crate::rational::{self, int, pow2, ratio, Rational};
use crate::search::dovetail;

/// Continuous piecewise-linear function on `[0, 1]`, constant beyond its
/// outermost breakpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinear {
    points: Vec<(Rational, Rational)>,
}

impl PiecewiseLinear {
    /// Breakpoints with strictly increasing abscissae covering `[0, 1]`.
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::input("a piecewise-linear function needs at least two breakpoints"));
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::input("breakpoint abscissae must increase strictly"));
        }
        if points[0].0 > int(0) || points[points.len() - 1].0 < int(1) {
            return Err(Error::input("breakpoints must span [0, 1]"));
        }
        Ok(PiecewiseLinear { points })
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let pts = &self.points;
        if x <= &pts[0].0 {
            return pts[0].1.clone();
        }
        if x >= &pts[pts.len() - 1].0 {
            return pts[pts.len() - 1].1.clone();
        }
        let i = pts.partition_point(|p| &p.0 <= x);
        let ((x0, y0), (x1, y1)) = (&pts[i - 1], &pts[i]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    fn abscissae<'a>(&'a self, other: &'a Self) -> Vec<Rational> {
        let mut xs: Vec<Rational> = self.points.iter().chain(&other.points).map(|p| p.0.clone()).collect();
        xs.sort();
        xs.dedup();
        xs
    }

    pub fn add(&self, other: &Self) -> Self {
        let points = self.abscissae(other).into_iter().map(|x| {
            let y = self.eval(&x) + other.eval(&x);
            (x, y)
        });
        PiecewiseLinear { points: points.collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PiecewiseLinear { points: self.points.iter().map(|(x, y)| (x.clone(), y * c)).collect() }
    }

    /// Exact sup distance; the difference is piecewise linear with
    /// breakpoints among the merged abscissae.
    pub fn sup_distance(&self, other: &Self) -> Rational {
        rational::max_abs(&self.abscissae(other).iter().map(|x| self.eval(x) - other.eval(x)).collect::<Vec<_>>())
    }

    /// Zero set as a list of closed intervals (points are degenerate
    /// intervals), in increasing order.
    pub fn zero_set(&self) -> Vec<(Rational, Rational)> {
        let pts = &self.points;
        let mut out: Vec<(Rational, Rational)> = Vec::new();
        let mut push = |a: Rational, b: Rational| match out.last_mut() {
            Some(last) if last.1 >= a => {
                if b > last.1 {
                    last.1 = b;
                }
            }
            _ => out.push((a, b)),
        };
        for w in pts.windows(2) {
            let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
            if y0.is_zero() && y1.is_zero() {
                push(x0.clone(), x1.clone());
            } else if y0.is_zero() {
                push(x0.clone(), x0.clone());
            } else if y1.is_zero() {
                push(x1.clone(), x1.clone());
            } else if y0.signum() != y1.signum() {
                let z = x0 - y0 * (x1 - x0) / (y1 - y0);
                push(z.clone(), z);
            }
        }
        out
    }
}

/// Exact function name of a piecewise-linear function.
pub fn piecewise_linear_funcname(f: &PiecewiseLinear) -> FuncName {
    let f = f.clone();
    FuncName::exact(move |x| f.eval(x))
}

/// The plateau function: `3x - 1`, then zero on `[1/3, 2/3]`, then `3x - 2`.
pub fn plateau() -> PiecewiseLinear {
    PiecewiseLinear::new(vec![(int(0), int(-1)), (ratio(1, 3), int(0)), (ratio(2, 3), int(0)), (int(1), int(1))])
        .expect("fixed breakpoints")
}

/// Functions within `1/(2n)` of [`plateau`] whose zero sets are
/// `[1/3, 5/12]` and `[7/12, 2/3]`.
pub fn hovering_pair(n: u64) -> (PiecewiseLinear, PiecewiseLinear) {
    assert!(n > 0, "hovering pair needs n >= 1");
    let eta = Rational::new(1.into(), (2 * n).into());
    let zero = || (int(0), int(0));
    let up = PiecewiseLinear::new(vec![
        zero(),
        (ratio(5, 12), int(0)),
        (ratio(1, 2), eta.clone()),
        (ratio(2, 3), eta.clone()),
        (ratio(3, 4), int(0)),
        (int(1), int(0)),
    ])
    .expect("fixed breakpoints");
    let down = PiecewiseLinear::new(vec![
        zero(),
        (ratio(1, 4), int(0)),
        (ratio(1, 3), -eta.clone()),
        (ratio(1, 2), -eta),
        (ratio(7, 12), int(0)),
        (int(1), int(0)),
    ])
    .expect("fixed breakpoints");
    (plateau().add(&up), plateau().add(&down))
}

/// Zero name plus the trace of the search.
#[derive(Debug, Clone)]
pub struct IvtResult {
    pub zero: RealName,
    /// Approximation at the requested precision.
    pub approx: Rational,
    /// Brackets `[a, b]` with certified `f(a) < 0 < f(b)`, one per round.
    pub brackets: Vec<(Rational, Rational)>,
}

/// Dyadics in `(0, 1)` by level: 1/2, 1/4, 3/4, 1/8, 3/8, ...
fn dyadic_offsets() -> impl Iterator<Item = Rational> + Clone {
    (1u32..).flat_map(|level| {
        let den = pow2(-(level as i64));
        (0..1u64 << (level - 1)).map(move |i| Rational::from_integer((2 * i + 1).into()) * &den)
    })
}

/// One trisection round: a point of the middle third with certified
/// nonzero value replaces the endpoint of the same sign.
fn shrink(f: &FuncName, a: &Rational, b: &Rational, fuel: &Fuel) -> Result<(Rational, Rational)> {
    let third = (b - a) / int(3);
    let cands = dyadic_offsets().map(|d| a + &third * (int(1) + d));
    let found = dovetail(cands, |c, p| !f.eval_interval(c, p).contains_zero(), fuel)?;
    let c = found.candidate;
    if f.eval_interval(&c, found.precision).is_negative() {
        Ok((c, b.clone()))
    } else {
        Ok((a.clone(), c))
    }
}

fn mid(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// A zero of `f` with `f(0) < 0 < f(1)` under intermediate-value advice.
pub fn ivt_with_advice(f: &FuncName, advice: &IntermedAdvice, k: Precision, fuel: &Fuel) -> Result<IvtResult> {
    match advice {
        IntermedAdvice::Rational(r) => {
            if !f.eval_interval(r, fuel.max_precision()).contains_zero() {
                return Err(Error::AdviceSuspect(format!("f({}) is certified nonzero", rational::format_rational(r))));
            }
            Ok(IvtResult { zero: RealName::exact(r.clone()), approx: r.clone(), brackets: Vec::new() })
        }
        IntermedAdvice::Isolated => isolated(f, k, fuel),
    }
}

fn isolated(f: &FuncName, k: Precision, fuel: &Fuel) -> Result<IvtResult> {
    let (zero, one) = (int(0), int(1));
    let cap = fuel.max_precision();
    if !f.eval_interval(&zero, cap).is_negative() || !f.eval_interval(&one, cap).is_positive() {
        return Err(Error::PreconditionViolated("need f(0) < 0 < f(1)".into()));
    }
    let target = pow2(-(k as i64));
    let budget = pow2(-((k + cap) as i64));
    let tol = int(2) * &target;
    let mut brackets = vec![(zero, one)];
    loop {
        let (a, b) = brackets.last().expect("nonempty").clone();
        let width = &b - &a;
        if width <= target {
            let m = mid(&a, &b);
            let v = f.eval_interval(&m, k + 2);
            if v.mag() <= tol {
                break;
            }
            if width <= budget {
                return Err(Error::AdviceSuspect(format!("|f| at the final midpoint exceeds {}", rational::format_rational(&tol))));
            }
        }
        brackets.push(shrink(f, &a, &b, fuel)?);
    }
    let (a, b) = brackets.last().expect("nonempty").clone();
    let approx = mid(&a, &b);
    let chain = Arc::new(Mutex::new(vec![(a, b)]));
    let g = f.clone();
    let first = approx.clone();
    let zero = RealName::from_fn(move |n| {
        if n <= k {
            return first.clone();
        }
        // continue the committed nested brackets, shared across queries
        let mut chain = chain.lock().expect("bracket chain poisoned");
        let want = pow2(-(n as i64));
        loop {
            if let Some((a, b)) = chain.iter().find(|(a, b)| (b - a) <= want) {
                return mid(a, b);
            }
            let (a, b) = chain.last().expect("nonempty").clone();
            let inner = Fuel::new(cap.max(n + 8), u64::MAX);
            let next = shrink(&g, &a, &b, &inner).expect("unbounded search terminates on a sign change");
            chain.push(next);
        }
    });
    Ok(IvtResult { zero, approx, brackets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pwl(raw: &[(Rational, Rational)]) -> PiecewiseLinear {
        PiecewiseLinear::new(raw.to_vec()).unwrap()
    }

    #[test]
    fn pwl_examples() {
        let f = pwl(&[(int(0), int(-1)), (int(1), int(1))]);
        assert_eq!(f.eval(&ratio(1, 2)), int(0));
        let p = plateau();
        assert_eq!(p.eval(&ratio(1, 2)), int(0));
        assert_eq!(p.eval(&ratio(1, 6)), ratio(-1, 2));
        assert_eq!(p.zero_set(), vec![(ratio(1, 3), ratio(2, 3))]);
        let (g, h) = hovering_pair(4);
        assert!(g.eval(&ratio(1, 2)) > int(0));
        assert_eq!(g.zero_set(), vec![(ratio(1, 3), ratio(5, 12))]);
        assert_eq!(h.zero_set(), vec![(ratio(7, 12), ratio(2, 3))]);
        assert!(p.sup_distance(&g) < ratio(1, 4) && p.sup_distance(&h) < ratio(1, 4));
        assert!(PiecewiseLinear::new(vec![(int(0), int(0)), (int(0), int(1))]).is_err());
        assert!(PiecewiseLinear::new(vec![(int(0), int(0)), (ratio(1, 2), int(1))]).is_err());
    }

    #[test]
    fn rational_advice_returns_advice() {
        let f = Fuel::default();
        let r = ivt_with_advice(&piecewise_linear_funcname(&plateau()), &IntermedAdvice::Rational(ratio(1, 2)), 20, &f).unwrap();
        assert_eq!(r.zero.exact_value(), Some(&ratio(1, 2)));
        let (g, _) = hovering_pair(3);
        let r = ivt_with_advice(&piecewise_linear_funcname(&g), &IntermedAdvice::Rational(ratio(3, 8)), 20, &f).unwrap();
        assert_eq!(r.approx, ratio(3, 8));
        let bad = ivt_with_advice(&piecewise_linear_funcname(&g), &IntermedAdvice::Rational(ratio(1, 2)), 20, &f);
        assert!(matches!(bad, Err(Error::AdviceSuspect(_))));
    }

    #[test]
    fn isolated_clamp() {
        let f = pwl(&[(int(0), int(-1)), (int(1), int(1))]);
        let r = ivt_with_advice(&piecewise_linear_funcname(&f), &IntermedAdvice::Isolated, 20, &Fuel::default()).unwrap();
        assert!((&r.approx - ratio(1, 2)).abs() <= pow2(-20));
        let (a, b) = r.brackets.last().unwrap();
        assert!(b - a <= pow2(-20));
        for n in [0, 10, 20, 30, 45] {
            assert!((r.zero.query(n) - ratio(1, 2)).abs() <= pow2(-(n as i64)));
        }
        assert!(r.zero.is_consistent());
    }

    #[test]
    fn isolated_on_plateau_exhausts() {
        let f = piecewise_linear_funcname(&plateau());
        let r = ivt_with_advice(&f, &IntermedAdvice::Isolated, 20, &Fuel::new(24, 20_000));
        assert!(matches!(r, Err(Error::FuelExhausted(_))));
        let neg = piecewise_linear_funcname(&pwl(&[(int(0), int(1)), (int(1), int(-1))]));
        assert!(matches!(ivt_with_advice(&neg, &IntermedAdvice::Isolated, 4, &Fuel::default()), Err(Error::PreconditionViolated(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn isolated_finds_unique_zero(zn in 1i64..63, slope_l in 1i64..20, slope_r in 1i64..20) {
            // zero at z = zn / 64, two slopes, clamped to [-1, 1] at the ends
            let z = ratio(zn, 64);
            let f = pwl(&[(int(0), -(&z * int(slope_l)).min(int(1))), (z.clone(), int(0)), (int(1), ((int(1) - &z) * int(slope_r)).min(int(1)))]);
            let r = ivt_with_advice(&piecewise_linear_funcname(&f), &IntermedAdvice::Isolated, 20, &Fuel::default()).unwrap();
            prop_assert!((&r.approx - &z).abs() <= pow2(-20));
            for w in r.brackets.windows(2) {
                let (w0, w1) = (&w[0].1 - &w[0].0, &w[1].1 - &w[1].0);
                prop_assert!(w1 * int(3) <= w0 * int(2));
                prop_assert!(f.eval(&w[1].0) < int(0) && f.eval(&w[1].1) > int(0));
            }
        }
    }
}
