//! Extreme points of finite point sets given by names.
//!
//! A point is extreme iff some rational normal `u` puts it strictly above
//! all others; strictness makes that a semi-decidable property, so extreme
//! points are enumerable and, given their number, computable.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::hull2d_cycle;
use crate::interval::Interval;
use crate::name::{Fuel, Precision, RealName, VectorName};
use crate::rational::{pow2, Rational};
use crate::search::dovetail;

/// Normal `u` under which point `index` is certified strictly above the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfspaceWitness {
    pub normal: Vec<Rational>,
    pub index: usize,
    pub precision: Precision,
}

/// Primitive integer vectors of dimension `d`, by max-norm shell and
/// lexicographically within a shell.
pub fn normal_spiral(d: usize) -> impl Iterator<Item = Vec<i64>> + Clone {
    (1i64..).flat_map(move |s| {
        let side = (2 * s + 1) as u64;
        let total = side.checked_pow(d as u32).expect("shell index overflow");
        (0..total).filter_map(move |mut code| {
            let mut v = vec![0i64; d];
            for slot in v.iter_mut().rev() {
                *slot = (code % side) as i64 - s;
                code /= side;
            }
            let on_shell = v.iter().any(|x| x.abs() == s);
            let g = v.iter().fold(0i64, |g, x| g.gcd(x));
            (on_shell && g == 1).then_some(v)
        })
    })
}

/// `<u, x_i>` enclosures at precision `p`.
fn projections(u: &[Rational], points: &[VectorName], p: Precision) -> Vec<Interval> {
    let l1: Rational = u.iter().map(|x| x.abs()).sum();
    let r = l1 * pow2(-(p as i64));
    points
        .iter()
        .map(|x| {
            let c: Rational = u.iter().zip(x.query(p)).map(|(a, b)| a * b).sum();
            Interval::around(&c, &r)
        })
        .collect()
}

fn dominates(u: &[Rational], points: &[VectorName], j: usize, p: Precision) -> bool {
    let iv = projections(u, points, p);
    iv.iter().enumerate().all(|(i, x)| i == j || x.strictly_below(&iv[j]))
}

fn l1_normalized(v: (Rational, Rational)) -> Option<(Rational, Rational)> {
    let n = v.0.abs() + v.1.abs();
    (!n.is_zero()).then(|| (&v.0 / &n, &v.1 / &n))
}

/// Planar guess for a normal at `j`: the sum of the outward edge normals at
/// `j` on the hull of the centers at precision `p`.
fn hull_normal(points: &[VectorName], j: usize, p: Precision) -> Option<Vec<Rational>> {
    let centers: Vec<(Rational, Rational)> = points
        .iter()
        .map(|x| {
            let q = x.query(p);
            (q[0].clone(), q[1].clone())
        })
        .collect();
    let cycle = hull2d_cycle(&centers);
    let t = cycle.iter().position(|&i| i == j)?;
    if cycle.len() < 2 {
        return None;
    }
    let prev = &centers[cycle[(t + cycle.len() - 1) % cycle.len()]];
    let next = &centers[cycle[(t + 1) % cycle.len()]];
    let here = &centers[j];
    // counterclockwise cycle: edge (dx, dy) has outward normal (dy, -dx)
    let n1 = l1_normalized((&here.1 - &prev.1, &prev.0 - &here.0))?;
    let n2 = l1_normalized((&next.1 - &here.1, &here.0 - &next.0))?;
    let sum = (&n1.0 + &n2.0, &n1.1 + &n2.1);
    if !(sum.0.is_zero() && sum.1.is_zero()) {
        return Some(vec![sum.0, sum.1]);
    }
    // a two-point hull: point away from the other end
    Some(vec![&here.0 - &prev.0, &here.1 - &prev.1])
}

/// Candidate normals for point `j`: the spiral, interleaved in the plane
/// with hull-based guesses at growing precision.
fn candidates(points: &[VectorName], j: usize, cap: Precision) -> impl Iterator<Item = Option<Vec<Rational>>> + '_ {
    let d = points.first().map_or(0, VectorName::len);
    let spiral = normal_spiral(d).map(|v| v.into_iter().map(|x| Rational::from_integer(BigInt::from(x))).collect());
    let planar = d == 2;
    let mut spiral = spiral;
    (0u64..).map_while(move |c| {
        if planar && c % 2 == 1 {
            let p = ((c - 1) / 2).min(cap as u64) as Precision;
            Some(hull_normal(points, j, p))
        } else {
            spiral.next().map(Some)
        }
    })
}

fn check_points(points: &[VectorName]) -> Result<usize> {
    let d = points.first().map_or(0, VectorName::len);
    if d == 0 || points.iter().any(|p| p.len() != d) {
        return Err(Error::input("points must share a positive dimension"));
    }
    Ok(d)
}

/// Search for a witness that point `j` is extreme.
pub fn semidecide_extreme(points: &[VectorName], j: usize, fuel: &Fuel) -> Result<HalfspaceWitness> {
    check_points(points)?;
    if j >= points.len() {
        return Err(Error::input(format!("point index {j} out of range")));
    }
    let found = dovetail(
        candidates(points, j, fuel.max_precision()),
        |u, p| u.as_ref().is_some_and(|u| dominates(u, points, j, p)),
        fuel,
    )?;
    Ok(HalfspaceWitness { normal: found.candidate.expect("verified candidate"), index: j, precision: found.precision })
}

/// Per-point search state for the interleaved schedule.
struct Search<'a, I: Iterator<Item = Option<Vec<Rational>>>> {
    seen: Vec<Option<Vec<Rational>>>,
    rest: I,
    done: bool,
    points: &'a [VectorName],
}

impl<I: Iterator<Item = Option<Vec<Rational>>>> Search<'_, I> {
    fn fill(&mut self, upto: usize) -> usize {
        while !self.done && self.seen.len() <= upto {
            match self.rest.next() {
                Some(c) => self.seen.push(c),
                None => self.done = true,
            }
        }
        self.seen.len()
    }
}

/// Runs the per-point dovetails in lockstep rounds, calling `on_round`
/// after each round with the witnesses found so far in emission order.
/// Steps are charged point by point in index order, so the outcome does
/// not depend on parallel evaluation.
fn interleaved(
    points: &[VectorName],
    fuel: &Fuel,
    mut on_round: impl FnMut(&[HalfspaceWitness]) -> Option<Result<()>>,
) -> (Vec<HalfspaceWitness>, Result<()>) {
    let n = points.len();
    let cap = fuel.max_precision();
    let mut searches: Vec<_> =
        (0..n).map(|j| Search { seen: Vec::new(), rest: candidates(points, j, cap), done: false, points }).collect();
    let mut found: Vec<HalfspaceWitness> = Vec::new();
    let mut solved = vec![false; n];
    for t in 0u64.. {
        let p = t.min(cap as u64) as Precision;
        let first = if t <= cap as u64 { 0 } else { t as usize };
        let mut batches: Vec<(usize, usize, usize)> = Vec::new();
        for (j, s) in searches.iter_mut().enumerate() {
            if solved[j] {
                continue;
            }
            let avail = s.fill(t as usize);
            if first < avail {
                batches.push((j, first, (t as usize).min(avail - 1)));
            }
        }
        if solved.iter().all(|s| *s) {
            return (found, Ok(()));
        }
        let live = (0..n).any(|j| !solved[j] && !(searches[j].done && t as usize >= searches[j].seen.len() && t > cap as u64));
        if !live {
            return (found, Err(Error::fuel("every candidate normal failed at the precision cap")));
        }
        let verdicts: HashMap<(usize, usize), bool> = if fuel.parallel() {
            let work: Vec<(usize, usize)> = batches.iter().flat_map(|&(j, a, b)| (a..=b).map(move |c| (j, c))).collect();
            work.par_iter()
                .map(|&(j, c)| {
                    let s = &searches[j];
                    ((j, c), s.seen[c].as_ref().is_some_and(|u| dominates(u, s.points, j, p)))
                })
                .collect()
        } else {
            HashMap::new()
        };
        for &(j, a, b) in &batches {
            for c in a..=b {
                if let Err(e) = fuel.tick() {
                    return (found, Err(e));
                }
                let s = &searches[j];
                let ok = match verdicts.get(&(j, c)) {
                    Some(v) => *v,
                    None => s.seen[c].as_ref().is_some_and(|u| dominates(u, points, j, p)),
                };
                if ok {
                    solved[j] = true;
                    found.push(HalfspaceWitness { normal: s.seen[c].clone().expect("verified"), index: j, precision: p });
                    break;
                }
            }
        }
        if let Some(outcome) = on_round(&found) {
            return (found, outcome);
        }
    }
    unreachable!("the round counter is unbounded")
}

/// The extreme points given their number `m`, as sorted 0-based indices.
pub fn extchull_with_count(points: &[VectorName], m: usize, fuel: &Fuel) -> Result<Vec<usize>> {
    check_points(points)?;
    if m == 0 || m > points.len() {
        return Err(Error::input(format!("extreme-point count {m} outside 1..={}", points.len())));
    }
    let (found, outcome) = interleaved(points, fuel, |found| {
        if found.len() > m {
            Some(Err(Error::AdviceSuspect(format!("{} points certified extreme, advice says {m}", found.len()))))
        } else if found.len() == m {
            Some(Ok(()))
        } else {
            None
        }
    });
    outcome?;
    let mut idx: Vec<usize> = found.iter().map(|w| w.index).collect();
    idx.sort_unstable();
    Ok(idx)
}

/// Anytime enumeration: every witness found before fuel runs out, in
/// emission order. Sound but possibly incomplete.
pub fn extchull_enumerate(points: &[VectorName], fuel: &Fuel) -> Vec<HalfspaceWitness> {
    if check_points(points).is_err() {
        return Vec::new();
    }
    let n = points.len();
    interleaved(points, fuel, |found| (found.len() == n).then_some(Ok(()))).0
}

/// Points `(i, x_1 + ... + x_i)` for `i < n` followed by `(n, x_n)`.
pub fn staircase_embed(xs: &[RealName]) -> Vec<VectorName> {
    let n = xs.len();
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = RealName::exact(Rational::zero());
    for (i, x) in xs.iter().enumerate() {
        out.push(VectorName::from_components(vec![RealName::exact(Rational::from_integer(i.into())), acc.clone()]));
        acc = RealName::sum(&acc, x);
    }
    if let Some(last) = xs.last() {
        out.push(VectorName::from_components(vec![RealName::exact(Rational::from_integer(n.into())), last.clone()]));
    }
    out
}
