//! Scalar advice algorithms: floors, leading binary digits, and the
//! combinatorics of equal entries in a tuple of reals.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::advice::{Integrality, Parity};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::name::{Fuel, Precision, RealName};
use crate::rational::{self, int, pow2, ratio, Rational};
use crate::search::dovetail;

pub fn floor_with_intnot(x: &RealName, advice: Integrality, fuel: &Fuel) -> Result<BigInt> {
    match advice {
        Integrality::IsInteger => Ok(rational::floor(&(x.query(2) + ratio(1, 2)))),
        Integrality::NotInteger => {
            for n in 0..=fuel.max_precision() {
                fuel.tick()?;
                let iv = x.interval(n);
                if rational::floor(iv.hi()) < rational::ceil(iv.lo()) {
                    return Ok(rational::floor(iv.lo()));
                }
            }
            Err(Error::fuel("query interval kept containing an integer"))
        }
    }
}

/// Floor from a single query at precision 1.
pub fn floor_with_parity(x: &RealName, advice: Parity) -> BigInt {
    let q1 = x.query(1);
    let two = BigInt::from(2);
    match advice {
        Parity::Even => &two * rational::floor(&(q1 / int(2) + ratio(1, 4))),
        Parity::Odd => &two * rational::floor(&((q1 - int(1)) / int(2) + ratio(1, 4))) + 1,
    }
}

/// Bits `b_1..b_n` of a binary expansion of `x` in `[0, 1)` whose `n`-th bit
/// is the advised one.
///
/// Searches `k` with `x` strictly inside `((2k + b - 1/2) 2^-n, (2k + b + 3/2) 2^-n)`;
/// under truthful advice this pins `x` to `[(2k + b) 2^-n, (2k + b + 1) 2^-n]`.
pub fn leading_digits_with_bit(x: &RealName, n: u32, bit: bool, fuel: &Fuel) -> Result<Vec<bool>> {
    if n == 0 {
        return Err(Error::input("digit count must be at least 1"));
    }
    let unit = pow2(-(n as i64));
    let b = int(bit as i64);
    let window = |k: &BigInt| -> (Rational, Rational) {
        let base = Rational::from_integer(k * 2) + &b;
        ((&base - ratio(1, 2)) * &unit, (&base + ratio(3, 2)) * &unit)
    };
    let count = BigInt::one() << (n as usize - 1);
    let candidates = num_iter(count.clone() + 1);
    let found = dovetail(
        candidates,
        |k, p| {
            let (lo, hi) = window(k);
            let iv = x.interval(p);
            &lo < iv.lo() && iv.hi() < &hi
        },
        fuel,
    );
    let k = match found {
        Ok(f) => f.candidate,
        Err(Error::FuelExhausted(why)) => {
            let iv = x.interval(fuel.max_precision());
            let mut k = BigInt::zero();
            while k < count {
                let lo = (Rational::from_integer(&k * 2) + &b) * &unit;
                if iv.overlaps(&Interval::new(lo.clone(), lo + &unit)) {
                    return Err(Error::FuelExhausted(why));
                }
                k += 1;
            }
            return Err(Error::AdviceViolated(format!("x is certified to have no expansion with bit {n} = {}", bit as u8)));
        }
        Err(e) => return Err(e),
    };
    if k >= count {
        return Err(Error::AdviceViolated(format!("digit window {k} lies beyond [0, 1)")));
    }
    let mut bits: Vec<bool> = (0..n - 1).rev().map(|i| k.bit(i as u64)).collect();
    bits.push(bit);
    let s = prefix_value(&bits);
    let iv = x.interval(fuel.max_precision());
    if !iv.overlaps(&Interval::new(s.clone(), s + &unit)) {
        return Err(Error::AdviceViolated("returned prefix fails post-validation".into()));
    }
    Ok(bits)
}

fn num_iter(end: BigInt) -> impl Iterator<Item = BigInt> + Clone {
    let mut k = BigInt::zero();
    std::iter::from_fn(move || {
        if k >= end {
            return None;
        }
        let out = k.clone();
        k += 1;
        Some(out)
    })
}

/// `sum b_i 2^-i`.
pub fn prefix_value(bits: &[bool]) -> Rational {
    bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| pow2(-(i as i64 + 1))).fold(Rational::zero(), |a, v| a + v)
}

/// Whether `bits` is a prefix of some binary expansion of `x`.
pub fn is_valid_prefix(bits: &[bool], x: &Rational) -> bool {
    let s = prefix_value(bits);
    let top = &s + pow2(-(bits.len() as i64));
    &s <= x && x <= &top
}

fn separated(a: &Interval, b: &Interval) -> bool {
    a.strictly_below(b) || b.strictly_below(a)
}

/// A full class of equal entries of size in `k..2k` (0-based indices,
/// ascending), found by dovetailing over subsets ordered by size and then
/// lexicographically.
pub fn find_class(xs: &[RealName], k: usize, fuel: &Fuel) -> Result<Vec<usize>> {
    if k == 0 {
        return Err(Error::input("class size bound must be at least 1"));
    }
    let n = xs.len();
    let max = (2 * k - 1).min(n);
    let candidates = (k..=max).flat_map(move |s| (0..n).combinations(s));
    let found = dovetail(
        candidates,
        |set: &Vec<usize>, p: Precision| {
            let ivs: Vec<Interval> = xs.iter().map(|x| x.interval(p)).collect();
            set.iter().all(|&i| (0..n).filter(|j| !set.contains(j)).all(|j| separated(&ivs[i], &ivs[j])))
        },
        fuel,
    )?;
    Ok(found.candidate)
}

/// Connected components of the closed-overlap graph of `ivs`, each sorted,
/// ordered by least index.
pub fn overlap_components(ivs: &[Interval]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..ivs.len()).collect();
    order.sort_by(|&a, &b| ivs[a].lo().cmp(ivs[b].lo()).then(a.cmp(&b)));
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut reach: Option<Rational> = None;
    for i in order {
        match &reach {
            Some(r) if ivs[i].lo() <= r => {
                comps.last_mut().unwrap().push(i);
                if ivs[i].hi() > r {
                    reach = Some(ivs[i].hi().clone());
                }
            }
            _ => {
                comps.push(vec![i]);
                reach = Some(ivs[i].hi().clone());
            }
        }
    }
    for c in &mut comps {
        c.sort_unstable();
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

pub fn components_at(xs: &[RealName], p: Precision) -> Vec<Vec<usize>> {
    overlap_components(&xs.iter().map(|x| x.interval(p)).collect::<Vec<_>>())
}

/// Classes of equal entries given their number.
pub fn partition_classes(xs: &[RealName], card: usize, fuel: &Fuel) -> Result<Vec<Vec<usize>>> {
    for p in 0..=fuel.max_precision() {
        fuel.tick()?;
        let comps = components_at(xs, p);
        if comps.len() > card {
            return Err(Error::ClusterOvershoot { observed: comps.len(), advised: card });
        }
        if comps.len() == card {
            return Ok(comps);
        }
    }
    Err(Error::fuel("clusters never separated into the advised number"))
}

/// Running maximum of the component count over precisions `0..=n`.
pub fn card_lower(xs: &[RealName], n: Precision) -> usize {
    (0..=n).map(|p| components_at(xs, p).len()).max().unwrap_or(0)
}

/// One representative per class, the member with the least index.
pub fn distinct_members(xs: &[RealName], card: usize, fuel: &Fuel) -> Result<Vec<RealName>> {
    Ok(partition_classes(xs, card, fuel)?.iter().map(|c| xs[c[0]].clone()).collect())
}
