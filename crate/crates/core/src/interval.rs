//! Closed rational intervals with outward-exact arithmetic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::rational::{self, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(q: Rational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    /// `[center - radius, center + radius]`.
    pub fn around(center: &Rational, radius: &Rational) -> Self {
        debug_assert!(!radius.is_negative());
        Interval { lo: center - radius, hi: center + radius }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }

    /// Largest absolute value attained.
    pub fn mag(&self) -> Rational {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Closed intervals sharing at least one point.
    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Every point of `self` is strictly less than every point of `other`.
    pub fn strictly_below(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: if self.lo < other.lo { self.lo.clone() } else { other.lo.clone() },
            hi: if self.hi > other.hi { self.hi.clone() } else { other.hi.clone() },
        }
    }

    pub fn scale(&self, s: &Rational) -> Interval {
        let a = &self.lo * s;
        let b = &self.hi * s;
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn square(&self) -> Interval {
        if self.contains_zero() {
            Interval { lo: Rational::zero(), hi: self.mag() * self.mag() }
        } else {
            let a = &self.lo * &self.lo;
            let b = &self.hi * &self.hi;
            if a <= b {
                Interval { lo: a, hi: b }
            } else {
                Interval { lo: b, hi: a }
            }
        }
    }

    /// Quotient; `None` when the divisor may vanish.
    pub fn checked_div(&self, d: &Interval) -> Option<Interval> {
        if d.contains_zero() {
            return None;
        }
        let inv = Interval::new(d.hi.recip(), d.lo.recip());
        Some(self * &inv)
    }

    /// Enclosure of the square root of a non-negative interval, endpoints
    /// rounded outward to multiples of `2^-bits`.
    pub fn sqrt(&self, bits: u32) -> Interval {
        assert!(!self.lo.is_negative(), "sqrt of interval reaching below zero");
        let (lo, _) = rational::sqrt_bounds(&self.lo, bits);
        let (_, hi) = rational::sqrt_bounds(&self.hi, bits);
        Interval { lo, hi }
    }

    /// Widen endpoints to multiples of `2^-bits`.
    pub fn round_out(&self, bits: u32) -> Interval {
        Interval { lo: rational::round_down(&self.lo, bits), hi: rational::round_up(&self.hi, bits) }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", rational::format_rational(&self.lo), rational::format_rational(&self.hi))
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let products = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if *p < lo {
                lo = p.clone();
            }
            if *p > hi {
                hi = p.clone();
            }
        }
        Interval { lo, hi }
    }
}
