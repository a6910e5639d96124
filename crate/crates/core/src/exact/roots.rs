//! Real root isolation for polynomials whose roots are all real.
//!
//! Each isolated root is either an exact rational point `[r, r]` or an open
//! interval `(lo, hi)` whose endpoints are not roots and which holds exactly
//! one root of the square-free part, so that the square-free part changes
//! sign across it. Refinement preserves this shape.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::{self, Rational};

use super::poly::{sign_variations, RatPolynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: usize,
}

impl IsolatedRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }
}

#[derive(Debug, Clone)]
pub struct RootIsolation {
    squarefree: RatPolynomial,
    roots: Vec<IsolatedRoot>,
}

impl RootIsolation {
    pub fn new(p: &RatPolynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::PreconditionViolated("root isolation of the zero polynomial".into()));
        }
        let factors = p.square_free_factors();
        let g = factors.iter().fold(RatPolynomial::one(), |acc, (a, _)| acc.mul(a));
        let deg = g.degree().unwrap_or(0);
        if deg == 0 {
            return Ok(RootIsolation { squarefree: g, roots: Vec::new() });
        }
        let chain = g.sturm_sequence();
        let b = g.cauchy_bound();
        let lo = -b.clone();
        let total = sign_variations(&chain, &lo) - sign_variations(&chain, &b);
        if total < deg {
            return Err(Error::PreconditionViolated(format!(
                "polynomial has {total} real roots but its square-free part has degree {deg}"
            )));
        }
        let mut out = Vec::with_capacity(deg);
        isolate(&g, &chain, lo, b, total, &mut out);
        out.sort_by(|a, b| a.0.cmp(&b.0));
        let roots = out
            .into_iter()
            .map(|(lo, hi)| {
                let multiplicity = multiplicity_of(&factors, &lo, &hi);
                IsolatedRoot { lo, hi, multiplicity }
            })
            .collect();
        Ok(RootIsolation { squarefree: g, roots })
    }

    pub fn roots(&self) -> &[IsolatedRoot] {
        &self.roots
    }

    pub fn into_roots(self) -> Vec<IsolatedRoot> {
        self.roots
    }

    /// Bisect every open isolating interval until its width is at most `width`.
    pub fn refine_to(&mut self, width: &Rational) {
        let g = &self.squarefree;
        for root in &mut self.roots {
            while !root.is_exact() && &root.width() > width {
                let m = root.mid();
                let sm = g.sign_at(&m);
                if sm == 0 {
                    root.lo = m.clone();
                    root.hi = m;
                } else if sm == g.sign_at(&root.lo) {
                    root.lo = m;
                } else {
                    root.hi = m;
                }
            }
        }
    }
}

pub fn real_root_isolation(p: &RatPolynomial) -> Result<Vec<IsolatedRoot>> {
    Ok(RootIsolation::new(p)?.into_roots())
}

fn count(chain: &[RatPolynomial], a: &Rational, b: &Rational) -> usize {
    sign_variations(chain, a) - sign_variations(chain, b)
}

/// Split `(a, b)` (endpoints non-roots, `n` roots inside) until every piece
/// holds one root.
fn isolate(g: &RatPolynomial, chain: &[RatPolynomial], a: Rational, b: Rational, n: usize, out: &mut Vec<(Rational, Rational)>) {
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push((a, b));
        return;
    }
    let m = (&a + &b) / rational::int(2);
    if g.sign_at(&m).is_zero() {
        // find a punctured neighbourhood of m free of other roots
        let mut delta = (&b - &a) / rational::int(4);
        loop {
            let l = &m - &delta;
            let r = &m + &delta;
            if !g.sign_at(&l).is_zero() && !g.sign_at(&r).is_zero() && count(chain, &l, &r) == 1 {
                let left = count(chain, &a, &l);
                let right = count(chain, &r, &b);
                isolate(g, chain, a, l, left, out);
                out.push((m.clone(), m));
                isolate(g, chain, r, b, right, out);
                return;
            }
            delta /= rational::int(2);
        }
    }
    let left = count(chain, &a, &m);
    isolate(g, chain, a, m.clone(), left, out);
    isolate(g, chain, m, b, n - left, out);
}

fn multiplicity_of(factors: &[(RatPolynomial, usize)], lo: &Rational, hi: &Rational) -> usize {
    for (f, mult) in factors {
        let sl = f.sign_at(lo);
        if lo == hi {
            if sl == 0 {
                return *mult;
            }
        } else if sl != 0 && sl != f.sign_at(hi) {
            return *mult;
        }
    }
    unreachable!("isolated root belongs to no square-free factor")
}

/// Rational roots among the isolated roots of `p`, with multiplicities.
///
/// A rational root of the primitive integer form of a factor has a
/// denominator dividing its leading coefficient, so narrowing the interval
/// below that spacing leaves at most two candidates to test exactly.
pub fn rational_roots(p: &RatPolynomial) -> Result<Vec<(Rational, usize)>> {
    let mut out = Vec::new();
    for (factor, mult) in p.square_free_factors() {
        let lead = integer_leading(&factor);
        let mut iso = RootIsolation::new(&factor)?;
        let spacing = Rational::new(One::one(), lead.clone());
        iso.refine_to(&(&spacing / rational::int(2)));
        for root in iso.roots() {
            if root.is_exact() {
                out.push((root.lo.clone(), mult));
                continue;
            }
            let base = rational::floor(&(&root.lo * Rational::from_integer(lead.clone())));
            for off in 0..=2 {
                let cand = Rational::new(&base + off, lead.clone());
                if cand > root.lo && cand < root.hi && factor.eval(&cand).is_zero() {
                    out.push((cand, mult));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Leading coefficient of the primitive integer multiple of `p`.
fn integer_leading(p: &RatPolynomial) -> BigInt {
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    (ints.last().expect("nonzero polynomial") / g).abs()
}
