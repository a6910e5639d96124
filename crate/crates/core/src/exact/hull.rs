use std::cmp::Ordering;

use num_traits::Signed;

use crate::rational::Rational;

pub type Point2 = (Rational, Rational);

fn cross(o: &Point2, a: &Point2, b: &Point2) -> Rational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Indices of the hull vertices in counter-clockwise order, starting from
/// the lexicographically smallest point. Points interior to an edge are not
/// vertices.
pub fn hull2d_cycle(points: &[Point2]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| match points[i].0.cmp(&points[j].0) {
        Ordering::Equal => points[i].1.cmp(&points[j].1),
        o => o,
    });
    order.dedup_by(|a, b| points[*a] == points[*b]);
    if order.len() <= 2 {
        return order;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        while lower.len() >= 2 && !cross(&points[lower[lower.len() - 2]], &points[lower[lower.len() - 1]], &points[i]).is_positive() {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2 && !cross(&points[upper[upper.len() - 2]], &points[upper[upper.len() - 1]], &points[i]).is_positive() {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Indices of the extreme points of the convex hull, ascending.
pub fn hull2d_exact(points: &[Point2]) -> Vec<usize> {
    let mut v = hull2d_cycle(points);
    v.sort_unstable();
    v
}
