//! Text formats shared by the command line and the C ABI.
//!
//! Tuple: whitespace-separated rationals. Matrix: `rows cols`, then the
//! entries row-major. Points: `N d`, then `N` rows of `d` rationals.
//! Function: the word `pwl`, then `x y` breakpoint pairs.

use crate::error::{Error, Result};
use crate::exact::RatMatrix;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::rootfind::PiecewiseLinear;

fn tokens(text: &str) -> impl Iterator<Item = &str> {
    text.split_whitespace()
}

fn parse_count(tok: Option<&str>, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::input(format!("missing {what}")))?;
    tok.parse().map_err(|_| Error::input(format!("malformed {what} `{tok}`")))
}

fn take_rationals<'a>(it: impl Iterator<Item = &'a str>, count: usize, what: &str) -> Result<Vec<Rational>> {
    let out = it.take(count).map(parse_rational).collect::<Result<Vec<_>>>()?;
    if out.len() != count {
        return Err(Error::input(format!("{what} has {} of {count} entries", out.len())));
    }
    Ok(out)
}

fn expect_end<'a>(mut it: impl Iterator<Item = &'a str>, what: &str) -> Result<()> {
    match it.next() {
        Some(extra) => Err(Error::input(format!("trailing token `{extra}` after {what}"))),
        None => Ok(()),
    }
}

pub fn parse_tuple(text: &str) -> Result<Vec<Rational>> {
    tokens(text).map(parse_rational).collect()
}

pub fn parse_matrix(text: &str) -> Result<RatMatrix> {
    let mut it = tokens(text);
    let rows = parse_count(it.next(), "row count")?;
    let cols = parse_count(it.next(), "column count")?;
    let entries = take_rationals(&mut it, rows * cols, "matrix")?;
    expect_end(it, "matrix")?;
    let data: Vec<Vec<Rational>> = if cols == 0 { vec![Vec::new(); rows] } else { entries.chunks(cols).map(<[_]>::to_vec).collect() };
    if rows == 0 {
        return Ok(RatMatrix::zeros(0, cols));
    }
    RatMatrix::from_rows(data)
}

pub fn parse_points(text: &str) -> Result<Vec<Vec<Rational>>> {
    let mut it = tokens(text);
    let n = parse_count(it.next(), "point count")?;
    let d = parse_count(it.next(), "dimension")?;
    if d == 0 {
        return Err(Error::input("points need dimension at least 1"));
    }
    let flat = take_rationals(&mut it, n * d, "point list")?;
    expect_end(it, "point list")?;
    Ok(flat.chunks(d).map(<[_]>::to_vec).collect())
}

pub fn parse_pwl(text: &str) -> Result<PiecewiseLinear> {
    let mut it = tokens(text);
    if it.next() != Some("pwl") {
        return Err(Error::input("function file must start with `pwl`"));
    }
    let flat = it.map(parse_rational).collect::<Result<Vec<_>>>()?;
    if flat.len() % 2 != 0 {
        return Err(Error::input("breakpoints come in pairs"));
    }
    PiecewiseLinear::new(flat.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect())
}

pub fn format_row(row: &[Rational]) -> String {
    row.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

pub fn format_tuple(xs: &[Rational]) -> String {
    xs.iter().map(|x| format_rational(x) + "\n").collect()
}

pub fn format_matrix(m: &RatMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        out += &format_row(m.row(i));
        out.push('\n');
    }
    out
}

pub fn format_points(points: &[Vec<Rational>]) -> String {
    let d = points.first().map_or(0, Vec::len);
    let mut out = format!("{} {d}\n", points.len());
    for p in points {
        out += &format_row(p);
        out.push('\n');
    }
    out
}

pub fn format_pwl(f: &PiecewiseLinear) -> String {
    let mut out = String::from("pwl\n");
    for (x, y) in f.points() {
        out += &format!("{} {}\n", format_rational(x), format_rational(y));
    }
    out
}
