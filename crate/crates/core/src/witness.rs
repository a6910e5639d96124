//! Exact fixture generators: families of inputs that are close to each
//! other yet force different outputs, used by the adversary and separation
//! suites.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{collinear, dot, orthogonalize, rational_roots, RatMatrix, RatVector};
use crate::name::RealName;
use crate::rational::{int, pow2, ratio, Rational};
use crate::rootfind::{plateau, PiecewiseLinear};

fn check_stages(ns: &[u64], least: u64) -> Result<()> {
    match ns.iter().find(|&&n| n < least) {
        Some(n) => Err(Error::input(format!("stage length {n} is below {least}"))),
        None => Ok(()),
    }
}

fn inv(n: u64) -> Rational {
    Rational::new(BigInt::one(), n.into())
}

/// Point of `R^d` with entries `s_1, ..., s_k, s_k, ..., s_k, 0` where
/// `s_l = 1/n_1 + ... + 1/n_l`; distinct-value count is `k + 1`.
pub fn card_flag(d: usize, ns: &[u64]) -> Result<Vec<Rational>> {
    if d == 0 || ns.len() > d - 1 {
        return Err(Error::input(format!("{} stages do not fit into dimension {d}", ns.len())));
    }
    check_stages(ns, 1)?;
    let mut out: Vec<Rational> = Vec::with_capacity(d);
    let mut s = Rational::zero();
    for &n in ns {
        s += inv(n);
        out.push(s.clone());
    }
    out.resize(d - 1, s);
    out.push(Rational::zero());
    Ok(out)
}

/// Diagonal `rows x cols` matrix of rank `k` whose `l`-th diagonal entry is
/// the tail sum `1/n_l + ... + 1/n_k`.
pub fn rank_flag(rows: usize, cols: usize, ns: &[u64]) -> Result<RatMatrix> {
    if ns.len() > rows.min(cols) {
        return Err(Error::input(format!("{} stages exceed the rank bound of a {rows}x{cols} matrix", ns.len())));
    }
    check_stages(ns, 1)?;
    let mut m = RatMatrix::zeros(rows, cols);
    let mut tail = Rational::zero();
    for (l, &n) in ns.iter().enumerate().rev() {
        tail += inv(n);
        m.set(l, l, tail.clone());
    }
    Ok(m)
}

fn adic_terms(signs: &[i8], ns: &[u64]) -> Result<Vec<(u64, Rational)>> {
    if signs.len() != ns.len() {
        return Err(Error::input("signs and stage lengths differ in length"));
    }
    check_stages(ns, 2)?;
    if signs.iter().any(|s| s.abs() != 1) {
        return Err(Error::input("signs must be +1 or -1"));
    }
    let mut total = 0u64;
    ns.iter()
        .zip(signs)
        .map(|(&n, &s)| {
            total = total.checked_add(n).filter(|&t| t < 1 << 24).ok_or_else(|| Error::input("stage lengths too large"))?;
            Ok((total, int(s as i64) * pow2(-(total as i64))))
        })
        .collect()
}

/// Value `1/2 + s_1 2^-N_1 + s_2 2^-N_2 + ...` with `N_j = n_1 + ... + n_j`.
pub fn adic_flag_value(signs: &[i8], ns: &[u64]) -> Result<Rational> {
    Ok(adic_terms(signs, ns)?.into_iter().fold(ratio(1, 2), |acc, (_, t)| acc + t))
}

/// Name of [`adic_flag_value`] whose queries are constant `1/2` up to
/// precision `N_1 - 1` and pick up one term per stage afterwards.
pub fn adic_flag_name(signs: &[i8], ns: &[u64]) -> Result<RealName> {
    let terms = adic_terms(signs, ns)?;
    Ok(RealName::from_fn(move |p| {
        terms.iter().filter(|(at, _)| *at <= p as u64).fold(ratio(1, 2), |acc, (_, t)| acc + t)
    }))
}

/// One perturbation per orthogonal kernel vector `z_i`:
/// `A + delta_i w z_i^T` with `w` outside the range of `A` and `delta_i`
/// scaled so the max-entry distance to `A` is exactly `delta`.
pub fn lineq_perturb(a: &RatMatrix, delta: &Rational) -> Result<Vec<RatMatrix>> {
    let (n, m) = a.shape();
    let r = a.rank();
    if r >= n.min(m) {
        return Err(Error::PreconditionViolated(format!("rank {r} is already full for a {n}x{m} matrix")));
    }
    if !delta.is_positive() {
        return Err(Error::input("delta must be positive"));
    }
    let zs = orthogonalize(&a.kernel());
    let w = (0..n)
        .map(|i| {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            e
        })
        .find(|e| {
            let aug = RatMatrix::from_fn(n, m + 1, |row, col| if col < m { a.get(row, col).clone() } else { e[row].clone() });
            aug.rank() > r
        })
        .expect("a proper range misses some standard basis vector");
    Ok(zs
        .iter()
        .map(|z| {
            let scale = delta / crate::rational::max_abs(z);
            a.add(&RatMatrix::outer(&w, z).scale(&scale))
        })
        .collect())
}

/// Split an eigenspace: `A + eps w w^T / (w^T w)` moves `w` to eigenvalue
/// `lambda + eps` and fixes `w^perp`.
pub fn diag_break(a: &RatMatrix, lambda: &Rational, w: &[Rational], eps: &Rational) -> Result<RatMatrix> {
    if !a.is_symmetric() {
        return Err(Error::PreconditionViolated("matrix is not symmetric".into()));
    }
    if w.len() != a.cols() || w.iter().all(Zero::is_zero) {
        return Err(Error::PreconditionViolated("w must be a non-zero vector of matching length".into()));
    }
    if a.mul_vec(w) != w.iter().map(|x| x * lambda).collect::<RatVector>() {
        return Err(Error::PreconditionViolated("w is not an eigenvector for lambda".into()));
    }
    if !eps.is_positive() {
        return Err(Error::PreconditionViolated("eps must be positive".into()));
    }
    Ok(a.add(&RatMatrix::outer(w, w).scale(&(eps / dot(w, w)))))
}

fn check_bits(bits: &[u8], what: &str) -> Result<()> {
    if bits.iter().any(|&b| b > 1) {
        return Err(Error::input(format!("{what} entries must be 0 or 1")));
    }
    Ok(())
}

/// Orthogonal basis of `W^(js)_(is)` in `R^(2^d)`: start from the
/// standard basis; at each level `j = 0` keeps the first (`i = 0`) or
/// second (`i = 1`) half of the current basis, while `j = 1` keeps the sums
/// `b_t + b_(m+t)` (`i = 0`) or the differences `b_t - b_(m+t)` (`i = 1`).
pub fn evec_subspaces(d: u32, is: &[u8], js: &[u8]) -> Result<Vec<RatVector>> {
    if is.len() != js.len() || is.len() > d as usize {
        return Err(Error::input(format!("selection of depth {} is invalid for d = {d}", is.len())));
    }
    if d > 12 {
        return Err(Error::input("dimension 2^d is too large"));
    }
    check_bits(is, "i")?;
    check_bits(js, "j")?;
    let dim = 1usize << d;
    let mut basis: Vec<RatVector> = (0..dim)
        .map(|t| {
            let mut e = vec![Rational::zero(); dim];
            e[t] = Rational::one();
            e
        })
        .collect();
    for (&i, &j) in is.iter().zip(js) {
        let m = basis.len() / 2;
        basis = match (j, i) {
            (0, 0) => basis[..m].to_vec(),
            (0, _) => basis[m..].to_vec(),
            (_, i) => (0..m)
                .map(|t| {
                    let sign = if i == 0 { Rational::one() } else { -Rational::one() };
                    basis[t].iter().zip(&basis[m + t]).map(|(x, y)| x + &sign * y).collect()
                })
                .collect(),
        };
    }
    Ok(basis)
}

fn all_bits(k: usize) -> Vec<Vec<u8>> {
    (0..1usize << k).map(|mask| (0..k).map(|l| ((mask >> (k - 1 - l)) & 1) as u8).collect()).collect()
}

/// Whether every selection `U_i in {W^(j)_i : j}` over all `i in {0,1}^k`
/// has trivial intersection. Depth-first over `i`, pruning as soon as the
/// running intersection is `{0}`.
pub fn evec_intersection_law(d: u32, k: usize) -> Result<bool> {
    let idx = all_bits(k);
    let spaces: Vec<Vec<Vec<RatVector>>> = idx
        .iter()
        .map(|i| idx.iter().map(|j| evec_subspaces(d, i, j)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    fn dfs(spaces: &[Vec<Vec<RatVector>>], level: usize, current: &[RatVector]) -> bool {
        if current.is_empty() {
            return true;
        }
        if level == spaces.len() {
            return false;
        }
        spaces[level].iter().all(|w| dfs(spaces, level + 1, &crate::exact::intersect_spans(current, w)))
    }
    let dim = 1usize << d;
    let whole: Vec<RatVector> = (0..dim)
        .map(|t| {
            let mut e = vec![Rational::zero(); dim];
            e[t] = Rational::one();
            e
        })
        .collect();
    Ok(dfs(&spaces, 0, &whole))
}

/// Orthogonal projector onto the span of an orthogonal family.
pub fn projector(basis: &[RatVector]) -> RatMatrix {
    let dim = basis.first().map_or(0, Vec::len);
    basis
        .iter()
        .fold(RatMatrix::zeros(dim, dim), |acc, b| acc.add(&RatMatrix::outer(b, b).scale(&(Rational::one() / dot(b, b)))))
}

/// Level weights `eta_l = g_(l-1) / (4 n_l)` with `g_0 = 1`, `g_l = 2 eta_l`;
/// each weight exceeds the sum of all later ones.
fn evec_weights(ns: &[u64]) -> Vec<Rational> {
    let mut g = Rational::one();
    ns.iter()
        .map(|&n| {
            let eta = &g * inv(4 * n);
            g = int(2) * &eta;
            eta
        })
        .collect()
}

/// `sum_i mu_i P(W^(js)_i)` with `mu_i = sum_l i_l eta_l`; the eigenspaces
/// are exactly the `W^(js)_i`, with pairwise distinct eigenvalues.
pub fn evec_break(d: u32, js: &[u8], ns: &[u64]) -> Result<RatMatrix> {
    if js.len() != ns.len() {
        return Err(Error::input("j selection and stage lengths differ in length"));
    }
    check_stages(ns, 1)?;
    let eta = evec_weights(ns);
    let dim = 1usize << d.min(12);
    let mut out = RatMatrix::zeros(dim, dim);
    for i in all_bits(js.len()) {
        let mu = i.iter().zip(&eta).filter(|(b, _)| **b == 1).fold(Rational::zero(), |acc, (_, e)| acc + e);
        if mu.is_zero() {
            continue;
        }
        out = out.add(&projector(&evec_subspaces(d, &i, js)?).scale(&mu));
    }
    Ok(out)
}

fn bump(points: [(Rational, Rational); 4]) -> PiecewiseLinear {
    let mut pts = vec![(int(0), int(0))];
    pts.extend(points);
    pts.push((int(1), int(0)));
    PiecewiseLinear::new(pts).expect("bump breakpoints lie strictly inside (0, 1)")
}

/// Hovering function `f^(is)_(ns)` and its zero interval. Starting from
/// the plateau on `[1/3, 2/3]`, each stage keeps the left (`i = 0`) or
/// right (`i = 1`) third of the current zero interval by adding a bump of
/// height `3^-j / n_j` over the rest of it.
pub fn intermed_flag(is: &[u8], ns: &[u64]) -> Result<(PiecewiseLinear, (Rational, Rational))> {
    if is.len() != ns.len() {
        return Err(Error::input("i selection and stage lengths differ in length"));
    }
    check_bits(is, "i")?;
    check_stages(ns, 1)?;
    let mut f = plateau();
    let (mut a, mut b) = (ratio(1, 3), ratio(2, 3));
    let mut third_pow = Rational::one();
    for (&i, &n) in is.iter().zip(ns) {
        third_pow /= int(3);
        let eta = &third_pow * inv(n);
        let l3 = (&b - &a) / int(3);
        if i == 0 {
            f = f.add(&bump([
                (&a + &l3, int(0)),
                (&a + int(2) * &l3, eta.clone()),
                (b.clone(), eta),
                (&b + &l3, int(0)),
            ]));
            b = &a + &l3;
        } else {
            f = f.add(&bump([(&a - &l3, int(0)), (a.clone(), -eta.clone()), (&a + &l3, -eta), (&b - &l3, int(0))]));
            a = &b - &l3;
        }
    }
    Ok((f, (a, b)))
}

/// Cantor-style pairing `<x, y> = 2^x (1 + 2y)`, a bijection onto the
/// positive integers.
pub fn borel_pair(x: u64, y: u64) -> BigInt {
    (BigInt::one() << x) * (BigInt::one() + BigInt::from(2) * BigInt::from(y))
}

const BOREL_LIMIT: u64 = 1 << 20;

/// `sum_(i = 1..k) 2^-<i, n_i>`.
pub fn borel_encode(ns: &[u64]) -> Result<Rational> {
    ns.iter().enumerate().try_fold(Rational::zero(), |acc, (i, &n)| {
        let e = borel_pair(i as u64 + 1, n);
        match u64::try_from(&e) {
            Ok(e) if e <= BOREL_LIMIT => Ok(acc + pow2(-(e as i64))),
            _ => Err(Error::input("encoding exponent too large")),
        }
    })
}

/// `1/k` on encodings of length-`k` sequences, `0` everywhere else
/// (including `0`, the encoding of the empty sequence).
pub fn borel_f(x: &Rational) -> Rational {
    let den = x.denom();
    if !x.is_positive() || x >= &int(1) || den.trailing_zeros() != Some(den.bits() - 1) {
        return Rational::zero();
    }
    let depth = den.bits() - 1;
    let num = x.numer();
    let mut seen: Vec<bool> = Vec::new();
    for t in 0..num.bits() {
        if !num.bit(t) {
            continue;
        }
        let p = depth - t;
        let i = p.trailing_zeros() as usize;
        if i == 0 {
            return Rational::zero();
        }
        if seen.len() < i {
            seen.resize(i, false);
        }
        if std::mem::replace(&mut seen[i - 1], true) {
            return Rational::zero();
        }
    }
    if seen.iter().all(|&s| s) {
        inv(seen.len() as u64)
    } else {
        Rational::zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommonEigvec {
    CommonBasisPossible,
    Impossible,
}

fn simple_eigenvectors(m: &RatMatrix) -> Result<Vec<RatVector>> {
    let roots = rational_roots(&m.charpoly())?;
    Ok(roots
        .into_iter()
        .filter(|(_, mult)| *mult == 1)
        .filter_map(|(lambda, _)| {
            let k = m.shift(&lambda).kernel();
            (k.len() == 1).then(|| k.into_iter().next().expect("one vector"))
        })
        .collect())
}

/// Exact test on simple rational eigenvalues: eigenvectors `v` of `B` and
/// `w` of `C` that are neither collinear nor orthogonal rule out a common
/// eigenbasis.
pub fn common_eigvec_check(b: &RatMatrix, c: &RatMatrix) -> Result<CommonEigvec> {
    for m in [b, c] {
        if !m.is_square() || !m.is_symmetric() {
            return Err(Error::PreconditionViolated("both matrices must be symmetric".into()));
        }
    }
    if b.shape() != c.shape() {
        return Err(Error::PreconditionViolated("matrices differ in size".into()));
    }
    let (vs, ws) = (simple_eigenvectors(b)?, simple_eigenvectors(c)?);
    if vs.is_empty() || ws.is_empty() {
        return Err(Error::PreconditionViolated("no simple rational eigenvalue".into()));
    }
    let clash = vs.iter().any(|v| ws.iter().any(|w| !collinear(v, w) && !dot(v, w).is_zero()));
    Ok(if clash { CommonEigvec::Impossible } else { CommonEigvec::CommonBasisPossible })
}
