//! Linear-algebra advice algorithms over matrix names: rank from below,
//! kernels with rank advice, eigenvalue tuples, diagonalization with
//! spectrum-count advice and single eigenvectors with logarithmic advice.
//!
//! Discrete choices (pivot minors, eigenvalue classes) are made once by a
//! deterministic dovetail and then reused at every later precision, so each
//! emitted name is single-valued.

use std::sync::{Arc, Mutex};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::basics::{components_at, find_class, partition_classes};
use crate::error::{Error, Result};
use crate::exact::{dot, rational_roots, RatMatrix, RatPolynomial, RatVector, RootIsolation};
use crate::interval::Interval;
use crate::name::{Fuel, MatrixName, Precision, RealName, VectorName};
use crate::rational::{self, ceil_log2, int, pow2, Rational};
use crate::search::{dovetail, resolve_integer, running_max, BoundStream};

/// Exhaustive minor search is attempted only below this many minors.
const EXHAUSTIVE_MINORS: usize = 1024;

/// Enclosure of `det(M + E)` over all perturbations with `|E_ij| <= eps`.
///
/// Multilinearity in columns plus Hadamard's bound with column l1 norms
/// `s_j` gives `|det(M + E) - det(M)| <= prod(s_j + ceil(sqrt r) eps) - prod(s_j)`.
pub fn interval_det(center: &RatMatrix, eps: &Rational) -> Interval {
    let r = center.rows();
    assert_eq!(r, center.cols(), "interval determinant of a non-square matrix");
    let det = center.determinant();
    if r == 0 || eps.is_zero() {
        return Interval::point(det);
    }
    let root = num_integer::Roots::sqrt(&r);
    let c = int(if root * root == r { root } else { root + 1 } as i64);
    let slack = &c * eps;
    let (mut wide, mut tight) = (Rational::one(), Rational::one());
    for j in 0..r {
        let s = (0..r).fold(Rational::zero(), |acc, i| acc + center.get(i, j).abs());
        wide *= &s + &slack;
        tight *= s;
    }
    Interval::around(&det, &(wide - tight))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn sorted_pivot_minor(pivots: &[(usize, usize)], r: usize) -> (Vec<usize>, Vec<usize>) {
    let mut rows: Vec<usize> = pivots[..r].iter().map(|p| p.0).collect();
    let mut cols: Vec<usize> = pivots[..r].iter().map(|p| p.1).collect();
    rows.sort_unstable();
    cols.sort_unstable();
    (rows, cols)
}

fn minor_certified(m: &RatMatrix, rows: &[usize], cols: &[usize], eps: &Rational) -> bool {
    !interval_det(&m.submatrix(rows, cols), eps).contains_zero()
}

/// Largest `r` with a certified non-singular `r x r` minor of a matrix
/// known to within `eps` entrywise.
pub fn certified_rank(m: &RatMatrix, eps: &Rational) -> usize {
    let pivots = m.complete_pivots();
    for r in (1..=pivots.len()).rev() {
        let (rows, cols) = sorted_pivot_minor(&pivots, r);
        if minor_certified(m, &rows, &cols, eps) {
            return r;
        }
        if binomial(m.rows(), r).saturating_mul(binomial(m.cols(), r)) <= EXHAUSTIVE_MINORS {
            let found = (0..m.rows())
                .combinations(r)
                .cartesian_product((0..m.cols()).combinations(r).collect::<Vec<_>>())
                .any(|(rs, cs)| minor_certified(m, &rs, &cs, eps));
            if found {
                return r;
            }
        }
    }
    0
}

/// Lower bound on `rank(A)` from precisions `0..=n`; nondecreasing in `n`.
pub fn rank_lower(a: &MatrixName, n: Precision) -> usize {
    (0..=n).map(|p| certified_rank(&a.query(p), &pow2(-(p as i64)))).max().unwrap_or(0)
}

/// Memoized stream of [`rank_lower`] values.
pub fn rank_lower_stream(a: &MatrixName) -> BoundStream {
    let a = a.clone();
    running_max(move |p| certified_rank(&a.query(p as Precision), &pow2(-(p as i64))) as i64)
}

/// Exact rank from the lower stream and an advised upper stream.
pub fn rank_with_upper(a: &MatrixName, upper: &BoundStream, fuel: &Fuel) -> Result<usize> {
    Ok(resolve_integer(&rank_lower_stream(a), upper, fuel)? as usize)
}

/// Rows and columns of a certified non-singular minor, frozen for reuse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotCommitment {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub precision: Precision,
}

impl PivotCommitment {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Kernel basis names together with the validated approximations.
#[derive(Debug, Clone)]
pub struct KernelBasis {
    pub vectors: Vec<VectorName>,
    /// Approximations at the requested precision, free coordinates exact.
    pub values: Vec<RatVector>,
    pub commitment: PivotCommitment,
    /// Input approximant used for the residual check.
    pub approximant: RatMatrix,
    pub input_precision: Precision,
}

/// Guard bits covering the row-sum norm of every approximant.
fn guard_bits(a: &MatrixName) -> u32 {
    let bound = a.query(0).row_sum_norm() + int(2 * a.cols() as i64 + 1);
    rational::ceil_log2_rational(&bound).max(1) as u32
}

/// Interval Cramer solution for each free column: free coordinate 1, other
/// free coordinates 0, pivot coordinates solving the committed minor.
fn cramer_solve(aj: &RatMatrix, commit: &PivotCommitment, eps: &Rational) -> Option<Vec<Vec<Interval>>> {
    let m = aj.cols();
    let minor = aj.submatrix(&commit.rows, &commit.cols);
    let den = interval_det(&minor, eps);
    if den.contains_zero() {
        return None;
    }
    let free: Vec<usize> = (0..m).filter(|c| !commit.cols.contains(c)).collect();
    let mut out = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v: Vec<Interval> = (0..m).map(|c| Interval::point(int((c == f) as i64))).collect();
        for (pos, &c) in commit.cols.iter().enumerate() {
            let mut replaced = minor.clone();
            for (ri, &row) in commit.rows.iter().enumerate() {
                replaced.set(ri, pos, -aj.get(row, f));
            }
            v[c] = interval_det(&replaced, eps).checked_div(&den)?;
        }
        out.push(v);
    }
    Some(out)
}

fn max_width(vs: &[Vec<Interval>]) -> Rational {
    vs.iter().flatten().map(Interval::width).fold(Rational::zero(), |a, w| if w > a { w } else { a })
}

fn round_mids(v: &[Interval], bits: u32) -> RatVector {
    v.iter().map(|x| rational::round_down(&x.mid(), bits)).collect()
}

fn residual(a: &RatMatrix, v: &[Rational]) -> Rational {
    rational::max_abs(&a.mul_vec(v))
}

/// Approximation of the committed kernel vector `free_index` to within
/// `2^-n`, refining without a step budget.
fn kernel_query(a: &MatrixName, commit: &PivotCommitment, g: u32, free_index: usize, n: Precision) -> RatVector {
    let target = pow2(-((n + g + 1) as i64));
    let mut j = commit.precision.max(n + g + 2);
    loop {
        if let Some(iv) = cramer_solve(&a.query(j), commit, &pow2(-(j as i64))) {
            if max_width(&iv) <= target {
                return round_mids(&iv[free_index], n + g + 2);
            }
        }
        j += 4;
    }
}

/// Names of a kernel basis of `A` given `r = rank(A)`.
///
/// False advice shows up as a failure: too large a rank leaves no
/// certifiable minor (fuel exhaustion), too small a rank leaves a residual
/// that does not vanish (advice suspect).
pub fn kernel_with_rank(a: &MatrixName, r: usize, k: Precision, fuel: &Fuel) -> Result<KernelBasis> {
    let (rows, cols) = a.shape();
    if r > rows.min(cols) {
        return Err(Error::input(format!("rank {r} impossible for a {rows}x{cols} matrix")));
    }
    let commitment = if r == 0 {
        PivotCommitment { rows: Vec::new(), cols: Vec::new(), precision: 0 }
    } else {
        let candidates = (0..=fuel.max_precision()).map(|c| {
            let pivots = a.query(c).complete_pivots();
            (pivots.len() >= r).then(|| sorted_pivot_minor(&pivots, r))
        });
        let found = dovetail(
            candidates,
            |cand, p| match cand {
                Some((rs, cs)) => minor_certified(&a.query(p), rs, cs, &pow2(-(p as i64))),
                None => false,
            },
            fuel,
        )?;
        let (rs, cs) = found.candidate.expect("verified candidate is a minor");
        PivotCommitment { rows: rs, cols: cs, precision: found.precision }
    };

    let g = guard_bits(a);
    let free_count = cols - r;
    let strict = pow2(-(k as i64));
    let loose = int(cols as i64 + 1) * &strict;
    let target = pow2(-((k + g + 1) as i64));
    let mut j = commitment.precision.max(k + g + 2);
    let mut last: Option<(Rational, Vec<RatVector>, Precision, RatMatrix)> = None;
    while j <= k + g + fuel.max_precision() {
        fuel.tick()?;
        let aj = a.query(j);
        if let Some(iv) = cramer_solve(&aj, &commitment, &pow2(-(j as i64))) {
            if max_width(&iv) <= target {
                let values: Vec<RatVector> = iv.iter().map(|v| round_mids(v, k + g + 2)).collect();
                let res = values.iter().map(|v| residual(&aj, v)).fold(Rational::zero(), |a, r| if r > a { r } else { a });
                let done = res <= strict;
                last = Some((res, values, j, aj));
                if done {
                    break;
                }
            }
        }
        j += 4;
    }
    let Some((res, values, j, aj)) = last else {
        return Err(Error::fuel("kernel approximation never reached the requested width"));
    };
    if res > loose {
        return Err(Error::AdviceSuspect(format!(
            "kernel residual {} exceeds {} at input precision {j}",
            rational::format_rational(&res),
            rational::format_rational(&loose)
        )));
    }
    let vectors = (0..free_count)
        .map(|i| {
            let (a, c, v) = (a.clone(), commitment.clone(), values[i].clone());
            VectorName::from_fn(cols, move |n| if n <= k { v.clone() } else { kernel_query(&a, &c, g, i, n) })
        })
        .collect();
    Ok(KernelBasis { vectors, values, commitment, approximant: aj, input_precision: j })
}

/// Unit kernel vector with its validated approximation.
#[derive(Debug, Clone)]
pub struct LineqSolution {
    pub vector: VectorName,
    /// Approximation at the requested precision; its Euclidean norm is at
    /// least 1.
    pub value: RatVector,
    pub approximant: RatMatrix,
    pub input_precision: Precision,
}

/// `u / L` with `L` a lower bound of `|u|`, accurate to `2^-bits`.
fn normalize_below(u: &[Rational], bits: u32) -> RatVector {
    let (l, _) = rational::sqrt_bounds(&dot(u, u), bits);
    u.iter().map(|x| x / &l).collect()
}

/// Unit vector in `kernel(A)` given `r = rank(A) < cols`.
pub fn lineq_with_rank(a: &MatrixName, r: usize, k: Precision, fuel: &Fuel) -> Result<LineqSolution> {
    let cols = a.cols();
    if r >= cols {
        return Err(Error::PreconditionViolated(format!("rank {r} leaves no kernel in {cols} columns")));
    }
    let extra = ceil_log2(cols) + 4;
    let kb = kernel_with_rank(a, r, k + extra, fuel)?;
    // free coordinate 1 makes |u| >= 1, so the lower sqrt bound is >= 1
    let value = normalize_below(&kb.values[0], k + extra);
    let basis = kb.vectors[0].clone();
    let v = value.clone();
    let vector = VectorName::from_fn(cols, move |n| {
        if n <= k {
            v.clone()
        } else {
            normalize_below(&basis.query(n + extra), n + extra)
        }
    });
    Ok(LineqSolution { vector, value, approximant: kb.approximant, input_precision: kb.input_precision })
}

/// Sorted eigenvalues of a symmetric matrix name repeated by multiplicity,
/// as one tuple name plus per-component names.
#[derive(Debug, Clone)]
pub struct EigenTuple {
    pub tuple: VectorName,
    pub components: Vec<RealName>,
}

#[derive(Clone)]
enum Slot {
    Exact(Rational),
    Isolated(usize),
}

/// Exact spectrum of a rational symmetric matrix: rational roots exactly,
/// the rest as shared, progressively refined isolating intervals.
fn exact_spectrum(m: &RatMatrix) -> Result<EigenTuple> {
    let d = m.rows();
    let p = m.charpoly();
    let rats = rational_roots(&p)?;
    let mut q = p.clone();
    for (r, mult) in &rats {
        for _ in 0..*mult {
            q = q.exact_div(&RatPolynomial::linear_root(r));
        }
    }
    let mut iso = RootIsolation::new(&q)?;
    // shrink until no isolating interval holds a rational root, which fixes
    // the sorted position of every root
    loop {
        let clash = iso.roots().iter().any(|root| rats.iter().any(|(r, _)| &root.lo <= r && r <= &root.hi));
        if !clash {
            break;
        }
        let w = iso.roots().iter().map(|r| r.width()).max().expect("clash implies a root") / int(2);
        iso.refine_to(&w);
    }
    let mut slots: Vec<(Rational, usize, Slot)> = rats.iter().map(|(r, m)| (r.clone(), *m, Slot::Exact(r.clone()))).collect();
    for (i, root) in iso.roots().iter().enumerate() {
        slots.push((root.lo.clone(), root.multiplicity, Slot::Isolated(i)));
    }
    slots.sort_by(|a, b| a.0.cmp(&b.0));
    let layout: Vec<Slot> = slots.into_iter().flat_map(|(_, mult, s)| std::iter::repeat_n(s, mult)).collect();
    assert_eq!(layout.len(), d, "multiplicities must add up to the dimension");
    let layout = Arc::new(layout);
    let iso = Arc::new(Mutex::new(iso));
    let l = Arc::clone(&layout);
    let tuple = VectorName::from_fn(d, move |k| {
        let mut iso = iso.lock().expect("isolation lock poisoned");
        iso.refine_to(&pow2(-(k as i64 + 1)));
        l.iter()
            .map(|s| match s {
                Slot::Exact(r) => r.clone(),
                Slot::Isolated(i) => iso.roots()[*i].mid(),
            })
            .collect()
    });
    let components = layout
        .iter()
        .enumerate()
        .map(|(i, s)| match s {
            Slot::Exact(r) => RealName::exact(r.clone()),
            Slot::Isolated(_) => tuple.component(i),
        })
        .collect();
    Ok(EigenTuple { tuple, components })
}

fn symmetrized(m: &RatMatrix) -> RatMatrix {
    m.add(&m.transpose()).scale(&rational::ratio(1, 2))
}

fn check_symmetric(a: &MatrixName) -> Result<()> {
    if a.rows() != a.cols() {
        return Err(Error::input(format!("{}x{} matrix is not square", a.rows(), a.cols())));
    }
    if !a.is_symmetric() || !a.query(0).is_symmetric() {
        return Err(Error::input("matrix name is not symmetric"));
    }
    Ok(())
}

/// Eigenvalue tuple name. A query at `k` reads the input at
/// `n = k + ceil(log2(d + 1)) + 1`, so the Weyl bound `d 2^-n` plus the
/// isolation error stays below `2^-k`.
pub fn eigenvalue_tuple(a: &MatrixName) -> Result<EigenTuple> {
    check_symmetric(a)?;
    if let Some(m) = a.exact_value() {
        return exact_spectrum(m);
    }
    let d = a.rows();
    let a = a.clone();
    let tuple = VectorName::from_fn(d, move |k| {
        let n = k + ceil_log2(d + 1) + 1;
        let mut iso = RootIsolation::new(&symmetrized(&a.query(n)).charpoly()).expect("symmetric approximants have real spectra");
        iso.refine_to(&pow2(-(n as i64)));
        iso.roots().iter().flat_map(|r| std::iter::repeat_n(r.mid(), r.multiplicity)).collect()
    });
    let components = tuple.components();
    Ok(EigenTuple { tuple, components })
}

/// The sorted eigenvalue tuple at precision `k`.
pub fn eigenvalues_with_multiplicity(a: &MatrixName, k: Precision) -> Result<Vec<Rational>> {
    Ok(eigenvalue_tuple(a)?.tuple.query(k))
}

/// Orthonormal names from linearly independent ones.
#[derive(Debug, Clone)]
pub struct Orthonormal {
    pub vectors: Vec<VectorName>,
    pub values: Vec<RatVector>,
}

fn idot(u: &[Interval], v: &[Interval]) -> Interval {
    u.iter().zip(v).fold(Interval::point(Rational::zero()), |acc, (a, b)| &acc + &(a * b))
}

/// Classical Gram-Schmidt in interval arithmetic; `None` while some
/// residual norm is not certified positive.
fn interval_gram_schmidt(vs: &[Vec<Interval>], bits: u32) -> Option<Vec<Vec<Interval>>> {
    let mut es: Vec<Vec<Interval>> = Vec::with_capacity(vs.len());
    for v in vs {
        let mut u = v.clone();
        for e in &es {
            let c = idot(v, e);
            for (ui, ei) in u.iter_mut().zip(e) {
                *ui = &*ui - &(&c * ei);
            }
        }
        let n2 = idot(&u, &u);
        if !n2.is_positive() {
            return None;
        }
        let norm = n2.sqrt(bits);
        let e = u.iter().map(|x| x.checked_div(&norm).map(|q| q.round_out(bits))).collect::<Option<Vec<_>>>()?;
        es.push(e);
    }
    Some(es)
}

fn gs_at(vs: &[VectorName], p: Precision, n: Precision) -> Option<Vec<RatVector>> {
    let ivs: Vec<Vec<Interval>> = vs.iter().map(|v| v.intervals(p)).collect();
    let es = interval_gram_schmidt(&ivs, p + 4)?;
    (max_width(&es) <= pow2(-(n as i64 + 1))).then(|| es.iter().map(|e| round_mids(e, n + 2)).collect())
}

pub fn gram_schmidt_name(vs: &[VectorName], k: Precision, fuel: &Fuel) -> Result<Orthonormal> {
    let mut p = k + 2;
    let values = loop {
        if p > k + fuel.max_precision() {
            return Err(Error::fuel("Gram-Schmidt never certified independence at the requested width"));
        }
        fuel.tick()?;
        if let Some(vals) = gs_at(vs, p, k) {
            break vals;
        }
        p += 2;
    };
    let shared: Arc<Vec<VectorName>> = Arc::new(vs.to_vec());
    let vectors = (0..vs.len())
        .map(|i| {
            let (src, v, len) = (Arc::clone(&shared), values[i].clone(), vs[i].len());
            VectorName::from_fn(len, move |n| {
                if n <= k {
                    return v.clone();
                }
                let mut p = n + 2;
                loop {
                    if let Some(vals) = gs_at(&src, p, n) {
                        return vals[i].clone();
                    }
                    p += 2;
                }
            })
        })
        .collect();
    Ok(Orthonormal { vectors, values })
}

/// Validated eigenpairs: residuals and orthonormality defects at most
/// `4 d 2^-k`.
#[derive(Debug, Clone)]
pub struct Diagonalization {
    pub classes: Vec<Vec<usize>>,
    pub values: Vec<RealName>,
    pub vectors: Vec<VectorName>,
    pub approx_values: Vec<Rational>,
    pub approx_vectors: Vec<RatVector>,
}

/// Precision at which eigenpairs are computed so that a `2^-k` check has
/// room for `|A|` times the vector error.
fn internal_precision(a: &MatrixName, k: Precision) -> Precision {
    let bound = a.query(0).row_sum_norm() + int(2);
    k + rational::ceil_log2_rational(&bound).max(0) as u32 + 2
}

fn tolerance(d: usize, k: Precision) -> Rational {
    int(4 * d as i64) * pow2(-(k as i64))
}

/// Residual `|A v - lambda v|` of each pair, checked against `4 d 2^-k`
/// using approximations at precision `q`.
fn check_residuals(a: &MatrixName, values: &[RealName], vectors: &[VectorName], k: Precision, q: Precision) -> Result<()> {
    let aq = a.query(q);
    let tol = tolerance(a.rows(), k);
    for (lam, v) in values.iter().zip(vectors) {
        let (l, x) = (lam.query(q), v.query(q));
        let av = aq.mul_vec(&x);
        let res = rational::max_abs(&av.iter().zip(&x).map(|(y, xi)| y - &l * xi).collect::<Vec<_>>());
        if res > tol {
            return Err(Error::AdviceSuspect(format!("eigenpair residual {} above tolerance", rational::format_rational(&res))));
        }
    }
    Ok(())
}

fn check_orthonormal(vectors: &[VectorName], k: Precision, q: Precision) -> Result<()> {
    let d = vectors.first().map_or(0, VectorName::len);
    let tol = tolerance(d, k);
    let xs: Vec<RatVector> = vectors.iter().map(|v| v.query(q)).collect();
    for i in 0..xs.len() {
        if (dot(&xs[i], &xs[i]) - int(1)).abs() > tol {
            return Err(Error::AdviceSuspect(format!("vector {i} is not of unit length")));
        }
        for j in i + 1..xs.len() {
            if dot(&xs[i], &xs[j]).abs() > tol {
                return Err(Error::AdviceSuspect(format!("vectors {i} and {j} are not orthogonal")));
            }
        }
    }
    Ok(())
}

/// Orthonormal eigenbasis of a symmetric matrix given the number `t` of
/// distinct eigenvalues.
pub fn diag_with_count(a: &MatrixName, t: usize, k: Precision, fuel: &Fuel) -> Result<Diagonalization> {
    check_symmetric(a)?;
    let d = a.rows();
    if t == 0 || t > d {
        return Err(Error::input(format!("spectrum count {t} outside 1..={d}")));
    }
    let eig = eigenvalue_tuple(a)?;
    let classes = partition_classes(&eig.components, t, fuel)?;
    let q = internal_precision(a, k);
    let mut values = Vec::with_capacity(d);
    let mut vectors = Vec::with_capacity(d);
    for class in &classes {
        let lambda = &eig.components[class[0]];
        let kb = kernel_with_rank(&a.shifted(lambda), d - class.len(), q, fuel)?;
        let on = gram_schmidt_name(&kb.vectors, q, fuel)?;
        values.extend(std::iter::repeat_n(lambda.clone(), on.vectors.len()));
        vectors.extend(on.vectors);
    }
    check_residuals(a, &values, &vectors, k, q)?;
    check_orthonormal(&vectors, k, q)?;
    let approx_values = values.iter().map(|v| v.query(k)).collect();
    let approx_vectors = vectors.iter().map(|v| v.query(k)).collect();
    Ok(Diagonalization { classes, values, vectors, approx_values, approx_vectors })
}

/// `floor(log2(smallest overlap component))` of the eigenvalue tuple,
/// minimized over precisions `0..=n`. Never below `floor(log2 m(A))`.
pub fn min_mult_log_upper(a: &MatrixName, n: Precision) -> Result<u32> {
    let comps = eigenvalue_tuple(a)?.components;
    Ok((0..=n)
        .map(|p| {
            let smallest = components_at(&comps, p).iter().map(Vec::len).min().expect("nonempty spectrum");
            usize::BITS - 1 - smallest.leading_zeros()
        })
        .min()
        .expect("precision range is nonempty"))
}

/// One eigenvector with its eigenvalue and the eigenvalue class used.
#[derive(Debug, Clone)]
pub struct Eigenvector {
    pub class: Vec<usize>,
    pub eigenvalue: RealName,
    pub vector: VectorName,
    pub value: RatVector,
}

/// Some eigenvector of a symmetric matrix given `l = floor(log2 m(A))`.
pub fn evec_with_logmult(a: &MatrixName, l: u32, k: Precision, fuel: &Fuel) -> Result<Eigenvector> {
    check_symmetric(a)?;
    let d = a.rows();
    if d == 0 || l > usize::BITS - 1 - d.leading_zeros() {
        return Err(Error::input(format!("log multiplicity {l} impossible in dimension {d}")));
    }
    if min_mult_log_upper(a, fuel.max_precision())? < l {
        return Err(Error::AdviceSuspect(format!("every eigenspace is certified smaller than 2^{l}")));
    }
    let eig = eigenvalue_tuple(a)?;
    let class = find_class(&eig.components, 1usize << l, fuel)?;
    let eigenvalue = eig.components[class[0]].clone();
    let q = internal_precision(a, k);
    let sol = lineq_with_rank(&a.shifted(&eigenvalue), d - class.len(), q, fuel)?;
    check_residuals(a, std::slice::from_ref(&eigenvalue), std::slice::from_ref(&sol.vector), k, q)?;
    let value = sol.vector.query(k);
    Ok(Eigenvector { class, eigenvalue, vector: sol.vector, value })
}
