//! Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned
//! below. Runs as a plain binary so the report is always printed.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::Instant;

use advreal::advice::IntermedAdvice;
use advreal::basics::{is_valid_prefix, leading_digits_with_bit};
use advreal::exact::{dot, hull2d_exact, intersect_spans, orthogonalize, RatMatrix, RatVector};
use advreal::geometry::extchull_with_count;
use advreal::linalg::{diag_with_count, eigenvalues_with_multiplicity, evec_with_logmult, lineq_with_rank, min_mult_log_upper, rank_lower};
use advreal::rational::{int, max_abs, pow2, ratio};
use advreal::rootfind::{hovering_pair, ivt_with_advice, piecewise_linear_funcname, PiecewiseLinear};
use advreal::witness::{card_flag, common_eigvec_check, diag_break, evec_intersection_law, intermed_flag, lineq_perturb, rank_flag, CommonEigvec};
use advreal::{Error, Fuel, MatrixName, Outcome, Rational, RealName, VectorName};
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Pinned tolerances and sizes.
const RANDOM_MATRICES: usize = 200;
const LINEQ_K: u32 = 20;
const SPECTRA: usize = 100;
const EIG_K: u32 = 16;
const EVEC_K: u32 = 20;
const EVEC_RESIDUAL_BITS: i64 = 12;
const MINMULT_PRECISION: u32 = 40;
const HULL_SETS: usize = 100;
const IVT_FUNCTIONS: usize = 50;
const IVT_K: u32 = 20;
const FLAG_MAX_M: u64 = 64;
const FLAG_DEPTH: usize = 3;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(failures: &[String], summary: String) -> Verdict {
    if failures.is_empty() {
        Verdict { pass: true, detail: summary }
    } else {
        let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
        Verdict { pass: false, detail: format!("{summary}; {} failure(s), e.g. {}", failures.len(), shown.join(" | ")) }
    }
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-8..=8), rng.gen_range(1..=8))
}

/// Random matrix up to 5x5 with denominators at most 8; half of them get
/// repeated (integer-scaled) or zero rows to lower the rank.
fn random_matrix(rng: &mut ChaCha8Rng) -> RatMatrix {
    let (rows, cols) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    let mut data: Vec<Vec<Rational>> = Vec::new();
    let degenerate = rng.gen_bool(0.5);
    for i in 0..rows {
        if degenerate && i > 0 && rng.gen_bool(0.6) {
            let src = data[rng.gen_range(0..i)].clone();
            let s = int(*[-2, -1, 0, 1, 2].choose(rng).unwrap());
            data.push(src.iter().map(|x| x * &s).collect());
        } else {
            data.push((0..cols).map(|_| small_rational(rng)).collect());
        }
    }
    RatMatrix::from_rows(data).unwrap()
}

fn criterion_1(rng: &mut ChaCha8Rng) -> Verdict {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut solved = 0;
    for case in 0..RANDOM_MATRICES {
        let m = random_matrix(rng);
        let r = m.rank();
        let a = MatrixName::exact(m.clone());
        if !(0..=64).any(|n| rank_lower(&a, n) == r) {
            failures.push(format!("case {case}: rank_lower never reached {r}"));
            continue;
        }
        if r >= m.cols() {
            continue;
        }
        match lineq_with_rank(&a, r, LINEQ_K, &Fuel::default()) {
            Ok(sol) => {
                solved += 1;
                let resid = max_abs(&m.mul_vec(&sol.value));
                let bound = int(m.cols() as i64 + 1) * pow2(-(LINEQ_K as i64));
                if resid > bound || dot(&sol.value, &sol.value) < Rational::one() {
                    failures.push(format!("case {case}: residual {resid} or norm below 1"));
                }
            }
            Err(e) => failures.push(format!("case {case}: {e}")),
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 60.0 {
        failures.push(format!("runtime {secs:.1}s"));
    }
    verdict(&failures, format!("{RANDOM_MATRICES} matrices, {solved} kernels"))
}

/// Rotation by the rational angle with `tan(theta/2) = t` in the `(i, j)` plane.
fn givens(d: usize, i: usize, j: usize, t: &Rational) -> RatMatrix {
    let den = Rational::one() + t * t;
    let c = (Rational::one() - t * t) / &den;
    let s = int(2) * t / &den;
    let mut g = RatMatrix::identity(d);
    g.set(i, i, c.clone());
    g.set(j, j, c);
    g.set(i, j, -s.clone());
    g.set(j, i, s);
    g
}

/// `Q D Q^T` with `Q` a product of two rational rotations.
fn conjugated(rng: &mut ChaCha8Rng, spectrum: &[Rational]) -> RatMatrix {
    let d = spectrum.len();
    let mut q = RatMatrix::identity(d);
    if d > 1 {
        for _ in 0..2 {
            let i = rng.gen_range(0..d);
            let mut j = rng.gen_range(0..d - 1);
            if j >= i {
                j += 1;
            }
            let t = [ratio(1, 2), ratio(1, 3), ratio(2, 3), int(2)].choose(rng).unwrap().clone();
            q = q.mul(&givens(d, i, j, &t));
        }
    }
    q.mul(&RatMatrix::diagonal(spectrum)).mul(&q.transpose())
}

struct Spectral {
    matrix: RatMatrix,
    sorted: Vec<Rational>,
    distinct: usize,
    min_mult: usize,
}

fn spectrum_with(values: &[Rational], mults: &[usize]) -> Vec<Rational> {
    values.iter().zip(mults).flat_map(|(v, &m)| std::iter::repeat_n(v.clone(), m)).collect()
}

fn random_spectral(rng: &mut ChaCha8Rng) -> Spectral {
    let d = rng.gen_range(2..=6);
    let mut mults = Vec::new();
    let mut left = d;
    while left > 0 {
        let m = rng.gen_range(1..=left);
        mults.push(m);
        left -= m;
    }
    let mut pool: Vec<i64> = (-6..=6).collect();
    pool.shuffle(rng);
    let values: Vec<Rational> = pool[..mults.len()].iter().map(|&v| ratio(v, 2)).collect();
    let mut sorted = spectrum_with(&values, &mults);
    let matrix = conjugated(rng, &sorted);
    sorted.sort();
    Spectral { matrix, sorted, distinct: mults.len(), min_mult: *mults.iter().min().unwrap() }
}

fn floor_log2(m: usize) -> u32 {
    usize::BITS - 1 - m.leading_zeros()
}

fn criterion_2(instances: &[Spectral]) -> Verdict {
    let mut failures = Vec::new();
    for (case, s) in instances.iter().enumerate() {
        let d = s.sorted.len();
        let a = MatrixName::exact(s.matrix.clone());
        match eigenvalues_with_multiplicity(&a, EIG_K) {
            Ok(vals) => {
                let worst = vals.iter().zip(&s.sorted).map(|(x, y)| (x - y).abs()).max().unwrap_or_default();
                if vals.len() != d || worst > pow2(-(EIG_K as i64)) {
                    failures.push(format!("case {case}: eigenvalue error {worst}"));
                }
            }
            Err(e) => failures.push(format!("case {case}: eigenvalues {e}")),
        }
        let tol = int(4 * d as i64) * pow2(-(EIG_K as i64));
        match diag_with_count(&a, s.distinct, EIG_K, &Fuel::default()) {
            Ok(dg) => {
                for (i, (lam, v)) in dg.approx_values.iter().zip(&dg.approx_vectors).enumerate() {
                    let av = s.matrix.mul_vec(v);
                    let r = max_abs(&av.iter().zip(v).map(|(x, y)| x - lam * y).collect::<Vec<_>>());
                    if r > tol {
                        failures.push(format!("case {case}: residual {r}"));
                    }
                    for (j, w) in dg.approx_vectors.iter().enumerate() {
                        let target = if i == j { Rational::one() } else { Rational::zero() };
                        if (dot(v, w) - target).abs() > tol {
                            failures.push(format!("case {case}: orthogonality ({i},{j})"));
                        }
                    }
                }
            }
            Err(e) => failures.push(format!("case {case}: diag {e}")),
        }
    }
    verdict(&failures, format!("{} symmetric matrices, k = {EIG_K}", instances.len()))
}

fn rejected(r: &Result<impl Sized, Error>) -> bool {
    match r {
        Err(e) => matches!(e.outcome(), Outcome::FuelExhausted | Outcome::AdviceSuspect),
        Ok(_) => false,
    }
}

fn criterion_3(instances: &[Spectral]) -> Verdict {
    let mut failures = Vec::new();
    let mut runs = 0;
    let fuel = Fuel::new(48, 100_000);
    for (case, s) in instances.iter().enumerate() {
        let d = s.sorted.len();
        let a = MatrixName::exact(s.matrix.clone());
        for t in (1..=d).filter(|&t| t != s.distinct) {
            runs += 1;
            let r = diag_with_count(&a, t, EIG_K, &fuel.refreshed());
            if !rejected(&r) {
                failures.push(format!("case {case}: diag t={t} gave {:?}", r.map(|_| "a validated result")));
            }
        }
        let truth = floor_log2(s.min_mult);
        for l in (0..=floor_log2(d)).filter(|&l| l != truth) {
            runs += 1;
            let r = evec_with_logmult(&a, l, EIG_K, &fuel.refreshed());
            if !rejected(&r) {
                failures.push(format!("case {case}: evec l={l} gave {:?}", r.map(|_| "a validated result")));
            }
        }
    }
    verdict(&failures, format!("{runs} wrong-advice runs"))
}

/// Exact spectrum with least multiplicity `m`: multiplicities `m` and
/// `d - m` when that is at least `m`, otherwise `m` twice in dimension `2m`.
fn evec_fixture(rng: &mut ChaCha8Rng, m: usize) -> (RatMatrix, Vec<(Rational, usize)>) {
    let parts: Vec<usize> = match m {
        1 => vec![1; 8],
        2 => vec![2; 4],
        3 => vec![3, 5],
        4 => vec![4, 4],
        8 => vec![8],
        _ => vec![m, m],
    };
    let values: Vec<Rational> = (0..parts.len()).map(|i| int(i as i64 * 2 - 3)).collect();
    let spec = spectrum_with(&values, &parts);
    (conjugated(rng, &spec), values.into_iter().zip(parts).collect())
}

fn criterion_4(rng: &mut ChaCha8Rng) -> Verdict {
    let mut failures = Vec::new();
    for m in 1..=8usize {
        let (mat, parts) = evec_fixture(rng, m);
        let a = MatrixName::exact(mat.clone());
        let l = floor_log2(m);
        match min_mult_log_upper(&a, MINMULT_PRECISION) {
            Ok(u) if u == l => {}
            other => failures.push(format!("m={m}: min_mult_log_upper {other:?}")),
        }
        match evec_with_logmult(&a, l, EVEC_K, &Fuel::default()) {
            Ok(ev) => {
                let lam = ev.eigenvalue.query(EVEC_K);
                let (exact, _) = parts.iter().min_by_key(|(v, _)| (v - &lam).abs()).unwrap();
                let basis = orthogonalize(&mat.shift(exact).kernel());
                let v = &ev.value;
                let mut proj = vec![Rational::zero(); v.len()];
                for b in &basis {
                    let c = dot(v, b) / dot(b, b);
                    for (p, bi) in proj.iter_mut().zip(b) {
                        *p += &c * bi;
                    }
                }
                let resid = max_abs(&v.iter().zip(&proj).map(|(x, y)| x - y).collect::<Vec<_>>()) / max_abs(v);
                if resid > pow2(-EVEC_RESIDUAL_BITS) {
                    failures.push(format!("m={m}: projection residual {resid}"));
                }
            }
            Err(e) => failures.push(format!("m={m}: {e}")),
        }
    }
    verdict(&failures, "m = 1..8 (dimension 2m for m = 5, 6, 7)".into())
}

fn vectors(points: &[(Rational, Rational)]) -> Vec<VectorName> {
    points.iter().map(|(x, y)| VectorName::exact(vec![x.clone(), y.clone()])).collect()
}

/// Points, advised count, expected 0-based indices.
type HullCase = (Vec<(Rational, Rational)>, usize, Vec<usize>);

/// Criterion id, title, check.
type Criterion<'a> = (u32, &'static str, Box<dyn FnOnce(&mut ChaCha8Rng) -> Verdict + 'a>);

fn criterion_5(rng: &mut ChaCha8Rng) -> Verdict {
    let mut failures = Vec::new();
    let fixed: [HullCase; 2] = [
        (vec![(int(0), int(0)), (int(1), int(0)), (ratio(1, 2), int(0))], 2, vec![0, 1]),
        (vec![(int(0), int(0)), (int(1), int(0)), (ratio(1, 2), ratio(1, 4))], 3, vec![0, 1, 2]),
    ];
    for (pts, m, want) in &fixed {
        let got = extchull_with_count(&vectors(pts), *m, &Fuel::default());
        if got.as_ref() != Ok(want) {
            failures.push(format!("fixed example M={m}: {got:?}"));
        }
    }
    for case in 0..HULL_SETS {
        let n = rng.gen_range(1..=8);
        let pts: Vec<(Rational, Rational)> = (0..n).map(|_| (small_rational(rng), small_rational(rng))).collect();
        let exact = hull2d_exact(&pts);
        // duplicate points share one extreme position; keep distinct sets
        let mut uniq = pts.clone();
        uniq.sort();
        uniq.dedup();
        if uniq.len() != pts.len() {
            continue;
        }
        match extchull_with_count(&vectors(&pts), exact.len(), &Fuel::default()) {
            Ok(got) if got == exact => {}
            other => failures.push(format!("set {case}: {other:?} vs {exact:?}")),
        }
    }
    verdict(&failures, format!("2 fixed examples, up to {HULL_SETS} random sets"))
}

fn criterion_6() -> Verdict {
    let mut failures = Vec::new();
    let mut xs: Vec<Rational> = (0..512).map(|p| ratio(p, 512)).collect();
    for q in [3i64, 5, 7, 9, 11, 13, 27, 100, 255, 511] {
        xs.extend((1..q).step_by((q as usize / 12).max(1)).map(|p| ratio(p, q)));
    }
    let fuel = Fuel::new(40, 1_000_000);
    let mut runs = 0;
    for x in &xs {
        let name = RealName::exact(x.clone());
        let dyadic = x.denom().trailing_zeros() == Some(x.denom().bits() - 1);
        for n in [1u32, 3, 9] {
            let truth = advreal::rational::floor(&(x * pow2(n as i64))).bit(0);
            runs += 1;
            match leading_digits_with_bit(&name, n, truth, &fuel.refreshed()) {
                Ok(bits) if is_valid_prefix(&bits, x) && bits[n as usize - 1] == truth => {}
                other => failures.push(format!("x={x} n={n} truthful: {other:?}")),
            }
            if dyadic {
                runs += 1;
                // an accepted flip must be the other expansion, so its n-th bit follows the advice
                match leading_digits_with_bit(&name, n, !truth, &fuel.refreshed()) {
                    Ok(bits) if is_valid_prefix(&bits, x) && bits[n as usize - 1] == !truth => {}
                    Err(e) if e.outcome() == Outcome::AdviceSuspect => {}
                    other => failures.push(format!("x={x} n={n} flipped: {other:?}")),
                }
            }
        }
    }
    verdict(&failures, format!("{runs} digit runs"))
}

fn stage_sequences(max_len: usize) -> Vec<Vec<u64>> {
    let choices = [1u64, 2, 3, 5];
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        frontier = frontier.iter().flat_map(|p: &Vec<u64>| choices.iter().map(move |&c| [p.clone(), vec![c]].concat())).collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

fn criterion_7() -> Verdict {
    let mut failures = Vec::new();
    let ms = [1u64, 2, 4, 8, 16, 32, FLAG_MAX_M];
    for prefix in stage_sequences(FLAG_DEPTH - 1) {
        for extra in 1..=FLAG_DEPTH - prefix.len() {
            for &m in &ms {
                let bound = Rational::new(2.into(), m.into());
                let full: Vec<u64> = prefix.iter().copied().chain(std::iter::repeat_n(m, extra)).collect();
                let d = FLAG_DEPTH + 1;
                let dc = advreal::name::max_entry_distance(&card_flag(d, &full).unwrap(), &card_flag(d, &prefix).unwrap());
                if dc > bound {
                    failures.push(format!("card {prefix:?}+{extra}x{m}: {dc}"));
                }
                let (r0, r1) = (rank_flag(d, d, &prefix).unwrap(), rank_flag(d, d, &full).unwrap());
                let dr = r1.sub(&r0).max_abs_entry();
                if dr > bound {
                    failures.push(format!("rank {prefix:?}+{extra}x{m}: {dr}"));
                }
                if r1.rank() != full.len() {
                    failures.push(format!("rank of rank_flag {full:?}"));
                }
                let path: Vec<u8> = (0..full.len()).map(|i| (i % 2) as u8).collect();
                let (f0, _) = intermed_flag(&path[..prefix.len()], &prefix).unwrap();
                let (f1, _) = intermed_flag(&path, &full).unwrap();
                let di = f0.sup_distance(&f1);
                if di > bound {
                    failures.push(format!("intermed {prefix:?}+{extra}x{m}: {di}"));
                }
            }
        }
    }
    for depth in 0..=FLAG_DEPTH {
        let third = Rational::one() / int(3).pow(depth as i32 + 1);
        for path in stage_sequences(depth).iter().filter(|s| s.len() == depth) {
            let bits: Vec<u8> = path.iter().map(|&c| (c % 2) as u8).collect();
            let (_, (a, b)) = intermed_flag(&bits, path).unwrap();
            if &b - &a != third {
                failures.push(format!("intermed length at {bits:?}"));
            }
            if depth > 0 {
                let mut sib = bits.clone();
                sib[depth - 1] ^= 1;
                let (_, (a2, b2)) = intermed_flag(&sib, path).unwrap();
                let gap = if a2 > b { &a2 - &b } else { &a - &b2 };
                if gap < int(2) * &third / int(3) {
                    failures.push(format!("intermed separation at {bits:?}"));
                }
            }
        }
    }
    verdict(&failures, format!("depth <= {FLAG_DEPTH}, m <= {FLAG_MAX_M}, bound 2/m"))
}

fn criterion_8(rng: &mut ChaCha8Rng) -> Verdict {
    let mut failures = Vec::new();
    let mut tested = 0;
    for case in 0..60 {
        let a = random_matrix(rng);
        let r = a.rank();
        if r >= a.rows().min(a.cols()) {
            continue;
        }
        tested += 1;
        let delta = ratio(1, 16);
        let outs = lineq_perturb(&a, &delta).unwrap();
        let mut common: Vec<RatVector> = a.kernel();
        for p in &outs {
            if p.rank() != r + 1 || p.sub(&a).max_abs_entry() > delta {
                failures.push(format!("lineq case {case}: rank or distance"));
            }
            common = intersect_spans(&common, &p.kernel());
        }
        if !common.is_empty() {
            failures.push(format!("lineq case {case}: kernels share a vector"));
        }
    }
    let pairs = [
        (RatMatrix::zeros(2, 2), int(0), vec![int(1), int(0)], vec![int(3), int(4)]),
        (RatMatrix::diagonal(&[int(1), int(1), int(5)]), int(1), vec![int(1), int(2), int(0)], vec![int(2), int(0), int(0)]),
        (RatMatrix::identity(3), int(1), vec![int(1), int(1), int(1)], vec![int(1), int(0), int(0)]),
    ];
    for (i, (a, lam, w1, w2)) in pairs.iter().enumerate() {
        for eps in [int(1), ratio(1, 100)] {
            let b = diag_break(a, lam, w1, &eps).unwrap();
            let c = diag_break(a, lam, w2, &eps).unwrap();
            if common_eigvec_check(&b, &c) != Ok(CommonEigvec::Impossible) {
                failures.push(format!("diag_break pair {i} eps {eps}"));
            }
        }
    }
    for d in 1..=3u32 {
        for k in 1..=d as usize {
            if evec_intersection_law(d, k) != Ok(true) {
                failures.push(format!("subspace law d={d} k={k}"));
            }
        }
    }
    verdict(&failures, format!("{tested} perturbation cases, {} sibling pairs, d <= 3", pairs.len() * 2))
}

fn criterion_9(rng: &mut ChaCha8Rng) -> Verdict {
    let mut failures = Vec::new();
    let mut fixtures: Vec<(PiecewiseLinear, Rational)> = Vec::new();
    for n in [1u64, 2, 5, 40] {
        let (g, h) = hovering_pair(n);
        fixtures.push((g, ratio(3, 8)));
        fixtures.push((h, ratio(5, 8)));
    }
    for path in [vec![0u8], vec![1], vec![0, 1], vec![1, 1, 0]] {
        let ns = vec![3u64; path.len()];
        let (f, (a, b)) = intermed_flag(&path, &ns).unwrap();
        fixtures.push((f, (a + b) / int(2)));
    }
    for (i, (f, z)) in fixtures.iter().enumerate() {
        match ivt_with_advice(&piecewise_linear_funcname(f), &IntermedAdvice::Rational(z.clone()), IVT_K, &Fuel::default()) {
            Ok(r) if &r.approx == z && r.zero.exact_value() == Some(z) => {}
            other => failures.push(format!("fixture {i}: {:?}", other.map(|r| r.approx))),
        }
    }
    for case in 0..IVT_FUNCTIONS {
        // zero at z, random positive slopes, extra breakpoints keep the sign
        let z = ratio(rng.gen_range(1..1000), 1000);
        let mut pts = vec![(int(0), -ratio(rng.gen_range(1..20), 20)), (z.clone(), int(0)), (int(1), ratio(rng.gen_range(1..20), 20))];
        let left_mid = &z * ratio(rng.gen_range(1..10), 10);
        let right_mid = &z + (int(1) - &z) * ratio(rng.gen_range(1..10), 10);
        let lv = pts[0].1.clone() * ratio(rng.gen_range(1..10), 10);
        let rv = pts[2].1.clone() * ratio(rng.gen_range(1..10), 10);
        pts.insert(1, (left_mid, lv));
        pts.insert(3, (right_mid, rv));
        let f = PiecewiseLinear::new(pts).unwrap();
        match ivt_with_advice(&piecewise_linear_funcname(&f), &IntermedAdvice::Isolated, IVT_K, &Fuel::default()) {
            Ok(r) => {
                if (&r.approx - &z).abs() > pow2(-(IVT_K as i64)) {
                    failures.push(format!("function {case}: error {}", (&r.approx - &z).abs()));
                }
                for w in r.brackets.windows(2) {
                    if (&w[1].1 - &w[1].0) * int(3) > (&w[0].1 - &w[0].0) * int(2) {
                        failures.push(format!("function {case}: contraction above 2/3"));
                    }
                }
            }
            Err(e) => failures.push(format!("function {case}: {e}")),
        }
    }
    verdict(&failures, format!("{} fixtures, {IVT_FUNCTIONS} isolated zeros", fixtures.len()))
}

/// Command lines of the determinism matrix with their input files.
fn cli_matrix(dir: &std::path::Path) -> Vec<Vec<String>> {
    let files: BTreeMap<&str, &str> = [
        ("x", "37/10\n"),
        ("frac", "5/8\n"),
        ("tuple", "1/2 1/3 1/2 0 1/3\n"),
        ("lowrank", "3 3\n1 2 3\n2 4 6\n1 0 1\n"),
        ("swap", "2 2\n0 1\n1 0\n"),
        ("sym", "3 3\n2 1 0\n1 2 0\n0 0 3\n"),
        ("id4", "4 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n"),
        ("points", "5 2\n0 0\n1 0\n0 1\n1 1\n1/2 1/2\n"),
        ("pwl", "pwl\n0 -1\n1/3 -1/5\n1 1\n"),
    ]
    .into_iter()
    .collect();
    for (name, text) in &files {
        std::fs::write(dir.join(name), text).unwrap();
    }
    let f = |n: &str| dir.join(n).to_str().unwrap().to_string();
    let runs: Vec<(&str, Option<&str>, &str)> = vec![
        ("floor", Some("parity:odd"), "x"),
        ("floor", Some("int:no"), "x"),
        ("digits", Some("bit:3:1"), "frac"),
        ("classes", Some("size:2"), "tuple"),
        ("members", Some("count:3"), "tuple"),
        ("rank", Some("upper:3,2"), "lowrank"),
        ("lineq", Some("rank:2"), "lowrank"),
        ("eig", None, "sym"),
        ("diag", Some("count:2"), "swap"),
        ("diag", Some("count:3"), "swap"),
        ("diag", Some("count:3"), "sym"),
        ("evec", Some("logmult:2"), "id4"),
        ("minmultlog", None, "sym"),
        ("chull", Some("extreme:4"), "points"),
        ("chull", None, "points"),
        ("ivt", Some("isolated"), "pwl"),
        ("ivt", Some("rational:1/2"), "pwl"),
    ];
    let mut out: Vec<Vec<String>> = runs
        .into_iter()
        .map(|(cmd, advice, input)| {
            // unadvised enumeration always spends its whole budget
            let steps = if advice.is_none() && cmd == "chull" { "20000" } else { "200000" };
            let mut v = vec![cmd.to_string(), "--input".into(), f(input), "--fuel-steps".into(), steps.into()];
            if let Some(a) = advice {
                v.extend(["--advice".into(), a.into()]);
            }
            v
        })
        .collect();
    out.push(["witness", "card", "4", "2,3"].map(String::from).to_vec());
    out.push(["witness", "intermed", "0,1", "2,2"].map(String::from).to_vec());
    out.push(["witness", "evec", "2", "1", "3"].map(String::from).to_vec());
    out.push(vec!["witness".into(), "lineq".into(), "1/4".into(), "--input".into(), f("lowrank")]);
    out.push(vec!["selfcheck".into()]);
    out
}

fn run_cli(args: &[String], parallel: bool) -> Vec<u8> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_advreal"));
    cmd.args(args);
    if parallel {
        cmd.arg("--parallel");
    }
    let out = cmd.output().unwrap();
    let mut bytes = out.stdout;
    bytes.extend(out.stderr);
    bytes.extend(format!("exit={:?}", out.status.code()).into_bytes());
    bytes
}

fn criterion_10() -> Verdict {
    let dir = std::env::temp_dir().join(format!("advreal-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let matrix = cli_matrix(&dir);
    let mut failures = Vec::new();
    for args in &matrix {
        let first = run_cli(args, false);
        if run_cli(args, false) != first {
            failures.push(format!("{}: two serial runs differ", args.join(" ")));
        }
        if run_cli(args, true) != first {
            failures.push(format!("{}: parallel run differs", args.join(" ")));
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
    verdict(&failures, format!("{} command lines x 3 runs", matrix.len()))
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_ad71);
    let spectra: Vec<Spectral> = (0..SPECTRA).map(|_| random_spectral(&mut rng)).collect();
    let criteria: Vec<Criterion> = vec![
        (1, "rank and kernel oracle equivalence", Box::new(criterion_1)),
        (2, "eigen pipeline on known spectra", Box::new(|_| criterion_2(&spectra))),
        (3, "wrong advice is never validated", Box::new(|_| criterion_3(&spectra))),
        (4, "eigenvector advice size", Box::new(criterion_4)),
        (5, "extreme points", Box::new(criterion_5)),
        (6, "digits with bit advice", Box::new(|_| criterion_6())),
        (7, "flag laws", Box::new(|_| criterion_7())),
        (8, "witness separation", Box::new(criterion_8)),
        (9, "intermediate values", Box::new(criterion_9)),
        (10, "command line determinism", Box::new(|_| criterion_10())),
    ];
    let mut failed = 0;
    for (id, title, check) in criteria {
        let start = Instant::now();
        let v = check(&mut rng);
        failed += usize::from(!v.pass);
        println!(
            "criterion {id:>2} {}: {title} ({}, {:.1}s)",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion/criteria failed");
        ExitCode::FAILURE
    }
}
