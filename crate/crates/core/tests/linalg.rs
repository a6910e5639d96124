mod common;

use advreal::exact::{dot, span_rank, RatMatrix};
use advreal::linalg::{diag_with_count, eigenvalues_with_multiplicity, evec_with_logmult, kernel_with_rank, lineq_with_rank, min_mult_log_upper, rank_with_upper};
use advreal::rational::{int, max_abs, pow2, ratio};
use advreal::search::BoundStream;
use advreal::{Error, Fuel, MatrixName, Outcome, Rational};
use common::noisy_matrix;
use num_traits::{One, Signed};
use proptest::prelude::*;

/// Rows drawn from `base` combinations, so the rank is at most `base.len()`.
fn low_rank() -> impl Strategy<Value = RatMatrix> {
    let entry = (-6i64..7, 1i64..5).prop_map(|(p, q)| ratio(p, q));
    (prop::collection::vec(prop::collection::vec(entry, 3), 1..3), prop::collection::vec(prop::collection::vec(-2i64..3, 2), 3))
        .prop_map(|(base, mix)| {
            let rows = mix
                .iter()
                .map(|c| (0..3).map(|j| base.iter().zip(c).map(|(b, &s)| &b[j] * int(s)).sum()).collect())
                .collect();
            RatMatrix::from_rows(rows).unwrap()
        })
}

fn residual_bound(m: &RatMatrix, k: u32) -> Rational {
    (m.row_sum_norm() + int(4 * m.rows() as i64)) * pow2(-(k as i64))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rank_and_kernel_on_noisy_names(m in low_rank(), seed in any::<u64>()) {
        let r = m.rank();
        let a = noisy_matrix(&m, seed);
        let upper = BoundStream::from_values(vec![3, r as i64]);
        prop_assert_eq!(rank_with_upper(&a, &upper, &Fuel::default()).unwrap(), r);
        if r < 3 {
            let k = 16;
            let kb = kernel_with_rank(&a, r, k, &Fuel::default()).unwrap();
            prop_assert_eq!(kb.values.len(), 3 - r);
            prop_assert_eq!(span_rank(&kb.values), 3 - r);
            for v in &kb.values {
                prop_assert!(max_abs(&m.mul_vec(v)) <= residual_bound(&m, k) * max_abs(v));
            }
            let sol = lineq_with_rank(&a, r, k, &Fuel::default()).unwrap();
            prop_assert!(dot(&sol.value, &sol.value) >= Rational::one());
        }
    }
}

fn rotation_conjugate(spectrum: &[i64]) -> RatMatrix {
    // rotation by the rational angle with tan(theta/2) = 1/2 in planes (0,1) and (1,2)
    let d = spectrum.len();
    let (c, s) = (ratio(3, 5), ratio(4, 5));
    let plane = |i: usize| {
        let mut g = RatMatrix::identity(d);
        g.set(i, i, c.clone());
        g.set(i + 1, i + 1, c.clone());
        g.set(i, i + 1, -s.clone());
        g.set(i + 1, i, s.clone());
        g
    };
    let q = plane(0).mul(&plane(1));
    let diag = RatMatrix::diagonal(&spectrum.iter().map(|&v| int(v)).collect::<Vec<_>>());
    q.mul(&diag).mul(&q.transpose())
}

#[test]
fn eigenvalues_of_noisy_conjugates() {
    for (spectrum, seed) in [(vec![-1, 2, 2], 1u64), (vec![0, 0, 0], 2), (vec![-3, 1, 4], 3)] {
        let m = rotation_conjugate(&spectrum);
        let vals = eigenvalues_with_multiplicity(&noisy_matrix(&m, seed), 12).unwrap();
        for (v, &e) in vals.iter().zip(&spectrum) {
            assert!((v - int(e)).abs() <= pow2(-12), "{spectrum:?}: {v}");
        }
    }
}

#[test]
fn diagonalization_residuals_against_the_exact_matrix() {
    for (spectrum, t) in [(vec![-1, 2, 2], 2), (vec![-3, 1, 4], 3), (vec![5, 5, 5], 1)] {
        let m = rotation_conjugate(&spectrum);
        let k = 14;
        let dg = diag_with_count(&noisy_matrix(&m, 9), t, k, &Fuel::default()).unwrap();
        assert_eq!(dg.classes.len(), t);
        for (lam, v) in dg.approx_values.iter().zip(&dg.approx_vectors) {
            let r: Vec<Rational> = m.mul_vec(v).iter().zip(v).map(|(x, y)| x - lam * y).collect();
            assert!(max_abs(&r) <= residual_bound(&m, k), "{spectrum:?}");
        }
    }
}

#[test]
fn eigenvector_from_log_multiplicity() {
    let m = rotation_conjugate(&[-1, 2, 2]);
    let a = noisy_matrix(&m, 4);
    assert_eq!(min_mult_log_upper(&a, 30).unwrap(), 0);
    let ev = evec_with_logmult(&a, 0, 14, &Fuel::default()).unwrap();
    let lam = ev.eigenvalue.query(14);
    let r: Vec<Rational> = m.mul_vec(&ev.value).iter().zip(&ev.value).map(|(x, y)| x - &lam * y).collect();
    assert!(max_abs(&r) <= residual_bound(&m, 14));
    // the least multiplicity is 1, so advice 1 overstates it
    assert!(matches!(evec_with_logmult(&a, 1, 14, &Fuel::default()), Err(Error::AdviceSuspect(_))));
}

#[test]
fn wrong_rank_advice_fails_visibly() {
    let m = RatMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
    let a = MatrixName::exact(m);
    let low = lineq_with_rank(&a, 1, 10, &Fuel::default());
    assert!(matches!(low, Err(Error::AdviceSuspect(_))), "{low:?}");
    let high = kernel_with_rank(&a, 3, 10, &Fuel::new(32, 20_000));
    assert_eq!(high.unwrap_err().outcome(), Outcome::FuelExhausted);
    assert!(matches!(lineq_with_rank(&a, 3, 10, &Fuel::default()), Err(Error::PreconditionViolated(_))));
    assert!(matches!(rank_with_upper(&a, &BoundStream::constant(3), &Fuel::new(32, 2_000)), Err(Error::FuelExhausted(_))));
}
