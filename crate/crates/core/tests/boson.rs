use num_traits::Zero;
use proptest::prelude::*;

use perimac::boson::{
    black_skew_row, rect_macdonald_pf, red_skew_row, row_pf, u_shift_residual,
    uncolored_schur_winding_pf, yb_exchange_residual, RowKind,
};
use perimac::partition::enumerate_partitions;
use perimac::qseries::qfact;
use perimac::scalar::{self, rat, zero, Scalar};
use perimac::skew::{skew_one, Family};
use perimac::symfunc::{macdonald_p, q_whittaker_p};
use perimac::Partition;

#[test]
fn rows_are_skew_hall_littlewood() {
    let (a, t) = (rat(2, 7), rat(1, 3));
    let all = enumerate_partitions(8, 8, 8);
    for lam in &all {
        for mu in &all {
            let p = skew_one(Family::HlP, lam, mu, &a, &t).unwrap();
            let q = skew_one(Family::HlQ, lam, mu, &a, &t).unwrap();
            let same = lam.len() == mu.len();
            let grew = lam.len() == mu.len() + 1;
            let pick = |c: bool, v: &Scalar| if c { v.clone() } else { zero() };
            assert_eq!(
                row_pf(&black_skew_row(lam, mu, &a, &t, false)).unwrap(),
                pick(same, &p),
                "{lam}/{mu}"
            );
            assert_eq!(
                row_pf(&black_skew_row(lam, mu, &a, &t, true)).unwrap(),
                pick(grew, &p),
                "{lam}/{mu}"
            );
            assert_eq!(
                row_pf(&red_skew_row(lam, mu, &a, &t, false)).unwrap(),
                pick(grew, &q),
                "{lam}/{mu}"
            );
            assert_eq!(
                row_pf(&red_skew_row(lam, mu, &a, &t, true)).unwrap(),
                pick(same, &q),
                "{lam}/{mu}"
            );
        }
    }
}

#[test]
fn yb_at_zero_t() {
    let r = yb_exchange_residual(
        &rat(1, 2),
        &rat(1, 3),
        &zero(),
        &[1, 0, 2],
        &[0, 2, 1],
        true,
        false,
    )
    .unwrap();
    assert!(r.is_zero());
}

fn small_rational() -> impl Strategy<Value = Scalar> {
    (1i64..=9, 10i64..=20).prop_map(|(n, d)| rat(n, d))
}

fn occupancy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..=3, 0..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn yb_residual_vanishes(
        a in small_rational(), b in small_rational(), t in small_rational(),
        bottom in occupancy(), top in occupancy(), j1: bool, j2: bool,
    ) {
        let r = yb_exchange_residual(&a, &b, &t, &bottom, &top, j1, j2).unwrap();
        prop_assert!(r.is_zero(), "residual {}", r);
    }

    #[test]
    fn u_shift_vanishes(
        a in small_rational(), u in small_rational(), t in small_rational(),
        bottom in occupancy(), top in occupancy(), j: bool, red: bool,
    ) {
        let kind = if red { RowKind::Red } else { RowKind::Black };
        let r = u_shift_residual(kind, &a, &u, &t, &bottom, &top, j).unwrap();
        prop_assert!(r.is_zero(), "residual {}", r);
    }
}

#[test]
fn rectangle_matches_macdonald() {
    let (q, t) = (rat(1, 5), rat(1, 3));
    let x = [rat(1, 2), rat(1, 3)];
    for (n, m) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let s = rect_macdonald_pf(n, m, &x, &q, &t, 10).unwrap();
        let p = macdonald_p(&Partition::rectangle(n, m), &q, &t, n * m)
            .unwrap()
            .evaluate(&x);
        let want = qfact(&t, m) / qfact(&q, n) * p;
        assert!(s.value <= want, "n={n} M={m}");
        assert!(
            &want - &s.value <= s.tail_bound,
            "n={n} M={m}: {}",
            scalar::to_f64(&(&want - &s.value))
        );
    }
}

#[test]
fn rectangle_grows_with_cap() {
    let (q, t) = (rat(1, 4), rat(1, 2));
    let x = [rat(1, 3)];
    let mut prev = zero();
    for cap in 0..6 {
        let s = rect_macdonald_pf(2, 1, &x, &q, &t, cap).unwrap();
        assert!(s.value >= prev);
        prev = s.value;
    }
}

#[test]
fn uncolored_two_columns_one_arrow() {
    // n = 2, M = 1, one row: the arrow steps right twice while the middle
    // column carries any number of vertical winding arrows.
    let q = rat(1, 3);
    let s = uncolored_schur_winding_pf(2, 1, &[rat(1, 2)], &q, 6).unwrap();
    let partial: Scalar = (0..=6).map(|k| scalar::pow(&q, k)).sum();
    assert_eq!(s.value, rat(1, 4) * partial);
}

#[test]
fn uncolored_matches_q_whittaker_rectangle() {
    let q = rat(1, 4);
    let x = [rat(1, 2), rat(1, 3)];
    for (n, m) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        let s = uncolored_schur_winding_pf(n, m, &x, &q, 10).unwrap();
        let got = qfact(&q, n - 1) * &s.value;
        let want = q_whittaker_p(&Partition::rectangle(n, m), &q, n * m)
            .unwrap()
            .evaluate(&x);
        let gap = &want - &got;
        assert!(
            gap >= zero() && gap <= qfact(&q, n - 1) * &s.tail_bound,
            "n={n} M={m}"
        );
    }
}
