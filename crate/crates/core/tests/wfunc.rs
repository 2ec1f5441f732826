use num_traits::Zero;

use perimac::boson::uncolored_schur_winding_pf;
use perimac::measures::{ims_rhs, TruncationSpec};
use perimac::partition::enumerate_partitions;
use perimac::qseries::qfact;
use perimac::scalar::{self, rat, Scalar};
use perimac::wfunc::{ims_lhs_schur, ims_lhs_w, qw_rhs_sum, qw_rhs_w, w_eval, w_symmetry_residual};
use perimac::Partition;

#[test]
fn symmetry_exact_up_to_degree_six() {
    let (q, t) = (rat(2, 7), rat(3, 5));
    let x = [rat(1, 2), rat(-1, 3)];
    let y = [rat(1, 4), rat(2, 5), rat(1, 7)];
    for lam in enumerate_partitions(6, 6, 6) {
        assert!(
            w_symmetry_residual(&lam, &q, &t, &x, &y).unwrap().is_zero(),
            "{lam}"
        );
    }
}

#[test]
fn homogeneity() {
    let lam = Partition::new(vec![2, 1]).unwrap();
    let (q, t, c) = (rat(1, 3), rat(1, 5), rat(3, 2));
    let x = [rat(1, 2), rat(1, 3)];
    let y = [rat(1, 7)];
    let scale = |v: &[Scalar]| v.iter().map(|e| e * &c).collect::<Vec<_>>();
    let base = w_eval(&lam, &q, &t, &x, &y).unwrap();
    let scaled = w_eval(&lam, &q, &t, &scale(&x), &scale(&y)).unwrap();
    assert_eq!(scaled, base * scalar::pow(&c, 3));
}

#[test]
fn rectangle_identities_chain() {
    let q = rat(1, 4);
    let a = [rat(1, 3), rat(1, 4)];
    let b = [rat(1, 5), rat(1, 6)];
    let trunc = TruncationSpec::new(18, 1e-9);
    for n in 0..=2 {
        for m in 1..=2 {
            let a = &a[..m];
            let lhs_w = ims_lhs_w(n, a, &b, &q).unwrap();
            let rhs_w = qw_rhs_w(n, a, &b, &q).unwrap();
            assert_eq!(lhs_w, rhs_w, "n={n} M={m}");
            assert_eq!(rhs_w, qw_rhs_sum(n, a, &b, &q).unwrap(), "n={n} M={m}");
            let schur = ims_lhs_schur(n, a, &b, &q, &trunc).unwrap();
            assert!(
                (schur.to_f64() - scalar::to_f64(&lhs_w)).abs() < 1e-8,
                "n={n} M={m}"
            );
            let rhs = ims_rhs(n, a, &b, &q, &trunc).unwrap();
            let f = scalar::to_f64(&qfact(&q, n));
            assert!(
                (rhs.to_f64() * f - scalar::to_f64(&lhs_w)).abs() < 1e-8,
                "n={n} M={m}"
            );
        }
    }
}

#[test]
fn colored_and_uncolored_rectangles() {
    let q = rat(1, 3);
    for x in [vec![rat(1, 2)], vec![rat(1, 2), rat(1, 5)]] {
        for n in 1..=3 {
            for m in 1..=2 {
                let w = w_eval(&Partition::rectangle(n, m), &q, &Scalar::zero(), &x, &[]).unwrap();
                let z = uncolored_schur_winding_pf(n, m, &x, &q, 12).unwrap();
                let f = qfact(&q, n - 1);
                let gap = &w - &f * &z.value;
                assert!(
                    gap >= Scalar::zero() && gap <= f * &z.tail_bound,
                    "n={n} M={m} |x|={}",
                    x.len()
                );
            }
        }
    }
}
