use perimac::contour::{
    hl_length_law_rhs, hl_orthogonality, hl_orthogonality_expected, hl_skew_integral, qtsym_rhs,
    z_contour, Backend,
};
use perimac::measures::{phi_norm, pqw_shifted_cdf, z_sum, MeasureSpec, TruncationSpec};
use perimac::partition::{enumerate_partitions, Partition};
use perimac::qseries::qpoch_inf;
use perimac::scalar::{rat, to_f64, zero};
use perimac::skew::{skew_multi, Family};

fn spec_mn1() -> MeasureSpec {
    MeasureSpec {
        q: rat(3, 10),
        t: zero(),
        u: rat(1, 7),
        a: vec![rat(1, 3)],
        b: vec![rat(1, 5)],
    }
}

fn p(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

#[test]
fn zero_fold_integrals_are_prefactors() {
    let s = spec_mn1();
    let want = qpoch_inf(&s.q, &s.q).unwrap() / phi_norm(&s.a, &s.b, &s.q, &zero(), &s.u).unwrap();
    let v = qtsym_rhs(0, &s, Backend::Series { order: 4 }).unwrap();
    assert!((v.value - to_f64(&want)).abs() < 1e-25);

    let h = MeasureSpec {
        q: zero(),
        t: rat(1, 4),
        u: rat(1, 5),
        a: vec![rat(1, 2)],
        b: vec![rat(1, 3)],
    };
    let want = qpoch_inf(&h.t, &h.t).unwrap() / phi_norm(&h.a, &h.b, &zero(), &h.t, &h.u).unwrap();
    let v = hl_length_law_rhs(0, &h, Backend::quadrature(8)).unwrap();
    assert!((v.value - to_f64(&want)).abs() < 1e-15);
    assert_eq!(
        z_contour(
            0,
            2,
            &rat(1, 3),
            &rat(1, 5),
            &[rat(1, 2)],
            Backend::Series { order: 3 }
        )
        .unwrap()
        .value,
        1.0
    );
}

#[test]
fn z_at_zero_u_single_variable() {
    // u = 0, n = 1, N = 0, no letters: Σ_k q^k = 1/(1-q).
    let q = rat(1, 3);
    let v = z_contour(1, 0, &q, &zero(), &[], Backend::Series { order: 10 }).unwrap();
    assert!((v.value - 1.5).abs() < 1e-15);
    let direct = z_sum(1, 0, &q, &zero(), &[], &TruncationSpec::new(6, 1e-6)).unwrap();
    assert_eq!(to_f64(&direct.value), 1.5);
}

#[test]
fn z_contour_matches_enumeration_small() {
    let (q, u) = (rat(1, 5), rat(1, 6));
    let x = [rat(1, 3), rat(1, 4)];
    let lhs = z_sum(2, 1, &q, &u, &x, &TruncationSpec::new(14, 1e-8)).unwrap();
    let quad = z_contour(2, 1, &q, &u, &x, Backend::quadrature(64)).unwrap();
    let ser = z_contour(2, 1, &q, &u, &x, Backend::Series { order: 30 }).unwrap();
    assert!(
        (lhs.to_f64() - quad.value).abs() < 1e-8,
        "{} vs {}",
        lhs.to_f64(),
        quad.value
    );
    assert!(
        (ser.value - quad.value).abs() <= ser.error + 1e-12,
        "{} {}",
        ser.value,
        ser.error
    );
}

#[test]
fn qtsym_matches_enumeration_single_letters() {
    let s = spec_mn1();
    for n in 1..=2 {
        let lhs = pqw_shifted_cdf(&s, n, &TruncationSpec::new(14, 1e-8)).unwrap();
        let rhs = qtsym_rhs(n, &s, Backend::quadrature(64)).unwrap();
        assert!(
            (lhs.to_f64() - rhs.value).abs() < 1e-8,
            "n={n}: {} vs {}",
            lhs.to_f64(),
            rhs.value
        );
    }
}

#[test]
fn hl_skew_integral_reproduces_branching() {
    let q = rat(1, 3);
    let x = [rat(1, 3)];
    let v = hl_skew_integral(&p(&[2, 1]), &p(&[1]), &x, &q, 2, Backend::quadrature(32)).unwrap();
    let want = skew_multi(Family::HlP, &p(&[2, 1]), &p(&[1]), &x, &q).unwrap();
    assert!((v.value - to_f64(&want)).abs() < 1e-8);
    // x empty, λ = μ gives 1; λ ≠ μ gives 0.
    let one = hl_skew_integral(&p(&[1]), &p(&[1]), &[], &q, 2, Backend::quadrature(32)).unwrap();
    assert!((one.value - 1.0).abs() < 1e-10);
    let z = hl_skew_integral(&p(&[2]), &p(&[1, 1]), &[], &q, 2, Backend::quadrature(32)).unwrap();
    assert!(z.value.abs() < 1e-10);
    assert!(hl_skew_integral(&p(&[1, 1, 1]), &p(&[]), &x, &q, 2, Backend::quadrature(8)).is_err());
}

#[test]
fn hl_orthogonality_both_backends() {
    let t = rat(1, 4);
    let all = enumerate_partitions(2, 2, 2);
    for lam in &all {
        for mu in &all {
            let want = to_f64(&hl_orthogonality_expected(lam, mu, 2, &t));
            let q = hl_orthogonality(lam, mu, 2, &t, Backend::quadrature(32)).unwrap();
            let s = hl_orthogonality(lam, mu, 2, &t, Backend::Series { order: 24 }).unwrap();
            assert!((q.value - want).abs() < 1e-10, "{lam} {mu}");
            assert!((s.value - want).abs() <= s.error + 1e-15, "{lam} {mu}");
        }
    }
}

#[test]
fn hl_length_law_matches_direct_length_law() {
    use perimac::measures::phl_shifted_length_cdf;
    let h = MeasureSpec {
        q: zero(),
        t: rat(1, 4),
        u: rat(1, 5),
        a: vec![rat(1, 2)],
        b: vec![rat(1, 3)],
    };
    let lhs = phl_shifted_length_cdf(&h, 1, &TruncationSpec::new(14, 1e-8)).unwrap();
    let rhs = hl_length_law_rhs(1, &h, Backend::quadrature(64)).unwrap();
    assert!(
        (lhs.to_f64() - rhs.value).abs() < 1e-8,
        "{} vs {}",
        lhs.to_f64(),
        rhs.value
    );
}
