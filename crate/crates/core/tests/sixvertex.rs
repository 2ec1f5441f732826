use std::collections::BTreeMap;

use proptest::prelude::*;

use perimac::measures::{phl_joint, MeasureSpec, TruncationSpec};
use perimac::scalar::{self, one, rat, zero, Scalar};
use perimac::sixvertex::{
    domain_transfer, mc_sample, quasi_joint, stationary, vertex_probs, Edges,
};

fn spec(u: Scalar) -> MeasureSpec {
    MeasureSpec {
        q: zero(),
        t: rat(1, 4),
        u,
        a: vec![rat(1, 3), rat(1, 4)],
        b: vec![rat(1, 5), rat(1, 6)],
    }
}

#[test]
fn single_vertex_domain_is_the_vertex_law() {
    let s = MeasureSpec {
        q: zero(),
        t: rat(1, 4),
        u: zero(),
        a: vec![rat(1, 2)],
        b: vec![rat(1, 3)],
    };
    let op = domain_transfer(1, 1, &one(), &s).unwrap();
    let law = vertex_probs(&rat(1, 2), &rat(1, 3), &rat(1, 4)).unwrap();
    for (input, outs) in &op.table {
        for (o, p) in outs {
            assert_eq!(
                *p,
                law.prob(input.rows == 1, input.cols == 1, o.rows == 1, o.cols == 1)
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn transfer_rows_are_distributions(
        a in prop::collection::vec(1i64..=9, 1..=3),
        b in prop::collection::vec(1i64..=9, 1..=2),
        t in 0i64..=9, z in 0i64..=10,
    ) {
        let s = MeasureSpec {
            q: zero(),
            t: rat(t, 10),
            u: zero(),
            a: a.iter().map(|v| rat(*v, 10)).collect(),
            b: b.iter().map(|v| rat(*v, 10)).collect(),
        };
        let op = domain_transfer(a.len(), b.len(), &rat(z, 10), &s).unwrap();
        for (input, outs) in &op.table {
            prop_assert_eq!(scalar::sum(outs.iter().map(|(_, p)| p.clone())), one());
            for (o, _) in outs {
                prop_assert_eq!(o.arrows(), input.arrows());
            }
        }
    }
}

#[test]
fn zero_u_matches_hall_littlewood_measure() {
    let s = spec(zero());
    let j = quasi_joint(3, 4, &s).unwrap();
    let h = phl_joint(&s, &TruncationSpec::new(10, 1e-6)).unwrap();
    for (k, v) in &j.entries {
        assert!(
            (scalar::to_f64(v) - scalar::to_f64(&h.get(k))).abs() < 1e-6,
            "{k:?}"
        );
    }
}

#[test]
fn chain_stabilises_in_length() {
    let s = spec(rat(1, 3));
    let a = quasi_joint(12, 10, &s).unwrap();
    let b = quasi_joint(16, 10, &s).unwrap();
    for (k, v) in &b.entries {
        assert!(
            scalar::to_f64(&scalar::abs(&(v - a.get(k)))) < 1e-6,
            "{k:?}"
        );
    }
}

/// Product Bernoulli law on a domain's edges, conditioned on `n` arrows.
fn bernoulli_oracle(s: &MeasureSpec) -> BTreeMap<Edges, Scalar> {
    let (m, n) = (s.a.len(), s.b.len());
    let mut w = BTreeMap::new();
    for cols in 0..1u32 << m {
        for rows in 0..1u32 << n {
            let e = Edges { cols, rows };
            if e.arrows() as usize != n {
                continue;
            }
            let mut p = one();
            for (i, a) in s.a.iter().enumerate() {
                let up = a / (one() + a);
                p *= if cols >> i & 1 == 1 { up } else { one() - up };
            }
            for (j, b) in s.b.iter().enumerate() {
                let right = (one() + b).recip();
                p *= if rows >> j & 1 == 1 {
                    right
                } else {
                    one() - right
                };
            }
            w.insert(e, p);
        }
    }
    let z = scalar::sum(w.values().cloned());
    w.into_iter().map(|(e, p)| (e, p / &z)).collect()
}

#[test]
fn stationary_matches_conditioned_bernoulli() {
    let s = spec(zero());
    assert_eq!(stationary(&s).unwrap(), bernoulli_oracle(&s));
}

#[test]
fn monte_carlo_agrees_with_exact_law() {
    let s = spec(rat(1, 3));
    let exact = quasi_joint(6, 8, &s).unwrap();
    let mc = mc_sample(6, 20_000, 11, &s).unwrap();
    for (k, v) in &exact.entries {
        let p = scalar::to_f64(v);
        let sigma = (p * (1.0 - p) / mc.samples as f64).sqrt();
        assert!((mc.frequency(k) - p).abs() <= 5.0 * sigma + 1e-4, "{k:?}");
    }
    let z = mc_sample(4, 500, 3, &spec(zero())).unwrap();
    assert!(z.counts.keys().all(|k| k.base_length == 0));
}
