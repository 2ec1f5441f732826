//! Two-alphabet functions `W_λ(x;q,t;y)`: the image of `J_λ(x;q,t)` under
//! `p_k ↦ (p_k(x) - (-1)^k p_k(y)) / (1 - t^k)`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::measures::{periodic_schur_cdf, TruncatedValue, TruncationSpec};
use crate::partition::{enumerate_partitions, Partition};
use crate::qseries::qfact;
use crate::scalar::{self, one, pow, Scalar};
use crate::skew::{skew_multi, Family};
use crate::symfunc::{macdonald_j, power_sum_at};

pub fn w_eval(
    lam: &Partition,
    q: &Scalar,
    t: &Scalar,
    x: &[Scalar],
    y: &[Scalar],
) -> Result<Scalar> {
    let d = lam.size();
    for k in 1..=d {
        if (one() - pow(t, k as u32)).is_zero() {
            return Err(Error::Degenerate(format!("1 - t^{k} vanishes at t = {t}")));
        }
    }
    let j = macdonald_j(lam, q, t, d)?;
    Ok(j.specialize_power_sums(|k| {
        let py = power_sum_at(y, k);
        let signed = if k % 2 == 0 { -py } else { py };
        (power_sum_at(x, k) + signed) / (one() - pow(t, k as u32))
    }))
}

/// `W_λ(x;q,t;y) - W_{λ'}(y;t,q;x)`.
pub fn w_symmetry_residual(
    lam: &Partition,
    q: &Scalar,
    t: &Scalar,
    x: &[Scalar],
    y: &[Scalar],
) -> Result<Scalar> {
    Ok(w_eval(lam, q, t, x, y)? - w_eval(&lam.conjugate(), t, q, y, x)?)
}

/// The alphabet `(a^{-1}, b)`.
fn inverted_union(a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>> {
    if a.iter().any(Zero::is_zero) {
        return Err(Error::Domain("a contains 0; a^{-1} is undefined".into()));
    }
    Ok(a.iter()
        .map(|v| v.recip())
        .chain(b.iter().cloned())
        .collect())
}

fn a_power(a: &[Scalar], n: usize) -> Scalar {
    scalar::product(a.iter().map(|v| pow(v, n as u32)))
}

/// `∏ a_i^n · W_{n^M}(a^{-1}, b; q, 0; 0)` with `M = |a|`.
pub fn ims_lhs_w(n: usize, a: &[Scalar], b: &[Scalar], q: &Scalar) -> Result<Scalar> {
    let lam = Partition::rectangle(n, a.len());
    Ok(a_power(a, n) * w_eval(&lam, q, &Scalar::zero(), &inverted_union(a, b)?, &[])?)
}

/// `(q;q)_n Σ_{λ_1 ≤ n} q^{|μ|} s_{λ/μ}(a) s_{λ/μ}(b)`, truncated.
pub fn ims_lhs_schur(
    n: usize,
    a: &[Scalar],
    b: &[Scalar],
    q: &Scalar,
    trunc: &TruncationSpec,
) -> Result<TruncatedValue> {
    let s = periodic_schur_cdf(n, a, b, q, trunc)?;
    let f = qfact(q, n);
    Ok(TruncatedValue {
        value: &s.value * &f,
        cap: s.cap,
        increment: &s.increment * &f,
        converged: s.converged,
    })
}

/// `∏ a_i^n · W_{M^n}(0; 0, q; a^{-1}, b)` with `M = |a|`.
pub fn qw_rhs_w(n: usize, a: &[Scalar], b: &[Scalar], q: &Scalar) -> Result<Scalar> {
    let lam = Partition::rectangle(a.len(), n);
    Ok(a_power(a, n) * w_eval(&lam, &Scalar::zero(), q, &[], &inverted_union(a, b)?)?)
}

/// `Σ_{μ_1 ≤ n} (q;q)_n / (q;q)_{n-μ_1} · P_μ(a;q,0) Q_μ(b;q,0)`; a finite sum.
pub fn qw_rhs_sum(n: usize, a: &[Scalar], b: &[Scalar], q: &Scalar) -> Result<Scalar> {
    let len = a.len().min(b.len());
    let mut terms = Vec::new();
    for mu in enumerate_partitions(n * len, n, len) {
        let pq = skew_multi(Family::QwP, &mu, &Partition::empty(), a, q)?
            * skew_multi(Family::QwQ, &mu, &Partition::empty(), b, q)?;
        terms.push(pq * qfact(q, n) / qfact(q, n - mu.first()));
    }
    Ok(scalar::sum(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, zero};

    #[test]
    fn degree_one() {
        let (x, y) = ([rat(1, 2), rat(1, 3)], [rat(1, 5)]);
        let w = w_eval(
            &Partition::new(vec![1]).unwrap(),
            &rat(1, 3),
            &rat(1, 4),
            &x,
            &y,
        )
        .unwrap();
        assert_eq!(w, rat(5, 6) + rat(1, 5));
    }

    #[test]
    fn y_equal_minus_tx_gives_j() {
        let (q, t) = (rat(1, 3), rat(1, 4));
        let x = [rat(1, 2), rat(2, 3)];
        let y: Vec<Scalar> = x.iter().map(|v| -(&t * v)).collect();
        let lam = Partition::new(vec![2, 1]).unwrap();
        let j = macdonald_j(&lam, &q, &t, 3).unwrap().evaluate(&x);
        assert_eq!(w_eval(&lam, &q, &t, &x, &y).unwrap(), j);
    }

    #[test]
    fn n_zero_sides_are_one() {
        let (a, b) = ([rat(1, 2)], [rat(1, 3)]);
        assert_eq!(qw_rhs_w(0, &a, &b, &rat(1, 4)).unwrap(), one());
        assert_eq!(qw_rhs_sum(0, &a, &b, &rat(1, 4)).unwrap(), one());
        assert!(w_eval(&Partition::new(vec![1]).unwrap(), &zero(), &one(), &a, &b).is_err());
    }
}
