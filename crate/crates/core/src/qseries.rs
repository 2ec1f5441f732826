//! q-Pochhammer symbols, the q-geometric law and the arm-leg factors `b_λ`, `c_λ`.
//!
//! Infinite products are truncated adaptively: factors are taken until the
//! logarithm of the dropped tail is bounded by [`TAIL_BOUND`]. The result is the
//! truncated product rounded to a multiple of `2^{-RESOLUTION_BITS}`, far below
//! the truncation error, which keeps the rationals small.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scalar::{self, one, pow, Scalar};

/// Target bound on `|log(dropped tail)|` for every infinite product: `2^{-100}`.
pub const TAIL_BOUND: f64 = 7.888609052210118e-31;

/// Resolution of truncated infinite products.
pub const RESOLUTION_BITS: u32 = 256;

/// Hard cap on the number of factors in a single infinite product.
pub const MAX_DEPTH: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochLength {
    Finite(usize),
    Infinite,
}

/// `(z; q)_n = ∏_{k=0}^{n-1} (1 - z q^k)`, with `n = ∞` allowed for `|q| < 1`.
pub fn qpoch(z: &Scalar, q: &Scalar, n: PochLength) -> Result<Scalar> {
    match n {
        PochLength::Finite(n) => {
            let mut qk = one();
            let mut factors = Vec::with_capacity(n);
            for _ in 0..n {
                factors.push(one() - z * &qk);
                qk *= q;
            }
            Ok(scalar::product(factors))
        }
        PochLength::Infinite => qpoch_inf_depth(z, q, MAX_DEPTH),
    }
}

/// `(z; q)_∞`.
pub fn qpoch_inf(z: &Scalar, q: &Scalar) -> Result<Scalar> {
    qpoch_inf_depth(z, q, MAX_DEPTH)
}

/// `(z; q)_∞` with an explicit cap on the number of factors.
pub fn qpoch_inf_depth(z: &Scalar, q: &Scalar, depth: usize) -> Result<Scalar> {
    if depth == 0 {
        return Err(Error::Domain("depth must be at least 1".into()));
    }
    if q.abs() >= one() {
        return Err(Error::Domain(format!(
            "infinite q-Pochhammer needs |q| < 1, got q = {q}"
        )));
    }
    if q.is_zero() {
        return Ok(one() - z);
    }
    let zf = scalar::to_f64(&z.abs());
    let qf = scalar::to_f64(&q.abs());
    let mut factors = Vec::new();
    let mut qk = one();
    let mut qkf = 1.0f64;
    loop {
        let tail = zf * qkf;
        if tail < 0.5 && tail / ((1.0 - qf) * (1.0 - tail)) < TAIL_BOUND {
            break;
        }
        if factors.len() == depth {
            return Err(Error::Truncation(format!(
                "(z;q)_inf with z = {z}, q = {q} needs more than {depth} factors"
            )));
        }
        factors.push(one() - z * &qk);
        qk *= q;
        qkf *= qf;
    }
    Ok(scalar::product_rounded(factors, RESOLUTION_BITS))
}

/// `(z; q, u)_∞ = ∏_{k,l ≥ 0} (1 - q^k u^l z)`.
pub fn qpoch_double(z: &Scalar, q: &Scalar, u: &Scalar) -> Result<Scalar> {
    if q.abs() >= one() || u.abs() >= one() {
        return Err(Error::Domain(format!(
            "double q-Pochhammer needs |q|,|u| < 1, got {q}, {u}"
        )));
    }
    if z.is_zero() {
        return Ok(one());
    }
    if u.is_zero() {
        return qpoch_inf(z, q);
    }
    if q.is_zero() {
        return qpoch_inf(z, u);
    }
    let zf = scalar::to_f64(&z.abs());
    let qf = scalar::to_f64(&q.abs());
    let uf = scalar::to_f64(&u.abs());
    let mut delta = TAIL_BOUND / 16.0;
    let (rows, cols) = loop {
        let mut cols = Vec::new();
        let mut row_mag = zf;
        while row_mag > delta || cols.is_empty() {
            let mut k = 0usize;
            let mut m = row_mag;
            while m > delta {
                k += 1;
                m *= qf;
                if qf == 0.0 {
                    break;
                }
            }
            cols.push(k);
            row_mag *= uf;
            if uf == 0.0 {
                break;
            }
            if cols.len() > MAX_DEPTH {
                return Err(Error::Truncation("double product row cap".into()));
            }
        }
        let r = cols.len() as f64;
        let bound = delta * (r / (1.0 - qf) + 1.0 / ((1.0 - uf) * (1.0 - qf)));
        if bound / (1.0 - delta) < TAIL_BOUND {
            break (cols.len(), cols);
        }
        delta /= 4.0;
    };
    let total: usize = cols.iter().sum();
    if total > MAX_DEPTH {
        return Err(Error::Truncation(format!(
            "double product needs {total} factors"
        )));
    }
    let mut factors = Vec::with_capacity(total);
    let mut ul = z.clone();
    for &k_max in cols.iter().take(rows) {
        let mut term = ul.clone();
        for _ in 0..k_max {
            factors.push(one() - &term);
            term *= q;
        }
        ul *= u;
    }
    Ok(scalar::product_rounded(factors, RESOLUTION_BITS))
}

/// The q-geometric law `P(n) = q^n (q;q)_∞ / (q;q)_n` on `n ≥ 0`.
#[derive(Clone, Debug)]
pub struct QGeometric {
    q: Scalar,
    norm: Scalar,
}

impl QGeometric {
    pub fn new(q: &Scalar) -> Result<Self> {
        if q.is_negative() || *q >= one() {
            return Err(Error::Domain(format!(
                "q-geometric needs 0 ≤ q < 1, got {q}"
            )));
        }
        Ok(QGeometric {
            q: q.clone(),
            norm: qpoch_inf(q, q)?,
        })
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn pmf(&self, n: usize) -> Scalar {
        let den = qpoch(&self.q, &self.q, PochLength::Finite(n)).expect("finite product");
        pow(&self.q, n as u32) * &self.norm / den
    }

    /// `P(χ ≤ k) = (q;q)_∞ / (q;q)_k`.
    pub fn cdf(&self, k: usize) -> Scalar {
        &self.norm / qpoch(&self.q, &self.q, PochLength::Finite(k)).expect("finite product")
    }

    /// `(q;q)_∞`.
    pub fn norm(&self) -> &Scalar {
        &self.norm
    }
}

/// Single-box factor `(1 - q^a t^{l+1}) / (1 - q^{a+1} t^l)`.
pub fn b_box(a: usize, l: usize, q: &Scalar, t: &Scalar) -> Result<Scalar> {
    let num = one() - pow(q, a as u32) * pow(t, l as u32 + 1);
    let den = one() - pow(q, a as u32 + 1) * pow(t, l as u32);
    if den.is_zero() {
        return Err(Error::Degenerate(format!(
            "b factor pole at arm {a}, leg {l}"
        )));
    }
    Ok(num / den)
}

/// `b_λ(q,t) = ∏_s (1 - q^{a(s)} t^{l(s)+1}) / (1 - q^{a(s)+1} t^{l(s)})`.
pub fn b_factor(lambda: &Partition, q: &Scalar, t: &Scalar) -> Result<Scalar> {
    let mut nums = Vec::new();
    let mut dens = Vec::new();
    for (i, j) in lambda.boxes() {
        let (a, l) = (lambda.arm(i, j) as u32, lambda.leg(i, j) as u32);
        nums.push(one() - pow(q, a) * pow(t, l + 1));
        dens.push(one() - pow(q, a + 1) * pow(t, l));
    }
    let den = scalar::product(dens);
    if den.is_zero() {
        return Err(Error::Degenerate(format!(
            "b_{lambda} has a pole at q = {q}, t = {t}"
        )));
    }
    Ok(scalar::product(nums) / den)
}

/// `c_λ(q,t) = ∏_s (1 - q^{a(s)} t^{l(s)+1})`, the integral-form normaliser `J_λ = c_λ P_λ`.
pub fn c_factor(lambda: &Partition, q: &Scalar, t: &Scalar) -> Scalar {
    scalar::product(lambda.boxes().map(|(i, j)| {
        one() - pow(q, lambda.arm(i, j) as u32) * pow(t, lambda.leg(i, j) as u32 + 1)
    }))
}

/// `(q;q)_n` as a shorthand.
pub fn qfact(q: &Scalar, n: usize) -> Scalar {
    qpoch(q, q, PochLength::Finite(n)).expect("finite product")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, to_f64, zero};

    #[test]
    fn finite_and_infinite_products() {
        assert_eq!(
            qpoch(&rat(1, 2), &rat(1, 3), PochLength::Finite(0)).unwrap(),
            one()
        );
        assert_eq!(
            qpoch(&rat(1, 2), &rat(1, 3), PochLength::Finite(2)).unwrap(),
            rat(1, 2) * rat(5, 6)
        );
        let v = to_f64(&qpoch_inf(&rat(1, 2), &rat(1, 2)).unwrap());
        assert!((v - 0.288_788_095_086_602_4).abs() < 1e-15);
        assert_eq!(qpoch_inf(&rat(1, 3), &zero()).unwrap(), rat(2, 3));
        assert!(qpoch_inf(&rat(1, 3), &one()).is_err());
        assert!(qpoch_inf_depth(&rat(1, 2), &rat(9, 10), 5).is_err());
    }

    #[test]
    fn double_product_reduces_to_single() {
        // u = 0 keeps only the l = 0 row.
        let z = rat(1, 5);
        let q = rat(3, 10);
        let a = to_f64(&qpoch_double(&z, &q, &zero()).unwrap());
        assert!((a - to_f64(&qpoch_inf(&z, &q).unwrap())).abs() < 1e-28);
        let b = qpoch_double(&z, &zero(), &q).unwrap();
        let c = qpoch_inf(&z, &q).unwrap();
        assert!((to_f64(&b) - to_f64(&c)).abs() < 1e-28);
        // Symmetric in (q, u).
        let x = to_f64(&qpoch_double(&z, &rat(1, 3), &rat(1, 7)).unwrap());
        let y = to_f64(&qpoch_double(&z, &rat(1, 7), &rat(1, 3)).unwrap());
        assert!((x - y).abs() < 1e-28);
        // Against ∏_l (z u^l; q)_∞.
        let mut direct = 1.0;
        for l in 0..80 {
            direct *= to_f64(&qpoch_inf(&(&z * pow(&rat(1, 7), l)), &rat(1, 3)).unwrap());
        }
        assert!((x - direct).abs() < 1e-15);
    }

    #[test]
    fn q_geometric_sums_to_one() {
        let g = QGeometric::new(&rat(1, 3)).unwrap();
        let total: f64 = (0..80).map(|n| to_f64(&g.pmf(n))).sum();
        assert!((total - 1.0).abs() < 1e-14);
        let partial = (0..=4).map(|n| g.pmf(n)).fold(zero(), |a, b| a + b);
        assert_eq!(partial, g.cdf(4));
        let g0 = QGeometric::new(&zero()).unwrap();
        assert_eq!(g0.pmf(0), one());
        assert_eq!(g0.pmf(1), zero());
    }

    #[test]
    fn b_factor_cases() {
        let l = Partition::new(vec![2, 1]).unwrap();
        let q = rat(1, 3);
        let t = rat(1, 5);
        assert_eq!(b_factor(&l, &q, &q).unwrap(), one());
        assert_eq!(b_factor(&Partition::empty(), &q, &t).unwrap(), one());
        // Hall-Littlewood: b_λ(0,t) = ∏_i (t;t)_{m_i}.
        let l = Partition::new(vec![2, 2, 1]).unwrap();
        assert_eq!(
            b_factor(&l, &zero(), &t).unwrap(),
            qfact(&t, 2) * qfact(&t, 1)
        );
        assert!(b_factor(&Partition::new(vec![1]).unwrap(), &one(), &zero()).is_err());
    }
}
