//! Truncated symmetric functions with exact coefficients in the monomial or
//! power-sum basis, the `(q,t)` scalar product and Macdonald polynomials.

mod basis;
mod macdonald;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Value};

pub use basis::{tables, DegreeTables};
pub use macdonald::{
    cauchy_kernel, hall_littlewood_p, macdonald_j, macdonald_p, macdonald_q, pair_weight,
    q_whittaker_p, schur, skew_via_inner, Dual,
};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scalar::{self, int, one, pow, zero, Scalar};

/// Default degree cap.
pub const DEFAULT_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Monomial,
    PowerSum,
}

impl Basis {
    fn name(self) -> &'static str {
        match self {
            Basis::Monomial => "m",
            Basis::PowerSum => "p",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymFunc {
    basis: Basis,
    cap: usize,
    terms: BTreeMap<Partition, Scalar>,
}

impl SymFunc {
    pub fn zero(basis: Basis, cap: usize) -> Self {
        SymFunc {
            basis,
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(cap: usize) -> Self {
        Self::power_sum(Partition::empty(), cap).expect("degree 0")
    }

    pub fn from_terms<I>(basis: Basis, cap: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, Scalar)>,
    {
        let mut f = SymFunc::zero(basis, cap);
        for (lam, c) in terms {
            if lam.size() > cap {
                return Err(Error::DegreeCap {
                    degree: lam.size(),
                    cap,
                });
            }
            f.add_term(lam, c);
        }
        Ok(f)
    }

    pub fn monomial(lam: Partition, cap: usize) -> Result<Self> {
        Self::from_terms(Basis::Monomial, cap, [(lam, one())])
    }

    pub fn power_sum(lam: Partition, cap: usize) -> Result<Self> {
        Self::from_terms(Basis::PowerSum, cap, [(lam, one())])
    }

    fn add_term(&mut self, lam: Partition, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(lam) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, lam: &Partition) -> Scalar {
        self.terms.get(lam).cloned().unwrap_or_else(zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Partition::size).max().unwrap_or(0)
    }

    pub fn to_basis(&self, target: Basis) -> SymFunc {
        if target == self.basis {
            return self.clone();
        }
        let mut out = SymFunc::zero(target, self.cap);
        for (lam, c) in &self.terms {
            let tab = tables(lam.size());
            let row = tab.index[lam];
            let m = match self.basis {
                Basis::Monomial => &tab.m2p,
                Basis::PowerSum => &tab.p2m,
            };
            for (j, x) in m[row].iter().enumerate() {
                if !x.is_zero() {
                    out.add_term(tab.parts[j].clone(), c * x);
                }
            }
        }
        out
    }

    pub fn to_p(&self) -> SymFunc {
        self.to_basis(Basis::PowerSum)
    }

    pub fn to_m(&self) -> SymFunc {
        self.to_basis(Basis::Monomial)
    }

    pub fn add(&self, other: &SymFunc) -> SymFunc {
        let mut out = self.clone();
        out.cap = self.cap.max(other.cap);
        for (lam, c) in other.to_basis(self.basis).terms {
            out.add_term(lam, c);
        }
        out
    }

    pub fn sub(&self, other: &SymFunc) -> SymFunc {
        self.add(&other.scale(&-one()))
    }

    pub fn scale(&self, c: &Scalar) -> SymFunc {
        let mut out = SymFunc::zero(self.basis, self.cap);
        for (lam, x) in &self.terms {
            out.add_term(lam.clone(), x * c);
        }
        out
    }

    /// Product in the power-sum basis; fails if the result exceeds the cap.
    pub fn mul(&self, other: &SymFunc) -> Result<SymFunc> {
        let (f, dropped) = self.mul_truncated(other);
        if dropped {
            return Err(Error::DegreeCap {
                degree: self.degree() + other.degree(),
                cap: self.cap.min(other.cap),
            });
        }
        Ok(f)
    }

    /// Product that drops terms above the cap; the flag reports whether any were dropped.
    pub fn mul_truncated(&self, other: &SymFunc) -> (SymFunc, bool) {
        let cap = self.cap.min(other.cap);
        let a = self.to_p();
        let b = other.to_p();
        let mut out = SymFunc::zero(Basis::PowerSum, cap);
        let mut dropped = false;
        for (l1, c1) in &a.terms {
            for (l2, c2) in &b.terms {
                if l1.size() + l2.size() > cap {
                    dropped = true;
                    continue;
                }
                out.add_term(l1.union(l2), c1 * c2);
            }
        }
        (out, dropped)
    }

    /// `⟨f, g⟩_{q,t}` with `⟨p_λ, p_μ⟩ = δ_{λμ} z_λ ∏ (1-q^{λ_i})/(1-t^{λ_i})`.
    pub fn inner(&self, other: &SymFunc, q: &Scalar, t: &Scalar) -> Result<Scalar> {
        let a = self.to_p();
        let b = other.to_p();
        let mut acc = Vec::new();
        for (lam, c) in &a.terms {
            if let Some(d) = b.terms.get(lam) {
                acc.push(c * d * pair_weight(lam, q, t)?);
            }
        }
        Ok(scalar::sum(acc))
    }

    /// `ω_{q,t} p_λ = (-1)^{|λ|-l(λ)} ∏ (1-q^{λ_i})/(1-t^{λ_i}) p_λ`.
    pub fn omega(&self, q: &Scalar, t: &Scalar) -> Result<SymFunc> {
        let mut out = SymFunc::zero(Basis::PowerSum, self.cap);
        for (lam, c) in &self.to_p().terms {
            let mut f = if (lam.size() - lam.len()) % 2 == 0 {
                one()
            } else {
                -one()
            };
            for &k in lam.parts() {
                let den = one() - pow(t, k as u32);
                if den.is_zero() {
                    return Err(Error::Degenerate(format!("ω pole at t = {t}")));
                }
                f *= (one() - pow(q, k as u32)) / den;
            }
            out.add_term(lam.clone(), c * f);
        }
        Ok(out)
    }

    /// `Σ_λ c_λ ∏_i g(λ_i)` over the power-sum expansion.
    pub fn specialize_power_sums<F>(&self, mut g: F) -> Scalar
    where
        F: FnMut(usize) -> Scalar,
    {
        let mut cache: BTreeMap<usize, Scalar> = BTreeMap::new();
        let mut acc = Vec::new();
        for (lam, c) in &self.to_p().terms {
            let mut v = c.clone();
            for &k in lam.parts() {
                let gk = cache.entry(k).or_insert_with(|| g(k));
                v *= &*gk;
            }
            acc.push(v);
        }
        scalar::sum(acc)
    }

    /// Exact evaluation at a finite alphabet.
    pub fn evaluate(&self, x: &[Scalar]) -> Scalar {
        self.specialize_power_sums(|k| power_sum_at(x, k))
    }

    /// Floating evaluation at complex points, through the monomial expansion.
    pub fn evaluate_complex(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (lam, c) in &self.to_m().terms {
            if lam.len() > z.len() {
                continue;
            }
            acc += scalar::to_f64(c) * monomial_at_complex(lam, z);
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(lam, c)| json!({ "partition": lam.parts(), "coeff": scalar::format(c) }))
            .collect();
        json!({ "basis": self.basis.name(), "terms": terms })
    }
}

pub fn power_sum_at(x: &[Scalar], k: usize) -> Scalar {
    scalar::sum(x.iter().map(|xi| pow(xi, k as u32)))
}

/// `m_λ(z_1, ..., z_n)` summed over the distinct rearrangements of the exponent vector.
pub fn monomial_at_complex(lam: &Partition, z: &[Complex64]) -> Complex64 {
    let n = z.len();
    if lam.len() > n {
        return Complex64::new(0.0, 0.0);
    }
    let mut exps: Vec<usize> = lam.parts().to_vec();
    exps.resize(n, 0);
    exps.sort_unstable();
    let mut acc = Complex64::new(0.0, 0.0);
    loop {
        let mut term = Complex64::new(1.0, 0.0);
        for (zi, &e) in z.iter().zip(&exps) {
            term *= zi.powu(e as u32);
        }
        acc += term;
        if !next_permutation(&mut exps) {
            break;
        }
    }
    acc
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `m_λ(x)` exactly, by summing distinct rearrangements.
pub fn monomial_at(lam: &Partition, x: &[Scalar]) -> Scalar {
    let n = x.len();
    if lam.len() > n {
        return zero();
    }
    let mut exps: Vec<usize> = lam.parts().to_vec();
    exps.resize(n, 0);
    exps.sort_unstable();
    let mut acc = Vec::new();
    loop {
        acc.push(scalar::product(
            x.iter().zip(&exps).map(|(xi, &e)| pow(xi, e as u32)),
        ));
        if !next_permutation(&mut exps) {
            break;
        }
    }
    scalar::sum(acc)
}

/// Integer helper used in tests and oracles.
pub fn from_int_terms(basis: Basis, cap: usize, terms: &[(&[usize], i64)]) -> SymFunc {
    SymFunc::from_terms(
        basis,
        cap,
        terms
            .iter()
            .map(|(p, c)| (Partition::new(p.to_vec()).expect("partition"), int(*c))),
    )
    .expect("within cap")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn basis_round_trip() {
        let f = from_int_terms(
            Basis::Monomial,
            6,
            &[(&[2, 1], 3), (&[1, 1, 1], -2), (&[4], 1)],
        );
        assert_eq!(f.to_p().to_m(), f);
        let p1 = SymFunc::power_sum(p(&[1]), 6).unwrap();
        let sq = p1.mul(&p1).unwrap().to_m();
        assert_eq!(
            sq,
            from_int_terms(Basis::Monomial, 6, &[(&[2], 1), (&[1, 1], 2)])
        );
    }

    #[test]
    fn cap_is_enforced() {
        let a = SymFunc::power_sum(p(&[3]), 4).unwrap();
        assert!(a.mul(&a).is_err());
        let (f, dropped) = a.mul_truncated(&a);
        assert!(dropped && f.is_zero());
        assert!(SymFunc::monomial(p(&[5]), 4).is_err());
    }

    #[test]
    fn evaluation_agrees_between_bases() {
        let x = [rat(1, 2), rat(-1, 3), rat(2, 5)];
        let f = from_int_terms(
            Basis::Monomial,
            6,
            &[(&[2, 1], 1), (&[1, 1, 1], 4), (&[3, 3], 1)],
        );
        let direct: Scalar = f.terms().iter().map(|(l, c)| c * monomial_at(l, &x)).sum();
        assert_eq!(f.evaluate(&x), direct);
        let z: Vec<Complex64> = x
            .iter()
            .map(|v| Complex64::new(scalar::to_f64(v), 0.0))
            .collect();
        assert!((f.evaluate_complex(&z).re - scalar::to_f64(&direct)).abs() < 1e-14);
    }

    #[test]
    fn omega_is_involutive_up_to_swap() {
        let q = rat(1, 3);
        let t = rat(1, 5);
        let f = from_int_terms(Basis::Monomial, 6, &[(&[2, 1], 1), (&[3], 2)]);
        let back = f.omega(&q, &t).unwrap().omega(&t, &q).unwrap();
        assert_eq!(back.to_m(), f);
    }

    #[test]
    fn json_shape() {
        let f = from_int_terms(Basis::Monomial, 4, &[(&[2], 1)]);
        assert_eq!(
            f.to_json().to_string(),
            r#"{"basis":"m","terms":[{"coeff":"1","partition":[2]}]}"#
        );
    }
}
