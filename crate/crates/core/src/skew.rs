//! Skew Hall-Littlewood, q-Whittaker and Schur polynomials through the
//! one-variable branching rule.
//!
//! For a single variable, `P_{λ/μ}(x) = ψ_{λ/μ} x^{|λ/μ|}` and
//! `Q_{λ/μ}(x) = φ_{λ/μ} x^{|λ/μ|}` when `λ/μ` is a horizontal strip, with
//!
//! - `ψ_{λ/μ} = ∏_{s ∈ R∖C} b_μ(s) / b_λ(s)`
//! - `φ_{λ/μ} = ∏_{s ∈ C} b_λ(s) / b_μ(s)`
//!
//! where `C` (resp. `R`) is the union of columns (resp. rows) meeting `λ/μ`.
//! Several variables are handled by summing over interlacing chains.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::partition::{horizontal_strips_above, Partition};
use crate::qseries::{b_box, b_factor, qfact};
use crate::scalar::{self, one, pow, zero, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Hall-Littlewood `P(·; 0, t)`.
    HlP,
    /// Hall-Littlewood `Q(·; 0, t)`.
    HlQ,
    /// q-Whittaker `P(·; q, 0)`.
    QwP,
    /// q-Whittaker `Q(·; q, 0)`.
    QwQ,
    Schur,
}

impl Family {
    /// `(q, t)` on the family's axis, given its one free parameter.
    pub fn qt(self, param: &Scalar) -> (Scalar, Scalar) {
        match self {
            Family::HlP | Family::HlQ => (zero(), param.clone()),
            Family::QwP | Family::QwQ => (param.clone(), zero()),
            Family::Schur => (zero(), zero()),
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Some(match s.to_ascii_uppercase().as_str() {
            "HL_P" => Family::HlP,
            "HL_Q" => Family::HlQ,
            "QW_P" => Family::QwP,
            "QW_Q" => Family::QwQ,
            "SCHUR" => Family::Schur,
            _ => return None,
        })
    }
}

fn b_at(lam: &Partition, i: usize, j: usize, q: &Scalar, t: &Scalar) -> Result<Scalar> {
    if j > lam.part(i) {
        return Ok(one());
    }
    b_box(lam.arm(i, j), lam.leg(i, j), q, t)
}

/// `ψ_{λ/μ}(q,t)`; zero unless `λ/μ` is a horizontal strip.
pub fn psi(lam: &Partition, mu: &Partition, q: &Scalar, t: &Scalar) -> Result<Scalar> {
    if !lam.is_horizontal_strip_over(mu) {
        return Ok(zero());
    }
    let rows: Vec<usize> = (1..=lam.len())
        .filter(|&i| lam.part(i) > mu.part(i))
        .collect();
    let col_hit = |j: usize| (1..=lam.len()).any(|i| mu.part(i) < j && j <= lam.part(i));
    let mut f = one();
    for &i in &rows {
        for j in 1..=mu.part(i) {
            if !col_hit(j) {
                f *= b_at(mu, i, j, q, t)? / b_at(lam, i, j, q, t)?;
            }
        }
    }
    Ok(f)
}

/// `φ_{λ/μ}(q,t)`; zero unless `λ/μ` is a horizontal strip.
pub fn phi(lam: &Partition, mu: &Partition, q: &Scalar, t: &Scalar) -> Result<Scalar> {
    if !lam.is_horizontal_strip_over(mu) {
        return Ok(zero());
    }
    let mut f = one();
    for j in 1..=lam.first() {
        let hit = (1..=lam.len()).any(|i| mu.part(i) < j && j <= lam.part(i));
        if !hit {
            continue;
        }
        for i in 1..=lam.len() {
            if j <= lam.part(i) {
                f *= b_at(lam, i, j, q, t)? / b_at(mu, i, j, q, t)?;
            }
        }
    }
    Ok(f)
}

/// `b_λ / b_μ` on the family's axis, so that `Q_{λ/μ} = (b_λ/b_μ) P_{λ/μ}`.
pub fn dual_ratio(
    family: Family,
    lam: &Partition,
    mu: &Partition,
    param: &Scalar,
) -> Result<Scalar> {
    let (q, t) = family.qt(param);
    Ok(b_factor(lam, &q, &t)? / b_factor(mu, &q, &t)?)
}

/// Coefficient of `x^{|λ/μ|}` in the one-variable skew polynomial.
pub fn branching_coeff(
    family: Family,
    lam: &Partition,
    mu: &Partition,
    param: &Scalar,
) -> Result<Scalar> {
    let (q, t) = family.qt(param);
    match family {
        Family::Schur => Ok(if lam.is_horizontal_strip_over(mu) {
            one()
        } else {
            zero()
        }),
        Family::HlP | Family::QwP => psi(lam, mu, &q, &t),
        Family::HlQ => phi(lam, mu, &q, &t),
        Family::QwQ => {
            let p = psi(lam, mu, &q, &t)?;
            if p.is_zero() {
                return Ok(p);
            }
            Ok(p * dual_ratio(family, lam, mu, param)?)
        }
    }
}

/// One-variable skew polynomial `F_{λ/μ}(x)`.
pub fn skew_one(
    family: Family,
    lam: &Partition,
    mu: &Partition,
    x: &Scalar,
    param: &Scalar,
) -> Result<Scalar> {
    let c = branching_coeff(family, lam, mu, param)?;
    if c.is_zero() {
        return Ok(c);
    }
    Ok(c * pow(x, (lam.size() - mu.size()) as u32))
}

/// Pushes a weighted family of partitions through one more variable,
/// keeping only results with first part `≤ max_part` and size `≤ max_size`.
pub fn grow(
    family: Family,
    from: &HashMap<Partition, Scalar>,
    x: &Scalar,
    param: &Scalar,
    max_part: usize,
    max_size: usize,
) -> Result<HashMap<Partition, Scalar>> {
    let mut out: HashMap<Partition, Scalar> = HashMap::new();
    for (kappa, w) in from {
        for next in horizontal_strips_above(kappa, max_part, max_size) {
            let c = skew_one(family, &next, kappa, x, param)?;
            if c.is_zero() {
                continue;
            }
            *out.entry(next).or_insert_with(zero) += w * c;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Multi-variable skew polynomial by summing over interlacing chains.
pub fn skew_multi(
    family: Family,
    lam: &Partition,
    mu: &Partition,
    x: &[Scalar],
    param: &Scalar,
) -> Result<Scalar> {
    if !lam.contains(mu) {
        return Ok(zero());
    }
    let mut layer: HashMap<Partition, Scalar> = HashMap::from([(mu.clone(), one())]);
    for xi in x {
        let mut out: HashMap<Partition, Scalar> = HashMap::new();
        for (kappa, w) in &layer {
            for next in strips_between(kappa, lam) {
                let c = skew_one(family, &next, kappa, xi, param)?;
                if !c.is_zero() {
                    *out.entry(next).or_insert_with(zero) += w * c;
                }
            }
        }
        layer = out;
    }
    Ok(layer.remove(lam).unwrap_or_else(zero))
}

/// All `κ'` with `κ ⊆ κ' ⊆ λ` and `κ'/κ` a horizontal strip.
fn strips_between(kappa: &Partition, lam: &Partition) -> Vec<Partition> {
    let l = lam.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(l);
    fn rec(
        k: &Partition,
        lam: &Partition,
        i: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if i > lam.len() {
            out.push(Partition::new(cur.clone()).expect("interlacing"));
            return;
        }
        let lo = k.part(i);
        let hi = if i == 1 {
            lam.part(1)
        } else {
            lam.part(i).min(k.part(i - 1))
        };
        for p in lo..=hi {
            cur.push(p);
            rec(k, lam, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(kappa, lam, 1, &mut cur, &mut out);
    out
}

/// `(n^N, μ)`: the rectangle `n^N` with `μ` appended below it.
pub fn pad_rect(mu: &Partition, n: usize, rows: usize) -> Result<Partition> {
    if mu.first() > n {
        return Err(Error::Domain(format!(
            "pad_rect needs μ_1 ≤ n, got μ = {mu}, n = {n}"
        )));
    }
    let mut parts = vec![n; if n == 0 { 0 } else { rows }];
    parts.extend_from_slice(mu.parts());
    Partition::new(parts)
}

/// Difference of the two sides of the complementation identity
/// `(q;q)_{n-μ_1}/(q;q)_{n-λ_1} Q_{λ/μ}(x;q,0) = ∏ x_i^n P_{(n^N,μ)/λ}(x^{-1};q,0)`
/// with `N = |x|`.
pub fn complement_residual(
    lam: &Partition,
    mu: &Partition,
    n: usize,
    x: &[Scalar],
    q: &Scalar,
) -> Result<Scalar> {
    if lam.first() > n {
        return Err(Error::Domain(format!("need λ_1 ≤ n, got {lam}, n = {n}")));
    }
    let lhs = qfact(q, n - mu.first()) / qfact(q, n - lam.first())
        * skew_multi(Family::QwQ, lam, mu, x, q)?;
    let inv: Vec<Scalar> = x.iter().map(|v| v.recip()).collect();
    let xn = scalar::product(x.iter().map(|v| pow(v, n as u32)));
    let rhs = xn * skew_multi(Family::QwP, &pad_rect(mu, n, x.len())?, lam, &inv, q)?;
    Ok(lhs - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate_partitions;
    use crate::scalar::rat;
    use crate::symfunc::{skew_via_inner, Dual};

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hand_values() {
        let a = rat(1, 3);
        let t = rat(1, 4);
        assert_eq!(
            skew_one(Family::HlP, &p(&[2, 1]), &p(&[1]), &a, &t).unwrap(),
            &a * &a
        );
        assert_eq!(
            skew_one(Family::HlQ, &p(&[1]), &p(&[]), &a, &t).unwrap(),
            (one() - &t) * &a
        );
        assert_eq!(
            skew_one(Family::HlP, &p(&[1, 1]), &p(&[]), &a, &t).unwrap(),
            zero()
        );
        assert_eq!(
            skew_one(Family::Schur, &p(&[3, 1]), &p(&[1]), &a, &t).unwrap(),
            pow(&a, 3)
        );
        assert!(pad_rect(&p(&[3]), 2, 2).is_err());
        assert_eq!(pad_rect(&p(&[1]), 2, 2).unwrap(), p(&[2, 2, 1]));
    }

    /// Explicit Hall-Littlewood forms: `ψ = ∏_{θ'_j=0, θ'_{j+1}=1} (1-t^{m_j(μ)})`,
    /// `φ = ∏_{θ'_i=1, θ'_{i+1}=0} (1-t^{m_i(λ)})` with `θ' = λ' - μ'`.
    fn hl_explicit(lam: &Partition, mu: &Partition, t: &Scalar) -> (Scalar, Scalar) {
        if !lam.is_horizontal_strip_over(mu) {
            return (zero(), zero());
        }
        let lc = lam.conjugate();
        let mc = mu.conjugate();
        let th = |j: usize| lc.part(j) - mc.part(j);
        let mut ps = one();
        let mut ph = one();
        for j in 1..=lam.first() + 1 {
            if th(j) == 0 && th(j + 1) == 1 {
                ps *= one() - pow(t, mu.multiplicity(j) as u32);
            }
            if th(j) == 1 && th(j + 1) == 0 {
                ph *= one() - pow(t, lam.multiplicity(j) as u32);
            }
        }
        (ps, ph)
    }

    /// q-Whittaker one-variable form `ψ = ∏_i binom_q(λ_i - λ_{i+1}, λ_i - μ_i)`.
    fn qw_explicit(lam: &Partition, mu: &Partition, q: &Scalar) -> Scalar {
        if !lam.is_horizontal_strip_over(mu) {
            return zero();
        }
        let mut f = one();
        for i in 1..=lam.len() {
            let top = lam.part(i) - lam.part(i + 1);
            let k = lam.part(i) - mu.part(i);
            f *= qfact(q, top) / (qfact(q, k) * qfact(q, top - k));
        }
        f
    }

    #[test]
    fn branching_matches_explicit_forms() {
        let t = rat(2, 7);
        let q = rat(1, 3);
        let all = enumerate_partitions(8, 8, 8);
        for lam in &all {
            for mu in all.iter().filter(|m| lam.contains(m)) {
                let (ps, ph) = hl_explicit(lam, mu, &t);
                assert_eq!(
                    branching_coeff(Family::HlP, lam, mu, &t).unwrap(),
                    ps,
                    "{lam}/{mu}"
                );
                assert_eq!(
                    branching_coeff(Family::HlQ, lam, mu, &t).unwrap(),
                    ph,
                    "{lam}/{mu}"
                );
                let hq = branching_coeff(Family::HlP, lam, mu, &t).unwrap()
                    * dual_ratio(Family::HlP, lam, mu, &t).unwrap();
                assert_eq!(hq, ph);
                assert_eq!(
                    branching_coeff(Family::QwP, lam, mu, &q).unwrap(),
                    qw_explicit(lam, mu, &q)
                );
            }
        }
    }

    #[test]
    fn multi_variable_matches_symmetric_function_skew() {
        let x = [rat(1, 2), rat(1, 3), rat(-2, 5)];
        let t = rat(1, 4);
        let q = rat(1, 3);
        let cases = [
            (Family::HlP, Dual::P, zero(), t.clone(), t.clone()),
            (Family::HlQ, Dual::Q, zero(), t.clone(), t.clone()),
            (Family::QwP, Dual::P, q.clone(), zero(), q.clone()),
            (Family::QwQ, Dual::Q, q.clone(), zero(), q.clone()),
        ];
        for lam in enumerate_partitions(5, 5, 5) {
            for mu in enumerate_partitions(3, 3, 3)
                .into_iter()
                .filter(|m| lam.contains(m))
            {
                for (fam, dual, qq, tt, param) in &cases {
                    let a = skew_multi(*fam, &lam, &mu, &x, param).unwrap();
                    let b = skew_via_inner(&lam, &mu, *dual, qq, tt, 12)
                        .unwrap()
                        .evaluate(&x);
                    assert_eq!(a, b, "{fam:?} {lam}/{mu}");
                }
            }
        }
    }

    #[test]
    fn complementation_small() {
        let q = rat(1, 3);
        let x = [rat(1, 2), rat(2, 3)];
        for lam in enumerate_partitions(6, 3, 3) {
            for mu in enumerate_partitions(6, 3, 3)
                .into_iter()
                .filter(|m| lam.contains(m))
            {
                assert!(
                    complement_residual(&lam, &mu, 3, &x, &q).unwrap().is_zero(),
                    "{lam}/{mu}"
                );
            }
        }
    }
}
