//! Macdonald `P`, `Q`, `J` by Gram-Schmidt, and skew functions by duality.
//!
//! For one degree the monomials are processed in increasing lexicographic order
//! (a linear extension of dominance); each `P_λ` is `m_λ` minus its projections
//! onto the previously built `P_μ`. Results are cached per `(degree, q, t)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use super::{tables, Basis, SymFunc};
use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::qseries::{b_factor, c_factor, qpoch_inf};
use crate::scalar::{self, one, pow, zero, Scalar};

/// `z_λ ∏ (1-q^{λ_i}) / (1-t^{λ_i})`.
pub fn pair_weight(lam: &Partition, q: &Scalar, t: &Scalar) -> Result<Scalar> {
    let mut w = Scalar::from_integer(lam.z_factor().into());
    for &k in lam.parts() {
        let den = one() - pow(t, k as u32);
        if den.is_zero() {
            return Err(Error::Degenerate(format!("scalar product pole at t = {t}")));
        }
        w *= (one() - pow(q, k as u32)) / den;
    }
    Ok(w)
}

struct DegreeBasis {
    /// `P_λ` coefficients in the monomial basis, indexed like [`tables`].
    in_m: Vec<Vec<Scalar>>,
}

type Key = (usize, String, String);

static CACHE: OnceLock<Mutex<HashMap<Key, Arc<DegreeBasis>>>> = OnceLock::new();

fn degree_basis(d: usize, q: &Scalar, t: &Scalar) -> Result<Arc<DegreeBasis>> {
    let key = (d, q.to_string(), t.to_string());
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().unwrap().get(&key) {
        return Ok(b.clone());
    }
    let b = Arc::new(gram_schmidt(d, q, t)?);
    Ok(cache.lock().unwrap().entry(key).or_insert(b).clone())
}

fn gram_schmidt(d: usize, q: &Scalar, t: &Scalar) -> Result<DegreeBasis> {
    let tab = tables(d);
    let n = tab.parts.len();
    let weights: Vec<Scalar> = tab
        .parts
        .iter()
        .map(|l| pair_weight(l, q, t))
        .collect::<Result<_>>()?;
    let mut in_m: Vec<Vec<Scalar>> = vec![Vec::new(); n];
    let mut in_p: Vec<Vec<Scalar>> = vec![Vec::new(); n];
    let mut norms: Vec<Scalar> = vec![zero(); n];
    let dot = |a: &[Scalar], b: &[Scalar]| -> Scalar {
        scalar::sum(
            a.iter()
                .zip(b)
                .zip(&weights)
                .filter(|((x, y), _)| !x.is_zero() && !y.is_zero())
                .map(|((x, y), w)| x * y * w),
        )
    };
    // parts are in reverse-lex order, so walk from the end.
    for i in (0..n).rev() {
        let mut pm: Vec<Scalar> = vec![zero(); n];
        pm[i] = one();
        let mut pp: Vec<Scalar> = tab.m2p[i].clone();
        let m_lam_p = tab.m2p[i].clone();
        for j in (i + 1..n).rev() {
            let c = dot(&m_lam_p, &in_p[j]);
            if c.is_zero() {
                continue;
            }
            let c = c / &norms[j];
            for k in 0..n {
                if !in_m[j][k].is_zero() {
                    let v = &c * &in_m[j][k];
                    pm[k] -= v;
                }
                if !in_p[j][k].is_zero() {
                    let v = &c * &in_p[j][k];
                    pp[k] -= v;
                }
            }
        }
        let nrm = dot(&pp, &pp);
        if nrm.is_zero() {
            return Err(Error::Degenerate(format!(
                "⟨P,P⟩ vanishes for {} at q = {q}, t = {t}",
                tab.parts[i]
            )));
        }
        in_m[i] = pm;
        in_p[i] = pp;
        norms[i] = nrm;
    }
    Ok(DegreeBasis { in_m })
}

fn check_cap(lam: &Partition, cap: usize) -> Result<()> {
    if lam.size() > cap {
        return Err(Error::DegreeCap {
            degree: lam.size(),
            cap,
        });
    }
    Ok(())
}

/// `P_λ(q,t)` in the monomial basis.
pub fn macdonald_p(lam: &Partition, q: &Scalar, t: &Scalar, cap: usize) -> Result<SymFunc> {
    check_cap(lam, cap)?;
    let d = lam.size();
    let basis = degree_basis(d, q, t)?;
    let tab = tables(d);
    let row = &basis.in_m[tab.index[lam]];
    SymFunc::from_terms(
        Basis::Monomial,
        cap,
        tab.parts.iter().cloned().zip(row.iter().cloned()),
    )
}

/// `Q_λ = b_λ P_λ`.
pub fn macdonald_q(lam: &Partition, q: &Scalar, t: &Scalar, cap: usize) -> Result<SymFunc> {
    Ok(macdonald_p(lam, q, t, cap)?.scale(&b_factor(lam, q, t)?))
}

/// `J_λ = c_λ P_λ` with `c_λ = ∏ (1 - q^{a(s)} t^{l(s)+1})`.
pub fn macdonald_j(lam: &Partition, q: &Scalar, t: &Scalar, cap: usize) -> Result<SymFunc> {
    Ok(macdonald_p(lam, q, t, cap)?.scale(&c_factor(lam, q, t)))
}

pub fn hall_littlewood_p(lam: &Partition, t: &Scalar, cap: usize) -> Result<SymFunc> {
    macdonald_p(lam, &zero(), t, cap)
}

pub fn q_whittaker_p(lam: &Partition, q: &Scalar, cap: usize) -> Result<SymFunc> {
    macdonald_p(lam, q, &zero(), cap)
}

pub fn schur(lam: &Partition, cap: usize) -> Result<SymFunc> {
    macdonald_p(lam, &zero(), &zero(), cap)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dual {
    P,
    Q,
}

/// `P_{λ/μ}` or `Q_{λ/μ}` from `⟨P_{λ/μ}, Q_ν⟩ = ⟨P_λ, Q_μ Q_ν⟩` (and the
/// dual statement with `P`, `Q` exchanged). Returned in the monomial basis.
pub fn skew_via_inner(
    lam: &Partition,
    mu: &Partition,
    dual: Dual,
    q: &Scalar,
    t: &Scalar,
    cap: usize,
) -> Result<SymFunc> {
    check_cap(lam, cap)?;
    if !lam.contains(mu) {
        return Ok(SymFunc::zero(Basis::Monomial, cap));
    }
    let get = |use_p: bool, l: &Partition| {
        if use_p {
            macdonald_p(l, q, t, cap)
        } else {
            macdonald_q(l, q, t, cap)
        }
    };
    let outer = |l: &Partition| get(dual == Dual::P, l);
    let inner = |l: &Partition| get(dual == Dual::Q, l);
    let f = outer(lam)?;
    let g_mu = inner(mu)?;
    let mut acc = SymFunc::zero(Basis::Monomial, cap);
    for nu in partitions_of(lam.size() - mu.size()) {
        let g_nu = inner(&nu)?;
        let c = f.inner(&g_mu.mul(&g_nu)?, q, t)?;
        if !c.is_zero() {
            acc = acc.add(&outer(&nu)?.scale(&c));
        }
    }
    Ok(acc)
}

/// `Π(x, y; q, t) = ∏_{i,j} (t x_i y_j; q)_∞ / (x_i y_j; q)_∞`.
pub fn cauchy_kernel(x: &[Scalar], y: &[Scalar], q: &Scalar, t: &Scalar) -> Result<Scalar> {
    let mut nums = Vec::new();
    let mut dens = Vec::new();
    for xi in x {
        for yj in y {
            let z = xi * yj;
            nums.push(qpoch_inf(&(t * &z), q)?);
            dens.push(qpoch_inf(&z, q)?);
        }
    }
    Ok(scalar::product(nums) / scalar::product(dens))
}
