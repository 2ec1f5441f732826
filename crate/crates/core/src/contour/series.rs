use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::{laurent_mul, LaurentExpr, LaurentPoly};
use crate::error::{Error, Result};
use crate::scalar::{self, one, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesResult {
    /// Exact constant term of the truncated expansion.
    pub value: Scalar,
    /// Rigorous bound on `|true constant term - value|`.
    pub tail_bound: f64,
    pub order: usize,
}

/// Geometric factors sharing one exponent step, expanded as a single series.
struct Group {
    step: Vec<i32>,
    /// Coefficients `h_k(c_1, …, c_m)` for `k = 0..=order`.
    coeffs: Vec<Scalar>,
    /// Ratios on the torus, for the tail bound.
    ratios: Vec<f64>,
}

fn complete_homogeneous(cs: &[Scalar], order: usize) -> Vec<Scalar> {
    let mut h = vec![Scalar::zero(); order + 1];
    h[0] = one();
    for c in cs {
        // multiply by 1/(1 - c x)
        for k in 1..=order {
            let prev = &h[k - 1] * c;
            h[k] += prev;
        }
    }
    h
}

/// Constant term of `e` with all geometric factors expanded jointly up to
/// total order `order`. The tail bound is `sup_{|z|=r} |non-geometric part|`
/// times the dropped mass of `∏ 1/(1 - ρ_g x)` at `x = 1`.
pub fn constant_term_series(e: &LaurentExpr, order: usize, r: f64) -> Result<SeriesResult> {
    e.validate(r)?;
    let n = e.n;
    let mut f: LaurentPoly = LaurentPoly::from([(vec![0; n], one())]);
    let mut sup_factors = 1.0f64;
    let mut by_step: BTreeMap<Vec<i32>, (Vec<Scalar>, Vec<f64>)> = BTreeMap::new();
    for fac in &e.factors {
        if fac.is_geometric() {
            let slot = by_step.entry(fac.step(n)).or_default();
            slot.0.push(fac.coefficient().clone());
            slot.1.push(fac.ratio(r).expect("geometric"));
        } else {
            sup_factors *= fac.sup_norm(r);
            f = laurent_mul(&f, &fac.to_laurent(n));
        }
    }
    let groups: Vec<Group> = by_step
        .into_iter()
        .map(|(step, (cs, ratios))| Group {
            coeffs: complete_homogeneous(&cs, order),
            step,
            ratios,
        })
        .collect();

    let l1 = |v: &[i32]| v.iter().map(|x| x.unsigned_abs() as usize).sum::<usize>();
    let f_reach = f.keys().map(|k| l1(k)).max().unwrap_or(0);
    let max_step = groups.iter().map(|g| l1(&g.step)).max().unwrap_or(0);

    // g[e][k]: coefficient of z^e using total order k.
    let mut g: HashMap<Vec<i32>, Vec<Scalar>> = HashMap::new();
    let mut base = vec![Scalar::zero(); order + 1];
    base[0] = one();
    g.insert(vec![0; n], base);
    for grp in &groups {
        let mut next: HashMap<Vec<i32>, Vec<Scalar>> = HashMap::new();
        for (ex, by_order) in &g {
            for (k0, c0) in by_order.iter().enumerate() {
                if c0.is_zero() {
                    continue;
                }
                for j in 0..=order - k0 {
                    let cj = &grp.coeffs[j];
                    if cj.is_zero() {
                        continue;
                    }
                    let k = k0 + j;
                    let target: Vec<i32> = ex
                        .iter()
                        .zip(&grp.step)
                        .map(|(a, s)| a + s * j as i32)
                        .collect();
                    if l1(&target) > f_reach + max_step * (order - k) {
                        continue;
                    }
                    let slot = next
                        .entry(target)
                        .or_insert_with(|| vec![Scalar::zero(); order + 1]);
                    slot[k] += c0 * cj;
                }
            }
        }
        g = next;
    }
    let mut terms = Vec::new();
    for (ex, c) in &f {
        let neg: Vec<i32> = ex.iter().map(|x| -x).collect();
        if let Some(by_order) = g.get(&neg) {
            terms.push(c * scalar::sum(by_order.iter().cloned()));
        }
    }
    let value = scalar::sum(terms);

    let sup_f = {
        let direct: f64 = f
            .iter()
            .map(|(ex, c)| scalar::to_f64(c).abs() * r.powi(ex.iter().sum::<i32>()))
            .sum();
        direct.min(sup_factors)
    };
    let all_ratios: Vec<f64> = groups
        .iter()
        .flat_map(|g| g.ratios.iter().copied())
        .collect();
    let tail_bound = sup_f * dropped_mass(&all_ratios, order);
    if !tail_bound.is_finite() {
        return Err(Error::Contour("series tail bound is not finite".into()));
    }
    Ok(SeriesResult {
        value,
        tail_bound,
        order,
    })
}

/// The tail bound [`constant_term_series`] would report at radius `r`,
/// without performing the expansion; infinite outside the convergence window.
pub(crate) fn tail_bound_at(e: &LaurentExpr, order: usize, r: f64) -> f64 {
    if e.validate(r).is_err() {
        return f64::INFINITY;
    }
    let mut sup = 1.0;
    let mut ratios = Vec::new();
    for fac in &e.factors {
        match fac.ratio(r) {
            Some(rho) => ratios.push(rho),
            None => sup *= fac.sup_norm(r),
        }
    }
    sup * dropped_mass(&ratios, order)
}

/// `∏ 1/(1-ρ_g) - Σ_{m ≤ order} [x^m] ∏ 1/(1-ρ_g x)`.
fn dropped_mass(ratios: &[f64], order: usize) -> f64 {
    let mut h = vec![0.0f64; order + 1];
    h[0] = 1.0;
    for &rho in ratios {
        for k in 1..=order {
            h[k] += h[k - 1] * rho;
        }
    }
    let full: f64 = ratios.iter().map(|rho| 1.0 / (1.0 - rho)).product();
    (full - h.iter().sum::<f64>()).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn complete_homogeneous_small() {
        let h = complete_homogeneous(&[rat(1, 2), rat(1, 3)], 2);
        assert_eq!(h[1], rat(5, 6));
        assert_eq!(h[2], rat(1, 4) + rat(1, 6) + rat(1, 9));
    }

    #[test]
    fn dropped_mass_of_single_geometric() {
        let d = dropped_mass(&[0.5], 3);
        assert!((d - 0.0625 * 2.0).abs() < 1e-15);
    }
}
