use std::collections::BTreeMap;

use num_traits::Zero;

use super::chain::output_law_in;
use super::domain::{domain_transfer, Edges};
use super::VertexLaw;
use crate::error::{Error, Result};
use crate::measures::MeasureSpec;
use crate::scalar::{self, one, zero, Scalar};

/// `Σ |out - product|` over the four output patterns of one vertex fed
/// independent Bernoulli(`a/(1+a)`) from below and Bernoulli(`1/(1+b)`) from
/// the left. Zero when the product law is preserved.
pub fn bernoulli_check(a: &Scalar, b: &Scalar, t: &Scalar) -> Result<Scalar> {
    let law = VertexLaw::new(a, b, t)?;
    let below = a / (one() + a);
    let left = (one() + b).recip();
    let pr = |bit: bool, p: &Scalar| if bit { p.clone() } else { one() - p };
    let mut residual = zero();
    for (right, top) in [(false, false), (true, false), (false, true), (true, true)] {
        let mut out = zero();
        for (l, bot) in [(false, false), (true, false), (false, true), (true, true)] {
            out += pr(l, &left) * pr(bot, &below) * law.prob(l, bot, right, top);
        }
        residual += scalar::abs(&(out - pr(right, &left) * pr(top, &below)));
    }
    Ok(residual)
}

/// States of one domain carrying exactly `n` arrows.
fn sector(m: usize, n: usize) -> Vec<Edges> {
    (0..1u32 << m)
        .flat_map(|cols| (0..1u32 << n).map(move |rows| Edges { cols, rows }))
        .filter(|e| e.arrows() as usize == n)
        .collect()
}

/// Stationary law of the periodic chain `P(1)` on the `N`-arrow sector,
/// by exact linear solve.
pub fn stationary(spec: &MeasureSpec) -> Result<BTreeMap<Edges, Scalar>> {
    let (m, n) = (spec.m(), spec.n_letters());
    let op = domain_transfer(m, n, &one(), spec)?;
    let states = sector(m, n);
    let index: BTreeMap<Edges, usize> = states.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let k = states.len();
    // Rows of (P - I)^T, the last replaced by the normalisation.
    let mut a = vec![vec![zero(); k + 1]; k];
    for (i, s) in states.iter().enumerate() {
        for (o, p) in op.row(*s) {
            a[index[o]][i] += p;
        }
        a[i][i] -= one();
    }
    a[k - 1] = vec![one(); k + 1];
    solve(a).map(|pi| states.into_iter().zip(pi).collect())
}

/// Gauss-Jordan elimination on an augmented `k × (k+1)` system.
fn solve(mut a: Vec<Vec<Scalar>>) -> Result<Vec<Scalar>> {
    let k = a.len();
    for col in 0..k {
        let pivot = (col..k)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Degenerate("P(1) is not ergodic on the arrow sector".into()))?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * p;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[k].clone()).collect())
}

/// Total-variation distance between two laws on the same state space.
pub fn total_variation(p: &BTreeMap<Edges, f64>, q: &BTreeMap<Edges, f64>) -> f64 {
    let keys: std::collections::BTreeSet<&Edges> = p.keys().chain(q.keys()).collect();
    0.5 * keys
        .into_iter()
        .map(|k| (p.get(k).copied().unwrap_or(0.0) - q.get(k).copied().unwrap_or(0.0)).abs())
        .sum::<f64>()
}

/// For each `u`, the distance between the length-`length` chain's output law
/// (evaluated in floating point) and the stationary law.
pub fn stationary_study(
    spec: &MeasureSpec,
    us: &[Scalar],
    length: usize,
) -> Result<Vec<(f64, f64)>> {
    let target: BTreeMap<Edges, f64> = stationary(spec)?
        .iter()
        .map(|(e, v)| (*e, scalar::to_f64(v)))
        .collect();
    us.iter()
        .map(|u| {
            let s = MeasureSpec {
                u: u.clone(),
                ..spec.clone()
            };
            let law = output_law_in::<f64>(length, &s)?;
            Ok((scalar::to_f64(u), total_variation(&law, &target)))
        })
        .collect()
}
