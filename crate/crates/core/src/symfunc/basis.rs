//! Per-degree change-of-basis tables between monomial and power-sum functions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::partition::{partitions_of, Partition};
use crate::scalar::{int, one, zero, Scalar};

/// Tables for one degree. Row/column order is [`partitions_of`] order.
#[derive(Debug)]
pub struct DegreeTables {
    pub parts: Vec<Partition>,
    pub index: HashMap<Partition, usize>,
    /// `p_λ = Σ_μ p2m[λ][μ] m_μ`.
    pub p2m: Vec<Vec<Scalar>>,
    /// `m_μ = Σ_λ m2p[μ][λ] p_λ`.
    pub m2p: Vec<Vec<Scalar>>,
}

static TABLES: OnceLock<Mutex<HashMap<usize, Arc<DegreeTables>>>> = OnceLock::new();

pub fn tables(d: usize) -> Arc<DegreeTables> {
    let cache = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&d) {
        return t.clone();
    }
    let t = Arc::new(build(d));
    cache.lock().unwrap().entry(d).or_insert(t).clone()
}

fn build(d: usize) -> DegreeTables {
    let parts = partitions_of(d);
    let index: HashMap<Partition, usize> = parts
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let p2m: Vec<Vec<Scalar>> = parts
        .iter()
        .map(|lam| {
            parts
                .iter()
                .map(|mu| int(power_to_monomial_count(lam, mu) as i64))
                .collect()
        })
        .collect();
    let m2p = invert(&p2m);
    DegreeTables {
        parts,
        index,
        p2m,
        m2p,
    }
}

/// Coefficient of `x^μ` in `p_λ`: the number of maps from the parts of `λ`
/// to the positions of `μ` with matching block sums.
fn power_to_monomial_count(lam: &Partition, mu: &Partition) -> u64 {
    if lam.size() != mu.size() || lam.len() < mu.len() {
        return 0;
    }
    let mut memo: HashMap<(usize, Vec<usize>), u64> = HashMap::new();
    fn rec(
        k: usize,
        lam: &[usize],
        rem: &mut Vec<usize>,
        memo: &mut HashMap<(usize, Vec<usize>), u64>,
    ) -> u64 {
        if k == lam.len() {
            return rem.iter().all(|&r| r == 0) as u64;
        }
        if let Some(&v) = memo.get(&(k, rem.clone())) {
            return v;
        }
        let mut total = 0;
        for j in 0..rem.len() {
            if rem[j] >= lam[k] {
                rem[j] -= lam[k];
                total += rec(k + 1, lam, rem, memo);
                rem[j] += lam[k];
            }
        }
        memo.insert((k, rem.clone()), total);
        total
    }
    let mut rem = mu.parts().to_vec();
    rec(0, lam.parts(), &mut rem, &mut memo)
}

/// Gauss-Jordan inverse: returns `X` with `A X = I`.
fn invert(a: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = a.len();
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { one() } else { zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("change of basis is invertible");
        m.swap(col, piv);
        let inv = one() / &m[col][col];
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_three_tables() {
        let t = tables(3);
        let s: Vec<String> = t.parts.iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["[3]", "[2,1]", "[1,1,1]"]);
        // p_{111} = m_3 + 3 m_21 + 6 m_111.
        assert_eq!(t.p2m[2], vec![int(1), int(3), int(6)]);
        for i in 0..3 {
            for j in 0..3 {
                let v: Scalar = (0..3).map(|k| &t.m2p[i][k] * &t.p2m[k][j]).sum();
                assert_eq!(v, if i == j { one() } else { zero() });
            }
        }
    }
}
