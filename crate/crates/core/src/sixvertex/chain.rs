use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::domain::{domain_transfer_in, straight_probs, Edges, Weight};
use crate::error::{Error, Result};
use crate::measures::{JointKey, MeasureSpec};
use crate::qseries::{qfact, qpoch_inf};
use crate::scalar::{self, pow, zero, Scalar};

/// Joint law of the winding count and the output edges, truncated at `cap`.
#[derive(Clone, Debug, PartialEq)]
pub struct WindingJoint<W = Scalar> {
    pub m: usize,
    pub n: usize,
    pub cap: usize,
    /// Keyed by `(W, S_1, S_2)` as `(base_length, up, down)`.
    pub entries: BTreeMap<JointKey, W>,
    /// Mass with winding count above `cap`.
    pub tail: W,
}

impl<W: Weight> WindingJoint<W> {
    pub fn get(&self, key: &JointKey) -> W {
        self.entries.get(key).cloned().unwrap_or_else(W::zero)
    }

    pub fn total(&self) -> W {
        let mut s = self.tail.clone();
        for v in self.entries.values() {
            s += v.clone();
        }
        s
    }

    /// Law of `(S_1, S_2)` with the winding count summed out; excludes the tail.
    pub fn output_marginal(&self) -> BTreeMap<Edges, W> {
        let mut out: BTreeMap<Edges, W> = BTreeMap::new();
        for (k, v) in &self.entries {
            *out.entry(Edges {
                cols: k.up,
                rows: k.down,
            })
            .or_insert_with(W::zero) += v.clone();
        }
        out
    }
}

fn check_chain(spec: &MeasureSpec, length: usize) -> Result<()> {
    spec.validate()?;
    if length == 0 {
        return Err(Error::Domain("chain length L must be at least 1".into()));
    }
    if spec.m() > 16 || spec.n_letters() > 16 {
        return Err(Error::Domain(
            "domains wider than 16 are not supported".into(),
        ));
    }
    Ok(())
}

fn initial(n: usize) -> Edges {
    Edges {
        cols: 0,
        rows: (1u32 << n) - 1,
    }
}

/// Joint law of `(W, S_1, S_2)` for the length-`length` chain. Copy `l` uses
/// `z = u^{l-1}`; copy `length` is fed no arrows from below and a full left
/// boundary, and copy 1 is the output copy.
pub fn quasi_joint_in<W: Weight>(
    length: usize,
    cap: usize,
    spec: &MeasureSpec,
) -> Result<WindingJoint<W>> {
    check_chain(spec, length)?;
    let (m, n) = (spec.m(), spec.n_letters());
    let mut states: BTreeMap<(Edges, usize), W> = BTreeMap::from([((initial(n), 0), W::one())]);
    let mut tail = W::zero();
    for l in (1..=length).rev() {
        let op = domain_transfer_in::<W>(m, n, &pow(&spec.u, l as u32 - 1), spec)?;
        let mut next: BTreeMap<(Edges, usize), W> = BTreeMap::new();
        for ((e, wind), w) in &states {
            for (o, pr) in op.row(*e) {
                let mass = w.clone() * pr.clone();
                let nw = if l > 1 {
                    wind + o.cols.count_ones() as usize
                } else {
                    *wind
                };
                if nw > cap {
                    tail += mass;
                } else {
                    *next.entry((*o, nw)).or_insert_with(W::zero) += mass;
                }
            }
        }
        states = next;
    }
    let entries = states
        .into_iter()
        .map(|((e, wind), w)| {
            (
                JointKey {
                    base_length: wind,
                    up: e.cols,
                    down: e.rows,
                },
                w,
            )
        })
        .collect();
    Ok(WindingJoint {
        m,
        n,
        cap,
        entries,
        tail,
    })
}

pub fn quasi_joint(length: usize, cap: usize, spec: &MeasureSpec) -> Result<WindingJoint> {
    quasi_joint_in(length, cap, spec)
}

/// Law of `(S_1, S_2)` alone for the length-`length` chain.
pub fn output_law_in<W: Weight>(length: usize, spec: &MeasureSpec) -> Result<BTreeMap<Edges, W>> {
    check_chain(spec, length)?;
    let (m, n) = (spec.m(), spec.n_letters());
    let mut states: BTreeMap<Edges, W> = BTreeMap::from([(initial(n), W::one())]);
    for l in (1..=length).rev() {
        let op = domain_transfer_in::<W>(m, n, &pow(&spec.u, l as u32 - 1), spec)?;
        let mut next: BTreeMap<Edges, W> = BTreeMap::new();
        for (e, w) in &states {
            for (o, pr) in op.row(*e) {
                *next.entry(*o).or_insert_with(W::zero) += w.clone() * pr.clone();
            }
        }
        states = next;
    }
    Ok(states)
}

/// Law of `(W + χ, S_1, S_2)` with `χ` an independent `u`-geometric variable.
pub fn shift_by_geometric(j: &WindingJoint, u: &Scalar) -> Result<WindingJoint> {
    let norm = qpoch_inf(u, u)?;
    let geo: Vec<Scalar> = (0..=j.cap)
        .map(|k| pow(u, k as u32) * &norm / qfact(u, k))
        .collect();
    let mut entries: BTreeMap<JointKey, Scalar> = BTreeMap::new();
    let mut tail = j.tail.clone();
    for (key, w) in &j.entries {
        let mut kept = zero();
        for (k, g) in geo.iter().enumerate().take(j.cap + 1 - key.base_length) {
            if g.is_zero() {
                continue;
            }
            let shifted = JointKey {
                base_length: key.base_length + k,
                ..*key
            };
            let mass = w * g;
            kept += &mass;
            *entries.entry(shifted).or_insert_with(zero) += mass;
        }
        tail += w - kept;
    }
    Ok(WindingJoint {
        m: j.m,
        n: j.n,
        cap: j.cap,
        entries,
        tail,
    })
}

/// Empirical law from independent forward simulations.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalJoint {
    pub samples: usize,
    pub counts: BTreeMap<JointKey, u64>,
}

impl EmpiricalJoint {
    pub fn frequency(&self, key: &JointKey) -> f64 {
        self.counts.get(key).copied().unwrap_or(0) as f64 / self.samples as f64
    }
}

/// One forward simulation. Sample `index` draws from its own ChaCha stream,
/// so the result does not depend on how samples are scheduled.
fn simulate(probs: &[Vec<(f64, f64)>], m: usize, n: usize, seed: u64, index: u64) -> JointKey {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut e = initial(n);
    let mut wind = 0usize;
    let copies = probs.len();
    for (c, copy) in probs.iter().enumerate() {
        let mut rows = e.rows;
        let mut cols = 0u32;
        for i in 0..m {
            let mut v = e.cols >> i & 1 == 1;
            for j in 0..n {
                let left = rows >> j & 1 == 1;
                let (ph, pv) = copy[i * n + j];
                let (right, up) = match (left, v) {
                    (true, false) if rng.gen::<f64>() < ph => (true, false),
                    (true, false) => (false, true),
                    (false, true) if rng.gen::<f64>() < pv => (false, true),
                    (false, true) => (true, false),
                    other => other,
                };
                rows = rows & !(1 << j) | (right as u32) << j;
                v = up;
            }
            cols |= (v as u32) << i;
        }
        e = Edges { cols, rows };
        if c + 1 < copies {
            wind += cols.count_ones() as usize;
        }
    }
    JointKey {
        base_length: wind,
        up: e.cols,
        down: e.rows,
    }
}

/// Monte Carlo estimate of [`quasi_joint`] from `samples` forward runs.
pub fn mc_sample(
    length: usize,
    samples: usize,
    seed: u64,
    spec: &MeasureSpec,
) -> Result<EmpiricalJoint> {
    check_chain(spec, length)?;
    let (m, n) = (spec.m(), spec.n_letters());
    let probs: Vec<Vec<(f64, f64)>> = (1..=length)
        .rev()
        .map(|l| straight_probs::<f64>(m, n, &pow(&spec.u, l as u32 - 1), spec))
        .collect::<Result<_>>()?;
    let keys: Vec<JointKey> = (0..samples as u64)
        .into_par_iter()
        .map(|i| simulate(&probs, m, n, seed, i))
        .collect();
    let mut counts = BTreeMap::new();
    for k in keys {
        *counts.entry(k).or_insert(0u64) += 1;
    }
    Ok(EmpiricalJoint { samples, counts })
}

/// Largest entrywise gap between two exact joint tables.
pub fn max_entry_gap<'a>(
    a: impl IntoIterator<Item = (&'a JointKey, &'a Scalar)>,
    b: &BTreeMap<JointKey, Scalar>,
) -> f64 {
    let a: BTreeMap<&JointKey, &Scalar> = a.into_iter().collect();
    let mut gap = 0.0f64;
    for key in a.keys().copied().chain(b.keys()) {
        let x = a.get(key).map_or_else(zero, |v| (*v).clone());
        let y = b.get(key).cloned().unwrap_or_else(zero);
        gap = gap.max(scalar::to_f64(&scalar::abs(&(x - y))));
    }
    gap
}

/// `Σ_k P(χ = k)` over `k ≤ cap`.
pub fn geometric_mass(u: &Scalar, cap: usize) -> Result<Scalar> {
    let norm = qpoch_inf(u, u)?;
    Ok(scalar::sum(
        (0..=cap).map(|k| pow(u, k as u32) * &norm / qfact(u, k)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{one, rat};

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
    fn mass_and_arrow_count() {
        let j = quasi_joint(4, 6, &spec(rat(1, 3))).unwrap();
        assert_eq!(j.total(), one());
        for k in j.entries.keys() {
            assert_eq!(k.up.count_ones() + k.down.count_ones(), 2);
        }
    }

    #[test]
    fn zero_u_never_winds() {
        let j = quasi_joint(5, 3, &spec(zero())).unwrap();
        assert!(j.entries.keys().all(|k| k.base_length == 0));
        assert_eq!(j.tail, zero());
        let once = quasi_joint(1, 3, &spec(zero())).unwrap();
        assert_eq!(j.entries, once.entries);
    }

    #[test]
    fn geometric_shift_preserves_mass() {
        let j = quasi_joint(3, 5, &spec(rat(1, 3))).unwrap();
        let s = shift_by_geometric(&j, &rat(1, 3)).unwrap();
        assert_eq!(s.total(), j.total());
        let id = shift_by_geometric(&j, &zero()).unwrap();
        assert_eq!(id, j);
    }

    #[test]
    fn sampling_is_reproducible() {
        let s = spec(rat(1, 3));
        assert_eq!(
            mc_sample(3, 200, 7, &s).unwrap(),
            mc_sample(3, 200, 7, &s).unwrap()
        );
        assert_ne!(
            mc_sample(3, 200, 7, &s).unwrap(),
            mc_sample(3, 200, 8, &s).unwrap()
        );
    }
}
