//! Periodic q-Whittaker, Schur and Hall-Littlewood measures and processes,
//! evaluated by truncated enumeration.
//!
//! Every truncated quantity is summed up to size `K + 2` with contributions
//! bucketed by the size of the governing partition, so that the value at cap
//! `K` and the increment to `K + 2` come out of a single pass.

use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, Partition};
use crate::qseries::{qfact, qpoch_double, qpoch_inf};
use crate::scalar::{self, one, pow, zero, Scalar};
use crate::skew::{grow, skew_multi, Family};
use crate::symfunc::{macdonald_p, DEFAULT_CAP};

/// Parameters of a periodic Macdonald-type measure. `a` has `M` entries, `b` has `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureSpec {
    pub q: Scalar,
    pub t: Scalar,
    pub u: Scalar,
    pub a: Vec<Scalar>,
    pub b: Vec<Scalar>,
}

impl MeasureSpec {
    pub fn m(&self) -> usize {
        self.a.len()
    }

    pub fn n_letters(&self) -> usize {
        self.b.len()
    }

    /// Checks `0 ≤ a_i, b_j` and `a_i b_j < 1`, `0 ≤ q, t, u < 1`.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("q", &self.q), ("t", &self.t), ("u", &self.u)] {
            if v.is_negative() || *v >= one() {
                return Err(Error::Domain(format!("{name} = {v} must lie in [0, 1)")));
            }
        }
        for ai in &self.a {
            for bj in &self.b {
                if ai.is_negative() || bj.is_negative() || ai * bj >= one() {
                    return Err(Error::Domain(format!(
                        "need 0 ≤ a_i b_j < 1, got {ai}·{bj}"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncationSpec {
    /// Size cap `K`.
    pub max_size: usize,
    /// Convergence tolerance for the increment from `K` to `K + 2`.
    pub tol: f64,
}

impl TruncationSpec {
    pub fn new(max_size: usize, tol: f64) -> Self {
        TruncationSpec { max_size, tol }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedValue {
    pub value: Scalar,
    pub cap: usize,
    /// Value at `K + 2` minus value at `K`.
    pub increment: Scalar,
    pub converged: bool,
}

impl TruncatedValue {
    fn from_shells(
        shells: &BTreeMap<usize, Scalar>,
        scale: &Scalar,
        trunc: &TruncationSpec,
    ) -> Self {
        let k = trunc.max_size;
        let value = scalar::sum(shells.range(..=k).map(|(_, v)| v.clone())) * scale;
        let increment = scalar::sum(shells.range(k + 1..=k + 2).map(|(_, v)| v.clone())) * scale;
        let converged = scalar::to_f64(&increment).abs() < trunc.tol;
        TruncatedValue {
            value,
            cap: k,
            increment,
            converged,
        }
    }

    pub fn to_f64(&self) -> f64 {
        scalar::to_f64(&self.value)
    }
}

fn add_shell(shells: &mut BTreeMap<usize, Scalar>, size: usize, v: Scalar) {
    if v.is_zero() {
        return;
    }
    *shells.entry(size).or_insert_with(zero) += v;
}

/// `Φ(a,b;q,t,u) = (1/(u;u)_∞) ∏_{i,j} (t a_i b_j; q,u)_∞ / (a_i b_j; q,u)_∞`.
pub fn phi_norm(a: &[Scalar], b: &[Scalar], q: &Scalar, t: &Scalar, u: &Scalar) -> Result<Scalar> {
    let mut nums = Vec::new();
    let mut dens = vec![qpoch_inf(u, u)?];
    for ai in a {
        for bj in b {
            let z = ai * bj;
            nums.push(qpoch_double(&(t * &z), q, u)?);
            dens.push(qpoch_double(&z, q, u)?);
        }
    }
    Ok(scalar::product(nums) / scalar::product(dens))
}

/// Weighted partitions reached from `start` through the given letters.
fn chain_map(
    family: Family,
    start: &Partition,
    letters: &[Scalar],
    param: &Scalar,
    max_part: usize,
    max_size: usize,
) -> Result<HashMap<Partition, Scalar>> {
    let mut layer = HashMap::from([(start.clone(), one())]);
    for x in letters {
        layer = grow(family, &layer, x, param, max_part, max_size)?;
    }
    Ok(layer)
}

/// Iterates over the pairs `(μ, λ)` with `μ ⊆ λ`, `λ_1 ≤ max_part`, `|λ| ≤ max_size`,
/// passing `F_{λ/μ}(a) G_{λ/μ}(b)`.
#[allow(clippy::too_many_arguments)]
fn for_each_pair<F>(
    fam_a: Family,
    fam_b: Family,
    a: &[Scalar],
    b: &[Scalar],
    param: &Scalar,
    max_part: usize,
    max_size: usize,
    mut f: F,
) -> Result<()>
where
    F: FnMut(&Partition, &Partition, Scalar),
{
    for mu in enumerate_partitions(max_size, max_part, max_size) {
        let pa = chain_map(fam_a, &mu, a, param, max_part, max_size)?;
        let qb = chain_map(fam_b, &mu, b, param, max_part, max_size)?;
        for (lam, wa) in &pa {
            if let Some(wb) = qb.get(lam) {
                f(&mu, lam, wa * wb);
            }
        }
    }
    Ok(())
}

/// `P(λ_1 + χ ≤ n)` for `λ` from the periodic q-Whittaker measure and an
/// independent q-geometric `χ`.
pub fn pqw_shifted_cdf(
    spec: &MeasureSpec,
    n: usize,
    trunc: &TruncationSpec,
) -> Result<TruncatedValue> {
    spec.validate()?;
    let q = &spec.q;
    let k2 = trunc.max_size + 2;
    let qinf = qpoch_inf(q, q)?;
    let mut shells = BTreeMap::new();
    for_each_pair(
        Family::QwP,
        Family::QwQ,
        &spec.a,
        &spec.b,
        q,
        n,
        k2,
        |mu, lam, w| {
            let v = w * pow(&spec.u, mu.size() as u32) / qfact(q, n - lam.first());
            add_shell(&mut shells, lam.size(), v);
        },
    )?;
    let scale = qinf / phi_norm(&spec.a, &spec.b, q, &zero(), &spec.u)?;
    Ok(TruncatedValue::from_shells(&shells, &scale, trunc))
}

/// `Z_{n,N}(q,u;x) = Σ_{μ_1 ≤ n} u^{|μ|} / (q;q)_{n-μ_1} P_{(n^N,μ)/μ}(x;q,0)`.
pub fn z_sum(
    n: usize,
    rows: usize,
    q: &Scalar,
    u: &Scalar,
    x: &[Scalar],
    trunc: &TruncationSpec,
) -> Result<TruncatedValue> {
    let k2 = trunc.max_size + 2;
    let mut shells = BTreeMap::new();
    for mu in enumerate_partitions(k2, n, k2) {
        let top = crate::skew::pad_rect(&mu, n, rows)?;
        let s = skew_multi(Family::QwP, &top, &mu, x, q)?;
        add_shell(
            &mut shells,
            mu.size(),
            s * pow(u, mu.size() as u32) / qfact(q, n - mu.first()),
        );
    }
    Ok(TruncatedValue::from_shells(&shells, &one(), trunc))
}

/// The right side of the complementation lemma:
/// `(q;q)_∞ ∏ b_j^n Z_{n,N}(q,u;(a, b^{-1})) / Φ(a,b;q,0,u)`.
pub fn pqw_shifted_cdf_via_z(
    spec: &MeasureSpec,
    n: usize,
    trunc: &TruncationSpec,
) -> Result<TruncatedValue> {
    spec.validate()?;
    let mut x = spec.a.clone();
    x.extend(spec.b.iter().map(|v| v.recip()));
    let z = z_sum(n, spec.b.len(), &spec.q, &spec.u, &x, trunc)?;
    let bn = scalar::product(spec.b.iter().map(|v| pow(v, n as u32)));
    let scale =
        qpoch_inf(&spec.q, &spec.q)? * bn / phi_norm(&spec.a, &spec.b, &spec.q, &zero(), &spec.u)?;
    Ok(TruncatedValue {
        value: z.value * &scale,
        cap: z.cap,
        increment: z.increment * &scale,
        converged: z.converged,
    })
}

/// Unnormalised `Σ_{λ_1 ≤ n, μ ⊆ λ} q^{|μ|} s_{λ/μ}(a) s_{λ/μ}(b)`.
pub fn periodic_schur_cdf(
    n: usize,
    a: &[Scalar],
    b: &[Scalar],
    q: &Scalar,
    trunc: &TruncationSpec,
) -> Result<TruncatedValue> {
    let k2 = trunc.max_size + 2;
    let mut shells = BTreeMap::new();
    for_each_pair(
        Family::Schur,
        Family::Schur,
        a,
        b,
        &zero(),
        n,
        k2,
        |mu, lam, w| {
            add_shell(&mut shells, lam.size(), w * pow(q, mu.size() as u32));
        },
    )?;
    Ok(TruncatedValue::from_shells(&shells, &one(), trunc))
}

/// Normalising constant of the periodic Schur measure with winding weight `q`:
/// `(q;q)_∞ ∏ (a_i b_j; q)_∞`.
pub fn periodic_schur_normaliser(a: &[Scalar], b: &[Scalar], q: &Scalar) -> Result<Scalar> {
    let mut f = vec![qpoch_inf(q, q)?];
    for ai in a {
        for bj in b {
            f.push(qpoch_inf(&(ai * bj), q)?);
        }
    }
    Ok(scalar::product(f))
}

/// `Σ_{μ_1 + k ≤ n} q^k / (q;q)_k · P_μ(a;q,0) Q_μ(b;q,0)`.
pub fn ims_rhs(
    n: usize,
    a: &[Scalar],
    b: &[Scalar],
    q: &Scalar,
    trunc: &TruncationSpec,
) -> Result<TruncatedValue> {
    let k2 = trunc.max_size + 2;
    let mut shells = BTreeMap::new();
    let max_len = a.len().min(b.len());
    for mu in enumerate_partitions(k2, n, max_len) {
        let pq = skew_multi(Family::QwP, &mu, &Partition::empty(), a, q)?
            * skew_multi(Family::QwQ, &mu, &Partition::empty(), b, q)?;
        if pq.is_zero() {
            continue;
        }
        let inner = scalar::sum((0..=n - mu.first()).map(|k| pow(q, k as u32) / qfact(q, k)));
        add_shell(&mut shells, mu.size(), pq * inner);
    }
    Ok(TruncatedValue::from_shells(&shells, &one(), trunc))
}

/// Key of the observable joint law: `(l(λ⁽⁰⁾), [λ⃗], [μ⃗]^c)`.
///
/// Bit `i` of `up` is 1 when `l(λ⁽ⁱ⁺¹⁾) > l(λ⁽ⁱ⁾)`; bit `j` of `down` is 1
/// when `l(μ⁽ʲ⁺¹⁾) = l(μ⁽ʲ⁾)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JointKey {
    pub base_length: usize,
    pub up: u32,
    pub down: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JointTable {
    pub m: usize,
    pub n: usize,
    pub entries: BTreeMap<JointKey, Scalar>,
    pub cap: usize,
    /// Largest absolute entry change from cap `K` to `K + 2`.
    pub max_increment: f64,
    pub converged: bool,
}

impl JointTable {
    pub fn get(&self, key: &JointKey) -> Scalar {
        self.entries.get(key).cloned().unwrap_or_else(zero)
    }

    pub fn total(&self) -> Scalar {
        scalar::sum(self.entries.values().cloned())
    }

    /// Bits of a mark vector in letter order, e.g. `"01"`.
    pub fn bits(mask: u32, len: usize) -> String {
        (0..len)
            .map(|i| if mask >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

/// Chains from `start` through `letters`, keyed by end point and mark vector.
fn marked_chain_map(
    family: Family,
    start: &Partition,
    letters: &[Scalar],
    param: &Scalar,
    max_size: usize,
    mark_on_growth: bool,
) -> Result<HashMap<(Partition, u32), Scalar>> {
    let mut layer: HashMap<(Partition, u32), Scalar> = HashMap::from([((start.clone(), 0), one())]);
    for (i, x) in letters.iter().enumerate() {
        let mut out: HashMap<(Partition, u32), Scalar> = HashMap::new();
        for ((kappa, mask), w) in &layer {
            let single = HashMap::from([(kappa.clone(), one())]);
            for (next, c) in grow(family, &single, x, param, max_size, max_size)? {
                let grew = next.len() > kappa.len();
                let bit = (grew == mark_on_growth) as u32;
                *out.entry((next, mask | bit << i)).or_insert_with(zero) += w * c;
            }
        }
        layer = out;
    }
    Ok(layer)
}

/// Joint law of `(l(λ⁽⁰⁾), [λ⃗], [μ⃗]^c)` under the periodic Hall-Littlewood
/// process, truncated by `|λ⁽ᴹ⁾| ≤ K`.
pub fn phl_joint(spec: &MeasureSpec, trunc: &TruncationSpec) -> Result<JointTable> {
    spec.validate()?;
    let t = &spec.t;
    let k2 = trunc.max_size + 2;
    let mut shells: BTreeMap<usize, BTreeMap<JointKey, Scalar>> = BTreeMap::new();
    for nu in enumerate_partitions(k2, k2, k2) {
        let up = marked_chain_map(Family::HlP, &nu, &spec.a, t, k2, true)?;
        let down = marked_chain_map(Family::HlQ, &nu, &spec.b, t, k2, false)?;
        let mut by_top: HashMap<&Partition, Vec<(u32, &Scalar)>> = HashMap::new();
        for ((top, mask), w) in &down {
            by_top.entry(top).or_default().push((*mask, w));
        }
        let un = pow(&spec.u, nu.size() as u32);
        for ((top, up_mask), wa) in &up {
            let Some(list) = by_top.get(top) else {
                continue;
            };
            for (down_mask, wb) in list {
                let key = JointKey {
                    base_length: nu.len(),
                    up: *up_mask,
                    down: *down_mask,
                };
                let shell = shells.entry(top.size()).or_default();
                *shell.entry(key).or_insert_with(zero) += &un * wa * *wb;
            }
        }
    }
    let norm = phi_norm(&spec.a, &spec.b, &zero(), t, &spec.u)?.recip();
    let mut entries: BTreeMap<JointKey, Scalar> = BTreeMap::new();
    let mut incr: BTreeMap<JointKey, Scalar> = BTreeMap::new();
    for (size, shell) in shells {
        let target = if size <= trunc.max_size {
            &mut entries
        } else {
            &mut incr
        };
        for (k, v) in shell {
            *target.entry(k).or_insert_with(zero) += v * &norm;
        }
    }
    let max_increment = incr
        .values()
        .map(|v| scalar::to_f64(v).abs())
        .fold(0.0, f64::max);
    Ok(JointTable {
        m: spec.m(),
        n: spec.n_letters(),
        entries,
        cap: trunc.max_size,
        max_increment,
        converged: max_increment < trunc.tol,
    })
}

/// Law of `l(λ⁽⁰⁾)` computed from the measure directly, using the
/// multi-variable skew functions rather than single-letter chains.
pub fn phl_base_length_law(
    spec: &MeasureSpec,
    trunc: &TruncationSpec,
) -> Result<BTreeMap<usize, Scalar>> {
    spec.validate()?;
    let k = trunc.max_size;
    let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
    let all = enumerate_partitions(k, k, k);
    let norm = phi_norm(&spec.a, &spec.b, &zero(), &spec.t, &spec.u)?.recip();
    for nu in &all {
        let mut s = Vec::new();
        for lam in all.iter().filter(|l| l.contains(nu)) {
            let pa = skew_multi(Family::HlP, lam, nu, &spec.a, &spec.t)?;
            if pa.is_zero() {
                continue;
            }
            s.push(pa * skew_multi(Family::HlQ, lam, nu, &spec.b, &spec.t)?);
        }
        *out.entry(nu.len()).or_insert_with(zero) +=
            scalar::sum(s) * pow(&spec.u, nu.size() as u32) * &norm;
    }
    Ok(out)
}

/// `P(l(λ) + χ ≤ n)` for `λ` from the periodic Hall-Littlewood measure and
/// an independent t-geometric `χ`.
pub fn phl_shifted_length_cdf(
    spec: &MeasureSpec,
    n: usize,
    trunc: &TruncationSpec,
) -> Result<TruncatedValue> {
    spec.validate()?;
    let t = &spec.t;
    let k2 = trunc.max_size + 2;
    let tinf = qpoch_inf(t, t)?;
    let mut shells = BTreeMap::new();
    for mu in enumerate_partitions(k2, k2, n) {
        let pa = chain_map(Family::HlP, &mu, &spec.a, t, k2, k2)?;
        let qb = chain_map(Family::HlQ, &mu, &spec.b, t, k2, k2)?;
        for (lam, wa) in &pa {
            if lam.len() > n {
                continue;
            }
            if let Some(wb) = qb.get(lam) {
                let v = wa * wb * pow(&spec.u, mu.size() as u32) / qfact(t, n - lam.len());
                add_shell(&mut shells, lam.size(), v);
            }
        }
    }
    let scale = tinf / phi_norm(&spec.a, &spec.b, &zero(), t, &spec.u)?;
    Ok(TruncatedValue::from_shells(&shells, &scale, trunc))
}

/// `Σ_{λ_1 ≤ n} (t;t)_{m_n(μ)} / (t;t)_{m_n(λ)} u^{|μ|} P_{λ/μ}(a;0,t) Q_{λ/μ}(b;0,t)`.
pub fn hl_to_macdonald_lhs(
    spec: &MeasureSpec,
    n: usize,
    trunc: &TruncationSpec,
) -> Result<TruncatedValue> {
    spec.validate()?;
    let t = &spec.t;
    let k2 = trunc.max_size + 2;
    let mut shells = BTreeMap::new();
    for_each_pair(
        Family::HlP,
        Family::HlQ,
        &spec.a,
        &spec.b,
        t,
        n,
        k2,
        |mu, lam, w| {
            let f = qfact(t, mu.multiplicity(n)) / qfact(t, lam.multiplicity(n));
            add_shell(
                &mut shells,
                lam.size(),
                w * f * pow(&spec.u, mu.size() as u32),
            );
        },
    )?;
    Ok(TruncatedValue::from_shells(&shells, &one(), trunc))
}

/// `(1/(u;u)_n) ∏ b_j^n P_{n^N}(a, b^{-1}; u, t)`.
pub fn hl_to_macdonald_rhs(spec: &MeasureSpec, n: usize) -> Result<Scalar> {
    let rows = spec.b.len();
    let lam = Partition::rectangle(n, rows);
    let cap = lam.size().max(DEFAULT_CAP);
    let mut x = spec.a.clone();
    x.extend(spec.b.iter().map(|v| v.recip()));
    let p = macdonald_p(&lam, &spec.u, &spec.t, cap)?.evaluate(&x);
    let bn = scalar::product(spec.b.iter().map(|v| pow(v, n as u32)));
    Ok(p * bn / qfact(&spec.u, n))
}

/// One configuration of the periodic Hall-Littlewood process:
/// `λ⁽⁰⁾ ⊆ … ⊆ λ⁽ᴹ⁾` and `μ⁽⁰⁾ ⊆ … ⊆ μ⁽ᴺ⁾` with `μ⁽⁰⁾ = λ⁽⁰⁾`, `μ⁽ᴺ⁾ = λ⁽ᴹ⁾`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProcessState {
    pub lambdas: Vec<Partition>,
    pub mus: Vec<Partition>,
}

impl ProcessState {
    pub fn joint_key(&self) -> JointKey {
        let mut up = 0;
        for i in 1..self.lambdas.len() {
            if self.lambdas[i].len() > self.lambdas[i - 1].len() {
                up |= 1 << (i - 1);
            }
        }
        let mut down = 0;
        for j in 1..self.mus.len() {
            if self.mus[j].len() == self.mus[j - 1].len() {
                down |= 1 << (j - 1);
            }
        }
        JointKey {
            base_length: self.lambdas[0].len(),
            up,
            down,
        }
    }
}

fn chains(
    family: Family,
    start: &Partition,
    letters: &[Scalar],
    param: &Scalar,
    max_size: usize,
) -> Result<Vec<(Vec<Partition>, Scalar)>> {
    let mut layer = vec![(vec![start.clone()], one())];
    for x in letters {
        let mut out = Vec::new();
        for (path, w) in &layer {
            let last = path.last().expect("non-empty path");
            let single = HashMap::from([(last.clone(), one())]);
            let mut next: Vec<_> = grow(family, &single, x, param, max_size, max_size)?
                .into_iter()
                .collect();
            next.sort_by(|a, b| a.0.cmp(&b.0));
            for (p, c) in next {
                let mut path = path.clone();
                path.push(p);
                out.push((path, w * c));
            }
        }
        layer = out;
    }
    Ok(layer)
}

/// All process configurations with `|λ⁽ᴹ⁾| ≤ K`, with exact probabilities
/// (normalised by the untruncated partition function).
pub fn process_table(
    spec: &MeasureSpec,
    trunc: &TruncationSpec,
) -> Result<Vec<(ProcessState, Scalar)>> {
    spec.validate()?;
    let k = trunc.max_size;
    let t = &spec.t;
    let norm = phi_norm(&spec.a, &spec.b, &zero(), t, &spec.u)?.recip();
    let mut out = Vec::new();
    for nu in enumerate_partitions(k, k, k) {
        let ups = chains(Family::HlP, &nu, &spec.a, t, k)?;
        let downs = chains(Family::HlQ, &nu, &spec.b, t, k)?;
        let un = pow(&spec.u, nu.size() as u32) * &norm;
        for (lp, wa) in &ups {
            for (mp, wb) in downs.iter().filter(|(mp, _)| mp.last() == lp.last()) {
                out.push((
                    ProcessState {
                        lambdas: lp.clone(),
                        mus: mp.clone(),
                    },
                    &un * wa * wb,
                ));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Inverse-CDF samples from the truncated, renormalised process table.
pub fn sample(
    spec: &MeasureSpec,
    trunc: &TruncationSpec,
    seed: u64,
    count: usize,
) -> Result<Vec<ProcessState>> {
    let table = process_table(spec, trunc)?;
    let total = scalar::sum(table.iter().map(|(_, p)| p.clone()));
    let mut cdf = Vec::with_capacity(table.len());
    let mut acc = zero();
    for (_, p) in &table {
        acc += p;
        cdf.push(scalar::to_f64(&(&acc / &total)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let r: f64 = rng.gen();
            let i = cdf.partition_point(|&c| c <= r).min(table.len() - 1);
            table[i].0.clone()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn spec(q: Scalar, t: Scalar, u: Scalar) -> MeasureSpec {
        MeasureSpec {
            q,
            t,
            u,
            a: vec![rat(1, 3), rat(1, 4)],
            b: vec![rat(1, 5), rat(1, 6)],
        }
    }

    #[test]
    fn shifted_cdf_edges() {
        let s = spec(rat(3, 10), zero(), rat(1, 7));
        let tr = TruncationSpec::new(10, 1e-8);
        // n = 0 forces λ = μ = ∅ and χ = 0.
        let v0 = pqw_shifted_cdf(&s, 0, &tr).unwrap();
        let want =
            qpoch_inf(&s.q, &s.q).unwrap() / phi_norm(&s.a, &s.b, &s.q, &zero(), &s.u).unwrap();
        assert_eq!(v0.value, want);
        let mut prev = 0.0;
        for n in 0..4 {
            let v = pqw_shifted_cdf(&s, n, &tr).unwrap().to_f64();
            assert!(v > prev && v < 1.0);
            prev = v;
        }
    }

    #[test]
    fn complement_lemma_matches_direct_sum() {
        let s = spec(rat(3, 10), zero(), rat(1, 7));
        let tr = TruncationSpec::new(12, 1e-8);
        for n in 0..3 {
            let a = pqw_shifted_cdf(&s, n, &tr).unwrap();
            let b = pqw_shifted_cdf_via_z(&s, n, &tr).unwrap();
            assert!((a.to_f64() - b.to_f64()).abs() < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn schur_measure_at_zero_winding() {
        let a = [rat(1, 3), rat(1, 4)];
        let b = [rat(1, 5), rat(1, 6)];
        let tr = TruncationSpec::new(8, 1e-8);
        assert_eq!(
            periodic_schur_cdf(0, &a, &b, &rat(1, 4), &tr)
                .unwrap()
                .value,
            one()
        );
        assert_eq!(ims_rhs(0, &a, &b, &rat(1, 4), &tr).unwrap().value, one());
        // q = 0: Σ_{λ_1 ≤ n} s_λ(a) s_λ(b).
        let v = periodic_schur_cdf(2, &a, &b, &zero(), &tr).unwrap().value;
        let mut direct = zero();
        for lam in enumerate_partitions(8, 2, 8) {
            direct += skew_multi(Family::Schur, &lam, &Partition::empty(), &a, &zero()).unwrap()
                * skew_multi(Family::Schur, &lam, &Partition::empty(), &b, &zero()).unwrap();
        }
        assert_eq!(v, direct);
    }

    #[test]
    fn joint_table_marginal_and_mass() {
        let s = spec(zero(), rat(1, 4), rat(1, 3));
        let tr = TruncationSpec::new(8, 1e-3);
        let j = phl_joint(&s, &tr).unwrap();
        let law = phl_base_length_law(&s, &tr).unwrap();
        let mut marg: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (k, v) in &j.entries {
            *marg.entry(k.base_length).or_insert_with(zero) += v;
        }
        assert_eq!(marg, law);
        let total = scalar::to_f64(&j.total());
        assert!(total < 1.0 && total > 0.99, "{total}");
        let table = process_table(&s, &tr).unwrap();
        let mut from_states: BTreeMap<JointKey, Scalar> = BTreeMap::new();
        for (st, p) in &table {
            *from_states.entry(st.joint_key()).or_insert_with(zero) += p;
        }
        assert_eq!(from_states, j.entries);
    }

    #[test]
    fn u_zero_single_letters() {
        // M = N = 1, u = 0: only λ⁽⁰⁾ = ∅ survives.
        let s = MeasureSpec {
            q: zero(),
            t: rat(1, 4),
            u: zero(),
            a: vec![rat(1, 2)],
            b: vec![rat(1, 3)],
        };
        let j = phl_joint(&s, &TruncationSpec::new(12, 1e-6)).unwrap();
        let ab = rat(1, 6);
        let p = (one() - &ab) / (one() - &s.t * &ab);
        assert_eq!(
            j.get(&JointKey {
                base_length: 0,
                up: 0,
                down: 1
            }),
            p
        );
        let rest = scalar::to_f64(&j.get(&JointKey {
            base_length: 0,
            up: 1,
            down: 0,
        }));
        assert!((rest - scalar::to_f64(&(one() - p))).abs() < 1e-8);
    }

    #[test]
    fn sampling_is_reproducible() {
        let s = spec(zero(), rat(1, 4), rat(1, 3));
        let tr = TruncationSpec::new(4, 1e-3);
        let a = sample(&s, &tr, 7, 50).unwrap();
        let b = sample(&s, &tr, 7, 50).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample(&s, &tr, 8, 50).unwrap());
    }
}
