//! Integer partitions and the box statistics used by every other module.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing positive parts. The empty partition is `[]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Validates and strips trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Partition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        if parts.contains(&0) {
            return Err(Error::Partition(format!("{parts:?} has an interior zero")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts first; zeros are dropped.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(n^m)`.
    pub fn rectangle(n: usize, m: usize) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition(vec![n; m])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// `λ_i` with 1-based index; zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn first(&self) -> usize {
        self.part(1)
    }

    pub fn conjugate(&self) -> Self {
        let w = self.first();
        Partition(
            (1..=w)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count())
                .collect(),
        )
    }

    /// Number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.iter().filter(|&&p| p == i).count()
    }

    /// Multiplicity vector `(m_1, ..., m_{λ_1})`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.first()];
        for &p in &self.0 {
            m[p - 1] += 1;
        }
        m
    }

    /// Inverse of [`Partition::multiplicities`].
    pub fn from_multiplicities(m: &[usize]) -> Self {
        let mut parts = Vec::new();
        for (i, &k) in m.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i + 1, k));
        }
        Partition(parts)
    }

    /// Arm length of box `(i, j)`, 1-based.
    pub fn arm(&self, i: usize, j: usize) -> usize {
        self.part(i) - j
    }

    /// Leg length of box `(i, j)`, 1-based.
    pub fn leg(&self, i: usize, j: usize) -> usize {
        self.0.iter().filter(|&&p| p >= j).count() - i
    }

    /// Boxes `(i, j)` in row-major order, 1-based.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| (i + 1, j)))
    }

    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// `λ/μ` has at most one box per column.
    pub fn is_horizontal_strip_over(&self, mu: &Partition) -> bool {
        self.contains(mu) && (1..=self.len()).all(|i| mu.part(i) >= self.part(i + 1))
    }

    /// `λ/μ` has at most one box per row.
    pub fn is_vertical_strip_over(&self, mu: &Partition) -> bool {
        self.contains(mu) && (1..=self.len()).all(|i| self.part(i) - mu.part(i) <= 1)
    }

    /// Dominance order; `None` if incomparable or of different sizes.
    pub fn dominance_cmp(&self, other: &Partition) -> Option<Ordering> {
        if self.size() != other.size() {
            return None;
        }
        let (mut a, mut b) = (0, 0);
        let (mut le, mut ge) = (true, true);
        for i in 1..=self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            le &= a <= b;
            ge &= a >= b;
        }
        match (le, ge) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }

    /// `z_λ = ∏ i^{m_i} m_i!`.
    pub fn z_factor(&self) -> u128 {
        self.multiplicities()
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let i = (i + 1) as u128;
                (1..=m as u128).map(|k| k * i).product::<u128>()
            })
            .product()
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_stat(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    /// Union of parts, sorted.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::from_unsorted(v)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let t = s
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .trim();
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Partition(format!("{s}: {e}")))?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Reverse-lexicographic order: `(3) < (2,1) < (1,1,1)` within one size.
fn revlex(a: &Partition, b: &Partition) -> Ordering {
    b.0.cmp(&a.0)
}

impl Ord for Partition {
    /// Size first, then reverse-lexicographic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| revlex(self, other))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Partitions of exactly `n`, reverse-lexicographic (largest first part first).
pub fn partitions_of(n: usize) -> Vec<Partition> {
    bounded_partitions_of(n, n, n)
}

/// Partitions of `n` with parts `≤ max_part` and at most `max_length` parts,
/// reverse-lexicographic.
pub fn bounded_partitions_of(n: usize, max_part: usize, max_length: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        rem: usize,
        max_part: usize,
        slots: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=max_part.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    rec(n, max_part, max_length, &mut cur, &mut out);
    out
}

/// All partitions with size `≤ max_size`, first part `≤ max_part`, length
/// `≤ max_length`; ordered by size, then reverse-lexicographic.
pub fn enumerate_partitions(max_size: usize, max_part: usize, max_length: usize) -> Vec<Partition> {
    (0..=max_size)
        .flat_map(|n| bounded_partitions_of(n, max_part, max_length))
        .collect()
}

/// All `μ ⊆ λ`.
pub fn subpartitions(lambda: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        lambda: &Partition,
        i: usize,
        bound: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if i > lambda.len() {
            out.push(Partition::new(cur.clone()).expect("weakly decreasing by construction"));
            return;
        }
        for p in 0..=lambda.part(i).min(bound) {
            cur.push(p);
            rec(lambda, i + 1, p, cur, out);
            cur.pop();
        }
    }
    rec(lambda, 1, usize::MAX, &mut cur, &mut out);
    out.sort();
    out.dedup();
    out
}

/// All `λ ⊇ μ` with `λ/μ` a horizontal strip, subject to `λ_1 ≤ max_part`
/// and `|λ| ≤ max_size`.
pub fn horizontal_strips_above(mu: &Partition, max_part: usize, max_size: usize) -> Vec<Partition> {
    let l = mu.len() + 1;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(l);
    fn rec(
        mu: &Partition,
        i: usize,
        l: usize,
        budget: usize,
        max_part: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if i > l {
            out.push(Partition::new(cur.clone()).expect("interlacing"));
            return;
        }
        let lo = mu.part(i);
        let hi = if i == 1 { max_part } else { mu.part(i - 1) };
        if lo > hi {
            return;
        }
        for p in lo..=hi.min(lo + budget) {
            cur.push(p);
            rec(mu, i + 1, l, budget - (p - lo), max_part, cur, out);
            cur.pop();
        }
    }
    if mu.first() > max_part || mu.size() > max_size {
        return out;
    }
    rec(mu, 1, l, max_size - mu.size(), max_part, &mut cur, &mut out);
    out
}

/// All `ν ⊆ λ` with `λ/ν` a horizontal strip.
pub fn horizontal_strips_below(lambda: &Partition) -> Vec<Partition> {
    let l = lambda.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(l);
    fn rec(lambda: &Partition, i: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i > l {
            out.push(Partition::new(cur.clone()).expect("interlacing"));
            return;
        }
        for p in lambda.part(i + 1)..=lambda.part(i) {
            cur.push(p);
            rec(lambda, i + 1, l, cur, out);
            cur.pop();
        }
    }
    rec(lambda, 1, l, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_and_stats() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        let l = p(&[3, 1, 1]);
        assert_eq!(l.conjugate(), l);
        assert_eq!(l.multiplicity(1), 2);
        assert_eq!(l.arm(1, 1), 2);
        assert_eq!(l.leg(1, 1), 2);
        assert_eq!(l.z_factor(), 3 * 2);
        assert_eq!(l.to_string(), "[3,1,1]");
        assert_eq!(Partition::parse("[3,1,1]").unwrap(), l);
        assert_eq!(Partition::from_multiplicities(&l.multiplicities()), l);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), p(&[2, 1]));
    }

    #[test]
    fn enumeration_order() {
        let all = enumerate_partitions(4, 4, 4);
        assert_eq!(all.len(), 12);
        let s: Vec<String> = all.iter().map(|x| x.to_string()).collect();
        assert_eq!(
            s,
            [
                "[]",
                "[1]",
                "[2]",
                "[1,1]",
                "[3]",
                "[2,1]",
                "[1,1,1]",
                "[4]",
                "[3,1]",
                "[2,2]",
                "[2,1,1]",
                "[1,1,1,1]"
            ]
        );
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
    }

    #[test]
    fn strips_agree_with_brute_force() {
        let all = enumerate_partitions(7, 7, 7);
        for mu in all.iter().filter(|m| m.size() <= 4) {
            let got = horizontal_strips_above(mu, 4, 7);
            let want: Vec<_> = all
                .iter()
                .filter(|l| l.first() <= 4 && l.is_horizontal_strip_over(mu))
                .cloned()
                .collect();
            let mut g = got.clone();
            g.sort();
            assert_eq!(g, want, "above {mu}");
        }
        for l in all.iter() {
            let mut got = horizontal_strips_below(l);
            got.sort();
            let want: Vec<_> = all
                .iter()
                .filter(|m| l.is_horizontal_strip_over(m))
                .cloned()
                .collect();
            assert_eq!(got, want, "below {l}");
            let subs = subpartitions(l);
            let want: Vec<_> = all.iter().filter(|m| l.contains(m)).cloned().collect();
            assert_eq!(subs, want);
        }
    }

    #[test]
    fn dominance() {
        assert_eq!(p(&[3]).dominance_cmp(&p(&[2, 1])), Some(Ordering::Greater));
        assert_eq!(p(&[3, 1, 1, 1]).dominance_cmp(&p(&[2, 2, 2])), None);
    }
}
