use std::collections::BTreeMap;
use std::ops::AddAssign;

use num_traits::Num;
use rayon::prelude::*;

use super::VertexLaw;
use crate::error::Result;
use crate::measures::MeasureSpec;
use crate::scalar::{self, Scalar};

/// Numeric type a transfer operator can be evaluated in.
pub trait Weight: Clone + Num + AddAssign + Send + Sync {
    fn from_scalar(s: &Scalar) -> Self;
    fn to_f64(&self) -> f64;
}

impl Weight for Scalar {
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn to_f64(&self) -> f64 {
        scalar::to_f64(self)
    }
}

impl Weight for f64 {
    fn from_scalar(s: &Scalar) -> Self {
        scalar::to_f64(s)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Boundary state of an `M × N` domain: bit `i - 1` of `cols` is column `i`
/// (left to right), bit `j - 1` of `rows` is row `j` (bottom to top).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edges {
    pub cols: u32,
    pub rows: u32,
}

impl Edges {
    pub fn arrows(&self) -> u32 {
        self.cols.count_ones() + self.rows.count_ones()
    }
}

/// Exact stochastic map from (bottom, left) inputs to (top, right) outputs.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainTransfer<W = Scalar> {
    pub m: usize,
    pub n: usize,
    pub z: Scalar,
    pub table: BTreeMap<Edges, Vec<(Edges, W)>>,
}

/// Branch probabilities of vertex `(i, j)` in column-major order.
fn vertex_laws(m: usize, n: usize, z: &Scalar, spec: &MeasureSpec) -> Result<Vec<VertexLaw>> {
    let mut laws = Vec::with_capacity(m * n);
    for i in 0..m {
        let a = z * &spec.a[i];
        for j in 0..n {
            laws.push(VertexLaw::new(&a, &spec.b[j], &spec.t)?);
        }
    }
    Ok(laws)
}

/// Branch probabilities `(left→right, bottom→top)` of every vertex.
pub(crate) fn straight_probs<W: Weight>(
    m: usize,
    n: usize,
    z: &Scalar,
    spec: &MeasureSpec,
) -> Result<Vec<(W, W)>> {
    Ok(vertex_laws(m, n, z, spec)?
        .iter()
        .map(|l| (W::from_scalar(&l.p), W::from_scalar(&(&l.t * &l.p))))
        .collect())
}

/// Columns are swept left to right; inside a column the vertical arrow climbs
/// through the rows bottom to top.
fn propagate<W: Weight>(m: usize, n: usize, probs: &[(W, W)], input: Edges) -> Vec<(Edges, W)> {
    let mut states: BTreeMap<(u32, u32), W> = BTreeMap::from([((input.rows, 0u32), W::one())]);
    for i in 0..m {
        let mut col: BTreeMap<(u32, u32, bool), W> = BTreeMap::new();
        for ((h, top), w) in states {
            col.insert((h, top, input.cols >> i & 1 == 1), w);
        }
        for j in 0..n {
            let (straight_h, straight_v) = &probs[i * n + j];
            let mut next: BTreeMap<(u32, u32, bool), W> = BTreeMap::new();
            for ((h, top, v), w) in col {
                let left = h >> j & 1 == 1;
                let cleared = h & !(1 << j);
                let mut push = |right: bool, up: bool, pr: W| {
                    if pr.is_zero() {
                        return;
                    }
                    let key = (cleared | (right as u32) << j, top, up);
                    *next.entry(key).or_insert_with(W::zero) += w.clone() * pr;
                };
                match (left, v) {
                    (false, false) => push(false, false, W::one()),
                    (true, true) => push(true, true, W::one()),
                    (true, false) => {
                        push(true, false, straight_h.clone());
                        push(false, true, W::one() - straight_h.clone());
                    }
                    (false, true) => {
                        push(false, true, straight_v.clone());
                        push(true, false, W::one() - straight_v.clone());
                    }
                }
            }
            col = next;
        }
        states = BTreeMap::new();
        for ((h, top, v), w) in col {
            *states
                .entry((h, top | (v as u32) << i))
                .or_insert_with(W::zero) += w;
        }
    }
    states
        .into_iter()
        .map(|((rows, cols), w)| (Edges { cols, rows }, w))
        .collect()
}

/// Transfer operator of one domain with column rapidities `z·a_i`.
pub fn domain_transfer_in<W: Weight>(
    m: usize,
    n: usize,
    z: &Scalar,
    spec: &MeasureSpec,
) -> Result<DomainTransfer<W>> {
    let probs = straight_probs::<W>(m, n, z, spec)?;
    let inputs: Vec<Edges> = (0..1u32 << m)
        .flat_map(|cols| (0..1u32 << n).map(move |rows| Edges { cols, rows }))
        .collect();
    let table = inputs
        .par_iter()
        .map(|&e| (e, propagate(m, n, &probs, e)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(DomainTransfer {
        m,
        n,
        z: z.clone(),
        table,
    })
}

pub fn domain_transfer(
    m: usize,
    n: usize,
    z: &Scalar,
    spec: &MeasureSpec,
) -> Result<DomainTransfer> {
    spec.validate()?;
    domain_transfer_in(m, n, z, spec)
}

impl<W: Weight> DomainTransfer<W> {
    pub fn row(&self, input: Edges) -> &[(Edges, W)] {
        self.table.get(&input).map(Vec::as_slice).unwrap_or(&[])
    }
}
