//! Deformed-boson lattice.
//!
//! Occupancy sequences are stored right to left: index 0 is column 1, the
//! rightmost column of a row. Cylinder lattices are described left to right
//! and converted once by [`to_row_order`].

use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::enumerate_partitions;
use crate::qseries::qfact;
use crate::scalar::{self, one, pow, zero, Scalar};
use crate::sixvertex::VertexLaw;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowKind {
    Black,
    Red,
}

/// Weight of one vertex with `m` arrows entering from below.
pub fn vertex_weight(
    kind: RowKind,
    m: usize,
    in_left: bool,
    out_right: bool,
    a: &Scalar,
    t: &Scalar,
) -> Result<Scalar> {
    if out_right && !in_left && m == 0 {
        return Err(Error::Domain(
            "vertex emits a horizontal arrow with nothing entering".into(),
        ));
    }
    let column = || one() - pow(t, m as u32 + 1);
    Ok(match (kind, in_left, out_right) {
        (RowKind::Black, false, false) => one(),
        (RowKind::Black, true, false) => column(),
        (RowKind::Black, _, true) => a.clone(),
        (RowKind::Red, false, false) => a.clone(),
        (RowKind::Red, true, false) => a * column(),
        (RowKind::Red, _, true) => one(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BosonRow {
    pub kind: RowKind,
    pub rapidity: Scalar,
    pub t: Scalar,
    /// `bottom[j - 1]` is the occupancy of column `j`.
    pub bottom: Vec<usize>,
    pub top: Vec<usize>,
    pub left_in: bool,
    pub right_out: bool,
}

impl BosonRow {
    fn width(&self) -> usize {
        self.bottom.len().max(self.top.len())
    }

    fn at(v: &[usize], j: usize) -> usize {
        v.get(j).copied().unwrap_or(0)
    }
}

/// Partition function of a semi-infinite row. Horizontal edges are forced
/// from the left; the empty tail to the left of the support contributes 1.
pub fn row_pf(row: &BosonRow) -> Result<Scalar> {
    let tail_is_one = match row.kind {
        RowKind::Black => !row.left_in,
        RowKind::Red => row.left_in,
    };
    if !tail_is_one && !row.rapidity.is_one() {
        return Err(Error::Divergence(format!(
            "{:?} row with left_in = {} has tail weight {} per column",
            row.kind, row.left_in as u8, row.rapidity
        )));
    }
    let mut h = row.left_in;
    let mut w = one();
    for j in (0..row.width()).rev() {
        let m = BosonRow::at(&row.bottom, j);
        let n = BosonRow::at(&row.top, j);
        let out = m as i64 + h as i64 - n as i64;
        if !(0..=1).contains(&out) {
            return Ok(zero());
        }
        w *= vertex_weight(row.kind, m, h, out == 1, &row.rapidity, &row.t)?;
        h = out == 1;
    }
    Ok(if h == row.right_out { w } else { zero() })
}

/// Occupancy vector of a partition in row order (`m_1, m_2, …`).
pub fn occupancies(p: &crate::Partition) -> Vec<usize> {
    p.multiplicities()
}

/// The single orientation adapter: a left-to-right column list to row order.
pub fn to_row_order(left_to_right: &[usize]) -> Vec<usize> {
    left_to_right.iter().rev().copied().collect()
}

/// Black row over `λ/μ`: bottom `m(λ)`, top `m(μ)`.
pub fn black_skew_row(
    lam: &crate::Partition,
    mu: &crate::Partition,
    a: &Scalar,
    t: &Scalar,
    right_out: bool,
) -> BosonRow {
    BosonRow {
        kind: RowKind::Black,
        rapidity: a.clone(),
        t: t.clone(),
        bottom: occupancies(lam),
        top: occupancies(mu),
        left_in: false,
        right_out,
    }
}

/// Red row over `λ/μ`: bottom `m(μ)`, top `m(λ)`.
pub fn red_skew_row(
    lam: &crate::Partition,
    mu: &crate::Partition,
    b: &Scalar,
    t: &Scalar,
    right_out: bool,
) -> BosonRow {
    BosonRow {
        kind: RowKind::Red,
        rapidity: b.clone(),
        t: t.clone(),
        bottom: occupancies(mu),
        top: occupancies(lam),
        left_in: true,
        right_out,
    }
}

fn bit(b: bool) -> usize {
    b as usize
}

/// `(1-ab)/(1-tab) · [black a over red b]` minus `[red b over black a] ⊗ cross`,
/// with the middle occupancies and internal horizontal edges summed out.
pub fn yb_exchange_residual(
    a: &Scalar,
    b: &Scalar,
    t: &Scalar,
    bottom: &[usize],
    top: &[usize],
    j1: bool,
    j2: bool,
) -> Result<Scalar> {
    let law = VertexLaw::new(a, b, t)?;
    let width = bottom.len().max(top.len());
    let at = |v: &[usize], j: usize| v.get(j).copied().unwrap_or(0);
    let ab = a * b;

    // Black on top, red below. Far to the left the red arrow may already have
    // turned up into the black row; summing that over all turning columns
    // gives the geometric entry weight.
    let mut lhs: HashMap<(bool, bool), Scalar> = HashMap::from([
        ((true, false), one()),
        ((false, true), (one() - t) * &ab / (one() - &ab)),
    ]);
    for j in (0..width).rev() {
        let (m, n) = (at(bottom, j), at(top, j));
        let mut next: HashMap<(bool, bool), Scalar> = HashMap::new();
        for (&(hr, hb), w) in &lhs {
            for r_out in [false, true] {
                let Some(p) = (m + bit(hr)).checked_sub(bit(r_out)) else {
                    continue;
                };
                let Some(b_out) = (p + bit(hb)).checked_sub(n).filter(|&v| v <= 1) else {
                    continue;
                };
                let wr = vertex_weight(RowKind::Red, m, hr, r_out, b, t)?;
                let wb = vertex_weight(RowKind::Black, p, hb, b_out == 1, a, t)?;
                *next.entry((r_out, b_out == 1)).or_insert_with(zero) += w * wr * wb;
            }
        }
        lhs = next;
    }
    let lhs_value = lhs.remove(&(j1, j2)).unwrap_or_else(zero) * law.p.clone();

    // Red on top, black below; the black row's tail is empty and the red
    // row's tail carries its arrow with weight 1.
    let mut rhs: HashMap<(bool, bool), Scalar> = HashMap::from([((false, true), one())]);
    for j in (0..width).rev() {
        let (m, n) = (at(bottom, j), at(top, j));
        let mut next: HashMap<(bool, bool), Scalar> = HashMap::new();
        for (&(hb, hr), w) in &rhs {
            for b_out in [false, true] {
                let Some(p) = (m + bit(hb)).checked_sub(bit(b_out)) else {
                    continue;
                };
                let Some(r_out) = (p + bit(hr)).checked_sub(n).filter(|&v| v <= 1) else {
                    continue;
                };
                let wb = vertex_weight(RowKind::Black, m, hb, b_out, a, t)?;
                let wr = vertex_weight(RowKind::Red, p, hr, r_out == 1, b, t)?;
                *next.entry((b_out, r_out == 1)).or_insert_with(zero) += w * wb * wr;
            }
        }
        rhs = next;
    }
    // The cross takes the red output as its left input and the black output
    // as its bottom input; straight passage keeps red at j1 and black at j2.
    let rhs_value = scalar::sum(
        rhs.iter()
            .map(|(&(k_black, k_red), w)| w * law.prob(k_red, k_black, j1, j2)),
    );
    Ok(lhs_value - rhs_value)
}

/// `Σ_i i·v_i` with `v` in row order.
fn weighted_size(v: &[usize]) -> u32 {
    v.iter()
        .enumerate()
        .map(|(i, &m)| (i as u32 + 1) * m as u32)
        .sum()
}

/// Difference of the two sides of the rapidity-shift identity for one row.
///
/// Black: `u^{Σ i n_i} w_{ua} - u^{Σ i m_i} w_a` with `left_in = 0`.
/// Red: `u^{Σ i n_i} w_a - u^{Σ i m_i} w_{ua}` with `left_in = 1`.
pub fn u_shift_residual(
    kind: RowKind,
    a: &Scalar,
    u: &Scalar,
    t: &Scalar,
    bottom: &[usize],
    top: &[usize],
    j: bool,
) -> Result<Scalar> {
    let row = |rapidity: Scalar| BosonRow {
        kind,
        rapidity,
        t: t.clone(),
        bottom: bottom.to_vec(),
        top: top.to_vec(),
        left_in: kind == RowKind::Red,
        right_out: j,
    };
    let ua = u * a;
    let (mw, nw) = (pow(u, weighted_size(bottom)), pow(u, weighted_size(top)));
    Ok(match kind {
        RowKind::Black => nw * row_pf(&row(ua))? - mw * row_pf(&row(a.clone()))?,
        RowKind::Red => nw * row_pf(&row(a.clone()))? - mw * row_pf(&row(ua))?,
    })
}

/// A truncated sum over winding vectors with a rigorous bound on the rest.
#[derive(Clone, Debug, PartialEq)]
pub struct WindingSum {
    pub value: Scalar,
    pub cap: usize,
    /// Upper bound on the omitted terms, all of which are nonnegative.
    pub tail_bound: Scalar,
}

impl WindingSum {
    pub fn to_f64(&self) -> f64 {
        scalar::to_f64(&self.value)
    }
}

/// Every single-row transition from `bottom` (left to right, closed
/// boundaries), with its weight.
fn row_transitions(
    bottom: &[usize],
    weight: &dyn Fn(usize, bool, bool) -> Scalar,
) -> Vec<(Vec<usize>, Scalar)> {
    let mut out = Vec::new();
    let mut top = vec![0usize; bottom.len()];
    fn rec(
        c: usize,
        h: bool,
        w: Scalar,
        bottom: &[usize],
        top: &mut Vec<usize>,
        weight: &dyn Fn(usize, bool, bool) -> Scalar,
        out: &mut Vec<(Vec<usize>, Scalar)>,
    ) {
        if c == bottom.len() {
            if !h {
                out.push((top.clone(), w));
            }
            return;
        }
        let total = bottom[c] + h as usize;
        for o in [false, true] {
            if (o as usize) > total {
                continue;
            }
            let vw = weight(bottom[c], h, o);
            if vw.is_zero() {
                continue;
            }
            top[c] = total - o as usize;
            rec(c + 1, o, &w * vw, bottom, top, weight, out);
        }
    }
    rec(0, false, one(), bottom, &mut top, weight, &mut out);
    out
}

/// Planar lattice with rows `xs` (bottom first), closed side boundaries and
/// fixed bottom/top occupancies, all listed left to right.
fn planar_pf(
    bottom: &[usize],
    top: &[usize],
    xs: &[Scalar],
    weight: &(dyn Fn(usize, bool, bool, &Scalar) -> Scalar + Sync),
) -> Scalar {
    let mut states: HashMap<Vec<usize>, Scalar> = HashMap::from([(bottom.to_vec(), one())]);
    for (i, x) in xs.iter().enumerate() {
        let rows_left = xs.len() - i - 1;
        let row_weight = |m: usize, h: bool, o: bool| weight(m, h, o, x);
        let mut next: HashMap<Vec<usize>, Scalar> = HashMap::new();
        for (occ, w) in &states {
            for (nt, rw) in row_transitions(occ, &row_weight) {
                // each remaining row moves an arrow at most one column per
                // column boundary, so unreachable states are dropped early
                if !reachable(&nt, top, rows_left) {
                    continue;
                }
                *next.entry(nt).or_insert_with(zero) += w * rw;
            }
        }
        states = next;
    }
    states.remove(top).unwrap_or_else(zero)
}

/// Arrows only move right: the prefix sums of the occupancy can only drop.
fn reachable(from: &[usize], to: &[usize], rows: usize) -> bool {
    let (mut pf, mut pt) = (0usize, 0usize);
    for (f, t) in from.iter().zip(to) {
        pf += f;
        pt += t;
        if pt > pf || pf - pt > rows {
            return false;
        }
    }
    pf == pt
}

/// All vectors `(w_1, …, w_k)` with `Σ_j j·w_j ≤ cap`.
fn winding_vectors(k: usize, cap: usize) -> Vec<Vec<usize>> {
    enumerate_partitions(cap, k, cap)
        .iter()
        .map(|p| {
            let mut m = p.multiplicities();
            m.resize(k, 0);
            m
        })
        .collect()
}

fn check_rect(n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::Domain(format!(
            "rectangle needs n, M ≥ 1, got n = {n}, M = {m}"
        )));
    }
    Ok(())
}

fn exact_sum(terms: Vec<Scalar>) -> Scalar {
    scalar::sum(terms)
}

/// Cylinder partition function with black weights whose value is
/// `(t;t)_M/(q;q)_n · P_{n^M}(x;q,t)`, truncated at `Σ_j j·m_j ≤ cap`.
pub fn rect_macdonald_pf(
    n: usize,
    m: usize,
    x: &[Scalar],
    q: &Scalar,
    t: &Scalar,
    cap: usize,
) -> Result<WindingSum> {
    check_rect(n, m)?;
    let vectors = winding_vectors(n, cap);
    let weight = |occ: usize, h: bool, o: bool, xi: &Scalar| {
        vertex_weight(RowKind::Black, occ, h, o, xi, t).expect("transitions respect conservation")
    };
    let terms: Vec<(Scalar, Scalar)> = vectors
        .par_iter()
        .map(|mv| {
            // columns k = n, …, 1, 0 from left to right
            let mut bottom = vec![0usize; n + 1];
            let mut top = vec![0usize; n + 1];
            bottom[0] = m + mv[n - 1];
            top[0] = mv[n - 1];
            for k in 1..n {
                bottom[n - k] = mv[k - 1];
                top[n - k] = mv[k - 1];
            }
            top[n] = m;
            let fug = pow(q, weighted_size(mv));
            let pf = planar_pf(&bottom, &top, x, &weight);
            (&fug * pf, fug)
        })
        .collect();
    let (vals, fugs): (Vec<Scalar>, Vec<Scalar>) = terms.into_iter().unzip();
    let value = exact_sum(vals);
    let geometric_rest = qfact(q, n).recip() - exact_sum(fugs);
    let row_bound = scalar::product(x.iter().map(|xi| pow(&(one() + xi), n as u32 + 1)));
    Ok(WindingSum {
        value,
        cap,
        tail_bound: row_bound * geometric_rest,
    })
}

/// Uncolored cylinder with weights `1_{a+b=c+d} x^d`, truncated at
/// `Σ_j j·m_j ≤ cap` over the winding columns.
pub fn uncolored_schur_winding_pf(
    n: usize,
    m: usize,
    x: &[Scalar],
    q: &Scalar,
    cap: usize,
) -> Result<WindingSum> {
    check_rect(n, m)?;
    let weight = |_occ: usize, _h: bool, o: bool, xi: &Scalar| if o { xi.clone() } else { one() };
    let vectors = if n == 1 {
        vec![vec![]]
    } else {
        winding_vectors(n - 1, cap)
    };
    let terms: Vec<(Scalar, Scalar)> = vectors
        .par_iter()
        .map(|mv| {
            // columns c = 0..n left to right; column c carries m_{n-c}
            let mut bottom = vec![0usize; n + 1];
            let mut top = vec![0usize; n + 1];
            bottom[0] = m;
            top[n] = m;
            for c in 1..n {
                bottom[c] = mv[n - c - 1];
                top[c] = mv[n - c - 1];
            }
            let fug = pow(q, weighted_size(mv));
            (&fug * planar_pf(&bottom, &top, x, &weight), fug)
        })
        .collect();
    let (vals, fugs): (Vec<Scalar>, Vec<Scalar>) = terms.into_iter().unzip();
    let value = exact_sum(vals);
    let geometric_rest = qfact(q, n - 1).recip() - exact_sum(fugs);
    let row_bound = scalar::product(x.iter().map(|xi| pow(&(one() + xi), n as u32 + 1)));
    Ok(WindingSum {
        value,
        cap,
        tail_bound: row_bound * geometric_rest,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::Partition;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn single_box_rows() {
        let (a, t) = (rat(1, 3), rat(1, 4));
        let e = Partition::empty();
        assert_eq!(
            row_pf(&black_skew_row(&e, &e, &a, &t, false)).unwrap(),
            one()
        );
        // black: λ = ∅ below, μ = (1) above, one arrow leaves to the right
        let r = BosonRow {
            kind: RowKind::Black,
            rapidity: a.clone(),
            t: t.clone(),
            bottom: vec![],
            top: vec![1],
            left_in: false,
            right_out: true,
        };
        assert_eq!(row_pf(&r).unwrap(), zero());
        assert_eq!(
            row_pf(&black_skew_row(&p(&[1]), &e, &a, &t, true)).unwrap(),
            a
        );
        assert_eq!(
            row_pf(&red_skew_row(&p(&[1]), &e, &a, &t, false)).unwrap(),
            (one() - &t) * &a
        );
    }

    #[test]
    fn divergent_tails() {
        let mut r = black_skew_row(
            &Partition::empty(),
            &Partition::empty(),
            &rat(1, 2),
            &rat(1, 4),
            true,
        );
        r.left_in = true;
        assert!(matches!(row_pf(&r), Err(Error::Divergence(_))));
        r.rapidity = one();
        assert!(row_pf(&r).is_ok());
    }

    #[test]
    fn yb_empty_boundaries() {
        for (j1, j2) in [(false, true), (true, false)] {
            let r =
                yb_exchange_residual(&rat(1, 2), &rat(1, 3), &rat(1, 4), &[], &[], j1, j2).unwrap();
            assert_eq!(r, zero(), "j = ({j1}, {j2})");
        }
    }

    #[test]
    fn rect_single_box() {
        let (x, q, t) = (rat(1, 2), rat(1, 3), rat(1, 4));
        let s = rect_macdonald_pf(1, 1, std::slice::from_ref(&x), &q, &t, 30).unwrap();
        let want = &x * (one() - &t) / (one() - &q);
        assert!(scalar::abs(&(&s.value - &want)) <= s.tail_bound);
        assert!(s.value < want);
    }

    #[test]
    fn uncolored_single_column_is_elementary() {
        let x = [rat(1, 2), rat(1, 3), rat(1, 5)];
        let s = uncolored_schur_winding_pf(1, 2, &x, &rat(1, 3), 5).unwrap();
        assert_eq!(s.value, rat(1, 6) + rat(1, 10) + rat(1, 15));
        assert_eq!(s.tail_bound, zero());
    }

    #[test]
    fn winding_vector_count() {
        // partitions with parts ≤ 2 and size ≤ 4: 1 + 1 + 2 + 2 + 3
        assert_eq!(winding_vectors(2, 4).len(), 9);
    }
}
