use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{Factor, LaurentExpr};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub radius: f64,
    /// Nodes per circle on the first pass.
    pub nodes: usize,
    /// Doubling stops here.
    pub max_nodes: usize,
    /// Successive passes must agree to this tolerance.
    pub tol: f64,
}

impl QuadratureSpec {
    pub fn new(radius: f64, nodes: usize) -> Self {
        QuadratureSpec {
            radius,
            nodes,
            max_nodes: 1024,
            tol: 1e-12,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Imaginary part of the last pass; nonzero only through rounding.
    pub imag: f64,
    pub nodes: usize,
    /// `|last - previous|`, or infinity after a single pass.
    pub delta: f64,
    pub converged: bool,
}

/// Trapezoid rule on the torus `|z_i| = r`, doubling the node count until two
/// passes agree within `spec.tol` or `spec.max_nodes` is reached.
pub fn constant_term_quadrature(
    e: &LaurentExpr,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    e.validate(spec.radius)?;
    let mut nodes = spec.nodes.max(1);
    let mut prev: Option<Complex64> = None;
    loop {
        let v = trapezoid(e, spec.radius, nodes);
        if let Some(p) = prev {
            let delta = (v - p).norm();
            if delta < spec.tol || nodes * 2 > spec.max_nodes {
                return Ok(QuadratureResult {
                    value: v.re,
                    imag: v.im,
                    nodes,
                    delta,
                    converged: delta < spec.tol,
                });
            }
        } else if e.n == 0 {
            return Ok(QuadratureResult {
                value: v.re,
                imag: v.im,
                nodes,
                delta: 0.0,
                converged: true,
            });
        }
        prev = Some(v);
        nodes *= 2;
    }
}

fn trapezoid(e: &LaurentExpr, r: f64, nodes: usize) -> Complex64 {
    let n = e.n;
    let points: Vec<Complex64> = (0..nodes)
        .map(|k| Complex64::from_polar(r, 2.0 * PI * k as f64 / nodes as f64))
        .collect();
    let unit: Vec<Complex64> = (0..nodes)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / nodes as f64))
        .collect();

    let mut single = vec![vec![Complex64::new(1.0, 0.0); nodes]; n];
    let mut pair = vec![vec![None::<Vec<Complex64>>; n]; n];
    let mut general = Vec::new();
    for f in &e.factors {
        match f {
            Factor::Monomial { var, .. }
            | Factor::Binomial { var, .. }
            | Factor::Geometric { var, .. } => {
                let mut z = vec![Complex64::new(1.0, 0.0); n];
                for (k, slot) in single[*var].iter_mut().enumerate() {
                    z[*var] = points[k];
                    *slot *= f.eval(&z);
                }
            }
            Factor::PairGeometric { i, j, .. } | Factor::PairPolynomial { i, j, .. } => {
                let table =
                    pair[*i][*j].get_or_insert_with(|| vec![Complex64::new(1.0, 0.0); nodes]);
                let mut z = vec![Complex64::new(1.0, 0.0); n];
                for (d, slot) in table.iter_mut().enumerate() {
                    z[*i] = unit[d];
                    z[*j] = Complex64::new(1.0, 0.0);
                    *slot *= f.eval(&z);
                }
            }
            Factor::Laurent(_) => general.push(f),
        }
    }
    let pairs: Vec<(usize, usize, &Vec<Complex64>)> = pair
        .iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter_map(move |(j, t)| t.as_ref().map(|t| (i, j, t)))
        })
        .collect();

    let eval_at = |idx: &[usize]| -> Complex64 {
        let mut v = Complex64::new(1.0, 0.0);
        for (var, &k) in idx.iter().enumerate() {
            v *= single[var][k];
        }
        for (i, j, t) in &pairs {
            v *= t[(idx[*i] + nodes - idx[*j]) % nodes];
        }
        if !general.is_empty() {
            let z: Vec<Complex64> = idx.iter().map(|&k| points[k]).collect();
            for f in &general {
                v *= f.eval(&z);
            }
        }
        v
    };

    if n == 0 {
        return eval_at(&[]);
    }
    let total = (nodes as f64).powi(n as i32);
    let rows: Vec<Complex64> = (0..nodes)
        .into_par_iter()
        .map(|k0| {
            let mut idx = vec![0usize; n];
            idx[0] = k0;
            let mut vals = Vec::with_capacity(nodes.pow(n as u32 - 1));
            loop {
                vals.push(eval_at(&idx));
                // odometer over indices 1..n
                let mut p = n - 1;
                loop {
                    if p == 0 {
                        return pairwise_sum(&vals);
                    }
                    idx[p] += 1;
                    if idx[p] < nodes {
                        break;
                    }
                    idx[p] = 0;
                    p -= 1;
                }
            }
        })
        .collect();
    pairwise_sum(&rows) / total
}

fn pairwise_sum(v: &[Complex64]) -> Complex64 {
    match v.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => v[0],
        len => {
            let (a, b) = v.split_at(len / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}
