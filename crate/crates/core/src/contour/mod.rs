//! Constant terms of products of Laurent factors on an equal-radius torus.
//!
//! Two backends: [`constant_term_series`] expands every geometric factor and
//! returns an exact rational together with a rigorous tail bound;
//! [`constant_term_quadrature`] applies the trapezoid rule with node doubling.

mod formulas;
mod quadrature;
mod series;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{self, one, Scalar};
use crate::symfunc::SymFunc;

pub use formulas::{
    hl_length_law_rhs, hl_orthogonality, hl_orthogonality_expected, hl_skew_integral, qtsym_rhs,
    z_contour, Backend, ContourValue,
};
pub use quadrature::{constant_term_quadrature, QuadratureResult, QuadratureSpec};
pub use series::{constant_term_series, SeriesResult};

/// Sparse Laurent polynomial: exponent vector ↦ coefficient.
pub type LaurentPoly = BTreeMap<Vec<i32>, Scalar>;

#[derive(Clone, Debug, PartialEq)]
pub enum Factor {
    /// `z_var^power`.
    Monomial { var: usize, power: i32 },
    /// `1 + c z_var^power`, `power = ±1`.
    Binomial { var: usize, c: Scalar, power: i32 },
    /// `1 / (1 - c z_var^power)`, `power = ±1`.
    Geometric { var: usize, c: Scalar, power: i32 },
    /// `1 / (1 - c z_i / z_j)`.
    PairGeometric { i: usize, j: usize, c: Scalar },
    /// `1 - c z_i / z_j`.
    PairPolynomial { i: usize, j: usize, c: Scalar },
    /// An arbitrary Laurent polynomial.
    Laurent(LaurentPoly),
}

impl Factor {
    fn is_geometric(&self) -> bool {
        matches!(
            self,
            Factor::Geometric { .. } | Factor::PairGeometric { .. }
        )
    }

    /// Ratio of the geometric expansion on the torus of radius `r`.
    fn ratio(&self, r: f64) -> Option<f64> {
        match self {
            Factor::Geometric { c, power, .. } => Some(scalar::to_f64(c).abs() * r.powi(*power)),
            Factor::PairGeometric { c, .. } => Some(scalar::to_f64(c).abs()),
            _ => None,
        }
    }

    /// Exponent step of one term of a geometric expansion.
    fn step(&self, n: usize) -> Vec<i32> {
        let mut e = vec![0; n];
        match self {
            Factor::Geometric { var, power, .. } => e[*var] = *power,
            Factor::PairGeometric { i, j, .. } => {
                e[*i] += 1;
                e[*j] -= 1;
            }
            _ => unreachable!("not a geometric factor"),
        }
        e
    }

    fn coefficient(&self) -> &Scalar {
        match self {
            Factor::Geometric { c, .. } | Factor::PairGeometric { c, .. } => c,
            _ => unreachable!("not a geometric factor"),
        }
    }

    /// The factor as a Laurent polynomial, for non-geometric factors.
    fn to_laurent(&self, n: usize) -> LaurentPoly {
        let unit = |var: usize, p: i32| {
            let mut e = vec![0; n];
            e[var] = p;
            e
        };
        let mut out = LaurentPoly::new();
        match self {
            Factor::Monomial { var, power } => {
                out.insert(unit(*var, *power), one());
            }
            Factor::Binomial { var, c, power } => {
                out.insert(vec![0; n], one());
                add_term(&mut out, unit(*var, *power), c.clone());
            }
            Factor::PairPolynomial { i, j, c } => {
                out.insert(vec![0; n], one());
                let mut e = vec![0; n];
                e[*i] += 1;
                e[*j] -= 1;
                add_term(&mut out, e, -c.clone());
            }
            Factor::Laurent(p) => return p.clone(),
            _ => unreachable!("geometric factor has no finite expansion"),
        }
        out
    }

    /// Upper bound for `|factor|` on the torus of radius `r`.
    fn sup_norm(&self, r: f64) -> f64 {
        let a = |c: &Scalar| scalar::to_f64(c).abs();
        match self {
            Factor::Monomial { power, .. } => r.powi(*power),
            Factor::Binomial { c, power, .. } => 1.0 + a(c) * r.powi(*power),
            Factor::PairPolynomial { c, .. } => 1.0 + a(c),
            Factor::Laurent(p) => p
                .iter()
                .map(|(e, c)| a(c) * r.powi(e.iter().sum::<i32>()))
                .sum(),
            Factor::Geometric { .. } | Factor::PairGeometric { .. } => {
                let rho = self.ratio(r).expect("geometric");
                1.0 / (1.0 - rho)
            }
        }
    }

    fn eval(&self, z: &[Complex64]) -> Complex64 {
        let c64 = |c: &Scalar| Complex64::new(scalar::to_f64(c), 0.0);
        match self {
            Factor::Monomial { var, power } => z[*var].powi(*power),
            Factor::Binomial { var, c, power } => 1.0 + c64(c) * z[*var].powi(*power),
            Factor::Geometric { var, c, power } => 1.0 / (1.0 - c64(c) * z[*var].powi(*power)),
            Factor::PairGeometric { i, j, c } => 1.0 / (1.0 - c64(c) * z[*i] / z[*j]),
            Factor::PairPolynomial { i, j, c } => 1.0 - c64(c) * z[*i] / z[*j],
            Factor::Laurent(p) => laurent_at(p, z),
        }
    }
}

pub(crate) fn add_term(p: &mut LaurentPoly, e: Vec<i32>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match p.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

pub fn laurent_mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_term(&mut out, e, ca * cb);
        }
    }
    out
}

pub fn laurent_at(p: &LaurentPoly, z: &[Complex64]) -> Complex64 {
    p.iter()
        .map(|(e, c)| {
            let mut v = Complex64::new(scalar::to_f64(c), 0.0);
            for (zi, &k) in z.iter().zip(e) {
                v *= zi.powi(k);
            }
            v
        })
        .sum()
}

/// A symmetric function in `n` variables as a Laurent polynomial, optionally
/// with every variable inverted.
pub fn symfunc_laurent(f: &SymFunc, n: usize, invert: bool) -> LaurentPoly {
    let sign = if invert { -1 } else { 1 };
    let mut out = LaurentPoly::new();
    for (lam, c) in f.to_m().terms() {
        if lam.len() > n {
            continue;
        }
        let mut v: Vec<usize> = lam.parts().to_vec();
        v.resize(n, 0);
        for perm in distinct_permutations(v) {
            add_term(
                &mut out,
                perm.iter().map(|&k| sign * k as i32).collect(),
                c.clone(),
            );
        }
    }
    out
}

fn distinct_permutations(mut v: Vec<usize>) -> Vec<Vec<usize>> {
    v.sort_unstable();
    let mut out = vec![v.clone()];
    while let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) {
        let j = (i..v.len())
            .rev()
            .find(|&j| v[j] > v[i - 1])
            .expect("pivot");
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(v.clone());
    }
    out
}

/// Product of factors in `n` torus variables.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentExpr {
    pub n: usize,
    pub factors: Vec<Factor>,
}

impl LaurentExpr {
    pub fn new(n: usize) -> Self {
        LaurentExpr {
            n,
            factors: Vec::new(),
        }
    }

    pub fn push(&mut self, f: Factor) -> &mut Self {
        self.factors.push(f);
        self
    }

    /// `Δ̃(z;q,u) = ∏_{i≠j} (1 - qu z_i/z_j)(1 - z_i/z_j) / ((1 - q z_i/z_j)(1 - u z_i/z_j))`.
    pub fn push_delta_tilde(&mut self, q: &Scalar, u: &Scalar) -> &mut Self {
        for (i, j) in self.ordered_pairs() {
            self.factors.push(Factor::PairPolynomial { i, j, c: q * u });
            self.factors.push(Factor::PairPolynomial { i, j, c: one() });
            self.factors
                .push(Factor::PairGeometric { i, j, c: q.clone() });
            self.factors
                .push(Factor::PairGeometric { i, j, c: u.clone() });
        }
        self
    }

    /// `Δ(z;0,t) = ∏_{i≠j} (1 - z_i/z_j) / (1 - t z_i/z_j)`.
    pub fn push_delta_hl(&mut self, t: &Scalar) -> &mut Self {
        for (i, j) in self.ordered_pairs() {
            self.factors.push(Factor::PairPolynomial { i, j, c: one() });
            self.factors
                .push(Factor::PairGeometric { i, j, c: t.clone() });
        }
        self
    }

    fn ordered_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect()
    }

    /// Checks that every geometric factor converges on the torus of radius `r`.
    pub fn validate(&self, r: f64) -> Result<()> {
        if r <= 0.0 || !r.is_finite() {
            return Err(Error::Contour(format!("radius must be positive, got {r}")));
        }
        for f in &self.factors {
            if let Factor::PairGeometric { c, .. } = f {
                if c.abs() >= one() {
                    return Err(Error::Contour(format!(
                        "pair factor coefficient {c} is not inside the unit disc"
                    )));
                }
            }
            if let Some(rho) = f.ratio(r) {
                if rho >= 1.0 {
                    return Err(Error::Contour(format!(
                        "geometric factor {f:?} diverges at radius {r}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.factors.iter().map(|f| f.eval(z)).product()
    }
}

/// Radius for the torus: the geometric mean of the bounds when both sides are
/// constrained, otherwise `max(1, 2·lower)`.
pub fn choose_radius(lower: f64, upper: Option<f64>) -> Result<f64> {
    match upper {
        Some(up) if up <= lower => Err(Error::Contour(format!(
            "no admissible radius: need {lower} < r < {up}"
        ))),
        Some(up) if lower > 0.0 => Ok((lower * up).sqrt()),
        Some(up) => Ok(up / 2.0),
        None => Ok(1.0f64.max(2.0 * lower)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, zero};

    #[test]
    fn permutations_are_distinct() {
        assert_eq!(distinct_permutations(vec![1, 0, 1]).len(), 3);
        assert_eq!(distinct_permutations(vec![2, 1, 0]).len(), 6);
    }

    #[test]
    fn backends_agree_on_small_product() {
        // constant term of (z + 2 + 1/z) is 2.
        let mut e = LaurentExpr::new(1);
        let mut p = LaurentPoly::new();
        p.insert(vec![1], one());
        p.insert(vec![0], rat(2, 1));
        p.insert(vec![-1], one());
        e.push(Factor::Laurent(p));
        let s = constant_term_series(&e, 4, 1.0).unwrap();
        assert_eq!(s.value, rat(2, 1));
        assert_eq!(s.tail_bound, 0.0);
        let q = constant_term_quadrature(&e, &QuadratureSpec::new(1.0, 16)).unwrap();
        assert!((q.value - 2.0).abs() < 1e-14);

        let mut e = LaurentExpr::new(2);
        e.push(Factor::Binomial {
            var: 0,
            c: rat(1, 2),
            power: 1,
        })
        .push(Factor::Binomial {
            var: 1,
            c: rat(2, 3),
            power: -1,
        })
        .push(Factor::Binomial {
            var: 0,
            c: rat(-1, 5),
            power: -1,
        })
        .push(Factor::PairGeometric {
            i: 1,
            j: 0,
            c: rat(1, 3),
        });
        let s = constant_term_series(&e, 40, 1.0).unwrap();
        let q = constant_term_quadrature(&e, &QuadratureSpec::new(1.0, 64)).unwrap();
        assert!((scalar::to_f64(&s.value) - q.value).abs() < 1e-10);
        assert!(s.tail_bound < 1e-10);
    }

    #[test]
    fn empty_product_is_one() {
        let e = LaurentExpr::new(0);
        assert_eq!(constant_term_series(&e, 3, 1.0).unwrap().value, one());
        assert_eq!(
            constant_term_quadrature(&e, &QuadratureSpec::new(1.0, 8))
                .unwrap()
                .value,
            1.0
        );
        let mut m = LaurentExpr::new(1);
        m.push(Factor::Monomial { var: 0, power: 3 });
        assert_eq!(constant_term_series(&m, 3, 1.0).unwrap().value, zero());
        assert!(
            constant_term_quadrature(&m, &QuadratureSpec::new(1.0, 16))
                .unwrap()
                .value
                .abs()
                < 1e-14
        );
    }
}
