use crate::contour::series::tail_bound_at;
use crate::contour::{
    choose_radius, constant_term_quadrature, constant_term_series, symfunc_laurent, Factor,
    LaurentExpr, QuadratureSpec,
};
use crate::error::{Error, Result};
use crate::measures::{phi_norm, MeasureSpec};
use crate::partition::Partition;
use crate::qseries::{qfact, qpoch_double, qpoch_inf};
use crate::scalar::{self, int, one, pow, zero, Scalar};
use crate::symfunc::{hall_littlewood_p, macdonald_q, DEFAULT_CAP};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Backend {
    /// Exact expansion to a total geometric order.
    Series { order: usize },
    /// Trapezoid rule with node doubling.
    Quadrature {
        nodes: usize,
        max_nodes: usize,
        tol: f64,
    },
}

impl Backend {
    pub fn quadrature(nodes: usize) -> Self {
        Backend::Quadrature {
            nodes,
            max_nodes: 1024,
            tol: 1e-12,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContourValue {
    pub value: f64,
    /// Exact value of the truncated series (series backend only).
    pub exact: Option<Scalar>,
    /// Series: certified tail bound. Quadrature: last doubling difference.
    pub error: f64,
    /// Series order or final node count.
    pub resolution: usize,
    pub radius: f64,
    pub converged: bool,
}

fn factorial(n: usize) -> Scalar {
    (1..=n as i64).map(int).product()
}

/// Range of radii on which the integrand's geometric factors converge.
fn radius_window(e: &LaurentExpr) -> (f64, Option<f64>) {
    let mut lo = 0.0f64;
    let mut hi: Option<f64> = None;
    for f in &e.factors {
        if let Factor::Geometric { c, power, .. } = f {
            let c = scalar::to_f64(c).abs();
            if *power < 0 {
                lo = lo.max(c);
            } else if c > 0.0 {
                let b = 1.0 / c;
                hi = Some(hi.map_or(b, |h: f64| h.min(b)));
            }
        }
    }
    (lo, hi)
}

/// Integrand evaluated by `backend`, multiplied by the exact `prefactor`.
/// `contour_radius` is used for quadrature; the series backend chooses the
/// radius in the convergence window that minimises its tail bound.
fn integrate(
    e: &LaurentExpr,
    prefactor: &Scalar,
    contour_radius: f64,
    backend: Backend,
) -> Result<ContourValue> {
    let pf = scalar::to_f64(prefactor);
    match backend {
        Backend::Series { order } => {
            let (lo, hi) = radius_window(e);
            let (a, b) = match hi {
                Some(h) => (lo.max(h * 1e-6), h),
                None => (lo.max(1e-3), lo.max(1.0) * 1e3),
            };
            let mut best = (f64::INFINITY, contour_radius);
            for k in 1..200 {
                let r = a * (b / a).powf(k as f64 / 200.0);
                let tb = tail_bound_at(e, order, r);
                if tb < best.0 {
                    best = (tb, r);
                }
            }
            let s = constant_term_series(e, order, best.1)?;
            let exact = &s.value * prefactor;
            Ok(ContourValue {
                value: scalar::to_f64(&exact),
                exact: Some(exact),
                error: s.tail_bound * pf.abs(),
                resolution: order,
                radius: best.1,
                converged: true,
            })
        }
        Backend::Quadrature {
            nodes,
            max_nodes,
            tol,
        } => {
            let spec = QuadratureSpec {
                radius: contour_radius,
                nodes,
                max_nodes,
                tol: tol / pf.abs().max(1e-300),
            };
            let q = constant_term_quadrature(e, &spec)?;
            Ok(ContourValue {
                value: q.value * pf,
                exact: None,
                error: q.delta * pf.abs(),
                resolution: q.nodes,
                radius: contour_radius,
                converged: q.converged,
            })
        }
    }
}

/// `∏_i z_i^N ∏_{i,j} (1 + x_j/z_i) Δ̃(z;q,u)` in `n` variables.
fn z_integrand(n: usize, rows: usize, x: &[Scalar], q: &Scalar, u: &Scalar) -> LaurentExpr {
    let mut e = LaurentExpr::new(n);
    for i in 0..n {
        if rows > 0 {
            e.push(Factor::Monomial {
                var: i,
                power: rows as i32,
            });
        }
        for xj in x {
            e.push(Factor::Binomial {
                var: i,
                c: xj.clone(),
                power: -1,
            });
        }
    }
    e.push_delta_tilde(q, u);
    e
}

fn max_abs(xs: &[Scalar]) -> f64 {
    xs.iter()
        .map(|v| scalar::to_f64(v).abs())
        .fold(0.0, f64::max)
}

/// `P(λ_1 + χ ≤ n)` for the periodic q-Whittaker measure as an `n`-fold
/// torus integral; manifestly symmetric in `(q, u)`.
pub fn qtsym_rhs(n: usize, spec: &MeasureSpec, backend: Backend) -> Result<ContourValue> {
    spec.validate()?;
    let (q, u) = (&spec.q, &spec.u);
    let mut x = spec.a.clone();
    x.extend(spec.b.iter().map(|v| v.recip()));
    let e = z_integrand(n, spec.b.len(), &x, q, u);
    let mut pf = vec![
        qpoch_inf(q, q)?,
        qpoch_inf(u, u)?,
        pow(&(one() - q * u), n as u32),
    ];
    for ai in &spec.a {
        for bj in &spec.b {
            pf.push(qpoch_double(&(ai * bj), q, u)?);
        }
    }
    pf.extend(spec.b.iter().map(|v| pow(v, n as u32)));
    let den = factorial(n) * pow(&(one() - q), n as u32) * pow(&(one() - u), n as u32);
    let prefactor = scalar::product(pf) / den;
    let r = choose_radius(max_abs(&x), None)?;
    integrate(&e, &prefactor, r, backend)
}

/// `P(l(λ) + χ ≤ n)` for the periodic Hall-Littlewood measure as an `n`-fold
/// torus integral on a circle separating `a` from `b^{-1}`.
pub fn hl_length_law_rhs(n: usize, spec: &MeasureSpec, backend: Backend) -> Result<ContourValue> {
    spec.validate()?;
    let (t, u) = (&spec.t, &spec.u);
    let lower = max_abs(&spec.a);
    let upper = spec
        .b
        .iter()
        .map(|v| 1.0 / scalar::to_f64(v).abs())
        .fold(f64::INFINITY, f64::min);
    let r = choose_radius(lower, upper.is_finite().then_some(upper))?;
    let mut e = LaurentExpr::new(n);
    for i in 0..n {
        for aj in &spec.a {
            e.push(Factor::Binomial {
                var: i,
                c: -(t * aj),
                power: -1,
            });
            e.push(Factor::Geometric {
                var: i,
                c: aj.clone(),
                power: -1,
            });
        }
        for bj in &spec.b {
            e.push(Factor::Binomial {
                var: i,
                c: -(t * bj),
                power: 1,
            });
            e.push(Factor::Geometric {
                var: i,
                c: bj.clone(),
                power: 1,
            });
        }
    }
    e.push_delta_tilde(t, u);
    let num = qpoch_inf(t, t)? * pow(&(one() - t * u), n as u32);
    let den = factorial(n)
        * pow(&(one() - t), n as u32)
        * pow(&(one() - u), n as u32)
        * phi_norm(&spec.a, &spec.b, &zero(), t, u)?;
    integrate(&e, &(num / den), r, backend)
}

/// `Z_{n,N}(q,u;x)` as an `n`-fold torus integral.
pub fn z_contour(
    n: usize,
    rows: usize,
    q: &Scalar,
    u: &Scalar,
    x: &[Scalar],
    backend: Backend,
) -> Result<ContourValue> {
    let e = z_integrand(n, rows, x, q, u);
    let prefactor = pow(&(one() - q * u), n as u32)
        / (factorial(n) * pow(&(one() - q), n as u32) * pow(&(one() - u), n as u32));
    let r = choose_radius(max_abs(x), None)?;
    integrate(&e, &prefactor, r, backend)
}

fn check_length(lam: &Partition, n: usize) -> Result<()> {
    if lam.len() > n {
        return Err(Error::Domain(format!(
            "l({lam}) = {} exceeds the number of variables {n}",
            lam.len()
        )));
    }
    Ok(())
}

/// `(q;q)_{n-l(λ)} / (1-q)^n · ⟨P_λ(z;0,q), Q_μ(z;0,q) Π(z,x;0,q)⟩'_n`, which
/// reproduces `P_{λ/μ}(x;0,q)`.
pub fn hl_skew_integral(
    lam: &Partition,
    mu: &Partition,
    x: &[Scalar],
    q: &Scalar,
    n: usize,
    backend: Backend,
) -> Result<ContourValue> {
    check_length(lam, n)?;
    let cap = lam.size().max(mu.size()).max(DEFAULT_CAP);
    let mut e = LaurentExpr::new(n);
    e.push(Factor::Laurent(symfunc_laurent(
        &hall_littlewood_p(lam, q, cap)?,
        n,
        false,
    )));
    e.push(Factor::Laurent(symfunc_laurent(
        &macdonald_q(mu, &zero(), q, cap)?,
        n,
        true,
    )));
    for i in 0..n {
        for xj in x {
            e.push(Factor::Binomial {
                var: i,
                c: -(q * xj),
                power: -1,
            });
            e.push(Factor::Geometric {
                var: i,
                c: xj.clone(),
                power: -1,
            });
        }
    }
    e.push_delta_hl(q);
    let prefactor = qfact(q, n - lam.len()) / (pow(&(one() - q), n as u32) * factorial(n));
    let r = choose_radius(max_abs(x), None)?;
    integrate(&e, &prefactor, r, backend)
}

/// `⟨P_λ(z;0,t), Q_μ(z;0,t)⟩'_n` on the unit torus.
pub fn hl_orthogonality(
    lam: &Partition,
    mu: &Partition,
    n: usize,
    t: &Scalar,
    backend: Backend,
) -> Result<ContourValue> {
    let cap = lam.size().max(mu.size()).max(DEFAULT_CAP);
    let mut e = LaurentExpr::new(n);
    e.push(Factor::Laurent(symfunc_laurent(
        &hall_littlewood_p(lam, t, cap)?,
        n,
        false,
    )));
    e.push(Factor::Laurent(symfunc_laurent(
        &macdonald_q(mu, &zero(), t, cap)?,
        n,
        true,
    )));
    e.push_delta_hl(t);
    integrate(&e, &factorial(n).recip(), 1.0, backend)
}

/// Closed form of [`hl_orthogonality`]: `1_{λ=μ} 1_{l(λ)≤n} (1-t)^n / (t;t)_{n-l(λ)}`.
pub fn hl_orthogonality_expected(lam: &Partition, mu: &Partition, n: usize, t: &Scalar) -> Scalar {
    if lam != mu || lam.len() > n {
        return zero();
    }
    pow(&(one() - t), n as u32) / qfact(t, n - lam.len())
}
