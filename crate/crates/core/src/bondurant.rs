//! The first-order operator `T` that carries Dirichlet-vertex solutions to
//! delta-vertex solutions, and its inverse.
//!
//! `(T u)_j(x) = sum_k u_k'(x) - alpha u_j(x)`. If `u` solves a translation
//! invariant problem on the star with `u(0) = 0` on every edge, `T^{-1}`
//! applied to it gives a solution satisfying continuity and
//! `sum_j u_j'(0) = alpha u(0)`.

use std::fmt;
use std::sync::Arc;

use crate::domain::{EdgePoint, StarGraphConfig};
use crate::error::{Error, Result};
use crate::specialfn::{integrate_damped_tail, integrate_with_breaks};

/// Tolerance used when the caller does not pass one.
pub const DEFAULT_TOL: f64 = 1e-12;

type EdgeFn = Arc<dyn Fn(usize, f64) -> f64 + Send + Sync>;

/// A vector of real functions `v_j(x)`, one per edge, with an explicit decay
/// certificate `|v_j(x)| <= C exp(-decay_rate x)`.
///
/// Edges are numbered from 1, matching [`EdgePoint`]. The closures are called
/// only with `x >= 0` unless the owner documents otherwise.
#[derive(Clone)]
pub struct EdgeVectorFunction {
    n_edges: usize,
    decay_rate: f64,
    value: EdgeFn,
    derivative: Option<EdgeFn>,
    second_derivative: Option<EdgeFn>,
    support: Option<(f64, f64)>,
}

impl fmt::Debug for EdgeVectorFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EdgeVectorFunction")
            .field("n_edges", &self.n_edges)
            .field("decay_rate", &self.decay_rate)
            .field("has_derivative", &self.derivative.is_some())
            .field("has_second_derivative", &self.second_derivative.is_some())
            .field("support", &self.support)
            .finish()
    }
}

impl EdgeVectorFunction {
    pub fn new<F>(n_edges: usize, decay_rate: f64, value: F) -> Result<Self>
    where
        F: Fn(usize, f64) -> f64 + Send + Sync + 'static,
    {
        if n_edges == 0 {
            return Err(Error::domain("an edge vector needs at least one edge"));
        }
        if !(decay_rate > 0.0) || !decay_rate.is_finite() {
            return Err(Error::domain(format!(
                "decay rate must be positive and finite, got {decay_rate}"
            )));
        }
        Ok(EdgeVectorFunction {
            n_edges,
            decay_rate,
            value: Arc::new(value),
            derivative: None,
            second_derivative: None,
            support: None,
        })
    }

    /// The same scalar profile on every edge.
    pub fn uniform<F>(n_edges: usize, decay_rate: f64, profile: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(n_edges, decay_rate, move |_, x| profile(x))
    }

    /// The zero vector (any positive decay rate is honest for it).
    pub fn zero(n_edges: usize) -> Result<Self> {
        Ok(Self::new(n_edges, 1.0, |_, _| 0.0)?
            .with_derivative(|_, _| 0.0)
            .with_second_derivative(|_, _| 0.0)
            .with_support(0.0, 0.0))
    }

    pub fn with_derivative<F>(mut self, derivative: F) -> Self
    where
        F: Fn(usize, f64) -> f64 + Send + Sync + 'static,
    {
        self.derivative = Some(Arc::new(derivative));
        self
    }

    pub fn with_second_derivative<F>(mut self, second: F) -> Self
    where
        F: Fn(usize, f64) -> f64 + Send + Sync + 'static,
    {
        self.second_derivative = Some(Arc::new(second));
        self
    }

    /// Declares that every component vanishes outside `[lo, hi]`. Integrals
    /// are then restricted to that interval.
    pub fn with_support(mut self, lo: f64, hi: f64) -> Self {
        self.support = Some((lo.max(0.0), hi.max(lo.max(0.0))));
        self
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn decay_rate(&self) -> f64 {
        self.decay_rate
    }

    pub fn support(&self) -> Option<(f64, f64)> {
        self.support
    }

    pub fn has_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    pub fn has_second_derivative(&self) -> bool {
        self.second_derivative.is_some()
    }

    pub fn value(&self, edge: usize, x: f64) -> f64 {
        (self.value)(edge, x)
    }

    pub fn derivative(&self, edge: usize, x: f64) -> Result<f64> {
        match &self.derivative {
            Some(d) => Ok(d(edge, x)),
            None => Err(Error::Contract("edge function has no derivative".into())),
        }
    }

    pub fn second_derivative(&self, edge: usize, x: f64) -> Result<f64> {
        match &self.second_derivative {
            Some(d) => Ok(d(edge, x)),
            None => Err(Error::Contract("edge function has no second derivative".into())),
        }
    }

    /// `sum_k v_k(x)`.
    pub fn sum_at(&self, x: f64) -> f64 {
        (1..=self.n_edges).map(|k| self.value(k, x)).sum()
    }

    /// `sum_k v_k'(x)`.
    pub fn sum_derivative_at(&self, x: f64) -> Result<f64> {
        (1..=self.n_edges).map(|k| self.derivative(k, x)).sum()
    }

    /// `sum_k v_k''(x)`.
    pub fn sum_second_derivative_at(&self, x: f64) -> Result<f64> {
        (1..=self.n_edges).map(|k| self.second_derivative(k, x)).sum()
    }

    fn check_graph(&self, graph: &StarGraphConfig) -> Result<()> {
        if self.n_edges != graph.n_edges() {
            return Err(Error::domain(format!(
                "function has {} components but the graph has {} edges",
                self.n_edges,
                graph.n_edges()
            )));
        }
        Ok(())
    }
}

/// `I(x) = int_x^inf exp(-rate (s - x)) sum_k v_k(s) ds`.
pub(crate) fn damped_sum_integral(v: &EdgeVectorFunction, rate: f64, x: f64, tol: f64) -> Result<f64> {
    if let Some((lo, hi)) = v.support {
        let a = x.max(lo);
        if a >= hi {
            return Ok(0.0);
        }
        let r = integrate_with_breaks(|s| (-rate * (s - x)).exp() * v.sum_at(s), &[a, hi], tol)?;
        return Ok(r.value);
    }
    let r = integrate_damped_tail(
        |sigma| (-rate * sigma).exp() * v.sum_at(x + sigma),
        0.0,
        rate + v.decay_rate,
        tol,
    )?;
    Ok(r.value)
}

fn strictly_positive_alpha(graph: &StarGraphConfig) -> Result<f64> {
    match graph.alpha() {
        Some(alpha) if alpha > 0.0 => Ok(alpha),
        Some(_) => Err(Error::domain(
            "T^{-1} does not exist for alpha = 0 (Kirchhoff vertex)",
        )),
        None => Err(Error::domain("T^{-1} is not defined for a Dirichlet vertex")),
    }
}

/// `(T u)_j(x) = sum_k u_k'(x) - alpha u_j(x)`.
pub fn apply_t(u: &EdgeVectorFunction, graph: &StarGraphConfig, point: EdgePoint) -> Result<f64> {
    u.check_graph(graph)?;
    graph.check_edge(point.edge())?;
    let alpha = graph
        .alpha()
        .ok_or_else(|| Error::domain("T needs a finite alpha; the Dirichlet vertex has none"))?;
    let x = point.coordinate();
    Ok(u.sum_derivative_at(x)? - alpha * u.value(point.edge(), x))
}

/// `(T^{-1} v)_j(x) = (1/alpha)[(1/N) sum_k v_k(x) - v_j(x)]
///                  - (1/N^2) int_x^inf exp(-alpha (s - x)/N) sum_k v_k(s) ds`.
///
/// Requires `alpha > 0`.
pub fn apply_t_inverse(
    v: &EdgeVectorFunction,
    graph: &StarGraphConfig,
    point: EdgePoint,
    tol: f64,
) -> Result<f64> {
    v.check_graph(graph)?;
    graph.check_edge(point.edge())?;
    let alpha = strictly_positive_alpha(graph)?;
    let n = graph.n();
    let x = point.coordinate();
    let tail = damped_sum_integral(v, alpha / n, x, tol * n * n)?;
    Ok((v.sum_at(x) / n - v.value(point.edge(), x)) / alpha - tail / (n * n))
}

/// `d/dx (T^{-1} v)_j(x)`, differentiating the formula under the integral:
/// the tail term contributes `(alpha/N) I(x) - sum_k v_k(x)`.
pub fn t_inverse_derivative(
    v: &EdgeVectorFunction,
    graph: &StarGraphConfig,
    point: EdgePoint,
    tol: f64,
) -> Result<f64> {
    v.check_graph(graph)?;
    graph.check_edge(point.edge())?;
    let alpha = strictly_positive_alpha(graph)?;
    let n = graph.n();
    let x = point.coordinate();
    let rate = alpha / n;
    let tail = damped_sum_integral(v, rate, x, tol * n * n)?;
    let local = (v.sum_derivative_at(x)? / n - v.derivative(point.edge(), x)?) / alpha;
    Ok(local - (rate * tail - v.sum_at(x)) / (n * n))
}

/// `max |T(T^{-1} v) - v|` over the sample points, with the derivative of
/// `T^{-1} v` taken analytically.
pub fn roundtrip_residual(
    v: &EdgeVectorFunction,
    graph: &StarGraphConfig,
    sample_points: &[EdgePoint],
) -> Result<f64> {
    let alpha = strictly_positive_alpha(graph)?;
    v.check_graph(graph)?;
    let mut worst: f64 = 0.0;
    for p in sample_points {
        let x = p.coordinate();
        let mut flux = 0.0;
        for k in 1..=graph.n_edges() {
            flux += t_inverse_derivative(v, graph, EdgePoint::new(k, x)?, DEFAULT_TOL)?;
        }
        let u = apply_t_inverse(v, graph, *p, DEFAULT_TOL)?;
        let tu = flux - alpha * u;
        worst = worst.max((tu - v.value(p.edge(), x)).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp_decay(n: usize) -> EdgeVectorFunction {
        EdgeVectorFunction::uniform(n, 1.0, |x| (-x).exp())
            .unwrap()
            .with_derivative(|_, x| -(-x).exp())
    }

    fn pt(j: usize, x: f64) -> EdgePoint {
        EdgePoint::new(j, x).unwrap()
    }

    #[test]
    fn t_on_exponential() {
        let g = StarGraphConfig::new(1, 1.0).unwrap();
        assert!((apply_t(&exp_decay(1), &g, pt(1, 0.0)).unwrap() + 2.0).abs() < 1e-15);
        let g = StarGraphConfig::new(2, 1.0).unwrap();
        let v = apply_t(&exp_decay(2), &g, pt(1, 2f64.ln())).unwrap();
        assert!((v + 1.5).abs() < 1e-15);
        let k = StarGraphConfig::new(2, 0.0).unwrap();
        let v = apply_t(&exp_decay(2), &k, pt(2, 0.3)).unwrap();
        assert!((v + 2.0 * (-0.3f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn t_needs_a_derivative() {
        let g = StarGraphConfig::new(1, 1.0).unwrap();
        let u = EdgeVectorFunction::uniform(1, 1.0, |x| (-x).exp()).unwrap();
        assert!(matches!(apply_t(&u, &g, pt(1, 0.0)), Err(Error::Contract(_))));
    }

    #[test]
    fn t_inverse_on_exponential() {
        for alpha in [0.3, 1.0, 7.0] {
            let g = StarGraphConfig::new(1, alpha).unwrap();
            for x in [0.0, 0.4, 3.0] {
                let u = apply_t_inverse(&exp_decay(1), &g, pt(1, x), 1e-13).unwrap();
                let want = -(-x).exp() / (alpha + 1.0);
                assert!((u - want).abs() < 1e-12, "alpha={alpha} x={x}: {u} vs {want}");
            }
        }
        let g = StarGraphConfig::new(1, 1.0).unwrap();
        let u = apply_t_inverse(&exp_decay(1), &g, pt(1, 0.0), 1e-13).unwrap();
        assert!((u + 0.5).abs() < 1e-12);
    }

    #[test]
    fn t_inverse_rejects_kirchhoff_and_dirichlet() {
        let k = StarGraphConfig::new(2, 0.0).unwrap();
        assert!(matches!(
            apply_t_inverse(&exp_decay(2), &k, pt(1, 0.0), 1e-10),
            Err(Error::Domain(_))
        ));
        let d = StarGraphConfig::dirichlet(2).unwrap();
        assert!(apply_t_inverse(&exp_decay(2), &d, pt(1, 0.0), 1e-10).is_err());
    }

    #[test]
    fn roundtrip_examples() {
        let g = StarGraphConfig::new(3, 2.0).unwrap();
        let pts: Vec<_> = (0..20).map(|i| pt(1 + i % 3, 5.0 * i as f64 / 19.0)).collect();
        assert!(roundtrip_residual(&exp_decay(3), &g, &pts).unwrap() < 1e-9);

        let z = EdgeVectorFunction::zero(3).unwrap();
        assert_eq!(roundtrip_residual(&z, &g, &pts).unwrap(), 0.0);

        let g1 = StarGraphConfig::new(1, 1.0).unwrap();
        let v = EdgeVectorFunction::uniform(1, 0.5, |x| x * (-x).exp())
            .unwrap()
            .with_derivative(|_, x| (1.0 - x) * (-x).exp());
        let pts: Vec<_> = (0..20).map(|i| pt(1, 0.25 * i as f64)).collect();
        assert!(roundtrip_residual(&v, &g1, &pts).unwrap() < 1e-9);
    }

    #[test]
    fn analytic_derivative_matches_differences() {
        let g = StarGraphConfig::new(3, 1.5).unwrap();
        let v = EdgeVectorFunction::new(3, 1.0, |j, x| (j as f64) * x * x * (-x).exp())
            .unwrap()
            .with_derivative(|j, x| (j as f64) * (2.0 * x - x * x) * (-x).exp());
        let h = 1e-4;
        for j in 1..=3 {
            let x = 0.9;
            let d = t_inverse_derivative(&v, &g, pt(j, x), 1e-13).unwrap();
            let up = apply_t_inverse(&v, &g, pt(j, x + h), 1e-13).unwrap();
            let dn = apply_t_inverse(&v, &g, pt(j, x - h), 1e-13).unwrap();
            assert!((d - (up - dn) / (2.0 * h)).abs() < 1e-7);
        }
    }

    #[test]
    fn support_restriction_agrees_with_tail_integration() {
        let g = StarGraphConfig::new(2, 0.7).unwrap();
        let bump = |x: f64| if (1.0..2.0).contains(&x) { ((x - 1.0) * (2.0 - x)).powi(3) } else { 0.0 };
        let plain = EdgeVectorFunction::uniform(2, 1.0, bump).unwrap();
        let supported = plain.clone().with_support(1.0, 2.0);
        for x in [0.0, 1.2, 2.5] {
            let a = apply_t_inverse(&plain, &g, pt(1, x), 1e-13).unwrap();
            let b = apply_t_inverse(&supported, &g, pt(1, x), 1e-13).unwrap();
            assert!((a - b).abs() < 1e-11, "{a} vs {b}");
        }
    }
}
