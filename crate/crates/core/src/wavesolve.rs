//! Wave evolution on the star with zero initial velocity.
//!
//! With `D = t - x`, `F = sum_l f_l` and `a = alpha/N`, the exact solution is
//!
//! ```text
//! u_j(t, x) = 1/2 [f_j(x - t) + f_j(x + t)]
//!           + theta(D) [-1/2 f_j(D) + F(D)/N - (alpha/N^2) J(D)],
//! J(D) = int_0^D exp(-a eps) F(D - eps) d eps,
//! ```
//!
//! where `f` is extended by zero to negative arguments. The Dirichlet vertex
//! keeps only `1/2 [f_j(x - t) + f_j(x + t)] - 1/2 f_j(t - x)`.
//!
//! A leapfrog solver on truncated edges serves as an independent check.

use crate::bondurant::EdgeVectorFunction;
use crate::domain::{EdgePoint, Grid, StarGraphConfig, VertexCondition};
use crate::error::{Error, Result};
use crate::specialfn::integrate_with_breaks;

/// Quadrature tolerance for the memory integral `J`.
pub const EXACT_TOL: f64 = 1e-13;

/// Fewer grid points than this inside a snapshot's nonzero region marks an
/// energy estimate as under-resolved.
pub const MIN_POINTS_ACROSS_SUPPORT: usize = 200;

/// Initial displacement `u(0, x) = f(x)`; the initial velocity is zero.
#[derive(Debug, Clone)]
pub struct InitialData {
    f: EdgeVectorFunction,
}

impl InitialData {
    pub fn new(f: EdgeVectorFunction) -> Self {
        InitialData { f }
    }

    pub fn displacement(&self) -> &EdgeVectorFunction {
        &self.f
    }

    fn value(&self, edge: usize, s: f64) -> f64 {
        if s < 0.0 {
            0.0
        } else {
            self.f.value(edge, s)
        }
    }

    fn d1(&self, edge: usize, s: f64) -> Result<f64> {
        if s < 0.0 {
            Ok(0.0)
        } else {
            self.f.derivative(edge, s)
        }
    }

    fn d2(&self, edge: usize, s: f64) -> Result<f64> {
        if s < 0.0 {
            Ok(0.0)
        } else {
            self.f.second_derivative(edge, s)
        }
    }
}

/// The C-infinity bump `A e exp(-1/(1 - xi^2))`, `xi = (x - center)/half_width`,
/// with peak value `A` and support `[center - half_width, center + half_width]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothBump {
    pub center: f64,
    pub half_width: f64,
    pub amplitude: f64,
}

impl SmoothBump {
    pub fn new(center: f64, half_width: f64, amplitude: f64) -> Result<Self> {
        if !(half_width > 0.0) || !(center - half_width >= 0.0) || !amplitude.is_finite() {
            return Err(Error::domain(format!(
                "bump needs half_width > 0 and support inside [0, inf), got center={center}, half_width={half_width}"
            )));
        }
        Ok(SmoothBump {
            center,
            half_width,
            amplitude,
        })
    }

    pub fn support(&self) -> (f64, f64) {
        (self.center - self.half_width, self.center + self.half_width)
    }

    /// Value and first two derivatives at `x`.
    pub fn eval(&self, x: f64) -> [f64; 3] {
        let w = self.half_width;
        let xi = (x - self.center) / w;
        let q = 1.0 - xi * xi;
        if q <= 0.0 {
            return [0.0; 3];
        }
        let phi = self.amplitude * std::f64::consts::E * (-1.0 / q).exp();
        let d1 = -2.0 * xi * phi / (q * q);
        let d2 = phi * (4.0 * xi * xi / q.powi(4) - 2.0 / (q * q) - 8.0 * xi * xi / q.powi(3));
        [phi, d1 / w, d2 / (w * w)]
    }

    /// An edge vector with this bump scaled by `weights[j-1]` on edge `j`.
    pub fn on_edges(&self, weights: &[f64]) -> Result<EdgeVectorFunction> {
        let b = *self;
        let w1 = weights.to_vec();
        let w2 = weights.to_vec();
        let w3 = weights.to_vec();
        let (lo, hi) = self.support();
        Ok(EdgeVectorFunction::new(weights.len(), 1.0, move |j, x| w1[j - 1] * b.eval(x)[0])?
            .with_derivative(move |j, x| w2[j - 1] * b.eval(x)[1])
            .with_second_derivative(move |j, x| w3[j - 1] * b.eval(x)[2])
            .with_support(lo, hi))
    }
}

/// `u` and its first and second derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveState {
    pub u: f64,
    pub u_t: f64,
    pub u_x: f64,
    pub u_xx: f64,
}

/// `J(D) = int_0^D exp(-a (D - s)) F(s) ds`.
fn memory_integral(data: &InitialData, a: f64, d: f64) -> Result<f64> {
    let (mut lo, mut hi) = (0.0f64, d);
    if let Some((sl, sh)) = data.f.support() {
        lo = lo.max(sl);
        hi = hi.min(sh);
    }
    if hi <= lo {
        return Ok(0.0);
    }
    Ok(integrate_with_breaks(|s| (-a * (d - s)).exp() * data.f.sum_at(s), &[lo, hi], EXACT_TOL)?.value)
}

struct VertexPart {
    g: f64,
    dg: f64,
    d2g: f64,
}

/// `g(D) = -1/2 f_j(D) + F(D)/N - (alpha/N^2) J(D)` and its `D`-derivatives,
/// zero for `D < 0`.
fn vertex_part(graph: &StarGraphConfig, data: &InitialData, edge: usize, d: f64, derivatives: bool) -> Result<VertexPart> {
    if d < 0.0 {
        return Ok(VertexPart { g: 0.0, dg: 0.0, d2g: 0.0 });
    }
    let n = graph.n();
    let mut g = -0.5 * data.value(edge, d);
    let (mut dg, mut d2g) = (0.0, 0.0);
    if derivatives {
        dg = -0.5 * data.d1(edge, d)?;
        d2g = -0.5 * data.d2(edge, d)?;
    }
    if graph.is_dirichlet() {
        return Ok(VertexPart { g, dg, d2g });
    }
    let f_sum = data.f.sum_at(d);
    g += f_sum / n;
    let mut f1 = 0.0;
    if derivatives {
        f1 = data.f.sum_derivative_at(d)?;
        dg += f1 / n;
        d2g += data.f.sum_second_derivative_at(d)? / n;
    }
    if let VertexCondition::ExnerSeba { alpha } = graph.condition() {
        let a = alpha / n;
        let c = alpha / (n * n);
        let j = memory_integral(data, a, d)?;
        g -= c * j;
        // J' = F - a J, J'' = F' - a J'.
        let dj = f_sum - a * j;
        dg -= c * dj;
        d2g -= c * (f1 - a * dj);
    }
    Ok(VertexPart { g, dg, d2g })
}

fn check_evolution_args(graph: &StarGraphConfig, data: &InitialData, t: f64, point: EdgePoint) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("t must be finite and nonnegative, got {t}")));
    }
    if data.f.n_edges() != graph.n_edges() {
        return Err(Error::domain(format!(
            "initial data has {} components but the graph has {} edges",
            data.f.n_edges(),
            graph.n_edges()
        )));
    }
    graph.check_point(point)
}

/// `u_j(t, x)` from the closed-form solution.
pub fn evolve_exact(graph: &StarGraphConfig, data: &InitialData, t: f64, point: EdgePoint) -> Result<f64> {
    check_evolution_args(graph, data, t, point)?;
    let (j, x) = (point.edge(), point.coordinate());
    let free = 0.5 * (data.value(j, x - t) + data.value(j, x + t));
    Ok(free + vertex_part(graph, data, j, t - x, false)?.g)
}

/// `u`, `u_t`, `u_x`, `u_xx` at `(t, x)` on edge `j`. Needs the first and
/// second derivatives of the initial data.
pub fn exact_state(graph: &StarGraphConfig, data: &InitialData, t: f64, point: EdgePoint) -> Result<WaveState> {
    check_evolution_args(graph, data, t, point)?;
    let (j, x) = (point.edge(), point.coordinate());
    let (lm, lp) = (x - t, x + t);
    let v = vertex_part(graph, data, j, t - x, true)?;
    let (d1m, d1p) = (data.d1(j, lm)?, data.d1(j, lp)?);
    Ok(WaveState {
        u: 0.5 * (data.value(j, lm) + data.value(j, lp)) + v.g,
        u_t: 0.5 * (-d1m + d1p) + v.dg,
        u_x: 0.5 * (d1m + d1p) - v.dg,
        u_xx: 0.5 * (data.d2(j, lm)? + data.d2(j, lp)?) + v.d2g,
    })
}

/// Field values on a shared grid of every edge at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSnapshot {
    pub time: f64,
    pub grid: Grid,
    /// One entry per edge, in edge order.
    pub edges: Vec<EdgeSamples>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EdgeSamples {
    pub u: Vec<f64>,
    pub u_t: Vec<f64>,
    pub u_x: Vec<f64>,
    /// Present when the producer can supply second derivatives.
    pub u_xx: Option<Vec<f64>>,
}

/// Samples the exact solution on `grid` (which must start at 0 for the
/// energy functionals to see the vertex).
pub fn exact_snapshot(graph: &StarGraphConfig, data: &InitialData, t: f64, grid: Grid) -> Result<FieldSnapshot> {
    let mut edges = Vec::with_capacity(graph.n_edges());
    for j in 1..=graph.n_edges() {
        let mut s = EdgeSamples {
            u_xx: Some(Vec::with_capacity(grid.count())),
            ..Default::default()
        };
        for x in grid.points() {
            let st = exact_state(graph, data, t, EdgePoint::new(j, x)?)?;
            s.u.push(st.u);
            s.u_t.push(st.u_t);
            s.u_x.push(st.u_x);
            s.u_xx.as_mut().expect("allocated above").push(st.u_xx);
        }
        edges.push(s);
    }
    Ok(FieldSnapshot { time: t, grid, edges })
}

/// A quadrature-based energy with a flag for too-coarse sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyEstimate {
    pub value: f64,
    pub under_resolved: bool,
}

/// Composite Simpson on uniform samples; an even number of points closes
/// with the 3/8 rule on the last three intervals.
pub fn composite_simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    match n {
        0 | 1 => 0.0,
        2 => 0.5 * h * (values[0] + values[1]),
        3 => h / 3.0 * (values[0] + 4.0 * values[1] + values[2]),
        _ => {
            let (simpson_end, tail) = if n % 2 == 1 { (n, None) } else { (n - 3, Some(n - 4)) };
            let mut s = values[0] + values[simpson_end - 1];
            for (i, v) in values.iter().enumerate().take(simpson_end - 1).skip(1) {
                s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
            }
            let mut total = h / 3.0 * s;
            if let Some(k) = tail {
                total += 3.0 * h / 8.0 * (values[k] + 3.0 * values[k + 1] + 3.0 * values[k + 2] + values[k + 3]);
            }
            total
        }
    }
}

fn check_snapshot(graph: &StarGraphConfig, snapshot: &FieldSnapshot) -> Result<()> {
    if snapshot.edges.len() != graph.n_edges() {
        return Err(Error::domain(format!(
            "snapshot has {} edges but the graph has {}",
            snapshot.edges.len(),
            graph.n_edges()
        )));
    }
    if snapshot.grid.lo() != 0.0 {
        return Err(Error::domain("energy functionals need a grid starting at the vertex"));
    }
    Ok(())
}

fn under_resolved(snapshot: &FieldSnapshot) -> bool {
    snapshot.edges.iter().any(|e| {
        let active = e
            .u
            .iter()
            .zip(&e.u_t)
            .zip(&e.u_x)
            .filter(|((u, ut), ux)| **u != 0.0 || **ut != 0.0 || **ux != 0.0)
            .count();
        active > 0 && active < MIN_POINTS_ACROSS_SUPPORT
    })
}

/// `1/2 sum_j int_0^inf (u_t^2 + u_x^2) dx + (alpha/2) u(t, 0)^2`.
///
/// The field is taken to vanish beyond the grid. Conservation is a theorem
/// for one edge; for `N >= 2` the same expression is offered without that
/// guarantee.
pub fn robin_energy(graph: &StarGraphConfig, snapshot: &FieldSnapshot) -> Result<EnergyEstimate> {
    check_snapshot(graph, snapshot)?;
    let h = snapshot.grid.spacing();
    let mut value = 0.0;
    for e in &snapshot.edges {
        let density: Vec<f64> = e.u_t.iter().zip(&e.u_x).map(|(a, b)| a * a + b * b).collect();
        value += 0.5 * composite_simpson(&density, h);
    }
    if let Some(alpha) = graph.alpha() {
        let u0 = snapshot.edges[0].u[0];
        value += 0.5 * alpha * u0 * u0;
    }
    Ok(EnergyEstimate {
        value,
        under_resolved: under_resolved(snapshot),
    })
}

/// `1/2 sum_j int_0^inf (u_t^2 - u u_xx) dx`. Equals [`robin_energy`] when the
/// field satisfies the vertex condition.
pub fn robin_energy_alt(graph: &StarGraphConfig, snapshot: &FieldSnapshot) -> Result<EnergyEstimate> {
    check_snapshot(graph, snapshot)?;
    let h = snapshot.grid.spacing();
    let mut value = 0.0;
    for e in &snapshot.edges {
        let u_xx = e
            .u_xx
            .as_ref()
            .ok_or_else(|| Error::Contract("the alternative energy needs u_xx samples".into()))?;
        let density: Vec<f64> = e
            .u_t
            .iter()
            .zip(&e.u)
            .zip(u_xx)
            .map(|((ut, u), uxx)| ut * ut - u * uxx)
            .collect();
        value += 0.5 * composite_simpson(&density, h);
    }
    Ok(EnergyEstimate {
        value,
        under_resolved: under_resolved(snapshot),
    })
}

/// Leapfrog evolution to `t_final` on `grid = [0, x_max]` of every edge.
///
/// The vertex uses one ghost value per edge: continuity is built in and the
/// ghosts satisfy `sum_j (u_{j,1} - u_{j,-1}) / 2h = alpha U`. The step is
/// `t_final / ceil(t_final / (cfl h))`. The far end is held at zero, so
/// `x_max` must exceed the data's support end plus `t_final`.
pub fn evolve_fd_oracle(
    graph: &StarGraphConfig,
    data: &InitialData,
    t_final: f64,
    grid: Grid,
    cfl: f64,
) -> Result<FieldSnapshot> {
    if !(cfl > 0.0 && cfl <= 1.0) {
        return Err(Error::domain(format!("CFL number must lie in (0, 1], got {cfl}")));
    }
    if !(t_final > 0.0) || !t_final.is_finite() {
        return Err(Error::domain(format!("t_final must be positive, got {t_final}")));
    }
    if grid.lo() != 0.0 {
        return Err(Error::domain("the finite-difference grid must start at the vertex"));
    }
    if data.f.n_edges() != graph.n_edges() {
        return Err(Error::domain("initial data and graph disagree on the number of edges"));
    }
    let reach = data.f.support().map(|(_, b)| b).unwrap_or(f64::INFINITY) + t_final;
    if !(grid.hi() > reach) {
        return Err(Error::domain(format!(
            "x_max = {} must exceed support end + t_final = {reach}",
            grid.hi()
        )));
    }

    let n_edges = graph.n_edges();
    let m = grid.count();
    let h = grid.spacing();
    let steps = (t_final / (cfl * h)).ceil() as usize;
    let dt = t_final / steps as f64;
    let r2 = (dt / h).powi(2);
    let nf = n_edges as f64;
    let alpha = graph.alpha();

    // Row layout: index 0 is the shared vertex value.
    let xs = grid.points();
    let mut prev: Vec<Vec<f64>> = (1..=n_edges)
        .map(|j| xs.iter().map(|&x| data.value(j, x)).collect())
        .collect();
    if let Some(row) = prev.first() {
        let u0 = row[0];
        for row in prev.iter_mut() {
            row[0] = u0;
        }
    }

    let advance = |prev: &[Vec<f64>], older: Option<&[Vec<f64>]>| -> Vec<Vec<f64>> {
        // older = None is the Taylor start u^1 = u^0 + dt^2/2 u_xx.
        let c = if older.is_some() { 1.0 } else { 0.5 };
        let mut next: Vec<Vec<f64>> = vec![vec![0.0; m]; n_edges];
        for j in 0..n_edges {
            let p = &prev[j];
            for i in 1..m - 1 {
                let lap = p[i + 1] - 2.0 * p[i] + p[i - 1];
                next[j][i] = match older {
                    Some(o) => 2.0 * p[i] - o[j][i] + r2 * lap,
                    None => p[i] + c * r2 * lap,
                };
            }
            next[j][m - 1] = 0.0;
        }
        let u = prev[0][0];
        let vertex = match alpha {
            None => 0.0,
            Some(alpha) => {
                let s1: f64 = prev.iter().map(|row| row[1]).sum();
                let lap = (2.0 * s1 - 2.0 * nf * u - 2.0 * h * alpha * u) / nf;
                match older {
                    Some(o) => 2.0 * u - o[0][0] + r2 * lap,
                    None => u + c * r2 * lap,
                }
            }
        };
        for row in next.iter_mut() {
            row[0] = vertex;
        }
        next
    };

    let mut cur = advance(&prev, None);
    for _ in 1..steps {
        let next = advance(&cur, Some(&prev));
        prev = std::mem::replace(&mut cur, next);
    }
    // One more step for a centred time derivative at t_final.
    let after = advance(&cur, Some(&prev));

    let mut edges = Vec::with_capacity(n_edges);
    for j in 0..n_edges {
        let u = cur[j].clone();
        let u_t = (0..m).map(|i| (after[j][i] - prev[j][i]) / (2.0 * dt)).collect();
        let u_x = (0..m)
            .map(|i| {
                if i == 0 {
                    (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h)
                } else if i == m - 1 {
                    (3.0 * u[m - 1] - 4.0 * u[m - 2] + u[m - 3]) / (2.0 * h)
                } else {
                    (u[i + 1] - u[i - 1]) / (2.0 * h)
                }
            })
            .collect();
        edges.push(EdgeSamples {
            u,
            u_t,
            u_x,
            u_xx: None,
        });
    }
    Ok(FieldSnapshot {
        time: t_final,
        grid,
        edges,
    })
}
