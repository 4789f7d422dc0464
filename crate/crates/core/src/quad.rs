//! Gauss–Legendre panel quadrature.
//!
//! The energy functionals, moment checks, and quadrature-mode identity
//! oracles all reduce to integrals of smooth functions over panels; panels
//! toward an endpoint singularity are refined geometrically by the callers.

use alloc::vec::Vec;

// Float supplies the libm-backed f64 math in no_std builds.
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

use crate::kahan::KahanSum;
use crate::{Error, Result};

/// Gauss–Legendre rule of a fixed order on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Compute nodes and weights by Newton iteration on the Legendre
    /// polynomial, seeded with the Chebyshev approximation.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "quadrature order must be positive");
        let n = order;
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Integrate `f` over a single panel [a, b].
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = KahanSum::new();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(mid + half * x));
        }
        half * acc.value()
    }

    /// Integrate over [a, b] split into `panels` equal panels.
    pub fn integrate_panels<F: Fn(f64) -> f64>(&self, a: f64, b: f64, panels: usize, f: F) -> f64 {
        let h = (b - a) / panels as f64;
        let mut acc = KahanSum::new();
        for p in 0..panels {
            let lo = a + p as f64 * h;
            acc.add(self.integrate(lo, lo + h, &f));
        }
        acc.value()
    }

    /// Integrate over the panels delimited by an ascending breakpoint grid.
    pub fn integrate_grid<F: Fn(f64) -> f64>(&self, grid: &[f64], f: F) -> f64 {
        let mut acc = KahanSum::new();
        for w in grid.windows(2) {
            acc.add(self.integrate(w[0], w[1], &f));
        }
        acc.value()
    }

    /// Mapped nodes and weights on [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, half * w))
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Breakpoints of a grid on [lo + (hi-lo)·2^{-depth}, hi] whose panels halve
/// geometrically toward `lo`, each layer split into `subs` equal panels.
/// The innermost sliver `[lo, lo + (hi-lo)·2^{-depth}]` is not covered; the
/// caller treats it analytically or drops it when harmless.
pub fn geometric_grid(lo: f64, hi: f64, depth: u32, subs: usize) -> Vec<f64> {
    let width = hi - lo;
    let mut grid = Vec::with_capacity(depth as usize * subs + 1);
    grid.push(lo + width * 0.5f64.powi(depth as i32));
    for layer in (0..depth).rev() {
        let start = width * 0.5f64.powi(layer as i32 + 1);
        let end = width * 0.5f64.powi(layer as i32);
        let h = (end - start) / subs as f64;
        for s in 1..=subs {
            grid.push(lo + start + s as f64 * h);
        }
    }
    grid
}

/// Uniform breakpoint grid with `panels` panels.
pub fn uniform_grid(lo: f64, hi: f64, panels: usize) -> Vec<f64> {
    (0..=panels)
        .map(|i| lo + (hi - lo) * i as f64 / panels as f64)
        .collect()
}

/// Adaptive panel-doubling driver: integrates with `panels` uniform panels,
/// doubles until two successive estimates differ by at most `tol`, and
/// returns the last estimate with the observed difference as error bound.
pub fn adaptive_panels<F: Fn(f64) -> f64>(
    gl: &GaussLegendre,
    a: f64,
    b: f64,
    tol: f64,
    f: F,
) -> Result<(f64, f64)> {
    let mut panels = 4usize;
    let mut prev = gl.integrate_panels(a, b, panels, &f);
    for _ in 0..12 {
        panels *= 2;
        let cur = gl.integrate_panels(a, b, panels, &f);
        let diff = (cur - prev).abs();
        if diff <= tol {
            return Ok((cur, diff));
        }
        prev = cur;
    }
    Err(Error::Tolerance {
        best: prev,
        bound: f64::NAN,
    })
}
