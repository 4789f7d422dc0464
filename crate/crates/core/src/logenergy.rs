//! Logarithmic-energy functionals for 1D and rotation-invariant 2D
//! measures; the quadrature route to the closed forms.
//!
//! The diagonal `log |x-y|` singularity is handled by symmetry reduction
//! (integrate over x < y and double, in the gap variable u = y - x) plus
//! geometric panel refinement toward u = 0; the innermost sliver is
//! integrated analytically against a linear fit of the smooth factor. The
//! radial functional has no singularity, only a kink on the diagonal, and
//! its panels are aligned so the kink never crosses a panel interior.

// Float supplies the libm-backed f64 math in no_std builds.
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

use crate::closedform::Penalty;
use crate::density::{Density1D, RadialDensity2D};
use crate::kahan::KahanSum;
use crate::quad::{geometric_grid, GaussLegendre};
use crate::specfun::EULER_GAMMA;
use crate::{Error, Result};

/// Panelization of the energy quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    /// Base panels per axis for the smooth directions.
    pub panel_count: usize,
    /// Gauss–Legendre order within each panel.
    pub nodes_per_panel: usize,
    /// Requested bound on the refinement estimate of the error.
    pub target_tol: f64,
    /// Geometric halvings toward the diagonal (or toward 0), at most 30.
    pub diagonal_refinement_depth: u32,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            panel_count: 64,
            nodes_per_panel: 16,
            target_tol: 1e-7,
            diagonal_refinement_depth: 20,
        }
    }
}

impl QuadSpec {
    fn validate(&self) -> Result<()> {
        if self.panel_count == 0 || self.nodes_per_panel < 2 {
            return Err(Error::Domain("QuadSpec needs panels and nodes"));
        }
        if !(self.target_tol > 0.0) {
            return Err(Error::Domain("QuadSpec target_tol must be positive"));
        }
        if self.diagonal_refinement_depth > 30 {
            return Err(Error::Domain("QuadSpec refinement depth capped at 30"));
        }
        Ok(())
    }
}

/// A quadrature value with the refinement-difference error estimate that
/// certified it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_bound: f64,
}

const MAX_REFINE_LEVELS: usize = 4;

fn refine_until(tol: f64, eval: impl Fn(usize) -> f64) -> Result<QuadResult> {
    let mut prev = eval(0);
    let mut bound = f64::INFINITY;
    for level in 1..=MAX_REFINE_LEVELS {
        let cur = eval(level);
        bound = (cur - prev).abs();
        if bound <= tol {
            return Ok(QuadResult {
                value: cur,
                error_bound: bound,
            });
        }
        prev = cur;
    }
    Err(Error::Tolerance { best: prev, bound })
}

/// Moments of -log u against a linear fit on the sliver [0, δ]:
/// ∫ u^m (-log u) du for m = 0, 1.
fn log_sliver_moments(delta: f64) -> (f64, f64) {
    let m0 = delta * (1.0 - delta.ln());
    let m1 = delta * delta * (1.0 - 2.0 * delta.ln()) / 4.0;
    (m0, m1)
}

/// Linear fit a + b u of a function from samples at δ/4 and 3δ/4.
fn linear_fit(f_lo: f64, f_hi: f64, delta: f64) -> (f64, f64) {
    let slope = (f_hi - f_lo) / (delta / 2.0);
    (f_lo - slope * delta / 4.0, slope)
}

/// `-∬ log|x-y| f(x) f(y) dx dy` for a 1D density with bounded support.
///
/// In the gap variable the energy is `-2 ∫_0^W log(u) g(u) du` with
/// `g(u) = ∫ f(x) f(x+u) dx` smooth, so the log singularity is a pure
/// endpoint effect and geometric refinement converges geometrically.
pub fn log_energy_1d(density: &Density1D, quad: &QuadSpec) -> Result<QuadResult> {
    quad.validate()?;
    let (a, b) = density.support();
    let width = b - a;
    if !(width > 0.0) || !width.is_finite() {
        return Err(Error::Domain("log_energy_1d needs a bounded support"));
    }
    let gl = GaussLegendre::new(quad.nodes_per_panel);
    let depth = quad.diagonal_refinement_depth;

    refine_until(quad.target_tol, |level| {
        let scale = 1usize << level;
        let inner_base = quad.panel_count * scale;
        let g = |u: f64| {
            let len = width - u;
            let panels = ((inner_base as f64 * len / width).ceil() as usize).max(4);
            gl.integrate_panels(a, b - u, panels, |x| density.eval(x) * density.eval(x + u))
        };

        let subs = (quad.panel_count / 16).max(1) * scale;
        let grid = geometric_grid(0.0, width, depth, subs);
        let mut acc = KahanSum::new();
        for w in grid.windows(2) {
            acc.add(gl.integrate(w[0], w[1], |u| -u.ln() * g(u)));
        }
        // analytic sliver: g is smooth at 0, fit it linearly
        let delta = width * 0.5f64.powi(depth as i32);
        let (c0, c1) = linear_fit(g(delta / 4.0), g(3.0 * delta / 4.0), delta);
        let (m0, m1) = log_sliver_moments(delta);
        acc.add(c0 * m0 + c1 * m1);
        2.0 * acc.value()
    })
}

/// `-∬ log|z-w| dμ(z) dμ(w)` for a rotation-invariant planar measure.
///
/// The angular integrals are exact — they contribute `(2π)² log max(r,s)`
/// — leaving a 2D integral of a kernel with a kink on r = s. With panels
/// aligned to the diagonal this splits into prefix sums over off-diagonal
/// cells plus per-panel corner triangles.
pub fn log_energy_radial(density: &RadialDensity2D, quad: &QuadSpec) -> Result<QuadResult> {
    quad.validate()?;
    let cutoff = density.cutoff();
    if !(cutoff > 0.0) || !cutoff.is_finite() {
        return Err(Error::Domain("log_energy_radial needs a finite cutoff"));
    }
    let gl = GaussLegendre::new(quad.nodes_per_panel);
    let depth = quad.diagonal_refinement_depth.min(20);

    refine_until(quad.target_tol, |level| {
        let scale = 1usize << level;
        let subs = (quad.panel_count / 16).max(1) * scale;
        let grid = geometric_grid(0.0, cutoff, depth, subs);
        let q = |r: f64| density.radial_pdf(r);

        // sliver [0, δ]: q vanishes linearly at 0
        let delta = cutoff * 0.5f64.powi(depth as i32);
        let slope = q(delta / 2.0) / (delta / 2.0);
        let a_sliver = slope * delta * delta * (2.0 * delta.ln() - 1.0) / 4.0;
        let q_sliver = slope * delta * delta / 2.0;
        // both radii inside the sliver: ∬_{s<r<δ} slope²·r s log r ds dr
        let t_sliver = slope * slope / 2.0 * delta.powi(4) * (4.0 * delta.ln() - 1.0) / 16.0;
        // r inside the sliver never dominates any s below it, and the
        // log-weighted mass a_sliver multiplies an empty prefix
        let _ = a_sliver;

        let mut acc = KahanSum::new();
        acc.add(t_sliver);
        let mut prefix = q_sliver; // ∫_0^{panel start} q
        for w in grid.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            // off-diagonal block: r in this panel, s anywhere below
            let a_i = gl.integrate(lo, hi, |r| q(r) * r.ln());
            acc.add(a_i * prefix);
            // corner triangle: s in [lo, r]
            let mut tri = KahanSum::new();
            for (r, wr) in gl.mapped(lo, hi) {
                tri.add(wr * q(r) * r.ln() * gl.integrate(lo, r, q));
            }
            acc.add(tri.value());
            prefix += gl.integrate(lo, hi, q);
        }
        -2.0 * acc.value()
    })
}

/// Energy through the exponential-weight representation
/// `E = γ/p - (1/p) ∫_0^∞ (dt/t) (1/(1+t) - ∬ e^{-t|x-y|^p} dν dν)`,
/// p ∈ {1, 2}. The outer integral is split at t = 1, with the unbounded
/// half mapped by `t = v^{-p}` so the algebraic `t^{-1/p}` behavior of the
/// inner integral becomes smooth; the inner double integral reuses the
/// gap-variable reduction with an analytic sliver, which keeps it accurate
/// uniformly in t.
pub fn exp_weight_energy(density: &Density1D, p: f64, quad: &QuadSpec) -> Result<QuadResult> {
    quad.validate()?;
    if p != 1.0 && p != 2.0 {
        return Err(Error::Domain("exp_weight_energy supports p in {1, 2}"));
    }
    let (a, b) = density.support();
    let width = b - a;
    if !(width > 0.0) || !width.is_finite() {
        return Err(Error::Domain("exp_weight_energy needs a bounded support"));
    }
    let gl = GaussLegendre::new(quad.nodes_per_panel);
    let depth = quad.diagonal_refinement_depth;

    refine_until(quad.target_tol, |level| {
        let scale = 1usize << level;
        let inner_base = quad.panel_count * scale;
        let g = |u: f64| {
            let len = width - u;
            let panels = ((inner_base as f64 * len / width).ceil() as usize).max(4);
            gl.integrate_panels(a, b - u, panels, |x| density.eval(x) * density.eval(x + u))
        };

        // g precomputed on the gap grid
        let subs = (quad.panel_count / 16).max(1) * scale;
        let grid = geometric_grid(0.0, width, depth, subs);
        let mut nodes: alloc::vec::Vec<(f64, f64, f64)> = alloc::vec::Vec::new();
        for w in grid.windows(2) {
            for (u, wu) in gl.mapped(w[0], w[1]) {
                nodes.push((u, wu, g(u)));
            }
        }
        let delta = width * 0.5f64.powi(depth as i32);
        let (c0, c1) = linear_fit(g(delta / 4.0), g(3.0 * delta / 4.0), delta);

        // ∫_0^δ e^{-t u^p} (c0 + c1 u) du, exact or by series for small t
        let sliver = move |t: f64| -> f64 {
            if p == 1.0 {
                let x = t * delta;
                if x < 1e-4 {
                    c0 * delta * (1.0 - x / 2.0 + x * x / 6.0)
                        + c1 * delta * delta * (0.5 - x / 3.0 + x * x / 8.0)
                } else {
                    let e = (-x).exp();
                    c0 * (1.0 - e) / t + c1 * (1.0 - e * (1.0 + x)) / (t * t)
                }
            } else {
                let x = t * delta * delta;
                if x < 1e-4 {
                    c0 * delta * (1.0 - x / 3.0 + x * x / 10.0)
                        + c1 * delta * delta * (0.5 - x / 4.0 + x * x / 12.0)
                } else {
                    let rt = t.sqrt();
                    c0 * core::f64::consts::PI.sqrt() / (2.0 * rt) * libm::erf(rt * delta)
                        + c1 * (1.0 - (-x).exp()) / (2.0 * t)
                }
            }
        };

        let pair_integral = |t: f64| -> f64 {
            let mut acc = KahanSum::new();
            for &(u, wu, gu) in &nodes {
                acc.add(wu * (-t * u.powf(p)).exp() * gu);
            }
            2.0 * (acc.value() + sliver(t))
        };
        // normalize by the same grid's value of ∬ f f = 1, so the
        // small-t integrand does not inherit the discretization bias
        let norm = pair_integral(0.0);

        // near half: t in (0, 1]; the integrand extends smoothly to 0
        // (its limit there is E|X-Y|^p - 1), so uniform panels suffice
        let mut j = KahanSum::new();
        let near = crate::quad::uniform_grid(0.0, 1.0, (quad.panel_count / 4).max(8) * scale);
        for w in near.windows(2) {
            j.add(gl.integrate(w[0], w[1], |t| {
                (1.0 / (1.0 + t) - pair_integral(t) / norm) / t
            }));
        }
        // far half: t = v^{-p}, v in (0, 1]
        let far = geometric_grid(0.0, 1.0, 40, scale);
        for w in far.windows(2) {
            j.add(gl.integrate(w[0], w[1], |v| {
                let vp = v.powf(p);
                p / v * (vp / (1.0 + vp) - pair_integral(1.0 / vp) / norm)
            }));
        }
        EULER_GAMMA / p - j.value() / p
    })
}

/// Combine a raw energy with its moment penalty.
pub fn penalize(raw: f64, moment: f64, penalty: &Penalty) -> Result<f64> {
    penalty.apply(raw, moment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform;
    use crate::density::{ginibre_density, gue_density, lue_density, Density1D, RadialDensity2D};

    const PI: f64 = core::f64::consts::PI;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn uniform01() -> Density1D {
        Density1D::new("uniform [0,1]", (0.0, 1.0), |_| 1.0)
    }

    #[test]
    fn uniform_interval_energy() {
        // -∬_{[0,1]²} log|x-y| = 3/2, the classical value
        let r = log_energy_1d(&uniform01(), &QuadSpec::default()).unwrap();
        assert_close(r.value, 1.5, 1e-6);
        assert!(r.error_bound <= 1e-7);
    }

    #[test]
    fn semicircle_energy() {
        let sc = Density1D::new("semicircle", (-2.0, 2.0), |x| {
            let d = 4.0 - x * x;
            if d > 0.0 {
                d.sqrt() / (2.0 * PI)
            } else {
                0.0
            }
        });
        let r = log_energy_1d(&sc, &QuadSpec::default()).unwrap();
        assert_close(r.value, 0.25, 1e-6);
    }

    #[test]
    fn standard_normal_energy_is_half_gamma() {
        let d = gue_density(1, true);
        let r = log_energy_1d(&d, &QuadSpec::default()).unwrap();
        assert_close(r.value, EULER_GAMMA / 2.0, 1e-6);
    }

    #[test]
    fn gue_route_agreement_small_n() {
        for n in [2u32, 3] {
            let d = gue_density(n, true);
            let r = log_energy_1d(&d, &QuadSpec::default()).unwrap();
            let closed = closedform::gue_energy(n as u64).unwrap().raw_energy;
            assert_close(r.value, closed, 1e-6);
        }
    }

    #[test]
    fn lue_route_agreement_small_n() {
        for n in [1u32, 2] {
            let d = lue_density(n, true);
            let r = log_energy_1d(&d, &QuadSpec::default()).unwrap();
            let closed = closedform::lue_energy(n as u64).unwrap().raw_energy;
            assert_close(r.value, closed, 1e-6);
        }
    }

    #[test]
    fn unit_disk_energy() {
        let disk = RadialDensity2D::new("unit disk", 1.0, |_| 1.0 / PI);
        let r = log_energy_radial(&disk, &QuadSpec::default()).unwrap();
        assert_close(r.value, 0.25, 1e-6);
    }

    #[test]
    fn ginibre_radial_route_agreement() {
        for n in [1u32, 2, 3] {
            let d = ginibre_density(n, true);
            let r = log_energy_radial(&d, &QuadSpec::default()).unwrap();
            let closed = closedform::ginibre_energy(n as u64).unwrap().raw_energy;
            assert_close(r.value, closed, 1e-6);
        }
    }

    #[test]
    fn dilation_shifts_energy_by_log_c() {
        let base = log_energy_1d(&uniform01(), &QuadSpec::default())
            .unwrap()
            .value;
        for c in [0.5f64, 2.0] {
            let dilated = Density1D::new("uniform dilated", (0.0, c), move |_| 1.0 / c);
            let r = log_energy_1d(&dilated, &QuadSpec::default()).unwrap();
            assert_close(r.value, base - c.ln(), 1e-6);
        }
    }

    #[test]
    fn exp_weight_normal_p2() {
        let d = gue_density(1, true);
        let r = exp_weight_energy(&d, 2.0, &QuadSpec::default()).unwrap();
        assert_close(r.value, EULER_GAMMA / 2.0, 1e-5);
    }

    #[test]
    fn exp_weight_exponential_p1() {
        let d = Density1D::new("exp(1)", (0.0, 40.0), |s| {
            if s >= 0.0 {
                (-s).exp()
            } else {
                0.0
            }
        });
        let r = exp_weight_energy(&d, 1.0, &QuadSpec::default()).unwrap();
        assert_close(r.value, EULER_GAMMA, 1e-5);
    }

    #[test]
    fn exp_weight_uniform_p1() {
        let r = exp_weight_energy(&uniform01(), 1.0, &QuadSpec::default()).unwrap();
        assert_close(r.value, 1.5, 1e-5);
    }

    #[test]
    fn exp_weight_rejects_other_p() {
        assert!(exp_weight_energy(&uniform01(), 3.0, &QuadSpec::default()).is_err());
    }

    #[test]
    fn representation_agreement_gue_lue() {
        for n in [2u32, 5] {
            let d = gue_density(n, true);
            let direct = log_energy_1d(&d, &QuadSpec::default()).unwrap().value;
            let expw = exp_weight_energy(&d, 2.0, &QuadSpec::default())
                .unwrap()
                .value;
            assert_close(direct, expw, 1e-5);
        }
        for n in [2u32, 5] {
            let d = lue_density(n, true);
            let direct = log_energy_1d(&d, &QuadSpec::default()).unwrap().value;
            let expw = exp_weight_energy(&d, 1.0, &QuadSpec::default())
                .unwrap()
                .value;
            assert_close(direct, expw, 1e-5);
        }
    }

    #[test]
    fn reported_bound_is_honest() {
        // halving the target tolerance never moves the value by more than
        // the bound reported at the looser tolerance
        let fixtures: alloc::vec::Vec<Density1D> = alloc::vec![
            uniform01(),
            gue_density(2, true),
            gue_density(5, true),
            lue_density(2, true),
            lue_density(4, true),
        ];
        for d in &fixtures {
            let loose = QuadSpec {
                target_tol: 2e-7,
                ..QuadSpec::default()
            };
            let tight = QuadSpec {
                target_tol: 1e-7,
                ..QuadSpec::default()
            };
            let r1 = log_energy_1d(d, &loose).unwrap();
            let r2 = log_energy_1d(d, &tight).unwrap();
            assert!(
                (r1.value - r2.value).abs() <= r1.error_bound.max(1e-12),
                "{}: {} vs {} bound {}",
                d.label(),
                r1.value,
                r2.value,
                r1.error_bound
            );
        }
    }

    #[test]
    fn penalize_reference_points() {
        assert_close(
            penalize(0.25, 1.0, &Penalty::Quadratic(1.0)).unwrap(),
            0.75,
            0.0,
        );
        assert_close(
            penalize(0.25, 0.5, &Penalty::Quadratic(0.5)).unwrap(),
            0.75,
            0.0,
        );
        assert_close(penalize(0.5, 1.0, &Penalty::Linear).unwrap(), 1.5, 0.0);
        assert!(penalize(0.0, 1.0, &Penalty::Quadratic(-1.0)).is_err());
    }

    #[test]
    fn quadspec_validation() {
        let q = QuadSpec {
            diagonal_refinement_depth: 31,
            ..QuadSpec::default()
        };
        assert!(log_energy_1d(&uniform01(), &q).is_err());
        let q = QuadSpec {
            target_tol: 0.0,
            ..QuadSpec::default()
        };
        assert!(log_energy_1d(&uniform01(), &q).is_err());
    }
}
