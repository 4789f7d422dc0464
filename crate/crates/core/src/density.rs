//! Mean empirical spectral densities of GUE, Ginibre, and LUE at finite n.
//!
//! Each density exists in two algebraically distinct forms used to
//! cross-validate one another: the kernel-diagonal sums of squared
//! orthogonal polynomials, and the reduced single-sum forms (Feldheim for
//! Hermite squares, Howell for Laguerre squares). The reduced forms carry
//! exact rational coefficients.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;
// Float supplies the libm-backed f64 math in no_std builds.
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

use crate::quad::{adaptive_panels, GaussLegendre};
use crate::specfun::{
    self, binom_exact, binom_general_exact, hermite_psi_sum_sq, laguerre_weighted_sum_sq, ratio,
    rational_to_f64,
};
use crate::{Error, Result};

const PI: f64 = core::f64::consts::PI;

/// Tail cutoff: support ends where the density falls below this fraction
/// of its peak.
const TAIL_FRACTION: f64 = 1e-16;

/// An evaluable probability density on an interval of the line.
pub struct Density1D {
    eval: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    support: (f64, f64),
    label: String,
}

impl Density1D {
    pub fn new(
        label: impl Into<String>,
        support: (f64, f64),
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Density1D {
            eval: Box::new(eval),
            support,
            label: label.into(),
        }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// ∫ f, by adaptive quadrature at 1e-10; should be 1.
    pub fn normalization(&self) -> Result<f64> {
        let gl = GaussLegendre::new(16);
        let (a, b) = self.support;
        let (v, _) = adaptive_panels(&gl, a, b, 1e-10, |x| self.eval(x))?;
        Ok(v)
    }

    /// p-th absolute moment ∫ |x|^p f(x) dx, adaptive to 1e-9.
    pub fn moment(&self, p: u8) -> Result<f64> {
        let gl = GaussLegendre::new(16);
        let (a, b) = self.support;
        let (v, _) = adaptive_panels(&gl, a, b, 1e-9, |x| x.abs().powi(p as i32) * self.eval(x))?;
        Ok(v)
    }
}

/// A rotation-invariant planar probability density, stored through its
/// radial profile (the planar density value at radius r).
pub struct RadialDensity2D {
    profile: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    cutoff: f64,
    label: String,
}

impl RadialDensity2D {
    pub fn new(
        label: impl Into<String>,
        cutoff: f64,
        profile: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        RadialDensity2D {
            profile: Box::new(profile),
            cutoff,
            label: label.into(),
        }
    }

    /// Planar density value at radius r.
    #[inline]
    pub fn profile(&self, r: f64) -> f64 {
        (self.profile)(r)
    }

    /// Density of the radius itself: q(r) = 2π r profile(r).
    #[inline]
    pub fn radial_pdf(&self, r: f64) -> f64 {
        2.0 * PI * r * self.profile(r)
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// 2π ∫ r profile(r) dr; should be 1.
    pub fn normalization(&self) -> Result<f64> {
        let gl = GaussLegendre::new(16);
        let (v, _) = adaptive_panels(&gl, 0.0, self.cutoff, 1e-10, |r| self.radial_pdf(r))?;
        Ok(v)
    }

    /// p-th absolute moment ∫ r^p q(r) dr.
    pub fn moment(&self, p: u8) -> Result<f64> {
        let gl = GaussLegendre::new(16);
        let (v, _) = adaptive_panels(&gl, 0.0, self.cutoff, 1e-9, |r| {
            r.powi(p as i32) * self.radial_pdf(r)
        })?;
        Ok(v)
    }
}

fn gue_unscaled_eval(n: u32, x: f64) -> f64 {
    hermite_psi_sum_sq(n, x) / n as f64
}

fn gue_cutoff(n: u32) -> f64 {
    let peak = gue_unscaled_eval(n, 0.0);
    let mut r = (2.0 * n as f64).sqrt() + 1.0;
    while gue_unscaled_eval(n, r) > TAIL_FRACTION * peak {
        r += 0.25;
    }
    r
}

/// GUE level density. Unscaled: `e^{-x²}/(n√π) Σ_{k<n} h_k(x)²/(2^k k!)`,
/// evaluated through the normalized weighted functions ψ. Scaled by
/// `sqrt(n/2)` it becomes the density of the mean spectral distribution of
/// the normalized ensemble (second moment 1).
pub fn gue_density(n: u32, scaled: bool) -> Density1D {
    assert!(n >= 1, "gue_density requires n >= 1");
    let r = gue_cutoff(n);
    if scaled {
        let c = (n as f64 / 2.0).sqrt();
        Density1D::new(format!("gue n={n} (scaled)"), (-r / c, r / c), move |x| {
            c * gue_unscaled_eval(n, c * x)
        })
    } else {
        Density1D::new(format!("gue n={n}"), (-r, r), move |x| {
            gue_unscaled_eval(n, x)
        })
    }
}

/// GUE level density through the reduction to a linear combination of even
/// Hermite polynomials: `e^{-x²}/(n√π) Σ_{k<n} C(n,k+1)/(2^k k!) h_{2k}(x)`,
/// with exact rational coefficients. Unscaled form only; serves as the
/// cross-check of [`gue_density`].
pub fn gue_density_feldheim(n: u32) -> Density1D {
    assert!(n >= 1);
    // q_k = C(n, k+1) / (2^k k! n)
    let mut coeffs: Vec<f64> = Vec::with_capacity(n as usize);
    let mut pow_fact = BigRational::one(); // 2^k k!
    for k in 0..n {
        if k > 0 {
            pow_fact *= ratio(2 * i64::from(k), 1);
        }
        let q = BigRational::from_integer(binom_exact(u64::from(n), u64::from(k) + 1))
            / (&pow_fact * ratio(i64::from(n), 1));
        coeffs.push(rational_to_f64(&q));
    }
    let sqrt_pi = PI.sqrt();
    let r = gue_cutoff(n);
    Density1D::new(format!("gue n={n} (feldheim)"), (-r, r), move |x| {
        let weight = (-x * x).exp() / sqrt_pi;
        // h_0, h_2, ..., h_{2(n-1)} in one pass of the raw recurrence
        let mut acc = coeffs[0];
        if n > 1 {
            let mut prev = 1.0f64;
            let mut cur = 2.0 * x;
            for j in 1..2 * (n as usize - 1) {
                let next = 2.0 * x * cur - 2.0 * j as f64 * prev;
                prev = cur;
                cur = next;
                if (j + 1) % 2 == 0 {
                    acc += coeffs[(j + 1) / 2] * cur;
                }
            }
        }
        weight * acc
    })
}

fn ginibre_unscaled_profile(n: u32, r: f64) -> f64 {
    let r2 = r * r;
    let norm = n as f64 * PI;
    if r2 < 700.0 {
        let mut term = (-r2).exp();
        let mut sum = term;
        for k in 1..n {
            term *= r2 / k as f64;
            sum += term;
        }
        sum / norm
    } else {
        // log-space: the k-th term is exp(-r² + k log r² - log k!)
        let ln_r2 = r2.ln();
        let mut ln_fact = 0.0;
        let mut lse = f64::NEG_INFINITY;
        for k in 0..n {
            let lt = -r2 + k as f64 * ln_r2 - ln_fact;
            lse = if lse > lt {
                lse + (lt - lse).exp().ln_1p()
            } else {
                lt + if lse == f64::NEG_INFINITY {
                    0.0
                } else {
                    (lse - lt).exp().ln_1p()
                }
            };
            ln_fact += (k as f64 + 1.0).ln();
        }
        lse.exp() / norm
    }
}

fn ginibre_cutoff(n: u32) -> f64 {
    let peak = ginibre_unscaled_profile(n, 0.0);
    let mut r = (n as f64).sqrt() + 1.0;
    while ginibre_unscaled_profile(n, r) > TAIL_FRACTION * peak {
        r += 0.25;
    }
    r
}

/// Ginibre level density, a rotation-invariant planar law. Unscaled
/// profile: `e^{-r²}/(nπ) Σ_{k<n} r^{2k}/k!` (the truncated-exponential
/// partial sum; log-space once `r²` would overflow the direct path).
/// Scaled by `sqrt(n)` it has second moment `1/2 + 1/(2n)`.
pub fn ginibre_density(n: u32, scaled: bool) -> RadialDensity2D {
    assert!(n >= 1, "ginibre_density requires n >= 1");
    let cut = ginibre_cutoff(n);
    if scaled {
        let c = (n as f64).sqrt();
        RadialDensity2D::new(format!("ginibre n={n} (scaled)"), cut / c, move |r| {
            n as f64 * ginibre_unscaled_profile(n, c * r)
        })
    } else {
        RadialDensity2D::new(format!("ginibre n={n}"), cut, move |r| {
            ginibre_unscaled_profile(n, r)
        })
    }
}

fn lue_unscaled_eval(n: u32, s: f64) -> f64 {
    if s < 0.0 {
        return 0.0;
    }
    laguerre_weighted_sum_sq(n, s) / n as f64
}

fn lue_cutoff(n: u32) -> f64 {
    // peak is exactly 1 at s = 0 since |L_k(s) e^{-s/2}| <= 1
    let mut s = 4.0 * n as f64 + 2.0;
    while lue_unscaled_eval(n, s) > TAIL_FRACTION {
        s += 1.0;
    }
    s
}

/// LUE level density on the positive half-line. Unscaled:
/// `e^{-s}/n Σ_{k<n} L_k(s)²` through the weighted Laguerre recurrence.
/// Scaled by `n` it has first moment 1.
pub fn lue_density(n: u32, scaled: bool) -> Density1D {
    assert!(n >= 1, "lue_density requires n >= 1");
    let cut = lue_cutoff(n);
    if scaled {
        let nf = n as f64;
        Density1D::new(format!("lue n={n} (scaled)"), (0.0, cut / nf), move |s| {
            nf * lue_unscaled_eval(n, nf * s)
        })
    } else {
        Density1D::new(format!("lue n={n}"), (0.0, cut), move |s| {
            lue_unscaled_eval(n, s)
        })
    }
}

/// Exact coefficients `p_k = 2 (-1)^{n-k} C(n-1,k) binom(k-1/2, n)` of the
/// Howell-reduced LUE density. They are nonnegative and sum to 1.
pub fn lue_howell_coefficients(n: u32) -> Vec<BigRational> {
    (0..n)
        .map(|k| {
            let z = ratio(2 * i64::from(k) - 1, 2); // k - 1/2
            let mut p = BigRational::from_integer(binom_exact(u64::from(n) - 1, u64::from(k)))
                * binom_general_exact(&z, n)
                * ratio(2, 1);
            if (n - k) % 2 == 1 {
                p = -p;
            }
            p
        })
        .collect()
}

/// LUE level density through the Howell reduction
/// `Σ_k p_k L_{2k}(2s) e^{-s}`; exact coefficients, unscaled form only.
pub fn lue_density_howell(n: u32) -> Density1D {
    assert!(n >= 1);
    let coeffs: Vec<f64> = lue_howell_coefficients(n)
        .iter()
        .map(rational_to_f64)
        .collect();
    let cut = lue_cutoff(n);
    Density1D::new(format!("lue n={n} (howell)"), (0.0, cut), move |s| {
        // weighted Laguerre functions at 2s: L_j(2s) e^{-s}, even j kept
        let t = 2.0 * s;
        let mut prev = (-s).exp();
        let mut acc = coeffs[0] * prev;
        if n > 1 {
            let mut cur = (1.0 - t) * prev;
            for j in 1..2 * (n as usize - 1) {
                let jf = j as f64;
                let next = ((2.0 * jf + 1.0 - t) * cur - jf * prev) / (jf + 1.0);
                prev = cur;
                cur = next;
                if (j + 1) % 2 == 0 {
                    acc += coeffs[(j + 1) / 2] * cur;
                }
            }
        }
        acc
    })
}

/// Ginibre profile through the incomplete-gamma form
/// `Γ(n, r²) / (n π (n-1)!)`.
///
/// Cross-check only: the series form of the level density is ground truth;
/// the Γ-form needs the squared argument and the factorial normalization
/// for the two to agree.
pub fn ginibre_profile_gamma_form(n: u32, r: f64) -> Result<f64> {
    let mut fact = 1.0;
    for k in 2..n as u64 {
        fact *= k as f64;
    }
    Ok(specfun::upper_incomplete_gamma_int(n, r * r)? / (n as f64 * PI * fact))
}

/// Either density kind, for callers generic over the two.
pub enum AnyDensity<'a> {
    Line(&'a Density1D),
    Radial(&'a RadialDensity2D),
}

/// p-th absolute moment of either density kind (p ∈ {1, 2}).
pub fn moment(density: &AnyDensity<'_>, p: u8) -> Result<f64> {
    if p != 1 && p != 2 {
        return Err(Error::Domain("moment supports p in {1, 2}"));
    }
    match density {
        AnyDensity::Line(d) => d.moment(p),
        AnyDensity::Radial(d) => d.moment(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{Signed, ToPrimitive};

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn gue_n1_scaled_is_standard_normal() {
        let d = gue_density(1, true);
        for i in 0..100 {
            let x = -4.0 + 8.0 * i as f64 / 99.0;
            let normal = (-x * x / 2.0).exp() / (2.0 * PI).sqrt();
            assert_close(d.eval(x), normal, 1e-14);
        }
    }

    #[test]
    fn gue_second_moment_is_one() {
        for n in [1u32, 2, 5, 10] {
            let d = gue_density(n, true);
            assert_close(d.moment(2).unwrap(), 1.0, 1e-8);
            assert_close(d.normalization().unwrap(), 1.0, 1e-9);
        }
    }

    #[test]
    fn gue_matches_feldheim_form() {
        for n in 1..=10u32 {
            let plain = gue_density(n, false);
            let feld = gue_density_feldheim(n);
            assert_close(feld.normalization().unwrap(), 1.0, 1e-9);
            for i in 0..100 {
                let x = -5.0 + 10.0 * i as f64 / 99.0;
                assert_close(plain.eval(x), feld.eval(x), 1e-10);
            }
            for x in [0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0] {
                assert_close(plain.eval(x), feld.eval(x), 1e-12);
            }
        }
    }

    #[test]
    fn feldheim_n1_is_gaussian_weight() {
        let d = gue_density_feldheim(1);
        for x in [0.0, 0.7, 1.9] {
            assert_close(d.eval(x), (-x * x).exp() / PI.sqrt(), 1e-15);
        }
    }

    #[test]
    fn gue_density_is_even_bitwise() {
        for n in [2u32, 7, 31] {
            let d = gue_density(n, true);
            for i in 1..50 {
                let x = 0.09 * i as f64;
                assert_eq!(d.eval(x), d.eval(-x));
            }
        }
    }

    #[test]
    fn gue_center_approaches_semicircle_value() {
        let d = gue_density(100, true);
        let semicircle_at_zero = 1.0 / PI;
        assert!((d.eval(0.0) / semicircle_at_zero - 1.0).abs() < 0.02);
    }

    #[test]
    fn densities_nonnegative_on_grid() {
        for n in [1u32, 10, 25, 50] {
            let g = gue_density(n, false);
            let (a, b) = g.support();
            let l = lue_density(n, false);
            let (_, lb) = l.support();
            let gin = ginibre_density(n, false);
            for i in 0..1000 {
                let t = i as f64 / 999.0;
                assert!(g.eval(a + (b - a) * t) >= 0.0);
                assert!(l.eval(lb * t) >= 0.0);
                assert!(gin.profile(gin.cutoff() * t) >= 0.0);
            }
        }
    }

    #[test]
    fn ginibre_n1_profile() {
        let d = ginibre_density(1, false);
        for r in [0.0, 0.5, 1.5] {
            assert_close(d.profile(r), (-r * r).exp() / PI, 1e-15);
        }
    }

    #[test]
    fn ginibre_moment_and_normalization() {
        for n in [1u32, 2, 5, 10] {
            let d = ginibre_density(n, true);
            assert_close(d.moment(2).unwrap(), 0.5 + 0.5 / n as f64, 1e-8);
            assert_close(d.normalization().unwrap(), 1.0, 1e-9);
        }
    }

    #[test]
    fn ginibre_approaches_circular_law() {
        let d = ginibre_density(200, true);
        // interior of the disk: the planar density tends to 1/π
        assert!((d.profile(0.5) * PI - 1.0).abs() < 0.02);
        // at the edge the truncated-exponential sum is half of e^{n}, so
        // the limit is half the interior value
        assert!((d.profile(1.0) * 2.0 * PI - 1.0).abs() < 0.02);
    }

    #[test]
    fn ginibre_gamma_form_cross_check() {
        for n in [1u32, 3, 7, 10] {
            let d = ginibre_density(n, false);
            for r in [0.0, 0.8, 2.0, 3.1] {
                let gamma_form = ginibre_profile_gamma_form(n, r).unwrap();
                assert_close(d.profile(r), gamma_form, 1e-12);
            }
        }
    }

    #[test]
    fn lue_n1_scaled_is_exponential() {
        let d = lue_density(1, true);
        for s in [0.0, 0.3, 1.0, 4.0] {
            assert_close(d.eval(s), (-s).exp(), 1e-14);
        }
    }

    #[test]
    fn lue_first_moment_is_one() {
        for n in [1u32, 2, 5, 10] {
            let d = lue_density(n, true);
            assert_close(d.moment(1).unwrap(), 1.0, 1e-8);
            assert_close(d.normalization().unwrap(), 1.0, 1e-9);
        }
    }

    #[test]
    fn lue_value_at_zero_is_one() {
        for n in 1..=20u32 {
            let d = lue_density(n, false);
            assert_close(d.eval(0.0), 1.0, 1e-13);
        }
    }

    #[test]
    fn howell_coefficients_sum_to_one_and_are_nonnegative() {
        for n in 1..=20u32 {
            let ps = lue_howell_coefficients(n);
            let total: BigRational = ps.iter().cloned().sum();
            assert!(total.is_one(), "n={n}: sum {total}");
            for p in &ps {
                assert!(!p.is_negative(), "n={n}");
            }
        }
    }

    #[test]
    fn howell_matches_kernel_form() {
        let h1 = lue_density_howell(1);
        for s in [0.0, 1.0, 2.5] {
            assert_close(h1.eval(s), (-s).exp(), 1e-15);
        }
        for n in 1..=10u32 {
            let plain = lue_density(n, false);
            let howell = lue_density_howell(n);
            for s in [0.0, 0.5, 1.0, 2.0, 5.0] {
                assert_close(plain.eval(s), howell.eval(s), 1e-9);
            }
        }
    }

    #[test]
    fn moment_of_reference_measures() {
        let normal = Density1D::new("n(0,1)", (-40.0, 40.0), |x| {
            (-x * x / 2.0).exp() / (2.0 * PI).sqrt()
        });
        assert_close(normal.moment(2).unwrap(), 1.0, 1e-9);

        let exponential = Density1D::new("exp(1)", (0.0, 40.0), |s| (-s).exp());
        assert_close(exponential.moment(1).unwrap(), 1.0, 1e-9);

        let disk = RadialDensity2D::new("unit disk", 1.0, |_| 1.0 / PI);
        assert_close(moment(&AnyDensity::Radial(&disk), 2).unwrap(), 0.5, 1e-10);
        assert_close(disk.normalization().unwrap(), 1.0, 1e-10);
        assert!(moment(&AnyDensity::Radial(&disk), 3).is_err());
    }

    #[test]
    fn howell_coefficients_match_known_n2() {
        // n = 2: p_0 = 2 C(1,0) binom(-1/2, 2) = 3/4, p_1 = -2 binom(1/2, 2) = 1/4
        let ps = lue_howell_coefficients(2);
        assert_eq!(ps[0].to_f64().unwrap(), 0.75);
        assert_eq!(ps[1].to_f64().unwrap(), 0.25);
    }
}
