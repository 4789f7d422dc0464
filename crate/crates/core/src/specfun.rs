//! Special functions and orthogonal-polynomial evaluation.
//!
//! Everything here is pure and reentrant. Exact arithmetic
//! ([`num_rational::BigRational`]) backs the identity oracles, where
//! alternating binomial sums would be destroyed by floating-point
//! cancellation; `f64` paths serve the density and quadrature code.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
// Float supplies the libm-backed f64 math in no_std builds.
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

use crate::kahan::KahanSum;
use crate::{Error, Result};

/// Euler–Mascheroni constant, `lim (H_n - log n)`, to f64 precision.
///
/// Hard-coded rather than computed; validated in tests by the harmonic
/// asymptotic and by a finite difference of [`ln_gamma`] at 1.
pub const EULER_GAMMA: f64 = 0.57721566490153286061;

/// Euler–Mascheroni constant γ = 0.5772156649…
pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

/// Exact rational arithmetic for identity oracles.
///
/// [`BigRational`] keeps values reduced with a positive denominator, which
/// is exactly the representation the oracles need.
pub type RationalExact = BigRational;

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational from an integer pair, `num/den`.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// n-th harmonic number `H_n = 1 + 1/2 + ... + 1/n`, exactly.
pub fn harmonic(n: u32) -> Result<RationalExact> {
    if n == 0 {
        return Err(Error::Domain("harmonic requires n >= 1"));
    }
    let mut acc = BigRational::zero();
    for k in 1..=n {
        acc += ratio(1, i64::from(k));
    }
    Ok(acc)
}

/// Odd harmonic number `1 + 1/3 + ... + 1/(2m-1)`, exactly; `m = 0` is the
/// empty sum.
pub fn odd_harmonic(m: u32) -> RationalExact {
    let mut acc = BigRational::zero();
    for i in 1..=m {
        acc += ratio(1, 2 * i64::from(i) - 1);
    }
    acc
}

/// `H_n` in floating point, compensated so that n up to 1e6+ stays at
/// machine accuracy.
pub fn harmonic_f64(n: u64) -> f64 {
    let mut acc = KahanSum::new();
    for k in (1..=n).rev() {
        acc.add(1.0 / k as f64);
    }
    acc.value()
}

/// Exact binomial coefficient C(n, k).
pub fn binom_exact(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial coefficient `binom(z, n) = z(z-1)...(z-n+1)/n!`,
/// product form evaluated left to right.
pub fn binom_general(z: f64, n: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..n {
        acc *= (z - i as f64) / (i as f64 + 1.0);
    }
    acc
}

/// Exact-arithmetic version of [`binom_general`] for rational `z`.
pub fn binom_general_exact(z: &BigRational, n: u32) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..n {
        acc *= (z - big(i64::from(i))) / big(i64::from(i) + 1);
    }
    acc
}

/// `4^{-k} C(2k, k)`, by the recurrence `r_0 = 1, r_k = r_{k-1}(2k-1)/(2k)`.
/// Never overflows and is strictly decreasing in k.
pub fn central_binom_ratio(k: u32) -> f64 {
    let mut r = 1.0;
    for j in 1..=k as u64 {
        r *= (2 * j - 1) as f64 / (2 * j) as f64;
    }
    r
}

/// Upper incomplete gamma at integer first argument,
/// `Γ(n, r) = (n-1)! e^{-r} Σ_{k<n} r^k/k!`.
pub fn upper_incomplete_gamma_int(n: u32, r: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("upper_incomplete_gamma_int requires n >= 1"));
    }
    if r < 0.0 {
        return Err(Error::Domain("upper_incomplete_gamma_int requires r >= 0"));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..n {
        term *= r / k as f64;
        sum += term;
    }
    let mut fact = 1.0;
    for k in 2..n as u64 {
        fact *= k as f64;
    }
    Ok(fact * (-r).exp() * sum)
}

/// Physicist's Hermite polynomial `h_k(x)`, three-term recurrence
/// `h_{k+1} = 2x h_k - 2k h_{k-1}`.
pub fn hermite_h(k: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for j in 1..k {
        let next = 2.0 * x * cur - 2.0 * j as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Classical Laguerre polynomial `L_k(s)`, three-term recurrence
/// `(k+1) L_{k+1} = (2k+1-s) L_k - k L_{k-1}`.
pub fn laguerre_l(k: u32, s: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 1.0 - s;
    for j in 1..k {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 - s) * cur - jf * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Weighted normalized Hermite function
/// `ψ_k(x) = h_k(x) e^{-x²/2} / sqrt(2^k k! sqrt(π))`.
///
/// Raw `h_k` overflows fast; all density work goes through ψ, whose
/// recurrence `ψ_{k+1} = x sqrt(2/(k+1)) ψ_k - sqrt(k/(k+1)) ψ_{k-1}`
/// keeps every intermediate O(1).
pub fn hermite_psi(k: u32, x: f64) -> f64 {
    let mut prev = core::f64::consts::PI.powf(-0.25) * (-x * x / 2.0).exp();
    if k == 0 {
        return prev;
    }
    let mut cur = x * 2.0f64.sqrt() * prev;
    for j in 1..k {
        let jf = j as f64;
        let next = x * (2.0 / (jf + 1.0)).sqrt() * cur - (jf / (jf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `Σ_{k<n} ψ_k(x)²`, the kernel diagonal behind the GUE level density.
pub fn hermite_psi_sum_sq(n: u32, x: f64) -> f64 {
    let mut prev = core::f64::consts::PI.powf(-0.25) * (-x * x / 2.0).exp();
    let mut acc = prev * prev;
    if n == 1 {
        return acc;
    }
    let mut cur = x * 2.0f64.sqrt() * prev;
    acc += cur * cur;
    for j in 1..n - 1 {
        let jf = j as f64;
        let next = x * (2.0 / (jf + 1.0)).sqrt() * cur - (jf / (jf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        acc += cur * cur;
    }
    acc
}

/// Weighted Laguerre function `L_k(s) e^{-s/2}`; same recurrence as
/// [`laguerre_l`] with the weight folded into the seed, so large `s` never
/// overflows.
pub fn laguerre_weighted(k: u32, s: f64) -> f64 {
    let mut prev = (-s / 2.0).exp();
    if k == 0 {
        return prev;
    }
    let mut cur = (1.0 - s) * prev;
    for j in 1..k {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 - s) * cur - jf * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `Σ_{k<n} (L_k(s) e^{-s/2})²`, the kernel diagonal behind the LUE level
/// density.
pub fn laguerre_weighted_sum_sq(n: u32, s: f64) -> f64 {
    let mut prev = (-s / 2.0).exp();
    let mut acc = prev * prev;
    if n == 1 {
        return acc;
    }
    let mut cur = (1.0 - s) * prev;
    acc += cur * cur;
    for j in 1..n - 1 {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 - s) * cur - jf * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
        acc += cur * cur;
    }
    acc
}

// Lanczos approximation, g = 7, n = 9 (Godfrey coefficients).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// `log Γ(x)` for real `x` (Lanczos; reflection below 1/2).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // Γ(x) Γ(1-x) = π / sin(πx)
        let pi = core::f64::consts::PI;
        return (pi / (pi * x).sin().abs()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut sum = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * core::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + sum.ln()
}

/// `log n!` table, built incrementally; cheap enough to recompute.
pub fn ln_factorial(n: u32) -> f64 {
    let mut acc = KahanSum::new();
    for k in 2..=n as u64 {
        acc.add((k as f64).ln());
    }
    acc.value()
}

/// Exact Hermite coefficient vector (index = power of x), for the
/// coefficient-by-coefficient checks of the recurrences.
pub fn hermite_coeffs_exact(k: u32) -> Vec<BigRational> {
    let mut prev = alloc::vec![BigRational::one()];
    if k == 0 {
        return prev;
    }
    let mut cur = alloc::vec![BigRational::zero(), big(2)];
    for j in 1..k {
        // h_{j+1} = 2x h_j - 2j h_{j-1}
        let mut next = alloc::vec![BigRational::zero(); cur.len() + 1];
        for (p, c) in cur.iter().enumerate() {
            next[p + 1] += big(2) * c;
        }
        for (p, c) in prev.iter().enumerate() {
            next[p] -= big(2 * i64::from(j)) * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Exact Laguerre coefficient vector, from the closed form
/// `L_k(s) = Σ_i (-1)^i / i! C(k, i) s^i`.
pub fn laguerre_coeffs_exact(k: u32) -> Vec<BigRational> {
    (0..=k)
        .map(|i| {
            let mut c = BigRational::new(binom_exact(u64::from(k), u64::from(i)), fact_big(i));
            if i % 2 == 1 {
                c = -c;
            }
            c
        })
        .collect()
}

fn fact_big(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= BigInt::from(j);
    }
    acc
}

/// Evaluate an exact coefficient vector at rational `x`.
pub fn eval_poly_exact(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Nearest f64 to an exact rational.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
