/// Kahan–Neumaier compensated accumulator.
///
/// Quadrature panels and Monte Carlo reductions must give the same result
/// regardless of evaluation order at the 1e-14 level; plain summation of
/// 1e6+ terms does not.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl core::iter::FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = KahanSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensates_small_terms() {
        let mut s = KahanSum::new();
        s.add(1.0);
        for _ in 0..10_000_000 {
            s.add(1e-16);
        }
        assert!((s.value() - (1.0 + 1e-9)).abs() < 1e-15);
    }

    #[test]
    fn order_independent_at_machine_scale() {
        let xs: alloc::vec::Vec<f64> = (1..=100_000).map(|k| 1.0 / k as f64).collect();
        let fwd: KahanSum = xs.iter().copied().collect();
        let rev: KahanSum = xs.iter().rev().copied().collect();
        assert!((fwd.value() - rev.value()).abs() < 1e-14);
    }
}
