//! Kahan-compensated accumulation, shared by the series evaluators.

/// Compensated (Kahan) summation accumulator.
///
/// Keeps a running correction term so that adding many values of mixed
/// magnitude loses far less precision than naive `+=`. Used by the
/// alternating series in this crate, where the final sum can be orders of
/// magnitude smaller than individual terms.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn add(&mut self, value: f64) {
        let y = value - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum
    }
}
