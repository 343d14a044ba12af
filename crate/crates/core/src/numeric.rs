//! Small numerical helpers shared across modules.

/// Neumaier (improved Kahan) compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn sum(&self) -> f64 {
        // an infinite term leaves inf - inf in the compensation
        if self.sum.is_infinite() {
            return self.sum;
        }
        self.sum + self.comp
    }

    pub fn scale(&mut self, s: f64) {
        self.sum *= s;
        self.comp *= s;
    }

    pub fn merge(&mut self, other: &Neumaier) {
        self.add(other.sum);
        self.add(other.comp);
    }
}

/// Compensated sum of a slice in index order.
pub fn neumaier_sum(values: &[f64]) -> f64 {
    let mut acc = Neumaier::default();
    for &v in values {
        acc.add(v);
    }
    acc.sum()
}
