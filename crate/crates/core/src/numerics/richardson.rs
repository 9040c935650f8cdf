//! Richardson extrapolation for sequences with error `Σ_k c_k h^k`, `h` halving.

use crate::Cplx;

/// Incremental Richardson table for step ratio 2.
#[derive(Clone, Debug, Default)]
pub struct Richardson {
    rows: Vec<Vec<Cplx>>,
}

impl Richardson {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds the next raw estimate and returns the new diagonal entry.
    pub fn push(&mut self, raw: Cplx) -> Cplx {
        let mut row = vec![raw];
        if let Some(prev) = self.rows.last() {
            for k in 1..=prev.len() {
                let factor = (1u64 << k) as f64 - 1.0;
                let t = row[k - 1] + (row[k - 1] - prev[k - 1]) / factor;
                row.push(t);
            }
        }
        let d = *row.last().unwrap();
        self.rows.push(row);
        d
    }

    pub fn levels(&self) -> usize {
        self.rows.len()
    }

    pub fn diagonal(&self, j: usize) -> Cplx {
        *self.rows[j].last().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn removes_polynomial_error() {
        let mut r = Richardson::new();
        let mut last = Cplx::from(0.0);
        for j in 0..5 {
            let h = 1.0 / (1u64 << j) as f64;
            last = r.push(Cplx::from(3.0 + 2.0 * h - 5.0 * h * h + 0.7 * h * h * h));
        }
        assert!((last - Cplx::from(3.0)).norm() < 1e-13);
    }
}
