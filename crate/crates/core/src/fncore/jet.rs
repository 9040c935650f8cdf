//! Truncated Taylor expansions `f(z0 + h) = Σ c_k h^k`.

use crate::Cplx;
use std::ops::{Add, Mul, Sub};

/// Maximum number of stored Taylor coefficients.
pub const JET_LEN: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    c: [Cplx; JET_LEN],
    len: usize,
}

impl Jet {
    pub fn zero(len: usize) -> Self {
        Jet { c: [Cplx::new(0.0, 0.0); JET_LEN], len: len.clamp(1, JET_LEN) }
    }

    pub fn constant(v: Cplx, len: usize) -> Self {
        let mut j = Jet::zero(len);
        j.c[0] = v;
        j
    }

    /// Jet of `z ↦ z - w` at `z0`.
    pub fn affine(z0: Cplx, w: Cplx, len: usize) -> Self {
        let mut j = Jet::constant(z0 - w, len);
        if j.len > 1 {
            j.c[1] = Cplx::new(1.0, 0.0);
        }
        j
    }

    /// Jet of `z ↦ base · exp(λ (z - z0))`.
    pub fn exponential(base: Cplx, lambda: Cplx, len: usize) -> Self {
        let mut j = Jet::zero(len);
        let mut t = base;
        for k in 0..j.len {
            j.c[k] = t;
            t = t * lambda / (k as f64 + 1.0);
        }
        j
    }

    pub fn from_coeffs(coeffs: &[Cplx]) -> Self {
        let mut j = Jet::zero(coeffs.len());
        for (dst, src) in j.c.iter_mut().zip(coeffs) {
            *dst = *src;
        }
        j
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self) -> Cplx {
        self.c[0]
    }

    /// `k`-th normalized coefficient `f^(k)(z0) / k!`.
    pub fn coeff(&self, k: usize) -> Cplx {
        if k < self.len {
            self.c[k]
        } else {
            Cplx::new(0.0, 0.0)
        }
    }

    /// `k`-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> Cplx {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.coeff(k) * fact
    }

    pub fn coeffs(&self) -> &[Cplx] {
        &self.c[..self.len]
    }

    pub fn truncate(mut self, len: usize) -> Self {
        let len = len.clamp(1, JET_LEN);
        for k in len..self.len {
            self.c[k] = Cplx::new(0.0, 0.0);
        }
        self.len = len.min(self.len);
        self
    }

    pub fn scale(mut self, s: Cplx) -> Self {
        for v in &mut self.c[..self.len] {
            *v *= s;
        }
        self
    }

    /// Multiplies by `(z - w)` where the jet is centred at `z0`.
    pub fn mul_affine(self, z0: Cplx, w: Cplx) -> Self {
        let d = z0 - w;
        let mut out = Jet::zero(self.len);
        for k in 0..self.len {
            out.c[k] = d * self.c[k];
            if k > 0 {
                out.c[k] += self.c[k - 1];
            }
        }
        out
    }

    /// Divides by `(z - w)`; requires `z0 != w`.
    pub fn div_affine(self, z0: Cplx, w: Cplx) -> Self {
        let d = z0 - w;
        let mut out = Jet::zero(self.len);
        for k in 0..self.len {
            let prev = if k > 0 { out.c[k - 1] } else { Cplx::new(0.0, 0.0) };
            out.c[k] = (self.c[k] - prev) / d;
        }
        out
    }

    /// Drops the constant term: the jet of `(f(z) - f(z0)) / (z - z0)`.
    pub fn shift_down(self) -> Self {
        let mut out = Jet::zero(self.len.saturating_sub(1).max(1));
        for k in 1..self.len {
            out.c[k - 1] = self.c[k];
        }
        out
    }

    /// Re-expands about `z0 + d`.
    pub fn recenter(self, d: Cplx) -> Self {
        let mut out = Jet::zero(self.len);
        // Horner-style synthetic division, repeated `len` times.
        let mut work = self.c;
        for m in 0..self.len {
            for k in (m + 1..self.len).rev() {
                let carry = work[k] * d;
                work[k - 1] += carry;
            }
            out.c[m] = work[m];
        }
        out
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let len = self.len.min(rhs.len);
        let mut out = Jet::zero(len);
        for k in 0..len {
            out.c[k] = self.c[k] + rhs.c[k];
        }
        out
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self + rhs.scale(Cplx::new(-1.0, 0.0))
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let len = self.len.min(rhs.len);
        let mut out = Jet::zero(len);
        for i in 0..len {
            for j in 0..len - i {
                out.c[i + j] += self.c[i] * rhs.c[j];
            }
        }
        out
    }
}
