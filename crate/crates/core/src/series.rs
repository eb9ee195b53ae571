//! Truncated power series with exact rational coefficients, just enough to
//! solve `L(z) = z·exp(−L(z))` by fixed-point iteration.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `c₀ + c₁z + … + c_order z^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    /// The series `z` truncated at `order`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn neg(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// `z·self`, dropping the term that falls past the order.
    pub fn shift(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(BigRational::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Series { coeffs }
    }

    /// `exp(self)` for a series without constant term, via `E' = f'·E`:
    /// `k·E_k = Σ_{j=1..k} j·f_j·E_{k−j}`.
    pub fn exp(&self) -> Self {
        assert!(self.coeffs[0].is_zero(), "exp needs a zero constant term");
        let order = self.order();
        let mut e = Self::zero(order);
        e.coeffs[0] = BigRational::one();
        for k in 1..=order {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &e.coeffs[k - j] * BigInt::from(j);
                }
            }
            e.coeffs[k] = acc / BigInt::from(k);
        }
        e
    }
}

/// Coefficients `[z^0 … z^order]` of `L(z) = z·exp(−L(z))`, obtained by
/// iterating `L ↦ z·exp(−L)` from `L = z` until it stops changing. Each
/// pass fixes at least one more coefficient, so at most `order` passes run.
/// Returns the series and the number of passes.
pub fn lambert_by_iteration(order: usize) -> (Series, usize) {
    let mut current = Series::variable(order);
    let mut passes = 0;
    loop {
        let next = current.neg().exp().shift();
        passes += 1;
        if next == current {
            return (next, passes);
        }
        current = next;
        assert!(passes <= order + 1, "iteration failed to settle");
    }
}
