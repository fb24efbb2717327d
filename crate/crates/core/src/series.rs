//! Order-tracked truncated power series over the rationals, including
//! compositional reversion. Arithmetic clamps to the minimum order of the
//! operands and never silently extends a series.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;

/// Coefficients of z^0..z^order; length is always `order + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Build from coefficients, padding with zeros or truncating to the
    /// requested order.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        TruncatedSeries::new(vec![Rational::one()], order)
    }

    /// `z` truncated at `order`.
    pub fn identity(order: usize) -> Self {
        TruncatedSeries::new(vec![Rational::zero(), Rational::one()], order)
    }

    pub fn from_poly(p: &Poly, order: usize) -> Self {
        TruncatedSeries::new(p.coeffs().to_vec(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        TruncatedSeries::new(
            (0..=order).map(|k| self.coeff(k) + other.coeff(k)).collect(),
            order,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        TruncatedSeries::new(
            (0..=order).map(|k| self.coeff(k) - other.coeff(k)).collect(),
            order,
        )
    }

    pub fn scale(&self, k: &Rational) -> Self {
        TruncatedSeries::new(self.coeffs.iter().map(|c| c * k).collect(), self.order())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries::new(out, order)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = TruncatedSeries::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self / other`; the divisor needs a nonzero constant term.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let d0 = other.coeff(0);
        if d0.is_zero() {
            return Err(Error::domain(
                "series division requires a nonzero constant term",
            ));
        }
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for k in 0..=order {
            let mut acc = self.coeff(k);
            for (j, q) in out.iter().enumerate().take(k) {
                acc -= q * other.coeff(k - j);
            }
            out[k] = acc / &d0;
        }
        Ok(TruncatedSeries::new(out, order))
    }

    /// `self(inner(z))`; the inner series needs a zero constant term so the
    /// truncation order stays meaningful.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::domain(
                "series composition requires inner constant term zero",
            ));
        }
        let order = self.order().min(inner.order());
        let mut acc = TruncatedSeries::zero(order);
        let inner_t = TruncatedSeries::new(inner.coeffs[..=order.min(inner.order())].to_vec(), order);
        for k in (0..=order.min(self.order())).rev() {
            acc = acc.mul(&inner_t);
            acc.coeffs[0] += self.coeff(k);
        }
        Ok(acc)
    }

    /// Compositional inverse: returns w(z) with `self(w(z)) = z + O(z^{N+1})`.
    /// Requires a zero constant term and a nonzero linear term.
    pub fn reversion(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::domain("reversion requires constant term zero"));
        }
        let s1 = self.coeff(1);
        if s1.is_zero() {
            return Err(Error::domain("reversion requires a nonzero linear term"));
        }
        let order = self.order();
        let mut w = SeriesPowers::new();
        w.push(Rational::zero());
        if order >= 1 {
            w.push(Rational::one() / &s1);
        }
        for k in 2..=order {
            // [z^k] sum_j s_j w(z)^j = 0; only the j = 1 term involves w_k.
            let mut t = Rational::zero();
            for j in 2..=k.min(self.order()) {
                let sj = self.coeff(j);
                if sj.is_zero() {
                    continue;
                }
                t += sj * w.entry(j, k);
            }
            let wk = -t / &s1;
            w.push(wk);
        }
        Ok(TruncatedSeries::new(w.into_base(), order))
    }
}

/// Lazily extended convolution powers of a growing coefficient sequence.
/// `entry(j, m)` is the coefficient of index `m` in the j-fold convolution of
/// the base pushed so far. Querying `m == base_len` is allowed when the base
/// has a zero constant term and `j >= 2` (the missing head term contributes
/// nothing); this is exactly the access pattern of reversion and of
/// coefficient-wise solves of functional equations.
pub(crate) struct SeriesPowers {
    pows: Vec<Vec<Rational>>,
}

impl SeriesPowers {
    pub fn new() -> Self {
        SeriesPowers { pows: vec![Vec::new()] }
    }

    pub fn push(&mut self, c: Rational) {
        self.pows[0].push(c);
    }

    pub fn into_base(mut self) -> Vec<Rational> {
        self.pows.swap_remove(0)
    }

    pub fn entry(&mut self, j: usize, m: usize) -> Rational {
        assert!(j >= 1);
        if j == 1 {
            return self.pows[0][m].clone();
        }
        self.extend(j, m);
        self.pows[j - 1][m].clone()
    }

    fn extend(&mut self, j: usize, upto: usize) {
        if j == 1 {
            return;
        }
        self.extend(j - 1, upto);
        while self.pows.len() < j {
            self.pows.push(Vec::new());
        }
        while self.pows[j - 1].len() <= upto {
            let m = self.pows[j - 1].len();
            let mut acc = Rational::zero();
            for i in 0..=m {
                let (Some(a), Some(b)) = (self.pows[j - 2].get(i), self.pows[0].get(m - i))
                else {
                    // Index past the pushed base. Legal only when the base has
                    // a zero constant term, which makes the paired cofactor
                    // zero; that is the access pattern of reversion and of
                    // coefficient-wise functional-equation solves.
                    debug_assert!(self.pows[0].first().is_some_and(|c| c.is_zero()));
                    continue;
                };
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
            self.pows[j - 1].push(acc);
        }
    }
}
