//! Parameter vectors a = (a_2, ..., a_r): the defining data of every sequence
//! in this crate. `P_a(w) = w - a_2 w^2 - ... - a_r w^r` and the moment
//! series is its compositional inverse.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{format_rational, parse_rational, pow_rational, Rational};

/// Coefficients indexed 2..=r; `coeffs[0]` is a_2. Trailing zeros are
/// trimmed so a_r != 0, and the all-zero vector is rejected. Interior zeros
/// are fine (aerated families like (0,1) or (0,2,0,-1)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamVec {
    coeffs: Vec<Rational>,
}

impl ParamVec {
    pub fn new(mut coeffs: Vec<Rational>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroParamVec);
        }
        Ok(ParamVec { coeffs })
    }

    pub fn from_ints(cs: &[i64]) -> Result<Self> {
        ParamVec::new(cs.iter().map(|&c| crate::rational::rat_int(c)).collect())
    }

    /// Parse a comma-separated list of rationals, e.g. `"2,0,-5,6,-2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        ParamVec::new(coeffs)
    }

    /// Highest power r of `P_a`; always >= 2.
    pub fn r(&self) -> usize {
        self.coeffs.len() + 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// a_j for j in 2..=r (zero outside).
    pub fn a(&self, j: usize) -> Rational {
        assert!(j >= 2);
        self.coeffs
            .get(j - 2)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `P_a(w) = w - a_2 w^2 - ... - a_r w^r`.
    pub fn to_poly(&self) -> Poly {
        let mut cs = Vec::with_capacity(self.r() + 1);
        cs.push(Rational::zero());
        cs.push(Rational::one());
        for a in &self.coeffs {
            cs.push(-a.clone());
        }
        Poly::new(cs)
    }

    /// Inverse of [`ParamVec::to_poly`]: accepts polynomials with zero
    /// constant term and unit linear term.
    pub fn from_poly(p: &Poly) -> Result<Self> {
        if !p.coeff(0).is_zero() || !p.coeff(1).is_one() {
            return Err(Error::domain(
                "polynomial is not of the form w - a_2 w^2 - ... - a_r w^r",
            ));
        }
        let deg = p.degree().unwrap_or(0);
        if deg < 2 {
            return Err(Error::ZeroParamVec);
        }
        ParamVec::new((2..=deg).map(|j| -p.coeff(j)).collect())
    }

    /// Homogeneous rescaling b = (d a_2, d^2 a_3, ..., d^{r-1} a_r), so that
    /// c_n(b) = d^n c_n(a). Errors when d = 0.
    pub fn dilate(&self, d: &Rational) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::domain("dilation factor must be nonzero"));
        }
        ParamVec::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| a * pow_rational(d, i as u32 + 1))
                .collect(),
        )
    }

    /// For r <= 3, the pair (a, b) with b = 0 when r = 2.
    pub fn as_r3(&self) -> Option<(Rational, Rational)> {
        (self.r() <= 3).then(|| (self.a(2), self.a(3)))
    }

    /// For r = 4, the triple (a, b, e).
    pub fn as_r4(&self) -> Option<(Rational, Rational, Rational)> {
        (self.r() == 4).then(|| (self.a(2), self.a(3), self.a(4)))
    }

    /// Odd polynomial of degree 5, i.e. the vector (0, a, 0, b): returns (a, b).
    pub fn as_symmetric_r5(&self) -> Option<(Rational, Rational)> {
        (self.r() == 5 && self.a(2).is_zero() && self.a(4).is_zero())
            .then(|| (self.a(3), self.a(5)))
    }

    /// Odd polynomial of degree 7, i.e. (0, a, 0, b, 0, e): returns (a, b, e).
    pub fn as_symmetric_r7(&self) -> Option<(Rational, Rational, Rational)> {
        (self.r() == 7
            && self.a(2).is_zero()
            && self.a(4).is_zero()
            && self.a(6).is_zero())
        .then(|| (self.a(3), self.a(5), self.a(7)))
    }
}

impl fmt::Display for ParamVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "{}", parts.join(","))
    }
}
