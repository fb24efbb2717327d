//! Values of the form `q + s*sqrt(d)` with rational q, s, d: quadratic
//! critical values, support endpoints and the Binet weights all live in a
//! single quadratic extension of the rationals, so closed-form identities can
//! be checked exactly instead of in floating point.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::rational::{format_rational, sqrt_exact, to_f64, Rational};

/// `rat + coef * sqrt(disc)`. Normalized so that a perfect-square
/// discriminant collapses to a plain rational (`coef = 0`, `disc = 0`).
/// `disc < 0` is allowed and marks a non-real value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    rat: Rational,
    coef: Rational,
    disc: Rational,
}

impl Surd {
    pub fn new(rat: Rational, coef: Rational, disc: Rational) -> Self {
        let mut s = Surd { rat, coef, disc };
        s.normalize();
        s
    }

    pub fn from_rational(rat: Rational) -> Self {
        Surd {
            rat,
            coef: Rational::zero(),
            disc: Rational::zero(),
        }
    }

    fn normalize(&mut self) {
        if self.coef.is_zero() {
            self.disc = Rational::zero();
            return;
        }
        if self.disc.is_zero() {
            self.coef = Rational::zero();
            return;
        }
        if let Some(root) = sqrt_exact(&self.disc) {
            self.rat += &self.coef * root;
            self.coef = Rational::zero();
            self.disc = Rational::zero();
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rat
    }

    pub fn surd_coef(&self) -> &Rational {
        &self.coef
    }

    pub fn discriminant(&self) -> &Rational {
        &self.disc
    }

    pub fn is_rational(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rat)
    }

    /// Real iff the discriminant is nonnegative (or the surd part vanished).
    pub fn is_real(&self) -> bool {
        self.coef.is_zero() || !self.disc.is_negative()
    }

    fn compatible(&self, other: &Self) -> bool {
        self.coef.is_zero() || other.coef.is_zero() || self.disc == other.disc
    }

    fn joint_disc(&self, other: &Self) -> Rational {
        if self.coef.is_zero() {
            other.disc.clone()
        } else {
            self.disc.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.compatible(other), "mixed discriminants in Surd::add");
        Surd::new(
            &self.rat + &other.rat,
            &self.coef + &other.coef,
            self.joint_disc(other),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Surd {
            rat: -self.rat.clone(),
            coef: -self.coef.clone(),
            disc: self.disc.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.compatible(other), "mixed discriminants in Surd::mul");
        let disc = self.joint_disc(other);
        // (a + b√d)(c + e√d) = ac + bed + (ae + bc)√d
        let rat = &self.rat * &other.rat + &self.coef * &other.coef * &disc;
        let coef = &self.rat * &other.coef + &self.coef * &other.rat;
        Surd::new(rat, coef, disc)
    }

    pub fn mul_rational(&self, k: &Rational) -> Self {
        Surd::new(&self.rat * k, &self.coef * k, self.disc.clone())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        // 1/(a + b√d) = (a - b√d)/(a² - b²d)
        let norm = &self.rat * &self.rat - &self.coef * &self.coef * &self.disc;
        if norm.is_zero() {
            return None;
        }
        Some(Surd::new(
            &self.rat / &norm,
            -(&self.coef / &norm),
            self.disc.clone(),
        ))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Surd::from_rational(Rational::from_integer(1.into()));
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.coef.is_zero()
    }

    /// Double-precision value; `None` when not real.
    pub fn to_f64(&self) -> Option<f64> {
        if !self.is_real() {
            return None;
        }
        Some(to_f64(&self.rat) + to_f64(&self.coef) * to_f64(&self.disc).sqrt())
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coef.is_zero() {
            return write!(f, "{}", format_rational(&self.rat));
        }
        if self.rat.is_zero() {
            return write!(
                f,
                "{}*sqrt({})",
                format_rational(&self.coef),
                format_rational(&self.disc)
            );
        }
        let (sign, abs) = if self.coef.is_negative() {
            ("-", -self.coef.clone())
        } else {
            ("+", self.coef.clone())
        };
        write!(
            f,
            "{} {} {}*sqrt({})",
            format_rational(&self.rat),
            sign,
            format_rational(&abs),
            format_rational(&self.disc)
        )
    }
}
