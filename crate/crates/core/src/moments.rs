//! Moment sequences c_n(a) computed by independent methods: the defining
//! convolution recurrence, compositional reversion of P_a, and the r = 3
//! closed form. The methods must agree exactly; tests and the acceptance
//! suite enforce that.

use num_traits::{One, Zero};

use crate::params::ParamVec;
use crate::rational::{binomial_int, pow_rational, rat_int, Rational};
use crate::series::{SeriesPowers, TruncatedSeries};

/// How a moment table was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MomentMethod {
    Recurrence,
    Reversion,
    ClosedFormR3,
    FreePower(Rational),
    FamilyFormula,
}

/// c_0..c_N with the method that produced it. c_0 = 1 always.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentTable {
    pub terms: Vec<Rational>,
    pub source: MomentMethod,
}

impl MomentTable {
    /// Number of stored terms, N + 1.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The defining recurrence: c_0 = 1 and, for n >= 1,
/// c_n = sum_{j=2}^{r} a_j * [u_1+...+u_j = n-j+1] c_{u_1}...c_{u_j}.
/// The inner sum over compositions is the (n-j+1)-st coefficient of the
/// j-fold convolution power of the prefix, maintained incrementally.
pub fn moments_recurrence(a: &ParamVec, n: usize) -> MomentTable {
    let r = a.r();
    let mut powers = SeriesPowers::new();
    powers.push(Rational::one());
    for m in 1..=n {
        let mut total = Rational::zero();
        for j in 2..=r.min(m + 1) {
            let aj = a.a(j);
            if aj.is_zero() {
                continue;
            }
            total += aj * powers.entry(j, m + 1 - j);
        }
        powers.push(total);
    }
    MomentTable {
        terms: powers.into_base(),
        source: MomentMethod::Recurrence,
    }
}

/// c_n as the coefficient of z^{n+1} in the compositional inverse of P_a.
pub fn moments_via_reversion(a: &ParamVec, n: usize) -> MomentTable {
    let p = TruncatedSeries::from_poly(&a.to_poly(), n + 1);
    let d = p.reversion().expect("P_a always has linear term 1");
    MomentTable {
        terms: (0..=n).map(|k| d.coeff(k + 1)).collect(),
        source: MomentMethod::Reversion,
    }
}

/// Lagrange-inversion closed form for r = 3 (b may be zero, covering r = 2):
/// c_n = 1/(n+1) sum_j C(2n-j, n) C(n-j, j) a^{n-2j} b^j.
pub fn moments_r3(a: &Rational, b: &Rational, n: usize) -> MomentTable {
    let mut terms = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut acc = Rational::zero();
        for j in 0..=m / 2 {
            let c1 = binomial_int((2 * m - j) as u64, m as u64);
            let c2 = binomial_int((m - j) as u64, j as u64);
            acc += Rational::from_integer(c1 * c2)
                * pow_rational(a, (m - 2 * j) as u32)
                * pow_rational(b, j as u32);
        }
        terms.push(acc / rat_int(m as i64 + 1));
    }
    MomentTable {
        terms,
        source: MomentMethod::ClosedFormR3,
    }
}
