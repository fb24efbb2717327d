//! Exact real-root counting via Sturm sequences. The count is a certificate:
//! no floating point is involved anywhere.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Distinct-root counts of a polynomial: `real` of them on the real line out
/// of `distinct` in total. `real == distinct` certifies "all roots real".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootCounts {
    pub real: usize,
    pub distinct: usize,
}

impl RootCounts {
    pub fn all_real(&self) -> bool {
        self.real == self.distinct
    }
}

/// Count distinct real roots with a Sturm sequence of the squarefree part.
/// Errors on the zero polynomial.
pub fn real_root_count(p: &Poly) -> Result<RootCounts> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let q = p.squarefree_part();
    let distinct = q.degree().unwrap();
    if distinct == 0 {
        return Ok(RootCounts { real: 0, distinct: 0 });
    }
    let chain = sturm_chain(&q);
    let at_neg_inf = sign_changes(&chain, End::NegInf);
    let at_pos_inf = sign_changes(&chain, End::PosInf);
    Ok(RootCounts {
        real: at_neg_inf - at_pos_inf,
        distinct,
    })
}

/// Sturm certificate that every root of `p` is real.
pub fn all_roots_real(p: &Poly) -> Result<bool> {
    Ok(real_root_count(p)?.all_real())
}

fn sturm_chain(q: &Poly) -> Vec<Poly> {
    let mut chain = vec![q.clone(), q.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            return chain;
        }
        chain.push(-&r);
    }
}

#[derive(Clone, Copy)]
enum End {
    NegInf,
    PosInf,
}

/// Sign changes of the chain at an infinite end. The sign of p at +inf is the
/// sign of the leading coefficient; at -inf it flips with odd degree.
fn sign_changes(chain: &[Poly], end: End) -> usize {
    let mut prev: Option<bool> = None;
    let mut changes = 0;
    for p in chain {
        let Some(lc) = p.leading_coeff() else { continue };
        let deg = p.degree().unwrap();
        let mut positive = lc.is_positive();
        if matches!(end, End::NegInf) && deg % 2 == 1 {
            positive = !positive;
        }
        if let Some(prev_sign) = prev {
            if prev_sign != positive {
                changes += 1;
            }
        }
        prev = Some(positive);
    }
    changes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a063020_derivative_has_three_real_roots() {
        // 1 - 2w - 3w^2 + 4w^3
        let p = Poly::from_ints(&[1, -2, -3, 4]);
        let c = real_root_count(&p).unwrap();
        assert_eq!(c.real, 3);
        assert_eq!(c.distinct, 3);
        assert!(c.all_real());
    }

    #[test]
    fn a121988_derivative_has_one_real_root() {
        // 1 - 4w + 6w^2 - 4w^3 has roots 1/2, 1/2 +- i/2
        let p = Poly::from_ints(&[1, -4, 6, -4]);
        let c = real_root_count(&p).unwrap();
        assert_eq!(c.real, 1);
        assert_eq!(c.distinct, 3);
        assert!(!c.all_real());
    }

    #[test]
    fn no_real_roots() {
        let p = Poly::from_ints(&[1, 0, 1]); // w^2 + 1
        let c = real_root_count(&p).unwrap();
        assert_eq!(c.real, 0);
        assert_eq!(c.distinct, 2);
    }

    #[test]
    fn multiplicities_are_collapsed() {
        // (w-1)^3: one distinct root, real
        let f = Poly::from_ints(&[-1, 1]);
        let p = &(&f * &f) * &f;
        let c = real_root_count(&p).unwrap();
        assert_eq!(c.real, 1);
        assert_eq!(c.distinct, 1);
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert!(real_root_count(&Poly::zero()).is_err());
    }

    #[test]
    fn constants_have_no_roots() {
        let c = real_root_count(&Poly::from_ints(&[5])).unwrap();
        assert_eq!(c, RootCounts { real: 0, distinct: 0 });
    }
}
