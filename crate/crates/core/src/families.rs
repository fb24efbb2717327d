//! Named parameter families: Fuss/Raney numbers, Patalan numbers, monotonic
//! powers of the Catalan vector, and the Narayana moment polynomials.

use num_traits::{One, Zero};

use crate::convolution::mono_conv;
use crate::error::{Error, Result};
use crate::moments::{MomentMethod, MomentTable};
use crate::params::ParamVec;
use crate::rational::{
    binomial_int, binomial_rational, pow_rational, rat_int, Rational,
};

/// Raney number C(np + r, n) * r / (np + r) with generalized (falling
/// factorial) binomials, for rational p and r. Errors when np + r = 0.
pub fn fuss_raney(p: &Rational, r: &Rational, n: u32) -> Result<Rational> {
    if n == 0 {
        return Ok(Rational::one());
    }
    let top = rat_int(n as i64) * p + r;
    if top.is_zero() {
        return Err(Error::domain("fuss_raney undefined when np + r = 0"));
    }
    Ok(binomial_rational(&top, n) * r / top)
}

/// The vector a with c_n(a) = C(np + p - 1, n)(p - 1)/(np + p - 1):
/// a_k = C(p-1, k-1)(-1)^k for k = 2..=p.
pub fn fuss_param_vec(p: u32) -> Result<ParamVec> {
    if p < 2 {
        return Err(Error::domain("Fuss parameter vectors need p >= 2"));
    }
    let coeffs = (2..=p)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            Rational::from_integer(binomial_int(p as u64 - 1, k as u64 - 1)) * rat_int(sign)
        })
        .collect();
    ParamVec::new(coeffs)
}

/// pat_n(p) = -p^{2n+1} C(n - 1/p, n + 1) for rational p != 0.
pub fn patalan_number(p: &Rational, n: u32) -> Result<Rational> {
    if p.is_zero() {
        return Err(Error::domain("Patalan numbers need p != 0"));
    }
    let x = rat_int(n as i64) - Rational::one() / p;
    Ok(-pow_rational(p, 2 * n + 1) * binomial_rational(&x, n + 1))
}

/// pat_0..pat_N as a moment table.
pub fn patalan_moments(p: &Rational, n: usize) -> Result<MomentTable> {
    let terms = (0..=n as u32)
        .map(|k| patalan_number(p, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentTable {
        terms,
        source: MomentMethod::FamilyFormula,
    })
}

/// For integer p >= 2 the Patalan sequence is c_n(a) with
/// a_k = (-p)^k / p^2 * C(p, k), k = 2..=p.
pub fn patalan_param_vec(p: u32) -> Result<ParamVec> {
    if p < 2 {
        return Err(Error::domain("Patalan parameter vectors need p >= 2"));
    }
    let p_rat = rat_int(p as i64);
    let p_sq = &p_rat * &p_rat;
    let coeffs = (2..=p)
        .map(|k| {
            pow_rational(&-p_rat.clone(), k) / &p_sq
                * Rational::from_integer(binomial_int(p as u64, k as u64))
        })
        .collect();
    ParamVec::new(coeffs)
}

/// a(k) = (1)^(monotonic k-th power): coefficients of the k-fold composition
/// of w - w^2 with itself.
pub fn mono_power_param_vec(k: u32) -> Result<ParamVec> {
    if k < 1 {
        return Err(Error::domain("monotonic powers need k >= 1"));
    }
    let catalan = ParamVec::from_ints(&[1]).expect("(1) is a valid vector");
    let mut acc = catalan.clone();
    for _ in 1..k {
        acc = mono_conv(&acc, &catalan);
    }
    Ok(acc)
}

/// Moments of the free power of the Catalan vector: the Narayana polynomial
/// sum_{k=1}^{n} C(n, k-1) C(n, k) t^k / n for n >= 1, and 1 for n = 0.
pub fn narayana_moment(n: u32, t: &Rational) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    let mut acc = Rational::zero();
    for k in 1..=n {
        acc += Rational::from_integer(
            binomial_int(n as u64, k as u64 - 1) * binomial_int(n as u64, k as u64),
        ) * pow_rational(t, k);
    }
    acc / rat_int(n as i64)
}
