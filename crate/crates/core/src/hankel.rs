//! Exact Hankel determinants. Denominators are cleared first, then each minor
//! is computed by fraction-free Bareiss elimination over the integers, so a
//! negative determinant is a machine-checkable refutation of positive
//! definiteness.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{denominator_lcm, pow_rational, Int, Rational};

/// H_k = det(c_{i+j})_{i,j=0..k-1} for k = 1..=m. Requires 2m - 1 moments.
pub fn hankel_dets(c: &[Rational], m: usize) -> Result<Vec<Rational>> {
    if m < 1 {
        return Err(Error::domain("hankel depth must be at least 1"));
    }
    if c.len() < 2 * m - 1 {
        return Err(Error::domain(format!(
            "need {} moments for Hankel depth {m}, got {}",
            2 * m - 1,
            c.len()
        )));
    }
    let scale = denominator_lcm(c);
    let scale_rat = Rational::from_integer(scale.clone());
    let scaled: Vec<Int> = c.iter().map(|x| (x * &scale_rat).to_integer()).collect();
    let mut out = Vec::with_capacity(m);
    for k in 1..=m {
        let matrix: Vec<Vec<Int>> = (0..k)
            .map(|i| (0..k).map(|j| scaled[i + j].clone()).collect())
            .collect();
        let det = bareiss_det(matrix);
        // det(c_{i+j}) = det(scaled)/L^k
        out.push(Rational::from_integer(det) / pow_rational(&scale_rat, k as u32));
    }
    Ok(out)
}

/// Index (1-based order) and value of the first negative determinant, if any.
pub fn first_negative(dets: &[Rational]) -> Option<(usize, Rational)> {
    dets.iter()
        .enumerate()
        .find(|(_, d)| d.is_negative())
        .map(|(i, d)| (i + 1, d.clone()))
}

/// Fraction-free (Bareiss) determinant of an integer matrix with row-swap
/// pivoting.
pub fn bareiss_det(mut m: Vec<Vec<Int>>) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::from(1);
    }
    let mut sign = 1i32;
    let mut prev = Int::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = Int::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}
