//! Free cumulants of c_n(a), the moment/cumulant correspondence
//! `1 + R(zC(z)) = C(z)`, and free convolution powers. The R-transform of
//! c_n(a) is the rational function Q(z)/(1 - Q(z)) with
//! Q(z) = a_2 z + ... + a_r z^{r-1}, so the cumulants obey a short linear
//! recurrence.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::moments::{MomentMethod, MomentTable};
use crate::params::ParamVec;
use crate::rational::{rat, rat_int, Rational};
use crate::series::{SeriesPowers, TruncatedSeries};
use crate::surd::Surd;

/// kappa_1..kappa_N. kappa_1 = a_2 always; there is no kappa_0 (the
/// R-transform has no constant term).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CumulantTable {
    pub terms: Vec<Rational>,
}

impl CumulantTable {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// kappa_n for n >= 1.
    pub fn kappa(&self, n: usize) -> &Rational {
        &self.terms[n - 1]
    }

    pub fn scale(&self, t: &Rational) -> CumulantTable {
        CumulantTable {
            terms: self.terms.iter().map(|k| k * t).collect(),
        }
    }
}

/// Free cumulants via the linear recurrence h_0 = 1,
/// h_m = sum_{j=1}^{min(m, r-1)} a_{j+1} h_{m-j}, kappa_m = h_m.
pub fn cumulants(a: &ParamVec, n: usize) -> CumulantTable {
    assert!(n >= 1, "cumulant tables start at kappa_1");
    let r = a.r();
    let mut h = Vec::with_capacity(n + 1);
    h.push(Rational::one());
    for m in 1..=n {
        let mut acc = Rational::zero();
        for j in 1..=(r - 1).min(m) {
            let aj = a.a(j + 1);
            if !aj.is_zero() {
                acc += aj * &h[m - j];
            }
        }
        h.push(acc);
    }
    CumulantTable {
        terms: h.into_iter().skip(1).collect(),
    }
}

/// The closed-form Binet weights for the r = 3 cumulant recurrence, exact
/// over the quadratic extension by sqrt(a^2 + 4b).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinetEvaluation {
    pub kappa: Rational,
    pub t_minus: Surd,
    pub t_plus: Surd,
    pub u_minus: Surd,
    pub u_plus: Surd,
}

/// kappa_n(a, b) = t_- u_-^n + t_+ u_+^n with
/// t_∓ = (sqrt(D) ∓ a)/(2 sqrt(D)), u_∓ = ∓2b/(sqrt(D) ± a), D = a^2 + 4b.
/// Requires D > 0 and nonzero u-denominators (equivalently b != 0). The
/// arithmetic is exact, so the result is a plain rational.
pub fn cumulants_r3_binet(a: &Rational, b: &Rational, n: u32) -> Result<BinetEvaluation> {
    let disc = a * a + rat_int(4) * b;
    if !disc.is_positive() {
        return Err(Error::domain(
            "Binet form needs a^2 + 4b > 0 (real square root)",
        ));
    }
    if b.is_zero() {
        // sqrt(D) = |a| makes one of sqrt(D) +- a vanish
        return Err(Error::domain("Binet form needs nonzero u-denominators"));
    }
    // rationalized: t_∓ = 1/2 ∓ (a / 2D) sqrt(D), u_∓ = (a ∓ sqrt(D))/2
    let half = rat(1, 2);
    let t_minus = Surd::new(half.clone(), -(a / (rat_int(2) * &disc)), disc.clone());
    let t_plus = Surd::new(half.clone(), a / (rat_int(2) * &disc), disc.clone());
    let u_minus = Surd::new(a / rat_int(2), -half.clone(), disc.clone());
    let u_plus = Surd::new(a / rat_int(2), half, disc);
    let value = t_minus
        .mul(&u_minus.pow(n))
        .add(&t_plus.mul(&u_plus.pow(n)));
    let kappa = value
        .as_rational()
        .cloned()
        .expect("surd parts of the Binet sum cancel");
    Ok(BinetEvaluation {
        kappa,
        t_minus,
        t_plus,
        u_minus,
        u_plus,
    })
}

/// Solve `1 + R(zC(z)) = C(z)` coefficient by coefficient for the moments.
/// Needs kappa_1..kappa_n, i.e. `n <= k.len()`.
pub fn moments_from_cumulants(k: &CumulantTable, n: usize) -> Result<MomentTable> {
    if n > k.len() {
        return Err(Error::domain(format!(
            "need {n} cumulants to reconstruct {n} moments, got {}",
            k.len()
        )));
    }
    // D(z) = zC(z): d_0 = 0, d_m = c_{m-1}; c_n = sum_{m=1}^{n} kappa_m [z^n] D^m
    let mut c = vec![Rational::one()];
    let mut d = SeriesPowers::new();
    d.push(Rational::zero());
    for m in 1..=n {
        d.push(c[m - 1].clone());
        let mut acc = Rational::zero();
        for j in 1..=m {
            let kj = k.kappa(j);
            if !kj.is_zero() {
                acc += kj * d.entry(j, m);
            }
        }
        c.push(acc);
    }
    Ok(MomentTable {
        terms: c,
        source: MomentMethod::Recurrence,
    })
}

/// Moments of the free convolution power with exponent t > 0: the upshifted
/// generating function is the compositional inverse of
/// `w |-> (w - a_2 w^2 - ... - a_r w^r) / (1 + (t-1)(a_2 w + ... + a_r w^{r-1}))`.
/// The cumulant route (scale kappa by t, invert) gives the same table; tests
/// pin the exact agreement.
pub fn free_power_moments(a: &ParamVec, t: &Rational, n: usize) -> Result<MomentTable> {
    if !t.is_positive() {
        return Err(Error::domain("free power exponent t must be positive"));
    }
    let order = n + 1;
    let num = TruncatedSeries::from_poly(&a.to_poly(), order);
    let mut den_coeffs = vec![Rational::one()];
    let t1 = t - Rational::one();
    for j in 2..=a.r() {
        den_coeffs.push(&t1 * a.a(j));
    }
    let den = TruncatedSeries::new(den_coeffs, order);
    let d = num.div(&den)?.reversion()?;
    let table = MomentTable {
        terms: (0..=n).map(|m| d.coeff(m + 1)).collect(),
        source: MomentMethod::FreePower(t.clone()),
    };
    debug_assert_eq!(table.terms, free_power_moments_cumulant_path(a, t, n)?.terms);
    Ok(table)
}

/// The cumulant route to the same table: kappa -> t*kappa -> moments.
pub fn free_power_moments_cumulant_path(
    a: &ParamVec,
    t: &Rational,
    n: usize,
) -> Result<MomentTable> {
    if !t.is_positive() {
        return Err(Error::domain("free power exponent t must be positive"));
    }
    if n == 0 {
        return Ok(MomentTable {
            terms: vec![Rational::one()],
            source: MomentMethod::FreePower(t.clone()),
        });
    }
    let k = cumulants(a, n).scale(t);
    let mut table = moments_from_cumulants(&k, n)?;
    table.source = MomentMethod::FreePower(t.clone());
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::moments_recurrence;

    fn ints(cs: &[i64]) -> Vec<Rational> {
        cs.iter().map(|&c| rat_int(c)).collect()
    }

    #[test]
    fn kappa_heads() {
        // kappa_n(2,-1) = n + 1
        let a = ParamVec::from_ints(&[2, -1]).unwrap();
        assert_eq!(cumulants(&a, 5).terms, ints(&[2, 3, 4, 5, 6]));
        // kappa_n(1,1) is the Fibonacci sequence shifted
        let a = ParamVec::from_ints(&[1, 1]).unwrap();
        assert_eq!(cumulants(&a, 5).terms, ints(&[1, 2, 3, 5, 8]));
        // r = 2: Marchenko-Pastur t = 1, all cumulants 1
        let a = ParamVec::from_ints(&[1]).unwrap();
        assert_eq!(cumulants(&a, 4).terms, ints(&[1, 1, 1, 1]));
    }

    #[test]
    fn r3_cumulants_match_the_binomial_sum() {
        // kappa_n(a, b) = sum_k C(n-k, k) a^{n-2k} b^k
        use crate::rational::{binomial_int, pow_rational};
        for (a, b) in [(rat_int(1), rat_int(1)), (rat(1, 2), rat(-2, 3)), (rat_int(3), rat_int(-2))] {
            let v = ParamVec::new(vec![a.clone(), b.clone()]).unwrap();
            let k = cumulants(&v, 12);
            for n in 1..=12usize {
                let mut acc = Rational::zero();
                for j in 0..=n / 2 {
                    acc += Rational::from_integer(binomial_int((n - j) as u64, j as u64))
                        * pow_rational(&a, (n - 2 * j) as u32)
                        * pow_rational(&b, j as u32);
                }
                assert_eq!(k.kappa(n), &acc, "({a},{b}) n={n}");
            }
        }
    }

    #[test]
    fn binet_matches_recurrence() {
        let e = cumulants_r3_binet(&rat_int(1), &rat_int(1), 5).unwrap();
        assert_eq!(e.kappa, rat_int(8));
        // Jacobsthal family
        let e = cumulants_r3_binet(&rat_int(1), &rat_int(2), 4).unwrap();
        assert_eq!(e.kappa, rat_int(11));
        // perfect-square discriminant collapses the weights to rationals
        assert!(e.t_minus.is_rational());
        assert!(e.u_plus.is_rational());
    }

    #[test]
    fn binet_boundary_rejected() {
        // a^2 + 4b = 0
        assert!(cumulants_r3_binet(&rat_int(2), &rat_int(-1), 3).is_err());
        // b = 0 collapses a u-denominator
        assert!(cumulants_r3_binet(&rat_int(-2), &rat_int(0), 3).is_err());
    }

    #[test]
    fn moment_cumulant_round_trip() {
        for ints_vec in [&[1][..], &[1, 1, -1][..], &[2, 0, -5, 6, -2][..]] {
            let a = ParamVec::from_ints(ints_vec).unwrap();
            let k = cumulants(&a, 10);
            let m = moments_from_cumulants(&k, 10).unwrap();
            assert_eq!(m.terms, moments_recurrence(&a, 10).terms);
        }
    }

    #[test]
    fn constant_kappa_one_gives_catalan() {
        let k = CumulantTable { terms: ints(&[1, 1, 1, 1]) };
        let m = moments_from_cumulants(&k, 4).unwrap();
        assert_eq!(m.terms, ints(&[1, 1, 2, 5, 14]));
    }

    #[test]
    fn zero_cumulants_give_point_mass() {
        let k = CumulantTable { terms: ints(&[0, 0, 0]) };
        let m = moments_from_cumulants(&k, 3).unwrap();
        assert_eq!(m.terms, ints(&[1, 0, 0, 0]));
    }

    #[test]
    fn kappa_2_neg1_gives_a006013() {
        let k = CumulantTable { terms: ints(&[2, 3, 4, 5]) };
        let m = moments_from_cumulants(&k, 3).unwrap();
        assert_eq!(m.terms, ints(&[1, 2, 7, 30]));
    }

    #[test]
    fn free_power_large_schroeder() {
        let a = ParamVec::from_ints(&[1]).unwrap();
        let m = free_power_moments(&a, &rat_int(2), 4).unwrap();
        assert_eq!(m.terms, ints(&[1, 2, 6, 22, 90]));
    }

    #[test]
    fn free_power_t1_is_plain() {
        let a = ParamVec::from_ints(&[1, 1, -1]).unwrap();
        let m = free_power_moments(&a, &rat_int(1), 7).unwrap();
        assert_eq!(m.terms, moments_recurrence(&a, 7).terms);
    }

    #[test]
    fn free_power_paths_agree() {
        let a = ParamVec::new(vec![rat(1, 2), rat(-2, 3)]).unwrap();
        let t = rat(3, 2);
        let x = free_power_moments(&a, &t, 12).unwrap();
        let y = free_power_moments_cumulant_path(&a, &t, 12).unwrap();
        assert_eq!(x.terms, y.terms);
    }

    #[test]
    fn free_power_needs_positive_t() {
        let a = ParamVec::from_ints(&[1]).unwrap();
        assert!(free_power_moments(&a, &rat_int(0), 3).is_err());
        assert!(free_power_moments(&a, &rat_int(-2), 3).is_err());
    }
}
