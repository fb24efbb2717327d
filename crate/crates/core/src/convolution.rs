//! Monotonic convolution on parameter vectors. On the inverse-polynomial side
//! it is plain composition: the vector of a1 ▷ a2 is read off
//! P_{a2}(P_{a1}(w)). The orientation is pinned by the worked fixture
//! (1) ▷ (1,2) = (2,0,-5,6,-2) with moments 1,2,8,35,170,866,...; on the
//! moment side this is D_{a1}(D_{a2}(z)).

use num_complex::Complex64;

use crate::error::Result;
use crate::params::ParamVec;
use crate::positivity::critical_values;
use crate::rational::Rational;

/// a1 ▷ a2: the vector of the composed inverse polynomial
/// `P_{a2}(P_{a1}(w))`. Exact; the result has degree r1 * r2.
pub fn mono_conv(a1: &ParamVec, a2: &ParamVec) -> ParamVec {
    let composed = a2.to_poly().compose(&a1.to_poly());
    ParamVec::from_poly(&composed)
        .expect("composition of inverse polynomials keeps the w - ... shape")
}

/// The rank-one case in closed form:
/// (α1) ▷ (α2) = (α1 + α2, -2 α1 α2, α1^2 α2). Both arguments must be
/// nonzero (an (α) vector with α = 0 is not a parameter vector). The output
/// always satisfies the special-subclass identity b^3 = 4abe + 8e^2.
pub fn alpha_pair(alpha1: &Rational, alpha2: &Rational) -> Result<ParamVec> {
    use num_traits::Zero;
    if alpha1.is_zero() || alpha2.is_zero() {
        return Err(crate::error::Error::domain(
            "alpha_pair needs nonzero arguments",
        ));
    }
    let a = alpha1 + alpha2;
    let b = crate::rational::rat_int(-2) * alpha1 * alpha2;
    let e = alpha1 * alpha1 * alpha2;
    ParamVec::new(vec![a, b, e])
}

/// Numeric check of the critical-value composition law
/// N_{a1 ▷ a2} = N_{a2} ∪ P_{a2}[N_{a1}].
#[derive(Debug, Clone)]
pub struct NsetCompositionReport {
    /// Distinct critical values of the composed vector.
    pub composed: Vec<Complex64>,
    /// N_{a2} ∪ P_{a2}[N_{a1}], deduplicated.
    pub union: Vec<Complex64>,
    /// Hausdorff distance between the two finite sets.
    pub hausdorff: f64,
    pub tol: f64,
    /// True when the distance is within 10 * tol.
    pub pass: bool,
}

pub fn nset_composition_check(
    a1: &ParamVec,
    a2: &ParamVec,
    tol: f64,
) -> Result<NsetCompositionReport> {
    let composed_vec = mono_conv(a1, a2);
    let composed = critical_values(&composed_vec, tol)?.distinct_z();

    let n1 = critical_values(a1, tol)?.distinct_z();
    let n2 = critical_values(a2, tol)?.distinct_z();
    let p2 = a2.to_poly();
    let mut union = n2;
    for z in n1 {
        union.push(p2.eval_complex(z));
    }
    let union = dedup_within(union, tol);

    let hausdorff = hausdorff_distance(&composed, &union);
    Ok(NsetCompositionReport {
        composed,
        union,
        hausdorff,
        tol,
        pass: hausdorff <= 10.0 * tol,
    })
}

fn dedup_within(mut zs: Vec<Complex64>, tol: f64) -> Vec<Complex64> {
    zs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let mut out: Vec<Complex64> = Vec::new();
    for z in zs {
        let close = out
            .iter()
            .any(|w| (z - w).norm() <= tol * z.norm().max(1.0));
        if !close {
            out.push(z);
        }
    }
    out
}

/// Hausdorff distance between finite point sets (infinite if one is empty
/// and the other is not).
pub fn hausdorff_distance(xs: &[Complex64], ys: &[Complex64]) -> f64 {
    if xs.is_empty() && ys.is_empty() {
        return 0.0;
    }
    if xs.is_empty() || ys.is_empty() {
        return f64::INFINITY;
    }
    let one_sided = |from: &[Complex64], to: &[Complex64]| {
        from.iter()
            .map(|x| {
                to.iter()
                    .map(|y| (x - y).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    one_sided(xs, ys).max(one_sided(ys, xs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::moments_recurrence;
    use crate::rational::rat_int;

    #[test]
    fn worked_example() {
        let a1 = ParamVec::from_ints(&[1]).unwrap();
        let a2 = ParamVec::from_ints(&[1, 2]).unwrap();
        assert_eq!(
            mono_conv(&a1, &a2),
            ParamVec::from_ints(&[2, 0, -5, 6, -2]).unwrap()
        );
        // orientation is pinned by the moment fixture
        let m = moments_recurrence(&mono_conv(&a1, &a2), 5);
        assert_eq!(
            m.terms,
            [1, 2, 8, 35, 170, 866].map(rat_int).to_vec()
        );
    }

    #[test]
    fn catalan_squared() {
        let one = ParamVec::from_ints(&[1]).unwrap();
        assert_eq!(
            mono_conv(&one, &one),
            ParamVec::from_ints(&[2, -2, 1]).unwrap()
        );
    }

    #[test]
    fn alpha_pair_values() {
        assert_eq!(
            alpha_pair(&rat_int(1), &rat_int(1)).unwrap(),
            ParamVec::from_ints(&[2, -2, 1]).unwrap()
        );
        let v = alpha_pair(&rat_int(2), &rat_int(-1)).unwrap();
        assert_eq!(v, ParamVec::from_ints(&[1, 4, -4]).unwrap());
        assert!(alpha_pair(&rat_int(3), &rat_int(0)).is_err());
    }

    #[test]
    fn alpha_pair_matches_mono_conv() {
        let pairs = [(2i64, -1i64), (1, 1), (-3, 2), (5, 7)];
        for (x, y) in pairs {
            let direct = alpha_pair(&rat_int(x), &rat_int(y)).unwrap();
            let composed = mono_conv(
                &ParamVec::from_ints(&[x]).unwrap(),
                &ParamVec::from_ints(&[y]).unwrap(),
            );
            assert_eq!(direct, composed);
            // b^3 = 4abe + 8e^2 holds on the image
            let (a, b, e) = direct.as_r4().unwrap();
            assert_eq!(&b * &b * &b, rat_int(4) * &a * &b * &e + rat_int(8) * &e * &e);
        }
    }

    #[test]
    fn composition_law_on_the_worked_example() {
        let a1 = ParamVec::from_ints(&[1]).unwrap();
        let a2 = ParamVec::from_ints(&[1, 2]).unwrap();
        let report = nset_composition_check(&a1, &a2, 1e-12).unwrap();
        assert!(report.pass, "hausdorff = {}", report.hausdorff);
        assert_eq!(report.composed.len(), 3);
        // left side equals {(-10 - 7√7)/54, (-10 + 7√7)/54, 5/32}
        let s7 = 7.0f64.sqrt();
        let expected = [
            Complex64::new((-10.0 - 7.0 * s7) / 54.0, 0.0),
            Complex64::new((-10.0 + 7.0 * s7) / 54.0, 0.0),
            Complex64::new(5.0 / 32.0, 0.0),
        ];
        assert!(hausdorff_distance(&report.composed, &expected) <= 1e-9);
    }

    #[test]
    fn composition_law_catalan_squared() {
        let one = ParamVec::from_ints(&[1]).unwrap();
        let report = nset_composition_check(&one, &one, 1e-12).unwrap();
        assert!(report.pass);
        let expected = [Complex64::new(3.0 / 16.0, 0.0), Complex64::new(0.25, 0.0)];
        assert!(hausdorff_distance(&report.union, &expected) <= 1e-9);
    }

    #[test]
    fn mono_conv_is_associative() {
        let a = ParamVec::from_ints(&[1, 1]).unwrap();
        let b = ParamVec::from_ints(&[2, -1]).unwrap();
        let c = ParamVec::from_ints(&[1]).unwrap();
        assert_eq!(
            mono_conv(&mono_conv(&a, &b), &c),
            mono_conv(&a, &mono_conv(&b, &c))
        );
    }
}
