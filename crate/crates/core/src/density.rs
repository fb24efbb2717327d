//! Explicit densities and closed-form generating functions, verified against
//! the exact engine by numeric quadrature. The quadrature is adaptive
//! Gauss-Legendre after an endpoint substitution x = lo + u^k chosen per
//! algebraic singularity exponent, so every transformed integrand is smooth
//! and interior nodes never touch a singular endpoint.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cumulants::free_power_moments;
use crate::error::{Error, Result};
use crate::families::{fuss_raney, patalan_moments};
use crate::moments::{moments_r3, moments_recurrence};
use crate::params::ParamVec;
use crate::rational::{is_integer, rat_int, to_f64, Rational};

/// A density with an explicit formula. Parameters stay rational so the exact
/// reference moments are available next to the numeric ones.
#[derive(Debug, Clone, PartialEq)]
pub enum DensitySpec {
    /// sqrt((4-x)/x)/(2 pi) on (0, 4); moments are the Catalan numbers.
    Catalan,
    /// Marchenko-Pastur with rate t > 0: atom max(1-t, 0) at zero plus
    /// sqrt(4t - (x-1-t)^2)/(2 pi x) on ((1-sqrt t)^2, (1+sqrt t)^2).
    MarchenkoPastur { t: Rational },
    /// The Fuss p = 3 density on (0, 27/4).
    W31,
    /// W31(x^2)|x| on (-sqrt(27)/2, sqrt(27)/2): the symmetric aerated
    /// version, moments c_n(0,1).
    W31SymmetricAerated,
    /// sqrt(3) (3a x^2 - x^3)^{1/3} / (2 a pi x) on (0, 3a), a > 0; moments
    /// c_n(a, -a^2/3).
    R3Third { a: Rational },
    /// (p^2 - x)^{1/p} sin(pi/p) / (p pi x^{1/p}) on (0, p^2) for integer
    /// |p| >= 2; moments pat_n(p).
    Patalan { p: Rational },
}

/// One integration segment with endpoint substitution powers.
struct Segment {
    lo: f64,
    hi: f64,
    k_lo: u32,
    k_hi: u32,
}

impl DensitySpec {
    /// Parse CLI names: `catalan`, `mp(T)`, `w31`, `w31-sym`, `r3third(A)`,
    /// `patalan(P)` with rational arguments.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::Parse {
            what: format!("density spec `{s}`"),
            detail: "expected catalan | mp(t) | w31 | w31-sym | r3third(a) | patalan(p)".into(),
        };
        let spec = match s {
            "catalan" => DensitySpec::Catalan,
            "w31" => DensitySpec::W31,
            "w31-sym" => DensitySpec::W31SymmetricAerated,
            _ => {
                let (name, rest) = s.split_once('(').ok_or_else(err)?;
                let arg = rest.strip_suffix(')').ok_or_else(err)?;
                let value = crate::rational::parse_rational(arg)?;
                match name {
                    "mp" => DensitySpec::MarchenkoPastur { t: value },
                    "r3third" => DensitySpec::R3Third { a: value },
                    "patalan" => DensitySpec::Patalan { p: value },
                    _ => return Err(err()),
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            DensitySpec::Catalan | DensitySpec::W31 | DensitySpec::W31SymmetricAerated => Ok(()),
            DensitySpec::MarchenkoPastur { t } => {
                if t.is_positive() {
                    Ok(())
                } else {
                    Err(Error::domain("Marchenko-Pastur needs t > 0"))
                }
            }
            DensitySpec::R3Third { a } => {
                if a.is_positive() {
                    Ok(())
                } else {
                    Err(Error::domain("the third-power density needs a > 0"))
                }
            }
            DensitySpec::Patalan { p } => {
                let ok = is_integer(p)
                    && p.numer().to_i64().map(i64::abs).unwrap_or(0) >= 2;
                if ok {
                    Ok(())
                } else {
                    Err(Error::domain(
                        "the Patalan density is evaluated for integer |p| >= 2",
                    ))
                }
            }
        }
    }

    /// Open support interval of the absolutely continuous part.
    pub fn support(&self) -> (f64, f64) {
        match self {
            DensitySpec::Catalan => (0.0, 4.0),
            DensitySpec::MarchenkoPastur { t } => {
                let t = to_f64(t);
                let s = t.sqrt();
                ((1.0 - s) * (1.0 - s), (1.0 + s) * (1.0 + s))
            }
            DensitySpec::W31 => (0.0, 27.0 / 4.0),
            DensitySpec::W31SymmetricAerated => {
                let s = 27.0f64.sqrt() / 2.0;
                (-s, s)
            }
            DensitySpec::R3Third { a } => (0.0, 3.0 * to_f64(a)),
            DensitySpec::Patalan { p } => {
                let p = to_f64(p);
                (0.0, p * p)
            }
        }
    }

    /// Point mass at zero (Marchenko-Pastur below rate one).
    pub fn atom(&self) -> f64 {
        match self {
            DensitySpec::MarchenkoPastur { t } => (1.0 - to_f64(t)).max(0.0),
            _ => 0.0,
        }
    }

    fn segments(&self) -> Vec<Segment> {
        let (lo, hi) = self.support();
        match self {
            DensitySpec::Catalan | DensitySpec::MarchenkoPastur { .. } => {
                vec![Segment { lo, hi, k_lo: 2, k_hi: 2 }]
            }
            DensitySpec::W31 => vec![Segment { lo, hi, k_lo: 3, k_hi: 2 }],
            // interior |x|^{-1/3} singularity at zero: split there
            DensitySpec::W31SymmetricAerated => vec![
                Segment { lo, hi: 0.0, k_lo: 2, k_hi: 3 },
                Segment { lo: 0.0, hi, k_lo: 3, k_hi: 2 },
            ],
            DensitySpec::R3Third { .. } => vec![Segment { lo, hi, k_lo: 3, k_hi: 3 }],
            DensitySpec::Patalan { p } => {
                let k = to_f64(p).abs() as u32;
                vec![Segment { lo, hi, k_lo: k, k_hi: k }]
            }
        }
    }

    /// The exact engine-side moments c_0..c_n this density must reproduce.
    pub fn exact_moments(&self, n: usize) -> Result<Vec<Rational>> {
        match self {
            DensitySpec::Catalan => {
                Ok(moments_recurrence(&ParamVec::from_ints(&[1]).unwrap(), n).terms)
            }
            DensitySpec::MarchenkoPastur { t } => {
                Ok(free_power_moments(&ParamVec::from_ints(&[1]).unwrap(), t, n)?.terms)
            }
            DensitySpec::W31 => (0..=n as u32)
                .map(|k| fuss_raney(&rat_int(3), &rat_int(1), k))
                .collect(),
            DensitySpec::W31SymmetricAerated => {
                Ok(moments_recurrence(&ParamVec::from_ints(&[0, 1]).unwrap(), n).terms)
            }
            DensitySpec::R3Third { a } => {
                let b = -(a * a) / rat_int(3);
                Ok(moments_r3(a, &b, n).terms)
            }
            DensitySpec::Patalan { p } => Ok(patalan_moments(p, n)?.terms),
        }
    }
}

/// Pointwise density value, for x strictly inside the support and away from
/// interior singularities.
pub fn density_eval(spec: &DensitySpec, x: f64) -> Result<f64> {
    spec.validate()?;
    let (lo, hi) = spec.support();
    if !(x > lo && x < hi) {
        return Err(Error::domain(format!(
            "x = {x} outside the open support ({lo}, {hi})"
        )));
    }
    if matches!(spec, DensitySpec::W31SymmetricAerated) && x == 0.0 {
        return Err(Error::domain("the aerated density is singular at x = 0"));
    }
    Ok(density_raw(spec, x))
}

fn density_raw(spec: &DensitySpec, x: f64) -> f64 {
    match spec {
        DensitySpec::Catalan => ((4.0 - x) / x).sqrt() / (2.0 * PI),
        DensitySpec::MarchenkoPastur { t } => {
            let t = to_f64(t);
            (4.0 * t - (x - 1.0 - t) * (x - 1.0 - t)).sqrt() / (2.0 * PI * x)
        }
        DensitySpec::W31 => w31(x),
        DensitySpec::W31SymmetricAerated => w31(x * x) * x.abs(),
        DensitySpec::R3Third { a } => {
            let a = to_f64(a);
            3.0f64.sqrt() * (3.0 * a * x * x - x * x * x).cbrt() / (2.0 * a * PI * x)
        }
        DensitySpec::Patalan { p } => {
            let p = to_f64(p);
            (p * p - x).powf(1.0 / p) * (PI / p).sin() / (p * PI * x.powf(1.0 / p))
        }
    }
}

fn w31(x: f64) -> f64 {
    let s = (1.0 - 4.0 * x / 27.0).sqrt();
    let top = 3.0 * (1.0 + s).powf(2.0 / 3.0) - 2.0f64.powf(2.0 / 3.0) * x.cbrt();
    let bottom = 2.0f64.powf(4.0 / 3.0) * 3.0f64.sqrt() * PI * x.powf(2.0 / 3.0)
        * (1.0 + s).cbrt();
    top / bottom
}

/// n-th moment by adaptive quadrature (plus the atom contribution), accurate
/// to `reltol` relative to max(1, |value|). Errors with the achieved estimate
/// when the panel subdivision cannot reach the target.
pub fn moment_by_quadrature(spec: &DensitySpec, n: u32, reltol: f64) -> Result<f64> {
    spec.validate()?;
    if !reltol.is_finite() || reltol <= 0.0 {
        return Err(Error::domain("quadrature tolerance must be positive"));
    }
    let integrand = |x: f64| x.powi(n as i32) * density_raw(spec, x);
    // transformed smooth pieces: two per segment, split at the midpoint
    let mut pieces: Vec<Box<dyn Fn(f64) -> f64 + '_>> = Vec::new();
    let mut spans: Vec<(f64, f64)> = Vec::new();
    for seg in spec.segments() {
        let mid = 0.5 * (seg.lo + seg.hi);
        let (lo, k1) = (seg.lo, seg.k_lo);
        let f = move |u: f64| integrand(lo + u.powi(k1 as i32)) * k1 as f64 * u.powi(k1 as i32 - 1);
        pieces.push(Box::new(f));
        spans.push((0.0, (mid - seg.lo).powf(1.0 / k1 as f64)));
        let (hi, k2) = (seg.hi, seg.k_hi);
        let g = move |v: f64| integrand(hi - v.powi(k2 as i32)) * k2 as f64 * v.powi(k2 as i32 - 1);
        pieces.push(Box::new(g));
        spans.push((0.0, (hi - mid).powf(1.0 / k2 as f64)));
    }

    let rough: f64 = pieces
        .iter()
        .zip(&spans)
        .map(|(f, &(a, b))| gauss15(f, a, b))
        .sum();
    let abs_tol = reltol * rough.abs().max(1.0);
    let per_piece = abs_tol / pieces.len() as f64;

    let mut total = spec.atom() * if n == 0 { 1.0 } else { 0.0 };
    let mut err_total = 0.0;
    for (f, &(a, b)) in pieces.iter().zip(&spans) {
        let mut budget = 4096u32;
        let (value, err) = adaptive(f, a, b, per_piece, 40, &mut budget);
        total += value;
        err_total += err;
    }
    if err_total > abs_tol {
        return Err(Error::Quadrature {
            achieved: err_total,
            requested: abs_tol,
        });
    }
    Ok(total)
}

fn adaptive<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
    budget: &mut u32,
) -> (f64, f64) {
    let whole = gauss15(f, a, b);
    let mid = 0.5 * (a + b);
    let halves = gauss15(f, a, mid) + gauss15(f, mid, b);
    let err = (whole - halves).abs();
    if err <= tol || depth == 0 || *budget == 0 {
        return (halves, err);
    }
    *budget -= 1;
    let (v1, e1) = adaptive(f, a, mid, tol / 2.0, depth - 1, budget);
    let (v2, e2) = adaptive(f, mid, b, tol / 2.0, depth - 1, budget);
    (v1 + v2, e1 + e2)
}

fn gauss15<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> f64 {
    let (nodes, weights) = gauss_rule();
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);
    nodes
        .iter()
        .zip(weights)
        .map(|(&x, &w)| w * f(center + half * x))
        .sum::<f64>()
        * half
}

/// 15-point Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton
/// iteration on the Legendre polynomial.
fn gauss_rule() -> (&'static [f64], &'static [f64]) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    let (n, w) = RULE.get_or_init(|| {
        const N: usize = 15;
        let mut nodes = vec![0.0; N];
        let mut weights = vec![0.0; N];
        for i in 0..N {
            let mut x = (PI * (i as f64 + 0.75) / (N as f64 + 0.5)).cos();
            for _ in 0..60 {
                let (p, dp) = legendre(N, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(N, x);
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (nodes, weights)
    });
    (n, w)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = pk;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Closed-form generating function C_{a,b}(z) for r = 3, branch per the sign
/// of a^2 + 3b and of b. a >= 0 and b != 0; the boundary a^2 + 3b = 0 uses
/// the cube-root form D = (1 - (1 - 3az)^{1/3})/a. For real z the branch
/// argument must lie in the range of the real inverse; complex z inside the
/// safe disc (no branch point closer than |z|) evaluates on principal
/// branches.
pub fn gf_closed_r3(a: &Rational, b: &Rational, z: Complex64) -> Result<Complex64> {
    if b.is_zero() {
        return Err(Error::domain("closed-form r = 3 needs b != 0"));
    }
    if a.is_negative() {
        return Err(Error::domain(
            "closed form is stated for a >= 0; reach a < 0 by the d = -1 dilation",
        ));
    }
    if z.norm() == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let disc = a * a + rat_int(3) * b;
    let af = to_f64(a);
    let bf = to_f64(b);
    if disc.is_zero() {
        // b = -a^2/3 with a > 0
        let inner = Complex64::new(1.0, 0.0) - 3.0 * af * z;
        let d = (Complex64::new(1.0, 0.0) - inner.cbrt()) / af;
        return Ok(d / z);
    }
    let discf = to_f64(&disc);
    let scale = discf.abs().powf(1.5);
    let u = (27.0 * bf * bf * z + Complex64::new(2.0 * af.powi(3) + 9.0 * af * bf, 0.0)) / scale;
    let phi = if disc.is_negative() {
        -2.0 * ((u / 2.0).asinh() / 3.0).sinh()
    } else if bf < 0.0 {
        // covers both the cosh region (u <= -2) and its continuation across
        // u in (-2, 2]; cos(acos(x)/3) is even in the acos branch, so the
        // principal value is continuous across the cut
        if z.im == 0.0 && u.re > 2.0 + 1e-12 {
            return Err(Error::domain(
                "branch argument outside the real inverse range (u > 2)",
            ));
        }
        2.0 * ((-u / 2.0).acos() / 3.0).cos()
    } else {
        if z.im == 0.0 && u.re.abs() > 2.0 + 1e-12 {
            return Err(Error::domain(
                "branch argument outside the real inverse range (|u| > 2)",
            ));
        }
        2.0 * ((u / 2.0).asin() / 3.0).sin()
    };
    let d = (phi * discf.abs().sqrt() - af) / (3.0 * bf);
    Ok(d / z)
}

/// Closed-form generating function for the special r = 4 subclass
/// b^3 = 4abe + 8e^2 (b, e != 0), with the sign-of-e branch.
pub fn gf_closed_r4_special(
    a: &Rational,
    b: &Rational,
    e: &Rational,
    z: Complex64,
) -> Result<Complex64> {
    check_r4_special_identity(a, b, e)?;
    if z.norm() == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let bf = to_f64(b);
    let ef = to_f64(e);
    let inner = Complex64::new(ef * ef, 0.0) - bf * bf * ef * z;
    if z.im == 0.0 && inner.re < 0.0 {
        return Err(Error::domain(
            "branch argument outside the real range (e^2 - b^2 e z < 0)",
        ));
    }
    let s1 = inner.sqrt();
    let radicand = Complex64::new(bf.powi(4) + 16.0 * bf * ef * ef, 0.0)
        - ef.signum() * 16.0 * bf * ef * s1;
    if z.im == 0.0 && radicand.re < 0.0 && radicand.im.abs() < 1e-12 {
        return Err(Error::domain(
            "branch argument outside the real range (negative radicand)",
        ));
    }
    let d = (-bf * bf + radicand.sqrt()) / (4.0 * bf * ef);
    Ok(d / z)
}

/// Residual of the special-subclass factorization of w - aw^2 - bw^3 - ew^4 - z
/// into two quadratics, evaluated branch-free via the difference of squares.
pub fn r4_special_factorization_residual(
    a: &Rational,
    b: &Rational,
    e: &Rational,
    w: Complex64,
    z: Complex64,
) -> Result<f64> {
    check_r4_special_identity(a, b, e)?;
    let af = to_f64(a);
    let bf = to_f64(b);
    let ef = to_f64(e);
    let lhs = w - af * w * w - bf * w * w * w - ef * w * w * w * w - z;
    let q = w * w + bf * w / (2.0 * ef) - Complex64::new(1.0 / bf, 0.0);
    let s_sq = (Complex64::new(ef * ef, 0.0) - bf * bf * ef * z) / (bf * bf * ef * ef);
    let rhs = -ef * (q * q - s_sq);
    Ok((lhs - rhs).norm())
}

fn check_r4_special_identity(a: &Rational, b: &Rational, e: &Rational) -> Result<()> {
    if b.is_zero() || e.is_zero() {
        return Err(Error::domain("the special r = 4 subclass needs b, e != 0"));
    }
    if b * b * b != rat_int(4) * a * b * e + rat_int(8) * e * e {
        return Err(Error::domain("b^3 = 4abe + 8e^2 does not hold"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn series_sum(coeffs: &[Rational], z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * z + to_f64(c);
        }
        acc
    }

    #[test]
    fn catalan_density_point() {
        // at x = 2 the density is 1/(2 pi)
        let v = density_eval(&DensitySpec::Catalan, 2.0).unwrap();
        assert!((v - 1.0 / (2.0 * PI)).abs() < 1e-15);
        assert!(density_eval(&DensitySpec::Catalan, 5.0).is_err());
    }

    #[test]
    fn mp_atom() {
        let spec = DensitySpec::MarchenkoPastur { t: rat_int(1) };
        assert_eq!(spec.atom(), 0.0);
        let spec = DensitySpec::MarchenkoPastur { t: rat(1, 2) };
        assert!((spec.atom() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn r3third_density_formula() {
        let spec = DensitySpec::R3Third { a: rat_int(1) };
        let x = 1.3f64;
        let expect = 3.0f64.sqrt() * (3.0 * x * x - x * x * x).cbrt() / (2.0 * PI * x);
        assert!((density_eval(&spec, x).unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn normalization_at_default_parameters() {
        let specs = vec![
            DensitySpec::Catalan,
            DensitySpec::MarchenkoPastur { t: rat(1, 2) },
            DensitySpec::MarchenkoPastur { t: rat_int(1) },
            DensitySpec::MarchenkoPastur { t: rat_int(2) },
            DensitySpec::W31,
            DensitySpec::W31SymmetricAerated,
            DensitySpec::R3Third { a: rat_int(1) },
            DensitySpec::R3Third { a: rat_int(2) },
            DensitySpec::Patalan { p: rat_int(2) },
            DensitySpec::Patalan { p: rat_int(3) },
            DensitySpec::Patalan { p: rat_int(-2) },
        ];
        for spec in specs {
            let mass = moment_by_quadrature(&spec, 0, 1e-9).unwrap();
            assert!((mass - 1.0).abs() < 1e-8, "{spec:?}: mass = {mass}");
            // nonnegative across the support
            let (lo, hi) = spec.support();
            for k in 1..40 {
                let x = lo + (hi - lo) * k as f64 / 40.0;
                if x == 0.0 {
                    continue;
                }
                let v = density_eval(&spec, x).unwrap();
                assert!(v >= 0.0, "{spec:?} at {x}: {v}");
            }
        }
    }

    #[test]
    fn catalan_moments_by_quadrature() {
        let exact = DensitySpec::Catalan.exact_moments(6).unwrap();
        for n in 0..=6u32 {
            let q = moment_by_quadrature(&DensitySpec::Catalan, n, 1e-9).unwrap();
            let e = to_f64(&exact[n as usize]);
            assert!((q - e).abs() <= 1e-7 * e.abs().max(1.0), "n={n}: {q} vs {e}");
        }
    }

    #[test]
    fn marchenko_pastur_unit_rate_moments_are_catalan() {
        let spec = DensitySpec::MarchenkoPastur { t: rat_int(1) };
        let exact = spec.exact_moments(10).unwrap();
        assert_eq!(exact[5], rat_int(42));
        for n in 0..=10u32 {
            let q = moment_by_quadrature(&spec, n, 1e-9).unwrap();
            let e = to_f64(&exact[n as usize]);
            assert!((q - e).abs() <= 1e-7 * e.abs().max(1.0), "n={n}: {q} vs {e}");
        }
    }

    #[test]
    fn aerated_odd_moments_vanish() {
        let q = moment_by_quadrature(&DensitySpec::W31SymmetricAerated, 3, 1e-9).unwrap();
        assert!(q.abs() < 1e-7, "{q}");
        let q = moment_by_quadrature(&DensitySpec::W31SymmetricAerated, 2, 1e-9).unwrap();
        assert!((q - 1.0).abs() < 1e-7, "{q}");
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(DensitySpec::parse("catalan").unwrap(), DensitySpec::Catalan);
        assert_eq!(
            DensitySpec::parse("mp(1/2)").unwrap(),
            DensitySpec::MarchenkoPastur { t: rat(1, 2) }
        );
        assert_eq!(
            DensitySpec::parse("patalan(-3)").unwrap(),
            DensitySpec::Patalan { p: rat_int(-3) }
        );
        assert!(DensitySpec::parse("patalan(1)").is_err());
        assert!(DensitySpec::parse("mp(0)").is_err());
        assert!(DensitySpec::parse("nope").is_err());
    }

    #[test]
    fn gf_r3_matches_series_on_the_real_axis() {
        // (1,1): safe radius from |z±(1,1)| = (2 ± ...)/27 ... just use 0.02
        let a = rat_int(1);
        let b = rat_int(1);
        let c = moments_r3(&a, &b, 25).terms;
        let z = Complex64::new(0.01, 0.0);
        let gf = gf_closed_r3(&a, &b, z).unwrap();
        let s = series_sum(&c, z);
        assert!((gf - s).norm() <= 1e-12, "{gf} vs {s}");
    }

    #[test]
    fn gf_r3_sinh_branch() {
        // a^2 + 3b < 0: the sequence is not positive definite but the
        // generating function is still analytic near 0
        let a = rat_int(0);
        let b = rat_int(-1);
        let c = moments_r3(&a, &b, 30).terms;
        for z in [Complex64::new(0.06, 0.0), Complex64::new(-0.03, 0.04)] {
            let gf = gf_closed_r3(&a, &b, z).unwrap();
            let s = series_sum(&c, z);
            assert!((gf - s).norm() <= 1e-10, "z={z}: {gf} vs {s}");
        }
        // matches the direct hyperbolic display
        let z = 0.05f64;
        let gf = gf_closed_r3(&a, &b, Complex64::new(z, 0.0)).unwrap();
        let arg = z * 27.0f64.sqrt() / 2.0;
        let direct = 2.0 * (arg.asinh() / 3.0).sinh() / (z * 3.0f64.sqrt());
        assert!((gf.re - direct).abs() < 1e-13);
    }

    #[test]
    fn gf_r3_aerated_display() {
        // C_{0,1}(z) = 2 sin(arcsin(z sqrt(27)/2)/3)/(z sqrt 3)
        let z = Complex64::new(0.05, 0.0);
        let gf = gf_closed_r3(&rat_int(0), &rat_int(1), z).unwrap();
        let arg = 0.05 * 27.0f64.sqrt() / 2.0;
        let direct = 2.0 * (arg.asin() / 3.0).sin() / (0.05 * 3.0f64.sqrt());
        assert!((gf.re - direct).abs() < 1e-13);
        assert!(gf.im.abs() < 1e-13);
    }

    #[test]
    fn gf_r3_continues_across_the_cosh_cos_seam() {
        // (3,-2): b < 0 < a^2 + 3b with a^2 + 4b > 0, so u(0) = 0 sits in the
        // cos region; (1.9 as 19/10, -1): a^2 + 4b < 0 puts u(0) below -2 in
        // the genuine cosh region. Both must track the series.
        for (a, b) in [(rat_int(3), rat_int(-2)), (rat(19, 10), rat_int(-1))] {
            let c = moments_r3(&a, &b, 30).terms;
            let r = {
                // half the smaller critical radius, numerically
                let v = ParamVec::new(vec![a.clone(), b.clone()]).unwrap();
                crate::positivity::safe_zone_radius(&v, 1e-12).unwrap()
            };
            for z in [
                Complex64::new(0.25 * r, 0.0),
                Complex64::new(-0.2 * r, 0.1 * r),
                Complex64::new(0.05 * r, -0.3 * r),
            ] {
                let gf = gf_closed_r3(&a, &b, z).unwrap();
                let s = series_sum(&c, z);
                assert!(
                    (gf - s).norm() <= 1e-9,
                    "({a},{b}) z={z}: {gf} vs {s}"
                );
            }
        }
    }

    #[test]
    fn gf_r3_boundary_cube_root() {
        let a = rat_int(1);
        let b = rat(-1, 3);
        let c = moments_r3(&a, &b, 25).terms;
        for z in [Complex64::new(0.04, 0.0), Complex64::new(0.01, -0.03)] {
            let gf = gf_closed_r3(&a, &b, z).unwrap();
            let s = series_sum(&c, z);
            assert!((gf - s).norm() <= 1e-10, "z={z}: {gf} vs {s}");
        }
    }

    #[test]
    fn gf_r3_limits_and_ranges() {
        assert_eq!(
            gf_closed_r3(&rat_int(1), &rat_int(1), Complex64::new(0.0, 0.0)).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        // far outside the inverse range on the real axis
        assert!(gf_closed_r3(&rat_int(0), &rat_int(1), Complex64::new(10.0, 0.0)).is_err());
        assert!(gf_closed_r3(&rat_int(1), &rat_int(0), Complex64::new(0.1, 0.0)).is_err());
    }

    #[test]
    fn gf_r4_special_matches_series() {
        let (a, b, e) = (rat_int(2), rat_int(-2), rat_int(1));
        let c = moments_recurrence(&ParamVec::from_ints(&[2, -2, 1]).unwrap(), 20).terms;
        let z = Complex64::new(0.02, 0.0);
        let gf = gf_closed_r4_special(&a, &b, &e, z).unwrap();
        let s = series_sum(&c, z);
        assert!((gf - s).norm() <= 1e-10, "{gf} vs {s}");
        // identity violated
        assert!(gf_closed_r4_special(&rat_int(1), &rat_int(1), &rat_int(1), z).is_err());
    }

    #[test]
    fn factorization_residual_small() {
        let (a, b, e) = (rat_int(2), rat_int(-2), rat_int(1));
        for (w, z) in [
            (Complex64::new(0.1, 0.05), Complex64::new(0.02, -0.01)),
            (Complex64::new(-0.3, 0.2), Complex64::new(0.01, 0.03)),
        ] {
            let r = r4_special_factorization_residual(&a, &b, &e, w, z).unwrap();
            assert!(r <= 1e-12, "residual {r}");
        }
    }
}
