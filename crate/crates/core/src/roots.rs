//! Numeric complex root finding: Aberth–Ehrlich simultaneous iteration on the
//! exact squarefree factors. Multiplicities come from the exact Yun
//! decomposition, so clustered iterates never degrade accuracy.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::to_f64;

pub type ComplexValue = Complex64;

const MAX_ITERATIONS: u32 = 200;

/// Default residual tolerance for root finding.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

/// All complex roots of `p` with multiplicity, sorted by real part then
/// imaginary part. Each returned root satisfies
/// `|p(root)| <= tol * sum_k |c_k| |root|^k`.
pub fn roots_complex(p: &Poly, tol: f64) -> Result<Vec<ComplexValue>> {
    if p.degree().unwrap_or(0) < 1 {
        return Err(Error::domain("root finding requires degree >= 1"));
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::domain("root-finding tolerance must be positive"));
    }
    let mut roots = Vec::with_capacity(p.degree().unwrap());
    for (factor, mult) in p.squarefree_decomposition() {
        let simple = simple_roots(&factor, tol)?;
        for r in simple {
            for _ in 0..mult {
                roots.push(r);
            }
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

/// Roots of a squarefree polynomial.
fn simple_roots(p: &Poly, tol: f64) -> Result<Vec<ComplexValue>> {
    let mut coeffs: Vec<f64> = p.coeffs().iter().map(to_f64).collect();
    // peel roots at zero before iterating
    let mut zeros = 0usize;
    while coeffs.first().is_some_and(|c| *c == 0.0) {
        coeffs.remove(0);
        zeros += 1;
    }
    let mut out = vec![Complex64::zero(); zeros];
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return Ok(out);
    }
    if degree == 1 {
        out.push(Complex64::new(-coeffs[0] / coeffs[1], 0.0));
        return Ok(out);
    }
    out.extend(aberth(&coeffs, tol)?);
    Ok(out)
}

fn horner(coeffs: &[f64], x: Complex64) -> (Complex64, Complex64) {
    let mut val = Complex64::zero();
    let mut deriv = Complex64::zero();
    for &c in coeffs.iter().rev() {
        deriv = deriv * x + val;
        val = val * x + c;
    }
    (val, deriv)
}

/// Backward-error scale of p at x: sum_k |c_k| |x|^k.
fn residual_scale(coeffs: &[f64], x: Complex64) -> f64 {
    let ax = x.norm();
    let mut scale = 0.0;
    let mut pw = 1.0;
    for &c in coeffs {
        scale += c.abs() * pw;
        pw *= ax;
    }
    scale.max(f64::MIN_POSITIVE)
}

fn aberth(coeffs: &[f64], tol: f64) -> Result<Vec<Complex64>> {
    let degree = coeffs.len() - 1;
    // initial guesses on a perturbed circle; the angular offset breaks the
    // real-axis symmetry that can stall the iteration
    let radius = (coeffs[0].abs() / coeffs[degree].abs())
        .powf(1.0 / degree as f64)
        .max(0.5);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / degree as f64 + 0.43;
            let r = radius * (1.0 + 0.08 * (k as f64 + 1.0) / degree as f64);
            Complex64::from_polar(r, theta)
        })
        .collect();

    let mut iterations = 0;
    for it in 0..MAX_ITERATIONS {
        iterations = it + 1;
        let mut max_step = 0.0f64;
        for i in 0..degree {
            let (val, deriv) = horner(coeffs, z[i]);
            if val.norm() == 0.0 {
                continue;
            }
            let newton = if deriv.norm() == 0.0 {
                // nudge off a critical point
                Complex64::new(tol.sqrt(), tol.sqrt())
            } else {
                val / deriv
            };
            let mut repulsion = Complex64::zero();
            for j in 0..degree {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        repulsion += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() == 0.0 { newton } else { newton / denom };
            z[i] -= step;
            let rel = step.norm() / z[i].norm().max(1.0);
            max_step = max_step.max(rel);
        }
        if max_step <= tol * 0.01 {
            break;
        }
    }

    let mut worst = 0.0f64;
    for &zi in &z {
        let (val, _) = horner(coeffs, zi);
        worst = worst.max(val.norm() / residual_scale(coeffs, zi));
    }
    if worst > tol {
        return Err(Error::RootFinding {
            worst_residual: worst,
            iterations,
        });
    }
    Ok(z)
}
