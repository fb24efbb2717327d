//! Generalized Catalan sequences c_n(a_2, ..., a_r) in exact rational
//! arithmetic: moment engines with independent cross-checks, free cumulants
//! and convolution powers, monotonic convolution, positivity analysis with
//! machine-checkable certificates, explicit densities verified by quadrature,
//! and integer-sequence fixtures.
//!
//! The sequence attached to a parameter vector a = (a_2, ..., a_r) is defined
//! by c_0 = 1 and
//!
//! ```text
//! c_n = sum_{j=2}^{r} a_j sum_{u_1+...+u_j = n-j+1} c_{u_1} ... c_{u_j}
//! ```
//!
//! equivalently its generating function D(z) = z + c_1 z^2 + ... is the
//! compositional inverse of P_a(w) = w - a_2 w^2 - ... - a_r w^r. Everything
//! downstream (cumulants, convolutions, positivity) is phrased in terms of
//! P_a.
//!
//! Exact arithmetic is the rule: fixtures must match bit for bit, and
//! positivity verdicts carry exact certificates whenever one exists. Floating
//! point appears only in the numeric root finder, the quadrature layer and
//! the closed-form generating-function evaluations, all of which are
//! cross-checked against exact values.
//!
//! The `parallel` feature (on by default) runs grid sweeps and batch maps on
//! a rayon pool; disabling it swaps in sequential fallbacks with identical
//! output.
//!
//! ```
//! use catrel::moments::moments_recurrence;
//! use catrel::params::ParamVec;
//! use catrel::positivity::{verdict, Certificate, Status};
//! use catrel::rational::rat_int;
//!
//! // a = (1) is the Catalan sequence
//! let catalan = ParamVec::from_ints(&[1])?;
//! let c = moments_recurrence(&catalan, 6);
//! assert_eq!(c.terms, [1, 1, 2, 5, 14, 42, 132].map(rat_int));
//!
//! // (1, 1, -1) is positive definite with an exact certificate
//! let a = ParamVec::from_ints(&[1, 1, -1])?;
//! let v = verdict(&a, 12, 1e-9)?;
//! assert_eq!(v.status, Status::PositiveDefinite);
//! assert_eq!(v.certificate, Some(Certificate::SturmAllRealRoots));
//! # Ok::<(), catrel::Error>(())
//! ```

pub mod convolution;
pub mod cumulants;
pub mod density;
pub mod error;
pub mod families;
pub mod hankel;
pub mod moments;
pub mod oeis;
pub mod oracle;
pub mod par;
pub mod params;
pub mod poly;
pub mod positivity;
pub mod rational;
pub mod roots;
pub mod series;
pub mod sturm;
pub mod surd;

pub use error::{Error, Result};
pub use moments::{MomentMethod, MomentTable};
pub use params::ParamVec;
pub use poly::Poly;
pub use rational::{Int, Rational};
pub use roots::ComplexValue;
pub use series::TruncatedSeries;
pub use surd::Surd;
