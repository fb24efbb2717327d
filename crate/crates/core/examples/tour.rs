//! A quick tour of the library: moments, cumulants, convolution, positivity.
//! Run with `cargo run -p catrel --example tour`.

use catrel::convolution::mono_conv;
use catrel::cumulants::{cumulants, free_power_moments};
use catrel::moments::moments_recurrence;
use catrel::params::ParamVec;
use catrel::positivity::{verdict, DEFAULT_HANKEL_DEPTH, DEFAULT_NSET_TOL};
use catrel::rational::{format_rational, rat_int};

fn show(label: &str, terms: &[catrel::Rational]) {
    let rendered: Vec<String> = terms.iter().map(format_rational).collect();
    println!("{label}: {}", rendered.join(", "));
}

fn main() -> catrel::Result<()> {
    let catalan = ParamVec::from_ints(&[1])?;
    show("c_n(1)", &moments_recurrence(&catalan, 9).terms);

    let a = ParamVec::from_ints(&[1, 1])?;
    show("c_n(1,1)", &moments_recurrence(&a, 9).terms);
    show("kappa_n(1,1)", &cumulants(&a, 9).terms);

    // free square of the Catalan law: large Schroeder numbers
    let schroeder = free_power_moments(&catalan, &rat_int(2), 9)?;
    show("c_n^(boxplus 2)(1)", &schroeder.terms);

    // monotonic square of the Catalan vector
    let squared = mono_conv(&catalan, &catalan);
    println!("(1) |> (1) = ({squared})");
    show("its moments", &moments_recurrence(&squared, 9).terms);

    for coeffs in [&[1i64, 1, -1][..], &[2, -2, 1][..], &[-1, -1][..], &[1, 0, 1][..]] {
        let v = ParamVec::from_ints(coeffs)?;
        let verdict = verdict(&v, DEFAULT_HANKEL_DEPTH, DEFAULT_NSET_TOL)?;
        println!("verdict({v}): {:?} via {:?}", verdict.status, verdict.certificate);
    }
    Ok(())
}
