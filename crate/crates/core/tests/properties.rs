//! Cross-method and structural invariants, exercised over random rational
//! inputs. These are the properties the whole library leans on: independent
//! computation routes must agree exactly, certificates must re-verify, and
//! functional equations must hold as truncated-series identities.

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use catrel::convolution::{alpha_pair, mono_conv};
use catrel::cumulants::{
    cumulants, cumulants_r3_binet, free_power_moments, free_power_moments_cumulant_path,
    moments_from_cumulants,
};
use catrel::families::{fuss_raney, mono_power_param_vec};
use catrel::hankel::hankel_dets;
use catrel::moments::{moments_r3, moments_recurrence, moments_via_reversion};
use catrel::oracle::{labeled_path_count, weighted_tree_sum};
use catrel::params::ParamVec;
use catrel::poly::Poly;
use catrel::positivity::{
    criterion_r3, derivative_real_rooted, necessary_r4_value, nset_real, special_r4,
    sufficient_r4, sym_r7_alt_holds, sym_r7_value, verdict, z_pm, Certificate, Status,
    DEFAULT_HANKEL_DEPTH, DEFAULT_NSET_TOL,
};
use catrel::rational::{factorial, pow_rational, rat, rat_int, Rational};
use catrel::roots::roots_complex;
use catrel::series::TruncatedSeries;
use catrel::sturm::real_root_count;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn arb_nonzero_rational() -> impl Strategy<Value = Rational> {
    arb_rational().prop_filter("nonzero", |r| !r.is_zero())
}

/// Vectors with entries in [-3, 3], denominators <= 4, trailing entry
/// nonzero, degree r in 2..=max_r.
fn arb_param_vec(max_r: usize) -> impl Strategy<Value = ParamVec> {
    (2..=max_r).prop_flat_map(|r| {
        (
            proptest::collection::vec(arb_rational(), r - 2),
            arb_nonzero_rational(),
        )
            .prop_map(|(mut head, last)| {
                head.push(last);
                ParamVec::new(head).expect("last entry nonzero")
            })
    })
}

fn moment_series(a: &ParamVec, order: usize) -> TruncatedSeries {
    let c = moments_recurrence(a, order.saturating_sub(1));
    let mut coeffs = vec![Rational::zero()];
    coeffs.extend(c.terms);
    TruncatedSeries::new(coeffs, order)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn triple_agreement(a in arb_param_vec(6)) {
        let rec = moments_recurrence(&a, 20);
        let rev = moments_via_reversion(&a, 20);
        prop_assert_eq!(&rec.terms, &rev.terms);
        if let Some((x, y)) = a.as_r3() {
            let closed = moments_r3(&x, &y, 20);
            prop_assert_eq!(&rec.terms, &closed.terms);
        }
    }

    #[test]
    fn dilation_homogeneity(a in arb_param_vec(5), d in arb_nonzero_rational()) {
        let b = a.dilate(&d).unwrap();
        let ca = moments_recurrence(&a, 15);
        let cb = moments_recurrence(&b, 15);
        for n in 0..=15 {
            prop_assert_eq!(&cb.terms[n], &(&ca.terms[n] * pow_rational(&d, n as u32)));
        }
    }

    #[test]
    fn cumulant_round_trip(a in arb_param_vec(6)) {
        let k = cumulants(&a, 14);
        let m = moments_from_cumulants(&k, 14).unwrap();
        prop_assert_eq!(m.terms, moments_recurrence(&a, 14).terms);
    }

    #[test]
    fn free_power_paths_agree(a in arb_param_vec(5), tn in 1i64..=6, td in 1i64..=3) {
        let t = rat(tn, td);
        let x = free_power_moments(&a, &t, 12).unwrap();
        let y = free_power_moments_cumulant_path(&a, &t, 12).unwrap();
        prop_assert_eq!(&x.terms, &y.terms);
        if t.is_one() {
            prop_assert_eq!(&x.terms, &moments_recurrence(&a, 12).terms);
        }
    }

    #[test]
    fn fibonacci_style_cumulant_recurrence(x in arb_rational(), y in arb_nonzero_rational()) {
        let a = ParamVec::new(vec![x.clone(), y.clone()]).unwrap();
        let k = cumulants(&a, 20);
        // kappa_0 = 1 by convention, kappa_1 = a
        prop_assert_eq!(k.kappa(1), &x);
        prop_assert_eq!(k.kappa(2), &(&x * &x + &y));
        for n in 3..=20 {
            prop_assert_eq!(
                k.kappa(n),
                &(&x * k.kappa(n - 1) + &y * k.kappa(n - 2))
            );
        }
    }

    #[test]
    fn binet_matches_recurrence_exactly(x in arb_rational(), y in arb_nonzero_rational()) {
        let disc = &x * &x + rat_int(4) * &y;
        prop_assume!(disc.is_positive());
        let a = ParamVec::new(vec![x.clone(), y.clone()]).unwrap();
        let k = cumulants(&a, 12);
        for n in 1..=12u32 {
            let binet = cumulants_r3_binet(&x, &y, n).unwrap();
            prop_assert_eq!(&binet.kappa, k.kappa(n as usize));
        }
    }

    #[test]
    fn third_power_family_closed_form(x in arb_nonzero_rational()) {
        // c_n(a, -a^2/3) = a^n/(n+1)! * prod_{i=1}^{n} (3i - 1)
        let b = -(&x * &x) / rat_int(3);
        let m = moments_r3(&x, &b, 12);
        for n in 0..=12u32 {
            let mut prod = Rational::one();
            for i in 1..=n {
                prod *= rat_int(3 * i as i64 - 1);
            }
            let expect = pow_rational(&x, n)
                * prod
                / Rational::from_integer(factorial(n + 1));
            prop_assert_eq!(&m.terms[n as usize], &expect);
        }
    }

    #[test]
    fn quarter_power_family_closed_form(x in arb_nonzero_rational()) {
        // c_n(a, -a^2/4) = (a/2)^n C(3n+2, n) * 2/(3n+2)
        let b = -(&x * &x) / rat_int(4);
        let m = moments_r3(&x, &b, 12);
        let half = &x / rat_int(2);
        for n in 0..=12u32 {
            let expect = pow_rational(&half, n)
                * fuss_raney(&rat_int(3), &rat_int(2), n).unwrap();
            prop_assert_eq!(&m.terms[n as usize], &expect);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_is_associative(
        p in proptest::collection::vec(arb_rational(), 2..=4),
        q in proptest::collection::vec(arb_rational(), 2..=4),
        r in proptest::collection::vec(arb_rational(), 2..=4),
    ) {
        let p = Poly::new(p);
        let q = Poly::new(q);
        let r = Poly::new(r);
        prop_assert_eq!(p.compose(&q).compose(&r), p.compose(&q.compose(&r)));
    }

    #[test]
    fn reversion_round_trip(
        c2 in arb_rational(), c3 in arb_rational(), c4 in arb_rational(),
        c1 in arb_nonzero_rational(),
    ) {
        let s = TruncatedSeries::new(vec![Rational::zero(), c1, c2, c3, c4], 12);
        let w = s.reversion().unwrap();
        prop_assert_eq!(s.compose(&w).unwrap(), TruncatedSeries::identity(12));
    }

    #[test]
    fn z_product_identity(x in arb_rational(), y in arb_nonzero_rational()) {
        let (zm, zp) = z_pm(&x, &y).unwrap();
        let prod = zm.mul(&zp);
        let expect = -(&x * &x + rat_int(4) * &y) / (rat_int(27) * &y * &y);
        prop_assert_eq!(prod.as_rational(), Some(&expect));
    }

    #[test]
    fn alpha_pair_identity_and_composition(
        x in arb_nonzero_rational(),
        y in arb_nonzero_rational(),
    ) {
        let v = alpha_pair(&x, &y).unwrap();
        let composed = mono_conv(
            &ParamVec::new(vec![x]).unwrap(),
            &ParamVec::new(vec![y]).unwrap(),
        );
        prop_assert_eq!(&v, &composed);
        let (a, b, e) = v.as_r4().expect("alpha pairs have r = 4");
        prop_assert_eq!(&b * &b * &b, rat_int(4) * &a * &b * &e + rat_int(8) * &e * &e);
    }

    #[test]
    fn special_subclass_converse_construction(
        x in arb_nonzero_rational(),
        y in arb_nonzero_rational(),
    ) {
        // a = (3x^2+y^2)/(2x(x^2+y^2)), b = -1/(x^2+y^2), e = 1/(4x(x^2+y^2))
        let norm = &x * &x + &y * &y;
        let a = (rat_int(3) * &x * &x + &y * &y) / (rat_int(2) * &x * &norm);
        let b = -Rational::one() / &norm;
        let e = Rational::one() / (rat_int(4) * &x * &norm);
        prop_assert_eq!(&b * &b * &b, rat_int(4) * &a * &b * &e + rat_int(8) * &e * &e);
        prop_assert!(special_r4(&a, &b, &e).unwrap().is_some());
    }

    #[test]
    fn r4_real_rootedness_criterion_matches_sturm(
        x in arb_rational(),
        y in arb_rational(),
        z in arb_nonzero_rational(),
    ) {
        let v = ParamVec::new(vec![x.clone(), y.clone(), z.clone()]).unwrap();
        let sturm_says = derivative_real_rooted(&v);
        prop_assert_eq!(sufficient_r4(&x, &y, &z).unwrap(), sturm_says);
    }

    #[test]
    fn sym_r7_forms_equivalent(
        x in arb_rational(),
        y in arb_rational(),
        z in arb_nonzero_rational(),
    ) {
        prop_assert_eq!(!sym_r7_value(&x, &y, &z).is_negative(), sym_r7_alt_holds(&x, &y, &z));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn numeric_nset_agrees_with_r3_criterion(x in arb_rational(), y in arb_nonzero_rational()) {
        let a = ParamVec::new(vec![x.clone(), y.clone()]).unwrap();
        let numeric = nset_real(&a, DEFAULT_NSET_TOL).unwrap();
        prop_assert_eq!(numeric, criterion_r3(&x, &y));
    }

    #[test]
    fn sturm_implies_real_nset(a in arb_param_vec(5)) {
        if derivative_real_rooted(&a) {
            prop_assert!(nset_real(&a, DEFAULT_NSET_TOL).unwrap());
        }
    }

    #[test]
    fn refutations_carry_exact_witnesses(a in arb_param_vec(4)) {
        let v = verdict(&a, DEFAULT_HANKEL_DEPTH, DEFAULT_NSET_TOL).unwrap();
        if v.status == Status::NotPositiveDefinite {
            prop_assert!(v.rigorous);
            match v.certificate.expect("refutations always carry a certificate") {
                Certificate::HankelNegative { order, determinant } => {
                    let c = moments_recurrence(&a, 2 * order - 2);
                    let dets = hankel_dets(&c.terms, order).unwrap();
                    prop_assert!(determinant.is_negative());
                    prop_assert_eq!(&dets[order - 1], &determinant);
                }
                Certificate::R3CriterionViolated => {
                    let (x, y) = a.as_r3().unwrap();
                    prop_assert!((&x * &x + rat_int(3) * &y).is_negative());
                }
                Certificate::NecessaryR4Violated => {
                    let (x, y, z) = a.as_r4().unwrap();
                    prop_assert!(necessary_r4_value(&x, &y, &z).is_negative());
                }
                other => prop_assert!(false, "unexpected refutation {other:?}"),
            }
        }
    }

    #[test]
    fn monotonic_convolution_functional_equation(
        a1 in arb_param_vec(3),
        a2 in arb_param_vec(3),
    ) {
        let composed = mono_conv(&a1, &a2);
        let lhs = moment_series(&composed, 15);
        let d1 = moment_series(&a1, 15);
        let d2 = moment_series(&a2, 15);
        prop_assert_eq!(lhs, d1.compose(&d2).unwrap());
    }

    #[test]
    fn mono_conv_associative(
        a in arb_param_vec(3),
        b in arb_param_vec(3),
        c in arb_param_vec(3),
    ) {
        prop_assert_eq!(
            mono_conv(&mono_conv(&a, &b), &c),
            mono_conv(&a, &mono_conv(&b, &c))
        );
    }

    #[test]
    fn tree_oracle_matches_engine(a in arb_param_vec(5), n in 0usize..=8) {
        let engine = moments_recurrence(&a, n);
        prop_assert_eq!(weighted_tree_sum(&a, n).unwrap(), engine.terms[n].clone());
    }

    #[test]
    fn path_oracle_matches_tree_oracle(
        cs in proptest::collection::vec(0i64..=2, 1..=3),
        n in 0usize..=6,
    ) {
        prop_assume!(*cs.last().unwrap() != 0);
        let a = ParamVec::from_ints(&cs).unwrap();
        let paths = labeled_path_count(&a, n).unwrap();
        prop_assert_eq!(
            Rational::from_integer(paths),
            weighted_tree_sum(&a, n).unwrap()
        );
    }
}

// Construct polynomials with known, well-separated roots and check the
// Sturm count against the numeric finder's classification.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sturm_count_matches_numeric_classification(
        real_roots in proptest::collection::btree_set(-6i64..=6, 0..=4),
        complex_pairs in proptest::collection::btree_set((1i64..=4, 1i64..=5), 0..=2),
    ) {
        // complex pair (p, q): factor w^2 + pw + q(+p^2/4) keeps disc < 0
        prop_assume!(!real_roots.is_empty() || !complex_pairs.is_empty());
        let mut p = Poly::one();
        for r in &real_roots {
            p = &p * &Poly::new(vec![rat_int(-r), Rational::one()]);
        }
        for (lin, extra) in &complex_pairs {
            // w^2 + lin*w + (lin^2/4 + extra): discriminant -4*extra < 0
            let c0 = rat(lin * lin, 4) + rat_int(*extra);
            p = &p * &Poly::new(vec![c0, rat_int(*lin), Rational::one()]);
        }
        let counts = real_root_count(&p).unwrap();
        prop_assert_eq!(counts.real, real_roots.len());
        let numeric = roots_complex(&p, 1e-12).unwrap();
        let numeric_real = numeric.iter().filter(|z| z.im.abs() <= 1e-7).count();
        prop_assert_eq!(numeric_real, real_roots.len());
        prop_assert_eq!(numeric.len(), p.degree().unwrap());
    }
}

#[test]
fn aerated_r3_families_match_raney() {
    let plus = moments_recurrence(&ParamVec::from_ints(&[0, 1]).unwrap(), 20);
    let minus = moments_recurrence(&ParamVec::from_ints(&[0, -1]).unwrap(), 20);
    for n in 0..=10u32 {
        let f = fuss_raney(&rat_int(3), &rat_int(1), n).unwrap();
        assert_eq!(plus.terms[2 * n as usize], f);
        let sign = if n % 2 == 0 { rat_int(1) } else { rat_int(-1) };
        assert_eq!(minus.terms[2 * n as usize], sign * &f);
        if n >= 1 {
            assert_eq!(plus.terms[2 * n as usize - 1], rat_int(0));
            assert_eq!(minus.terms[2 * n as usize - 1], rat_int(0));
        }
    }
}

#[test]
fn symmetric_r5_example_matches_raney() {
    let c = moments_recurrence(&ParamVec::from_ints(&[0, 2, 0, -1]).unwrap(), 16);
    for n in 0..=8u32 {
        let f = fuss_raney(&rat_int(5), &rat_int(2), n).unwrap();
        assert_eq!(c.terms[2 * n as usize], f, "n = {n}");
        if n >= 1 {
            assert_eq!(c.terms[2 * n as usize - 1], rat_int(0));
        }
    }
}

#[test]
fn mono_powers_are_iterated_convolutions() {
    let one = ParamVec::from_ints(&[1]).unwrap();
    let mut acc = one.clone();
    for k in 1..=5u32 {
        assert_eq!(mono_power_param_vec(k).unwrap(), acc);
        acc = mono_conv(&acc, &one);
    }
}

#[test]
fn convolution_of_positive_definite_stays_positive_definite_at_desk_scale() {
    // Corollary-level check: exact-PD inputs compose to nonnegative Hankels
    let pairs = [
        (ParamVec::from_ints(&[1]).unwrap(), ParamVec::from_ints(&[1, 2]).unwrap()),
        (ParamVec::from_ints(&[1, 1]).unwrap(), ParamVec::from_ints(&[2, -1]).unwrap()),
        (ParamVec::from_ints(&[2, -2, 1]).unwrap(), ParamVec::from_ints(&[1]).unwrap()),
    ];
    for (a1, a2) in pairs {
        let v1 = verdict(&a1, DEFAULT_HANKEL_DEPTH, DEFAULT_NSET_TOL).unwrap();
        let v2 = verdict(&a2, DEFAULT_HANKEL_DEPTH, DEFAULT_NSET_TOL).unwrap();
        assert_eq!(v1.status, Status::PositiveDefinite);
        assert!(v1.rigorous);
        assert_eq!(v2.status, Status::PositiveDefinite);
        assert!(v2.rigorous);
        let composed = mono_conv(&a1, &a2);
        let c = moments_recurrence(&composed, 18);
        let dets = hankel_dets(&c.terms, 10).unwrap();
        assert!(
            dets.iter().all(|d| !d.is_negative()),
            "negative Hankel for {a1} ▷ {a2}"
        );
    }
}

#[test]
fn critical_set_cardinality_bound() {
    for cs in [&[1][..], &[1, 1][..], &[2, -2, 1][..], &[2, 0, -5, 6, -2][..]] {
        let a = ParamVec::from_ints(cs).unwrap();
        let set = catrel::positivity::critical_values(&a, DEFAULT_NSET_TOL).unwrap();
        assert!(set.distinct_z().len() < a.r());
    }
}
