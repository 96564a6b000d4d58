use casimir_core::exactnum::rational::{int, rat, to_f64};
use casimir_core::exactnum::{parse_rational, Surd};
use casimir_core::mpoly::{real_roots, resultant_in, MultiPoly, RootOptions, UniPoly, Var};
use casimir_core::oracle::SymTridiagonal;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = (i64, i64)> {
    (-40i64..=40, 1i64..=12)
}

fn surd_in(radicand: i64) -> impl Strategy<Value = Surd> {
    (small_rat(), small_rat()).prop_map(move |((an, ad), (bn, bd))| {
        Surd::new(rat(an, ad), rat(bn, bd), &int(radicand)).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (Surd, Surd, Surd)> {
    prop_oneof![Just(2i64), Just(3), Just(5), Just(7)]
        .prop_flat_map(|r| (surd_in(r), surd_in(r), surd_in(r)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn surd_field_axioms((x, y, z) in triple()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x - &x, Surd::zero());
        if !y.is_zero() {
            prop_assert_eq!(&(&x / &y) * &y, x.clone());
        }
        prop_assert_eq!(Surd::from_rational(x.norm()), &x * &x.conj());
    }

    #[test]
    fn surd_sign_and_float_agree((x, y, _z) in triple()) {
        let d = &x - &y;
        let f = x.to_f64() - y.to_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(d.signum(), if f > 0.0 { 1 } else { -1 });
        }
        prop_assert!((d.to_f64() - f).abs() <= 1e-12 * (x.to_f64().abs() + y.to_f64().abs() + 1.0));
    }

    #[test]
    fn rational_display_round_trips((n, d) in (-10_000i64..=10_000, 1i64..=999)) {
        let q = rat(n, d);
        prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn sturm_counts_distinct_rational_roots(
        roots in proptest::collection::vec(small_rat(), 1..6),
        c in 1i64..=9,
    ) {
        // prod (u - r_i) * (u^2 + c): the quadratic has no real roots
        let mut p = UniPoly::new(Var::U, vec![Surd::from_int(c), Surd::zero(), Surd::one()]);
        for &(n, d) in &roots {
            p = p.mul(&UniPoly::new(Var::U, vec![Surd::from_rational(-rat(n, d)), Surd::one()]));
        }
        let found = real_roots(&p, &RootOptions::default()).unwrap();
        let mut want: Vec<_> = roots.iter().map(|&(n, d)| rat(n, d)).collect();
        want.sort();
        want.dedup();
        prop_assert_eq!(found.len(), want.len());
        for (r, w) in found.iter().zip(&want) {
            prop_assert_eq!(r.exact.clone(), Some(Surd::from_rational(w.clone())));
        }
        let total: usize = found.iter().map(|r| r.multiplicity).sum();
        prop_assert_eq!(total, roots.len());
    }

    #[test]
    fn resultant_of_linear_factor_evaluates(a in small_rat(), b in small_rat(), c in small_rat()) {
        let x = MultiPoly::var(Var::X);
        let k = |(n, d): (i64, i64)| MultiPoly::constant(Surd::from_rational(rat(n, d)));
        let f = &(&x - &k(a)) * &(&x - &k(b));
        let g = &x - &k(c);
        let res = resultant_in(&f, &g, Var::X).unwrap().constant_value().unwrap();
        let want = (rat(c.0, c.1) - rat(a.0, a.1)) * (rat(c.0, c.1) - rat(b.0, b.1));
        prop_assert_eq!(res.abs(), Surd::from_rational(want).abs());
    }

    #[test]
    fn tridiagonal_spectrum_is_consistent(
        diag in proptest::collection::vec(-5.0f64..5.0, 2..24),
        seed in proptest::collection::vec(-2.0f64..2.0, 23),
    ) {
        let n = diag.len();
        let off: Vec<f64> = seed[..n - 1].iter().map(|v| if v.abs() < 1e-3 { 1e-3 } else { *v }).collect();
        let t = SymTridiagonal::new(diag.clone(), off).unwrap();
        let eig = t.lowest(n).unwrap();
        prop_assert!(eig.windows(2).all(|w| w[0] <= w[1] + 1e-12));
        let trace: f64 = diag.iter().sum();
        prop_assert!((eig.iter().sum::<f64>() - trace).abs() < 1e-9 * (n as f64 + trace.abs()));
        for (k, e) in eig.iter().enumerate() {
            prop_assert!(t.count_below(*e - 1e-9) <= k);
            prop_assert!(t.count_below(*e + 1e-9) > k);
        }
    }
}

#[test]
fn float_conversion_is_correctly_rounded() {
    assert_eq!(to_f64(&rat(1, 3)), 1.0 / 3.0);
    assert_eq!(to_f64(&rat(-7, 10)), -0.7);
}
