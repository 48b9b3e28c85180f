use apostol::apostol::{distribution_rhs, euler_numbers, euler_numbers_series_oracle, euler_polynomial};
use apostol::integral::parse_integrand;
use apostol::padic::{PadicContext, PadicNumber};
use apostol::rational::{format_rational, int, parse_rational, rational_valuation};
use apostol::Rational;
use proptest::prelude::*;

fn lambda() -> impl Strategy<Value = Rational> {
    (-30i64..30, 1i64..30)
        .prop_map(|(a, b)| Rational::new(a.into(), b.into()))
        .prop_filter("λ = -1 is a pole", |l| *l != int(-1))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-500i64..500, 1i64..200).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11])
}

fn unit_of(p: u64) -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("unit", move |r| rational_valuation(r, p) == Some(0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn recurrence_agrees_with_series(l in lambda(), n in 0usize..16) {
        prop_assert_eq!(euler_numbers(&l, n).unwrap().values, euler_numbers_series_oracle(&l, n).unwrap().values);
    }

    #[test]
    fn polynomial_translation(l in lambda(), n in 0usize..10, x in small_rational()) {
        // λ E_n(x + 1) + E_n(x) = 2 x^n
        let a = euler_polynomial(&l, n, &(x.clone() + int(1))).unwrap();
        let b = euler_polynomial(&l, n, &x).unwrap();
        let xn = (0..n).fold(int(1), |acc, _| acc * x.clone());
        prop_assert_eq!(l * a + b, int(2) * xn);
    }

    #[test]
    fn distribution_for_odd_d(l in lambda(), n in 0usize..8, d in prop::sample::select(vec![1u64, 3, 5]), x in small_rational()) {
        prop_assert_eq!(euler_polynomial(&l, n, &x).unwrap(), distribution_rhs(&l, n, d, &x).unwrap());
    }

    #[test]
    fn rational_text_round_trip(r in small_rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn padic_ring_laws(p in prime(), a in small_rational(), b in small_rational(), c in small_rational()) {
        let ctx = PadicContext::new(p, 10).unwrap();
        let (x, y, z) = (ctx.from_rational(&a), ctx.from_rational(&b), ctx.from_rational(&c));
        let exact = ctx.from_rational(&(a.clone() * (b.clone() + c.clone())));
        let lhs = x.clone() * (y.clone() + z.clone());
        let rhs = x.clone() * y.clone() + x * z;
        prop_assert!(lhs.agreement(&rhs) >= lhs.absolute_precision().min(rhs.absolute_precision()));
        prop_assert!(lhs.agreement(&exact) >= lhs.absolute_precision().min(exact.absolute_precision()));
    }

    #[test]
    fn padic_unit_inverse(p in prime(), a in unit_of(3 * 5 * 7 * 11)) {
        let ctx = PadicContext::new(p, 8).unwrap();
        let x = ctx.from_rational(&a);
        let inv = x.inverse().unwrap();
        prop_assert_eq!(x * inv, ctx.one());
        prop_assert_eq!(ctx.from_rational(&a).inverse().unwrap(), ctx.from_rational(&(int(1) / a)));
    }

    #[test]
    fn padic_truncation_is_stable(p in prime(), a in small_rational(), m in 2u32..8) {
        let small = PadicContext::new(p, m).unwrap().from_rational(&a);
        let big = PadicContext::new(p, m + 4).unwrap().from_rational(&a);
        prop_assert_eq!(big.truncate(small.absolute_precision()), small);
    }

    #[test]
    fn padic_json_round_trip(p in prime(), a in small_rational()) {
        let x = PadicContext::new(p, 6).unwrap().from_rational(&a);
        prop_assert_eq!(PadicNumber::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn valuation_is_additive(p in prime(), a in small_rational(), b in small_rational()) {
        prop_assume!(a != int(0) && b != int(0));
        let va = rational_valuation(&a, p).unwrap();
        let vb = rational_valuation(&b, p).unwrap();
        prop_assert_eq!(rational_valuation(&(a * b), p).unwrap(), va + vb);
    }
}

fn integrand_source() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("x".to_string()),
        (-9i64..9, 1i64..5).prop_map(|(a, b)| format!("c:{}", format_rational(&Rational::new(a.into(), b.into())))),
        (1i64..5).prop_map(|k| format!("sin(c:{})", 5 * k)),
        (1i64..5).prop_map(|k| format!("cos(c:{})", 5 * k)),
        prop::sample::select(vec![2i64, 3, 6, 7, 11]).prop_map(|b| format!("pow(c:{b}, x)")),
        Just("chi(3:1)".to_string()),
    ];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(|v| format!("add({})", v.join(", "))),
            prop::collection::vec(inner.clone(), 2..4).prop_map(|v| format!("mul({})", v.join(", "))),
            (inner.clone(), 1u32..4).prop_map(|(f, k)| format!("pow({f}, {k})")),
            (inner.clone(), 1i64..4).prop_map(|(f, k)| format!("shift({f}, {k})")),
            inner.prop_map(|f| format!("neg({f})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integrand_display_round_trip(src in integrand_source()) {
        let f = parse_integrand(&src, None).unwrap();
        let g = parse_integrand(&f.to_string(), None).unwrap();
        prop_assert_eq!(&g, &f);
        let ctx = PadicContext::new(5, 6).unwrap();
        for x in 0..4 {
            prop_assert_eq!(f.eval(x, &ctx).unwrap(), g.eval(x, &ctx).unwrap());
        }
    }
}
