use caustica::poly::{
    from_json, gcd, parse_poly, squarefree_part, sylvester_resultant, to_json, to_text, var_list, Monomial, QPoly,
};
use caustica::scalar::q;
use caustica::Q;
use proptest::prelude::*;

fn poly_strategy(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = QPoly> {
    let term = (prop::collection::vec(0..=max_deg, nvars), -9i64..=9, 1i64..=4);
    prop::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        let names = ["x", "y", "t"];
        QPoly::from_terms(
            var_list(&names[..nvars]),
            terms.into_iter().map(|(e, a, b)| (Monomial::new(e), q(a, b))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_strategy(3, 3, 5), b in poly_strategy(3, 3, 5), c in poly_strategy(3, 3, 5)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_div_roundtrip(a in poly_strategy(3, 3, 5), b in poly_strategy(3, 2, 4)) {
        prop_assume!(!b.is_zero());
        let p = &a * &b;
        prop_assert_eq!(p.exact_div(&b).unwrap(), a);
    }

    #[test]
    fn text_is_canonical(a in poly_strategy(3, 4, 6)) {
        let text = to_text(&a);
        let back = parse_poly(&text, &["x", "y", "t"]).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(to_text(&back), text);
        prop_assert_eq!(from_json(&to_json(&a)).unwrap(), a);
    }

    #[test]
    fn resultant_specializes(f in poly_strategy(2, 3, 4), g in poly_strategy(2, 3, 4), y0 in -5i64..5) {
        // res_x(f, g)(y0) = res_x(f(y0), g(y0)) when leading coefficients in x survive
        prop_assume!(f.degree_in("x") > 0 && g.degree_in("x") > 0);
        let lead = |p: &QPoly| p.coeffs_in("x").last().cloned().unwrap();
        let at = |p: &QPoly| p.evaluate(&[("y", Q::from_integer(y0.into()))]);
        prop_assume!(!at(&lead(&f)).is_zero() && !at(&lead(&g)).is_zero());
        let full = sylvester_resultant(&f, &g, "x").unwrap();
        let spec = sylvester_resultant(&at(&f), &at(&g), "x").unwrap();
        prop_assert_eq!(at(&full).constant_term(), spec.constant_term());
    }

    #[test]
    fn gcd_divides_both(a in poly_strategy(2, 2, 3), b in poly_strategy(2, 2, 3), c in poly_strategy(2, 2, 3)) {
        prop_assume!(!c.is_zero() && !(&a * &c).is_zero() && !(&b * &c).is_zero());
        let (ac, bc) = (&a * &c, &b * &c);
        let g = gcd(&ac, &bc);
        prop_assert!(ac.exact_div(&g).is_ok());
        prop_assert!(bc.exact_div(&g).is_ok());
        prop_assert!(g.exact_div(&c.primitive()).is_ok() || c.is_constant());
    }

    #[test]
    fn squarefree_part_of_square(a in poly_strategy(2, 2, 3)) {
        prop_assume!(!a.is_constant());
        let sq = squarefree_part(&a);
        prop_assert_eq!(squarefree_part(&(&a * &a)), sq.clone());
        prop_assert!(a.exact_div(&sq).is_ok());
    }
}

#[test]
fn parse_rejects_garbage() {
    assert!(parse_poly("x^", &["x"]).is_err());
    assert!(parse_poly("3*z", &["x"]).is_err());
    assert!(parse_poly("1/0*x", &["x"]).is_err());
}
