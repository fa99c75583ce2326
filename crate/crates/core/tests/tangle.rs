use proptest::prelude::*;

use dwknot::tangle::{
    closure_trace, eval_cf, from_pd_json, montesinos_word, mu, neg_cf, neg_cf_with, parse_word,
    rational_word, rational_word_from_expansion, CfStrategy, Frac, MontesinosSpec, TangleWord,
};

fn arb_frac() -> impl Strategy<Value = Frac> {
    (-40i64..=40, 1i64..=25)
        .prop_filter("nonzero, coprime", |&(p, q)| p != 0 && num_integer::gcd(p, q) == 1)
        .prop_map(|(p, q)| Frac::new(p, q).unwrap())
}

fn arb_strategy() -> impl Strategy<Value = CfStrategy> {
    prop::sample::select(vec![
        CfStrategy::Ceil,
        CfStrategy::Floor,
        CfStrategy::Nearest,
    ])
}

fn arb_word() -> impl Strategy<Value = TangleWord> {
    let leaf = (-4i64..=4).prop_map(TangleWord::integral);
    leaf.prop_recursive(4, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| TangleWord::vcomp(a, b)),
            inner.prop_map(TangleWord::rot),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn expansions_evaluate_back(f in arb_frac(), st in arb_strategy()) {
        let e = neg_cf_with(f, st);
        prop_assert_eq!(eval_cf(&e).unwrap(), f);
    }

    #[test]
    fn mu_parity_is_crossing_parity(f in arb_frac(), st in arb_strategy()) {
        let e = neg_cf_with(f, st);
        let d = closure_trace(&rational_word_from_expansion(&e));
        prop_assert_eq!(mu(&e).rem_euclid(2), d.crossing_count() as i64 % 2);
        if let Some(wr) = d.writhe() {
            prop_assert_eq!(mu(&e).rem_euclid(2), wr.rem_euclid(2));
        }
    }

    #[test]
    fn rational_closures_are_knots_iff_q_is_odd(f in arb_frac()) {
        let d = closure_trace(&rational_word(f));
        prop_assert_eq!(d.n_components(), if f.den() % 2 == 1 { 1 } else { 2 });
    }

    #[test]
    fn words_print_and_parse_back(w in arb_word()) {
        prop_assert_eq!(parse_word(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn closure_keeps_every_crossing(w in arb_word()) {
        let d = closure_trace(&w);
        prop_assert_eq!(d.crossing_count() as u64, w.crossing_count());
        // traced diagrams use Fox arcs, so an over strand is never split
        for c in d.crossings() {
            prop_assert_eq!(c.over_in, c.over_out);
        }
    }

    #[test]
    fn pd_json_round_trips(w in arb_word()) {
        let d = closure_trace(&w);
        prop_assert_eq!(from_pd_json(&d.to_pd_json()).unwrap(), d);
    }

    #[test]
    fn mirror_negates_every_fraction(fs in prop::collection::vec(arb_frac(), 1..4)) {
        let spec = MontesinosSpec::new(fs.clone()).unwrap();
        let m = spec.mirror();
        for (a, b) in spec.fracs().iter().zip(m.fracs()) {
            prop_assert_eq!(a.num(), -b.num());
            prop_assert_eq!(a.den(), b.den());
        }
        prop_assert_eq!(m.mirror(), spec);
    }
}

#[test]
fn default_expansions() {
    let fr = |p, q| Frac::new(p, q).unwrap();
    assert_eq!(neg_cf(fr(1, 3)), vec![-3, 0]);
    assert_eq!(neg_cf(fr(3, 1)), vec![3]);
    assert_eq!(closure_trace(&rational_word(fr(1, 3))).crossing_count(), 3);
}

#[test]
fn montesinos_spec_parsing() {
    let spec: MontesinosSpec = "1/3, -2/5,7".parse().unwrap();
    assert_eq!(spec.fracs().len(), 3);
    assert_eq!(spec.to_string().parse::<MontesinosSpec>().unwrap(), spec);
    assert!("1/0".parse::<MontesinosSpec>().is_err());
    assert!("".parse::<MontesinosSpec>().is_err());
    let w = montesinos_word(&MontesinosSpec::pretzel(&[3, 3, 3]).unwrap());
    assert_eq!(w.crossing_count(), 9);
    assert!(closure_trace(&w).is_knot());
}

#[test]
fn malformed_words_are_rejected() {
    for bad in [
        "",
        "rt(",
        "3**4",
        "rt 3",
        "x",
        "rt(3))",
        "99999999999999999999",
    ] {
        assert!(parse_word(bad).is_err(), "{bad:?}");
    }
}

#[test]
fn malformed_pd_is_rejected() {
    let good = closure_trace(&rational_word(Frac::new(1, 3).unwrap())).to_pd_json();
    assert!(from_pd_json(&good).is_ok());
    let wrong_writhe = good.replace("\"writhe\":-3", "\"writhe\":1");
    assert_ne!(wrong_writhe, good);
    assert!(from_pd_json(&wrong_writhe).is_err());
    assert!(from_pd_json("{}").is_err());
    assert!(from_pd_json(r#"{"n_components":1,"writhe":1,"arcs":[0],"crossings":[{"over_in":0,"over_out":0,"under_in":0,"under_out":5,"sign":1}]}"#).is_err());
}
