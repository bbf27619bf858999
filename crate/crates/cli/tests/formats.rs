//! Parsing and printing of systems and formulae.

use mimicry::{generate_random_pts, parse_formula, parse_pts, serialize_pts, GeneratorParams, PtsFormatError};
use mimicry_core::logic::normalize;
use mimicry_core::rational::ratio;
use mimicry_core::{DistFormula, Label, StateFormula};
use mimicry_testkit::strategies::{arb_formula, arb_pts, config, PtsShape};
use proptest::prelude::*;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn fixtures_parse() {
    let fig1 = parse_pts(&fixture("fig1.pts")).unwrap();
    assert_eq!(fig1.len(), 7);
    assert_eq!(fig1.alphabet().len(), 3);
    assert_eq!(fig1.max_depth(), Some(2));
    let t1 = fig1.lookup("t1").unwrap();
    assert_eq!(fig1.transition_count(t1), 1);

    let fig2 = parse_pts(&fixture("fig2.pts")).unwrap();
    assert_eq!(fig2.len(), 8);
    let sp = fig2.lookup("s'").unwrap();
    assert_eq!(fig2.transition_count(sp), 2);
}

#[test]
fn fixtures_round_trip() {
    for name in ["fig1.pts", "fig2.pts"] {
        let pts = parse_pts(&fixture(name)).unwrap();
        assert_eq!(parse_pts(&serialize_pts(&pts)).unwrap(), pts);
    }
}

#[test]
fn implicit_declarations_follow_first_appearance() {
    let pts = parse_pts("alphabet a\n# comment only\n  u -a-> { v: 1/3 , w: 2/3 } # trailing\nprocess z v\n").unwrap();
    let names: Vec<&str> = pts.processes().map(|s| pts.name(s)).collect();
    assert_eq!(names, ["u", "v", "w", "z"]);
}

#[test]
fn parse_errors() {
    let cases = [
        ("alphabet a\ns -a- { x: 1 }", 2, 6),
        ("alphabet a\ns -a-> { x: 1 ", 2, 15),
        ("alphabet a\ns -a-> { x: 1/0 }", 2, 13),
        ("alphabet a\ns -a-> { }", 2, 10),
        ("alphabet a\ns -a-> { x: 1 } y", 2, 17),
        ("alphabet a\ns -a-> { x: -1 }", 2, 13),
        ("alphabet a+", 1, 11),
    ];
    for (text, line, column) in cases {
        match parse_pts(text) {
            Err(PtsFormatError::Parse(e)) => assert_eq!((e.line, e.column), (line, column), "{text:?}: {e}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
}

#[test]
fn semantic_errors() {
    for text in [
        "alphabet a\ns -a-> { x: 3/4, y: 1/3 }",
        "alphabet a\ns -a-> { x: 1/2 }",
        "alphabet a\ns -a-> { x: 0, y: 1 }",
        "alphabet a\ns -a-> { x: 1/2, x: 1/2 }",
        "s -a-> { x: 1 }",
        "alphabet b\ns -a-> { x: 1 }",
    ] {
        assert!(matches!(parse_pts(text), Err(PtsFormatError::Semantic { .. })), "{text:?}");
    }
}

#[test]
fn formula_examples() {
    let a = Label::new("a").unwrap();
    let b = Label::new("b").unwrap();
    assert_eq!(parse_formula("T").unwrap(), StateFormula::Top);
    assert_eq!(
        parse_formula("<a><b>T").unwrap(),
        StateFormula::diamond(a.clone(), DistFormula::single(StateFormula::diamond(b.clone(), DistFormula::single(StateFormula::Top))))
    );
    let bt = StateFormula::diamond_state(b, StateFormula::Top);
    let expected = StateFormula::diamond(
        a,
        DistFormula::new(vec![
            (ratio(3, 4), StateFormula::and(vec![bt.clone(), bt.clone()]).unwrap()),
            (ratio(1, 4), bt),
        ])
        .unwrap(),
    );
    assert_eq!(parse_formula("<a>(3/4 (<b>T & <b>T) (+) 1/4 <b>T)").unwrap(), expected);
    assert_eq!(parse_formula(" < a > ( 3/4  ( <b>T&<b>T ) (+) 1/4 <b> T ) ").unwrap(), expected);
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn pts_round_trip(pts in prop_oneof![
        arb_pts(PtsShape::default()),
        arb_pts(PtsShape { max_states: 5, cyclic: true, ..PtsShape::default() }),
    ]) {
        let text = serialize_pts(&pts);
        prop_assert_eq!(parse_pts(&text).unwrap(), pts);
    }

    #[test]
    fn generated_pts_round_trip(seed in any::<u64>()) {
        let pts = generate_random_pts(seed, &GeneratorParams::default());
        prop_assert_eq!(parse_pts(&serialize_pts(&pts)).unwrap(), pts);
    }

    #[test]
    fn formula_round_trip(phi in arb_formula(3, 3, 3)) {
        let text = phi.to_string();
        prop_assert_eq!(parse_formula(&text).unwrap(), phi.clone());
        let normal = normalize(&phi);
        prop_assert_eq!(parse_formula(&normal.to_string()).unwrap(), normal);
    }
}
