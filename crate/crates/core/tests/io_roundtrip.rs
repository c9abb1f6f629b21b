mod common;

use common::*;
use logcy_core::io::parse_expecting;
use logcy_core::{build_index_example, parse_document, write_document, Document, Kind, ToricPair};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_document(rng: &mut ChaCha8Rng) -> Document {
    match rng.gen_range(0..6) {
        0 => {
            let rank = rng.gen_range(2..=3);
            Document::Fan(random_complete_fan(rng, rank))
        }
        1 => {
            let fan = random_complete_fan(rng, 2);
            let coeffs = (0..fan.num_rays()).map(|_| unit_rational(rng)).collect();
            Document::Pair(ToricPair::new(fan, coeffs).unwrap())
        }
        2 => {
            let d = BigInt::from(rng.gen_range(1..=4));
            let m = BigInt::from(rng.gen_range(3..=6));
            Document::NumericalPair(build_index_example(&d, rng.gen_range(2..=4), &m).unwrap().1)
        }
        3 => Document::Arrangement(random_arrangement(rng, 6)),
        4 => {
            let bases = bundle_bases();
            let base = &bases[rng.gen_range(0..bases.len())];
            let twists = random_twists(rng, 1, base.num_rays());
            Document::Morphism(bundle_morphism(base, 1, &twists))
        }
        _ => Document::TowerSpec(random_bott_spec(rng, 5)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn write_then_parse_is_identity(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let doc = random_document(&mut rng);
        let text = write_document(&doc).unwrap();
        prop_assert!(text.ends_with('\n'));
        let back = parse_document(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(write_document(&back).unwrap(), text);
    }
}

#[test]
fn envelope_is_checked() {
    let doc = Document::Fan(p1());
    let text = write_document(&doc).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["schema_version"], "1");
    assert_eq!(value["kind"], "fan");

    let mut wrong = value.clone();
    wrong["schema_version"] = "2".into();
    let err = parse_document(&wrong.to_string()).unwrap_err();
    assert_eq!(err.code(), "SchemaError");

    let mut extra = value.clone();
    extra["comment"] = "hi".into();
    assert_eq!(
        parse_document(&extra.to_string()).unwrap_err().code(),
        "SchemaError"
    );

    let err = parse_expecting(&text, &[Kind::Pair]).unwrap_err();
    assert_eq!(err.code(), "SchemaError");
}

#[test]
fn rationals_are_strings() {
    let pair = ToricPair::new(p1(), vec![q(1, 2), q(2, 3)]).unwrap();
    let text = write_document(&Document::Pair(pair)).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(
        value["payload"]["coeffs"],
        serde_json::json!(["1/2", "2/3"])
    );

    let mut bad = value.clone();
    bad["payload"]["coeffs"][0] = serde_json::json!(0.5);
    let err = parse_document(&bad.to_string()).unwrap_err();
    assert_eq!(err.code(), "SchemaError");
    assert!(err.to_string().contains("payload.coeffs[0]"), "{err}");
}

#[test]
fn invalid_fans_report_the_offending_cone() {
    let text = r#"{"schema_version":"1","kind":"fan","payload":{"rank":2,
        "rays":[[1,0],[0,1],[-1,-1],[1,1]],"max_cones":[[0,1],[1,2],[2,0],[0,3]]}}"#;
    let err = parse_document(text).unwrap_err();
    assert_eq!(err.code(), "ValidationError");
    assert!(err.to_string().contains("payload.max_cones[3]"), "{err}");
}
