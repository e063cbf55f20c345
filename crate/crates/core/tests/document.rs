mod common;

use common::*;
use lipeq::document::{DocRole, DocumentError, Product, SpecDocument, Value};
use lipeq::exactnum::Real;
use lipeq::ifscore::Role;
use proptest::prelude::*;

const SET145: &str = r#"{
  "version": 1,
  "role": "touching",
  "n": 3,
  "ratios": ["1/5", "1/5", "1/5"],
  "translations": ["0", "3/5", "4/5"]
}"#;

#[test]
fn parses_the_145_set() {
    let doc = SpecDocument::parse(SET145).unwrap();
    let ifs = doc.to_ifs().unwrap();
    assert_eq!(ifs, set145());
    assert_eq!(ifs.ts.sigma_t.iter().copied().collect::<Vec<_>>(), [2]);
}

#[test]
fn dust_role_without_translations_is_equally_spaced() {
    let doc = SpecDocument::parse(
        r#"{"version": 1, "role": "dust", "n": 3, "ratios": ["1/4", "1/8", "1/8"]}"#,
    )
    .unwrap();
    let spec = doc.to_spec().unwrap();
    assert_eq!(spec.role(), Role::Dust);
    assert_eq!(spec.translations(), &[r(0, 1), r(1, 2), r(7, 8)]);
}

#[test]
fn declared_bases_in_both_value_forms() {
    let text = r#"{
      "version": 1,
      "role": "touching",
      "n": 3,
      "ratios": [{"bases": ["l"], "exps": [2]}, "1/4", "1/4"],
      "translations": ["0", "1/2", "3/4"],
      "declared_bases": [{"symbol": "l", "digits": "0.3090169943749474241", "independent": true}]
    }"#;
    let spec = SpecDocument::parse(text).unwrap().to_spec().unwrap();
    let l = spec.table().unwrap().index_of("l").unwrap();
    assert_eq!(spec.ratio(1).value(), &Real::base(spec.table().unwrap(), l).pow(2));
    let again = SpecDocument::from_spec(&spec).to_spec().unwrap();
    assert_eq!(again, spec);
}

#[test]
fn scalar_and_negative_exponents() {
    let text = r#"{
      "version": 1,
      "role": "touching",
      "n": 3,
      "ratios": [{"bases": ["a"], "exps": [-1], "scalar": "1/20"}, "1/4", "1/4"],
      "translations": ["0", "1/2", "3/4"],
      "declared_bases": [{"symbol": "a", "digits": "0.5", "independent": true}]
    }"#;
    let spec = SpecDocument::parse(text).unwrap().to_spec().unwrap();
    assert!((spec.ratio(1).to_f64() - 0.1).abs() < 1e-12);
}

#[test]
fn rejects_bad_documents() {
    let unknown = SET145.replace("\"n\": 3,", "\"n\": 3, \"colour\": \"red\",");
    assert!(matches!(SpecDocument::parse(&unknown), Err(DocumentError::Json(_))));

    let version = SET145.replace("\"version\": 1", "\"version\": 2");
    assert!(matches!(SpecDocument::parse(&version), Err(DocumentError::Version(2))));

    let count = SET145.replace("\"n\": 3", "\"n\": 4");
    let doc = SpecDocument::parse(&count).unwrap();
    assert!(matches!(doc.to_spec(), Err(DocumentError::Field(_))));

    let dust145 = SET145.replace("3/5", "2/5");
    let doc = SpecDocument::parse(&dust145).unwrap();
    assert!(matches!(doc.to_spec(), Err(DocumentError::Spec(_))));

    let no_t = r#"{"version": 1, "role": "touching", "n": 3, "ratios": ["1/5", "1/5", "1/5"]}"#;
    let doc = SpecDocument::parse(no_t).unwrap();
    assert!(matches!(doc.to_spec(), Err(DocumentError::Field(_))));

    let dependent = r#"{
      "version": 1, "role": "touching", "n": 3,
      "ratios": ["1/5", "1/5", "1/5"], "translations": ["0", "3/5", "4/5"],
      "declared_bases": [{"symbol": "l", "digits": "0.5", "independent": false}]
    }"#;
    let doc = SpecDocument::parse(dependent).unwrap();
    assert!(matches!(doc.to_spec(), Err(DocumentError::Field(_))));

    let undeclared = SET145.replace("\"1/5\", \"1/5\", \"1/5\"", "\"x\", \"1/5\", \"1/5\"");
    let doc = SpecDocument::parse(&undeclared).unwrap();
    assert!(matches!(doc.to_spec(), Err(DocumentError::Num(_))));
}

#[test]
fn serialization_is_stable() {
    let doc = SpecDocument::parse(SET145).unwrap();
    let once = doc.to_json();
    assert_eq!(SpecDocument::parse(&once).unwrap().to_json(), once);
    assert!(!once.contains("declared_independence"));
}

fn value() -> impl Strategy<Value = Value> {
    prop_oneof![
        (1u32..50, 2u32..60).prop_map(|(a, b)| Value::Expr(format!("{a}/{b}"))),
        (prop::collection::vec(-5i64..6, 1..3), prop::option::of(1u32..9)).prop_map(
            |(exps, s)| Value::Product(Product {
                bases: (0..exps.len()).map(|i| format!("b{i}")).collect(),
                exps,
                scalar: s.map(|s| format!("1/{s}")),
            })
        ),
    ]
}

proptest! {
    #[test]
    fn parse_serialize_parse_is_identity(
        ratios in prop::collection::vec(value(), 3..6),
        translations in prop::option::of(prop::collection::vec(value(), 3..6)),
        dust in any::<bool>(),
        declared in any::<bool>(),
    ) {
        let doc = SpecDocument {
            version: 1,
            role: if dust { DocRole::Dust } else { DocRole::Touching },
            n: ratios.len(),
            ratios,
            translations,
            declared_bases: Vec::new(),
            declared_independence: declared,
        };
        let text = doc.to_json();
        let back = SpecDocument::parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_json(), text);
    }
}
