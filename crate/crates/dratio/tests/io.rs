use dratio::io::{parse_instance, serialize_instance, InstanceFile};
use dratio_core::{gen_instance, BodyKind};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_documents_round_trip_byte_for_byte(
        m in 2usize..=6,
        extra in 0usize..=3,
        n in 1usize..=5,
        ellipsoid in any::<bool>(),
        seed in any::<u64>(),
        label in proptest::option::of("[a-z ]{0,12}"),
    ) {
        let kind = if ellipsoid { BodyKind::Ellipsoid } else { BodyKind::Polytope };
        let mut inst = gen_instance(m, m + extra, n, kind, seed).unwrap();
        inst.label = label;
        let text = serialize_instance(&inst).unwrap();
        let parsed = parse_instance(&text).unwrap();
        prop_assert_eq!(&parsed, &inst);
        prop_assert_eq!(serialize_instance(&parsed).unwrap(), text);
    }
}

#[test]
fn hand_written_documents_are_accepted() {
    let doc = r#"{
        "dim": 2,
        "body": {"kind": "ellipsoid", "shape": [[1, 0], [0, 4]]},
        "vectors": [[0, 1], [1, 1]],
        "label": "by hand"
    }"#;
    let inst = parse_instance(doc).unwrap();
    let file = InstanceFile::from_instance(&inst);
    assert_eq!(file.label.as_deref(), Some("by hand"));
    let canonical = serialize_instance(&inst).unwrap();
    assert!(canonical.starts_with(r#"{"dim":2,"body":{"kind":"ellipsoid","shape":[[1.0000000000000000e0,0.0000000000000000e0],[0.0000000000000000e0,4.0000000000000000e0]]}"#));
}
