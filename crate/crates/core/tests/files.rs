use cvghz::format::{emit_set, parse_set, OperatorSetFile};
use cvghz::{builtin, verify};

#[test]
fn builtins_round_trip_through_disk() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["v4", "w6"] {
        let set = builtin(name).unwrap();
        let path = dir.path().join(format!("{name}.json"));
        std::fs::write(&path, emit_set(&set, Some(name))).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let back = parse_set(&text).unwrap();
        assert_eq!(back, set);
        assert_eq!(OperatorSetFile::parse(&text).unwrap().name.as_deref(), Some(name));
        assert!(verify(&back).unwrap().is_paradox);
    }
}

#[test]
fn hand_written_file_parses() {
    let text = r#"{
        "name": "v4 by hand",
        "d": 2,
        "parties": 3,
        "operators": [
            [[1, 0], [1, 0], [1, 0]],
            [[-1, 0], [0, -1], [0, 1]],
            [[0, 1], [-1, 0], [0, -1]],
            [[0, -1], [0, 1], [-1, 0]]
        ]
    }"#;
    assert_eq!(parse_set(text).unwrap(), builtin("v4").unwrap());
}

#[test]
fn malformed_files_are_rejected() {
    for text in [
        r#"{"d": 2, "parties": 1, "operators": []}"#,
        r#"{"d": 0, "parties": 1, "operators": [[[1, 0]]]}"#,
        r#"{"d": 2, "parties": 2, "operators": [[[1, 0]]]}"#,
        r#"{"d": 2, "parties": 1, "operators": [[[1, 0, 2]]]}"#,
        r#"{"d": 2, "parties": 1, "operators": [[[1, 0]]], "extra": 1}"#,
        r#"{"d": 2, "operators": [[[1, 0]]]}"#,
    ] {
        assert!(parse_set(text).is_err(), "{text}");
    }
}
