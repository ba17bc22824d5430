#![no_main]

use libfuzzer_sys::fuzz_target;
use qhyp::construction::ConstructionFile;
use qhyp::tower::{parse_tower_word, Tower};

const TOWER: &str = r#"{"kind":"tower","generators":["a","b"],
  "steps":[{"v":"ab","m":2,"root":"w"},{"v":"aB","m":3,"root":"u"}]}"#;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 128 {
        return;
    }
    let t = Tower::from_file(&ConstructionFile::from_json(TOWER).unwrap()).unwrap();
    if let Ok(e) = parse_tower_word(&t, text) {
        let c = t.canonical_form(&e);
        assert_eq!(t.canonical_form(&c), c);
        assert!(t.contains(&e));
    }
});
