#![no_main]

use libfuzzer_sys::fuzz_target;
use qhyp::construction::{check_amalgam, check_separated_hnn, ConstructionFile};
use qhyp::tower::Tower;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(f) = ConstructionFile::from_json(text) else { return };
    if let Ok(d) = f.to_hnn() {
        let _ = check_separated_hnn(&d);
    }
    if let Ok(d) = f.to_amalgam() {
        let _ = check_amalgam(&d);
    }
    if let Ok(t) = Tower::from_file(&f) {
        let _ = t.presentation_text();
    }
});
