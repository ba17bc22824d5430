#![no_main]

use libfuzzer_sys::fuzz_target;
use qhyp::presentation::Presentation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = Presentation::from_json(text) {
        let _ = p.is_free();
    }
});
