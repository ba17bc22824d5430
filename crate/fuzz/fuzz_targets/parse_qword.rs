#![no_main]

use libfuzzer_sys::fuzz_target;
use qhyp::qword::parse_qword;
use qhyp::word::Alphabet;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    // Deep towers are expensive; the parser itself is what is under test.
    if text.len() > 64 {
        return;
    }
    let Ok(q) = parse_qword(text) else { return };
    let printed = q.to_string();
    let again = parse_qword(&printed).expect("display reparses");
    let base = Alphabet::new("abcdefghijklmnopqrstuvwxyz").unwrap();
    if let (Ok(x), Ok(y)) = (q.eval(&base), again.eval(&base)) {
        assert_eq!(x, y);
    }
});
