#![no_main]

use libfuzzer_sys::fuzz_target;
use qhyp::word::Alphabet;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let a = Alphabet::new("abc").unwrap();
    if let Ok(w) = a.parse(text) {
        assert!(w.mul(&w.inverse()).is_identity());
        assert_eq!(a.parse(&a.format(&w)).unwrap(), w);
    }
});
