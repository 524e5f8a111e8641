#![no_main]

use libfuzzer_sys::fuzz_target;
use vkinv::diagram::{parse_gauss, Diagram};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(code) = parse_gauss(text) {
        let again = parse_gauss(&code.to_string()).expect("printed code parses");
        assert_eq!(again, code);
        if code.crossing_count() <= 64 {
            let d = Diagram::from_gauss(&code);
            assert_eq!(d.crossing_count(), code.crossing_count());
        }
    }
});
