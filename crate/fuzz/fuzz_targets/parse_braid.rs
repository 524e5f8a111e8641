#![no_main]

use libfuzzer_sys::fuzz_target;
use vkinv::diagram::parse_braid;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(w) = parse_braid(text) {
        assert_eq!(parse_braid(&w.to_string()).expect("printed word parses"), w);
        if w.strands() <= 64 && w.letters().len() <= 256 {
            let _ = w.close();
        }
    }
});
