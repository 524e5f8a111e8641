#![no_main]

use libfuzzer_sys::fuzz_target;
use vkinv::corpus::parse_corpus;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = parse_corpus(text) {
        for name in c.names() {
            assert!(c.get(name).is_ok());
        }
    }
});
