#![no_main]

use libfuzzer_sys::fuzz_target;
use vkinv::algebra::FiniteGroup;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 32 {
        return;
    }
    let _ = FiniteGroup::parse_spec(text);
});
