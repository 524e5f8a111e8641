#![no_main]

use libfuzzer_sys::fuzz_target;
use vkinv::wadagroup::{abelianization, parse_presentation, simplify};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_presentation(text) {
        let again = parse_presentation(&p.to_string()).expect("printed presentation parses");
        assert_eq!(again.generator_count(), p.generator_count());
        if p.generator_count() <= 16 && p.relators().len() <= 16 {
            let _ = abelianization(&simplify(&p));
        }
    }
});
