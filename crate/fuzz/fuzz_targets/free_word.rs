#![no_main]

use libfuzzer_sys::fuzz_target;
use vkinv::algebra::{FiniteGroup, FreeWord};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(w) = FreeWord::parse(text) {
        assert_eq!(FreeWord::parse(&w.to_string()).expect("printed word parses"), w);
        let g = FiniteGroup::cyclic(5).unwrap();
        let _ = w.eval(1, 2, &g);
    }
});
