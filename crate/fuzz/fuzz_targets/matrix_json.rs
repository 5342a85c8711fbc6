#![no_main]

use libfuzzer_sys::fuzz_target;
use qtopos::json::{parse_matrix, parse_operator, parse_projection};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if parse_matrix(text).is_ok() {
        let _ = parse_operator(text, 1e-9);
        let _ = parse_projection(text, 1e-9);
    }
});
