#![no_main]

use libfuzzer_sys::fuzz_target;
use qtopos::json::parse_operator_pools;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_operator_pools(text, 1e-9);
});
