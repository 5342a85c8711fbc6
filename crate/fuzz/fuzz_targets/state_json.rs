#![no_main]

use libfuzzer_sys::fuzz_target;
use qtopos::json::parse_state;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = parse_state(text) {
        assert!(!v.is_empty());
        assert!(v.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
    }
});
