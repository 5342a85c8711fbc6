#![no_main]

use libfuzzer_sys::fuzz_target;
use qtopos::BorelSet;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(set) = BorelSet::parse(text) {
        assert_eq!(BorelSet::parse(&set.to_string()).unwrap(), set);
    }
    let _ = BorelSet::from_json(text);
});
