#![no_main]

use libfuzzer_sys::fuzz_target;
use qtopos::pl::parse;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    match parse(text) {
        Ok(s) => {
            assert_eq!(parse(&s.to_string()).unwrap(), s);
            assert_eq!(parse(&s.symbolic()).unwrap(), s);
        }
        Err(e) => assert!(e.position <= text.chars().count()),
    }
});
