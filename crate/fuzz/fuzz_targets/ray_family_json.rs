#![no_main]

use libfuzzer_sys::fuzz_target;
use qtopos::json::parse_ray_family;
use qtopos::{ContextPoset, PosetOptions};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(contexts) = parse_ray_family(text, 1e-9) {
        if contexts.len() <= 6 && contexts.first().map_or(false, |c| c.dim() <= 6) {
            let _ = ContextPoset::build(contexts, PosetOptions::default(), 1e-9);
        }
    }
});
