#![no_main]

use libfuzzer_sys::fuzz_target;
use qtopos::json::PosetJson;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(poset) = serde_json::from_str::<PosetJson>(text) else { return };
    if poset.elements.len() > 64 {
        return;
    }
    if let Ok((order, _)) = poset.to_order() {
        for a in 0..order.len() {
            assert!(order.leq(a, a));
        }
    }
});
