#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use qtopos::spectral::SubobjectJson;
use qtopos::{ClopenSubobject, Context, ContextPoset, PosetOptions, C64};

fn poset() -> &'static ContextPoset {
    static POSET: OnceLock<ContextPoset> = OnceLock::new();
    POSET.get_or_init(|| {
        let c = |x: f64| C64::new(x, 0.0);
        let vz = Context::from_basis(&[vec![c(1.0), c(0.0)], vec![c(0.0), c(1.0)]], 1e-9).unwrap();
        let vx = Context::from_basis(&[vec![c(1.0), c(1.0)], vec![c(1.0), c(-1.0)]], 1e-9).unwrap();
        ContextPoset::build(vec![vz, vx], PosetOptions::default(), 1e-9).unwrap()
    })
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(SubobjectJson(map)) = serde_json::from_str(text) else { return };
    if let Ok(s) = ClopenSubobject::from_json_map(poset(), &map) {
        let _ = s.validate(poset());
        let _ = s.negation(poset());
    }
});
