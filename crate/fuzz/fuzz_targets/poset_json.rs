#![no_main]

use fsopkit::posets::{mobius_all, FinitePoset};
use fsopkit::Limits;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let limits = Limits { poset_max_size: 24, ..Limits::DEFAULT };
    if let Ok(p) = FinitePoset::from_json_str(s, &limits) {
        let _ = mobius_all(&p);
    }
});
