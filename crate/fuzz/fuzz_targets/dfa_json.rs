#![no_main]

use fsopkit::langideal::{reachability_order, Dfa};
use fsopkit::Limits;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let limits = Limits { dfa_max_states: 64, ..Limits::DEFAULT };
    if let Ok(d) = Dfa::from_json_str(s, &limits) {
        let m = d.minimize();
        assert_eq!(m.minimize(), m);
        let _ = reachability_order(&d);
    }
});
