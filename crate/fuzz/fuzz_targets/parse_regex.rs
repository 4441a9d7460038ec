#![no_main]

use fsopkit::langideal::parse_regex_with;
use fsopkit::Limits;
use libfuzzer_sys::fuzz_target;

// Compiled automata must be minimal: minimizing again changes nothing.
fuzz_target!(|data: &[u8]| {
    let Ok(expr) = std::str::from_utf8(data) else { return };
    let limits = Limits { regex_max_len: 64, dfa_max_states: 256, ..Limits::DEFAULT };
    if let Ok(d) = parse_regex_with(expr, &['a', 'b'], &limits) {
        assert_eq!(d.minimize(), d);
    }
});
