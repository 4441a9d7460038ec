#![no_main]

use fsopkit::symfun::SymFunc;
use libfuzzer_sys::fuzz_target;

// Accepted input must survive a JSON round trip unchanged.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = SymFunc::from_json_str(s, 10) {
        let again = serde_json::to_string(&f.to_json()).unwrap();
        assert_eq!(SymFunc::from_json_str(&again, 10).unwrap(), f);
    }
});
