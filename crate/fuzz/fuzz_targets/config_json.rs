#![no_main]

use fsopkit::shell::RunConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = RunConfig::from_json_str(s) {
        let again = serde_json::to_string(&cfg).unwrap();
        assert_eq!(RunConfig::from_json_str(&again).unwrap(), cfg);
    }
});
