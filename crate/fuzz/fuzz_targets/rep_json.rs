#![no_main]

use fsopkit::posetrep::{bar_complex, PosetRep};
use fsopkit::Limits;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let limits = Limits { poset_max_size: 8, ..Limits::DEFAULT };
    if let Ok(m) = PosetRep::from_json_str(s, &limits) {
        if m.dims().iter().sum::<usize>() <= 12 {
            let _ = bar_complex(&m);
        }
    }
});
