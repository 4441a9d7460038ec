#![no_main]

use fsopkit::fsopmod::{FsopModule, FsopPresentation};
use fsopkit::Limits;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(pres) = FsopPresentation::from_json_str(s) {
        let limits = Limits { eval_degree: 4, eval_degree_small_gens: 4, ..Limits::DEFAULT };
        let _ = FsopModule::with_limits(pres, &limits).hilbert_dims(4);
    }
});
