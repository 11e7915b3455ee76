#![no_main]

use libfuzzer_sys::fuzz_target;
use nht_core::NhtSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for allow_zero in [false, true] {
        if let Ok(spec) = NhtSpec::from_json(text, allow_zero) {
            let again = NhtSpec::from_json(&spec.to_json(), allow_zero).unwrap();
            assert_eq!(spec, again);
            if spec.size() <= 64 {
                assert_eq!(spec.is_valid(), spec.gram().is_identity());
            }
        }
    }
});
