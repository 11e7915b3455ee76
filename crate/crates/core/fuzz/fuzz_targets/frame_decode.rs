#![no_main]

use libfuzzer_sys::fuzz_target;
use nht_core::catalog::DISPLAYED_16;
use nht_core::{descramble, scramble, Frame, ScrambleKey};

fuzz_target!(|data: &[u8]| {
    let Ok(frame) = Frame::from_bytes(data) else {
        return;
    };
    let key = ScrambleKey::new(DISPLAYED_16.spec()).unwrap();
    if let Ok(plain) = descramble(&frame, &key) {
        // Decoding is strict, so every accepted frame is the canonical encoding.
        assert_eq!(scramble(&plain, &key).to_bytes(), data);
    }
});
