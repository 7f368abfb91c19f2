#![no_main]

use libfuzzer_sys::fuzz_target;
use isoparam::rootsys::Word;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = s.parse::<Word>() {
        assert_eq!(x.to_string().parse::<Word>().ok(), Some(x));
    }
});
