#![no_main]

use libfuzzer_sys::fuzz_target;
use isoparam::obstruct::CheckId;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = s.parse::<CheckId>() {
        assert_eq!(x.to_string().parse::<CheckId>().ok(), Some(x));
    }
});
