#![no_main]

use libfuzzer_sys::fuzz_target;
use isoparam::rootsys::RootVector;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = s.parse::<RootVector>() {
        assert_eq!(x.to_string().parse::<RootVector>().ok(), Some(x));
    }
});
