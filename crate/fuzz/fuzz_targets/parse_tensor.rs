#![no_main]

use libfuzzer_sys::fuzz_target;
use xorgap::io;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(v) = io::parse_tensor(s) {
        let again = io::parse_tensor(&io::tensor_to_json(&v)).expect("emitted JSON re-parses");
        assert_eq!(again, v);
    }
});
