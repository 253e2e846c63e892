#![no_main]

use libfuzzer_sys::fuzz_target;

// NUL-separated argument vector. Only parsing is exercised: running a
// parsed command may read files or start long computations.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let argv = std::iter::once("xorgap").chain(s.split('\0'));
    let _ = xorgap_cli::parse_args(argv);
});
