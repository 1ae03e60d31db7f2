#![no_main]

use cluster_lab::parse::parse_variable_ref;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = parse_variable_ref(s) {
        assert_eq!(parse_variable_ref(&r.to_string()).unwrap(), r);
    }
});
