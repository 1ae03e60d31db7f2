#![no_main]

use cluster_lab::parse::{parse_int_vector, parse_word};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(w) = parse_word(s) {
        assert_eq!(parse_word(&w.to_string()).unwrap(), w);
        let r = w.reduce();
        assert!(r.is_reduced());
        assert!(r.len() <= w.len());
    }
    let _ = parse_int_vector(s);
});
