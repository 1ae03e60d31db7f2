#![no_main]

use cluster_lab::parse::{parse_laurent_json, parse_poly_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_laurent_json(s) {
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(parse_laurent_json(&json).unwrap(), p);
        if p.num_terms() <= 64 {
            let sq = p.mul(&p).unwrap();
            if !p.is_zero() {
                assert_eq!(sq.exact_div(&p).unwrap(), p);
            }
        }
    }
    if let Ok(p) = parse_poly_json(s) {
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(parse_poly_json(&json).unwrap(), p);
    }
});
