#![no_main]

use cluster_lab::matrix::ExchangeMatrix;
use cluster_lab::parse::parse_matrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(m) = parse_matrix(s) else { return };
    // round trip through the JSON form
    let json = serde_json::to_string(&m).unwrap();
    assert_eq!(parse_matrix(&json).unwrap(), m);
    if let Ok(b) = ExchangeMatrix::new(m) {
        if b.rank() <= 8 {
            for k in 0..b.rank() {
                if let Ok(once) = b.mutate(k) {
                    if let Ok(twice) = once.mutate(k) {
                        assert_eq!(twice, b);
                    }
                }
            }
        }
    }
});
