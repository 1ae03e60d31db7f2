#![no_main]

use cluster_lab::parse::parse_matrix;
use cluster_lab::rootsys::CartanData;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(c) = parse_matrix(s) else { return };
    if c.rows() > 6 {
        return;
    }
    let Ok(d) = CartanData::new(c) else { return };
    let roots = d.almost_positive_roots().to_vec();
    for a in &roots {
        for sign in [1, -1] {
            let t = d.tau(sign, a).unwrap();
            assert_eq!(&d.tau(sign, &t).unwrap(), a);
        }
    }
    if let (Some(a), Some(b)) = (roots.first(), roots.last()) {
        let _ = d.classical_degree(a, b);
    }
});
