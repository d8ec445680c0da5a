#![no_main]

use germlab::expr::parse::{parse, parse_bytes};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(p) = parse_bytes(data) {
        let printed = p.to_string();
        assert_eq!(parse(&printed).expect("printed form parses"), p);
    }
});
