#![no_main]

use germlab::cli::parse_epsilon;
use germlab::expr::rat::GaussRat;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = GaussRat::parse(text) {
        assert_eq!(
            GaussRat::parse(&t.to_string()).expect("printed form parses"),
            t
        );
    }
    let _ = parse_epsilon(text);
});
