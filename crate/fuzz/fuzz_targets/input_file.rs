#![no_main]

use germlab::cli::parse_input_bytes;
use germlab::expr::parse::parse;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(file) = parse_input_bytes(data) {
        let _ = parse(&file.expression);
        if let Some(d) = &file.domain {
            let _ = germlab::verdict::ParamDomain::parse(d);
        }
    }
});
