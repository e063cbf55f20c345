#![no_main]

use libfuzzer_sys::fuzz_target;
use lipeq::certify::{certificate_from_json, validate};
use lipeq::document::SpecDocument;

const SET145: &str = r#"{"version": 1, "role": "touching", "n": 3,
  "ratios": ["1/5", "1/5", "1/5"], "translations": ["0", "3/5", "4/5"]}"#;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let ifs = SpecDocument::parse(SET145).unwrap().to_ifs().unwrap();
    if let Ok(cert) = certificate_from_json(s, &ifs) {
        let _ = validate(&cert, &ifs);
    }
});
