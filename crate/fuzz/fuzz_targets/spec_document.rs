#![no_main]

use libfuzzer_sys::fuzz_target;
use lipeq::document::SpecDocument;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(doc) = SpecDocument::parse(s) else {
        return;
    };
    let text = doc.to_json();
    assert_eq!(SpecDocument::parse(&text).expect("serialized document parses"), doc);
    if let Ok(spec) = doc.to_spec() {
        assert!(spec.n() >= 3);
        let _ = SpecDocument::from_spec(&spec).to_spec().expect("normalized document validates");
    }
});
