#![no_main]

use std::sync::Arc;

use libfuzzer_sys::fuzz_target;
use lipeq::exactnum::{parse_real, BaseSymbol, BaseTable};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let table = Arc::new(
        BaseTable::new(vec![
            BaseSymbol::new("l", "0.3090169943749474241").unwrap(),
            BaseSymbol::new("m", "0.7071067811865475244").unwrap(),
        ])
        .unwrap(),
    );
    if let Ok(v) = parse_real(s, Some(&table)) {
        // printing must round-trip whenever the printed form is itself a legal input
        let shown = v.to_string();
        if shown.len() <= 4096 {
            let again = parse_real(&shown, Some(&table)).expect("display output parses");
            assert_eq!(again, v);
        }
        let _ = v.sign();
    }
});
