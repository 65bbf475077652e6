#![no_main]

use libfuzzer_sys::fuzz_target;
use rootfunc::ring::poly_parse;

fuzz_target!(|data: &[u8]| {
    let Some((&first, rest)) = data.split_first() else {
        return;
    };
    let nvars = (first % 4) as usize + 1;
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    if let Ok(poly) = poly_parse(text, nvars) {
        let printed = poly.to_string();
        let again = poly_parse(&printed, nvars).expect("printed polynomial reparses");
        assert_eq!(poly, again, "print/parse roundtrip");
    }
});
