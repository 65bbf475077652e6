#![no_main]

use libfuzzer_sys::fuzz_target;
use rootfunc::ring::system_parse;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(sys) = system_parse(text) {
        let printed = sys
            .polys()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join("\n");
        let again = system_parse(&printed).expect("printed system reparses");
        assert_eq!(sys.polys(), again.polys(), "print/parse roundtrip");
    }
});
