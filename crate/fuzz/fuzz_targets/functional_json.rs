#![no_main]

use libfuzzer_sys::fuzz_target;
use rootfunc::functional::Functional;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(l) = Functional::from_json_str(text) {
        let printed = l.to_json_string(false);
        let again = Functional::from_json_str(&printed).expect("serialized functional reparses");
        assert_eq!(l, again, "serialize/parse roundtrip");
    }
});
