//! Blade labels and algebra tags come straight from user input; both
//! parsers must be total over arbitrary strings.

#![no_main]

use libfuzzer_sys::fuzz_target;

use gak::doc::{parse_label, AlgebraTag};
use gak::Signature;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for sig in [
        Signature::r3(),
        Signature::r4(),
        Signature::r31(),
        Signature::r301(),
        Signature::r41(),
    ] {
        let _ = parse_label(sig, text);
    }
    let _ = text.parse::<AlgebraTag>();
});
