//! The document parser must return an error, never panic, on arbitrary
//! bytes, with or without an algebra supplied out of band.

#![no_main]

use libfuzzer_sys::fuzz_target;

use gak::doc::{parse_doc, AlgebraTag};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_doc(text, None);
    let _ = parse_doc(text, Some(AlgebraTag::R301));
    let _ = parse_doc(text, Some(AlgebraTag::R41));
    let _ = parse_doc(text, Some(AlgebraTag::Custom { p: 2, q: 2, r: 0 }));
});
