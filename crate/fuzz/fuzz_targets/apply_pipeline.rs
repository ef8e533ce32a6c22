//! Drives parsed documents through the full operation surface. Every path
//! must return cleanly: mathematical failures are `Err`, never panics, and
//! no public entry point may abort on hostile but well-typed input.

#![no_main]

use libfuzzer_sys::fuzz_target;

use gak::doc::{parse_doc, AlgebraTag};
use gak::rotor::{
    decompose_trireflection, exp_bivector, exp_series, invariant_split, log_rotor, normalize,
    rotor_power, sqrt_rotor, Rotor,
};
use gak::study::StudyNumber;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for tag in [
        AlgebraTag::R301,
        AlgebraTag::R41,
        AlgebraTag::Custom { p: 1, q: 0, r: 0 },
        AlgebraTag::Custom { p: 2, q: 2, r: 1 },
    ] {
        let Ok((_, mv)) = parse_doc(text, Some(tag)) else {
            continue;
        };
        // keep products inside f64 range; the CLI reports overflow as an
        // error and the algebra itself is scale-equivariant
        if mv.coeff_inf_norm() > 1e100 {
            continue;
        }
        let _ = normalize(&mv);
        let _ = invariant_split(&mv);
        let _ = exp_bivector(&mv);
        let _ = exp_series(&mv, 1e-12);
        let _ = mv.inverse();
        let _ = StudyNumber::from_multivector(&mv, 1e-10).map(|s| {
            let _ = s.sqrt();
            let _ = s.inv_sqrt();
            let _ = s.inverse();
        });
        let _ = decompose_trireflection(&mv, None);
        if let Ok(rotor) = Rotor::try_new(mv.clone(), 1e-8) {
            let _ = log_rotor(&rotor);
            let _ = sqrt_rotor(&rotor);
            let _ = rotor_power(&rotor, 0.5);
        }
    }
});
