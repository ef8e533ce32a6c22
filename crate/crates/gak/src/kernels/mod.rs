//! Coefficient-level kernels on the fixed packed basis orderings of the
//! four featured algebras, transcribed term for term from their reference
//! coefficient listings (same intermediate quantities S, T, N, M, A, B) so
//! numerical behavior is comparable against the generic engine.
//!
//! Every kernel is generic over [`KernelScalar`]: `f64` is the fast path,
//! [`Counted`] tallies exact operation counts for the op-count claims
//! (PGA normalize 23 mul / 10 add / 1 sqrt / 1 div, log 14/5/1/1/1,
//! exp 17/8/2/1/1).

mod count;
pub mod r301;
pub mod r31;
pub mod r4;
pub mod r41;

pub use count::{count_ops, Counted, OpCounts};

use crate::error::GaError;
use crate::multivector::Multivector;
use crate::signature::{Blade, Signature};
use crate::DEFAULT_TOL;

/// Scalar the kernels compute with. Arithmetic goes through the trait so an
/// instrumented type can count every operation; comparisons and guard checks
/// read the raw value and are free.
pub trait KernelScalar:
    Copy
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + std::ops::Neg<Output = Self>
{
    fn from_f64(v: f64) -> Self;
    /// Raw value, for branch guards; never counted.
    fn raw(self) -> f64;
    fn sqrt(self) -> Self;
    fn acos(self) -> Self;
    /// Fused sine/cosine, counted as a single `sincos`.
    fn sin_cos(self) -> (Self, Self);
}

impl KernelScalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn raw(self) -> f64 {
        self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn acos(self) -> Self {
        f64::acos(self)
    }
    fn sin_cos(self) -> (Self, Self) {
        (f64::sin(self), f64::cos(self))
    }
}

/// Relative guard on radicands and denominators: values this small against
/// their own term scale error out instead of producing NaN/inf downstream.
/// Matches the generic path's Study-norm singularity threshold.
pub(crate) const GUARD_REL: f64 = 1e-12;

/// Packed even-subalgebra layout of one algebra: slot i holds the canonical
/// blade `masks[i]` times `signs[i]`.
#[derive(Debug)]
pub struct EvenLayout<const N: usize> {
    pub masks: [u32; N],
    pub signs: [f64; N],
    pub labels: [&'static str; N],
}

/// `[1, e12, e13, e14, e23, e24, e34, e1234]` for R_{3,1} and R_4.
pub const EVEN_4D: EvenLayout<8> = EvenLayout {
    masks: [0b0000, 0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100, 0b1111],
    signs: [1.0; 8],
    labels: ["1", "e12", "e13", "e14", "e23", "e24", "e34", "e1234"],
};

/// `[1, e01, e02, e03, e12, e31, e23, e0123]` for R_{3,0,1}. The e31 slot
/// is the flip of the engine's canonical e13.
pub const EVEN_R301: EvenLayout<8> = EvenLayout {
    masks: [0b0000, 0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100, 0b1111],
    signs: [1.0, 1.0, 1.0, 1.0, 1.0, -1.0, 1.0, 1.0],
    labels: ["1", "e01", "e02", "e03", "e12", "e31", "e23", "e0123"],
};

/// `[1, e12..e45, e1234..e2345]` for R_{4,1}.
pub const EVEN_R41: EvenLayout<16> = EvenLayout {
    masks: [
        0b00000, 0b00011, 0b00101, 0b01001, 0b10001, 0b00110, 0b01010, 0b10010, 0b01100,
        0b10100, 0b11000, 0b01111, 0b10111, 0b11011, 0b11101, 0b11110,
    ],
    signs: [1.0; 16],
    labels: [
        "1", "e12", "e13", "e14", "e15", "e23", "e24", "e25", "e34", "e35", "e45", "e1234",
        "e1235", "e1245", "e1345", "e2345",
    ],
};

/// `[e01, e02, e03, e12, e31, e23]` bivector layout for R_{3,0,1}.
pub const BIVECTOR_R301: EvenLayout<6> = EvenLayout {
    masks: [0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100],
    signs: [1.0, 1.0, 1.0, 1.0, -1.0, 1.0],
    labels: ["e01", "e02", "e03", "e12", "e31", "e23"],
};

impl<const N: usize> EvenLayout<N> {
    /// Packs a multivector, erroring if anything lives outside the layout's
    /// slots (relative to the element's size).
    pub fn pack(&self, mv: &Multivector) -> Result<[f64; N], GaError> {
        let mut out = [0.0; N];
        let mut seen = vec![false; mv.coeffs().len()];
        for i in 0..N {
            out[i] = self.signs[i] * mv.coeff(Blade(self.masks[i]));
            seen[self.masks[i] as usize] = true;
        }
        let mut residual = 0.0f64;
        for (mask, &c) in mv.coeffs().iter().enumerate() {
            if !seen[mask] {
                residual = residual.max(c.abs());
            }
        }
        if residual > DEFAULT_TOL * (1.0 + mv.coeff_inf_norm()) {
            return Err(GaError::NotEvenPacked { residual });
        }
        Ok(out)
    }

    pub fn unpack(&self, sig: Signature, packed: &[f64; N]) -> Multivector {
        let mut mv = Multivector::zero(sig);
        for (i, &value) in packed.iter().enumerate() {
            mv.coeffs_mut()[self.masks[i] as usize] = self.signs[i] * value;
        }
        mv
    }
}

/// Lifts an `f64` array into any kernel scalar.
pub fn lift<T: KernelScalar, const N: usize>(x: &[f64; N]) -> [T; N] {
    std::array::from_fn(|i| T::from_f64(x[i]))
}

/// Lowers a kernel-scalar array back to `f64`.
pub fn lower<T: KernelScalar, const N: usize>(x: &[T; N]) -> [f64; N] {
    std::array::from_fn(|i| x[i].raw())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pack_round_trips_and_rejects() {
        let sig = Signature::r301();
        let mut mv = Multivector::zero(sig);
        for (i, &m) in EVEN_R301.masks.iter().enumerate() {
            mv.coeffs_mut()[m as usize] = (i as f64 + 1.0) * 0.25;
        }
        let packed = EVEN_R301.pack(&mv).unwrap();
        let back = EVEN_R301.unpack(sig, &packed);
        assert!(back.approx_eq(&mv, 0.0));

        // e31 slot flips sign relative to canonical e13
        let e13 = Multivector::blade(sig, Blade(0b1010), 2.0);
        let packed = EVEN_R301.pack(&e13).unwrap();
        assert_eq!(packed[5], -2.0);

        let odd = Multivector::blade(sig, Blade(0b0001), 1.0);
        assert!(matches!(
            EVEN_R301.pack(&odd),
            Err(GaError::NotEvenPacked { .. })
        ));
    }

    #[test]
    fn r41_layout_covers_even_subalgebra() {
        for m in &EVEN_R41.masks {
            assert_eq!(m.count_ones() % 2, 0);
        }
        let distinct: std::collections::BTreeSet<_> = EVEN_R41.masks.iter().collect();
        assert_eq!(distinct.len(), 16);
    }
}
