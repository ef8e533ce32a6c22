//! R_{3,0,1} (Euclidean 3D PGA) kernels on the even basis
//! `[1, e01, e02, e03, e12, e31, e23, e0123]` and the bivector basis
//! `[e01, e02, e03, e12, e31, e23]`; e0 is the null vector.
//!
//! The whole normalization is 23 multiplications, 10 additions, 1 square
//! root and 1 division; log is 14/5/1 div/1 acos/1 sqrt and exp is
//! 17/8/2 div/1 sincos/1 sqrt, which the instrumented scalar verifies.

use super::{KernelScalar, GUARD_REL};
use crate::error::GaError;

/// Normalizes an even element; X reverse(X) = s + t e0123 with s the
/// squared Euclidean part, via alpha = 1/sqrt(s), beta = t/(2 sqrt(s)^3).
pub fn normalize<T: KernelScalar>(x: &[T; 8]) -> Result<[T; 8], GaError> {
    let s = x[0] * x[0] + x[4] * x[4] + x[5] * x[5] + x[6] * x[6];
    let full: f64 = x.iter().map(|c| c.raw() * c.raw()).sum();
    if s.raw() <= GUARD_REL * full {
        return Err(GaError::KernelSingular {
            context: "r301 normalize: ideal element (zero Euclidean part)",
        });
    }
    let a = T::from_f64(1.0) / s.sqrt();
    let b = (x[7] * x[0] - (x[1] * x[6] + x[2] * x[5] + x[3] * x[4])) * a * a * a;
    Ok([
        a * x[0],
        a * x[1] + b * x[6],
        a * x[2] + b * x[5],
        a * x[3] + b * x[4],
        a * x[4],
        a * x[5],
        a * x[6],
        a * x[7] - b * x[0],
    ])
}

/// Principal square root: normalize(1 + R).
pub fn sqrt<T: KernelScalar>(r: &[T; 8]) -> Result<[T; 8], GaError> {
    let mut x = *r;
    x[0] = x[0] + T::from_f64(1.0);
    normalize(&x)
}

/// Logarithm of a normalized rotor, with the translator shortcut at
/// R[0] = 1 and a guard at the R[0] = -1 branch point.
pub fn log<T: KernelScalar>(r: &[T; 8]) -> Result<[T; 6], GaError> {
    if r[0].raw() == 1.0 {
        return Ok([
            r[1],
            r[2],
            r[3],
            T::from_f64(0.0),
            T::from_f64(0.0),
            T::from_f64(0.0),
        ]);
    }
    let denom = T::from_f64(1.0) - r[0] * r[0];
    if denom.raw() <= 0.0 {
        return Err(GaError::KernelDomain {
            context: "r301 log: |R[0]| >= 1 away from the translator shortcut",
        });
    }
    let a = T::from_f64(1.0) / denom;
    let b = r[0].acos() * a.sqrt();
    let c = a * r[7] * (T::from_f64(1.0) - r[0] * b);
    Ok([
        c * r[6] + b * r[1],
        c * r[5] + b * r[2],
        c * r[4] + b * r[3],
        b * r[4],
        b * r[5],
        b * r[6],
    ])
}

/// Exponential of a bivector; total, with the translator shortcut when the
/// Euclidean part vanishes.
pub fn exp<T: KernelScalar>(b: &[T; 6]) -> [T; 8] {
    let l = b[3] * b[3] + b[4] * b[4] + b[5] * b[5];
    if l.raw() == 0.0 {
        return [
            T::from_f64(1.0),
            b[0],
            b[1],
            b[2],
            T::from_f64(0.0),
            T::from_f64(0.0),
            T::from_f64(0.0),
            T::from_f64(0.0),
        ];
    }
    let m = b[0] * b[5] + b[1] * b[4] + b[2] * b[3];
    let a = l.sqrt();
    let (sn, c) = a.sin_cos();
    let s = sn / a;
    let t = m / l * (c - s);
    [
        c,
        s * b[0] + t * b[5],
        s * b[1] + t * b[4],
        s * b[2] + t * b[3],
        s * b[3],
        s * b[4],
        s * b[5],
        m * s,
    ]
}
