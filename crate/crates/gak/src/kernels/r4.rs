//! R_4 (elliptic/spherical PGA) kernels on the even basis
//! `[1, e12, e13, e14, e23, e24, e34, e1234]`, all basis vectors squaring
//! to +1.

use super::{KernelScalar, GUARD_REL};
use crate::error::GaError;

/// Normalizes an even element with X reverse(X) = s + t e1234 and
/// e1234^2 = +1. Isoclinic elements (|t| = s) have no real inverse root.
pub fn normalize<T: KernelScalar>(x: &[T; 8]) -> Result<[T; 8], GaError> {
    let s = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3] + x[4] * x[4] + x[5] * x[5]
        + x[6] * x[6]
        + x[7] * x[7];
    let t = T::from_f64(2.0) * (x[0] * x[7] - x[1] * x[6] + x[2] * x[5] - x[3] * x[4]);
    let rad = s * s - t * t;
    if rad.raw() < 0.0 {
        return Err(GaError::KernelNegativeRadicand {
            context: "r4 normalize: s^2 - t^2 < 0",
        });
    }
    let root = rad.sqrt();
    let inner = root + s;
    if inner.raw() <= GUARD_REL * (root.raw() + s.raw().abs()) {
        return Err(GaError::KernelSingular {
            context: "r4 normalize: sqrt(s^2 - t^2) + s is not positive",
        });
    }
    let n = inner.sqrt();
    let n2 = n * n;
    let denom = n2 * n2 - t * t;
    if denom.raw().abs() <= GUARD_REL * (n2.raw() * n2.raw() + t.raw() * t.raw()) {
        return Err(GaError::KernelSingular {
            context: "r4 normalize: n^4 - t^2 vanishes (isoclinic input)",
        });
    }
    let m = T::from_f64(std::f64::consts::SQRT_2) * n / denom;
    let a = n2 * m;
    let b = -(t * m);
    Ok([
        a * x[0] + b * x[7],
        a * x[1] - b * x[6],
        a * x[2] + b * x[5],
        a * x[3] - b * x[4],
        a * x[4] - b * x[3],
        a * x[5] + b * x[2],
        a * x[6] - b * x[1],
        a * x[7] + b * x[0],
    ])
}

/// Principal square root: normalize(1 + R).
pub fn sqrt<T: KernelScalar>(r: &[T; 8]) -> Result<[T; 8], GaError> {
    let mut x = *r;
    x[0] = x[0] + T::from_f64(1.0);
    normalize(&x)
}
