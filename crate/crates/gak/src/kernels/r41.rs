//! R_{4,1} (3D CGA) kernel on the even basis
//! `[1, e12, e13, e14, e15, e23, e24, e25, e34, e35, e45, e1234, e1235,
//! e1245, e1345, e2345]`, metric e1..e4 = +1, e5 = -1.
//!
//! Here X reverse(X) = s + t_i e_i I carries five grade-4 coefficients; the
//! mixed-sign quadratic TT = -t1^2 + t2^2 + .. + t5^2 plays the role the
//! single t^2 plays in the 4D algebras.

use super::{KernelScalar, GUARD_REL};
use crate::error::GaError;

/// Normalizes an even element on the real branch.
pub fn normalize<T: KernelScalar>(x: &[T; 16]) -> Result<[T; 16], GaError> {
    let two = T::from_f64(2.0);
    let s = x[0] * x[0] - x[10] * x[10] + x[11] * x[11] - x[12] * x[12] - x[13] * x[13]
        - x[14] * x[14]
        - x[15] * x[15]
        + x[1] * x[1]
        + x[2] * x[2]
        + x[3] * x[3]
        - x[4] * x[4]
        + x[5] * x[5]
        + x[6] * x[6]
        - x[7] * x[7]
        + x[8] * x[8]
        - x[9] * x[9];
    let t1 = two
        * (x[0] * x[11] - x[10] * x[12] + x[13] * x[9] - x[14] * x[7] + x[15] * x[4]
            - x[1] * x[8]
            + x[2] * x[6]
            - x[3] * x[5]);
    let t2 = two
        * (x[0] * x[12] - x[10] * x[11] + x[13] * x[8] - x[14] * x[6] + x[15] * x[3]
            - x[1] * x[9]
            + x[2] * x[7]
            - x[4] * x[5]);
    let t3 = two
        * (x[0] * x[13] - x[10] * x[1] + x[11] * x[9] - x[12] * x[8] + x[14] * x[5]
            - x[15] * x[2]
            + x[3] * x[7]
            - x[4] * x[6]);
    let t4 = two
        * (x[0] * x[14] - x[10] * x[2] - x[11] * x[7] + x[12] * x[6] - x[13] * x[5]
            + x[15] * x[1]
            + x[3] * x[9]
            - x[4] * x[8]);
    let t5 = two
        * (x[0] * x[15] - x[10] * x[5] + x[11] * x[4] - x[12] * x[3] + x[13] * x[2]
            - x[14] * x[1]
            + x[6] * x[9]
            - x[7] * x[8]);
    let tt = -(t1 * t1) + t2 * t2 + t3 * t3 + t4 * t4 + t5 * t5;
    let rad = s * s + tt;
    if rad.raw() < 0.0 {
        return Err(GaError::KernelNegativeRadicand {
            context: "r41 normalize: s^2 + tt < 0",
        });
    }
    let root = rad.sqrt();
    let inner = root + s;
    if inner.raw() <= GUARD_REL * (root.raw() + s.raw().abs()) {
        return Err(GaError::KernelSingular {
            context: "r41 normalize: sqrt(s^2 + tt) + s is not positive",
        });
    }
    let n = inner.sqrt();
    let n2 = n * n;
    let denom = n2 * n2 + tt;
    if denom.raw().abs() <= GUARD_REL * (n2.raw() * n2.raw() + tt.raw().abs()) {
        return Err(GaError::KernelSingular {
            context: "r41 normalize: n^4 + tt vanishes",
        });
    }
    let m = T::from_f64(std::f64::consts::SQRT_2) * n / denom;
    let a = n2 * m;
    let (b1, b2, b3, b4, b5) = (-(t1 * m), -(t2 * m), -(t3 * m), -(t4 * m), -(t5 * m));
    Ok([
        a * x[0] + b1 * x[11] - b2 * x[12] - b3 * x[13] - b4 * x[14] - b5 * x[15],
        a * x[1] - b1 * x[8] + b2 * x[9] + b3 * x[10] - b4 * x[15] + b5 * x[14],
        a * x[2] + b1 * x[6] - b2 * x[7] + b3 * x[15] + b4 * x[10] - b5 * x[13],
        a * x[3] - b1 * x[5] - b2 * x[15] - b3 * x[7] - b4 * x[9] + b5 * x[12],
        a * x[4] - b1 * x[15] - b2 * x[5] - b3 * x[6] - b4 * x[8] + b5 * x[11],
        a * x[5] - b1 * x[3] + b2 * x[4] - b3 * x[14] + b4 * x[13] + b5 * x[10],
        a * x[6] + b1 * x[2] + b2 * x[14] + b3 * x[4] - b4 * x[12] - b5 * x[9],
        a * x[7] + b1 * x[14] + b2 * x[2] + b3 * x[3] - b4 * x[11] - b5 * x[8],
        a * x[8] - b1 * x[1] - b2 * x[13] + b3 * x[12] + b4 * x[4] + b5 * x[7],
        a * x[9] - b1 * x[13] - b2 * x[1] + b3 * x[11] + b4 * x[3] + b5 * x[6],
        a * x[10] + b1 * x[12] - b2 * x[11] - b3 * x[1] - b4 * x[2] - b5 * x[5],
        a * x[11] + b1 * x[0] + b2 * x[10] - b3 * x[9] + b4 * x[7] - b5 * x[4],
        a * x[12] + b1 * x[10] + b2 * x[0] - b3 * x[8] + b4 * x[6] - b5 * x[3],
        a * x[13] - b1 * x[9] + b2 * x[8] + b3 * x[0] - b4 * x[5] + b5 * x[2],
        a * x[14] + b1 * x[7] - b2 * x[6] + b3 * x[5] + b4 * x[0] - b5 * x[1],
        a * x[15] - b1 * x[4] + b2 * x[3] - b3 * x[2] + b4 * x[1] + b5 * x[0],
    ])
}

/// Principal square root: normalize(1 + R).
pub fn sqrt<T: KernelScalar>(r: &[T; 16]) -> Result<[T; 16], GaError> {
    let mut x = *r;
    x[0] = x[0] + T::from_f64(1.0);
    normalize(&x)
}
