//! R_{3,1} (STA / hyperbolic PGA) kernels on the even basis
//! `[1, e12, e13, e14, e23, e24, e34, e1234]`, metric e1..e3 = +1,
//! e4 = -1.

use super::{KernelScalar, GUARD_REL};
use crate::error::GaError;

/// Normalizes an even element: X |-> (X reverse(X))^(-1/2) X on the real
/// branch, with X reverse(X) = s + t e1234 and e1234^2 = -1.
pub fn normalize<T: KernelScalar>(x: &[T; 8]) -> Result<[T; 8], GaError> {
    let s = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] - x[3] * x[3] + x[4] * x[4]
        - x[5] * x[5]
        - x[6] * x[6]
        - x[7] * x[7];
    let t = T::from_f64(2.0) * (x[0] * x[7] - x[1] * x[6] + x[2] * x[5] - x[3] * x[4]);
    let root = (s * s + t * t).sqrt();
    let inner = root + s;
    if inner.raw() <= GUARD_REL * (root.raw() + s.raw().abs()) {
        return Err(GaError::KernelSingular {
            context: "r31 normalize: sqrt(s^2 + t^2) + s is not positive",
        });
    }
    let n = inner.sqrt();
    let n2 = n * n;
    let denom = n2 * n2 + t * t;
    if denom.raw() <= GUARD_REL * (root.raw() * root.raw()) {
        return Err(GaError::KernelSingular {
            context: "r31 normalize: n^4 + t^2 vanishes",
        });
    }
    let m = T::from_f64(std::f64::consts::SQRT_2) * n / denom;
    let a = n2 * m;
    let b = -(t * m);
    Ok([
        a * x[0] - b * x[7],
        a * x[1] + b * x[6],
        a * x[2] - b * x[5],
        a * x[3] - b * x[4],
        a * x[4] + b * x[3],
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing_trace_near_identity() {
        // X = 1 + 0.1 e1234: s = 0.99, t = 0.2, n = sqrt(2), m ~= 0.495
        let x = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.1];
        let out = normalize(&x).unwrap();
        assert!((out[0] - 1.0).abs() < 1e-15);
        for v in &out[1..] {
            assert!(v.abs() < 1e-15);
        }
    }

    #[test]
    fn identity_is_fixed() {
        let x = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        assert_eq!(normalize(&x).unwrap(), x);
        assert_eq!(sqrt(&[0.0; 8]).unwrap(), x); // sqrt(0 + 1) applied to R = 0 slot-wise
    }

    #[test]
    fn pure_boost_generator_is_singular() {
        // theta e14: s = -theta^2, t = 0 -> n = 0 in the listing arithmetic
        let x = [0.0, 0.0, 0.0, 0.7, 0.0, 0.0, 0.0, 0.0];
        assert!(matches!(
            normalize(&x),
            Err(GaError::KernelSingular { .. })
        ));
    }
}
