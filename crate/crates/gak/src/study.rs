//! Self-reverse Study numbers S = a + bI (grade 0 plus grade 4), the
//! norm/scale objects of the polar decomposition X = S R.
//!
//! For n < 6 the grade-4 part of any even X reverse(X) squares to a scalar,
//! which is what makes the closed-form inverse, square root and inverse
//! square root below possible.

use std::ops::Mul;

use crate::error::GaError;
use crate::multivector::Multivector;
use crate::signature::Signature;
use crate::{DEFAULT_TOL, REL_SINGULAR};

/// Which number system a Study number is isomorphic to, by the sign of
/// (bI)^2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StudyClass {
    /// (bI)^2 < 0
    ComplexLike,
    /// (bI)^2 > 0
    SplitLike,
    /// (bI)^2 = 0
    DualLike,
}

/// Branch used by [`StudyNumber::sqrt`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// c_+ = sqrt((a + |S|)/2), the default.
    CPlus,
    /// c_- = sqrt((a - |S|)/2), taken on the negative real axis.
    CMinus,
    /// Negative real scalar with I^2 = -1: root is sqrt(-a) times the unit
    /// quadvector.
    PseudoscalarAxis,
}

/// A Study number a + bI with scalar a and grade-4 part bI whose square is a
/// real scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct StudyNumber {
    scalar: f64,
    quad: Multivector,
}

impl StudyNumber {
    /// Splits a grade-{0,4} multivector into (scalar, quadvector) parts.
    /// Components at any other grade above `tol` are an error.
    pub fn from_multivector(x: &Multivector, tol: f64) -> Result<Self, GaError> {
        let mut residual = 0.0f64;
        for (i, &c) in x.coeffs().iter().enumerate() {
            let g = (i as u32).count_ones();
            if g != 0 && g != 4 {
                residual = residual.max(c.abs());
            }
        }
        let scale = 1.0 + x.coeff_inf_norm();
        if residual > tol * scale {
            return Err(GaError::NotStudy { residual });
        }
        Ok(StudyNumber {
            scalar: x.scalar_part(),
            quad: if x.sig().n() >= 4 {
                x.grade_project(4)
            } else {
                Multivector::zero(x.sig())
            },
        })
    }

    pub fn from_parts(scalar: f64, quad: Multivector) -> Result<Self, GaError> {
        let mut residual = 0.0f64;
        for (i, &c) in quad.coeffs().iter().enumerate() {
            if (i as u32).count_ones() != 4 {
                residual = residual.max(c.abs());
            }
        }
        if residual > DEFAULT_TOL * (1.0 + quad.coeff_inf_norm()) {
            return Err(GaError::NotStudy { residual });
        }
        Ok(StudyNumber { scalar, quad })
    }

    pub fn real(sig: Signature, a: f64) -> Self {
        StudyNumber {
            scalar: a,
            quad: Multivector::zero(sig),
        }
    }

    pub fn scalar(&self) -> f64 {
        self.scalar
    }

    pub fn quad(&self) -> &Multivector {
        &self.quad
    }

    pub fn sig(&self) -> Signature {
        self.quad.sig()
    }

    pub fn to_multivector(&self) -> Multivector {
        &self.quad + &Multivector::scalar(self.sig(), self.scalar)
    }

    /// (bI)^2, a scalar for every signature handled here.
    pub fn quad_square(&self) -> f64 {
        self.quad.gp(&self.quad).scalar_part()
    }

    /// Study conjugate a - bI.
    pub fn conj(&self) -> StudyNumber {
        StudyNumber {
            scalar: self.scalar,
            quad: -&self.quad,
        }
    }

    pub fn class(&self, tol: f64) -> StudyClass {
        let q2 = self.quad_square();
        let scale = self.magnitude();
        if q2 < -tol * scale * scale {
            StudyClass::ComplexLike
        } else if q2 > tol * scale * scale {
            StudyClass::SplitLike
        } else {
            StudyClass::DualLike
        }
    }

    /// |a| plus the coefficient norm of bI; the scale used for relative
    /// thresholds. (The metric size of bI is useless here: a degenerate I
    /// has (bI)^2 = 0 no matter how large b is.)
    pub fn magnitude(&self) -> f64 {
        self.scalar.abs() + self.quad.coeff_l2_norm()
    }

    /// a^2 - (bI)^2; may be negative, in which case no real norm exists.
    pub fn norm_squared(&self) -> f64 {
        self.scalar * self.scalar - self.quad_square()
    }

    /// The scalar norm sqrt(a^2 - (bI)^2).
    pub fn norm(&self) -> Result<f64, GaError> {
        let n2 = self.norm_squared();
        let scale = self.magnitude();
        if n2 < -DEFAULT_TOL * scale * scale {
            return Err(GaError::NoRealNorm { radicand: n2 });
        }
        Ok(n2.max(0.0).sqrt())
    }

    /// S conj(S) below `REL_SINGULAR` of the squared magnitude: on the
    /// light cone when I^2 = +1, or a pure null quadvector when I^2 = 0.
    pub fn is_singular(&self) -> bool {
        let scale = self.magnitude();
        self.norm_squared().abs() <= (REL_SINGULAR * scale) * (REL_SINGULAR * scale)
    }

    /// conj(S) / (S conj(S)). The denominator is the signed scalar a^2 -
    /// (bI)^2, so split-like numbers below the light cone stay invertible
    /// even though they have no real norm.
    pub fn inverse(&self) -> Result<StudyNumber, GaError> {
        let n2 = self.norm_squared();
        if self.is_singular() {
            return Err(GaError::SingularStudy {
                norm: n2.abs().sqrt(),
            });
        }
        Ok(StudyNumber {
            scalar: self.scalar / n2,
            quad: &self.quad * (-1.0 / n2),
        })
    }

    /// Principal square root c + bI/(2c) with c = sqrt((a +- |S|)/2).
    ///
    /// Branch policy: c_+ unless a = -|S| within `REL_SINGULAR`, then c_-;
    /// a negative real scalar (b = 0) is special-cased to sqrt(-a) times the
    /// unit quadvector when that quadvector squares to -1, and is an error
    /// otherwise.
    pub fn sqrt(&self) -> Result<(StudyNumber, Branch), GaError> {
        let a = self.scalar;
        let scale = self.magnitude();
        let norm = self.norm()?;
        let b_zero = self.quad.coeff_l2_norm() <= REL_SINGULAR * scale;

        if norm <= REL_SINGULAR * scale {
            if b_zero {
                // S = 0: the root is 0.
                if scale <= f64::MIN_POSITIVE {
                    return Ok((StudyNumber::real(self.sig(), 0.0), Branch::CPlus));
                }
                // |a| = |S| = 0 with a != 0 cannot happen; fallthrough below.
            }
            return Err(GaError::SingularStudy { norm });
        }

        if b_zero && a < 0.0 {
            return self.negative_axis_sqrt();
        }

        let branch = if a + norm < REL_SINGULAR * a.abs() {
            Branch::CMinus
        } else {
            Branch::CPlus
        };
        let c2 = match branch {
            Branch::CPlus => 0.5 * (a + norm),
            _ => 0.5 * (a - norm),
        };
        if c2 <= 0.0 {
            return Err(GaError::NoStudySquareRoot);
        }
        let c = c2.sqrt();
        Ok((
            StudyNumber {
                scalar: c,
                quad: &self.quad * (0.5 / c),
            },
            branch,
        ))
    }

    fn negative_axis_sqrt(&self) -> Result<(StudyNumber, Branch), GaError> {
        // The c_+- formulas degenerate on the negative real axis. The root
        // sqrt(-a) I exists exactly when the grade-4 space is the span of a
        // single blade I with I^2 = -1.
        let sig = self.sig();
        if sig.n() != 4 {
            return Err(GaError::NoStudySquareRoot);
        }
        let i_blade = Multivector::blade(sig, crate::signature::Blade(0b1111), 1.0);
        if i_blade.gp(&i_blade).scalar_part() >= 0.0 {
            return Err(GaError::NoStudySquareRoot);
        }
        Ok((
            StudyNumber {
                scalar: 0.0,
                quad: &i_blade * (-self.scalar).sqrt(),
            },
            Branch::PseudoscalarAxis,
        ))
    }

    /// S^(-1/2) = 4c^3/(4c^4 - (bI)^2) - 2c bI/(4c^4 - (bI)^2), same branch
    /// policy as [`sqrt`](Self::sqrt).
    pub fn inv_sqrt(&self) -> Result<(StudyNumber, Branch), GaError> {
        let a = self.scalar;
        let scale = self.magnitude();
        let norm = self.norm()?;
        let b_zero = self.quad.coeff_l2_norm() <= REL_SINGULAR * scale;

        if norm <= REL_SINGULAR * scale {
            return Err(GaError::SingularStudy { norm });
        }
        if b_zero && a < 0.0 {
            let (root, branch) = self.negative_axis_sqrt()?;
            return Ok((root.inverse()?, branch));
        }

        let branch = if a + norm < REL_SINGULAR * a.abs() {
            Branch::CMinus
        } else {
            Branch::CPlus
        };
        let c2 = match branch {
            Branch::CPlus => 0.5 * (a + norm),
            _ => 0.5 * (a - norm),
        };
        if c2 <= 0.0 {
            return Err(GaError::NoStudySquareRoot);
        }
        let c = c2.sqrt();
        let denom = 4.0 * c2 * c2 - self.quad_square();
        if denom.abs() <= REL_SINGULAR * scale * scale {
            return Err(GaError::SingularStudy { norm });
        }
        Ok((
            StudyNumber {
                scalar: 4.0 * c2 * c / denom,
                quad: &self.quad * (-2.0 * c / denom),
            },
            branch,
        ))
    }
}

impl Mul<&StudyNumber> for &StudyNumber {
    type Output = StudyNumber;
    fn mul(self, rhs: &StudyNumber) -> StudyNumber {
        let prod = self.to_multivector().gp(&rhs.to_multivector());
        StudyNumber::from_multivector(&prod, DEFAULT_TOL)
            .expect("product of Study numbers is a Study number for n < 6")
    }
}
