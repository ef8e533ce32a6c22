use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::GaError;
use crate::signature::{blade_product, reverse_sign, Blade, Signature};
use crate::DEFAULT_TOL;

/// Parity of a homogeneous-parity multivector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Dense multivector over all 2^n canonical basis blades of a signature.
///
/// Storage order is ascending blade mask; per-algebra packed orderings are a
/// concern of the kernel and document layers, never of this engine. Values
/// are immutable once built and every operation is a pure function.
#[derive(Clone, PartialEq)]
pub struct Multivector {
    sig: Signature,
    coeffs: Vec<f64>,
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Multivector {
            sig,
            coeffs: vec![0.0; sig.blade_count()],
        }
    }

    pub fn scalar(sig: Signature, value: f64) -> Self {
        let mut mv = Self::zero(sig);
        mv.coeffs[0] = value;
        mv
    }

    /// A single canonical basis blade with the given coefficient.
    pub fn blade(sig: Signature, blade: Blade, coeff: f64) -> Self {
        let mut mv = Self::zero(sig);
        assert!(
            (blade.0 as usize) < sig.blade_count(),
            "blade mask {:#b} out of range for n = {}",
            blade.0,
            sig.n()
        );
        mv.coeffs[blade.0 as usize] = coeff;
        mv
    }

    /// Grade-1 element from `n` components in declaration order.
    pub fn vector(sig: Signature, components: &[f64]) -> Self {
        assert_eq!(components.len(), sig.n(), "vector needs n components");
        let mut mv = Self::zero(sig);
        for (i, &c) in components.iter().enumerate() {
            mv.coeffs[1 << i] = c;
        }
        mv
    }

    pub fn from_coeffs(sig: Signature, coeffs: Vec<f64>) -> Self {
        assert_eq!(coeffs.len(), sig.blade_count(), "coefficient count must be 2^n");
        Multivector { sig, coeffs }
    }

    pub fn from_terms(sig: Signature, terms: &[(Blade, f64)]) -> Self {
        let mut mv = Self::zero(sig);
        for &(b, c) in terms {
            assert!((b.0 as usize) < sig.blade_count());
            mv.coeffs[b.0 as usize] += c;
        }
        mv
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, blade: Blade) -> f64 {
        self.coeffs[blade.0 as usize]
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    /// Geometric product. Panics on signature mismatch.
    pub fn gp(&self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.sig, rhs.sig, "geometric product across different signatures");
        let mut out = Multivector::zero(self.sig);
        for (i, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            for (j, &cb) in rhs.coeffs.iter().enumerate() {
                if cb == 0.0 {
                    continue;
                }
                let (sign, mask) = blade_product(&self.sig, i as u32, j as u32);
                if sign != 0.0 {
                    out.coeffs[mask as usize] += sign * ca * cb;
                }
            }
        }
        out
    }

    /// Outer (wedge) product: grade-raising part of the geometric product.
    pub fn outer(&self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.sig, rhs.sig, "outer product across different signatures");
        let mut out = Multivector::zero(self.sig);
        for (i, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            for (j, &cb) in rhs.coeffs.iter().enumerate() {
                if cb == 0.0 || (i & j) != 0 {
                    continue;
                }
                let (sign, mask) = blade_product(&self.sig, i as u32, j as u32);
                out.coeffs[mask as usize] += sign * ca * cb;
            }
        }
        out
    }

    /// "Fat dot" inner product: per blade pair, keep the grade-|r - s| part
    /// of the geometric product. On same-grade simple inputs this coincides
    /// with every other inner-product convention.
    pub fn inner_dot(&self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.sig, rhs.sig, "inner product across different signatures");
        let mut out = Multivector::zero(self.sig);
        for (i, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0.0 {
                continue;
            }
            let ga = (i as u32).count_ones() as i32;
            for (j, &cb) in rhs.coeffs.iter().enumerate() {
                if cb == 0.0 {
                    continue;
                }
                let gb = (j as u32).count_ones() as i32;
                let gout = ((i ^ j) as u32).count_ones() as i32;
                if gout != (ga - gb).abs() {
                    continue;
                }
                let (sign, mask) = blade_product(&self.sig, i as u32, j as u32);
                if sign != 0.0 {
                    out.coeffs[mask as usize] += sign * ca * cb;
                }
            }
        }
        out
    }

    /// Commutator product (a b - b a) / 2.
    pub fn commutator(&self, rhs: &Multivector) -> Multivector {
        (&self.gp(rhs) - &rhs.gp(self)) * 0.5
    }

    /// Reverse, multiplying the grade-k part by (-1)^(k(k-1)/2).
    pub fn reverse(&self) -> Multivector {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            *c *= reverse_sign((i as u32).count_ones() as usize);
        }
        out
    }

    /// Grade involution, multiplying the grade-k part by (-1)^k.
    pub fn grade_involution(&self) -> Multivector {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            if (i as u32).count_ones() % 2 == 1 {
                *c = -*c;
            }
        }
        out
    }

    /// Projection onto grade k; zero when the algebra has no grade k.
    pub fn grade_project(&self, k: usize) -> Multivector {
        let mut out = Multivector::zero(self.sig);
        if k > self.sig.n() {
            return out;
        }
        for (i, &c) in self.coeffs.iter().enumerate() {
            if (i as u32).count_ones() as usize == k {
                out.coeffs[i] = c;
            }
        }
        out
    }

    /// Grades whose coefficients exceed `tol` in absolute value, ascending.
    pub fn grades(&self, tol: f64) -> Vec<usize> {
        let mut present = vec![false; self.sig.n() + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.abs() > tol {
                present[(i as u32).count_ones() as usize] = true;
            }
        }
        (0..=self.sig.n()).filter(|&k| present[k]).collect()
    }

    /// Coefficient norm below which the element counts as the given parity.
    pub fn parity(&self, tol: f64) -> Option<Parity> {
        let mut even = 0.0f64;
        let mut odd = 0.0f64;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if (i as u32).count_ones().is_multiple_of(2) {
                even += c * c;
            } else {
                odd += c * c;
            }
        }
        let (even, odd) = (even.sqrt(), odd.sqrt());
        if odd <= tol * (1.0 + even) {
            Some(Parity::Even)
        } else if even <= tol * (1.0 + odd) {
            Some(Parity::Odd)
        } else {
            None
        }
    }

    /// Graded conjugation U[V] = (-1)^(grade(U) grade(V)) U V U^-1, applied
    /// per grade part of V; U must have homogeneous parity and be invertible.
    pub fn conjugate(&self, v: &Multivector) -> Result<Multivector, GaError> {
        let parity = self
            .parity(DEFAULT_TOL)
            .ok_or(GaError::WrongParity { expected: "homogeneous" })?;
        let inv = self.inverse()?;
        let v_signed = match parity {
            Parity::Even => v.clone(),
            Parity::Odd => v.grade_involution(),
        };
        Ok(self.gp(&v_signed).gp(&inv))
    }

    /// Sandwich with the reverse, X V reverse(X); the rotor action.
    pub fn sandwich(&self, v: &Multivector) -> Multivector {
        self.gp(v).gp(&self.reverse())
    }

    /// Inverse through the polar decomposition: for homogeneous-parity a,
    /// a reverse(a) is a Study number S^2 and a^-1 = reverse(a) (S^2)^-1.
    pub fn inverse(&self) -> Result<Multivector, GaError> {
        let rev = self.reverse();
        let m = self.gp(&rev);
        let s2 = crate::study::StudyNumber::from_multivector(&m, DEFAULT_TOL)?;
        let inv = s2.inverse()?;
        Ok(rev.gp(&inv.to_multivector()))
    }

    /// Largest absolute coefficient.
    pub fn coeff_inf_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Euclidean norm of the coefficient vector (not the metric norm).
    pub fn coeff_l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Componentwise max |self - other|.
    pub fn max_diff(&self, other: &Multivector) -> f64 {
        assert_eq!(self.sig, other.sig);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn approx_eq(&self, other: &Multivector, tol: f64) -> bool {
        self.sig == other.sig && self.max_diff(other) <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0.0 { "-" } else { "+" })?;
            } else if c < 0.0 {
                write!(f, "-")?;
            }
            first = false;
            let mag = c.abs();
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if mag != 1.0 {
                    write!(f, "{mag}")?;
                }
                write!(f, "e")?;
                for idx in Blade(i as u32).indices() {
                    write!(f, "{}", self.sig.basis_label(idx))?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self, self.sig)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Multivector> for &Multivector {
            type Output = Multivector;
            fn $method(self, rhs: &Multivector) -> Multivector {
                assert_eq!(self.sig, rhs.sig, "operands have different signatures");
                let coeffs = self
                    .coeffs
                    .iter()
                    .zip(&rhs.coeffs)
                    .map(|(a, b)| a $op b)
                    .collect();
                Multivector { sig: self.sig, coeffs }
            }
        }
        impl $trait<Multivector> for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Multivector> for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: &Multivector) -> Multivector {
                (&self).$method(rhs)
            }
        }
        impl $trait<Multivector> for &Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, +);
impl_binop!(Sub, sub, -);

impl Mul<&Multivector> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.gp(rhs)
    }
}
impl Mul<Multivector> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.gp(&rhs)
    }
}
impl Mul<&Multivector> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.gp(rhs)
    }
}
impl Mul<Multivector> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.gp(&rhs)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, s: f64) -> Multivector {
        let coeffs = self.coeffs.iter().map(|c| c * s).collect();
        Multivector { sig: self.sig, coeffs }
    }
}
impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, s: f64) -> Multivector {
        (&self) * s
    }
}
impl Div<f64> for &Multivector {
    type Output = Multivector;
    fn div(self, s: f64) -> Multivector {
        self * (1.0 / s)
    }
}
impl Div<f64> for Multivector {
    type Output = Multivector;
    fn div(self, s: f64) -> Multivector {
        (&self) * (1.0 / s)
    }
}
impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self * -1.0
    }
}
impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        (&self) * -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(sig: Signature, mask: u32) -> Multivector {
        Multivector::blade(sig, Blade(mask), 1.0)
    }

    #[test]
    fn metric_contract() {
        let r3 = Signature::r3();
        let e1 = e(r3, 0b001);
        assert!((e1.gp(&e1)).approx_eq(&Multivector::scalar(r3, 1.0), 0.0));

        let pga = Signature::r301();
        let e0 = e(pga, 0b0001);
        assert!(e0.gp(&e0).approx_eq(&Multivector::zero(pga), 0.0));

        // anticommutation
        let e2 = e(r3, 0b010);
        assert!((e1.gp(&e2) + e2.gp(&e1)).approx_eq(&Multivector::zero(r3), 0.0));
    }

    #[test]
    fn squared_mixed_bivector_in_r4() {
        // (2 e12 + e34)^2 = -5 + 4 e1234
        let r4 = Signature::r4();
        let b = Multivector::from_terms(r4, &[(Blade(0b0011), 2.0), (Blade(0b1100), 1.0)]);
        let sq = b.gp(&b);
        let expected =
            Multivector::from_terms(r4, &[(Blade(0), -5.0), (Blade(0b1111), 4.0)]);
        assert!(sq.approx_eq(&expected, 1e-15));
        // grade split of the same product
        assert!(b
            .inner_dot(&b)
            .approx_eq(&Multivector::scalar(r4, -5.0), 1e-15));
        assert!(b
            .outer(&b)
            .approx_eq(&Multivector::blade(r4, Blade(0b1111), 4.0), 1e-15));
        assert!(b
            .commutator(&b)
            .approx_eq(&Multivector::zero(r4), 1e-15));
    }

    #[test]
    fn disjoint_even_blades_commute() {
        let r4 = Signature::r4();
        let e12 = e(r4, 0b0011);
        let e34 = e(r4, 0b1100);
        assert!(e12
            .commutator(&e34)
            .approx_eq(&Multivector::zero(r4), 0.0));
    }

    #[test]
    fn reverse_and_projection() {
        let r4 = Signature::r4();
        let e12 = e(r4, 0b0011);
        assert!(e12.reverse().approx_eq(&-&e12, 0.0));
        let e1234 = e(r4, 0b1111);
        assert!(e1234.reverse().approx_eq(&e1234, 0.0));

        let x = Multivector::from_terms(
            r4,
            &[(Blade(0), 1.0), (Blade(0b0011), 2.0), (Blade(0b1111), 3.0)],
        );
        assert!(x
            .grade_project(4)
            .approx_eq(&Multivector::blade(r4, Blade(0b1111), 3.0), 0.0));
        assert_eq!(x.grades(1e-12), vec![0, 2, 4]);
    }

    #[test]
    fn reverse_antihomomorphism() {
        let r31 = Signature::r31();
        let a = Multivector::from_terms(
            r31,
            &[(Blade(0b0011), 1.5), (Blade(0b1001), -0.5), (Blade(0), 0.25)],
        );
        let b = Multivector::from_terms(r31, &[(Blade(0b0110), 2.0), (Blade(0b1111), 1.0)]);
        let lhs = a.gp(&b).reverse();
        let rhs = b.reverse().gp(&a.reverse());
        assert!(lhs.approx_eq(&rhs, 1e-14));
    }

    #[test]
    fn conjugation_of_vector_by_itself_flips_it() {
        let r3 = Signature::r3();
        let u = Multivector::vector(r3, &[1.0, 0.0, 0.0]);
        let out = u.conjugate(&u).unwrap();
        assert!(out.approx_eq(&-&u, 1e-15));

        let one = Multivector::scalar(r3, 1.0);
        let v = Multivector::vector(r3, &[0.3, -0.4, 0.5]);
        assert!(one.conjugate(&v).unwrap().approx_eq(&v, 1e-15));
    }

    #[test]
    fn inverse_examples() {
        let r4 = Signature::r4();
        let e12 = e(r4, 0b0011);
        assert!(e12.inverse().unwrap().approx_eq(&-&e12, 1e-15));

        let two = Multivector::scalar(r4, 2.0);
        assert!(two
            .inverse()
            .unwrap()
            .approx_eq(&Multivector::scalar(r4, 0.5), 1e-15));
    }

    #[test]
    fn display_formats_blades() {
        let pga = Signature::r301();
        let x = Multivector::from_terms(pga, &[(Blade(0), 1.0), (Blade(0b0011), -2.0)]);
        assert_eq!(format!("{x}"), "1 - 2e01");
    }
}
