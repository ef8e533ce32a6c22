//! Signature-agnostic rotor algorithms: polar-decomposition normalization,
//! principal square roots, the invariant bivector decomposition, and the
//! closed-form exponential and logarithmic maps, plus a truncated-series
//! exponential that serves as the ground truth in tests.

use crate::error::GaError;
use crate::multivector::{Multivector, Parity};
use crate::signature::Signature;
use crate::study::{Branch, StudyNumber};
use crate::{DEFAULT_TOL, SPLIT_DEGENERACY};

/// Maximum number of terms the series exponential will sum.
pub const SERIES_MAX_TERMS: usize = 64;

/// Relative split-width below which the factored exponential hands over to
/// the series: the projectors amplify roundoff by the inverse split width,
/// so near-isoclinic inputs are cheaper to sum than to repair.
const EXP_FALLBACK: f64 = 1e-6;

/// An even multivector R with R reverse(R) = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Rotor {
    value: Multivector,
}

/// Residual of the rotor condition, max |X reverse(X) - 1|.
pub fn rotor_condition_residual(x: &Multivector) -> f64 {
    let one = Multivector::scalar(x.sig(), 1.0);
    x.gp(&x.reverse()).max_diff(&one)
}

impl Rotor {
    /// Wraps an even multivector after checking the rotor condition to
    /// `tol`, scaled by the squared size of the element.
    pub fn try_new(value: Multivector, tol: f64) -> Result<Self, GaError> {
        if value.parity(DEFAULT_TOL) != Some(Parity::Even) {
            return Err(GaError::WrongParity { expected: "even" });
        }
        let residual = rotor_condition_residual(&value);
        let l2 = value.coeff_l2_norm();
        if residual > tol * (1.0 + l2 * l2) {
            return Err(GaError::NotRotor { residual });
        }
        Ok(Rotor { value })
    }

    pub(crate) fn new_unchecked(value: Multivector) -> Self {
        Rotor { value }
    }

    pub fn identity(sig: Signature) -> Self {
        Rotor {
            value: Multivector::scalar(sig, 1.0),
        }
    }

    pub fn as_multivector(&self) -> &Multivector {
        &self.value
    }

    pub fn into_multivector(self) -> Multivector {
        self.value
    }

    pub fn condition_residual(&self) -> f64 {
        rotor_condition_residual(&self.value)
    }

    /// R v reverse(R), the rotor action.
    pub fn sandwich(&self, v: &Multivector) -> Multivector {
        self.value.sandwich(v)
    }
}

/// Result of the polar decomposition X = S R.
#[derive(Clone, Debug)]
pub struct PolarParts {
    /// Study-number scale S = sqrt(X reverse(X)).
    pub scale: StudyNumber,
    /// Rotor part R = (X reverse(X))^(-1/2) X.
    pub rotor: Rotor,
    /// Square-root branch the Study machinery selected.
    pub branch: Branch,
}

/// Invariant decomposition of a bivector into commuting simple parts
/// b_plus + b_minus with scalar squares lambda_minus <= lambda_plus.
#[derive(Clone, Debug)]
pub struct BivectorSplit {
    pub b_plus: Multivector,
    pub b_minus: Multivector,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// Set when the two squares coincide (isoclinic); the returned split is
    /// then the trivial (B, 0) fallback and not unique.
    pub degenerate: bool,
}

/// Polar decomposition of an even element: X = S R with R a rotor.
///
/// Fails when X reverse(X) is Study-singular, in which case no unambiguous
/// nearest rotor exists (null translation generators are the archetype).
pub fn normalize(x: &Multivector) -> Result<PolarParts, GaError> {
    if x.parity(DEFAULT_TOL) != Some(Parity::Even) {
        return Err(GaError::WrongParity { expected: "even" });
    }
    let m = x.gp(&x.reverse());
    let s2 = StudyNumber::from_multivector(&m, DEFAULT_TOL)?;
    let scale = match s2.sqrt() {
        Ok((s, _)) => s,
        Err(GaError::SingularStudy { .. }) => return Err(GaError::NotNormalizable),
        Err(e) => return Err(e),
    };
    let (inv_sqrt, branch) = match s2.inv_sqrt() {
        Ok(v) => v,
        Err(GaError::SingularStudy { .. }) => return Err(GaError::NotNormalizable),
        Err(e) => return Err(e),
    };
    let rotor = inv_sqrt.to_multivector().gp(x);
    Ok(PolarParts {
        scale,
        rotor: Rotor::new_unchecked(rotor),
        branch,
    })
}

/// Principal square root of a rotor, the normalization of 1 + R.
pub fn sqrt_rotor(r: &Rotor) -> Result<Rotor, GaError> {
    let sig = r.as_multivector().sig();
    let x = r.as_multivector() + &Multivector::scalar(sig, 1.0);
    match normalize(&x) {
        Ok(parts) => Ok(parts.rotor),
        Err(GaError::NotNormalizable) => Err(GaError::NoPrincipalSquareRoot),
        Err(e) => Err(e),
    }
}

fn bivector_purity(b: &Multivector) -> f64 {
    (b - &b.grade_project(2)).coeff_inf_norm()
}

/// Splits a bivector into two commuting simple bivectors via the Study
/// projectors of B^2. Inputs whose discriminant is negative (possible only
/// in signatures such as R_{2,2}) are rejected.
pub fn invariant_split(b: &Multivector) -> Result<BivectorSplit, GaError> {
    let sig = b.sig();
    let off = bivector_purity(b);
    if off > DEFAULT_TOL * (1.0 + b.coeff_inf_norm()) {
        return Err(GaError::NotBivector { residual: off });
    }
    let b = b.grade_project(2);

    let m = b.gp(&b);
    let a = m.scalar_part();
    let quad = if sig.n() >= 4 {
        m.grade_project(4)
    } else {
        Multivector::zero(sig)
    };
    let b_scale = b.coeff_l2_norm();
    let m_scale = a.abs() + quad.coeff_l2_norm();

    // B^2 = 0: a single null (translation-like) factor.
    if m_scale <= 1e-12 * b_scale * b_scale + f64::MIN_POSITIVE {
        return Ok(BivectorSplit {
            b_plus: b.clone(),
            b_minus: Multivector::zero(sig),
            lambda_plus: 0.0,
            lambda_minus: 0.0,
            degenerate: false,
        });
    }

    let q2 = quad.gp(&quad).scalar_part();
    let disc = a * a - q2;
    if disc < -SPLIT_DEGENERACY * m_scale * m_scale {
        return Err(GaError::ComplexSplit { discriminant: disc });
    }
    let norm = disc.max(0.0).sqrt();

    if norm < SPLIT_DEGENERACY * m_scale {
        // Isoclinic: both squares coincide and the projectors blow up.
        return Ok(BivectorSplit {
            b_plus: b.clone(),
            b_minus: Multivector::zero(sig),
            lambda_plus: 0.5 * a,
            lambda_minus: 0.5 * a,
            degenerate: true,
        });
    }

    let lambda_plus = 0.5 * (a + norm);
    let lambda_minus = 0.5 * (a - norm);
    // b_+ = P_+ B with P_+ = (1 + conj(B^2)/|B^2|)/2; b_- by subtraction so
    // the sum reconstructs B exactly.
    let conj_m_b = &(&b * a) - &quad.gp(&b);
    let b_plus = &(&b * 0.5) + &(&conj_m_b * (0.5 / norm));
    let b_minus = &b - &b_plus;
    Ok(BivectorSplit {
        b_plus,
        b_minus,
        lambda_plus,
        lambda_minus,
        degenerate: false,
    })
}

/// sin(x)/x, continuous at zero.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// sinh(x)/x, continuous at zero.
fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 + x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sinh() / x
    }
}

/// Exponential of a simple bivector via the generalized Euler formula:
/// cosh(sqrt(l)) + b sinhc(sqrt(l)) with l = b^2, covering rotations
/// (l < 0), translations (l = 0) and boosts (l > 0).
pub fn exp_simple(b: &Multivector) -> Result<Rotor, GaError> {
    let off = bivector_purity(b);
    if off > DEFAULT_TOL * (1.0 + b.coeff_inf_norm()) {
        return Err(GaError::NotBivector { residual: off });
    }
    let sq = b.gp(b);
    let lambda = sq.scalar_part();
    let residual = (&sq - &Multivector::scalar(b.sig(), lambda)).coeff_inf_norm();
    if residual > 1e-7 * (1.0 + lambda.abs()) {
        return Err(GaError::NotSimple { residual });
    }
    let (c, s) = if lambda < 0.0 {
        let ang = (-lambda).sqrt();
        (ang.cos(), sinc(ang))
    } else {
        let ang = lambda.sqrt();
        (ang.cosh(), sinhc(ang))
    };
    let value = &(b * s) + &Multivector::scalar(b.sig(), c);
    Ok(Rotor::new_unchecked(value))
}

/// Closed-form exponential of any bivector: split into commuting simple
/// parts and multiply their Euler-form exponentials. Near-isoclinic inputs
/// fall back to the series.
pub fn exp_bivector(b: &Multivector) -> Result<Rotor, GaError> {
    let split = invariant_split(b)?;
    let width = split.lambda_plus - split.lambda_minus;
    if split.degenerate || width <= EXP_FALLBACK * (split.lambda_plus.abs() + split.lambda_minus.abs()) {
        return exp_series(b, 1e-14 * (1.0 + b.coeff_inf_norm()));
    }
    let r_plus = exp_simple(&split.b_plus)?;
    let r_minus = exp_simple(&split.b_minus)?;
    Ok(Rotor::new_unchecked(
        r_plus.as_multivector().gp(r_minus.as_multivector()),
    ))
}

/// Truncated power series sum of B^j / j!, stopping once the last term's
/// largest coefficient drops below `tol` (at most [`SERIES_MAX_TERMS`]
/// terms). The oracle against which the closed forms are validated.
pub fn exp_series(b: &Multivector, tol: f64) -> Result<Rotor, GaError> {
    let mut acc = Multivector::scalar(b.sig(), 1.0);
    let mut term = acc.clone();
    for j in 1..=SERIES_MAX_TERMS {
        term = term.gp(b) * (1.0 / j as f64);
        acc = &acc + &term;
        if term.coeff_inf_norm() < tol {
            return Ok(Rotor::new_unchecked(acc));
        }
    }
    Err(GaError::SeriesDiverged {
        max_terms: SERIES_MAX_TERMS,
    })
}

#[derive(Clone, Copy, Debug)]
enum FactorClass {
    Rotation(f64),
    Boost(f64),
    Null,
}

fn classify(s: &Multivector, mu: f64) -> FactorClass {
    let n2 = s.coeff_l2_norm();
    if mu.abs() <= 1e-9 * n2 * n2 + f64::MIN_POSITIVE {
        FactorClass::Null
    } else if mu < 0.0 {
        FactorClass::Rotation((-mu).sqrt())
    } else {
        FactorClass::Boost(mu.sqrt())
    }
}

/// Scalar rho with w4 = rho * (s_a/sigma_a)(s_b/sigma_b), the signed product
/// of the two factor sines.
fn quad_coefficient(
    w4: &Multivector,
    sa: &Multivector,
    sigma_a: f64,
    sb: &Multivector,
    sigma_b: f64,
) -> f64 {
    let q4 = (sa * (1.0 / sigma_a)).gp(&(sb * (1.0 / sigma_b))).grade_project(4);
    let qs = q4.gp(&q4).scalar_part();
    w4.gp(&q4).scalar_part() / qs
}

/// Principal logarithm of a rotor: the bivector B with exp(B) = R and the
/// rotation angles in [0, pi].
///
/// Refused at the branch point R = -1 and wherever the factorization is not
/// unique (isoclinic rotors, pure quadvector rotors).
pub fn log_rotor(r: &Rotor) -> Result<Multivector, GaError> {
    let rv = r.as_multivector();
    let sig = rv.sig();
    let w0 = rv.scalar_part();
    let w2 = rv.grade_project(2);
    let w4 = if sig.n() >= 4 {
        rv.grade_project(4)
    } else {
        Multivector::zero(sig)
    };
    let w2n = w2.coeff_l2_norm();
    let w4n = w4.coeff_l2_norm();

    if w2n <= DEFAULT_TOL {
        if w4n <= DEFAULT_TOL {
            return if w0 > 0.0 {
                Ok(Multivector::zero(sig))
            } else {
                Err(GaError::LogBranchPoint)
            };
        }
        // <R>_2 = 0 with <R>_4 != 0: infinitely many factorizations.
        return Err(GaError::NonUniqueLogarithm);
    }

    let split = invariant_split(&w2)?;
    if split.degenerate {
        return Err(GaError::NonUniqueLogarithm);
    }
    let mut parts: Vec<(Multivector, f64)> = Vec::new();
    for (s, mu) in [
        (split.b_plus, split.lambda_plus),
        (split.b_minus, split.lambda_minus),
    ] {
        if s.coeff_l2_norm() > DEFAULT_TOL * (1.0 + w2n) {
            parts.push((s, mu));
        }
    }

    match parts.len() {
        1 => {
            let (s, mu) = parts.pop().expect("one part");
            log_single_factor(sig, w0, &w4, w4n, s, mu)
        }
        2 => {
            let (sb, mub) = parts.pop().expect("two parts");
            let (sa, mua) = parts.pop().expect("two parts");
            log_two_factors(w0, &w4, (sa, mua), (sb, mub))
        }
        _ => Err(GaError::NonUniqueLogarithm),
    }
}

fn log_single_factor(
    sig: Signature,
    w0: f64,
    w4: &Multivector,
    w4n: f64,
    s: Multivector,
    mu: f64,
) -> Result<Multivector, GaError> {
    let cls = classify(&s, mu);
    if w4n > 1e-8 * (1.0 + w0.abs() + s.coeff_l2_norm()) {
        // A second factor is hidden because the visible one is a quarter
        // turn (its cosine multiplies the partner's sine to zero). Only a
        // rotation has zero generalized cosine, so the visible part must be
        // rotation-like; the partner is recovered from its tangent
        // w4 * s^-1 = si/co of the hidden factor.
        let sigma = match cls {
            FactorClass::Rotation(sigma) => sigma,
            _ => return Err(GaError::NonUniqueLogarithm),
        };
        let b_hat = &s * (1.0 / sigma);
        let tangent = w4.gp(&(&s * (1.0 / mu)));
        let mu_t = tangent.gp(&tangent).scalar_part();
        let hidden = match classify(&tangent, mu_t) {
            FactorClass::Rotation(st) => &tangent * (st.atan() / st),
            FactorClass::Boost(st) => {
                if st >= 1.0 {
                    return Err(GaError::NonUniqueLogarithm);
                }
                &tangent * (st.atanh() / st)
            }
            FactorClass::Null => tangent,
        };
        return Ok(&(&b_hat * std::f64::consts::FRAC_PI_2) + &hidden);
    }

    match cls {
        FactorClass::Rotation(sigma) => {
            let theta = sigma.atan2(w0);
            Ok(&s * (theta / sigma))
        }
        FactorClass::Boost(sigma) => {
            if w0 <= 0.0 {
                return Err(GaError::LogBranchPoint);
            }
            let phi = sigma.asinh();
            Ok(&s * (phi / sigma))
        }
        FactorClass::Null => {
            if w0 <= 0.0 {
                return Err(GaError::LogBranchPoint);
            }
            let _ = sig;
            Ok(&s * (1.0 / w0))
        }
    }
}

fn log_two_factors(
    w0: f64,
    w4: &Multivector,
    (sa, mua): (Multivector, f64),
    (sb, mub): (Multivector, f64),
) -> Result<Multivector, GaError> {
    use FactorClass::*;
    match (classify(&sa, mua), classify(&sb, mub)) {
        (Rotation(siga), Rotation(sigb)) => {
            // Circular angle sum/difference: exact and free of the cosine
            // sign headaches near theta = pi/2.
            let rho = quad_coefficient(w4, &sa, siga, &sb, sigb);
            let sum = (siga + sigb).atan2(w0 - rho);
            let diff = (siga - sigb).atan2(w0 + rho);
            let ta = 0.5 * (sum + diff);
            let tb = 0.5 * (sum - diff);
            Ok(&(&sa * (ta / siga)) + &(&sb * (tb / sigb)))
        }
        (Rotation(sigr), Boost(sigb)) => log_rotation_boost(w0, w4, &sa, sigr, &sb, sigb),
        (Boost(sigb), Rotation(sigr)) => log_rotation_boost(w0, w4, &sb, sigr, &sa, sigb),
        (Rotation(sigr), Null) => log_rotation_null(w0, w4, &sa, sigr, &sb),
        (Null, Rotation(sigr)) => log_rotation_null(w0, w4, &sb, sigr, &sa),
        (Boost(sigb), Null) => log_boost_null(w0, &sa, sigb, &sb),
        (Null, Boost(sigb)) => log_boost_null(w0, &sb, sigb, &sa),
        (Boost(sig1), Boost(sig2)) => {
            // Hyperbolic sum/difference; sinh is bijective so no quadrant
            // bookkeeping is needed.
            let sum = (sig1 + sig2).asinh();
            let diff = (sig1 - sig2).asinh();
            let p1 = 0.5 * (sum + diff);
            let p2 = 0.5 * (sum - diff);
            Ok(&(&sa * (p1 / sig1)) + &(&sb * (p2 / sig2)))
        }
        (Null, Null) => Err(GaError::NonUniqueLogarithm),
    }
}

fn log_rotation_boost(
    w0: f64,
    w4: &Multivector,
    sr: &Multivector,
    sigr: f64,
    sb: &Multivector,
    sigb: f64,
) -> Result<Multivector, GaError> {
    let rho = quad_coefficient(w4, sb, sigb, sr, sigr);
    let theta = sigr.atan2(w0);
    let phi = (sigb * theta.cos() + rho * theta.sin()).asinh();
    Ok(&(sr * (theta / sigr)) + &(sb * (phi / sigb)))
}

fn log_rotation_null(
    w0: f64,
    w4: &Multivector,
    sr: &Multivector,
    sigr: f64,
    sn: &Multivector,
) -> Result<Multivector, GaError> {
    let theta = sigr.atan2(w0);
    // cos(theta) s_n recovers cos^2 b_n, w4 s_r recovers -sin^2 b_n; their
    // difference is b_n with no division at all.
    let b_n = &(sn * theta.cos()) - &w4.gp(sr);
    Ok(&(sr * (theta / sigr)) + &b_n)
}

fn log_boost_null(
    w0: f64,
    sb: &Multivector,
    sigb: f64,
    sn: &Multivector,
) -> Result<Multivector, GaError> {
    if w0 <= 0.0 {
        return Err(GaError::LogBranchPoint);
    }
    let phi = sigb.asinh();
    Ok(&(sb * (phi / sigb)) + &(sn * (1.0 / w0)))
}

/// R^t = exp(t log(R)).
pub fn rotor_power(r: &Rotor, t: f64) -> Result<Rotor, GaError> {
    let b = log_rotor(r)?;
    exp_bivector(&(&b * t))
}

/// Splits a unit odd element into a commuting reflection r and rotor R with
/// r R = R r = P.
///
/// Uses the normalized vector part when it is non-null; otherwise projects
/// with `probe` (falling back to the basis vectors) per the degenerate
/// construction R = normalize(x . P), r = P reverse(R).
pub fn decompose_trireflection(
    p: &Multivector,
    probe: Option<&Multivector>,
) -> Result<(Multivector, Rotor), GaError> {
    let sig = p.sig();
    if p.parity(DEFAULT_TOL) != Some(Parity::Odd) {
        return Err(GaError::WrongParity { expected: "odd" });
    }
    let m = p.gp(&p.reverse());
    let s2 = StudyNumber::from_multivector(&m, DEFAULT_TOL)?;
    let norm = s2.norm()?;
    if (norm - 1.0).abs() > 1e-6 {
        return Err(GaError::NotUnitOdd { norm });
    }

    let v = p.grade_project(1);
    let vsq = v.gp(&v).scalar_part();
    let vn = v.coeff_l2_norm();
    if vn > DEFAULT_TOL && vsq.abs() > DEFAULT_TOL * vn * vn {
        let r = &v * (1.0 / vsq.abs().sqrt());
        let r_inv = &r * vsq.signum();
        let big_r = r_inv.gp(p);
        let rotor = Rotor::try_new(big_r, DEFAULT_TOL)?;
        return Ok((r, rotor));
    }

    let tol = DEFAULT_TOL * (1.0 + p.coeff_inf_norm());
    let mut candidates: Vec<Multivector> = Vec::new();
    if let Some(x) = probe {
        candidates.push(x.clone());
    }
    for i in 0..sig.n() {
        let mut comps = vec![0.0; sig.n()];
        comps[i] = 1.0;
        candidates.push(Multivector::vector(sig, &comps));
    }
    for x in &candidates {
        let w = x.inner_dot(p);
        if w.coeff_inf_norm() <= tol {
            continue;
        }
        let parts = match normalize(&w) {
            Ok(parts) => parts,
            Err(_) => continue,
        };
        let rotor = parts.rotor;
        let r = p.gp(&rotor.as_multivector().reverse());
        let grade_res = (&r - &r.grade_project(1)).coeff_inf_norm();
        if grade_res > tol {
            continue;
        }
        let recombined = r.gp(rotor.as_multivector());
        if recombined.max_diff(p) <= 1e-9 * (1.0 + p.coeff_inf_norm()) {
            return Ok((r, rotor));
        }
    }
    Err(GaError::ProbeExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Blade;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn blade(sig: Signature, mask: u32, c: f64) -> Multivector {
        Multivector::blade(sig, Blade(mask), c)
    }

    #[test]
    fn normalize_near_identity_sta() {
        // X = 1 + 0.1 e1234 in R_{3,1}: X reverse(X) = 0.99 + 0.2 e1234,
        // and X is pure scale: R = 1.
        let sig = Signature::r31();
        let x = &Multivector::scalar(sig, 1.0) + &blade(sig, 0b1111, 0.1);
        let parts = normalize(&x).unwrap();
        assert!(parts
            .rotor
            .as_multivector()
            .approx_eq(&Multivector::scalar(sig, 1.0), 1e-12));
        assert!((parts.scale.scalar() - 1.0).abs() < 1e-12);
        assert!((parts.scale.quad().coeff(Blade(0b1111)) - 0.1).abs() < 1e-12);
        // S * R reconstructs X
        let back = parts.scale.to_multivector().gp(parts.rotor.as_multivector());
        assert!(back.approx_eq(&x, 1e-12));
    }

    #[test]
    fn normalize_rotation_generator_gives_sign() {
        let sig = Signature::r3();
        for theta in [2.5, -0.3] {
            let x = blade(sig, 0b011, theta);
            let parts = normalize(&x).unwrap();
            let expected = blade(sig, 0b011, theta.signum());
            assert!(parts.rotor.as_multivector().approx_eq(&expected, 1e-14));
        }
    }

    #[test]
    fn normalize_null_translation_generator_fails() {
        let sig = Signature::r301();
        let x = blade(sig, 0b0011, 0.8); // theta e01
        assert!(matches!(normalize(&x), Err(GaError::NotNormalizable)));
    }

    #[test]
    fn normalize_boost_generator_acts_like_raw_generator() {
        // theta e14 in R_{3,1} normalizes onto the rotation I e14; as a
        // transformation (reverse sandwich) it acts exactly like the
        // |X reverse(X)|-normalized generator sign(theta) e14.
        let sig = Signature::r31();
        let theta = 0.83f64;
        let x = blade(sig, 0b1001, theta);
        let parts = normalize(&x).unwrap();
        let r = parts.rotor.as_multivector();
        assert!(rotor_condition_residual(r) < 1e-12);

        let xhat = blade(sig, 0b1001, theta.signum());
        for mask in [0b0001u32, 0b0010, 0b0100, 0b1000] {
            let v = blade(sig, mask, 1.0);
            let via_rotor = r.sandwich(&v);
            let via_raw = xhat.sandwich(&v);
            assert!(via_rotor.approx_eq(&via_raw, 1e-12));
        }
    }

    #[test]
    fn sqrt_of_identity_is_exact() {
        let sig = Signature::r301();
        let one = Rotor::identity(sig);
        let root = sqrt_rotor(&one).unwrap();
        assert_eq!(root.as_multivector().coeffs(), one.as_multivector().coeffs());
    }

    #[test]
    fn sqrt_of_quarter_turn() {
        // sqrt(e12) = (1 + e12)/sqrt(2) wherever e12^2 = -1.
        for sig in [Signature::r301(), Signature::r4()] {
            let mask = if sig == Signature::r301() { 0b0110 } else { 0b0011 };
            let r = Rotor::try_new(blade(sig, mask, 1.0), DEFAULT_TOL).unwrap();
            let root = sqrt_rotor(&r).unwrap();
            let expected = &(&Multivector::scalar(sig, 1.0) + &blade(sig, mask, 1.0))
                * std::f64::consts::FRAC_1_SQRT_2;
            assert!(root.as_multivector().approx_eq(&expected, 1e-14));
            let sq = root.as_multivector().gp(root.as_multivector());
            assert!(sq.approx_eq(r.as_multivector(), 1e-14));
        }
    }

    #[test]
    fn sqrt_of_minus_one_fails() {
        let sig = Signature::r4();
        let r = Rotor::try_new(Multivector::scalar(sig, -1.0), DEFAULT_TOL).unwrap();
        assert!(matches!(
            sqrt_rotor(&r),
            Err(GaError::NoPrincipalSquareRoot)
        ));
    }

    #[test]
    fn split_worked_example_r4() {
        // split(2 e12 + e34) = (e34, 2 e12) with squares (-1, -4)
        let sig = Signature::r4();
        let b = &blade(sig, 0b0011, 2.0) + &blade(sig, 0b1100, 1.0);
        let split = invariant_split(&b).unwrap();
        assert!(!split.degenerate);
        assert!(split.b_plus.approx_eq(&blade(sig, 0b1100, 1.0), 1e-14));
        assert!(split.b_minus.approx_eq(&blade(sig, 0b0011, 2.0), 1e-14));
        assert!((split.lambda_plus + 1.0).abs() < 1e-14);
        assert!((split.lambda_minus + 4.0).abs() < 1e-14);
        // invariants
        assert!((&split.b_plus + &split.b_minus).approx_eq(&b, 0.0));
        assert!(split
            .b_plus
            .commutator(&split.b_minus)
            .coeff_inf_norm()
            .abs()
            < 1e-14);
    }

    #[test]
    fn split_simple_and_isoclinic() {
        let sig = Signature::r4();
        let simple = blade(sig, 0b0011, 1.0);
        let split = invariant_split(&simple).unwrap();
        assert!(!split.degenerate);
        assert!(split.b_plus.coeff_inf_norm() < 1e-14);
        assert!(split.b_minus.approx_eq(&simple, 1e-14));

        let iso = &blade(sig, 0b0011, 1.0) + &blade(sig, 0b1100, 1.0);
        let split = invariant_split(&iso).unwrap();
        assert!(split.degenerate);
    }

    #[test]
    fn split_rejects_complex_solutions_in_r22() {
        // In R_{2,2}, B = e12 + e34 + e13 has B.B = -1 and B^B = 2 e1234
        // with e1234^2 = +1, so the discriminant is 1 - 4 < 0.
        let r22 = Signature::custom(2, 2, 0);
        let b = &(&blade(r22, 0b0011, 1.0) + &blade(r22, 0b1100, 1.0))
            + &blade(r22, 0b0101, 1.0);
        assert!(matches!(
            invariant_split(&b),
            Err(GaError::ComplexSplit { .. })
        ));
    }

    #[test]
    fn exp_simple_three_regimes() {
        // rotation: exp(pi/2 e12) = e12
        let r3 = Signature::r3();
        let r = exp_simple(&blade(r3, 0b011, FRAC_PI_2)).unwrap();
        assert!(r.as_multivector().approx_eq(&blade(r3, 0b011, 1.0), 1e-15));

        // translation: exp(t e01) = 1 + t e01
        let pga = Signature::r301();
        let t = 0.37;
        let r = exp_simple(&blade(pga, 0b0011, t)).unwrap();
        let expected = &Multivector::scalar(pga, 1.0) + &blade(pga, 0b0011, t);
        assert!(r.as_multivector().approx_eq(&expected, 0.0));

        // boost: exp(phi e14) = cosh phi + sinh phi e14 in R_{3,1}
        let sta = Signature::r31();
        let phi = 0.9;
        let r = exp_simple(&blade(sta, 0b1001, phi)).unwrap();
        let expected =
            &Multivector::scalar(sta, phi.cosh()) + &blade(sta, 0b1001, phi.sinh());
        assert!(r.as_multivector().approx_eq(&expected, 1e-15));
        let series = exp_series(&blade(sta, 0b1001, phi), 1e-15).unwrap();
        assert!(r.as_multivector().approx_eq(series.as_multivector(), 1e-13));
    }

    #[test]
    fn exp_bivector_commuting_quarter_turns() {
        let sig = Signature::r4();
        let b = &blade(sig, 0b0011, FRAC_PI_2) + &blade(sig, 0b1100, FRAC_PI_2);
        let r = exp_bivector(&b).unwrap();
        assert!(r.as_multivector().approx_eq(&blade(sig, 0b1111, 1.0), 1e-10));
    }

    #[test]
    fn exp_series_isoclinic_value() {
        // exp(e12 + e34) = (cos 1 + sin 1 e12)(cos 1 + sin 1 e34)
        let sig = Signature::r4();
        let b = &blade(sig, 0b0011, 1.0) + &blade(sig, 0b1100, 1.0);
        let r = exp_series(&b, 1e-15).unwrap();
        let (c, s) = (1.0f64.cos(), 1.0f64.sin());
        let expected = Multivector::from_terms(
            sig,
            &[
                (Blade(0), c * c),
                (Blade(0b0011), s * c),
                (Blade(0b1100), s * c),
                (Blade(0b1111), s * s),
            ],
        );
        assert!(r.as_multivector().approx_eq(&expected, 1e-13));
        // and exp_bivector agrees through the fallback
        let via_split = exp_bivector(&b).unwrap();
        assert!(via_split.as_multivector().approx_eq(&expected, 1e-13));
    }

    #[test]
    fn log_examples() {
        let pga = Signature::r301();
        let one = Rotor::identity(pga);
        assert_eq!(log_rotor(&one).unwrap().coeff_inf_norm(), 0.0);

        // pure translator
        let t = &Multivector::scalar(pga, 1.0) + &blade(pga, 0b0011, 2.0);
        let r = Rotor::try_new(t, DEFAULT_TOL).unwrap();
        let b = log_rotor(&r).unwrap();
        assert!(b.approx_eq(&blade(pga, 0b0011, 2.0), 1e-14));

        // half-turn rotor e12 -> (pi/2) e12
        let r = Rotor::try_new(blade(pga, 0b0110, 1.0), DEFAULT_TOL).unwrap();
        let b = log_rotor(&r).unwrap();
        assert!(b.approx_eq(&blade(pga, 0b0110, FRAC_PI_2), 1e-14));

        // branch point
        let neg = Rotor::try_new(Multivector::scalar(pga, -1.0), DEFAULT_TOL).unwrap();
        assert!(matches!(log_rotor(&neg), Err(GaError::LogBranchPoint)));

        // pure quadvector rotor e1234 in R_4: refused
        let r4 = Signature::r4();
        let q = Rotor::try_new(blade(r4, 0b1111, 1.0), DEFAULT_TOL).unwrap();
        assert!(matches!(log_rotor(&q), Err(GaError::NonUniqueLogarithm)));
    }

    #[test]
    fn log_round_trips_mixed_boost_rotation() {
        let sig = Signature::r31();
        let b = &blade(sig, 0b1001, 0.7) + &blade(sig, 0b0110, 1.2);
        let r = exp_bivector(&b).unwrap();
        let back = log_rotor(&r).unwrap();
        assert!(back.approx_eq(&b, 1e-12), "got {back}, want {b}");

        // cosine of the rotation angle negative
        let b = &blade(sig, 0b1001, 0.7) + &blade(sig, 0b0110, 2.0);
        let r = exp_bivector(&b).unwrap();
        let back = log_rotor(&r).unwrap();
        assert!(back.approx_eq(&b, 1e-12), "got {back}, want {b}");
    }

    #[test]
    fn log_recovers_hidden_factor_at_quarter_turn() {
        // theta_- = pi/2 exactly: the second factor hides in the quadvector.
        let sig = Signature::r4();
        let b = &blade(sig, 0b0011, FRAC_PI_2) + &blade(sig, 0b1100, 0.6);
        let r = exp_bivector(&b).unwrap();
        let back = log_rotor(&r).unwrap();
        let r2 = exp_bivector(&back).unwrap();
        assert!(r2.as_multivector().approx_eq(r.as_multivector(), 1e-12));
        assert!(back.approx_eq(&b, 1e-10), "got {back}, want {b}");
    }

    #[test]
    fn log_respects_principal_range() {
        // theta > pi comes back reduced modulo the double cover.
        let r3 = Signature::r3();
        let r = exp_simple(&blade(r3, 0b011, 2.0)).unwrap();
        let b = log_rotor(&r).unwrap();
        assert!(b.approx_eq(&blade(r3, 0b011, 2.0), 1e-13));
        let r = exp_simple(&blade(r3, 0b011, PI - 0.01)).unwrap();
        let b = log_rotor(&r).unwrap();
        assert!(b.approx_eq(&blade(r3, 0b011, PI - 0.01), 1e-11));
    }

    #[test]
    fn rotor_power_basics() {
        let sig = Signature::r4();
        let b = &blade(sig, 0b0011, 0.8) + &blade(sig, 0b1100, 0.3);
        let r = exp_bivector(&b).unwrap();
        let p0 = rotor_power(&r, 0.0).unwrap();
        assert!(p0
            .as_multivector()
            .approx_eq(&Multivector::scalar(sig, 1.0), 1e-13));
        let p1 = rotor_power(&r, 1.0).unwrap();
        assert!(p1.as_multivector().approx_eq(r.as_multivector(), 1e-12));
        let half = rotor_power(&r, 0.5).unwrap();
        let sq = half.as_multivector().gp(half.as_multivector());
        assert!(sq.approx_eq(r.as_multivector(), 1e-12));
        // agrees with the principal square root up to the double cover
        let root = sqrt_rotor(&r).unwrap();
        let direct = root.as_multivector();
        let diff_plus = half.as_multivector().max_diff(direct);
        let diff_minus = (-half.as_multivector()).max_diff(direct);
        assert!(diff_plus.min(diff_minus) < 1e-11);
    }

    #[test]
    fn trireflection_examples() {
        let r3 = Signature::r3();
        // decompose(e1) = (e1, 1)
        let p = blade(r3, 0b001, 1.0);
        let (r, big_r) = decompose_trireflection(&p, None).unwrap();
        assert!(r.approx_eq(&p, 1e-14));
        assert!(big_r
            .as_multivector()
            .approx_eq(&Multivector::scalar(r3, 1.0), 1e-14));

        // decompose(e123) with probe e1: R = e23, r = e1
        let p = blade(r3, 0b111, 1.0);
        let probe = blade(r3, 0b001, 1.0);
        let (r, big_r) = decompose_trireflection(&p, Some(&probe)).unwrap();
        assert!(r.approx_eq(&blade(r3, 0b001, 1.0), 1e-14));
        assert!(big_r.as_multivector().approx_eq(&blade(r3, 0b110, 1.0), 1e-14));
        assert!(r.gp(big_r.as_multivector()).approx_eq(&p, 1e-14));

        // decompose(e1 exp(theta e23)) = (e1, exp(theta e23))
        let theta = 0.4;
        let rot = exp_simple(&blade(r3, 0b110, theta)).unwrap();
        let p = blade(r3, 0b001, 1.0).gp(rot.as_multivector());
        let (r, big_r) = decompose_trireflection(&p, None).unwrap();
        assert!(r.approx_eq(&blade(r3, 0b001, 1.0), 1e-13));
        assert!(big_r.as_multivector().approx_eq(rot.as_multivector(), 1e-13));
        let back = r.gp(big_r.as_multivector());
        assert!(back.approx_eq(&p, 1e-13));
        let back2 = big_r.as_multivector().gp(&r);
        assert!(back2.approx_eq(&p, 1e-13));
    }
}
