use thiserror::Error;

/// Errors produced by algebra, Study-number, rotor and kernel operations.
///
/// Every variant describes a data-dependent mathematical failure mode; API
/// misuse (mismatched signatures, out-of-range grades) panics instead.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaError {
    #[error("element has components outside grades 0 and 4 (residual {residual:.3e}); not a Study number")]
    NotStudy { residual: f64 },

    #[error("Study number is singular (norm {norm:.3e} below threshold); no inverse or root exists")]
    SingularStudy { norm: f64 },

    #[error("Study norm radicand is negative ({radicand:.3e}); no real norm exists for this element")]
    NoRealNorm { radicand: f64 },

    #[error("no real Study square root exists for this element")]
    NoStudySquareRoot,

    #[error("element cannot be normalized: X reverse(X) is singular, no unambiguous nearest rotor exists")]
    NotNormalizable,

    #[error("element does not have homogeneous {expected} parity")]
    WrongParity { expected: &'static str },

    #[error("element is not a pure bivector (off-grade residual {residual:.3e})")]
    NotBivector { residual: f64 },

    #[error("element is not simple: its square has a non-scalar part (residual {residual:.3e})")]
    NotSimple { residual: f64 },

    #[error("element violates the rotor condition (|R reverse(R) - 1| = {residual:.3e})")]
    NotRotor { residual: f64 },

    #[error("1 + R is singular; R has no principal square root")]
    NoPrincipalSquareRoot,

    #[error("invariant decomposition has complex solutions in this signature (discriminant {discriminant:.3e} < 0); unsupported")]
    ComplexSplit { discriminant: f64 },

    #[error("exponential series did not converge within {max_terms} terms")]
    SeriesDiverged { max_terms: usize },

    #[error("R = -1 is a branch point; the logarithm is undefined there")]
    LogBranchPoint,

    #[error("logarithm is not unique (isoclinic or antipodal angle pair); refusing to guess")]
    NonUniqueLogarithm,

    #[error("probe vector has zero contraction with the input; supply a different probe")]
    ProbeExhausted,

    #[error("odd element is not unit-normalized (|P reverse(P)| must be 1, got {norm:.3e})")]
    NotUnitOdd { norm: f64 },

    #[error("fast kernel input is singular ({context}); normalization undefined")]
    KernelSingular { context: &'static str },

    #[error("fast kernel radicand is negative ({context}); input lies outside the real branch")]
    KernelNegativeRadicand { context: &'static str },

    #[error("fast kernel domain error ({context})")]
    KernelDomain { context: &'static str },

    #[error("packed coefficients have content outside the even subalgebra (residual {residual:.3e})")]
    NotEvenPacked { residual: f64 },

    #[error("result is not finite; the input magnitude overflowed double precision")]
    NonFinite,
}
