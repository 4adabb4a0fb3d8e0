use thiserror::Error;

/// Errors raised by the algebra, geometry and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different parent structures: {0}")]
    MismatchedParents(String),
    #[error("GW elements live over different fields: {0} vs {1}")]
    MismatchedField(String, String),
    #[error("minimal polynomial is not irreducible: {0}")]
    Reducible(String),
    #[error("minimal polynomial must be monic of degree >= 1: {0}")]
    InvalidModulus(String),
    #[error("unsupported coefficient field for {0}")]
    UnsupportedCoefficientField(String),
    #[error("unsupported field for {0}")]
    UnsupportedField(String),
    #[error("variable {0} does not occur with positive degree")]
    VariableAbsent(String),
    #[error("not Henselian: {0}")]
    NotHenselian(String),
    #[error("zero input to {0}")]
    ZeroInput(String),
    #[error("p must be an odd prime, got {0}")]
    EvenPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("zero element has no trace form")]
    ZeroElement,
    #[error("polynomial is not homogeneous: offending term {0}")]
    NotHomogeneous(String),
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("curves share a common component")]
    CommonComponent,
    #[error("no generic coordinate change found after {0} attempts")]
    ShearExhausted(usize),
    #[error("Jacobian vanishes at the point; use the power-series path")]
    ZeroJacobian,
    #[error("polynomials are not expressed in the point's chart: {0}")]
    ChartMismatch(String),
    #[error("closed form requires a nonzero coefficient")]
    ZeroCoefficient,
    #[error("series precision exhausted (suspected common component)")]
    PrecisionExhausted,
    #[error("insufficient series precision: need {need}, have {have}")]
    InsufficientPrecision { need: usize, have: usize },
    #[error("Hankel oracle requires a nonzero unit")]
    ZeroUnit,
    #[error("point is not rational over the base field")]
    NonRationalPoint,
    #[error(
        "bundle is not relatively orientable: N = {n_twist} is odd; degrees are only \
         computed relative to the divisor D = {{x0 = 0}}"
    )]
    NotOrientable { n_twist: i64 },
    #[error("intersection point list is incomplete: multiplicities sum to {found}, expected {expected}")]
    IncompletePointSet { found: usize, expected: usize },
    #[error("non-transverse point with non-trivial residue field could not be base changed: {0}")]
    NonTransverseNonRational(String),
    #[error("non-transverse intersection over a finite field; parity theorem not certified")]
    NonTransverseOverFq,
    #[error("intersection point lies on the divisor x0 = 0 in the non-orientable case")]
    PointOnDivisor,
    #[error("integer factorization exceeded its work budget on {0}")]
    FactorizationBudget(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
