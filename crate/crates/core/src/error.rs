use alloc::string::String;

/// Every failure the core can report.
///
/// Variants split into input errors (the caller handed over something outside a
/// documented precondition) and computation errors (the inputs are fine but a
/// required datum is unavailable); see [`Error::is_input_error`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("valuation of zero is infinite")]
    ZeroValuation,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot factor zero")]
    FactorZero,
    #[error("{bits}-bit input exceeds the 128-bit factorization contract")]
    FactorOutOfContract { bits: u64 },
    #[error("leading coefficient vanishes modulo {0}")]
    LeadingCoefficientVanishes(u64),
    #[error("empty range: lo > hi")]
    EmptyRange,
    #[error("invalid field descriptor: {0}")]
    InvalidField(String),
    #[error("invalid extension descriptor: {0}")]
    InvalidExtension(String),
    #[error("qset undefined for this descriptor")]
    QsetUndefined,
    #[error("splitting data required at {0}")]
    SplittingDataRequired(u64),
    #[error("extension not Galois at {0}")]
    NotGaloisAt(u64),
    #[error("{0} ramifies; unramified prime required")]
    Ramified(u64),
    #[error("({a}, {b}) is not in the family")]
    NotInFamily { a: String, b: String },
    #[error("reduction classification only valid for ℓ ≥ 5")]
    ReductionPrimeTooSmall,
    #[error("twist parameter {0} is not squarefree and nonzero")]
    NotSquarefree(String),
    #[error("discriminant part exceeds the bad-prime scan limit")]
    ScanLimitExceeded,
    #[error("p = {0} requires the conjectural flag (only 2, 3, 5 are unconditional)")]
    PrimeNeedsConjecture(u64),
    #[error("p = 2 is not covered by the good-characteristic average")]
    EvenPrimeUnsupported,
    #[error("[K:F] = {degree} is not a power of p = {p}")]
    NotPPower { degree: u64, p: u64 },
    #[error("base field must be the rationals or multiquadratic")]
    BaseNotMultiquadratic,
    #[error("prime cutoff {0} below the minimum of 100")]
    CutoffTooSmall(u64),
    #[error("hypothesis dim(Λ/pΛ)^G ≥ 1 violated")]
    HypothesisViolated,
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
}

impl Error {
    /// True when the error stems from malformed or out-of-contract input rather
    /// than from missing data during an otherwise valid computation.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::SplittingDataRequired(_)
                | Error::NotGaloisAt(_)
                | Error::ScanLimitExceeded
                | Error::FactorOutOfContract { .. }
                | Error::HypothesisViolated
        )
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
