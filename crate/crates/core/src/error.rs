use thiserror::Error;

/// Every failure mode surfaced by the toolkit.
///
/// Variants are grouped loosely by the module that raises them; callers that
/// need a coarse classification (the CLI exit codes, for instance) should use
/// [`Error::kind`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // arith
    #[error("{n} is not a quadratic residue modulo {q}")]
    NonResidue { n: String, q: u64 },
    #[error("{q} divides {n}: ramified square root")]
    Ramified { n: String, q: u64 },
    #[error("{x} is not a unit modulo {modulus}")]
    NotAUnit { x: String, modulus: u64 },
    #[error("target is not in the subgroup generated by the generator")]
    NotInSubgroup,
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("not smooth: surviving cofactor {cofactor}")]
    NotSmooth { cofactor: String },

    // quadfield
    #[error("{0} is not squarefree")]
    NotSquarefree(String),
    #[error("discriminant {discriminant} exceeds the exhaustive bound {bound}")]
    TooLarge { discriminant: String, bound: u64 },
    #[error("the zero element has no factorization")]
    ZeroElement,
    #[error("class number {class_number} is divisible by {ell}")]
    ClassNumberDivisible { class_number: u64, ell: u64 },
    #[error("bad modulus: {0}")]
    BadModulus(String),

    // indexcalc and linear algebra
    #[error("attempt budget exhausted after {attempts} attempts: {what}")]
    BudgetExhausted { attempts: u64, what: String },
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("rank deficient: undetermined unknowns {undetermined:?}")]
    RankDeficient { undetermined: Vec<String> },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("bad support: {0}")]
    BadSupport(String),

    // charsig
    #[error("degenerate target: a = {a} is congruent to +-1")]
    DegenerateTarget { a: u64 },
    #[error("oracle returned an inconsistent answer: {0}")]
    OracleInconsistent(String),
    #[error("teichmuller coordinate of the unit vanishes at the place over {ell}")]
    ZeroY { ell: u64 },
    #[error("conditions failed: {0}")]
    ConditionsFailed(String),

    // ecurve
    #[error("singular curve")]
    Singular,
    #[error("non-invertible denominator modulo {modulus}")]
    NonInvertibleDenominator { modulus: u64 },
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("precision loss at {prime}^{precision}")]
    PrecisionLoss { prime: u64, precision: u32 },
    #[error("bad reduction at {0}")]
    BadReduction(u64),
    #[error("point is not on the curve")]
    NotOnCurve,

    // ecsig
    #[error("singular 2x2 signature system")]
    SingularSystem,
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),

    #[error("serialization: {0}")]
    Serde(String),
}

/// Coarse failure classes, used by drivers to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Precondition,
    Budget,
    Condition,
    Assumption,
    Verification,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            BudgetExhausted { .. } | RankDeficient { .. } => ErrorKind::Budget,
            ConditionsFailed(_) | ClassNumberDivisible { .. } | ZeroY { .. } => ErrorKind::Condition,
            AssumptionViolated(_) => ErrorKind::Assumption,
            VerificationFailed(_) | OracleInconsistent(_) | Inconsistent => ErrorKind::Verification,
            _ => ErrorKind::Precondition,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
