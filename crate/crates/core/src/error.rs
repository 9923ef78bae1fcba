//! Crate-wide error type.

use crate::Integer;

pub type Result<T> = std::result::Result<T, Error>;

/// Whether an error came from malformed input or from a mathematical
/// obstruction met during a computation. The CLI maps the former to exit
/// code 2 and the latter to exit code 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Math,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum Error {
    // -- exactnum --
    #[error("factorize requires n >= 1, got {0}")]
    NonPositiveFactorize(Integer),
    #[error("composite residue {0} exceeds the factorization cap {1}; raise EISENBOX_FACTOR_CAP")]
    UnfactoredResidue(Integer, Integer),
    #[error("{0} is not prime")]
    NotPrime(Integer),
    #[error("lcm of an empty sequence")]
    EmptyLcm,
    #[error("lcm over a sequence containing zero")]
    ZeroInLcm,

    // -- series --
    #[error("operand variable counts differ: {0} vs {1}")]
    NvarsMismatch(usize, usize),
    #[error("operation requires a nonzero input")]
    ZeroInput,
    #[error("series vanishes up to its cap {0}; order undefined at this truncation")]
    ZeroUpToCap(String),
    #[error("weight vector carries no injectivity certificate for cap {0}")]
    MissingInjectivity(u32),
    #[error("weight vector has wrong length: expected {0}, got {1}")]
    WeightLength(usize, usize),
    #[error("series inversion requires a unit (nonzero constant term)")]
    NotAUnit,
    #[error("ramification index must be positive")]
    ZeroRamification,

    // -- frontend --
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("JSON schema violation at {path}: {msg}")]
    Json { path: String, msg: String },

    // -- puiseux / eisenstein / graded --
    #[error("zero polynomial has no Newton polygon")]
    ZeroPolynomial,
    #[error("polynomial must have positive degree in y")]
    ConstantInY,
    #[error("polynomial is not squarefree in y (gcd with its y-derivative has degree {0})")]
    NotSquarefree(usize),
    #[error("polynomial coefficients must be univariate in x for this operation")]
    NotUnivariate,
    #[error("seed does not pin a simple root: residual order {residual} must exceed twice the derivative order {derivative}")]
    SeedAccuracy { residual: String, derivative: String },
    #[error("seed is not an approximate root: P(seed) has order {0} at accuracy {1}")]
    SeedNotRoot(String, String),
    #[error("root requires a field extension of degree {degree} over Q")]
    ExtensionRequired { degree: usize },
    #[error("expansion of the root stalled; the branch is not separable at this seed")]
    NotSeparable,
    #[error("omega-initial form of the denominator base is not a single monomial; perturb omega or supply an expansion direction")]
    InitialFormTie,
    #[error("psi map is singular: chi(lambda) = 0")]
    SingularPsi,
    #[error("cone generated by {0} contains a line; not strongly convex")]
    NotStronglyConvex(String),

    // -- dfinite --
    #[error("trailing recurrence coefficient vanishes at l = {0}, inside the claimed validity range")]
    TrailingCoeffVanishes(i64),
    #[error("recurrence needs at least {0} initial values, got {1}")]
    NotEnoughInitialValues(usize, usize),
    #[error("recurrence contradicts the supplied initial values at l = {0}")]
    InitialValuesInconsistent(i64),
    #[error("differential operator must have a nonzero leading coefficient")]
    ZeroLeadingOde,

    // -- weierstrass --
    #[error("f(0,...,0,x_n) vanishes up to the cap; not regular in the distinguished variable")]
    NotRegular,

    // -- cli-facing guards --
    #[error("{0}")]
    InvalidArgument(String),
    #[error("input size guard: {0} (pass --force to override)")]
    SizeGuard(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            NonPositiveFactorize(_) | NotPrime(_) | EmptyLcm | ZeroInLcm | NvarsMismatch(_, _)
            | ZeroInput | WeightLength(_, _) | Parse { .. } | Json { .. } | ZeroPolynomial
            | ConstantInY | NotUnivariate | ZeroRamification | InvalidArgument(_)
            | SizeGuard(_) | NotEnoughInitialValues(_, _) | ZeroLeadingOde => ErrorKind::Input,
            _ => ErrorKind::Math,
        }
    }
}
