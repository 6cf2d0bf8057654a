use alloc::string::String;
use core::fmt;

/// Domain errors shared by every module of the crate.
///
/// Parse errors of the textual grammar are reported separately by
/// [`crate::text::ParseError`]; everything here is a semantic failure on
/// well-formed data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands live over different coefficient fields.
    FieldMismatch,
    /// An operation over F_p was requested where only Q is meaningful
    /// (the chordal metric needs an archimedean absolute value).
    RationalFieldRequired,
    /// Number of variables (or tuple length) differs from what the
    /// operation requires.
    ArityMismatch { expected: usize, found: usize },
    /// Homogeneous degrees are incompatible and neither operand is zero.
    DegreeMismatch { expected: usize, found: usize },
    /// A variable or component index is out of range.
    IndexOutOfRange { index: usize, bound: usize },
    /// Every polynomial handed to the operation is zero.
    AllZero,
    /// `divide_exact` was called on a non-multiple.
    NotDivisible,
    /// A square matrix expected to be invertible is singular.
    SingularMatrix,
    /// The zero vector does not name a projective point.
    ZeroPoint,
    /// A fiber comparison asked for degree m strictly above the ambient
    /// degree d.
    FiberDegreeTooLarge { m: usize, d: usize },
    /// The reference tuple of a fiber computation must be reduced.
    NotReduced,
    /// A parameter point violates the stated base constraint (0-indexed).
    OffBaseVariety { constraint: usize },
    /// Every component of a family vanishes identically at the point.
    UndefinedAtPoint,
    /// A composed or constructed inverse exceeded the proven degree bound;
    /// indicates corrupted input data.
    DegreeBoundViolated { degree: usize, bound: usize },
    /// Re-verification of a stored certificate failed; indicates corrupted
    /// input data.
    CertificateInvalid,
    /// The modulus of a census or an F_p scalar is not prime.
    NotPrime(u64),
    /// The census search space exceeds the configured class budget.
    BudgetExceeded { required: u128, budget: u128 },
    /// Generic-fiber reduction needs an unconstrained parameter base.
    ConstrainedBase,
    /// Anything else worth a sentence.
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FieldMismatch => write!(f, "operands lie over different coefficient fields"),
            Error::RationalFieldRequired => {
                write!(f, "operation is only defined over the rationals")
            }
            Error::ArityMismatch { expected, found } => {
                write!(f, "arity mismatch: expected {expected}, found {found}")
            }
            Error::DegreeMismatch { expected, found } => {
                write!(f, "degree mismatch: expected {expected}, found {found}")
            }
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (bound {bound})")
            }
            Error::AllZero => write!(f, "all inputs are zero"),
            Error::NotDivisible => write!(f, "polynomial division is not exact"),
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::ZeroPoint => write!(f, "the zero vector is not a projective point"),
            Error::FiberDegreeTooLarge { m, d } => {
                write!(f, "fiber degree {m} exceeds ambient degree {d}")
            }
            Error::NotReduced => write!(f, "reference tuple must be reduced"),
            Error::OffBaseVariety { constraint } => {
                write!(f, "point violates base constraint {constraint}")
            }
            Error::UndefinedAtPoint => {
                write!(f, "every component of the family vanishes at the point")
            }
            Error::DegreeBoundViolated { degree, bound } => {
                write!(f, "inverse degree {degree} exceeds the proven bound {bound}")
            }
            Error::CertificateInvalid => write!(f, "stored certificate failed re-verification"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::BudgetExceeded { required, budget } => {
                write!(f, "census needs {required} classes, budget is {budget}")
            }
            Error::ConstrainedBase => {
                write!(f, "generic reduction requires an unconstrained parameter base")
            }
            Error::Unsupported(msg) => write!(f, "{msg}"),
        }
    }
}

impl core::error::Error for Error {}
