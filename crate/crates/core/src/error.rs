//! Error type shared by every module of the crate.

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in exact computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Two operands live over different fields.
    DescriptorMismatch { expected: String, found: String },
    /// Division or inversion of zero.
    DivisionByZero,
    /// The modulus of a prime field is not prime.
    NotPrime(u64),
    /// A field descriptor violates a structural restriction.
    InvalidDescriptor(String),
    /// A sequence has the wrong length for the operation.
    LengthMismatch { expected: usize, found: usize },
    /// Malformed input that does not fit a more specific variant.
    InvalidInput(String),
    /// Structure constants fail commutativity, associativity, or the unit law.
    StructureCheck(String),
    /// An operation requires characteristic different from two.
    CharacteristicTwo,
    /// The algebra has a degenerate trace form.
    NotEtale,
    /// The supplied elements do not generate the algebra.
    NotGenerating,
    /// The étale algebra has factors of degree > 1 over its base field.
    DoesNotSplit { factor_degrees: Vec<usize> },
    /// Exhaustive search requested over an infinite field.
    InfiniteField,
    /// No row separates the listed column pairs, so no separating family exists.
    SeparationFails { violated: Vec<(usize, usize)> },
    /// An enumeration or search would exceed the configured budget.
    BudgetExceeded { required: u128, budget: u64 },
    /// Symbolic certificates support exactly one relation.
    MultipleRelations { found: usize },
    /// A certificate expression uses a building block that is not allowed.
    InadmissibleExpression(String),
    /// The field contains no square root of -1.
    MinusOneNotSquare,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DescriptorMismatch { expected, found } => {
                write!(f, "field mismatch: expected {expected}, found {found}")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::InvalidDescriptor(msg) => write!(f, "invalid field descriptor: {msg}"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::StructureCheck(msg) => write!(f, "structure constants invalid: {msg}"),
            Error::CharacteristicTwo => write!(f, "operation requires characteristic != 2"),
            Error::NotEtale => write!(f, "algebra is not étale (degenerate trace form)"),
            Error::NotGenerating => write!(f, "elements do not generate the algebra"),
            Error::DoesNotSplit { factor_degrees } => write!(
                f,
                "algebra does not split over its base field (factor degrees {factor_degrees:?})"
            ),
            Error::InfiniteField => write!(f, "exhaustive search requires a finite field"),
            Error::SeparationFails { violated } => {
                write!(
                    f,
                    "no separating family: violated column pairs {violated:?}"
                )
            }
            Error::BudgetExceeded { required, budget } => {
                write!(f, "budget exceeded: {required} needed, budget {budget}")
            }
            Error::MultipleRelations { found } => {
                write!(
                    f,
                    "certificates require exactly one relation, found {found}"
                )
            }
            Error::InadmissibleExpression(msg) => write!(f, "inadmissible expression: {msg}"),
            Error::MinusOneNotSquare => write!(f, "-1 is not a square in this field"),
        }
    }
}

impl std::error::Error for Error {}
