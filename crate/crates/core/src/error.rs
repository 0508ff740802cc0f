use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group factor {0} is smaller than 2")]
    InvalidFactor(usize),
    #[error("group order exceeds the size cap {cap}")]
    GroupTooLarge { cap: usize },
    #[error("cannot parse group spec {0:?}")]
    BadGroupSpec(String),
    #[error("element {0} is out of range")]
    ElementOutOfRange(usize),
    #[error("group is not cyclic")]
    NotCyclic,
    #[error("{divisor} does not divide {order}")]
    NotDivisor { divisor: usize, order: usize },
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("set is not a subgroup")]
    NotSubgroup,
    #[error("identity in connection set")]
    IdentityInSet,
    #[error("connection set not inverse-closed: inverse {inverse} of {element} missing")]
    NotInverseClosed { element: usize, inverse: usize },
    #[error("graph has {n} vertices, cap is {cap}")]
    VertexCapExceeded { n: usize, cap: usize },
    #[error("empty set")]
    EmptySet,
    #[error("not a partition of the group: {0}")]
    NotPartition(String),
    #[error("objects live over different groups")]
    GroupMismatch,
    #[error("subgroup is not an S-ring subgroup")]
    NotRingSubgroup,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("permutation group does not contain the right regular representation")]
    MissingTranslations,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} does not divide the group order")]
    PrimeNotDivisor(u64),
    #[error("invalid S-system: condition {0} fails")]
    InvalidSSystem(u8),
    #[error("group order must be 2p^e with p an odd prime, got {0}")]
    WrongOrder(usize),
    #[error("multiplier entry {0} is even")]
    EvenMultiplier(u64),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
}

pub type Result<T> = std::result::Result<T, Error>;
