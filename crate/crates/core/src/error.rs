use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{k} exceeds the size bound of {bound} elements")]
    FieldTooLarge { p: u32, k: u32, bound: u64 },
    #[error("modulus is not monic")]
    ModulusNotMonic,
    #[error("modulus has degree {found}, expected {expected}")]
    ModulusWrongDegree { expected: usize, found: usize },
    #[error("modulus coefficient {0} is not reduced mod p")]
    ModulusCoefficientOutOfRange(u32),
    #[error("modulus is reducible over Z_p")]
    ModulusReducible,
    #[error("modulus is irreducible but not primitive: x has order {order}, expected {expected}")]
    ModulusNotPrimitive { order: u32, expected: u32 },
    #[error("no primitive polynomial of degree {k} over Z_{p}")]
    NoPrimitivePolynomial { p: u32, k: u32 },
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("element encoding {0} is out of range for this field")]
    EncodingOutOfRange(u64),
    #[error("coefficient vector has length {found}, expected {expected}")]
    WrongCoefficientCount { expected: usize, found: usize },
    #[error("zero has no discrete logarithm")]
    ZeroLog,
    #[error("expected {expected} elements, got {found}")]
    WrongElementCount { expected: usize, found: usize },
    #[error("elements do not form a basis over the prime field")]
    NotABasis,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("layout has duplicate cell value {0}")]
    DuplicateCells(u32),
    #[error("layout shape {rows}x{cols} does not match {len} cells")]
    LayoutShape {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("host has {found} edges but the target has {expected}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("no Hamiltonian pair found for C_{0} x C_{0}")]
    HamiltonianPairNotFound(usize),
    #[error("malformed design: {0}")]
    MalformedDesign(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
