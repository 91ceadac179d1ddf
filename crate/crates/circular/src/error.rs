//! Shared error type for every fallible construction and query in the crate.

use thiserror::Error;

/// Errors raised by the field, group, geometry, disk, design, and nearring
/// constructions.
///
/// Mixing elements of different fields inside arithmetic operators is a
/// programming error and panics instead; the variants here cover invalid
/// inputs and failed mathematical preconditions that callers can hit with
/// well-typed data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The modulus handed to a field constructor is composite (or below 2).
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// The modulus is prime but outside the supported range.
    #[error("modulus {0} is out of range: needed an odd prime below 2^31")]
    ModulusOutOfRange(u64),

    /// Two arguments belong to fields with different moduli.
    #[error("elements of different fields cannot mix (moduli {left} and {right})")]
    MixedFields { left: u64, right: u64 },

    /// Zero has no multiplicative inverse.
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,

    /// Zero has no multiplicative order.
    #[error("zero has no multiplicative order")]
    OrderOfZero,

    /// Zero has no discrete logarithm.
    #[error("zero has no discrete logarithm")]
    DiscreteLogOfZero,

    /// The base of a discrete logarithm does not generate the whole
    /// multiplicative group.
    #[error("{base} is not a primitive root modulo {modulus}")]
    NotPrimitiveRoot { base: u64, modulus: u64 },

    /// A group generator reduced to 0 or 1; the trivial group is excluded.
    #[error("group generator must reduce into 2..=p-1, got {generator} modulo {modulus}")]
    BadGenerator { generator: u64, modulus: u64 },

    /// A circle or disk was requested with radius zero.
    #[error("radius must be nonzero")]
    ZeroRadius,

    /// A circle family was requested with a zero parameter.
    #[error("family parameters must both be nonzero, got radius {radius} and center class {center}")]
    ZeroFamilyParameter { radius: u64, center: u64 },

    /// A tangency profile was requested for a circle outside the family.
    #[error("circle is not a member of the family")]
    CircleNotInFamily,

    /// Two circles from different pairs cannot be intersected.
    #[error("circles come from different pairs: (p={left_p}, g={left_g}) vs (p={right_p}, g={right_g})")]
    PairMismatch {
        left_p: u64,
        left_g: u64,
        right_p: u64,
        right_g: u64,
    },

    /// A fast disk construction was requested for a group of odd order,
    /// where only the brute-force enumeration is defined.
    #[error("fast disk construction requires even group order, |Phi| = {0} is odd")]
    OddGroupOrder(u64),

    /// A closed-form parameter set needs a divisibility condition that the
    /// inputs do not satisfy.
    #[error("{divisor} does not divide {dividend}")]
    OrderDoesNotDivide { divisor: u64, dividend: u64 },

    /// A pair count was requested for a repeated point.
    #[error("pair count needs two distinct points, got {0} twice")]
    IdenticalPoints(u64),

    /// A design point lies outside 0..v-1.
    #[error("point {point} is outside the design's point set 0..{count}")]
    PointOutOfRange { point: u64, count: u64 },

    /// A design block was empty.
    #[error("block {index} is empty")]
    EmptyBlock { index: usize },

    /// No power map projects the multiplicative group onto the subgroup:
    /// the subgroup order and its cofactor in p-1 share a factor.
    #[error("no multiplicative projection onto a subgroup of order {order}: gcd({order}, {cofactor}) != 1")]
    NoProjection { order: u64, cofactor: u64 },

    /// An exhaustive axiom check failed while building a nearring.
    #[error("nearring axiom \"{law}\" fails at ({a}, {b}, {c})")]
    AxiomViolation {
        law: &'static str,
        a: u64,
        b: u64,
        c: u64,
    },

    /// The two multiplications are not mutually left distributive.
    #[error("multiplications are not mutually distributive: law \"{law}\" fails at ({a}, {b}, {c})")]
    NotDoublePlanar {
        law: &'static str,
        a: u64,
        b: u64,
        c: u64,
    },
}
