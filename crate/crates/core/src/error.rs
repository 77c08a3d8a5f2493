use alloc::string::String;
use core::fmt;

/// Errors shared by every module of the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// `p` is not an odd prime ≥ 3.
    InvalidPrime(u64),
    /// Requested working precision is zero.
    ZeroPrecision,
    /// Two operands belong to different `PadicContext`s.
    ContextMismatch,
    /// Division by exact zero, or by a value that is zero to its full
    /// claimed precision (its valuation is unknown).
    DivisionByZero,
    /// An argument required to be a p-adic unit is divisible by p.
    NotAUnit,
    /// `pow_s` requires a base ≡ 1 (mod p).
    BaseNotOneModP,
    /// An exponent or argument must have valuation ≥ 0.
    NotIntegral,
    /// A rational with p in its denominator cannot be reduced mod p^N.
    PInDenominator,
    /// The q-parameter must satisfy v_p(q-1) ≥ 1.
    QNotNearOne,
    /// A modulus of a character factor is not an odd prime.
    InvalidFactorPrime(u64),
    /// Character factor primes must be distinct.
    DuplicateFactorPrime(u64),
    /// Character values are not rational (order > 2) but the exact
    /// rational backend was requested.
    CharacterNotRational,
    /// `F` must be an odd positive multiple of the relevant conductor.
    BadMultiple { f: u64, conductor: u64 },
    /// The shift in the d-shifted functional equation must be odd.
    EvenShift(u64),
    /// Anything else, with a human-readable message.
    Other(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPrime(p) => write!(f, "p = {p} is not an odd prime >= 3"),
            Error::ZeroPrecision => write!(f, "working precision must be >= 1"),
            Error::ContextMismatch => write!(f, "operands belong to different p-adic contexts"),
            Error::DivisionByZero => {
                write!(f, "division by zero (exact zero or zero to full precision)")
            }
            Error::NotAUnit => write!(f, "argument is divisible by p but must be a p-adic unit"),
            Error::BaseNotOneModP => write!(f, "pow_s base must be congruent to 1 mod p"),
            Error::NotIntegral => write!(f, "argument must have valuation >= 0"),
            Error::PInDenominator => {
                write!(f, "rational has p in its denominator and cannot be reduced mod p^N")
            }
            Error::QNotNearOne => write!(f, "q must satisfy v_p(q-1) >= 1"),
            Error::InvalidFactorPrime(ell) => {
                write!(f, "character factor modulus {ell} is not an odd prime")
            }
            Error::DuplicateFactorPrime(ell) => {
                write!(f, "character factor prime {ell} appears more than once")
            }
            Error::CharacterNotRational => {
                write!(f, "character has order > 2; values are not rational numbers")
            }
            Error::BadMultiple { f: ff, conductor } => {
                write!(f, "F = {ff} is not an odd positive multiple of the conductor {conductor}")
            }
            Error::EvenShift(d) => write!(f, "shift d = {d} must be odd"),
            Error::Other(msg) => write!(f, "{msg}"),
        }
    }
}

impl core::error::Error for Error {}
