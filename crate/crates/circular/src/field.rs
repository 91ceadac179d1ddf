//! Exact arithmetic in the prime field Z_p.
//!
//! Everything else in the crate lives on top of this module: group orbits,
//! circles, disks, and block designs are all families of residues. Moduli
//! are capped below 2^31 so that any product of two reduced residues fits
//! in a `u64` without overflow, which keeps the whole crate exact with no
//! big-integer machinery. The experiments this crate exists for use tiny
//! primes anyway.

use crate::error::Error;
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Exclusive upper bound on field moduli; keeps products of two reduced
/// residues below 2^62.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Deterministic primality test, exact for every `u64`.
///
/// Trial division by the first twelve primes, then one Miller-Rabin round
/// per witness from a base set known to decide 64-bit inputs. Total
/// function: 0 and 1 simply return false.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &WITNESSES {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Distinct prime factors of n, ascending.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All divisors of a positive integer, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0, "divisors are only defined for positive integers");
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Inverse of a modulo m when gcd(a, m) = 1, by the extended Euclidean
/// algorithm.
pub(crate) fn invert_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    let m = m as i128;
    Some(((old_s % m + m) % m) as u64)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Default)]
struct FieldTables {
    root: OnceLock<u64>,
    log: OnceLock<Vec<u32>>,
}

/// The prime field Z_p for an odd prime p below 2^31.
///
/// Cloning is cheap: the lazily built primitive-root and index tables sit
/// behind a shared pointer. Equality and hashing look only at the modulus,
/// and every operation is pure, so fields can be shared across threads.
#[derive(Clone)]
pub struct PrimeField {
    p: u64,
    tables: Arc<FieldTables>,
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for PrimeField {}

impl std::hash::Hash for PrimeField {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p.hash(state);
    }
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeField({})", self.p)
    }
}

impl PrimeField {
    /// Builds Z_p; p must be a prime in 3..2^31.
    pub fn new(p: u64) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !(3..MAX_MODULUS).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        Ok(Self {
            p,
            tables: Arc::new(FieldTables::default()),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// The residue of any integer in this field, reduced mod p.
    pub fn element(&self, value: u64) -> FieldElement {
        FieldElement {
            value: value % self.p,
            modulus: self.p,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// All residues 0, 1, ..., p-1 in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let p = self.p;
        (0..p).map(move |value| FieldElement { value, modulus: p })
    }

    /// The smallest positive residue generating the whole multiplicative
    /// group, found deterministically and cached.
    pub fn primitive_root(&self) -> FieldElement {
        let root = *self.tables.root.get_or_init(|| {
            let m = self.p - 1;
            let factors = prime_factors(m);
            (2..self.p)
                .find(|&g| factors.iter().all(|&q| pow_mod(g, m / q, self.p) != 1))
                .expect("every prime field has a primitive root")
        });
        self.element(root)
    }

    fn log_table(&self) -> &[u32] {
        self.tables.log.get_or_init(|| {
            let root = self.primitive_root().value();
            let mut table = vec![u32::MAX; self.p as usize];
            let mut x = 1u64;
            for e in 0..self.p - 1 {
                table[x as usize] = e as u32;
                x = x * root % self.p;
            }
            table
        })
    }

    /// The unique exponent e in 0..p-1 with base^e = x.
    ///
    /// The base must be a primitive root and x nonzero. Answers come from a
    /// full index table built once per field on first use (O(p) memory),
    /// since a field that gets one logarithm query tends to get many.
    pub fn discrete_log(&self, base: FieldElement, x: FieldElement) -> Result<u64, Error> {
        self.check_member(base)?;
        self.check_member(x)?;
        if x.is_zero() {
            return Err(Error::DiscreteLogOfZero);
        }
        let not_root = Error::NotPrimitiveRoot {
            base: base.value,
            modulus: self.p,
        };
        if base.is_zero() {
            return Err(not_root);
        }
        let table = self.log_table();
        let m = self.p - 1;
        let log_base = u64::from(table[base.value as usize]);
        let log_x = u64::from(table[x.value as usize]);
        // base = root^log_base generates the group iff log_base is a unit
        // mod p-1; then ind_base(x) = log_x / log_base in Z_{p-1}.
        let inv = invert_mod(log_base, m).ok_or(not_root)?;
        Ok(log_x * inv % m)
    }

    fn check_member(&self, x: FieldElement) -> Result<(), Error> {
        if x.modulus != self.p {
            return Err(Error::MixedFields {
                left: self.p,
                right: x.modulus,
            });
        }
        Ok(())
    }
}

/// A residue carrying its modulus.
///
/// Arithmetic operators require both operands to come from the same field
/// and panic otherwise; mixing fields is a bug in the caller, not an input
/// condition. Fallible operations (inverse, order) return typed errors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u64,
    modulus: u64,
}

impl FieldElement {
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(self) -> Result<Self, Error> {
        if self.value == 0 {
            return Err(Error::InverseOfZero);
        }
        Ok(self.pow(self.modulus - 2))
    }

    /// Square-and-multiply power with a plain integer exponent.
    pub fn pow(self, exp: u64) -> Self {
        Self {
            value: pow_mod(self.value, exp, self.modulus),
            modulus: self.modulus,
        }
    }

    /// Smallest k >= 1 with self^k = 1. Always divides p - 1, so only the
    /// divisors of p - 1 are probed, in ascending order.
    pub fn mult_order(self) -> Result<u64, Error> {
        if self.value == 0 {
            return Err(Error::OrderOfZero);
        }
        for d in divisors(self.modulus - 1) {
            if self.pow(d).value == 1 {
                return Ok(d);
            }
        }
        unreachable!("the order of a unit divides p - 1")
    }

    #[track_caller]
    fn assert_same_field(self, other: Self, op: &str) {
        assert_eq!(
            self.modulus, other.modulus,
            "cannot {op} elements of different fields"
        );
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl std::ops::Add for FieldElement {
    type Output = Self;
    #[track_caller]
    fn add(self, rhs: Self) -> Self {
        self.assert_same_field(rhs, "add");
        Self {
            value: (self.value + rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl std::ops::Sub for FieldElement {
    type Output = Self;
    #[track_caller]
    fn sub(self, rhs: Self) -> Self {
        self.assert_same_field(rhs, "subtract");
        Self {
            value: (self.value + self.modulus - rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl std::ops::Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl std::ops::Mul for FieldElement {
    type Output = Self;
    #[track_caller]
    fn mul(self, rhs: Self) -> Self {
        self.assert_same_field(rhs, "multiply");
        Self {
            value: self.value * rhs.value % self.modulus,
            modulus: self.modulus,
        }
    }
}
