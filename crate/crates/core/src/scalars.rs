//! Exact scalar fields: prime fields `F_l` and the rationals.
//!
//! Everything downstream is generic over [`Field`]. A [`FieldSpec`] is the
//! serializable description (modulus, `q`, `zeta`, their orders) and
//! [`FieldSpec::dispatch`] instantiates the concrete backend.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest prime examined by [`find_prime_field`].
pub const PRIME_SEARCH_CAP: u64 = 1 << 20;

/// Arithmetic of an exact field. Elements are plain values, the field value
/// carries whatever context (the modulus) the operations need.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Ord + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn render(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Option<Self::Elem>;
    /// All elements, when the field is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents need `a` invertible.
    fn powi(&self, a: &Self::Elem, e: i64) -> Result<Self::Elem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            let inv = self
                .inv(a)
                .ok_or_else(|| Error::Domain("negative power of zero".into()))?;
            Ok(self.pow(&inv, e.unsigned_abs()))
        }
    }
}

/// The prime field `Z/lZ`, elements stored reduced in `0..l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    modulus: u64,
}

impl PrimeField {
    pub fn new(modulus: u64) -> Result<Self> {
        if !is_prime(modulus) {
            return Err(Error::Domain(format!("{modulus} is not prime")));
        }
        if modulus >= 1 << 31 {
            return Err(Error::Domain(format!("modulus {modulus} too large")));
        }
        Ok(PrimeField { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.modulus as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.modulus
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(a, self.modulus - 2))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.modulus
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Option<u64> {
        s.trim().parse::<i64>().ok().map(|v| self.from_i64(v))
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.modulus).collect())
    }
}

/// The rationals with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Option<BigRational> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    None
                } else {
                    Some(BigRational::new(n, d))
                }
            }
            None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        }
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
}

/// Multiplicative order, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(v) => Some(v),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(v) => write!(f, "{v}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(v) => s.serialize_u64(*v),
            Order::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Order {
    fn deserialize<D: Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = Order;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a positive integer or \"inf\"")
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> core::result::Result<Order, E> {
                Ok(Order::Finite(v))
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> core::result::Result<Order, E> {
                u64::try_from(v)
                    .map(Order::Finite)
                    .map_err(|_| E::custom("negative order"))
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> core::result::Result<Order, E> {
                match v {
                    "inf" | "infinity" => Ok(Order::Infinite),
                    _ => v
                        .parse()
                        .map(Order::Finite)
                        .map_err(|_| E::custom("bad order")),
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// Which backend a [`FieldSpec`] describes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldKind {
    Prime { modulus: u64 },
    Rationals,
}

/// Serializable description of the base field together with the chosen
/// `q` (order `e`) and `zeta` (order `p`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    #[serde(flatten)]
    pub kind: FieldKind,
    pub q: i64,
    pub zeta: i64,
    pub e: Order,
    pub p: u64,
}

/// A concrete field together with its distinguished `q` and `zeta`.
#[derive(Clone, Debug)]
pub struct Scalars<F: Field> {
    pub field: F,
    pub q: F::Elem,
    pub zeta: F::Elem,
    pub spec: FieldSpec,
}

/// Callback for [`FieldSpec::dispatch`].
pub trait WithScalars {
    type Output;
    fn run<F: Field + 'static>(self, scalars: Scalars<F>) -> Self::Output;
}

impl FieldSpec {
    /// The rationals with `q = 2` and `zeta = -1` (or 1 when `p = 1`).
    pub fn rationals(p: u64) -> Result<Self> {
        let zeta = match p {
            1 => 1,
            2 => -1,
            _ => {
                return Err(Error::Precondition(format!(
                    "the rationals only contain roots of unity of order 1 or 2, not {p}"
                )))
            }
        };
        Ok(FieldSpec {
            kind: FieldKind::Rationals,
            q: 2,
            zeta,
            e: Order::Infinite,
            p,
        })
    }

    pub fn modulus(&self) -> Option<u64> {
        match self.kind {
            FieldKind::Prime { modulus } => Some(modulus),
            FieldKind::Rationals => None,
        }
    }

    /// Check that `q` and `zeta` really have the recorded orders.
    pub fn validate(&self) -> Result<()> {
        struct Check;
        impl WithScalars for Check {
            type Output = Result<()>;
            fn run<F: Field + 'static>(self, s: Scalars<F>) -> Result<()> {
                let oq = element_order(&s.field, &s.q)?;
                let oz = element_order(&s.field, &s.zeta)?;
                if oq != s.spec.e {
                    return Err(Error::Precondition(format!(
                        "q = {} has order {oq}, expected {}",
                        s.spec.q, s.spec.e
                    )));
                }
                if oz != Order::Finite(s.spec.p) {
                    return Err(Error::Precondition(format!(
                        "zeta = {} has order {oz}, expected {}",
                        s.spec.zeta, s.spec.p
                    )));
                }
                if matches!(s.spec.e, Order::Finite(e) if e < 2) {
                    return Err(Error::Precondition("e must be at least 2".into()));
                }
                Ok(())
            }
        }
        self.dispatch_unchecked(Check)?
    }

    /// Instantiate the backend and run `w` on it.
    pub fn dispatch<W: WithScalars>(&self, w: W) -> Result<W::Output> {
        self.validate()?;
        self.dispatch_unchecked(w)
    }

    fn dispatch_unchecked<W: WithScalars>(&self, w: W) -> Result<W::Output> {
        match self.kind {
            FieldKind::Prime { modulus } => {
                let field = PrimeField::new(modulus)?;
                let q = field.from_i64(self.q);
                let zeta = field.from_i64(self.zeta);
                Ok(w.run(Scalars {
                    field,
                    q,
                    zeta,
                    spec: self.clone(),
                }))
            }
            FieldKind::Rationals => {
                let field = Rationals;
                let q = field.from_i64(self.q);
                let zeta = field.from_i64(self.zeta);
                Ok(w.run(Scalars {
                    field,
                    q,
                    zeta,
                    spec: self.clone(),
                }))
            }
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative order of a nonzero element.
pub fn element_order<F: Field>(f: &F, x: &F::Elem) -> Result<Order> {
    if f.is_zero(x) {
        return Err(Error::Domain("zero has no multiplicative order".into()));
    }
    match f.characteristic() {
        0 => {
            if f.is_one(x) {
                Ok(Order::Finite(1))
            } else if f.is_one(&f.neg(x)) {
                Ok(Order::Finite(2))
            } else {
                Ok(Order::Infinite)
            }
        }
        l => {
            let mut acc = x.clone();
            for k in 1..l {
                if f.is_one(&acc) {
                    return Ok(Order::Finite(k));
                }
                acc = f.mul(&acc, x);
            }
            Err(Error::Domain("element order not found".into()))
        }
    }
}

/// Smallest prime `l >= min_prime` with `l = 1 mod lcm(e, p)`, together with
/// the smallest elements of exact orders `e` and `p`.
pub fn find_prime_field(e: u64, p: u64, min_prime: u64) -> Result<FieldSpec> {
    if e < 2 {
        return Err(Error::Precondition(format!("e must be at least 2, got {e}")));
    }
    if p < 1 {
        return Err(Error::Precondition("p must be positive".into()));
    }
    let m = num_integer::lcm(e, p);
    let mut l = min_prime.max(2);
    let rem = (l + m - 1) % m;
    if rem != 0 {
        l += m - rem;
    }
    while l <= PRIME_SEARCH_CAP {
        if is_prime(l) {
            let f = PrimeField::new(l)?;
            let q = smallest_of_order(&f, e);
            let zeta = smallest_of_order(&f, p);
            if let (Some(q), Some(zeta)) = (q, zeta) {
                return Ok(FieldSpec {
                    kind: FieldKind::Prime { modulus: l },
                    q: q as i64,
                    zeta: zeta as i64,
                    e: Order::Finite(e),
                    p,
                });
            }
        }
        l += m;
    }
    Err(Error::SearchCap {
        what: format!("prime l = 1 mod {m}"),
        cap: PRIME_SEARCH_CAP,
    })
}

fn smallest_of_order(f: &PrimeField, k: u64) -> Option<u64> {
    (1..f.modulus()).find(|x| element_order(f, x) == Ok(Order::Finite(k)))
}
