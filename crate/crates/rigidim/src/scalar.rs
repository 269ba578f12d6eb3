//! Exact scalar arithmetic over the rationals or a prime field F_p.
//!
//! The coefficient field is chosen at runtime (from input files), so scalars
//! are a concrete enum rather than a type parameter. Rationals are
//! arbitrary-precision and always in lowest terms; F_p elements are reduced
//! representatives in [0, p) with p a prime below 2^31.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Q,
    Fp(u64),
}

impl FieldSpec {
    /// Parses "Q" or "F<p>" with p prime.
    pub fn parse(s: &str) -> Result<FieldSpec> {
        if s == "Q" {
            return Ok(FieldSpec::Q);
        }
        if let Some(rest) = s.strip_prefix('F') {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad field spec {s:?}")))?;
            if p >= 1 << 31 {
                return Err(Error::Parse(format!("modulus {p} too large (need < 2^31)")));
            }
            if !is_prime(p) {
                return Err(Error::Parse(format!("modulus {p} is not prime")));
            }
            return Ok(FieldSpec::Fp(p));
        }
        Err(Error::Parse(format!("bad field spec {s:?} (expected \"Q\" or \"F<p>\")")))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Q => 0,
            FieldSpec::Fp(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => write!(f, "Q"),
            FieldSpec::Fp(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Q(BigRational),
    Fp { p: u64, v: u64 },
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Scalar {
        match field {
            FieldSpec::Q => Scalar::Q(BigRational::zero()),
            FieldSpec::Fp(p) => Scalar::Fp { p, v: 0 },
        }
    }

    pub fn one(field: FieldSpec) -> Scalar {
        match field {
            FieldSpec::Q => Scalar::Q(BigRational::one()),
            FieldSpec::Fp(p) => Scalar::Fp { p, v: 1 % p },
        }
    }

    pub fn from_i64(field: FieldSpec, n: i64) -> Scalar {
        match field {
            FieldSpec::Q => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Fp(p) => Scalar::Fp { p, v: n.rem_euclid(p as i64) as u64 },
        }
    }

    /// A random scalar with small integer value, for randomized searches.
    /// Over F_p the bound is capped by the field size so all residues stay
    /// reachable.
    pub fn random_small<R: rand::Rng>(rng: &mut R, field: FieldSpec, bound: i64) -> Scalar {
        match field {
            FieldSpec::Q => Scalar::from_i64(field, rng.gen_range(-bound..=bound)),
            FieldSpec::Fp(p) => {
                let cap = bound.min(p as i64 - 1).max(1);
                Scalar::from_i64(field, rng.gen_range(-cap..=cap))
            }
        }
    }

    /// Parses an exact scalar string: an integer or a fraction "a/b".
    pub fn parse(field: FieldSpec, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?;
        let den: BigInt = den_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        match field {
            FieldSpec::Q => Ok(Scalar::Q(BigRational::new(num, den))),
            FieldSpec::Fp(p) => {
                let pb = BigInt::from(p);
                let n = ((num % &pb) + &pb) % &pb;
                let d = ((den % &pb) + &pb) % &pb;
                let n: u64 = n.try_into().unwrap();
                let d: u64 = d.try_into().unwrap();
                let dinv = fp_inv(d, p).ok_or_else(|| {
                    Error::Parse(format!("denominator of {s:?} vanishes mod {p}"))
                })?;
                Ok(Scalar::Fp { p, v: fp_mul(n, dinv, p) })
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Q,
            Scalar::Fp { p, .. } => FieldSpec::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { p, v } => *v == 1 % p,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { p: q, v: b }) if p == q => {
                Scalar::Fp { p: *p, v: (a + b) % p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: (p - v) % p },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { p: q, v: b }) if p == q => {
                Scalar::Fp { p: *p, v: fp_mul(*a, *b, *p) }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(Scalar::Q(a.recip()))
                }
            }
            Scalar::Fp { p, v } => fp_inv(*v, *p).map(|v| Scalar::Fp { p: *p, v }),
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv().expect("division by zero"))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

fn fp_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn fp_inv(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    // extended Euclid on (a, p)
    let (mut r0, mut r1) = (a as i128 % p as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    Some(s0.rem_euclid(p as i128) as u64)
}
