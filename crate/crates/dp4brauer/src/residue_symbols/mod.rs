//! Closed-form local symbols: quadratic Hilbert symbols over `ℚ_v` and over
//! the completions of `ℚ(√5)`, and the local Artin map of cyclotomic fields.

pub mod sqrt5;

use crate::arith::{is_prime, mod_pow, prime_divisors, rat_mod, split_p, QmodZ};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use sqrt5::{hilbert_sqrt5, places_above, QuadElem, QuadFieldPlace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolError {
    #[error("zero argument")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a place of this field")]
    BadPlace(String),
    #[error("quotient is not cyclic with the given generator")]
    NotCyclic,
    #[error("valuation {0} exceeds the precision cap")]
    PrecisionCap(i64),
}

/// A place of ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PlaceQ {
    Prime(u64),
    Real,
}

impl PlaceQ {
    pub fn prime(p: u64) -> Result<PlaceQ, SymbolError> {
        if is_prime(p) {
            Ok(PlaceQ::Prime(p))
        } else {
            Err(SymbolError::NotPrime(p))
        }
    }
}

impl std::fmt::Display for PlaceQ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PlaceQ::Prime(p) => write!(f, "{p}"),
            PlaceQ::Real => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for PlaceQ {
    type Err = SymbolError;
    fn from_str(s: &str) -> Result<Self, SymbolError> {
        match s.trim() {
            "inf" | "oo" | "∞" | "real" => Ok(PlaceQ::Real),
            t => PlaceQ::prime(t.parse().map_err(|_| SymbolError::BadPlace(t.into()))?),
        }
    }
}

/// Real place and every prime where `a` or `b` is not a unit, plus 2.
pub fn bad_places(xs: &[&BigRational]) -> Vec<PlaceQ> {
    let mut ps = vec![2u64];
    for x in xs {
        for n in [x.numer(), x.denom()] {
            ps.extend(prime_divisors(n).iter().map(|p| p.to_u64().expect("prime fits in 64 bits")));
        }
    }
    ps.sort_unstable();
    ps.dedup();
    let mut out: Vec<PlaceQ> = ps.into_iter().map(PlaceQ::Prime).collect();
    out.push(PlaceQ::Real);
    out
}

pub(crate) fn legendre(r: u64, p: u64) -> i8 {
    match mod_pow(r, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

pub fn hilbert_real(a: &BigRational, b: &BigRational) -> i8 {
    if a.is_negative() && b.is_negative() {
        -1
    } else {
        1
    }
}

/// Quadratic Hilbert symbol `(a, b)_v`: `+1` iff `b` is a norm from
/// `ℚ_v(√a)`.
pub fn hilbert_qp(a: &BigRational, b: &BigRational, v: PlaceQ) -> i8 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol of zero");
    let p = match v {
        PlaceQ::Real => return hilbert_real(a, b),
        PlaceQ::Prime(p) => p,
    };
    let pb = BigInt::from(p);
    let (al, u) = split_p(a, &pb);
    let (be, w) = split_p(b, &pb);
    if p == 2 {
        let m8 = BigInt::from(8);
        let u = rat_mod(&u, &m8).to_u64().unwrap();
        let w = rat_mod(&w, &m8).to_u64().unwrap();
        let eps = |x: u64| ((x - 1) / 2) % 2;
        let omega = |x: u64| ((x * x - 1) / 8) % 2;
        let e = eps(u) * eps(w) + (al.rem_euclid(2) as u64) * omega(w) + (be.rem_euclid(2) as u64) * omega(u);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let ur = rat_mod(&u, &pb).to_u64().unwrap();
    let wr = rat_mod(&w, &pb).to_u64().unwrap();
    let mut s = 1i8;
    if al.rem_euclid(2) == 1 && be.rem_euclid(2) == 1 && p % 4 == 3 {
        s = -s;
    }
    if be.rem_euclid(2) == 1 {
        s *= legendre(ur, p);
    }
    if al.rem_euclid(2) == 1 {
        s *= legendre(wr, p);
    }
    s
}

/// `±1 ↦ 0, 1/2`.
pub fn sign_to_invariant(s: i8) -> QmodZ {
    if s == 1 {
        QmodZ::zero()
    } else {
        QmodZ::half()
    }
}

/// The quotient `(ℤ/m)*/H` for the abelian field fixed by `H`. Cosets are
/// named by their least member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicQuotient {
    pub m: u64,
    pub h: Vec<u64>,
}

impl CyclotomicQuotient {
    pub fn new(m: u64, h: &[u64]) -> Self {
        let mut h: Vec<u64> = h.iter().map(|x| x % m).collect();
        if !h.contains(&(1 % m)) {
            h.push(1 % m);
        }
        // close under multiplication
        loop {
            let mut grew = false;
            for i in 0..h.len() {
                for j in 0..h.len() {
                    let x = h[i] * h[j] % m;
                    if !h.contains(&x) {
                        h.push(x);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        h.sort_unstable();
        CyclotomicQuotient { m, h }
    }

    /// `ℚ(ζ_m)` itself.
    pub fn full(m: u64) -> Self {
        CyclotomicQuotient::new(m, &[1])
    }

    /// The maximal real subfield.
    pub fn real_subfield(m: u64) -> Self {
        CyclotomicQuotient::new(m, &[1, m - 1])
    }

    pub fn coset(&self, c: u64) -> u64 {
        let c = c % self.m;
        self.h.iter().map(|x| x * c % self.m).min().unwrap()
    }

    pub fn identity(&self) -> u64 {
        self.coset(1)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.coset(a * b % self.m)
    }
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let e = num_integer::Integer::extended_gcd(&(a as i128), &(m as i128));
    assert_eq!(e.gcd, 1, "not invertible");
    e.x.rem_euclid(m as i128) as u64
}

/// Local Artin image of `a` in `(ℤ/m)*/H`. At `p ∤ m` it is `p^{v(a)}`; at
/// `p | m`, with `m = p^k m′` and `a = p^v u`, it is the class `c` with
/// `c ≡ p^v mod m′` and `c ≡ u⁻¹ mod p^k`; at the real place it is the sign of
/// `a`.
pub fn artin_cyclotomic(a: &BigRational, v: PlaceQ, quot: &CyclotomicQuotient) -> u64 {
    assert!(!a.is_zero(), "Artin symbol of zero");
    let m = quot.m;
    let p = match v {
        PlaceQ::Real => return quot.coset(if a.is_negative() { m - 1 } else { 1 }),
        PlaceQ::Prime(p) => p,
    };
    let (val, u) = split_p(a, &BigInt::from(p));
    let mut pk = 1u64;
    while m % (pk * p) == 0 {
        pk *= p;
    }
    let mp = m / pk;
    let pv = |modulus: u64| {
        let b = mod_pow(p, val.unsigned_abs(), modulus);
        if val >= 0 || modulus == 1 {
            b
        } else {
            inv_mod(b, modulus)
        }
    };
    if pk == 1 {
        return quot.coset(pv(m));
    }
    let c1 = pv(mp);
    let c2 = inv_mod(rat_mod(&u, &BigInt::from(pk)).to_u64().unwrap(), pk);
    // CRT
    let c = if mp == 1 {
        c2
    } else {
        let t = ((c1 + mp - c2 % mp) % mp) * inv_mod(pk % mp, mp) % mp;
        c2 + pk * t
    };
    quot.coset(c % m)
}

/// A cyclic quotient `(ℤ/m)*/H` with a chosen generator.
#[derive(Clone, Debug)]
pub struct CyclicQuotient {
    pub quot: CyclotomicQuotient,
    pub generator: u64,
    pub order: u64,
}

impl CyclicQuotient {
    pub fn new(quot: CyclotomicQuotient, generator: u64) -> Result<Self, SymbolError> {
        let m = quot.m;
        let units = (1..m).filter(|&x| num_integer::Integer::gcd(&x, &m) == 1).count() as u64;
        let index = units / quot.h.len() as u64;
        let mut x = quot.identity();
        let mut order = 0;
        loop {
            x = quot.mul(x, generator);
            order += 1;
            if x == quot.identity() {
                break;
            }
        }
        if order != index {
            return Err(SymbolError::NotCyclic);
        }
        Ok(CyclicQuotient { quot, generator, order })
    }

    /// Exponent `i` with `coset = generatorⁱ`.
    pub fn position(&self, coset: u64) -> Result<u64, SymbolError> {
        let target = self.quot.coset(coset);
        let mut x = self.quot.identity();
        for i in 0..self.order {
            if x == target {
                return Ok(i);
            }
            x = self.quot.mul(x, self.generator);
        }
        Err(SymbolError::NotCyclic)
    }
}

/// `i/n` for the coset `σⁱ` of a cyclic quotient of order `n`.
pub fn cyclic_symbol_invariant(q: &CyclicQuotient, coset: u64) -> Result<QmodZ, SymbolError> {
    Ok(QmodZ::new(q.position(coset)? as i64, q.order as i64))
}

#[cfg(test)]
mod tests;
