//! Small number-theoretic helpers shared by the local engines, the symbol
//! evaluators and the surface tools. Primality and factorization come from
//! `num-prime`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_prime::nt_funcs::{factorize, factorize64, is_prime64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn mod_pow(a: u64, mut e: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut r: u128 = 1;
    let m = n as u128;
    let mut b = (a % n) as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r as u64
}

pub fn mod_mul(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn is_prime(p: u64) -> bool {
    is_prime64(p)
}

/// Distinct prime divisors of `n > 0`, ascending.
pub fn prime_divisors_u64(n: u64) -> Vec<u64> {
    if n <= 1 {
        return vec![];
    }
    factorize64(n).into_keys().collect()
}

/// Distinct prime divisors of `|n|`, ascending; empty for `n = 0, ±1`.
pub fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    let m = n.magnitude();
    if m <= &BigUint::one() {
        return vec![];
    }
    if let Some(x) = m.to_u64() {
        return prime_divisors_u64(x).into_iter().map(BigInt::from).collect();
    }
    factorize(m.clone()).into_keys().map(|p| BigInt::from_biguint(Sign::Plus, p)).collect()
}

/// Smallest generator of `(ℤ/p)*` for a prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let qs = prime_divisors_u64(p - 1);
    (2..p).find(|&g| qs.iter().all(|&q| mod_pow(g, (p - 1) / q, p) != 1)).expect("prime modulus")
}

/// Discrete logarithm of `x` to base `g` in `(ℤ/p)*` by baby-step/giant-step,
/// returned modulo `p − 1`. `None` if `x` is not a power of `g`.
pub fn dlog_mod_p(x: u64, g: u64, p: u64) -> Option<u64> {
    let x = x % p;
    if x == 0 {
        return None;
    }
    let n = p - 1;
    let m = (n as f64).sqrt().ceil() as u64 + 1;
    let mut baby = std::collections::HashMap::with_capacity(m as usize);
    let mut cur = 1u64;
    for j in 0..m {
        baby.entry(cur).or_insert(j);
        cur = mod_mul(cur, g, p);
    }
    let step = mod_pow(mod_pow(g, m, p), p - 2, p);
    let mut y = x;
    for i in 0..=m {
        if let Some(&j) = baby.get(&y) {
            return Some((i * m + j) % n);
        }
        y = mod_mul(y, step, p);
    }
    None
}

/// `p`-adic valuation of a nonzero integer.
pub fn val_int(n: &BigInt, p: &BigInt) -> u32 {
    assert!(!n.is_zero());
    let mut v = 0;
    let mut m = n.clone();
    while m.is_multiple_of(p) {
        m /= p;
        v += 1;
    }
    v
}

/// `p`-adic valuation of a nonzero rational.
pub fn val(x: &BigRational, p: &BigInt) -> i64 {
    val_int(x.numer(), p) as i64 - val_int(x.denom(), p) as i64
}

/// Splits a nonzero rational as `p^v · u` and returns `(v, u)`.
pub fn split_p(x: &BigRational, p: &BigInt) -> (i64, BigRational) {
    let v = val(x, p);
    let pv = BigRational::from_integer(p.pow(v.unsigned_abs() as u32));
    let u = if v >= 0 { x / pv } else { x * pv };
    (v, u)
}

/// Residue of a `p`-unit rational modulo `m` (with `gcd(denominator, m) = 1`).
pub fn rat_mod(x: &BigRational, m: &BigInt) -> BigInt {
    let d = x.denom().mod_floor(m);
    let e = d.extended_gcd(m);
    assert!(e.gcd.is_one(), "denominator not invertible");
    (x.numer() * e.x).mod_floor(m)
}

/// Square-free integer in the square class of a nonzero rational.
pub fn squarefree_part(x: &BigRational) -> BigInt {
    let n = x.numer() * x.denom();
    let mut out = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    for p in prime_divisors(&n) {
        if val_int(&n, &p) % 2 == 1 {
            out *= &p;
        }
    }
    out
}

/// An element of ℚ/ℤ, kept as a reduced fraction in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZ {
    num: i64,
    den: i64,
}

impl QmodZ {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0);
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let num = num.rem_euclid(den);
        let g = num.gcd(&den);
        QmodZ { num: num / g, den: den / g }
    }

    pub fn zero() -> Self {
        QmodZ { num: 0, den: 1 }
    }

    pub fn half() -> Self {
        QmodZ::new(1, 2)
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn order(&self) -> i64 {
        self.den
    }
}

impl std::ops::Add for QmodZ {
    type Output = QmodZ;
    fn add(self, o: QmodZ) -> QmodZ {
        let l = self.den.lcm(&o.den);
        QmodZ::new(self.num * (l / self.den) + o.num * (l / o.den), l)
    }
}

impl std::ops::Neg for QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        QmodZ::new(-self.num, self.den)
    }
}

impl std::ops::Sub for QmodZ {
    type Output = QmodZ;
    fn sub(self, o: QmodZ) -> QmodZ {
        self + (-o)
    }
}

impl std::iter::Sum for QmodZ {
    fn sum<I: Iterator<Item = QmodZ>>(it: I) -> QmodZ {
        it.fold(QmodZ::zero(), |a, b| a + b)
    }
}

impl std::fmt::Display for QmodZ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl std::str::FromStr for QmodZ {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("not a fraction: {s:?}");
        let (a, b) = match s.trim().split_once('/') {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => (s.trim().parse().map_err(|_| bad())?, 1),
        };
        if b == 0 {
            return Err(bad());
        }
        Ok(QmodZ::new(a, b))
    }
}

impl serde::Serialize for QmodZ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for QmodZ {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
