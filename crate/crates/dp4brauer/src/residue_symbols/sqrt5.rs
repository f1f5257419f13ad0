//! Hilbert symbols over the completions of `ℚ(√5)`.
//!
//! Split primes `p ≡ ±1 mod 5` are handled by embedding into `ℚ_p` through a
//! `p`-adic square root of 5, inert odd primes and the ramified prime `√5` by
//! the tame formula, and the inert prime 2 by a bounded norm search modulo 32.

use super::{hilbert_qp, legendre, PlaceQ, SymbolError};
use crate::arith::{rat_mod, split_p, val, val_int};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

/// `a + b√5`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadElem {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadElem { a, b }
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadElem { a, b: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(5.into()) * &self.b * &self.b
    }

    pub fn conj(&self) -> QuadElem {
        QuadElem { a: self.a.clone(), b: -self.b.clone() }
    }

    pub fn mul(&self, o: &QuadElem) -> QuadElem {
        let five = BigRational::from_integer(5.into());
        QuadElem { a: &self.a * &o.a + five * &self.b * &o.b, b: &self.a * &o.b + &self.b * &o.a }
    }

    /// Sign of the image under `√5 ↦ +√5`.
    pub fn sign(&self) -> i8 {
        let sa = sgn(&self.a);
        let sb = sgn(&self.b);
        if sa == 0 || sa == sb {
            return if sb == 0 { sa } else { sb };
        }
        if sb == 0 {
            return sa;
        }
        // opposite signs: compare a² with 5b²
        let n = self.norm();
        if n.is_positive() {
            sa
        } else {
            sb
        }
    }

    /// `(A, B, D)` with integers and `self = (A + B√5)/D`, `D > 0`.
    fn integral(&self) -> (BigInt, BigInt, BigInt) {
        let d = self.a.denom().lcm(self.b.denom());
        let a = self.a.numer() * (&d / self.a.denom());
        let b = self.b.numer() * (&d / self.b.denom());
        (a, b, d)
    }
}

fn sgn(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// A place of `ℚ(√5)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QuadFieldPlace {
    /// The prime `(p, √5 − r)` for a split `p ≡ ±1 mod 5`, `r² ≡ 5 mod p`.
    Split { p: u64, r: u64 },
    Inert { p: u64 },
    /// `(√5)`.
    Ramified,
    /// `√5 ↦ +√5` (`positive`) or `√5 ↦ −√5`.
    Real { positive: bool },
}

impl QuadFieldPlace {
    pub fn residue_prime(&self) -> Option<u64> {
        match *self {
            QuadFieldPlace::Split { p, .. } | QuadFieldPlace::Inert { p } => Some(p),
            QuadFieldPlace::Ramified => Some(5),
            QuadFieldPlace::Real { .. } => None,
        }
    }
}

fn sqrt_mod_p(n: u64, p: u64) -> u64 {
    (0..p).find(|&x| x * x % p == n % p).expect("square root exists")
}

/// Places of `ℚ(√5)` above `v`, split ones ordered by `r`.
pub fn places_above(v: PlaceQ) -> Vec<QuadFieldPlace> {
    match v {
        PlaceQ::Real => vec![QuadFieldPlace::Real { positive: true }, QuadFieldPlace::Real { positive: false }],
        PlaceQ::Prime(5) => vec![QuadFieldPlace::Ramified],
        PlaceQ::Prime(p) if p != 2 && (p % 5 == 1 || p % 5 == 4) => {
            let r = sqrt_mod_p(5, p);
            vec![QuadFieldPlace::Split { p, r }, QuadFieldPlace::Split { p, r: p - r }]
        }
        PlaceQ::Prime(p) => vec![QuadFieldPlace::Inert { p }],
    }
}

/// `p`-adic square root of 5 congruent to `r`, modulo `p^k`.
fn hensel_sqrt5(r: u64, p: u64, k: u32) -> BigInt {
    let mut s = BigInt::from(r);
    let pb = BigInt::from(p);
    let mut prec = 1;
    while prec < k {
        prec = (2 * prec).min(k);
        let pk = pb.pow(prec);
        let f = (&s * &s - BigInt::from(5)).mod_floor(&pk);
        let inv = rat_mod(&BigRational::new(BigInt::one(), BigInt::from(2) * &s), &pk);
        s = (&s - f * inv).mod_floor(&pk);
    }
    s
}

/// Valuation and residue of the unit part at a place with residue field
/// `𝔽_p` (split or ramified).
fn split_val_residue(x: &QuadElem, place: QuadFieldPlace) -> (i64, u64) {
    let (a, b, d) = x.integral();
    match place {
        QuadFieldPlace::Split { p, r } => {
            let pb = BigInt::from(p);
            let n = &a * &a - BigInt::from(5) * &b * &b;
            let k = val_int(&n, &pb) + 2;
            let pk = pb.pow(k);
            let s = hensel_sqrt5(r, p, k);
            let mut y = (&a + &b * s).mod_floor(&pk);
            let mut v = 0i64;
            while y.is_multiple_of(&pb) {
                y /= &pb;
                v += 1;
            }
            let vd = val_int(&d, &pb) as i64;
            let dprime = BigRational::new(BigInt::one(), d.clone() / pb.pow(vd as u32));
            let res = (y.mod_floor(&pb) * rat_mod(&dprime, &pb)).mod_floor(&pb);
            (v - vd, res.to_u64().unwrap())
        }
        QuadFieldPlace::Ramified => {
            let five = BigInt::from(5);
            let part = |n: &BigInt| split_p(&BigRational::from_integer(n.clone()), &five);
            // v(a) = 2v₅(a) and v(b√5) = 2v₅(b) + 1 differ in parity
            let (v, unit) = match (a.is_zero(), b.is_zero()) {
                (false, true) => {
                    let (t, u) = part(&a);
                    (2 * t, u)
                }
                (true, false) => {
                    let (t, u) = part(&b);
                    (2 * t + 1, u)
                }
                _ => {
                    let (ta, ua) = part(&a);
                    let (tb, ub) = part(&b);
                    if 2 * ta < 2 * tb + 1 {
                        (2 * ta, ua)
                    } else {
                        (2 * tb + 1, ub)
                    }
                }
            };
            let vd = val_int(&d, &five) as i64;
            let dprime = BigRational::new(BigInt::one(), d.clone() / five.pow(vd as u32));
            let r = (rat_mod(&unit, &five) * rat_mod(&dprime, &five)).mod_floor(&five);
            (v - 2 * vd, r.to_u64().unwrap())
        }
        _ => unreachable!(),
    }
}

/// Elements of `ℤ₂[ω]/32`, `ω² = ω + 1`, as `c₀ + c₁ω` packed into `32·c₁ + c₀`.
const M2: u64 = 32;

fn o2_mul(x: u64, y: u64) -> u64 {
    let (a0, a1) = (x % M2, x / M2);
    let (b0, b1) = (y % M2, y / M2);
    let c0 = (a0 * b0 + a1 * b1) % M2;
    let c1 = (a0 * b1 + a1 * b0 + a1 * b1) % M2;
    c1 * M2 + c0
}

fn o2_is_unit(x: u64) -> bool {
    x % 2 == 1 || (x / M2) % 2 == 1
}

struct SquareTables {
    all: Vec<bool>,
    units: Vec<bool>,
    sq: Vec<u64>,
}

fn square_tables() -> &'static SquareTables {
    static T: OnceLock<SquareTables> = OnceLock::new();
    T.get_or_init(|| {
        let n = (M2 * M2) as usize;
        let mut all = vec![false; n];
        let mut units = vec![false; n];
        let mut sq = vec![0; n];
        for x in 0..M2 * M2 {
            let s = o2_mul(x, x);
            sq[x as usize] = s;
            all[s as usize] = true;
            if o2_is_unit(x) {
                units[s as usize] = true;
            }
        }
        SquareTables { all, units, sq }
    })
}

/// Valuation at 2 and unit part modulo 32 in the basis `1, ω`.
fn two_adic_parts(x: &QuadElem) -> Result<(i64, u64), SymbolError> {
    // a + b√5 = (a − b) + 2b·ω
    let c0 = &x.a - &x.b;
    let c1 = BigRational::from_integer(2.into()) * &x.b;
    let two = BigInt::from(2);
    let v0 = if c0.is_zero() { i64::MAX } else { val(&c0, &two) };
    let v1 = if c1.is_zero() { i64::MAX } else { val(&c1, &two) };
    let t = v0.min(v1);
    if t.abs() > 1 << 20 {
        return Err(SymbolError::PrecisionCap(t));
    }
    let scale = if t >= 0 {
        BigRational::new(BigInt::one(), two.pow(t as u32))
    } else {
        BigRational::from_integer(two.pow((-t) as u32))
    };
    let m = BigInt::from(M2);
    let r0 = rat_mod(&(c0 * &scale), &m).to_u64().unwrap();
    let r1 = rat_mod(&(c1 * &scale), &m).to_u64().unwrap();
    Ok((t, r1 * M2 + r0))
}

/// Whether `z² = a x² + b y²` has a primitive solution in `ℤ₂[ω]/32`, with
/// `a`, `b` of valuation 0 or 1. Hensel's lemma lifts such a solution since
/// the relevant partial derivative has valuation at most 2.
fn norm_search_two(a: u64, b: u64) -> bool {
    let t = square_tables();
    for x in 0..M2 * M2 {
        let ax = o2_mul(a, t.sq[x as usize]);
        let xu = o2_is_unit(x);
        for y in 0..M2 * M2 {
            let s = o2_mul(b, t.sq[y as usize]);
            let r = ((ax % M2 + s % M2) % M2) + ((ax / M2 + s / M2) % M2) * M2;
            let ok = if xu || o2_is_unit(y) { t.all[r as usize] } else { t.units[r as usize] };
            if ok {
                return true;
            }
        }
    }
    false
}

fn hilbert_two_inert(x: &QuadElem, y: &QuadElem) -> Result<i8, SymbolError> {
    let (vx, ux) = two_adic_parts(x)?;
    let (vy, uy) = two_adic_parts(y)?;
    let two = 2;
    let a = if vx.rem_euclid(2) == 1 { o2_mul(ux, two) } else { ux };
    let b = if vy.rem_euclid(2) == 1 { o2_mul(uy, two) } else { uy };
    Ok(if norm_search_two(a, b) { 1 } else { -1 })
}

/// Quadratic Hilbert symbol `(a, b)_w` over the completion of `ℚ(√5)` at `w`.
pub fn hilbert_sqrt5(a: &QuadElem, b: &QuadElem, w: QuadFieldPlace) -> Result<i8, SymbolError> {
    if a.is_zero() || b.is_zero() {
        return Err(SymbolError::Zero);
    }
    match w {
        QuadFieldPlace::Real { positive } => {
            let (sa, sb) = if positive { (a.sign(), b.sign()) } else { (a.conj().sign(), b.conj().sign()) };
            Ok(if sa < 0 && sb < 0 { -1 } else { 1 })
        }
        QuadFieldPlace::Inert { p: 2 } => hilbert_two_inert(a, b),
        QuadFieldPlace::Inert { p } => {
            if p % 5 != 2 && p % 5 != 3 {
                return Err(SymbolError::BadPlace(format!("{p} is not inert")));
            }
            // residue field 𝔽_{p²}: the square class of a residue is the
            // Legendre symbol of its norm, and (−1)^{(q−1)/2} = 1
            let pb = BigInt::from(p);
            let parts = |x: &QuadElem| {
                let n = x.norm();
                let (v, u) = split_p(&n, &pb);
                (v / 2, rat_mod(&u, &pb).to_u64().unwrap())
            };
            let (va, na) = parts(a);
            let (vb, nb) = parts(b);
            let mut s = 1;
            if vb.rem_euclid(2) == 1 {
                s *= legendre(na, p);
            }
            if va.rem_euclid(2) == 1 {
                s *= legendre(nb, p);
            }
            Ok(s)
        }
        QuadFieldPlace::Split { p, r } => {
            if r * r % p != 5 % p {
                return Err(SymbolError::BadPlace(format!("({p}, √5 − {r})")));
            }
            let (va, ua) = split_val_residue(a, w);
            let (vb, ub) = split_val_residue(b, w);
            let lift = |v: i64, u: u64| {
                let pv = BigRational::from_integer(BigInt::from(p).pow(v.unsigned_abs() as u32));
                let u = BigRational::from_integer(u.into());
                if v >= 0 {
                    u * pv
                } else {
                    u / pv
                }
            };
            // for odd p only valuations and residues matter
            Ok(hilbert_qp(&lift(va, ua), &lift(vb, ub), PlaceQ::Prime(p)))
        }
        QuadFieldPlace::Ramified => {
            let (va, ua) = split_val_residue(a, w);
            let (vb, ub) = split_val_residue(b, w);
            // residue field 𝔽₅, (−1)^{(5−1)/2} = 1
            let mut s = 1;
            if vb.rem_euclid(2) == 1 {
                s *= legendre(ua, 5);
            }
            if va.rem_euclid(2) == 1 {
                s *= legendre(ub, 5);
            }
            Ok(s)
        }
    }
}
