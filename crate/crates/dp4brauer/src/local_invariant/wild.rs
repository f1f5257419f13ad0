//! The wild engine over the 2-adic numbers. The extension `l` is presented as
//! `O_l = O_K[π]` with `O_K = ℤ₂[y]/(y⁴+y+1)` unramified of degree 4, and
//! either `π = 2` (`e = 1`) or `π² = tπ + s` Eisenstein (`e = 2`).
//!
//! Elements of `O_l/mⁿ` are stored as `x₀ + x₁π` with `x_i ∈ O_K` truncated
//! modulo `2^⌈(n−i)/e⌉`, which is exactly the ideal `mⁿ`. Coefficients live in
//! wrapping `u64` arithmetic, so every power-of-two modulus up to `2⁶⁴` is
//! exact.
//!
//! Exchange data stores units as 2-adic integers modulo `2^EXACT_BITS`.

use super::{check_frobenius_data, compare_with_standard, is_two_power, LocalCocycle, LocalError};
use crate::arith::QmodZ;
use crate::cohomology::{Cochain2, FiniteGroup, GModule};
use crate::exactlinalg::{cokernel_with_section, AbHom, FinAbGroup, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// Precision (in bits per coefficient) of units in exchange documents.
pub const EXACT_BITS: u32 = 60;
/// Default bound on `log₂ #(O_l/mⁿ)`.
pub const RING_LOG2_LIMIT: u32 = 24;

type KElem = [u64; 4];

fn kmul(a: &KElem, b: &KElem) -> KElem {
    let mut p = [0u64; 7];
    for i in 0..4 {
        for j in 0..4 {
            p[i + j] = p[i + j].wrapping_add(a[i].wrapping_mul(b[j]));
        }
    }
    // y⁴ = −y − 1
    for d in (4..7).rev() {
        let c = p[d];
        p[d - 3] = p[d - 3].wrapping_sub(c);
        p[d - 4] = p[d - 4].wrapping_sub(c);
    }
    [p[0], p[1], p[2], p[3]]
}

fn kadd(a: &KElem, b: &KElem) -> KElem {
    std::array::from_fn(|i| a[i].wrapping_add(b[i]))
}

fn kscale(c: u64, a: &KElem) -> KElem {
    a.map(|x| x.wrapping_mul(c))
}

fn kmask(a: &KElem, mask: u64) -> KElem {
    a.map(|x| x & mask)
}

fn mask_of(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Inverse of an odd integer modulo `2⁶⁴`.
pub fn inv_odd(a: u64) -> u64 {
    assert!(a & 1 == 1);
    let mut x = a;
    for _ in 0..6 {
        x = x.wrapping_mul(2u64.wrapping_sub(a.wrapping_mul(x)));
    }
    x
}

/// Shape of `O_l` over `O_K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingShape {
    pub e: u32,
    pub t: i64,
    pub s: i64,
}

impl RingShape {
    pub fn unramified() -> Self {
        RingShape { e: 1, t: 0, s: 0 }
    }

    pub fn eisenstein(t: i64, s: i64) -> Self {
        RingShape { e: 2, t, s }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    pub c: [KElem; 2],
}

/// `O_l/mⁿ`.
#[derive(Clone, Debug)]
pub struct LocalRing {
    pub shape: RingShape,
    pub n: u32,
    masks: [u64; 2],
    /// `φʲ(y)` for `j = 0..4`, `φ` the Frobenius lift on `O_K`.
    frob_y: [KElem; 4],
}

impl LocalRing {
    pub fn new(shape: RingShape, n: u32) -> Result<Self, LocalError> {
        let e = shape.e;
        match e {
            1 => {}
            2 => {
                if shape.t.rem_euclid(2) != 0 || shape.s.rem_euclid(4) != 2 {
                    return Err(LocalError::BadData("π² = tπ + s must be Eisenstein".into()));
                }
            }
            _ => return Err(LocalError::BadData("ramification index must be 1 or 2".into())),
        }
        if n == 0 {
            return Err(LocalError::BadData("precision n must be positive".into()));
        }
        let bits = |i: u32| if i >= e { 0 } else { (n - i).div_ceil(e) };
        let masks = [mask_of(bits(0)), mask_of(bits(1))];
        let mut r = LocalRing { shape, n, masks, frob_y: [[0; 4]; 4] };
        r.frob_y = r.frobenius_powers();
        Ok(r)
    }

    pub fn e(&self) -> usize {
        self.shape.e as usize
    }

    fn reduce(&self, mut x: RingElem) -> RingElem {
        for i in 0..2 {
            x.c[i] = kmask(&x.c[i], if i < self.e() { self.masks[i] } else { 0 });
        }
        x
    }

    pub fn zero(&self) -> RingElem {
        RingElem { c: [[0; 4]; 2] }
    }

    pub fn from_int(&self, a: i64) -> RingElem {
        self.reduce(RingElem { c: [[a as u64, 0, 0, 0], [0; 4]] })
    }

    pub fn one(&self) -> RingElem {
        self.from_int(1)
    }

    pub fn y(&self) -> RingElem {
        self.reduce(RingElem { c: [[0, 1, 0, 0], [0; 4]] })
    }

    /// The uniformiser.
    pub fn pi(&self) -> RingElem {
        if self.e() == 1 {
            self.from_int(2)
        } else {
            self.reduce(RingElem { c: [[0; 4], [1, 0, 0, 0]] })
        }
    }

    /// Element from `4e` coefficients (basis `yᵏ πⁱ`, `k` fastest).
    pub fn from_coeffs(&self, v: &[i64]) -> Result<RingElem, LocalError> {
        if v.len() != 4 * self.e() {
            return Err(LocalError::BadData(format!("expected {} coefficients", 4 * self.e())));
        }
        let mut x = self.zero();
        for (k, &a) in v.iter().enumerate() {
            x.c[k / 4][k % 4] = a as u64;
        }
        Ok(self.reduce(x))
    }

    pub fn to_coeffs(&self, x: &RingElem) -> Vec<i64> {
        (0..4 * self.e()).map(|k| x.c[k / 4][k % 4] as i64).collect()
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.reduce(RingElem { c: [kadd(&a.c[0], &b.c[0]), kadd(&a.c[1], &b.c[1])] })
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        self.reduce(RingElem { c: [kscale(u64::MAX, &a.c[0]), kscale(u64::MAX, &a.c[1])] })
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        if self.e() == 1 {
            return self.reduce(RingElem { c: [kmul(&a.c[0], &b.c[0]), [0; 4]] });
        }
        let (t, s) = (self.shape.t as u64, self.shape.s as u64);
        let x0y0 = kmul(&a.c[0], &b.c[0]);
        let x1y1 = kmul(&a.c[1], &b.c[1]);
        let mid = kadd(&kmul(&a.c[0], &b.c[1]), &kmul(&a.c[1], &b.c[0]));
        self.reduce(RingElem { c: [kadd(&x0y0, &kscale(s, &x1y1)), kadd(&mid, &kscale(t, &x1y1))] })
    }

    pub fn pow(&self, a: &RingElem, k: u128) -> RingElem {
        FiniteLocalRing::pow(self, a, k)
    }

    /// Image in the residue field `F₁₆ = F₂[y]/(y⁴+y+1)` as a 4-bit mask.
    pub fn residue(&self, a: &RingElem) -> u8 {
        (0..4).fold(0u8, |acc, k| acc | (((a.c[0][k] & 1) as u8) << k))
    }

    pub fn is_unit(&self, a: &RingElem) -> bool {
        self.residue(a) != 0
    }

    /// Inverse of a unit by Newton iteration from the residue inverse.
    pub fn inv(&self, a: &RingElem) -> Option<RingElem> {
        if !self.is_unit(a) {
            return None;
        }
        let r = self.residue(a);
        let ri = f16_pow(r, 14);
        let mut z = self.from_residue(ri);
        let mut prec = 1;
        while prec < self.n {
            let az = self.mul(a, &z);
            z = self.mul(&z, &self.sub(&self.from_int(2), &az));
            prec *= 2;
        }
        let check = self.mul(a, &z);
        debug_assert_eq!(check, self.one());
        Some(z)
    }

    fn from_residue(&self, r: u8) -> RingElem {
        let mut x = self.zero();
        for k in 0..4 {
            x.c[0][k] = ((r >> k) & 1) as u64;
        }
        x
    }

    fn frobenius_powers(&self) -> [KElem; 4] {
        // Newton iteration for the root of y⁴+y+1 congruent to y².
        let m = self.masks[0];
        let f_of = |y: &KElem| -> KElem {
            let y2 = kmul(y, y);
            let y4 = kmul(&y2, &y2);
            kadd(&kadd(&y4, y), &[1, 0, 0, 0])
        };
        let df = |y: &KElem| -> KElem {
            let y3 = kmul(&kmul(y, y), y);
            kadd(&kscale(4, &y3), &[1, 0, 0, 0])
        };
        let kinv = |a: &KElem| -> KElem {
            // a ≡ 1 mod 2
            let mut z: KElem = [1, 0, 0, 0];
            for _ in 0..7 {
                z = kmask(&kmul(&z, &kadd(&[2, 0, 0, 0], &kscale(u64::MAX, &kmul(a, &z)))), m);
            }
            z
        };
        let y: KElem = [0, 1, 0, 0];
        let mut phi = kmul(&y, &y);
        for _ in 0..8 {
            let corr = kmul(&f_of(&phi), &kinv(&df(&phi)));
            phi = kmask(&kadd(&phi, &kscale(u64::MAX, &corr)), m);
        }
        let mut out = [[0; 4]; 4];
        out[0] = kmask(&y, m);
        for j in 1..4 {
            out[j] = self.k_subst(&out[j - 1], &phi);
        }
        out
    }

    /// `a(Y)` for `a ∈ O_K` and `Y ∈ O_K`.
    fn k_subst(&self, a: &KElem, y: &KElem) -> KElem {
        let m = self.masks[0];
        let mut out = [0u64; 4];
        let mut p: KElem = [1, 0, 0, 0];
        for k in 0..4 {
            out = kadd(&out, &kscale(a[k], &p));
            p = kmul(&p, y);
        }
        kmask(&out, m)
    }

    /// Applies the automorphism acting on `O_K` by `φʲ` and sending `π` to
    /// `π · ratio`.
    pub fn apply_aut(&self, x: &RingElem, j: u32, ratio: &RingElem) -> RingElem {
        let y = self.frob_y[(j % 4) as usize];
        let x0 = self.k_subst(&x.c[0], &y);
        if self.e() == 1 {
            return self.reduce(RingElem { c: [x0, [0; 4]] });
        }
        let x1 = self.k_subst(&x.c[1], &y);
        let img_pi = self.mul(&self.pi(), ratio);
        let part = self.mul(&RingElem { c: [x1, [0; 4]] }, &img_pi);
        self.add(&RingElem { c: [x0, [0; 4]] }, &part)
    }

    /// For `z ∈ 1 + mⁱ`, the residue `x̄` with `z ≡ 1 + x πⁱ (mod mⁱ⁺¹)`.
    fn level_digit(&self, z: &RingElem, i: u32) -> u8 {
        let d = self.sub(z, &self.one());
        let (coef, shift) = if self.e() == 1 {
            (&d.c[0], i)
        } else if i % 2 == 0 {
            (&d.c[0], i / 2)
        } else {
            (&d.c[1], i / 2)
        };
        (0..4).fold(0u8, |acc, k| acc | ((((coef[k] >> shift) & 1) as u8) << k))
    }
}

fn f16_mul(a: u8, b: u8) -> u8 {
    let mut r = 0u8;
    for k in 0..4 {
        if (b >> k) & 1 == 1 {
            r ^= a << k;
        }
    }
    for d in (4..8).rev() {
        if (r >> d) & 1 == 1 {
            r ^= 0b10011 << (d - 4);
        }
    }
    r
}

fn f16_pow(a: u8, k: u32) -> u8 {
    (0..k).fold(1u8, |acc, _| f16_mul(acc, a))
}

/// Finite commutative local rings `O/mⁿ` for which the unit group can be
/// computed by digit expansion of one-units.
pub trait FiniteLocalRing: Clone {
    type Elem: Copy + Eq + std::fmt::Debug;

    /// Residue characteristic.
    fn p(&self) -> u64;
    /// Degree of the residue field over `F_p`.
    fn residue_degree(&self) -> u32;
    fn n(&self) -> u32;
    fn one(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// `πⁱ` for the fixed uniformiser.
    fn pi_pow(&self, i: u32) -> Self::Elem;
    /// Lift of the `k`-th element of the fixed `F_p`-basis of the residue field.
    fn basis_lift(&self, k: u32) -> Self::Elem;
    /// Lift of the fixed generator of the residue field's unit group.
    fn residue_generator(&self) -> Self::Elem;
    /// Discrete log of the residue to the fixed generator; `None` on non-units.
    fn residue_dlog(&self, a: &Self::Elem) -> Option<u64>;
    /// For `z ∈ 1 + mⁱ`, the residue `x̄` (in basis coordinates `0..p`) with
    /// `z ≡ 1 + xπⁱ (mod mⁱ⁺¹)`.
    fn level_digit(&self, z: &Self::Elem, i: u32) -> Vec<u64>;

    fn q(&self) -> u64 {
        self.p().pow(self.residue_degree())
    }

    fn log2_size(&self) -> f64 {
        self.n() as f64 * self.residue_degree() as f64 * (self.p() as f64).log2()
    }

    fn pow(&self, a: &Self::Elem, mut k: u128) -> Self::Elem {
        let mut r = self.one();
        let mut b = *a;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            k >>= 1;
        }
        r
    }
}

/// `ℤ/pⁿ`.
#[derive(Clone, Debug)]
pub struct IntegersModPn {
    pub p: u64,
    pub n: u32,
    modulus: u64,
    gen: u64,
}

impl IntegersModPn {
    pub fn new(p: u64, n: u32) -> Result<Self, LocalError> {
        if !crate::arith::is_prime(p) || n == 0 {
            return Err(LocalError::BadData("need a prime p and n ≥ 1".into()));
        }
        let modulus = p.checked_pow(n).ok_or_else(|| LocalError::BadData("pⁿ overflows".into()))?;
        Ok(IntegersModPn { p, n, modulus, gen: crate::arith::primitive_root(p) })
    }
}

impl FiniteLocalRing for IntegersModPn {
    type Elem = u64;

    fn p(&self) -> u64 {
        self.p
    }
    fn residue_degree(&self) -> u32 {
        1
    }
    fn n(&self) -> u32 {
        self.n
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        crate::arith::mod_mul(*a, *b, self.modulus)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        let e = BigInt::from(*a).extended_gcd(&BigInt::from(self.modulus));
        (e.gcd == BigInt::from(1)).then(|| e.x.mod_floor(&BigInt::from(self.modulus)).to_u64().unwrap())
    }
    fn pi_pow(&self, i: u32) -> u64 {
        crate::arith::mod_pow(self.p, i as u64, self.modulus)
    }
    fn basis_lift(&self, _k: u32) -> u64 {
        self.one()
    }
    fn residue_generator(&self) -> u64 {
        self.gen % self.modulus
    }
    fn residue_dlog(&self, a: &u64) -> Option<u64> {
        crate::arith::dlog_mod_p(a % self.p, self.gen, self.p)
    }
    fn level_digit(&self, z: &u64, i: u32) -> Vec<u64> {
        let d = (z + self.modulus - 1) % self.modulus;
        vec![d / self.p.pow(i) % self.p]
    }
}

impl FiniteLocalRing for LocalRing {
    type Elem = RingElem;

    fn p(&self) -> u64 {
        2
    }
    fn residue_degree(&self) -> u32 {
        4
    }
    fn n(&self) -> u32 {
        self.n
    }
    fn one(&self) -> RingElem {
        LocalRing::one(self)
    }
    fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        LocalRing::mul(self, a, b)
    }
    fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        LocalRing::add(self, a, b)
    }
    fn inv(&self, a: &RingElem) -> Option<RingElem> {
        LocalRing::inv(self, a)
    }
    fn pi_pow(&self, i: u32) -> RingElem {
        LocalRing::pow(self, &self.pi(), i as u128)
    }
    fn basis_lift(&self, k: u32) -> RingElem {
        LocalRing::pow(self, &self.y(), k as u128)
    }
    fn residue_generator(&self) -> RingElem {
        self.y()
    }
    fn residue_dlog(&self, a: &RingElem) -> Option<u64> {
        let r = self.residue(a);
        (r != 0).then(|| F16_DLOG.with(|t| t[r as usize] as u64))
    }
    fn level_digit(&self, z: &RingElem, i: u32) -> Vec<u64> {
        let d = LocalRing::level_digit(self, z, i);
        (0..4).map(|k| ((d >> k) & 1) as u64).collect()
    }
}

thread_local! {
    static F16_DLOG: [u8; 16] = {
        let mut t = [0u8; 16];
        let mut x = 1u8;
        for k in 0..15 {
            t[x as usize] = k;
            x = f16_mul(x, 0b0010);
        }
        t
    };
}

/// `(ℤ/a₁ ⊕ … ⊕ ℤ/a_m)` together with the projection `pr` from units of the
/// ring and lifts of the generators.
#[derive(Clone, Debug)]
pub struct UnitGroup<R: FiniteLocalRing> {
    pub group: FinAbGroup,
    pub lifts: Vec<R::Elem>,
    ring: R,
    proj: AbHom,
    teich: R::Elem,
    inv_gens: Vec<R::Elem>,
}

/// Unit group of `O/mⁿ` as `μ_{q−1} × (1+m)/(1+mⁿ)`. The one-units are
/// generated by `1 + bπⁱ` for `b` running over a residue basis; every
/// one-unit has a unique digit expansion in these, and the relations are
/// `p·gen = digits(genᵖ)`.
pub fn unit_group_local_ring<R: FiniteLocalRing>(ring: &R, log2_limit: u32) -> Result<UnitGroup<R>, LocalError> {
    let size = ring.log2_size();
    if size > log2_limit as f64 + 1e-9 {
        return Err(LocalError::RingTooLarge { log2: size.ceil() as u32, limit: log2_limit });
    }
    let n = ring.n();
    let d = ring.residue_degree();
    let p = ring.p();
    let q = ring.q();
    let mut gens = vec![];
    for i in 1..n {
        let pi_i = ring.pi_pow(i);
        for k in 0..d {
            gens.push(ring.add(&ring.one(), &ring.mul(&ring.basis_lift(k), &pi_i)));
        }
    }
    let inv_gens: Vec<R::Elem> = gens.iter().map(|g| ring.inv(g).unwrap()).collect();
    // ω = g^{qⁿ} is the Teichmüller lift of the residue generator
    let mut teich = ring.residue_generator();
    for _ in 0..n {
        teich = ring.pow(&teich, q as u128);
    }
    let big = gens.len() + 1;
    let mut rel = IntMatrix::zeros(big, big);
    rel.set(0, 0, BigInt::from(q - 1));
    let mut ug = UnitGroup {
        group: FinAbGroup::trivial(),
        lifts: vec![],
        ring: ring.clone(),
        proj: AbHom::new(FinAbGroup::free(big), FinAbGroup::free(big), IntMatrix::identity(big)),
        teich,
        inv_gens,
    };
    for (j, g) in gens.iter().enumerate() {
        let w = ug.digits(&ring.pow(g, p as u128));
        rel.set(j + 1, j + 1, BigInt::from(p));
        for (k, &b) in w.iter().enumerate() {
            if b != 0 {
                let cur = rel.get(k + 1, j + 1) - b;
                rel.set(k + 1, j + 1, cur);
            }
        }
    }
    let (grp, proj, section) = cokernel_with_section(&AbHom::new(FinAbGroup::free(big), FinAbGroup::free(big), rel));
    ug.group = grp;
    ug.proj = proj;
    let order_p = BigInt::from(p).pow(n);
    for c in 0..section.cols() {
        let col = section.col(c);
        let t = col[0].mod_floor(&BigInt::from(q - 1)).to_u128().unwrap();
        let mut x = ring.pow(&ug.teich, t);
        for (j, g) in gens.iter().enumerate() {
            let k = col[j + 1].mod_floor(&order_p).to_u128().unwrap();
            x = ring.mul(&x, &ring.pow(g, k));
        }
        ug.lifts.push(x);
    }
    Ok(ug)
}

impl<R: FiniteLocalRing> UnitGroup<R> {
    /// Digit expansion of a one-unit.
    fn digits(&self, z: &R::Elem) -> Vec<u64> {
        let r = &self.ring;
        let d = r.residue_degree();
        let mut z = *z;
        let mut out = vec![];
        for i in 1..r.n() {
            let dig = r.level_digit(&z, i);
            for (k, &x) in dig.iter().enumerate() {
                let ginv = &self.inv_gens[((i - 1) * d) as usize + k];
                z = r.mul(&z, &r.pow(ginv, x as u128));
                out.push(x);
            }
        }
        debug_assert_eq!(z, r.one());
        out
    }

    /// Coordinates of a unit; `None` on non-units.
    pub fn pr(&self, x: &R::Elem) -> Option<Vec<BigInt>> {
        let r = &self.ring;
        let k = r.residue_dlog(x)? as u128;
        let qm = (r.q() - 1) as u128;
        let one_unit = r.mul(x, &r.pow(&self.teich, (qm - k % qm) % qm));
        let mut v = vec![BigInt::from(k)];
        v.extend(self.digits(&one_unit).into_iter().map(BigInt::from));
        Some(self.proj.apply(&v))
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
}

/// A 2-adic Galois extension presented for the wild engine. `f` must be 4
/// (the residue field is `F₁₆`). Generator `i` acts on `O_K` by
/// `φ^{frob_power[i]}` and sends `π` to `π · pi_ratio[i]`; `base_ratio` is
/// `2/π^e`. Units are coefficient vectors modulo `2^EXACT_BITS`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WildExtensionData {
    pub group: FiniteGroup,
    pub inertia: Vec<usize>,
    pub frobenius: usize,
    pub f: u32,
    pub e: u32,
    pub ex: Vec<u32>,
    pub shape: RingShape,
    pub frob_power: Vec<u32>,
    pub pi_ratio: Vec<Vec<i64>>,
    pub base_ratio: Vec<i64>,
}

impl WildExtensionData {
    pub fn validate(&self) -> Result<(), LocalError> {
        check_frobenius_data(&self.group, &self.inertia, self.frobenius, self.f, self.e, &self.ex)?;
        if self.f != 4 || self.e != self.shape.e {
            return Err(LocalError::BadData("wild data needs f = 4 and e matching the ring".into()));
        }
        let gens = self.group.gens();
        if self.frob_power.len() != gens.len() || self.pi_ratio.len() != gens.len() {
            return Err(LocalError::BadData("one automorphism per generator".into()));
        }
        for (k, &s) in gens.iter().enumerate() {
            if self.frob_power[k] % 4 != self.ex[s] {
                return Err(LocalError::BadData("Frobenius power disagrees with ex".into()));
            }
        }
        Ok(())
    }

    /// The module `l*/(1+mⁿ) = U ⊕ ℤ` at precision `n`.
    pub fn module(&self, n: u32, log2_limit: u32) -> Result<(GModule, UnitGroup<LocalRing>), LocalError> {
        self.validate()?;
        let ring = LocalRing::new(self.shape, n)?;
        let ug = unit_group_local_ring(&ring, log2_limit)?;
        let k = ug.group.ngens();
        let base = FinAbGroup { torsion: ug.group.torsion.clone(), free_rank: 1 };
        let mut mats = vec![];
        for (i, _) in self.group.gens().iter().enumerate() {
            let ratio = ring.from_coeffs(&self.pi_ratio[i])?;
            let mut m = IntMatrix::zeros(k + 1, k + 1);
            for (j, lift) in ug.lifts.iter().enumerate() {
                let img = ring.apply_aut(lift, self.frob_power[i], &ratio);
                let v = ug.pr(&img).ok_or_else(|| LocalError::BadData("automorphism maps a unit to a non-unit".into()))?;
                for (r, x) in v.into_iter().enumerate() {
                    m.set(r, j, x);
                }
            }
            let v = ug.pr(&ratio).ok_or_else(|| LocalError::BadData("g(π)/π is not a unit".into()))?;
            for (r, x) in v.into_iter().enumerate() {
                m.set(r, k, x);
            }
            m.set(k, k, BigInt::from(1));
            mats.push(m);
        }
        Ok((GModule::new(self.group.clone(), base, mats)?, ug))
    }

    fn value(&self, ring: &LocalRing, ug: &UnitGroup<LocalRing>, val: i64, unit: &[i64]) -> Result<Vec<BigInt>, LocalError> {
        let u = ring.from_coeffs(unit)?;
        let mut v = ug.pr(&u).ok_or_else(|| LocalError::BadData("cocycle unit part is not a unit".into()))?;
        v.push(BigInt::from(val));
        Ok(v)
    }
}

/// Invariant of `c` at precision `n`, or [`LocalError::IncreasePrecision`]
/// when the standard class has order at most 2 in `H²(G, l*/(1+mⁿ))`.
pub fn invariant_wild(
    data: &WildExtensionData,
    c: &LocalCocycle,
    n: u32,
    log2_limit: u32,
) -> Result<QmodZ, LocalError> {
    let order = data.group.order();
    if !is_two_power(order) {
        return Err(LocalError::NotTwoPower(order));
    }
    if c.order != order || c.values.len() != order * order {
        return Err(LocalError::BadCocycle { got: c.values.len(), want: order * order });
    }
    let (module, ug) = data.module(n, log2_limit)?;
    let ring = ug.ring();
    let values: Vec<Vec<BigInt>> =
        c.values.iter().map(|v| data.value(ring, &ug, v.val, &v.unit)).collect::<Result<_, _>>()?;
    let cc = Cochain2 { n: order, values };
    let st_val = data.value(ring, &ug, data.e as i64, &data.base_ratio)?;
    let zero = module.base.zero();
    let st = Cochain2::from_fn(order, |a, b| {
        if data.ex[a] + data.ex[b] >= data.f {
            st_val.clone()
        } else {
            zero.clone()
        }
    });
    let m = compare_with_standard(&module, &cc, &st, data.f, 4, Some(n))?;
    Ok(QmodZ::new(m as i64, data.f as i64))
}

/// Retries [`invariant_wild`] with `n, n+1, …, max_n` until the guard passes.
/// Returns the invariant and the precision used.
pub fn invariant_wild_auto(
    data: &WildExtensionData,
    c: &LocalCocycle,
    n: u32,
    max_n: u32,
    log2_limit: u32,
) -> Result<(QmodZ, u32), LocalError> {
    let mut last = LocalError::IncreasePrecision { n };
    for k in n..=max_n {
        match invariant_wild(data, c, k, log2_limit) {
            Ok(x) => return Ok((x, k)),
            Err(e @ LocalError::IncreasePrecision { .. }) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// High-precision ring used to build exchange data.
pub fn exact_ring(shape: RingShape) -> LocalRing {
    LocalRing::new(shape, EXACT_BITS * shape.e).expect("valid shape")
}

