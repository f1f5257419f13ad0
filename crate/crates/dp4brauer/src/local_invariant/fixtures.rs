//! Ready-made local data: tame metacyclic extensions and quadratic cyclic
//! algebras `(a, b)` over `ℚ_p`.

use super::wild::{exact_ring, inv_odd, RingShape, WildExtensionData};
use super::{cocycle_from_cyclic_algebra, LocalCocycle, LocalError, LocalExtensionData, LocalValue};
use crate::arith::{dlog_mod_p, primitive_root, rat_mod, split_p};
use crate::cohomology::FiniteGroup;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// The tame extension `k^{nr,f}(π_k^{1/e})` of a local field with residue
/// field of size `qk`, where `e | qk^f − 1`. Element `(a, b)` is `σᵃ Frobᵇ`
/// with `σ` a generator of inertia and `Frob σ Frob⁻¹ = σ^{qk}`.
///
/// `twist` replaces `π_l` by `w·π_l` for the unit `w` of discrete log
/// `twist`, which changes every `dlog_pi` and `dlog_base`.
pub fn synthetic_tame(qk: u64, e: u64, f: u32, twist: u64) -> Result<LocalExtensionData, LocalError> {
    let q = qk.checked_pow(f).ok_or_else(|| LocalError::BadData("q overflows".into()))?;
    if e == 0 || (q - 1) % e != 0 {
        return Err(LocalError::BadData("e must divide q − 1".into()));
    }
    let m = q - 1;
    let fm = f as u64;
    let qk_mod_e = qk % e;
    let op = |x: &(u64, u64), y: &(u64, u64)| {
        let mut c = y.0;
        for _ in 0..x.1 {
            c = c * qk_mod_e % e;
        }
        ((x.0 + c) % e, (x.1 + y.1) % fm)
    };
    let mut gens = vec![];
    if e > 1 {
        gens.push((1 % e, 0));
    }
    if f > 1 {
        gens.push((0, 1 % fm));
    }
    if gens.is_empty() {
        gens.push((0, 0));
    }
    let (group, elems) = FiniteGroup::generate((0u64, 0u64), &gens, op);
    let pos = |x: (u64, u64)| elems.iter().position(|&y| y == x).unwrap();
    let inertia: Vec<usize> = (0..e).map(|a| pos((a, 0))).collect();
    let frobenius = pos((0, 1 % fm));
    let ex: Vec<u32> = elems.iter().map(|x| x.1 as u32).collect();
    let w = twist % m;
    let dlog_pi: Vec<u64> = group
        .gens()
        .iter()
        .map(|&s| {
            let (a, b) = elems[s];
            let base = (a as u128 * (m / e) as u128) % m as u128;
            // g(wπ)/(wπ) = g(π)/π · w^{qk^b − 1}
            let fr = (crate::arith::mod_pow(qk, b, m) + m - 1) % m;
            ((base + w as u128 * fr as u128) % m as u128) as u64
        })
        .collect();
    // π_k/(wπ_l)^e = w^{−e}
    let dlog_base = ((m as u128 - (w as u128 * e as u128) % m as u128) % m as u128) as u64;
    let data = LocalExtensionData { group, inertia, frobenius, q, f, e: e as u32, ex, dlog_pi, dlog_base };
    data.validate()?;
    Ok(data)
}

/// Square class of `a` at an odd prime: `Split` if `a` is a square in `ℚ_p`,
/// `Unramified` if `ℚ_p(√a)` is the unramified quadratic extension,
/// `Ramified(a₀)` if `ℚ_p(√a) = ℚ_p(√(p·a₀))` with `a₀` a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadraticKind {
    Split,
    Unramified,
    Ramified(BigRational),
}

pub fn quadratic_kind_odd(a: &BigRational, p: u64) -> QuadraticKind {
    let pb = BigInt::from(p);
    let (v, u) = split_p(a, &pb);
    if v.rem_euclid(2) == 1 {
        return QuadraticKind::Ramified(u);
    }
    let r = rat_mod(&u, &pb).to_u64().unwrap();
    if crate::arith::mod_pow(r, (p - 1) / 2, p) == 1 {
        QuadraticKind::Split
    } else {
        QuadraticKind::Unramified
    }
}

/// Data and cocycle of the cyclic algebra `(a, b)` over `ℚ_p`, `p` odd, for
/// `ℚ_p(√a)/ℚ_p` quadratic. `None` when `a` is a square (the algebra is
/// split and its invariant is 0).
pub fn quadratic_odd(
    a: &BigRational,
    b: &BigRational,
    p: u64,
) -> Result<Option<(LocalExtensionData, LocalCocycle)>, LocalError> {
    if p == 2 || !crate::arith::is_prime(p) {
        return Err(LocalError::BadData("p must be an odd prime".into()));
    }
    let pb = BigInt::from(p);
    let g = primitive_root(p);
    let dlog = |u: &BigRational| dlog_mod_p(rat_mod(u, &pb).to_u64().unwrap(), g, p).unwrap();
    let (vb, ub) = split_p(b, &pb);
    match quadratic_kind_odd(a, p) {
        QuadraticKind::Split => Ok(None),
        QuadraticKind::Unramified => {
            let q = p * p;
            let data = LocalExtensionData {
                group: FiniteGroup::cyclic(2),
                inertia: vec![0],
                frobenius: 1,
                q,
                f: 2,
                e: 1,
                ex: vec![0, 1],
                dlog_pi: vec![0],
                dlog_base: 0,
            };
            // logs in F_p* relative to the norm of a generator of F_{p²}*
            let u = (p + 1) * dlog(&ub) % (q - 1);
            let c = cocycle_from_cyclic_algebra(&data, 1, (vb, u))?;
            Ok(Some((data, c)))
        }
        QuadraticKind::Ramified(a0) => {
            let m = p - 1;
            let da0 = dlog(&a0);
            let data = LocalExtensionData {
                group: FiniteGroup::cyclic(2),
                inertia: vec![0, 1],
                frobenius: 0,
                q: p,
                f: 1,
                e: 2,
                ex: vec![0, 0],
                dlog_pi: vec![m / 2],
                dlog_base: (m - da0) % m,
            };
            // b = π_l^{2v} · a₀^{−v} · u
            let u = (dlog(&ub) as i64 - vb * da0 as i64).rem_euclid(m as i64) as u64;
            let c = cocycle_from_cyclic_algebra(&data, 1, (2 * vb, u))?;
            Ok(Some((data, c)))
        }
    }
}

/// Square class of `a` in `ℚ₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoAdicKind {
    Split,
    /// `ℚ₂(√5)`.
    Unramified,
    /// `ℚ₂(√A)` with `A ≡ 3 mod 4`; uniformiser `1 + √A`.
    RamifiedUnit(u64),
    /// `ℚ₂(√(2A))` with `A` odd; uniformiser `√(2A)`.
    RamifiedTwo(u64),
}

pub fn quadratic_kind_two(a: &BigRational) -> TwoAdicKind {
    let two = BigInt::from(2);
    let (v, u) = split_p(a, &two);
    let big = BigInt::from(1u64) << 63;
    let am = rat_mod(&u, &big).to_u64().unwrap();
    if v.rem_euclid(2) == 1 {
        return TwoAdicKind::RamifiedTwo(am);
    }
    match am % 8 {
        1 => TwoAdicKind::Split,
        5 => TwoAdicKind::Unramified,
        _ => TwoAdicKind::RamifiedUnit(am),
    }
}

/// Wild data and cocycle of `(a, b)` over `ℚ₂`, already enlarged by the
/// unramified extension of degree 4 (so `f = 4`). `None` when `a` is a
/// square.
pub fn quadratic_two_adic(
    a: &BigRational,
    b: &BigRational,
) -> Result<Option<(WildExtensionData, LocalCocycle)>, LocalError> {
    let two = BigInt::from(2);
    let big = BigInt::from(1u64) << 63;
    let (vb, ub) = split_p(b, &two);
    let ubm = rat_mod(&ub, &big).to_u64().unwrap() as i64;
    let kind = quadratic_kind_two(a);
    let (shape, sigma_ratio) = match kind {
        TwoAdicKind::Split => return Ok(None),
        TwoAdicKind::Unramified => (RingShape::unramified(), None),
        TwoAdicKind::RamifiedTwo(am) => {
            let s = (2 * am) as i64;
            (RingShape::eisenstein(0, s), Some(vec![-1, 0, 0, 0, 0, 0, 0, 0]))
        }
        TwoAdicKind::RamifiedUnit(am) => {
            // π = 1 + √A, π² = 2π + (A − 1), σ(π)/π = s₀⁻¹(π − 2) − 1
            let s = am.wrapping_sub(1) as i64;
            let s0inv = inv_odd(am.wrapping_sub(1) >> 1);
            let c0 = 0u64.wrapping_sub(s0inv.wrapping_mul(2)).wrapping_sub(1);
            (RingShape::eisenstein(2, s), Some(vec![c0 as i64, 0, 0, 0, s0inv as i64, 0, 0, 0]))
        }
    };
    let ring = exact_ring(shape);
    let base_ratio = if shape.e == 1 {
        ring.one()
    } else {
        // 2/π² = 1/h with h = (t/2)π + s₀
        let h = ring.from_coeffs(&[((shape.s as u64) >> 1) as i64, 0, 0, 0, shape.t / 2, 0, 0, 0])?;
        ring.inv(&h).unwrap()
    };
    let ub_elem = ring.from_int(ubm);
    let unit_of_b = if vb >= 0 {
        ring.mul(&ub_elem, &ring.pow(&base_ratio, vb as u128))
    } else {
        ring.mul(&ub_elem, &ring.pow(&ring.inv(&base_ratio).unwrap(), (-vb) as u128))
    };
    let bval = LocalValue { val: vb * shape.e as i64, unit: ring.to_coeffs(&unit_of_b) };
    let one = LocalValue { val: 0, unit: ring.to_coeffs(&ring.one()) };
    let e = shape.e;
    let (data, pr1): (WildExtensionData, Vec<usize>) = if let Some(ratio) = sigma_ratio {
        // G × ℤ/4, element (i, j) at index 4i + j
        let group = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(4));
        let ex: Vec<u32> = (0..8).map(|k| (k % 4) as u32).collect();
        let mut id_ratio = vec![0i64; 8];
        id_ratio[0] = 1;
        let data = WildExtensionData {
            group,
            inertia: vec![0, 4],
            frobenius: 1,
            f: 4,
            e,
            ex,
            shape,
            frob_power: vec![0, 1],
            pi_ratio: vec![ratio, id_ratio],
            base_ratio: ring.to_coeffs(&base_ratio),
        };
        (data, (0..8).map(|k| k / 4).collect())
    } else {
        let data = WildExtensionData {
            group: FiniteGroup::cyclic(4),
            inertia: vec![0],
            frobenius: 1,
            f: 4,
            e,
            ex: vec![0, 1, 2, 3],
            shape,
            frob_power: vec![1],
            pi_ratio: vec![vec![1, 0, 0, 0]],
            base_ratio: ring.to_coeffs(&base_ratio),
        };
        (data, (0..4).map(|k| k % 2).collect())
    };
    data.validate()?;
    let n = data.group.order();
    let c = LocalCocycle::from_fn(n, |x, y| if pr1[x] + pr1[y] >= 2 { bval.clone() } else { one.clone() });
    Ok(Some((data, c)))
}
