//! Invariants in ℚ/ℤ of 2-cocycles of a local Galois group with values in
//! `l*`, computed from combinatorial data only.
//!
//! The tame engine works in `M = l*/(1 + m) ≅ ℤ/(q−1) ⊕ ℤ` (discrete log of
//! the unit part, then valuation) and compares the input class with the
//! standard cocycle of invariant `1/f`. The wild engine does the same with
//! `l*/(1 + mⁿ)`, see [`wild`].

pub mod fixtures;
pub mod wild;

use crate::arith::{mod_pow, QmodZ};
use crate::cohomology::{check_cocycle2, normalize2, Cochain2, CoboundarySolver, CohomError, FiniteGroup, GModule};
use crate::exactlinalg::{FinAbGroup, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use wild::{
    invariant_wild, invariant_wild_auto, unit_group_local_ring, FiniteLocalRing, IntegersModPn, LocalRing, RingElem, RingShape,
    UnitGroup, WildExtensionData, RING_LOG2_LIMIT,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalError {
    #[error("inconsistent extension data: {0}")]
    BadData(String),
    #[error("cocycle has {got} values, expected {want}")]
    BadCocycle { got: usize, want: usize },
    #[error("input is not a 2-cocycle: {0}")]
    NotACocycle(CohomError),
    #[error("residue degree {0} is below 4; extend the data first")]
    NeedsExtension(u32),
    #[error("group order {0} is not a power of 2")]
    NotTwoPower(usize),
    #[error("class is not annihilated by 4")]
    NotFourTorsion,
    #[error("no multiple of the standard class matches")]
    NoMultiplier,
    #[error("standard class has order at most 2 at precision n = {n}; increase n")]
    IncreasePrecision { n: u32 },
    #[error("ring of size 2^{log2} exceeds the bound 2^{limit}")]
    RingTooLarge { log2: u32, limit: u32 },
    #[error("group is not cyclic with the given generator")]
    NotCyclic,
    #[error(transparent)]
    Cohom(#[from] CohomError),
}

/// Data of a tamely ramified Galois extension `l/k` sufficient for
/// Algorithm-style invariant computation.
///
/// `q` is the residue field size of `l`, `q^{1/f}` that of `k`. `ex[g]` is the
/// Frobenius exponent of `g` modulo inertia. `dlog_pi[i]` is the discrete log
/// of `g_i(π_l)/π_l` for the `i`-th generator, `dlog_base` that of
/// `π_k/π_l^e`, both modulo `q − 1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalExtensionData {
    pub group: FiniteGroup,
    pub inertia: Vec<usize>,
    pub frobenius: usize,
    pub q: u64,
    pub f: u32,
    pub e: u32,
    pub ex: Vec<u32>,
    pub dlog_pi: Vec<u64>,
    pub dlog_base: u64,
}

/// One value `(valuation, unit part)` per pair, indexed `a·|G| + b`. For the
/// tame engine `unit` is the one-entry discrete log; for the wild engine it
/// holds the coefficients of the unit in the ring basis, see [`wild`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalValue {
    pub val: i64,
    pub unit: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalCocycle {
    pub order: usize,
    pub values: Vec<LocalValue>,
}

impl LocalCocycle {
    pub fn at(&self, a: usize, b: usize) -> &LocalValue {
        &self.values[a * self.order + b]
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> LocalValue) -> Self {
        let values = (0..order * order).map(|k| f(k / order, k % order)).collect();
        LocalCocycle { order, values }
    }

    /// The cocycle with all values 1 (tame encoding).
    pub fn trivial(order: usize) -> Self {
        Self::from_fn(order, |_, _| LocalValue { val: 0, unit: vec![0] })
    }

    /// Pointwise product (tame encoding, unit logs modulo `modulus`).
    pub fn mul_tame(&self, o: &LocalCocycle, modulus: u64) -> LocalCocycle {
        LocalCocycle {
            order: self.order,
            values: self
                .values
                .iter()
                .zip(&o.values)
                .map(|(x, y)| LocalValue {
                    val: x.val + y.val,
                    unit: vec![(x.unit[0] + y.unit[0]).rem_euclid(modulus as i64)],
                })
                .collect(),
        }
    }
}

pub(crate) fn is_two_power(n: usize) -> bool {
    n.is_power_of_two()
}

/// Checks the combinatorial inertia/Frobenius conditions shared by both
/// engines: `e·f = |G|`, `E` a subgroup of order `e`, `ex` a homomorphism to
/// `ℤ/f` with kernel `E` and `ex(Frob) = 1`.
pub(crate) fn check_frobenius_data(
    group: &FiniteGroup,
    inertia: &[usize],
    frobenius: usize,
    f: u32,
    e: u32,
    ex: &[u32],
) -> Result<(), LocalError> {
    let n = group.order();
    let bad = |s: &str| Err(LocalError::BadData(s.into()));
    if (e as usize) * (f as usize) != n || f == 0 {
        return bad("e·f differs from the group order");
    }
    if inertia.len() != e as usize || !group.is_subgroup(inertia) {
        return bad("inertia is not a subgroup of order e");
    }
    if ex.len() != n || ex.iter().any(|&x| x >= f) {
        return bad("ex must give a value in 0..f for every element");
    }
    if frobenius >= n || ex[frobenius] != 1 % f {
        return bad("ex(Frob) must be 1");
    }
    for a in 0..n {
        for b in 0..n {
            if ex[group.mul(a, b)] != (ex[a] + ex[b]) % f {
                return bad("ex is not a homomorphism to ℤ/f");
            }
        }
    }
    let kernel: Vec<usize> = (0..n).filter(|&a| ex[a] == 0).collect();
    let mut inert = inertia.to_vec();
    inert.sort();
    if kernel != inert {
        return bad("ex does not vanish exactly on inertia");
    }
    Ok(())
}

impl LocalExtensionData {
    /// Residue field size of the base field.
    pub fn base_q(&self) -> u64 {
        let r = (self.q as f64).powf(1.0 / self.f as f64).round() as u64;
        (r.saturating_sub(1)..=r + 1).find(|&x| x.checked_pow(self.f) == Some(self.q)).unwrap_or(0)
    }

    pub fn validate(&self) -> Result<(), LocalError> {
        check_frobenius_data(&self.group, &self.inertia, self.frobenius, self.f, self.e, &self.ex)?;
        if self.q < 3 || self.base_q() < 2 {
            return Err(LocalError::BadData("q must be a prime power ≥ 3 with an f-th root".into()));
        }
        if self.dlog_pi.len() != self.group.gens().len() {
            return Err(LocalError::BadData("one dlog_pi value per generator".into()));
        }
        if self.dlog_pi.iter().chain([&self.dlog_base]).any(|&x| x >= self.q - 1) {
            return Err(LocalError::BadData("discrete logs must be reduced mod q−1".into()));
        }
        Ok(())
    }

    /// The module `l*/(1+m) = ℤ/(q−1) ⊕ ℤ`; the generator `g` sends
    /// `(x, v)` to `(q_k^{ex(g)}·x + v·dlog_pi(g), v)`.
    pub fn module(&self) -> Result<GModule, LocalError> {
        self.validate()?;
        let qk = self.base_q();
        let m = self.q - 1;
        let base = FinAbGroup { torsion: vec![BigInt::from(m)], free_rank: 1 };
        let mats = self
            .group
            .gens()
            .iter()
            .zip(&self.dlog_pi)
            .map(|(&s, &d)| {
                IntMatrix::from_rows(&[vec![mod_pow(qk, self.ex[s] as u64, m) as i64, d as i64], vec![0, 1]])
            })
            .collect();
        Ok(GModule::new(self.group.clone(), base, mats)?)
    }

    /// Discrete log of `g(π_l)/π_l` for every element, read off the module.
    pub fn dlog_pi_all(&self) -> Result<Vec<u64>, LocalError> {
        let m = self.module()?;
        Ok((0..self.group.order()).map(|a| m.action(a).get(0, 1).to_u64().unwrap()).collect())
    }

    /// The standard cocycle of invariant `1/f`.
    pub fn standard_cocycle(&self) -> LocalCocycle {
        LocalCocycle::from_fn(self.group.order(), |a, b| {
            if self.ex[a] + self.ex[b] >= self.f {
                LocalValue { val: self.e as i64, unit: vec![self.dlog_base as i64] }
            } else {
                LocalValue { val: 0, unit: vec![0] }
            }
        })
    }

    fn to_cochain(&self, c: &LocalCocycle) -> Result<Cochain2, LocalError> {
        let n = self.group.order();
        if c.order != n || c.values.len() != n * n || c.values.iter().any(|v| v.unit.len() != 1) {
            return Err(LocalError::BadCocycle { got: c.values.len(), want: n * n });
        }
        let m = (self.q - 1) as i64;
        Ok(Cochain2 {
            n,
            values: c
                .values
                .iter()
                .map(|v| vec![BigInt::from(v.unit[0].rem_euclid(m)), BigInt::from(v.val)])
                .collect(),
        })
    }
}

/// Finds `m ∈ 0..f` with `c ≡ m·st`. Checks first that `c` is a cocycle and
/// that `bound·c` is a coboundary. With `guard` set, fails with
/// [`LocalError::IncreasePrecision`] when `2·st` is a coboundary.
pub(crate) fn compare_with_standard(
    module: &GModule,
    c: &Cochain2,
    st: &Cochain2,
    f: u32,
    bound: u32,
    guard: Option<u32>,
) -> Result<u64, LocalError> {
    check_cocycle2(module, c).map_err(LocalError::NotACocycle)?;
    check_cocycle2(module, st)?;
    let c = normalize2(module, c);
    let st = normalize2(module, st);
    let solver = CoboundarySolver::new(module)?;
    let scaled = |k: i64, x: &Cochain2| Cochain2 {
        n: x.n,
        values: x.values.iter().map(|v| module.base.scale(&BigInt::from(k), v)).collect(),
    };
    if let Some(n) = guard {
        if solver.is_coboundary(&scaled(2, &st)) {
            return Err(LocalError::IncreasePrecision { n });
        }
    }
    if !solver.is_coboundary(&scaled(bound as i64, &c)) {
        return Err(LocalError::NotFourTorsion);
    }
    for k in 0..f as i64 {
        let ks = scaled(k, &st);
        let diff = Cochain2 {
            n: c.n,
            values: c.values.iter().zip(&ks.values).map(|(x, y)| module.base.sub(x, y)).collect(),
        };
        if solver.is_coboundary(&diff) {
            return Ok(k as u64);
        }
    }
    Err(LocalError::NoMultiplier)
}

/// Invariant of the class of `c` for a tame extension with `f ≥ 4`. The
/// class must be annihilated by `max(4, f)`.
pub fn invariant_tame(data: &LocalExtensionData, c: &LocalCocycle) -> Result<QmodZ, LocalError> {
    invariant_tame_bounded(data, c, data.f.max(4))
}

/// As [`invariant_tame`], rejecting classes not annihilated by `bound`.
pub fn invariant_tame_bounded(data: &LocalExtensionData, c: &LocalCocycle, bound: u32) -> Result<QmodZ, LocalError> {
    let module = data.module()?;
    if data.f < 4 {
        return Err(LocalError::NeedsExtension(data.f));
    }
    if !is_two_power(data.group.order()) {
        return Err(LocalError::NotTwoPower(data.group.order()));
    }
    if data.q % 2 == 0 {
        return Err(LocalError::BadData("tame engine needs odd residue characteristic".into()));
    }
    let cc = data.to_cochain(c)?;
    let st = data.to_cochain(&data.standard_cocycle())?;
    let m = compare_with_standard(&module, &cc, &st, data.f, bound, None)?;
    Ok(QmodZ::new(m as i64, data.f as i64))
}

/// Runs [`extend_unramified_4`] when `f < 4`, then [`invariant_tame`].
pub fn invariant(data: &LocalExtensionData, c: &LocalCocycle) -> Result<QmodZ, LocalError> {
    if data.f < 4 {
        let (d, c) = extend_unramified_4(data, c)?;
        invariant_tame(&d, &c)
    } else {
        invariant_tame(data, c)
    }
}

/// Replaces `l` by its compositum with the unramified extension of degree 4
/// without changing `π_l`: `G′ = G × ℤ/4` for `f = 1`, the index-2 subgroup
/// `{(g, j) : ex(g) ≡ j mod 2}` for `f = 2`. The cocycle is pulled back
/// along the projection and unit logs are scaled by `(q′−1)/(q−1)`.
/// Data with `f ≥ 4` is returned unchanged.
pub fn extend_unramified_4(
    data: &LocalExtensionData,
    c: &LocalCocycle,
) -> Result<(LocalExtensionData, LocalCocycle), LocalError> {
    if data.f >= 4 {
        return Ok((data.clone(), c.clone()));
    }
    if data.f == 3 {
        return Err(LocalError::BadData("residue degree 3 cannot be raised to 4".into()));
    }
    let dl = data.dlog_pi_all()?;
    data.to_cochain(c)?;
    let g = &data.group;
    let qk = data.base_q();
    let q2 = qk.checked_pow(4).ok_or_else(|| LocalError::BadData("q^4 overflows".into()))?;
    let scale = (q2 - 1) / (data.q - 1);
    let mut gens: Vec<(usize, u32)> = g.gens().iter().map(|&s| (s, data.ex[s])).collect();
    gens.push((0, if data.f == 1 { 1 } else { 2 }));
    let (grp, elems) = FiniteGroup::generate((0usize, 0u32), &gens, |x, y| (g.mul(x.0, y.0), (x.1 + y.1) % 4));
    let pos = |x: (usize, u32)| elems.iter().position(|&y| y == x).unwrap();
    let frob = if data.f == 1 { pos((0, 1)) } else { pos((data.frobenius, 1)) };
    let inertia: Vec<usize> = data.inertia.iter().map(|&h| pos((h, 0))).collect();
    let ex: Vec<u32> = elems.iter().map(|x| x.1).collect();
    let dlog_pi: Vec<u64> =
        grp.gens().iter().map(|&s| ((dl[elems[s].0] as u128 * scale as u128) % (q2 - 1) as u128) as u64).collect();
    let dlog_base = ((data.dlog_base as u128 * scale as u128) % (q2 - 1) as u128) as u64;
    let n2 = grp.order();
    let c2 = LocalCocycle::from_fn(n2, |a, b| {
        let v = c.at(elems[a].0, elems[b].0);
        let u = (v.unit[0].rem_euclid((data.q - 1) as i64) as u128 * scale as u128) % (q2 - 1) as u128;
        LocalValue { val: v.val, unit: vec![u as i64] }
    });
    let d2 = LocalExtensionData {
        group: grp,
        inertia,
        frobenius: frob,
        q: q2,
        f: 4,
        e: data.e,
        ex,
        dlog_pi,
        dlog_base,
    };
    d2.validate()?;
    Ok((d2, c2))
}

/// The cocycle of the cyclic algebra `(a, l/k, σ)`: `c(σⁱ, σʲ) = a` when
/// `i + j ≥ |G|` (exponents in `0..|G|`), else 1. `a` is given as
/// `(valuation, unit log)`.
pub fn cocycle_from_cyclic_algebra(
    data: &LocalExtensionData,
    generator: usize,
    a: (i64, u64),
) -> Result<LocalCocycle, LocalError> {
    let g = &data.group;
    let n = g.order();
    let mut expo = vec![usize::MAX; n];
    let mut x = 0;
    for i in 0..n {
        if expo[x] != usize::MAX {
            return Err(LocalError::NotCyclic);
        }
        expo[x] = i;
        x = g.mul(x, generator);
    }
    let m = (data.q - 1) as i64;
    let module = data.module()?;
    let av = vec![BigInt::from((a.1 as i64).rem_euclid(m)), BigInt::from(a.0)];
    if g.gens().iter().any(|&s| module.base.reduce(&module.act(s, &av)) != av) {
        return Err(LocalError::BadData("value is not fixed by the group".into()));
    }
    Ok(LocalCocycle::from_fn(n, |s, t| {
        if expo[s] + expo[t] >= n {
            LocalValue { val: a.0, unit: vec![(a.1 as i64).rem_euclid(m)] }
        } else {
            LocalValue { val: 0, unit: vec![0] }
        }
    }))
}

/// Adds the coboundary of a 1-cochain `b` (tame encoding) to `c`:
/// `c′(σ,τ) = c(σ,τ) · σ(b(τ)) b(στ)⁻¹ b(σ)`.
pub fn twist_by_coboundary(
    data: &LocalExtensionData,
    c: &LocalCocycle,
    b: &[(i64, u64)],
) -> Result<LocalCocycle, LocalError> {
    let module = data.module()?;
    let g = &data.group;
    let m = (data.q - 1) as i64;
    let vec_of = |x: &(i64, u64)| vec![BigInt::from(x.1), BigInt::from(x.0)];
    Ok(LocalCocycle::from_fn(g.order(), |s, t| {
        let st = g.mul(s, t);
        let a = module.act(s, &vec_of(&b[t]));
        let v = &c.at(s, t);
        let unit = (v.unit[0] + a[0].mod_floor(&BigInt::from(m)).to_i64().unwrap() - b[st].1 as i64 + b[s].1 as i64)
            .rem_euclid(m);
        let val = v.val + a[1].to_i64().unwrap() - b[st].0 + b[s].0;
        LocalValue { val, unit: vec![unit] }
    }))
}
