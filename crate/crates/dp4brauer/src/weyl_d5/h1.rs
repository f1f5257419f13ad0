//! H¹ of subgroups of W(D₅) with coefficients in the Picard lattice,
//! computed from the mod-2 orbit description and from
//! `(𝔓/4𝔓)^G / (𝔓^G/4𝔓^G)`.

use super::{hyperoctahedral, SignedPerm, Subgroup, WeylD5, WeylError};
use crate::cohomology::Cochain1;
use crate::exactlinalg::{cokernel, integer_kernel, AbHom, FinAbGroup, IntMatrix, Subquotient};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

/// An orbit of the induced permutation group on `{1..5}` (1-based), and
/// whether the signed symbols over it split into two orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SOrbit {
    pub indices: Vec<usize>,
    pub split: bool,
}

/// Orbits on `{1..5}` sorted by smallest member.
pub fn s_orbits(g: &Subgroup) -> Vec<SOrbit> {
    let gens = g.generator_perms();
    let mut comp = [usize::MAX; 5];
    let mut out = vec![];
    for start in 0..5 {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut stack = vec![start];
        comp[start] = id;
        let mut members = vec![];
        while let Some(i) = stack.pop() {
            members.push(i);
            for s in &gens {
                let j = s.target(i);
                if comp[j] == usize::MAX {
                    comp[j] = id;
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        // orbit of +e_start among the ten signed symbols
        let mut seen = [false; 10];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            for s in &gens {
                let b = s.on_symbols()[a];
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        let split = !seen[start + 5];
        out.push(SOrbit { indices: members.iter().map(|i| i + 1).collect(), split });
    }
    out
}

/// The 2-torsion of H¹ as `(ℤ/2)^{#orbits}` modulo the sum of all orbits
/// and the split orbits. Source coordinates are orbit coefficients.
#[derive(Clone, Debug)]
pub struct H1TwoTorsion {
    pub group: FinAbGroup,
    pub orbits: Vec<SOrbit>,
    pub proj: AbHom,
}

impl H1TwoTorsion {
    /// Class of `Σ c_k · [sum of e_i over orbit k]`.
    pub fn class_of_orbits(&self, coeffs: &[i64]) -> Vec<BigInt> {
        self.proj.apply(&coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
    }

    /// Class of `[e_i]` (1-based) when `{i}` is an orbit.
    pub fn class_of_index(&self, i: usize) -> Option<Vec<BigInt>> {
        let k = self.orbits.iter().position(|o| o.indices == [i])?;
        let mut c = vec![0i64; self.orbits.len()];
        c[k] = 1;
        Some(self.class_of_orbits(&c))
    }
}

pub fn h1_two_torsion(g: &Subgroup) -> H1TwoTorsion {
    let orbits = s_orbits(g);
    let k = orbits.len();
    let mut rels: Vec<Vec<BigInt>> = vec![];
    for i in 0..k {
        let mut v = vec![BigInt::zero(); k];
        v[i] = BigInt::from(2);
        rels.push(v);
    }
    rels.push(vec![BigInt::from(1); k]);
    for (i, o) in orbits.iter().enumerate() {
        if o.split {
            let mut v = vec![BigInt::zero(); k];
            v[i] = BigInt::from(1);
            rels.push(v);
        }
    }
    let m = IntMatrix::from_cols(k, &rels);
    let h = AbHom::new(FinAbGroup::free(rels.len()), FinAbGroup::free(k), m);
    let (group, proj) = cokernel(&h);
    H1TwoTorsion { group, orbits, proj }
}

/// Full H¹ as a subquotient of ℤ⁵ (integral lattice coordinates).
#[derive(Clone, Debug)]
pub struct H1Full {
    pub group: FinAbGroup,
    sq: Subquotient,
    mats: Vec<IntMatrix>,
}

impl H1Full {
    /// Whether `m` is invariant modulo 4.
    pub fn is_invariant_mod4(&self, m: &[BigInt]) -> bool {
        let four = BigInt::from(4);
        self.mats.iter().all(|a| {
            let y = a.mul_vec(m);
            y.iter().zip(m).all(|(p, q)| (p - q).is_multiple_of(&four))
        })
    }

    /// Class of `m̄ ∈ (𝔓/4𝔓)^G` given by a lift in integral coordinates.
    pub fn class_of(&self, m: &[i64; 5]) -> Result<Vec<BigInt>, WeylError> {
        let v: Vec<BigInt> = m.iter().map(|&x| BigInt::from(x)).collect();
        if !self.is_invariant_mod4(&v) {
            return Err(WeylError::NotInvariant);
        }
        Ok(self.sq.coords(&v).expect("invariant vectors lie in the generating set"))
    }

    /// A lift in integral coordinates of the class `x`.
    pub fn lift(&self, x: &[BigInt]) -> [i64; 5] {
        let v = self.sq.lift(x);
        let mut out = [0i64; 5];
        for (o, y) in out.iter_mut().zip(&v) {
            *o = y.to_i64().expect("small lift");
        }
        out
    }

    /// Lifts of the invariant-factor generators.
    pub fn generator_lifts(&self) -> Vec<[i64; 5]> {
        (0..self.group.ngens())
            .map(|j| {
                let mut e = self.group.zero();
                e[j] = BigInt::from(1);
                self.lift(&e)
            })
            .collect()
    }

    pub fn has_z4(&self) -> bool {
        self.group.torsion.iter().any(|d| d == &BigInt::from(4))
    }
}

fn stacked(mats: &[IntMatrix]) -> IntMatrix {
    let k = mats.len();
    IntMatrix::from_fn(5 * k, 5, |r, c| {
        let v = mats[r / 5].get(r % 5, c).clone();
        if r % 5 == c {
            v - 1
        } else {
            v
        }
    })
}

/// `H¹(G, 𝔓) ≅ (𝔓/4𝔓)^G / (𝔓^G/4𝔓^G)`.
pub fn h1_full(g: &Subgroup) -> H1Full {
    let w = WeylD5::get();
    let mats: Vec<IntMatrix> = g.generators().iter().map(|&i| w.pic_matrix(i).clone()).collect();
    let four = IntMatrix::from_fn(5, 5, |i, j| BigInt::from(if i == j { 4 } else { 0 }));
    if mats.is_empty() {
        let one = IntMatrix::identity(5);
        let sq = Subquotient::new(&one, &one);
        return H1Full { group: sq.group.clone(), sq, mats };
    }
    let s = stacked(&mats);
    let k = mats.len();
    let fixed = integer_kernel(&s);
    let big_four = IntMatrix::from_fn(5 * k, 5 * k, |i, j| BigInt::from(if i == j { 4 } else { 0 }));
    let inv_mod4 = integer_kernel(&s.hstack(&big_four)).row_range(0, 5);
    let sq = Subquotient::new(&inv_mod4.hstack(&four), &fixed.hstack(&four));
    H1Full { group: sq.group.clone(), sq, mats }
}

/// The cocycle `σ ↦ (σm̃ − m̃)/4` on the subgroup's elements, indexed like
/// [`super::pic_module`] (sorted element order).
pub fn cocycle_of_class(g: &Subgroup, m: &[i64; 5]) -> Result<Cochain1, WeylError> {
    let w = WeylD5::get();
    let v: Vec<BigInt> = m.iter().map(|&x| BigInt::from(x)).collect();
    let four = BigInt::from(4);
    let mut values = vec![];
    for &a in g.elements() {
        let y = w.pic_matrix(a).mul_vec(&v);
        let mut d = vec![];
        for (p, q) in y.iter().zip(&v) {
            let diff = p - q;
            if !diff.is_multiple_of(&four) {
                return Err(WeylError::NotInvariant);
            }
            d.push(diff / &four);
        }
        values.push(d);
    }
    Ok(Cochain1 { values })
}

/// Which 4-torsion configuration a subgroup admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FourTorsionType {
    None,
    TypeI,
    TypeII,
    Overlap,
}

impl std::fmt::Display for FourTorsionType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FourTorsionType::None => "none",
            FourTorsionType::TypeI => "typeI",
            FourTorsionType::TypeII => "typeII",
            FourTorsionType::Overlap => "overlap",
        })
    }
}

/// Exponent `j` with `σ` acting on `{e₄, e₅}` as `τ^j`, where
/// `τ: e₄ ↦ e₅ ↦ −e₄`, and the sign on `e₁, e₂, e₃` is `(−1)^j`.
fn type_i_exponent(s: &SignedPerm) -> Option<usize> {
    let im = s.images();
    let j = match (im[3], im[4]) {
        (4, 5) => 0,
        (5, -4) => 1,
        (-4, -5) => 2,
        (-5, 4) => 3,
        _ => return None,
    };
    let eps: i8 = if j % 2 == 0 { 1 } else { -1 };
    for &x in &im[..3] {
        if x.unsigned_abs() > 3 || x.signum() != eps {
            return None;
        }
    }
    Some(j)
}

/// Membership in the block group: index 1 fixed up to sign, blocks
/// `{2,4}, {3,5}` preserved, and `e₁` negated exactly when the blocks are
/// swapped. Returns whether `e₁` is negated.
fn type_ii_member(s: &SignedPerm) -> Option<bool> {
    if s.target(0) != 0 {
        return None;
    }
    let block = |i: usize| if i == 1 || i == 3 { 0 } else { 1 };
    let swaps = block(s.target(1)) != block(1);
    for i in 1..5 {
        if (block(s.target(i)) != block(i)) != swaps {
            return None;
        }
    }
    let neg = s.sign(0) < 0;
    (neg == swaps).then_some(neg)
}

/// Decides the 4-torsion configuration by searching all 3840 signed
/// permutations as conjugators.
pub fn classify_4torsion(g: &Subgroup) -> FourTorsionType {
    let elems = g.perms();
    let mut t1 = false;
    let mut t2 = false;
    for c in hyperoctahedral() {
        if t1 && t2 {
            break;
        }
        let ci = c.inverse();
        let conj: Vec<SignedPerm> = elems.iter().map(|s| c.compose(s).compose(&ci)).collect();
        if !t1 {
            let js: Option<Vec<usize>> = conj.iter().map(type_i_exponent).collect();
            if let Some(js) = js {
                t1 = js.iter().any(|j| j % 2 == 1);
            }
        }
        if !t2 {
            let negs: Option<Vec<bool>> = conj.iter().map(type_ii_member).collect();
            if let Some(negs) = negs {
                t2 = negs.iter().any(|&n| n);
            }
        }
    }
    match (t1, t2) {
        (false, false) => FourTorsionType::None,
        (true, false) => FourTorsionType::TypeI,
        (false, true) => FourTorsionType::TypeII,
        (true, true) => FourTorsionType::Overlap,
    }
}

/// Whether `ι([e_i])` is nonzero, for an orbit `{i}` (1-based).
pub fn typei_nontrivial(g: &Subgroup, i: usize) -> Result<bool, WeylError> {
    let orbits = s_orbits(g);
    let o = orbits
        .iter()
        .find(|o| o.indices == [i])
        .ok_or_else(|| WeylError::NotAnOrbit(format!("{{{i}}}")))?;
    Ok(!o.split)
}

/// Restriction `H¹(G, 𝔓) → H¹(G′, 𝔓)` on the invariant-factor generators.
pub fn restriction_table(g: &Subgroup, sub: &Subgroup) -> Result<AbHom, WeylError> {
    if !sub.is_subgroup_of(g) {
        return Err(WeylError::NotContained);
    }
    let hg = h1_full(g);
    let hs = h1_full(sub);
    let cols: Vec<Vec<BigInt>> = hg
        .generator_lifts()
        .iter()
        .map(|m| hs.class_of(m).expect("G-invariant implies G'-invariant"))
        .collect();
    let mat = IntMatrix::from_cols(hs.group.ngens(), &cols);
    Ok(AbHom::new(hg.group.clone(), hs.group.clone(), mat))
}
