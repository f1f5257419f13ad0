//! The Weyl group W(D₅) as signed permutations of five symbols with an even
//! number of sign changes, its action on the Picard lattice, subgroup
//! classes and the H¹ formulas.
//!
//! Lattice coordinates: `P = ⊕ ℤ·e_i` is the sublattice spanned by the five
//! conic classes. The full lattice adds `h = ½(e₁+⋯+e₅)` and is stored in
//! the integral basis `(e₁, e₂, e₃, e₄, h)`. "Doubled" coordinates are the
//! coefficients of `2x` on `e₁..e₅`; they are all even or all odd.

mod h1;
mod io;
mod subgroups;

pub use h1::{
    classify_4torsion, cocycle_of_class, h1_full, h1_two_torsion, restriction_table, s_orbits,
    typei_nontrivial, FourTorsionType, H1Full, H1TwoTorsion, SOrbit,
};
pub use io::{format_group_file, parse_group_file};
pub use subgroups::{class_of, find_conjugator, subgroup_conjugacy_classes, Subgroup, SubgroupClass};

use crate::cohomology::{FiniteGroup, GModule};
use crate::exactlinalg::{FinAbGroup, IntMatrix};
use num_bigint::BigInt;
use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("not a signed permutation: {0}")]
    BadPerm(String),
    #[error("odd number of sign changes in {0}")]
    OddSigns(String),
    #[error("{0} is not an orbit of the induced permutation group")]
    NotAnOrbit(String),
    #[error("not a subgroup of the given group")]
    NotContained,
    #[error("class is not invariant modulo 4")]
    NotInvariant,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A signed permutation: `img[i] = ±(j+1)` means `e_{i+1} ↦ ±e_{j+1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    img: [i8; 5],
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{},{}]", self.img[0], self.img[1], self.img[2], self.img[3], self.img[4])
    }
}

impl SignedPerm {
    pub const IDENTITY: SignedPerm = SignedPerm { img: [1, 2, 3, 4, 5] };

    /// Validates a permutation with an even number of sign changes.
    pub fn new(img: [i8; 5]) -> Result<Self, WeylError> {
        let s = Self::new_any(img)?;
        if !s.is_even() {
            return Err(WeylError::OddSigns(format!("{s}")));
        }
        Ok(s)
    }

    /// Any signed permutation (the hyperoctahedral group B₅).
    pub fn new_any(img: [i8; 5]) -> Result<Self, WeylError> {
        let mut seen = [false; 5];
        for &x in &img {
            let a = x.unsigned_abs() as usize;
            if !(1..=5).contains(&a) || seen[a - 1] {
                return Err(WeylError::BadPerm(format!("{img:?}")));
            }
            seen[a - 1] = true;
        }
        Ok(SignedPerm { img })
    }

    /// Sign changes at the listed indices (1-based), no permutation.
    pub fn flip(idx: &[usize]) -> Self {
        let mut img = Self::IDENTITY.img;
        for &i in idx {
            img[i - 1] = -img[i - 1];
        }
        SignedPerm { img }
    }

    /// Unsigned permutation from images (1-based).
    pub fn perm(p: [u8; 5]) -> Self {
        SignedPerm { img: p.map(|x| x as i8) }
    }

    pub fn images(&self) -> [i8; 5] {
        self.img
    }

    /// Target index (0-based) of `e_{i+1}`.
    #[inline]
    pub fn target(&self, i: usize) -> usize {
        self.img[i].unsigned_abs() as usize - 1
    }

    #[inline]
    pub fn sign(&self, i: usize) -> i8 {
        self.img[i].signum()
    }

    pub fn is_even(&self) -> bool {
        self.img.iter().filter(|&&x| x < 0).count() % 2 == 0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let mut img = [0i8; 5];
        for (i, v) in img.iter_mut().enumerate() {
            let j = other.target(i);
            *v = other.sign(i) * self.img[j];
        }
        SignedPerm { img }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut img = [0i8; 5];
        for i in 0..5 {
            img[self.target(i)] = self.sign(i) * (i as i8 + 1);
        }
        SignedPerm { img }
    }

    pub fn order(&self) -> usize {
        let mut x = *self;
        let mut k = 1;
        while x != Self::IDENTITY {
            x = x.compose(self);
            k += 1;
        }
        k
    }

    /// Action on doubled coordinates.
    pub fn act_doubled(&self, x: &[i64; 5]) -> [i64; 5] {
        let mut y = [0i64; 5];
        for i in 0..5 {
            y[self.target(i)] = self.sign(i) as i64 * x[i];
        }
        y
    }

    /// Induced permutation of the ten symbols `±e_i`, encoded as
    /// `i` for `+e_{i+1}` and `5+i` for `−e_{i+1}`.
    pub fn on_symbols(&self) -> [usize; 10] {
        let mut out = [0usize; 10];
        for i in 0..5 {
            let t = self.target(i);
            let (p, m) = if self.sign(i) > 0 { (t, t + 5) } else { (t + 5, t) };
            out[i] = p;
            out[i + 5] = m;
        }
        out
    }

    /// Matrix on `P` in the basis `e₁..e₅`.
    pub fn matrix_p(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(5, 5);
        for i in 0..5 {
            m.set(self.target(i), i, BigInt::from(self.sign(i)));
        }
        m
    }

    /// Matrix on the Picard lattice in the basis `(e₁, e₂, e₃, e₄, h)`.
    pub fn matrix_pic(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(5, 5);
        for j in 0..5 {
            let mut c = [0i64; 5];
            c[j] = 1;
            let y = self.act_doubled(&pic_to_doubled(&c));
            let v = doubled_to_pic(&y).expect("lattice is preserved");
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, BigInt::from(*x));
            }
        }
        m
    }
}

/// Integral-basis coordinates to doubled coordinates.
pub fn pic_to_doubled(c: &[i64; 5]) -> [i64; 5] {
    let mut x = [c[4]; 5];
    for i in 0..4 {
        x[i] += 2 * c[i];
    }
    x
}

/// Doubled coordinates to integral-basis coordinates; `None` when the
/// coordinates are of mixed parity (not a lattice vector).
pub fn doubled_to_pic(x: &[i64; 5]) -> Option<[i64; 5]> {
    let p = x[4].rem_euclid(2);
    if x.iter().any(|v| v.rem_euclid(2) != p) {
        return None;
    }
    let mut c = [0i64; 5];
    for i in 0..4 {
        c[i] = (x[i] - x[4]) / 2;
    }
    c[4] = x[4];
    Some(c)
}

/// Integral-basis coordinates of `e_{i+1}`.
pub fn e_class(i: usize) -> [i64; 5] {
    let mut x = [0i64; 5];
    x[i] = 2;
    doubled_to_pic(&x).unwrap()
}

/// The group W(D₅) with a fixed element numbering: elements sorted by the
/// underlying permutation (lexicographic on images), then by the sign
/// pattern read as a binary number with `e₁` as the lowest bit. The
/// identity is element 0.
pub struct WeylD5 {
    elems: Vec<SignedPerm>,
    index: HashMap<SignedPerm, u16>,
    table: Vec<u16>,
    group: FiniteGroup,
    pic: Vec<IntMatrix>,
}

fn sort_key(s: &SignedPerm) -> ([u8; 5], u8) {
    let mut p = [0u8; 5];
    let mut bits = 0u8;
    for i in 0..5 {
        p[i] = s.target(i) as u8;
        if s.sign(i) < 0 {
            bits |= 1 << i;
        }
    }
    (p, bits)
}

/// All 3840 signed permutations (even and odd).
pub fn hyperoctahedral() -> Vec<SignedPerm> {
    let mut out = Vec::with_capacity(3840);
    for p in permutations5() {
        for bits in 0..32u8 {
            let mut img = [0i8; 5];
            for i in 0..5 {
                let v = p[i] as i8 + 1;
                img[i] = if bits >> i & 1 == 1 { -v } else { v };
            }
            out.push(SignedPerm { img });
        }
    }
    out
}

fn permutations5() -> Vec<[u8; 5]> {
    let mut out = vec![];
    let mut cur = [0u8; 5];
    fn rec(k: usize, used: u8, cur: &mut [u8; 5], out: &mut Vec<[u8; 5]>) {
        if k == 5 {
            out.push(*cur);
            return;
        }
        for v in 0..5u8 {
            if used >> v & 1 == 0 {
                cur[k] = v;
                rec(k + 1, used | 1 << v, cur, out);
            }
        }
    }
    rec(0, 0, &mut cur, &mut out);
    out
}

/// Coxeter-style generators: adjacent transpositions and `flip(1,2)∘(1 2)`.
pub fn standard_generators() -> Vec<SignedPerm> {
    vec![
        SignedPerm::perm([2, 1, 3, 4, 5]),
        SignedPerm::perm([1, 3, 2, 4, 5]),
        SignedPerm::perm([1, 2, 4, 3, 5]),
        SignedPerm::perm([1, 2, 3, 5, 4]),
        SignedPerm { img: [-2, -1, 3, 4, 5] },
    ]
}

impl WeylD5 {
    fn build() -> Self {
        let mut elems: Vec<SignedPerm> = hyperoctahedral().into_iter().filter(|s| s.is_even()).collect();
        elems.sort_by_key(sort_key);
        let index: HashMap<SignedPerm, u16> = elems.iter().enumerate().map(|(i, s)| (*s, i as u16)).collect();
        let n = elems.len();
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&elems[a].compose(&elems[b])];
            }
        }
        let gens: Vec<usize> = standard_generators().iter().map(|g| index[g] as usize).collect();
        let group = FiniteGroup::from_table(n, table.iter().map(|&x| x as u32).collect(), gens)
            .expect("signed permutations form a group");
        let pic = elems.iter().map(|s| s.matrix_pic()).collect();
        WeylD5 { elems, index, table, group, pic }
    }

    /// The shared instance.
    pub fn get() -> &'static WeylD5 {
        static W: OnceLock<WeylD5> = OnceLock::new();
        W.get_or_init(WeylD5::build)
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elem(&self, i: usize) -> SignedPerm {
        self.elems[i]
    }

    pub fn elements(&self) -> &[SignedPerm] {
        &self.elems
    }

    pub fn index_of(&self, s: &SignedPerm) -> Option<usize> {
        self.index.get(s).map(|&i| i as usize)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elems.len() + b] as usize
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn pic_matrix(&self, a: usize) -> &IntMatrix {
        &self.pic[a]
    }
}

/// The whole group with its lattice action.
pub fn full_group() -> GModule {
    let w = WeylD5::get();
    GModule::from_element_action(w.group.clone(), FinAbGroup::free(5), |a| w.pic[a].clone())
        .expect("W(D5) acts on the lattice")
}

/// The Picard lattice as a module over a subgroup.
pub fn pic_module(g: &Subgroup) -> GModule {
    let w = WeylD5::get();
    let (fg, map) = w.group.subgroup(g.elements(), g.generators()).expect("valid subgroup");
    GModule::from_element_action(fg, FinAbGroup::free(5), |a| w.pic[map[a]].clone()).expect("lattice action")
}

/// The sublattice `P` as a module over a subgroup.
pub fn p_module(g: &Subgroup) -> GModule {
    let w = WeylD5::get();
    let (fg, map) = w.group.subgroup(g.elements(), g.generators()).expect("valid subgroup");
    GModule::from_element_action(fg, FinAbGroup::free(5), |a| w.elems[map[a]].matrix_p()).expect("lattice action")
}

/// Named subgroups used as fixtures throughout the crate. Generators are
/// written as signed images of `e₁..e₅`.
pub mod fixtures {
    use super::SignedPerm;

    fn sp(img: [i8; 5]) -> SignedPerm {
        SignedPerm::new(img).expect("fixture generator")
    }

    /// Cyclic of order 4 swapping `e₁, e₂` with a sign and negating `e₃`.
    pub fn cyclic4_mixed() -> Vec<SignedPerm> {
        vec![sp([2, -1, -3, 4, 5])]
    }

    /// Cyclic of order 4 whose H¹ is ℤ/4 and which admits both 4-torsion
    /// configurations.
    pub fn cyclic4_overlap() -> Vec<SignedPerm> {
        vec![sp([-1, 3, 2, 5, -4])]
    }

    /// Variant of [`cyclic4_overlap`] with the 2,3 swap negated.
    pub fn cyclic4_overlap_variant() -> Vec<SignedPerm> {
        vec![sp([-1, -3, -2, 5, -4])]
    }

    /// Cyclic of order 8 cycling `e₂ → e₃ → e₄ → e₅ → −e₂`.
    pub fn cyclic8() -> Vec<SignedPerm> {
        vec![sp([-1, 3, 4, 5, -2])]
    }

    /// The order-4 element negating `e₁, e₂, e₃` and rotating `e₄, e₅`.
    pub fn rotation_tau() -> SignedPerm {
        sp([-1, -2, -3, 5, -4])
    }

    /// `S₃ × ℤ/4`: plain permutations of `e₁, e₂, e₃` and [`rotation_tau`].
    pub fn s3_times_z4() -> Vec<SignedPerm> {
        vec![SignedPerm::perm([2, 1, 3, 4, 5]), SignedPerm::perm([2, 3, 1, 4, 5]), rotation_tau()]
    }

    /// Dicyclic group of order 12 inside [`s3_times_z4`]: pairs whose
    /// permutation sign matches the parity of the `τ` exponent.
    pub fn dic3() -> Vec<SignedPerm> {
        let t = rotation_tau();
        vec![SignedPerm::perm([2, 3, 1, 4, 5]), SignedPerm::perm([2, 1, 3, 4, 5]).compose(&t)]
    }

    /// Klein four group generated by two sign changes.
    pub fn sign_pairs() -> Vec<SignedPerm> {
        vec![SignedPerm::flip(&[1, 2]), SignedPerm::flip(&[2, 3, 4, 5])]
    }

    /// Klein four group of sign changes on `{2,3}` and `{4,5}`.
    pub fn sign_blocks() -> Vec<SignedPerm> {
        vec![SignedPerm::flip(&[2, 3]), SignedPerm::flip(&[4, 5])]
    }

    /// Order-2 element negating `e₃, e₅` and swapping `e₂, e₄`.
    pub fn swap_negate() -> Vec<SignedPerm> {
        vec![sp([1, 4, -3, 2, -5])]
    }

    /// The translation subgroup `(ℤ/2)⁴` of all even sign changes.
    pub fn translations() -> Vec<SignedPerm> {
        vec![
            SignedPerm::flip(&[1, 2]),
            SignedPerm::flip(&[1, 3]),
            SignedPerm::flip(&[1, 4]),
            SignedPerm::flip(&[1, 5]),
        ]
    }

    /// The maximal group of the block configuration: order 64, fixing the
    /// index 1, preserving the blocks `{2,4}, {3,5}`, with `e₁` negated
    /// exactly when the blocks are swapped.
    pub fn block_maximal() -> Vec<SignedPerm> {
        vec![
            sp([1, 4, 3, 2, 5]),
            sp([-1, 3, 2, 5, -4]),
            SignedPerm::flip(&[2, 3]),
            SignedPerm::flip(&[2, 4]),
            SignedPerm::flip(&[3, 5]),
        ]
    }

    /// Klein four group: sign change on `{3,5}` and the plain swap of `e₂, e₄`.
    pub fn klein_block() -> Vec<SignedPerm> {
        vec![SignedPerm::flip(&[3, 5]), SignedPerm::perm([1, 4, 3, 2, 5])]
    }
}

#[cfg(test)]
mod tests;
