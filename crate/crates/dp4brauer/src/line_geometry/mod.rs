//! The sixteen lines on a degree-4 del Pezzo surface in the blown-up model,
//! their incidence, the forty quadrilaterals, the divisor-to-Picard
//! cokernel, and lifts of Picard-valued 1-cocycles to divisor-valued
//! 2-cochains.
//!
//! A line is identified with a sign vector in `{±1}⁵` with an even number
//! of plus signs: `C` is all minus, `L_ij` has plus exactly at `i, j`, and
//! `E_i` has plus everywhere except at `i`. Half of a sign vector is the
//! line's class in the Picard lattice, and signed permutations act on
//! sign vectors directly. Two lines meet iff their sign vectors differ in
//! exactly four places.

use crate::cohomology::{Cochain1, FiniteGroup, GModule};
use crate::exactlinalg::{cokernel_with_section, smith_normal_form, AbHom, FinAbGroup, IntMatrix};
use crate::weyl_d5::{SignedPerm, Subgroup, WeylD5};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LineError {
    #[error("a line has no incidence with itself")]
    SameLine,
    #[error("the action does not preserve the set of quadrilaterals")]
    QuadrilateralsNotPreserved,
    #[error("the action does not preserve incidence")]
    IncidenceNotPreserved,
    #[error("input is not a 1-cocycle")]
    NotACocycle,
    #[error("value vanishes at the base point for pair ({0}, {1})")]
    ZeroAtBase(usize, usize),
    #[error("malformed action: {0}")]
    BadAction(String),
}

/// One of the sixteen lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LineLabel {
    /// Exceptional curve over the i-th point (1-based).
    E(u8),
    /// Strict transform of the line through points i < j.
    L(u8, u8),
    /// Strict transform of the conic through all five points.
    C,
}

impl fmt::Display for LineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineLabel::E(i) => write!(f, "E{i}"),
            LineLabel::L(i, j) => write!(f, "L{i}{j}"),
            LineLabel::C => write!(f, "C"),
        }
    }
}

impl LineLabel {
    /// All sixteen labels in the fixed order `E1..E5, L12..L45, C`.
    pub fn all() -> Vec<LineLabel> {
        let mut out: Vec<LineLabel> = (1..=5).map(LineLabel::E).collect();
        for i in 1..=5u8 {
            for j in i + 1..=5 {
                out.push(LineLabel::L(i, j));
            }
        }
        out.push(LineLabel::C);
        out
    }

    pub fn index(&self) -> usize {
        LineLabel::all().iter().position(|l| l == self).expect("valid label")
    }

    pub fn from_index(i: usize) -> LineLabel {
        LineLabel::all()[i]
    }

    /// Class over the basis `(L, E₁..E₅)`.
    pub fn class(&self) -> [i64; 6] {
        let mut v = [0i64; 6];
        match *self {
            LineLabel::E(i) => v[i as usize] = 1,
            LineLabel::L(i, j) => {
                v[0] = 1;
                v[i as usize] = -1;
                v[j as usize] = -1;
            }
            LineLabel::C => v = [2, -1, -1, -1, -1, -1],
        }
        v
    }

    /// Sign vector (doubled Picard-lattice coordinates).
    pub fn signs(&self) -> [i64; 5] {
        match *self {
            LineLabel::E(i) => {
                let mut s = [1i64; 5];
                s[i as usize - 1] = -1;
                s
            }
            LineLabel::L(i, j) => {
                let mut s = [-1i64; 5];
                s[i as usize - 1] = 1;
                s[j as usize - 1] = 1;
                s
            }
            LineLabel::C => [-1; 5],
        }
    }

    pub fn from_signs(s: &[i64; 5]) -> Option<LineLabel> {
        LineLabel::all().into_iter().find(|l| l.signs() == *s)
    }
}

/// Intersection form on `Pic X` with `L² = 1`, `E_i·E_j = −δ_ij`, `L·E_i = 0`.
pub fn pairing(a: &[i64; 6], b: &[i64; 6]) -> i64 {
    a[0] * b[0] - (1..6).map(|i| a[i] * b[i]).sum::<i64>()
}

/// Incidence of two distinct lines.
pub fn incidence(a: LineLabel, b: LineLabel) -> Result<u8, LineError> {
    if a == b {
        return Err(LineError::SameLine);
    }
    Ok(pairing(&a.class(), &b.class()) as u8)
}

fn incidence_table() -> &'static [[u8; 16]; 16] {
    static T: OnceLock<[[u8; 16]; 16]> = OnceLock::new();
    T.get_or_init(|| {
        let labels = LineLabel::all();
        let mut t = [[0u8; 16]; 16];
        for i in 0..16 {
            for j in 0..16 {
                if i != j {
                    t[i][j] = incidence(labels[i], labels[j]).unwrap();
                }
            }
        }
        t
    })
}

/// Shape of a quadrilateral by line kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuadShape {
    /// Two exceptional curves, one line, the conic.
    ElEc,
    /// One exceptional curve and three lines.
    Elll,
}

/// The forty quadrilaterals and their 16×40 incidence matrix.
#[derive(Clone, Debug)]
pub struct Quadrilaterals {
    /// Each entry is a 4-cycle `[a, b, c, d]` (consecutive lines meet),
    /// starting at the smallest index and continuing to its smaller
    /// neighbour.
    pub cycles: Vec<[usize; 4]>,
    pub matrix: IntMatrix,
    index: HashMap<[usize; 4], usize>,
}

impl Quadrilaterals {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn labels(&self, k: usize) -> [LineLabel; 4] {
        self.cycles[k].map(LineLabel::from_index)
    }

    pub fn shape(&self, k: usize) -> QuadShape {
        let n_e = self.cycles[k].iter().filter(|&&i| i < 5).count();
        if n_e == 2 {
            QuadShape::ElEc
        } else {
            QuadShape::Elll
        }
    }

    /// Column index of a quadrilateral given by its four lines.
    pub fn find(&self, lines: &[usize; 4]) -> Option<usize> {
        let mut key = *lines;
        key.sort_unstable();
        self.index.get(&key).copied()
    }
}

/// The forty quadrilaterals: four lines with exactly four of their six
/// pairwise intersection numbers equal to one.
pub fn quadrilaterals() -> &'static Quadrilaterals {
    static Q: OnceLock<Quadrilaterals> = OnceLock::new();
    Q.get_or_init(|| {
        let t = incidence_table();
        let mut cycles = vec![];
        let mut index = HashMap::new();
        for a in 0..16 {
            for b in a + 1..16 {
                for c in b + 1..16 {
                    for d in c + 1..16 {
                        let s = [a, b, c, d];
                        let mut cnt = 0;
                        for i in 0..4 {
                            for j in i + 1..4 {
                                cnt += t[s[i]][s[j]];
                            }
                        }
                        if cnt != 4 {
                            continue;
                        }
                        // every member meets exactly two others
                        if !s.iter().all(|&x| s.iter().filter(|&&y| y != x && t[x][y] == 1).count() == 2) {
                            continue;
                        }
                        let nb: Vec<usize> = s[1..].iter().copied().filter(|&y| t[a][y] == 1).collect();
                        let (n1, n2) = (nb[0].min(nb[1]), nb[0].max(nb[1]));
                        let opposite = *s[1..].iter().find(|&&y| t[a][y] == 0).unwrap();
                        index.insert(s, cycles.len());
                        cycles.push([a, n1, opposite, n2]);
                    }
                }
            }
        }
        let mut matrix = IntMatrix::zeros(16, cycles.len());
        for (k, c) in cycles.iter().enumerate() {
            for &i in c {
                matrix.set(i, k, BigInt::from(1));
            }
        }
        Quadrilaterals { cycles, matrix, index }
    })
}

/// A group acting on the sixteen lines, one permutation per element
/// (`perms[g][i]` is the image of line `i`).
#[derive(Clone, Debug)]
pub struct LineAction {
    pub group: FiniteGroup,
    pub perms: Vec<[u8; 16]>,
}

/// Permutation of the lines induced by a signed permutation.
pub fn line_permutation(s: &SignedPerm) -> [u8; 16] {
    let labels = LineLabel::all();
    let mut out = [0u8; 16];
    for (i, l) in labels.iter().enumerate() {
        let y = s.act_doubled(&l.signs());
        out[i] = LineLabel::from_signs(&y).expect("even plus count is preserved").index() as u8;
    }
    out
}

/// The line action of a subgroup of W(D₅), with elements in the
/// subgroup's sorted order.
pub fn line_action_from_signed(g: &Subgroup) -> LineAction {
    let w = WeylD5::get();
    let (group, map) = w.group().subgroup(g.elements(), g.generators()).expect("valid subgroup");
    let perms = map.iter().map(|&a| line_permutation(&w.elem(a))).collect();
    LineAction { group, perms }
}

impl LineAction {
    /// Builds an action from a group and permutations for every element;
    /// checks the homomorphism property and incidence preservation.
    pub fn new(group: FiniteGroup, perms: Vec<[u8; 16]>) -> Result<Self, LineError> {
        let n = group.order();
        if perms.len() != n {
            return Err(LineError::BadAction("one permutation per element expected".into()));
        }
        for p in &perms {
            let mut seen = [false; 16];
            for &x in p {
                if x >= 16 || seen[x as usize] {
                    return Err(LineError::BadAction("not a permutation".into()));
                }
                seen[x as usize] = true;
            }
        }
        for a in 0..n {
            for &s in group.gens() {
                let ab = group.mul(a, s);
                for i in 0..16 {
                    if perms[ab][i] != perms[a][perms[s][i] as usize] {
                        return Err(LineError::BadAction("not a homomorphism".into()));
                    }
                }
            }
        }
        let act = LineAction { group, perms };
        if !act.preserves_incidence() {
            return Err(LineError::IncidenceNotPreserved);
        }
        Ok(act)
    }

    pub fn preserves_incidence(&self) -> bool {
        let t = incidence_table();
        self.perms.iter().all(|p| {
            (0..16).all(|i| (0..16).all(|j| t[i][j] == t[p[i] as usize][p[j] as usize]))
        })
    }

    /// Induced permutation of the quadrilaterals, per element.
    pub fn quad_perms(&self) -> Result<Vec<Vec<usize>>, LineError> {
        let q = quadrilaterals();
        self.perms
            .iter()
            .map(|p| {
                (0..q.len())
                    .map(|k| {
                        let img = q.cycles[k].map(|i| p[i] as usize);
                        q.find(&img).ok_or(LineError::QuadrilateralsNotPreserved)
                    })
                    .collect()
            })
            .collect()
    }

    fn perm_matrix(&self, a: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(16, 16);
        for i in 0..16 {
            m.set(self.perms[a][i] as usize, i, BigInt::from(1));
        }
        m
    }
}

/// `Pic U` as the cokernel of the quadrilateral matrix, with the induced
/// action, projection `Div → Pic U` and a section.
#[derive(Clone, Debug)]
pub struct PicFromLines {
    pub module: GModule,
    /// `5 × 16` projection.
    pub proj: IntMatrix,
    /// `16 × 5` section with `proj · section = 1`.
    pub section: IntMatrix,
}

pub fn pic_from_lines(act: &LineAction) -> Result<PicFromLines, LineError> {
    act.quad_perms()?;
    let q = quadrilaterals();
    let h = AbHom::new(FinAbGroup::free(q.len()), FinAbGroup::free(16), q.matrix.clone());
    let (g, proj, section) = cokernel_with_section(&h);
    if !g.torsion.is_empty() {
        return Err(LineError::BadAction("cokernel has torsion".into()));
    }
    let module = GModule::from_element_action(act.group.clone(), g, |a| {
        proj.matrix.mul(&act.perm_matrix(a)).mul(&section)
    })
    .map_err(|e| LineError::BadAction(e.to_string()))?;
    Ok(PicFromLines { module, proj: proj.matrix, section })
}

/// Divisor-valued 2-cochain `ψ: G × G → ℤ⁴⁰` with `q∘ψ = δφ̃`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DivisorCochain {
    pub order: usize,
    /// Quadrilateral labels, one per exponent coordinate.
    pub quadrilaterals: Vec<[LineLabel; 4]>,
    /// `values[a * order + b]` is the exponent vector of `ψ(a, b)`.
    pub values: Vec<Vec<i64>>,
}

impl DivisorCochain {
    pub fn at(&self, a: usize, b: usize) -> &[i64] {
        &self.values[a * self.order + b]
    }
}

/// Solver for `q x = y` over ℤ via a precomputed Smith form.
struct QuadSolver {
    u: Vec<Vec<i64>>,
    v: Vec<Vec<i64>>,
    diag: Vec<i64>,
}

impl QuadSolver {
    fn new() -> Self {
        let s = smith_normal_form(&quadrilaterals().matrix);
        let conv = |m: &IntMatrix| -> Vec<Vec<i64>> {
            (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_i64().unwrap()).collect()).collect()
        };
        let diag = s.diagonal().iter().map(|d| d.to_i64().unwrap()).collect();
        QuadSolver { u: conv(&s.u), v: conv(&s.v), diag }
    }

    fn solve(&self, y: &[i64]) -> Option<Vec<i64>> {
        let z: Vec<i64> = self.u.iter().map(|r| r.iter().zip(y).map(|(a, b)| a * b).sum()).collect();
        let r = self.diag.len();
        if z[r..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut w = vec![0i64; self.v.len()];
        for i in 0..r {
            if z[i] % self.diag[i] != 0 {
                return None;
            }
            w[i] = z[i] / self.diag[i];
        }
        Some(self.v.iter().map(|row| row.iter().zip(&w).map(|(a, b)| a * b).sum()).collect())
    }
}

fn quad_solver() -> &'static QuadSolver {
    static S: OnceLock<QuadSolver> = OnceLock::new();
    S.get_or_init(QuadSolver::new)
}

fn to_i64_matrix(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_i64().unwrap()).collect()).collect()
}

/// The lift `φ̃ = section ∘ φ` to divisors, per element.
fn lift_to_div(pic: &PicFromLines, phi: &Cochain1) -> Vec<Vec<i64>> {
    let s = to_i64_matrix(&pic.section);
    phi.values
        .iter()
        .map(|v| {
            let v: Vec<i64> = v.iter().map(|x| x.to_i64().unwrap()).collect();
            s.iter().map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum()).collect()
        })
        .collect()
}

fn permute_div(p: &[u8; 16], x: &[i64]) -> Vec<i64> {
    let mut y = vec![0i64; 16];
    for i in 0..16 {
        y[p[i] as usize] = x[i];
    }
    y
}

/// `δφ̃(σ,τ) = σφ̃(τ) − φ̃(στ) + φ̃(σ)` in `Div`.
pub fn divisor_coboundary(act: &LineAction, pic: &PicFromLines, phi: &Cochain1) -> Vec<Vec<i64>> {
    let lift = lift_to_div(pic, phi);
    let n = act.group.order();
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let s = permute_div(&act.perms[a], &lift[b]);
            let ab = act.group.mul(a, b);
            out.push((0..16).map(|i| s[i] - lift[ab][i] + lift[a][i]).collect());
        }
    }
    out
}

/// Lifts a Picard-valued 1-cocycle to a divisor-valued 2-cochain through
/// the quadrilateral matrix.
pub fn lift_cocycle_to_divisors(act: &LineAction, pic: &PicFromLines, phi: &Cochain1) -> Result<DivisorCochain, LineError> {
    crate::cohomology::check_cocycle1(&pic.module, phi).map_err(|_| LineError::NotACocycle)?;
    let solver = quad_solver();
    let d = divisor_coboundary(act, pic, phi);
    let values = d.iter().map(|y| solver.solve(y).ok_or(LineError::NotACocycle)).collect::<Result<Vec<_>, _>>()?;
    let q = quadrilaterals();
    Ok(DivisorCochain { order: act.group.order(), quadrilaterals: (0..q.len()).map(|k| q.labels(k)).collect(), values })
}

/// `q · x` for an exponent vector.
pub fn apply_q(x: &[i64]) -> Vec<i64> {
    let q = quadrilaterals();
    let mut y = vec![0i64; 16];
    for (k, c) in q.cycles.iter().enumerate() {
        if x[k] != 0 {
            for &i in c {
                y[i] += x[k];
            }
        }
    }
    y
}

/// `q(δψ(σ,τ,υ))` for one triple, with `G` permuting quadrilaterals.
pub fn q_of_coboundary(act: &LineAction, quad_perms: &[Vec<usize>], psi: &DivisorCochain, a: usize, b: usize, c: usize) -> Vec<i64> {
    let g = &act.group;
    let m = psi.values[0].len();
    let mut s = vec![0i64; m];
    let src = psi.at(b, c);
    for k in 0..m {
        s[quad_perms[a][k]] += src[k];
    }
    let t2 = psi.at(g.mul(a, b), c);
    let t3 = psi.at(a, g.mul(b, c));
    let t4 = psi.at(a, b);
    let v: Vec<i64> = (0..m).map(|k| s[k] - t2[k] + t3[k] - t4[k]).collect();
    apply_q(&v)
}

/// Divides each value of a function-valued 2-cochain by its value at a
/// base point. `values[p]` and `at_base[p]` describe the pair with index
/// `p = a·|G| + b`; each entry of `values[p]` is the function evaluated at
/// one sample point.
pub fn normalize_at_point(
    order: usize,
    values: &[Vec<BigRational>],
    at_base: &[BigRational],
) -> Result<Vec<Vec<BigRational>>, LineError> {
    values
        .iter()
        .zip(at_base)
        .enumerate()
        .map(|(p, (vals, b))| {
            if b.is_zero() {
                return Err(LineError::ZeroAtBase(p / order, p % order));
            }
            Ok(vals.iter().map(|v| v / b).collect())
        })
        .collect()
}

/// Checks the multiplicative 2-cocycle identity
/// `c(τ,υ)·c(σ,τυ) = c(στ,υ)·c(σ,τ)` for a cochain with values in a field
/// on which the group acts trivially, at every sample point.
pub fn is_multiplicative_cocycle(group: &FiniteGroup, values: &[Vec<BigRational>]) -> bool {
    let n = group.order();
    let at = |a: usize, b: usize| &values[a * n + b];
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| {
                let (x1, x2) = (at(b, c), at(a, group.mul(b, c)));
                let (y1, y2) = (at(group.mul(a, b), c), at(a, b));
                (0..x1.len()).all(|k| &x1[k] * &x2[k] == &y1[k] * &y2[k])
            })
        })
    })
}

#[cfg(test)]
mod tests;
