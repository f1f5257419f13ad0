//! Cohomology of finite groups with coefficients in finitely generated
//! abelian groups: invariants, H¹ and H² via normalized cochains,
//! coboundary membership, restriction and corestriction.
//!
//! Modules are written additively. Multiplicative modules (units of a field)
//! are encoded through exponent coordinates, so that the 1-cocycle condition
//! reads `φ(στ) = φ(σ) + σ·φ(τ)` and
//! `δφ(σ,τ) = σ·φ(τ) − φ(στ) + φ(σ)`.

mod group;

pub use group::FiniteGroup;

use crate::exactlinalg::{
    integer_kernel, kernel, solve_integer, AbHom, FinAbGroup, IntMatrix, ModSolver, Subquotient,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomError {
    #[error("malformed group: {0}")]
    BadGroup(String),
    #[error("malformed action: {0}")]
    BadAction(String),
    #[error("group of order {order} exceeds the cochain limit {limit}")]
    GroupTooLarge { order: usize, limit: usize },
    #[error("2-cocycle identity fails at ({0}, {1}, {2})")]
    NotA2Cocycle(usize, usize, usize),
    #[error("1-cocycle identity fails at ({0}, {1})")]
    NotA1Cocycle(usize, usize),
    #[error("elements do not form a subgroup")]
    NotSubgroup,
    #[error("subgroup has index {0}, expected 2")]
    WrongIndex(usize),
    #[error("element is not invariant under the subgroup")]
    NotInvariant,
}

/// A finite group acting on a finitely generated abelian group through one
/// matrix per generator (columns are images of base generators).
#[derive(Clone, Debug)]
pub struct GModule {
    pub group: FiniteGroup,
    pub base: FinAbGroup,
    action: Vec<IntMatrix>,
}

/// Values of a 1-cochain, indexed by group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain1 {
    pub values: Vec<Vec<BigInt>>,
}

/// Values of a 2-cochain, indexed by `a * |G| + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain2 {
    pub n: usize,
    pub values: Vec<Vec<BigInt>>,
}

impl Cochain2 {
    pub fn at(&self, a: usize, b: usize) -> &[BigInt] {
        &self.values[a * self.n + b]
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Vec<BigInt>) -> Self {
        let mut values = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                values.push(f(a, b));
            }
        }
        Cochain2 { n, values }
    }
}

fn reduce_matrix(base: &FinAbGroup, m: &IntMatrix) -> IntMatrix {
    IntMatrix::from_fn(m.rows(), m.cols(), |i, j| match base.torsion.get(i) {
        Some(d) => m.get(i, j).mod_floor(d),
        None => m.get(i, j).clone(),
    })
}

impl GModule {
    /// Builds the module from generator matrices and derives every element's
    /// matrix along the spanning tree. Fails when two factorizations of an
    /// element act differently, or when an action matrix is not well defined
    /// on the base.
    pub fn new(group: FiniteGroup, base: FinAbGroup, gen_action: Vec<IntMatrix>) -> Result<Self, CohomError> {
        let g = base.ngens();
        if gen_action.len() != group.gens().len() {
            return Err(CohomError::BadAction("one matrix per generator expected".into()));
        }
        for m in &gen_action {
            if m.rows() != g || m.cols() != g {
                return Err(CohomError::BadAction("matrix size".into()));
            }
            if !AbHom::new(base.clone(), base.clone(), m.clone()).is_well_defined() {
                return Err(CohomError::BadAction("matrix does not respect relations".into()));
            }
        }
        let n = group.order();
        let mut action: Vec<Option<IntMatrix>> = vec![None; n];
        action[0] = Some(IntMatrix::identity(g));
        for a in group.bfs_order().into_iter().skip(1) {
            let (p, k) = group.tree_edge(a).unwrap();
            let m = action[p].as_ref().unwrap().mul(&gen_action[k]);
            action[a] = Some(reduce_matrix(&base, &m));
        }
        let action: Vec<IntMatrix> = action.into_iter().map(Option::unwrap).collect();
        for a in 0..n {
            for (k, &s) in group.gens().iter().enumerate() {
                let lhs = &action[group.mul(a, s)];
                let rhs = reduce_matrix(&base, &action[a].mul(&gen_action[k]));
                if *lhs != rhs {
                    return Err(CohomError::BadAction(format!(
                        "two factorizations of element {} act differently",
                        group.mul(a, s)
                    )));
                }
            }
        }
        Ok(GModule { group, base, action })
    }

    /// Builds the module from a matrix for every element.
    pub fn from_element_action(
        group: FiniteGroup,
        base: FinAbGroup,
        mut f: impl FnMut(usize) -> IntMatrix,
    ) -> Result<Self, CohomError> {
        let gens: Vec<IntMatrix> = group.gens().iter().map(|&s| f(s)).collect();
        GModule::new(group, base, gens)
    }

    /// Trivial action on `base`.
    pub fn trivial(group: FiniteGroup, base: FinAbGroup) -> Self {
        let g = base.ngens();
        let k = group.gens().len();
        GModule::new(group, base, vec![IntMatrix::identity(g); k]).expect("trivial action")
    }

    pub fn action(&self, a: usize) -> &IntMatrix {
        &self.action[a]
    }

    pub fn act(&self, a: usize, x: &[BigInt]) -> Vec<BigInt> {
        self.base.reduce(&self.action[a].mul_vec(x))
    }

    pub fn rank(&self) -> usize {
        self.base.ngens()
    }

    /// The same base restricted to a subgroup (`elems` in parent indices,
    /// `gens` generating it).
    pub fn restrict(&self, elems: &[usize], gens: &[usize]) -> Result<(GModule, Vec<usize>), CohomError> {
        let (sub, map) = self.group.subgroup(elems, gens)?;
        let m = GModule::from_element_action(sub, self.base.clone(), |a| self.action[map[a]].clone())?;
        Ok((m, map))
    }

    /// Map `base → base^k` stacking `s − 1` over the generators.
    fn invariants_map(&self) -> AbHom {
        let g = self.rank();
        let k = self.group.gens().len();
        let mut m = IntMatrix::zeros(g * k, g);
        for (t, &s) in self.group.gens().iter().enumerate() {
            for i in 0..g {
                for j in 0..g {
                    let mut v = self.action[s].get(i, j).clone();
                    if i == j {
                        v -= 1;
                    }
                    m.set(t * g + i, j, v);
                }
            }
        }
        AbHom::new(self.base.clone(), raw_power(&self.base, k), reorder_rows(&self.base, k, &m))
    }
}

/// `base^k` presented with copies of the base coordinates laid side by side.
/// Since `FinAbGroup` requires torsion coordinates first, the copies'
/// torsion coordinates are gathered at the front.
fn raw_power(base: &FinAbGroup, k: usize) -> FinAbGroup {
    let mut torsion = vec![];
    for _ in 0..k {
        torsion.extend(base.torsion.iter().cloned());
    }
    FinAbGroup { torsion, free_rank: base.free_rank * k }
}

/// Row permutation matching [`raw_power`]: row `(copy c, coord i)` of `m`
/// moves to the torsion block or the free block.
fn reorder_rows(base: &FinAbGroup, k: usize, m: &IntMatrix) -> IntMatrix {
    let g = base.ngens();
    let t = base.torsion.len();
    let f = base.free_rank;
    let mut idx = vec![0usize; g * k];
    for c in 0..k {
        for i in 0..g {
            let target = if i < t { c * t + i } else { k * t + c * f + (i - t) };
            idx[target] = c * g + i;
        }
    }
    m.select_rows(&idx)
}

/// Fixed submodule `M^G` with its inclusion into the base.
pub fn invariants(m: &GModule) -> (FinAbGroup, AbHom) {
    kernel(&m.invariants_map())
}

/// `δc` for a 1-cochain `c`.
pub fn coboundary(m: &GModule, c: &Cochain1) -> Cochain2 {
    let g = &m.group;
    Cochain2::from_fn(g.order(), |a, b| {
        let x = m.act(a, &c.values[b]);
        let y = m.base.sub(&x, &c.values[g.mul(a, b)]);
        m.base.add(&y, &c.values[a])
    })
}

/// `δx` for `x ∈ M`, i.e. `σ ↦ σx − x`.
pub fn coboundary0(m: &GModule, x: &[BigInt]) -> Cochain1 {
    Cochain1 { values: (0..m.group.order()).map(|a| m.base.sub(&m.act(a, x), x)).collect() }
}

/// Checks the 1-cocycle identity on all pairs.
pub fn check_cocycle1(m: &GModule, c: &Cochain1) -> Result<(), CohomError> {
    let g = &m.group;
    for a in 0..g.order() {
        for b in 0..g.order() {
            let lhs = &c.values[g.mul(a, b)];
            let rhs = m.base.add(&c.values[a], &m.act(a, &c.values[b]));
            if !m.base.is_zero_elem(&m.base.sub(lhs, &rhs)) {
                return Err(CohomError::NotA1Cocycle(a, b));
            }
        }
    }
    Ok(())
}

/// Checks the 2-cocycle identity on all triples.
pub fn check_cocycle2(m: &GModule, c: &Cochain2) -> Result<(), CohomError> {
    let g = &m.group;
    let n = g.order();
    for a in 0..n {
        for b in 0..n {
            let ab = g.mul(a, b);
            for cc in 0..n {
                let t1 = m.act(a, c.at(b, cc));
                let t2 = c.at(ab, cc);
                let t3 = c.at(a, g.mul(b, cc));
                let t4 = c.at(a, b);
                let s = m.base.add(&m.base.sub(&t1, t2), &m.base.sub(t3, t4));
                if !m.base.is_zero_elem(&s) {
                    return Err(CohomError::NotA2Cocycle(a, b, cc));
                }
            }
        }
    }
    Ok(())
}

/// Limit on |G| for the cochain-complex routines.
pub const COCHAIN_LIMIT: usize = 64;

/// H¹ computed from the normalized cochain complex, with conversions
/// between cocycles and classes.
#[derive(Clone, Debug)]
pub struct H1Cochain {
    pub group: FinAbGroup,
    sq: Subquotient,
    n: usize,
    base: FinAbGroup,
}

impl H1Cochain {
    fn flatten(&self, c: &Cochain1) -> Vec<BigInt> {
        let mut v = vec![];
        for a in 1..self.n {
            v.extend(c.values[a].iter().cloned());
        }
        v
    }

    /// Class of a 1-cocycle.
    pub fn class_of(&self, c: &Cochain1) -> Vec<BigInt> {
        self.sq.coords(&self.flatten(c)).expect("input is a normalized cocycle")
    }

    /// Some cocycle in the class `x`.
    pub fn cocycle_of(&self, x: &[BigInt]) -> Cochain1 {
        let v = self.sq.lift(x);
        let g = self.base.ngens();
        let mut values = vec![self.base.zero()];
        for a in 1..self.n {
            values.push(self.base.reduce(&v[(a - 1) * g..a * g]));
        }
        Cochain1 { values }
    }

    /// Cocycles for the group generators.
    pub fn generators(&self) -> Vec<Cochain1> {
        (0..self.group.ngens())
            .map(|j| {
                let mut e = self.group.zero();
                e[j] = BigInt::one();
                self.cocycle_of(&e)
            })
            .collect()
    }
}

/// Coordinates of normalized `C¹` and `C²` as column/row blocks, torsion
/// relations appended as extra columns of the row space.
fn d1_matrix(m: &GModule) -> IntMatrix {
    let grp = &m.group;
    let n = grp.order();
    let g = m.rank();
    let rows = (n - 1) * (n - 1) * g;
    let cols = (n - 1) * g;
    let mut d = IntMatrix::zeros(rows, cols);
    for a in 1..n {
        for b in 1..n {
            let r0 = ((a - 1) * (n - 1) + (b - 1)) * g;
            let ab = grp.mul(a, b);
            for i in 0..g {
                for j in 0..g {
                    let v = m.action(a).get(i, j);
                    if !v.is_zero() {
                        let cur = d.get(r0 + i, (b - 1) * g + j) + v;
                        d.set(r0 + i, (b - 1) * g + j, cur);
                    }
                }
                if ab != 0 {
                    let cur = d.get(r0 + i, (ab - 1) * g + i) - 1;
                    d.set(r0 + i, (ab - 1) * g + i, cur);
                }
                let cur = d.get(r0 + i, (a - 1) * g + i) + 1;
                d.set(r0 + i, (a - 1) * g + i, cur);
            }
        }
    }
    d
}

/// Relation columns for `blocks` copies of the base.
fn block_relations(base: &FinAbGroup, blocks: usize) -> IntMatrix {
    let g = base.ngens();
    let mut cols = vec![];
    for c in 0..blocks {
        for (i, d) in base.torsion.iter().enumerate() {
            let mut v = vec![BigInt::zero(); blocks * g];
            v[c * g + i] = d.clone();
            cols.push(v);
        }
    }
    IntMatrix::from_cols(blocks * g, &cols)
}

/// H¹(G, M) from the normalized cochain complex; requires |G| ≤ 64.
pub fn h1_cochain(m: &GModule) -> Result<H1Cochain, CohomError> {
    let n = m.group.order();
    if n > COCHAIN_LIMIT {
        return Err(CohomError::GroupTooLarge { order: n, limit: COCHAIN_LIMIT });
    }
    let g = m.rank();
    if n == 1 {
        let sq = Subquotient::new(&IntMatrix::zeros(0, 0), &IntMatrix::zeros(0, 0));
        return Ok(H1Cochain { group: sq.group.clone(), sq, n, base: m.base.clone() });
    }
    let d = d1_matrix(m);
    let rel_c1 = block_relations(&m.base, n - 1);
    let rel_c2 = block_relations(&m.base, (n - 1) * (n - 1));
    let full = d.hstack(&rel_c2);
    let ker = integer_kernel(&full).row_range(0, (n - 1) * g);
    let z1 = ker.hstack(&rel_c1);
    // B¹: images of base generators
    let mut bcols = vec![];
    for j in 0..g {
        let mut e = m.base.zero();
        e[j] = BigInt::one();
        let c = coboundary0(m, &e);
        let mut v = vec![];
        for a in 1..n {
            v.extend(c.values[a].iter().cloned());
        }
        bcols.push(v);
    }
    let b1 = IntMatrix::from_cols((n - 1) * g, &bcols).hstack(&rel_c1);
    let sq = Subquotient::new(&z1, &b1);
    Ok(H1Cochain { group: sq.group.clone(), sq, n, base: m.base.clone() })
}

/// H¹(G, M) for a free module and a group of any size, parameterizing
/// cocycles by their values on the generators.
#[derive(Clone, Debug)]
pub struct H1Presented {
    pub group: FinAbGroup,
    sq: Subquotient,
    /// Per element, the `g × (k·g)` matrix giving `φ(a)` from generator values.
    paths: Vec<IntMatrix>,
    rank: usize,
}

impl H1Presented {
    pub fn class_of(&self, c: &Cochain1, module: &GModule) -> Vec<BigInt> {
        let mut v = vec![];
        for &s in module.group.gens() {
            v.extend(c.values[s].iter().cloned());
        }
        self.sq.coords(&v).expect("input is a cocycle")
    }

    pub fn cocycle_of(&self, x: &[BigInt]) -> Cochain1 {
        let v = self.sq.lift(x);
        Cochain1 { values: self.paths.iter().map(|p| p.mul_vec(&v)).collect() }
    }

    pub fn generators(&self) -> Vec<Cochain1> {
        (0..self.group.ngens())
            .map(|j| {
                let mut e = self.group.zero();
                e[j] = BigInt::one();
                self.cocycle_of(&e)
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// H¹ of a torsion-free module via generator values; works for any |G|.
pub fn h1_presented(m: &GModule) -> Result<H1Presented, CohomError> {
    if !m.base.torsion.is_empty() {
        return Err(CohomError::BadAction("generator presentation needs a free module".into()));
    }
    let grp = &m.group;
    let n = grp.order();
    let g = m.rank();
    let gens = grp.gens();
    let k = gens.len();
    let w = k * g;
    // generator basis block
    let e_block = |t: usize| IntMatrix::from_fn(g, w, |i, j| BigInt::from((j == t * g + i) as i64));
    let mut paths: Vec<Option<IntMatrix>> = vec![None; n];
    paths[0] = Some(IntMatrix::zeros(g, w));
    for a in grp.bfs_order().into_iter().skip(1) {
        let (p, t) = grp.tree_edge(a).unwrap();
        let pm = paths[p].as_ref().unwrap();
        let step = m.action(p).mul(&e_block(t));
        paths[a] = Some(add_mats(pm, &step));
    }
    let paths: Vec<IntMatrix> = paths.into_iter().map(Option::unwrap).collect();
    let mut rows: HashSet<Vec<BigInt>> = HashSet::new();
    for a in 0..n {
        for (t, &s) in gens.iter().enumerate() {
            let b = grp.mul(a, s);
            let lhs = &paths[b];
            let rhs = add_mats(&paths[a], &m.action(a).mul(&e_block(t)));
            for i in 0..g {
                let row: Vec<BigInt> = (0..w).map(|j| lhs.get(i, j) - rhs.get(i, j)).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    let neg: Vec<BigInt> = row.iter().map(|x| -x).collect();
                    if !rows.contains(&neg) {
                        rows.insert(row);
                    }
                }
            }
        }
    }
    let mut rows: Vec<Vec<BigInt>> = rows.into_iter().collect();
    rows.sort();
    let cons = if rows.is_empty() { IntMatrix::zeros(0, w) } else { IntMatrix::from_rows(&rows) };
    let z1 = integer_kernel(&cons);
    let mut bcols = vec![];
    for j in 0..g {
        let mut e = m.base.zero();
        e[j] = BigInt::one();
        let mut v = vec![];
        for &s in gens {
            v.extend(m.base.sub(&m.act(s, &e), &e));
        }
        bcols.push(v);
    }
    let b1 = IntMatrix::from_cols(w, &bcols);
    let sq = Subquotient::new(&z1.hstack(&b1), &b1);
    Ok(H1Presented { group: sq.group.clone(), sq, paths, rank: g })
}

fn add_mats(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    IntMatrix::from_fn(a.rows(), a.cols(), |i, j| a.get(i, j) + b.get(i, j))
}

/// H² from the normalized cochain complex for small groups, with class
/// conversions. Intended for |G| ≤ 16.
#[derive(Clone, Debug)]
pub struct H2Cochain {
    pub group: FinAbGroup,
    sq: Subquotient,
    n: usize,
    base: FinAbGroup,
}

pub const H2_LIMIT: usize = 16;

impl H2Cochain {
    fn flatten(&self, c: &Cochain2) -> Vec<BigInt> {
        let mut v = vec![];
        for a in 1..self.n {
            for b in 1..self.n {
                v.extend(c.at(a, b).iter().cloned());
            }
        }
        v
    }

    /// Class of a normalized 2-cocycle.
    pub fn class_of(&self, c: &Cochain2) -> Vec<BigInt> {
        self.sq.coords(&self.flatten(c)).expect("input is a normalized cocycle")
    }

    pub fn cocycle_of(&self, x: &[BigInt]) -> Cochain2 {
        let v = self.sq.lift(x);
        let g = self.base.ngens();
        let n = self.n;
        Cochain2::from_fn(n, |a, b| {
            if a == 0 || b == 0 {
                self.base.zero()
            } else {
                let o = ((a - 1) * (n - 1) + (b - 1)) * g;
                self.base.reduce(&v[o..o + g])
            }
        })
    }
}

fn d2_matrix(m: &GModule) -> IntMatrix {
    let grp = &m.group;
    let n = grp.order();
    let g = m.rank();
    let pair = |a: usize, b: usize| ((a - 1) * (n - 1) + (b - 1)) * g;
    let rows = (n - 1).pow(3) * g;
    let cols = (n - 1) * (n - 1) * g;
    let mut d = IntMatrix::zeros(rows, cols);
    let add = |d: &mut IntMatrix, r: usize, c: usize, v: &BigInt| {
        let cur = d.get(r, c) + v;
        d.set(r, c, cur);
    };
    let one = BigInt::one();
    let mone = -BigInt::one();
    for a in 1..n {
        for b in 1..n {
            for c in 1..n {
                let r0 = (((a - 1) * (n - 1) + (b - 1)) * (n - 1) + (c - 1)) * g;
                let ab = grp.mul(a, b);
                let bc = grp.mul(b, c);
                for i in 0..g {
                    for j in 0..g {
                        let v = m.action(a).get(i, j);
                        if !v.is_zero() {
                            add(&mut d, r0 + i, pair(b, c) + j, v);
                        }
                    }
                    if ab != 0 {
                        add(&mut d, r0 + i, pair(ab, c) + i, &mone);
                    }
                    if bc != 0 {
                        add(&mut d, r0 + i, pair(a, bc) + i, &one);
                    }
                    add(&mut d, r0 + i, pair(a, b) + i, &mone);
                }
            }
        }
    }
    d
}

/// H²(G, M) from normalized cochains; requires |G| ≤ 16.
pub fn h2_cochain(m: &GModule) -> Result<H2Cochain, CohomError> {
    let n = m.group.order();
    if n > H2_LIMIT {
        return Err(CohomError::GroupTooLarge { order: n, limit: H2_LIMIT });
    }
    let g = m.rank();
    if n == 1 {
        let sq = Subquotient::new(&IntMatrix::zeros(0, 0), &IntMatrix::zeros(0, 0));
        return Ok(H2Cochain { group: sq.group.clone(), sq, n, base: m.base.clone() });
    }
    let c2 = (n - 1) * (n - 1);
    let d2 = d2_matrix(m);
    let full = d2.hstack(&block_relations(&m.base, (n - 1).pow(3)));
    let z2 = integer_kernel(&full).row_range(0, c2 * g);
    let rel = block_relations(&m.base, c2);
    let d1 = d1_matrix(m);
    let b2 = d1.hstack(&rel);
    let sq = Subquotient::new(&z2.hstack(&rel), &b2);
    Ok(H2Cochain { group: sq.group.clone(), sq, n, base: m.base.clone() })
}

/// Subtracts the coboundary of the constant cochain `c(1,1)`, which makes a
/// 2-cocycle vanish whenever an argument is the identity.
pub fn normalize2(m: &GModule, c: &Cochain2) -> Cochain2 {
    let k = Cochain1 { values: vec![c.at(0, 0).to_vec(); m.group.order()] };
    let dk = coboundary(m, &k);
    Cochain2 { n: c.n, values: c.values.iter().zip(&dk.values).map(|(x, y)| m.base.sub(x, y)).collect() }
}

/// Smallest `k` in `0..bound` such that `c1 − k·c2` is a coboundary, or
/// `None` when no such `k` exists. Both inputs must be 2-cocycles.
///
/// Only coboundary membership is solved for; H² itself is never built.
pub fn h2_class_compare(m: &GModule, c1: &Cochain2, c2: &Cochain2, bound: u64) -> Result<Option<u64>, CohomError> {
    check_cocycle2(m, c1)?;
    check_cocycle2(m, c2)?;
    let c1 = normalize2(m, c1);
    let c2 = normalize2(m, c2);
    let solver = CoboundarySolver::new(m)?;
    for k in 0..bound {
        let kk = BigInt::from(k);
        let c = Cochain2 {
            n: c1.n,
            values: c1.values.iter().zip(&c2.values).map(|(x, y)| m.base.sub(x, &m.base.scale(&kk, y))).collect(),
        };
        if solver.is_coboundary(&c) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Decides whether a normalized 2-cocycle is a coboundary. The free part is
/// solved exactly over ℤ, the torsion part over ℤ/E for the exponent E.
pub struct CoboundarySolver<'a> {
    m: &'a GModule,
    t: usize,
    f: usize,
    exponent: u64,
    free_sys: Option<IntMatrix>,
    free_main: IntMatrix,
    kernel_f: IntMatrix,
    mod_solver: Option<ModSolver>,
}

impl<'a> CoboundarySolver<'a> {
    pub fn new(m: &'a GModule) -> Result<Self, CohomError> {
        let n = m.group.order();
        if n > COCHAIN_LIMIT {
            return Err(CohomError::GroupTooLarge { order: n, limit: COCHAIN_LIMIT });
        }
        let t = m.base.torsion.len();
        let f = m.base.free_rank;
        // torsion generators must map into torsion
        for a in 0..n {
            for i in t..t + f {
                for j in 0..t {
                    if !m.action(a).get(i, j).is_zero() {
                        return Err(CohomError::BadAction("torsion mapped to free part".into()));
                    }
                }
            }
        }
        let exponent = m.base.exponent().to_u64().expect("exponent fits u64");
        let mut s = CoboundarySolver {
            m,
            t,
            f,
            exponent,
            free_sys: None,
            free_main: IntMatrix::zeros(0, 0),
            kernel_f: IntMatrix::zeros(0, 0),
            mod_solver: None,
        };
        if n == 1 {
            return Ok(s);
        }
        let d = d1_matrix(m);
        let g = t + f;
        let rows_f: Vec<usize> = (0..(n - 1) * (n - 1)).flat_map(|p| (t..g).map(move |i| p * g + i)).collect();
        let rows_t: Vec<usize> = (0..(n - 1) * (n - 1)).flat_map(|p| (0..t).map(move |i| p * g + i)).collect();
        let cols_f: Vec<usize> = (0..n - 1).flat_map(|a| (t..g).map(move |i| a * g + i)).collect();
        let cols_t: Vec<usize> = (0..n - 1).flat_map(|a| (0..t).map(move |i| a * g + i)).collect();
        let a_f = d.select_rows(&rows_f).select_cols(&cols_f);
        s.kernel_f = integer_kernel(&a_f);
        s.free_main = a_f;
        if t > 0 {
            let e = BigInt::from(exponent);
            let scale: Vec<BigInt> = (0..rows_t.len()).map(|r| &e / &m.base.torsion[r % t]).collect();
            let a_xf = d.select_rows(&rows_t).select_cols(&cols_f);
            let a_tt = d.select_rows(&rows_t).select_cols(&cols_t);
            let left = a_xf.mul(&s.kernel_f);
            let full = left.hstack(&a_tt);
            let mut flat = Vec::with_capacity(full.rows() * full.cols());
            for r in 0..full.rows() {
                for c in 0..full.cols() {
                    let v = (full.get(r, c) * &scale[r]).mod_floor(&e);
                    flat.push(v.to_u64().unwrap());
                }
            }
            s.mod_solver = Some(ModSolver::new(full.rows(), full.cols(), &flat, exponent));
            s.free_sys = Some(a_xf);
        }
        Ok(s)
    }

    /// Whether the normalized 2-cocycle `c` equals `δx` for some 1-cochain.
    pub fn is_coboundary(&self, c: &Cochain2) -> bool {
        let m = self.m;
        let n = m.group.order();
        if n == 1 {
            return m.base.is_zero_elem(c.at(0, 0));
        }
        let (t, f) = (self.t, self.f);
        let g = t + f;
        let mut b_f = vec![];
        let mut b_t = vec![];
        for a in 1..n {
            for b in 1..n {
                let v = m.base.reduce(c.at(a, b));
                b_t.extend(v[..t].iter().cloned());
                b_f.extend(v[t..g].iter().cloned());
            }
        }
        let x0 = if f > 0 {
            match solve_integer(&self.free_main, &b_f) {
                Some(x) => x,
                None => return false,
            }
        } else {
            vec![]
        };
        if t == 0 {
            return true;
        }
        let e = BigInt::from(self.exponent);
        let a_xf = self.free_sys.as_ref().unwrap();
        let shift = if f > 0 { a_xf.mul_vec(&x0) } else { vec![BigInt::zero(); b_t.len()] };
        let rhs: Vec<u64> = b_t
            .iter()
            .zip(&shift)
            .enumerate()
            .map(|(r, (bv, sv))| {
                let sc = &e / &m.base.torsion[r % t];
                ((bv - sv) * sc).mod_floor(&e).to_u64().unwrap()
            })
            .collect();
        self.mod_solver.as_ref().unwrap().solvable(&rhs)
    }
}

/// Restriction of a cocycle to a subgroup (`map` sends subgroup indices to
/// parent indices).
pub fn restrict_cochain(c: &Cochain1, map: &[usize]) -> Cochain1 {
    Cochain1 { values: map.iter().map(|&a| c.values[a].clone()).collect() }
}

/// Restriction on H¹: returns the subgroup's H¹ and the image class.
pub fn restrict(
    m: &GModule,
    h1: &H1Cochain,
    sub_elems: &[usize],
    sub_gens: &[usize],
    x: &[BigInt],
) -> Result<(H1Cochain, Vec<BigInt>), CohomError> {
    let (ms, map) = m.restrict(sub_elems, sub_gens)?;
    let hs = h1_cochain(&ms)?;
    let c = h1.cocycle_of(x);
    let cls = hs.class_of(&restrict_cochain(&c, &map));
    Ok((hs, cls))
}

/// Norm map `x ↦ x + g·x` on `(M/2M)^H → (M/2M)^G` for an index-2
/// subgroup `H` (given by its elements); `g` is any element outside `H`.
pub fn corestrict_2tors(m: &GModule, sub_elems: &[usize], x: &[BigInt]) -> Result<Vec<BigInt>, CohomError> {
    let n = m.group.order();
    if !m.group.is_subgroup(sub_elems) {
        return Err(CohomError::NotSubgroup);
    }
    if sub_elems.len() * 2 != n {
        return Err(CohomError::WrongIndex(n / sub_elems.len().max(1)));
    }
    let two = BigInt::from(2);
    let red = |v: &[BigInt]| -> Vec<BigInt> { v.iter().map(|a| a.mod_floor(&two)).collect() };
    let x2 = red(x);
    for &h in sub_elems {
        if red(&m.act(h, x)) != x2 {
            return Err(CohomError::NotInvariant);
        }
    }
    let mut inside = vec![false; n];
    for &h in sub_elems {
        inside[h] = true;
    }
    let g = (0..n).find(|&a| !inside[a]).unwrap();
    let y = m.base.add(x, &m.act(g, x));
    Ok(red(&y))
}

/// Convenience: the zero 1-cochain.
pub fn zero_cochain1(m: &GModule) -> Cochain1 {
    Cochain1 { values: vec![m.base.zero(); m.group.order()] }
}

#[cfg(test)]
mod tests;
