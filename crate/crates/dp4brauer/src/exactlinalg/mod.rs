//! Exact integer linear algebra: Smith normal form, kernels, cokernels and
//! linear solving over ℤ and over ℤ/Nℤ.
//!
//! Matrices hold `BigInt` entries. Eliminations run over `i64` with checked
//! arithmetic first and transparently restart over `BigInt` on overflow.

mod entry;
mod modn;

pub use modn::ModSolver;

use entry::{snf, Dense, Entry, SnfOut, Track};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    /// Builds a matrix whose columns are the given vectors; `rows` is needed
    /// when the list is empty.
    pub fn from_cols(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.data[i * cols.len() + j] = x.clone();
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn diagonal(d: &[BigInt]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.data[i * d.len() + i] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn hstack(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, o.rows);
        Self::from_fn(self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                o.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        IntMatrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Columns `range` as a new matrix.
    pub fn col_range(&self, from: usize, to: usize) -> IntMatrix {
        Self::from_fn(self.rows, to - from, |i, j| self.get(i, from + j).clone())
    }

    /// Rows `range` as a new matrix.
    pub fn row_range(&self, from: usize, to: usize) -> IntMatrix {
        Self::from_fn(to - from, self.cols, |i, j| self.get(from + i, j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        Self::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        Self::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                    Some(i) => {
                        for c in 0..n {
                            a.swap(k * n + c, i * n + c);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                    a[i * n + j] = v;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    fn to_dense<T: Entry>(&self) -> Option<Dense<T>> {
        let mut a = Vec::with_capacity(self.data.len());
        for x in &self.data {
            a.push(T::from_big(x)?);
        }
        Some(Dense { rows: self.rows, cols: self.cols, a })
    }

    fn from_dense<T: Entry>(d: &Dense<T>) -> Self {
        IntMatrix { rows: d.rows, cols: d.cols, data: d.a.iter().map(|x| x.to_big()).collect() }
    }
}

/// Result of a Smith reduction: `u · m · v = s`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// Diagonal entries `s_0 | s_1 | … | s_{rank-1}`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }
}

struct SnfBig {
    s: IntMatrix,
    rank: usize,
    u: Option<IntMatrix>,
    u_inv: Option<IntMatrix>,
    v: Option<IntMatrix>,
    rhs: IntMatrix,
}

fn convert<T: Entry>(o: SnfOut<T>) -> SnfBig {
    SnfBig {
        s: IntMatrix::from_dense(&o.s),
        rank: o.rank,
        u: o.u.as_ref().map(IntMatrix::from_dense),
        u_inv: o.u_inv.as_ref().map(IntMatrix::from_dense),
        v: o.v.as_ref().map(IntMatrix::from_dense),
        rhs: IntMatrix::from_dense(&o.rhs),
    }
}

fn run_snf(m: &IntMatrix, rhs: &IntMatrix, track: Track) -> SnfBig {
    if let (Some(d), Some(r)) = (m.to_dense::<i64>(), rhs.to_dense::<i64>()) {
        if let Some(out) = snf(d, r, track) {
            return convert(out);
        }
    }
    let d = m.to_dense::<BigInt>().expect("bigint conversion is total");
    let r = rhs.to_dense::<BigInt>().expect("bigint conversion is total");
    convert(snf(d, r, track).expect("bigint elimination cannot overflow"))
}

/// Smith normal form `u · m · v = s` with unimodular `u`, `v`.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let out = run_snf(
        m,
        &IntMatrix::zeros(m.rows, 0),
        Track { u: true, v: true, ..Default::default() },
    );
    Smith { s: out.s, u: out.u.unwrap(), v: out.v.unwrap(), rank: out.rank }
}

/// Basis (as columns) of the integer kernel `{x : m x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let out = run_snf(m, &IntMatrix::zeros(m.rows, 0), Track { v: true, ..Default::default() });
    out.v.unwrap().col_range(out.rank, m.cols)
}

/// Some `x` with `m x = y` over ℤ.
pub fn solve_integer(m: &IntMatrix, y: &[BigInt]) -> Option<Vec<BigInt>> {
    let rhs = IntMatrix::from_cols(m.rows, &[y.to_vec()]);
    let out = run_snf(m, &rhs, Track { v: true, ..Default::default() });
    let z = out.rhs.col(0);
    let mut w = vec![BigInt::zero(); m.cols];
    for (i, zi) in z.iter().enumerate() {
        if i < out.rank {
            let s = out.s.get(i, i);
            if !zi.is_multiple_of(s) {
                return None;
            }
            w[i] = zi / s;
        } else if !zi.is_zero() {
            return None;
        }
    }
    Some(out.v.unwrap().mul_vec(&w))
}

/// Finitely generated abelian group `ℤ/d_1 ⊕ … ⊕ ℤ/d_k ⊕ ℤ^r` with
/// `d_1 | d_2 | … | d_k`, every `d_i ≥ 2`. Element coordinates list the
/// torsion part first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl FinAbGroup {
    pub fn free(rank: usize) -> Self {
        FinAbGroup { torsion: vec![], free_rank: rank }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// Builds the group from arbitrary cyclic factors (0 meaning ℤ),
    /// normalising to invariant-factor form.
    pub fn from_factors(factors: &[BigInt]) -> Self {
        let d: Vec<BigInt> = factors.to_vec();
        let m = IntMatrix::diagonal(&d);
        let out = run_snf(&m, &IntMatrix::zeros(d.len(), 0), Track::default());
        let mut torsion = vec![];
        for i in 0..out.rank {
            let s = out.s.get(i, i);
            if !s.is_one() {
                torsion.push(s.clone());
            }
        }
        FinAbGroup { torsion, free_rank: d.len() - out.rank }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_factors(&[BigInt::from(n)])
    }

    pub fn ngens(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Exponent of the torsion subgroup (1 when torsion free).
    pub fn exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// Modulus of coordinate `i` (0 for a free coordinate).
    pub fn modulus(&self, i: usize) -> BigInt {
        self.torsion.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.ngens()]
    }

    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ngens());
        x.iter()
            .enumerate()
            .map(|(i, v)| match self.torsion.get(i) {
                Some(d) => v.mod_floor(d),
                None => v.clone(),
            })
            .collect()
    }

    pub fn is_zero_elem(&self, x: &[BigInt]) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }

    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&s)
    }

    pub fn sub(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, k: &BigInt, x: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().map(|a| a * k).collect();
        self.reduce(&s)
    }

    /// Order of an element, `None` if it has infinite order.
    pub fn elem_order(&self, x: &[BigInt]) -> Option<BigInt> {
        let x = self.reduce(x);
        let mut ord = BigInt::one();
        for (i, v) in x.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            match self.torsion.get(i) {
                Some(d) => {
                    let o = d / d.gcd(v);
                    ord = ord.lcm(&o);
                }
                None => return None,
            }
        }
        Some(ord)
    }

    /// Relation matrix: one column `d_i e_i` per torsion coordinate.
    pub fn relations(&self) -> IntMatrix {
        let n = self.ngens();
        let cols: Vec<Vec<BigInt>> = self
            .torsion
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut c = vec![BigInt::zero(); n];
                c[i] = d.clone();
                c
            })
            .collect();
        IntMatrix::from_cols(n, &cols)
    }

    /// Number of cyclic factors of 2-power order, used for `(ℤ/2)^e` style
    /// reporting.
    pub fn two_rank(&self) -> usize {
        self.torsion.iter().filter(|d| d.is_even()).count()
    }

    /// Human-readable form, e.g. `Z/4 + Z/2` or `0`.
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.torsion.iter().rev().map(|d| format!("Z/{d}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Invariant factors as small integers (for finite groups of modest size).
    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|d| d.to_u64().expect("invariant factor fits u64")).collect()
    }

    pub fn is_isomorphic(&self, o: &FinAbGroup) -> bool {
        self == o
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Homomorphism given by its matrix on the chosen generators:
/// column `j` is the image of source generator `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    pub source: FinAbGroup,
    pub target: FinAbGroup,
    pub matrix: IntMatrix,
}

impl AbHom {
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: IntMatrix) -> Self {
        assert_eq!(matrix.rows(), target.ngens());
        assert_eq!(matrix.cols(), source.ngens());
        AbHom { source, target, matrix }
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce(&self.matrix.mul_vec(x))
    }

    /// Relations of the source land in the relations of the target.
    pub fn is_well_defined(&self) -> bool {
        self.source
            .torsion
            .iter()
            .enumerate()
            .all(|(i, d)| self.target.is_zero_elem(&self.matrix.col(i).iter().map(|x| x * d).collect::<Vec<_>>()))
    }

    fn with_relations(&self) -> IntMatrix {
        self.matrix.hstack(&self.target.relations())
    }

    pub fn compose(&self, first: &AbHom) -> AbHom {
        assert_eq!(first.target, self.source);
        AbHom::new(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix))
    }
}

/// A subgroup `span(gens)` of `ℤ^a` divided by `span(rels) ⊆ span(gens)`,
/// with its invariant-factor form and coordinate maps.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub group: FinAbGroup,
    /// `a × ngens(group)`: lifts of the group generators to `ℤ^a`.
    pub lifts: IntMatrix,
    ambient: usize,
    basis_u: IntMatrix,
    basis_s: Vec<BigInt>,
    basis_rank: usize,
    quot_u: IntMatrix,
    kept: Vec<usize>,
}

impl Subquotient {
    pub fn new(gens: &IntMatrix, rels: &IntMatrix) -> Self {
        let a = gens.rows();
        assert_eq!(rels.rows(), a);
        let g = run_snf(gens, &IntMatrix::zeros(a, 0), Track { u: true, v: true, ..Default::default() });
        let k = g.rank;
        let basis_s: Vec<BigInt> = (0..k).map(|i| g.s.get(i, i).clone()).collect();
        let basis_u = g.u.unwrap();
        let basis = gens.mul(&g.v.unwrap().col_range(0, k));
        let mut sq = Subquotient {
            group: FinAbGroup::trivial(),
            lifts: IntMatrix::zeros(a, 0),
            ambient: a,
            basis_u,
            basis_s,
            basis_rank: k,
            quot_u: IntMatrix::identity(k),
            kept: vec![],
        };
        let ycols: Vec<Vec<BigInt>> = (0..rels.cols())
            .map(|j| sq.basis_coords(&rels.col(j)).expect("relations must lie in the generated subgroup"))
            .collect();
        let y = IntMatrix::from_cols(k, &ycols);
        let q = run_snf(&y, &IntMatrix::zeros(k, 0), Track { u: true, u_inv: true, ..Default::default() });
        let mut torsion = vec![];
        let mut kept = vec![];
        for i in 0..q.rank {
            let s = q.s.get(i, i);
            if !s.is_one() {
                torsion.push(s.clone());
                kept.push(i);
            }
        }
        kept.extend(q.rank..k);
        let u_inv = q.u_inv.unwrap();
        sq.lifts = basis.mul(&u_inv.select_cols(&kept));
        sq.group = FinAbGroup { torsion, free_rank: k - q.rank };
        sq.quot_u = q.u.unwrap();
        sq.kept = kept;
        sq
    }

    /// Coordinates of `x` on the echelon basis of `span(gens)`.
    fn basis_coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(x.len(), self.ambient);
        let z = self.basis_u.mul_vec(x);
        let mut out = Vec::with_capacity(self.basis_rank);
        for (i, zi) in z.iter().enumerate() {
            if i < self.basis_rank {
                if !zi.is_multiple_of(&self.basis_s[i]) {
                    return None;
                }
                out.push(zi / &self.basis_s[i]);
            } else if !zi.is_zero() {
                return None;
            }
        }
        Some(out)
    }

    /// Class of `x ∈ span(gens)` in the quotient, `None` if `x` lies outside.
    pub fn coords(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let z = self.basis_coords(x)?;
        let w = self.quot_u.mul_vec(&z);
        let v: Vec<BigInt> = self.kept.iter().map(|&i| w[i].clone()).collect();
        Some(self.group.reduce(&v))
    }

    pub fn lift(&self, c: &[BigInt]) -> Vec<BigInt> {
        self.lifts.mul_vec(c)
    }
}

/// Cokernel of `h` with the projection from `h.target`.
pub fn cokernel(h: &AbHom) -> (FinAbGroup, AbHom) {
    let a = h.with_relations();
    let b = h.target.ngens();
    let out = run_snf(&a, &IntMatrix::zeros(b, 0), Track { u: true, ..Default::default() });
    let mut torsion = vec![];
    let mut kept = vec![];
    for i in 0..out.rank {
        let s = out.s.get(i, i);
        if !s.is_one() {
            torsion.push(s.clone());
            kept.push(i);
        }
    }
    kept.extend(out.rank..b);
    let g = FinAbGroup { torsion, free_rank: b - out.rank };
    let proj = out.u.unwrap().select_rows(&kept);
    (g.clone(), AbHom::new(h.target.clone(), g, proj))
}

/// Cokernel together with a set-theoretic section: lifts of the cokernel
/// generators back into `h.target`.
pub fn cokernel_with_section(h: &AbHom) -> (FinAbGroup, AbHom, IntMatrix) {
    let a = h.with_relations();
    let b = h.target.ngens();
    let out = run_snf(&a, &IntMatrix::zeros(b, 0), Track { u: true, u_inv: true, ..Default::default() });
    let mut torsion = vec![];
    let mut kept = vec![];
    for i in 0..out.rank {
        let s = out.s.get(i, i);
        if !s.is_one() {
            torsion.push(s.clone());
            kept.push(i);
        }
    }
    kept.extend(out.rank..b);
    let g = FinAbGroup { torsion, free_rank: b - out.rank };
    let proj = out.u.unwrap().select_rows(&kept);
    let section = out.u_inv.unwrap().select_cols(&kept);
    (g.clone(), AbHom::new(h.target.clone(), g, proj), section)
}

/// Kernel of `h` with its inclusion into `h.source`.
pub fn kernel(h: &AbHom) -> (FinAbGroup, AbHom) {
    let sq = kernel_subquotient(h);
    let incl = AbHom::new(sq.group.clone(), h.source.clone(), sq.lifts.clone());
    (sq.group.clone(), incl)
}

/// Kernel of `h` as a subquotient of `ℤ^{ngens(source)}`, so that source
/// elements can be converted to kernel coordinates.
pub fn kernel_subquotient(h: &AbHom) -> Subquotient {
    let a = h.source.ngens();
    let full = h.with_relations();
    let ker = integer_kernel(&full);
    let proj = ker.row_range(0, a);
    let rel = h.source.relations();
    Subquotient::new(&proj.hstack(&rel), &rel)
}

/// Some `x` with `h(x) = y`, or `None` when `y` is not in the image.
pub fn solve(h: &AbHom, y: &[BigInt]) -> Option<Vec<BigInt>> {
    let full = h.with_relations();
    let x = solve_integer(&full, y)?;
    Some(h.source.reduce(&x[..h.source.ngens()]))
}

/// Rank of an integer matrix.
pub fn rank(m: &IntMatrix) -> usize {
    run_snf(m, &IntMatrix::zeros(m.rows(), 0), Track::default()).rank
}

/// Converts a slice of small integers.
pub fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Converts back to `i64`, panicking on overflow.
pub fn small_vec(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("value fits i64")).collect()
}

/// Whether `|det| = 1`.
pub fn is_unimodular(m: &IntMatrix) -> bool {
    m.rows() == m.cols() && m.determinant().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn snf_small() {
        let a = m(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diagonal(), big_vec(&[2, 4]));
        assert_eq!(s.u.mul(&a).mul(&s.v), s.s);
        assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
    }

    #[test]
    fn snf_identity_and_zero() {
        let i = IntMatrix::identity(3);
        let s = smith_normal_form(&i);
        assert_eq!(s.s, i);
        assert_eq!(s.u, i);
        assert_eq!(s.v, i);
        let z = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&z);
        assert_eq!(s.s, z);
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(3));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = BigInt::from(1u64 << 61);
        let a = IntMatrix::from_rows(&[vec![big.clone(), big.clone() + 1], vec![big.clone() * 3, big.clone() * 5]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.s);
        assert_eq!(s.diagonal().iter().product::<BigInt>(), a.determinant().abs());
    }

    #[test]
    fn cokernel_examples() {
        let z1 = FinAbGroup::free(1);
        let h = AbHom::new(z1.clone(), z1.clone(), m(&[&[4]]));
        assert_eq!(cokernel(&h).0, FinAbGroup::cyclic(4));
        let z2 = FinAbGroup::free(2);
        let h = AbHom::new(z2.clone(), z2.clone(), m(&[&[2, 0], &[0, 3]]));
        assert_eq!(cokernel(&h).0, FinAbGroup::cyclic(6));
    }

    #[test]
    fn kernel_examples() {
        let z2 = FinAbGroup::free(2);
        let h = AbHom::new(z2.clone(), FinAbGroup::free(1), IntMatrix::zeros(1, 2));
        assert_eq!(kernel(&h).0, z2);
        // multiplication by 2 from Z/4 to Z/4 has kernel Z/2
        let z4 = FinAbGroup::cyclic(4);
        let h = AbHom::new(z4.clone(), z4.clone(), m(&[&[2]]));
        assert_eq!(kernel(&h).0, FinAbGroup::cyclic(2));
    }

    #[test]
    fn solve_examples() {
        let z2 = FinAbGroup::free(2);
        let h = AbHom::new(z2.clone(), z2.clone(), m(&[&[2, 0], &[0, 1]]));
        assert_eq!(solve(&h, &big_vec(&[0, 0])), Some(big_vec(&[0, 0])));
        assert_eq!(solve(&h, &big_vec(&[1, 0])), None);
        assert_eq!(solve(&h, &big_vec(&[4, 7])), Some(big_vec(&[2, 7])));
    }

    #[test]
    fn from_factors_normalises() {
        let g = FinAbGroup::from_factors(&big_vec(&[4, 6, 0, 1]));
        assert_eq!(g.torsion, big_vec(&[2, 12]));
        assert_eq!(g.free_rank, 1);
    }

    #[test]
    fn subquotient_roundtrip() {
        // span{(2,0),(0,3)} / span{(4,0)} = Z/2 + Z
        let gens = m(&[&[2, 0], &[0, 3]]);
        let rels = m(&[&[4], &[0]]);
        let sq = Subquotient::new(&gens, &rels);
        assert_eq!(sq.group.torsion, big_vec(&[2]));
        assert_eq!(sq.group.free_rank, 1);
        for j in 0..sq.group.ngens() {
            let mut e = sq.group.zero();
            e[j] = BigInt::one();
            assert_eq!(sq.coords(&sq.lift(&e)).unwrap(), e);
        }
        assert!(sq.coords(&big_vec(&[1, 0])).is_none());
    }
}
