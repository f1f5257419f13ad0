use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::hash::Hash;

use super::CohomError;

/// A finite group given by its multiplication table. Element 0 is the
/// identity. A breadth-first spanning tree over the generators records one
/// word per element.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "GroupTable", into = "GroupTable")]
pub struct FiniteGroup {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    gens: Vec<usize>,
    /// `tree[a] = (parent, k)` with `a = parent · gens[k]`; the identity maps to itself.
    tree: Vec<(usize, usize)>,
}

impl FiniteGroup {
    /// Builds a group from a multiplication table (row-major, `n × n`) and a
    /// generating set. The table is checked for identity, inverses and
    /// closure; associativity is checked on all generator triples.
    pub fn from_table(n: usize, mul: Vec<u32>, gens: Vec<usize>) -> Result<Self, CohomError> {
        if mul.len() != n * n || n == 0 {
            return Err(CohomError::BadGroup("table has wrong size".into()));
        }
        if mul.iter().any(|&x| x as usize >= n) {
            return Err(CohomError::BadGroup("table not closed".into()));
        }
        for a in 0..n {
            if mul[a] as usize != a || mul[a * n] as usize != a {
                return Err(CohomError::BadGroup("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
            if inv[a] == u32::MAX {
                return Err(CohomError::BadGroup(format!("element {a} has no inverse")));
            }
        }
        let at = |a: usize, b: usize| mul[a * n + b] as usize;
        for &x in &gens {
            for &y in &gens {
                for &z in &gens {
                    if at(at(x, y), z) != at(x, at(y, z)) {
                        return Err(CohomError::BadGroup("table not associative".into()));
                    }
                }
            }
        }
        let tree = spanning_tree(n, &mul, &gens)
            .ok_or_else(|| CohomError::BadGroup("generators do not generate".into()))?;
        Ok(FiniteGroup { n, mul, inv, gens, tree })
    }

    /// Closure of `gens` under `op`, with `id` first. Returns the group and
    /// the enumerated elements.
    pub fn generate<T: Clone + Eq + Hash>(id: T, gens: &[T], op: impl Fn(&T, &T) -> T) -> (Self, Vec<T>) {
        let mut elems = vec![id.clone()];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(id, 0);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let x = op(&elems[i], g);
                if !index.contains_key(&x) {
                    index.insert(x.clone(), elems.len());
                    elems.push(x);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = index[&op(&elems[a], &elems[b])] as u32;
            }
        }
        let gen_idx: Vec<usize> = gens.iter().map(|g| index[g]).collect();
        let g = FiniteGroup::from_table(n, mul, gen_idx).expect("closure of a generating set is a group");
        (g, elems)
    }

    /// Cyclic group of order `n` generated by element 1.
    pub fn cyclic(n: usize) -> Self {
        let (g, _) = Self::generate(0usize, &[1 % n], |a, b| (a + b) % n);
        g
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `(parent, k)` with `a = parent · gens[k]`, `None` for the identity.
    pub fn tree_edge(&self, a: usize) -> Option<(usize, usize)> {
        (a != 0).then(|| self.tree[a])
    }

    /// Elements in breadth-first order from the identity.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut depth = vec![usize::MAX; self.n];
        depth[0] = 0;
        let mut order = vec![0];
        let mut i = 0;
        while i < order.len() {
            let a = order[i];
            for &s in &self.gens {
                let b = self.mul(a, s);
                if depth[b] == usize::MAX {
                    depth[b] = depth[a] + 1;
                    order.push(b);
                }
            }
            i += 1;
        }
        order
    }

    pub fn elem_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Closure of a set of elements (as sorted element list).
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            for &g in gens {
                let x = self.mul(out[i], g);
                if !seen[x] {
                    seen[x] = true;
                    out.push(x);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let mut mark = vec![false; self.n];
        for &e in elems {
            if e >= self.n {
                return false;
            }
            mark[e] = true;
        }
        if !mark[0] {
            return false;
        }
        elems.iter().all(|&a| elems.iter().all(|&b| mark[self.mul(a, b)]))
    }

    /// The subgroup on `elems` (which must contain the identity and be
    /// closed) as a group of its own, generated by `gens` (parent indices).
    /// Returns the group and the map from its indices to parent indices.
    pub fn subgroup(&self, elems: &[usize], gens: &[usize]) -> Result<(FiniteGroup, Vec<usize>), CohomError> {
        if !self.is_subgroup(elems) {
            return Err(CohomError::NotSubgroup);
        }
        let mut list: Vec<usize> = vec![0];
        list.extend(elems.iter().copied().filter(|&e| e != 0));
        let mut pos = vec![usize::MAX; self.n];
        for (i, &e) in list.iter().enumerate() {
            pos[e] = i;
        }
        let k = list.len();
        let mut mul = vec![0u32; k * k];
        for (i, &a) in list.iter().enumerate() {
            for (j, &b) in list.iter().enumerate() {
                mul[i * k + j] = pos[self.mul(a, b)] as u32;
            }
        }
        let mut g: Vec<usize> = gens.iter().map(|&x| pos[x]).collect();
        if g.iter().any(|&x| x == usize::MAX) {
            return Err(CohomError::NotSubgroup);
        }
        if g.is_empty() {
            g.push(0);
        }
        Ok((FiniteGroup::from_table(k, mul, g)?, list))
    }

    /// Direct product `self × other`; element `(a, b)` has index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let (a1, a2) = (a / n2, a % n2);
                let (b1, b2) = (b / n2, b % n2);
                mul[a * n + b] = (self.mul(a1, b1) * n2 + other.mul(a2, b2)) as u32;
            }
        }
        let mut gens: Vec<usize> = self.gens.iter().map(|&g| g * n2).collect();
        gens.extend(other.gens.iter().copied());
        FiniteGroup::from_table(n, mul, gens).expect("product of groups")
    }

    /// Left cosets representatives of a subgroup given as a membership mask.
    pub fn coset_reps(&self, sub: &[usize]) -> Vec<usize> {
        let mut covered = vec![false; self.n];
        let mut reps = vec![];
        for g in 0..self.n {
            if covered[g] {
                continue;
            }
            reps.push(g);
            for &h in sub {
                covered[self.mul(g, h)] = true;
            }
        }
        reps
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.n).any(|a| self.elem_order(a) == self.n)
    }

    /// Exhaustive associativity check (cubic; for tests on small groups).
    pub fn is_associative(&self) -> bool {
        (0..self.n).all(|a| {
            (0..self.n).all(|b| (0..self.n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))))
        })
    }
}

/// Exchange form of a group: rows of the multiplication table and the
/// generator indices.
#[derive(Serialize, Deserialize)]
struct GroupTable {
    table: Vec<Vec<u32>>,
    gens: Vec<usize>,
}

impl From<FiniteGroup> for GroupTable {
    fn from(g: FiniteGroup) -> Self {
        GroupTable { table: g.mul.chunks(g.n).map(|r| r.to_vec()).collect(), gens: g.gens }
    }
}

impl TryFrom<GroupTable> for FiniteGroup {
    type Error = CohomError;

    fn try_from(t: GroupTable) -> Result<Self, CohomError> {
        let n = t.table.len();
        if t.table.iter().any(|r| r.len() != n) {
            return Err(CohomError::BadGroup("table is not square".into()));
        }
        let g = FiniteGroup::from_table(n, t.table.concat(), t.gens)?;
        if !g.is_associative() {
            return Err(CohomError::BadGroup("table not associative".into()));
        }
        Ok(g)
    }
}

fn spanning_tree(n: usize, mul: &[u32], gens: &[usize]) -> Option<Vec<(usize, usize)>> {
    let mut tree = vec![(usize::MAX, 0); n];
    tree[0] = (0, 0);
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let a = queue[i];
        for (k, &s) in gens.iter().enumerate() {
            let b = mul[a * n + s] as usize;
            if tree[b].0 == usize::MAX {
                tree[b] = (a, k);
                queue.push(b);
            }
        }
        i += 1;
    }
    (queue.len() == n).then_some(tree)
}
