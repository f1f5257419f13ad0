use super::{SignedPerm, WeylD5, WeylError};
use std::collections::HashSet;
use std::sync::OnceLock;

const WORDS: usize = 30;
type Bits = [u64; WORDS];

fn set(b: &mut Bits, i: usize) {
    b[i >> 6] |= 1 << (i & 63);
}

fn has(b: &Bits, i: usize) -> bool {
    b[i >> 6] >> (i & 63) & 1 == 1
}

/// A subgroup of W(D₅) as a sorted list of element indices together with
/// a generating set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elems: Vec<usize>,
    gens: Vec<usize>,
}

/// Closure of a set of element indices, returned as membership bits and
/// the element list in discovery order.
fn closure(w: &WeylD5, gens: &[usize]) -> (Bits, Vec<usize>) {
    let mut bits = [0u64; WORDS];
    set(&mut bits, 0);
    let mut list = vec![0usize];
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for &g in gens {
            let y = w.mul(x, g);
            if !has(&bits, y) {
                set(&mut bits, y);
                list.push(y);
            }
        }
        i += 1;
    }
    (bits, list)
}

/// Greedy generating set: scan elements in increasing index order and keep
/// those not already generated.
fn greedy_gens(w: &WeylD5, sorted: &[usize]) -> Vec<usize> {
    let mut gens: Vec<usize> = vec![];
    let (mut bits, _) = closure(w, &gens);
    for &x in sorted {
        if !has(&bits, x) {
            gens.push(x);
            bits = closure(w, &gens).0;
        }
    }
    gens
}

impl Subgroup {
    /// The subgroup generated by the given signed permutations.
    pub fn generated_by(gens: &[SignedPerm]) -> Result<Self, WeylError> {
        let w = WeylD5::get();
        let idx: Vec<usize> = gens
            .iter()
            .map(|g| w.index_of(g).ok_or_else(|| WeylError::OddSigns(format!("{g}"))))
            .collect::<Result<_, _>>()?;
        Ok(Self::from_indices(&idx))
    }

    /// The subgroup generated by element indices.
    pub fn from_indices(gens: &[usize]) -> Self {
        let w = WeylD5::get();
        let (_, mut elems) = closure(w, gens);
        elems.sort_unstable();
        let mut g: Vec<usize> = gens.iter().copied().filter(|&x| x != 0).collect();
        g.dedup();
        Subgroup { elems, gens: g }
    }

    pub fn trivial() -> Self {
        Subgroup { elems: vec![0], gens: vec![] }
    }

    pub fn full() -> Self {
        let w = WeylD5::get();
        Subgroup { elems: (0..w.order()).collect(), gens: w.group().gens().to_vec() }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    /// Sorted element indices.
    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    /// Generating element indices (may be empty for the trivial group).
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn perms(&self) -> Vec<SignedPerm> {
        let w = WeylD5::get();
        self.elems.iter().map(|&i| w.elem(i)).collect()
    }

    pub fn generator_perms(&self) -> Vec<SignedPerm> {
        let w = WeylD5::get();
        self.gens.iter().map(|&i| w.elem(i)).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elems.binary_search(&i).is_ok()
    }

    pub fn contains_perm(&self, s: &SignedPerm) -> bool {
        WeylD5::get().index_of(s).is_some_and(|i| self.contains(i))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elems.iter().all(|&x| other.contains(x))
    }

    /// `c·H·c⁻¹` for any signed permutation `c` (odd ones normalize W(D₅)
    /// as well).
    pub fn conjugate(&self, c: &SignedPerm) -> Subgroup {
        let w = WeylD5::get();
        let ci = c.inverse();
        let conj = |i: usize| w.index_of(&c.compose(&w.elem(i)).compose(&ci)).expect("normal in B5");
        let mut elems: Vec<usize> = self.elems.iter().map(|&i| conj(i)).collect();
        elems.sort_unstable();
        Subgroup { elems, gens: self.gens.iter().map(|&i| conj(i)).collect() }
    }

    /// A subgroup given by a smaller generating set found greedily.
    pub fn with_greedy_generators(mut self) -> Self {
        self.gens = greedy_gens(WeylD5::get(), &self.elems);
        self
    }

    /// Element-order histogram, a conjugacy invariant.
    pub fn order_histogram(&self) -> Vec<usize> {
        let mut h = vec![0usize; 21];
        for s in self.perms() {
            h[s.order()] += 1;
        }
        h
    }

    fn bits(&self) -> Bits {
        let mut b = [0u64; WORDS];
        for &x in &self.elems {
            set(&mut b, x);
        }
        b
    }
}

/// One conjugacy class of subgroups, represented by the conjugate with the
/// lexicographically smallest sorted element list.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub id: usize,
    pub group: Subgroup,
    /// Number of conjugates.
    pub class_size: usize,
    pub maximal: bool,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.group.order()
    }
}

/// Conjugates of `elems` under W(D₅): membership bits of each, plus the
/// minimal sorted element list.
fn conjugates(w: &WeylD5, elems: &[usize]) -> (Vec<Bits>, Vec<usize>) {
    let n = w.order();
    let mut seen: HashSet<Bits> = HashSet::new();
    let mut out = vec![];
    let mut best: Option<Vec<usize>> = None;
    let g = w.group();
    for c in 0..n {
        let ci = g.inv(c);
        let mut b = [0u64; WORDS];
        for &x in elems {
            set(&mut b, w.mul(w.mul(c, x), ci));
        }
        if seen.insert(b) {
            let list: Vec<usize> = (0..n).filter(|&i| has(&b, i)).collect();
            if best.as_ref().is_none_or(|cur| list < *cur) {
                best = Some(list);
            }
            out.push(b);
        }
    }
    (out, best.unwrap())
}

/// Representatives `g` of the double cosets `H g H` outside `H`.
fn double_coset_reps(w: &WeylD5, h: &[usize], hbits: &Bits) -> Vec<usize> {
    let mut visited = *hbits;
    let mut reps = vec![];
    for g in 0..w.order() {
        if has(&visited, g) {
            continue;
        }
        reps.push(g);
        for &a in h {
            let ag = w.mul(a, g);
            for &b in h {
                set(&mut visited, w.mul(ag, b));
            }
        }
    }
    reps
}

fn enumerate_classes() -> Vec<SubgroupClass> {
    let w = WeylD5::get();
    let mut all: HashSet<Bits> = HashSet::new();
    // (canonical sorted elements, class size)
    let mut found: Vec<(Vec<usize>, usize)> = vec![];
    let (conj, rep) = conjugates(w, &[0]);
    all.extend(conj.iter().copied());
    found.push((rep, 1));
    let mut next = 0;
    while next < found.len() {
        let h = found[next].0.clone();
        next += 1;
        let hgens = greedy_gens(w, &h);
        let mut hbits = [0u64; WORDS];
        for &x in &h {
            set(&mut hbits, x);
        }
        for g in double_coset_reps(w, &h, &hbits) {
            let mut gens = hgens.clone();
            gens.push(g);
            let (kb, klist) = closure(w, &gens);
            if all.contains(&kb) {
                continue;
            }
            let (conj, rep) = conjugates(w, &klist);
            let size = conj.len();
            all.extend(conj);
            found.push((rep, size));
        }
    }
    found.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    let n = w.order();
    found
        .into_iter()
        .enumerate()
        .map(|(id, (elems, size))| {
            let group = Subgroup { gens: greedy_gens(w, &elems), elems };
            let maximal = group.order() < n && is_maximal(w, &group);
            SubgroupClass { id, group, class_size: size, maximal }
        })
        .collect()
}

fn is_maximal(w: &WeylD5, h: &Subgroup) -> bool {
    let hb = h.bits();
    double_coset_reps(w, &h.elems, &hb).into_iter().all(|g| {
        let mut gens = h.gens.clone();
        gens.push(g);
        closure(w, &gens).1.len() == w.order()
    })
}

/// All conjugacy classes of subgroups of W(D₅), ordered by (order, minimal
/// sorted element list). Computed once and cached.
pub fn subgroup_conjugacy_classes() -> &'static [SubgroupClass] {
    static C: OnceLock<Vec<SubgroupClass>> = OnceLock::new();
    C.get_or_init(enumerate_classes)
}

/// Some `c ∈ W(D₅)` with `c·a·c⁻¹ = b`, by exhaustive search.
pub fn find_conjugator(a: &Subgroup, b: &Subgroup) -> Option<SignedPerm> {
    if a.order() != b.order() {
        return None;
    }
    let w = WeylD5::get();
    let bb = b.bits();
    (0..w.order()).find_map(|c| {
        let ci = w.group().inv(c);
        a.elems.iter().all(|&x| has(&bb, w.mul(w.mul(c, x), ci))).then(|| w.elem(c))
    })
}

/// The class id of a subgroup.
pub fn class_of(h: &Subgroup) -> usize {
    subgroup_conjugacy_classes()
        .iter()
        .find(|c| c.order() == h.order() && find_conjugator(h, &c.group).is_some())
        .expect("every subgroup lies in some class")
        .id
}
