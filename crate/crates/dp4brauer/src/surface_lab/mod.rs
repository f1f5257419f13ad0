//! Intersections of two quadrics in `P⁴` with the hyperplane `X₀ = 0`
//! removed: point search, the degenerate members of the pencil, and local
//! evaluation of Brauer classes at rational points.

pub mod eval;
pub mod fixtures;

use crate::exactlinalg::{integer_kernel, smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use eval::{audit, evaluate_all_places, evaluate_at, support_places, EvalReport, FunctionSpec, PointEval, Recipe};

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("malformed surface: {0}")]
    Malformed(String),
    #[error("point does not lie on the surface")]
    NotOnSurface,
    #[error("the evaluated function vanishes at the point")]
    ZeroValue,
    #[error("pencil has a repeated degenerate member")]
    SingularPencil,
    #[error(transparent)]
    Symbol(#[from] crate::residue_symbols::SymbolError),
}

/// Monomials `XᵢXⱼ`, `i ≤ j`, in the order `X₀², X₀X₁, …, X₄²`.
pub const MONOMIALS: [(usize, usize); 15] = {
    let mut out = [(0, 0); 15];
    let mut k = 0;
    let mut i = 0;
    while i < 5 {
        let mut j = i;
        while j < 5 {
            out[k] = (i, j);
            k += 1;
            j += 1;
        }
        i += 1;
    }
    out
};

/// A quadratic form in `X₀..X₄` by its 15 coefficients.
pub type QuadForm = [i64; 15];

pub fn eval_form(q: &QuadForm, x: &[i64; 5]) -> i128 {
    MONOMIALS.iter().zip(q).map(|(&(i, j), &c)| c as i128 * x[i] as i128 * x[j] as i128).sum()
}

/// Doubled Gram matrix: `2c` on the diagonal, `c` off it.
pub fn gram(q: &QuadForm) -> IntMatrix {
    let mut m = IntMatrix::zeros(5, 5);
    for (&(i, j), &c) in MONOMIALS.iter().zip(q) {
        if i == j {
            m.set(i, i, BigInt::from(2 * c));
        } else {
            m.set(i, j, BigInt::from(c));
            m.set(j, i, BigInt::from(c));
        }
    }
    m
}

/// Surface input document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilSurface {
    pub q1: QuadForm,
    pub q2: QuadForm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
}

impl PencilSurface {
    pub fn new(q1: QuadForm, q2: QuadForm) -> Self {
        PencilSurface { q1, q2, fixture: None }
    }

    pub fn from_json(text: &str) -> Result<Self, SurfaceError> {
        serde_json::from_str(text).map_err(|e| SurfaceError::Malformed(e.to_string()))
    }

    pub fn contains(&self, x: &[i64; 5]) -> bool {
        eval_form(&self.q1, x) == 0 && eval_form(&self.q2, x) == 0
    }

    /// Whether some form has a nonzero `X₄²` coefficient.
    pub fn quadratic_in_x4(&self) -> bool {
        self.q1[14] != 0 || self.q2[14] != 0
    }
}

/// A primitive integer point up to sign, normalised so that the first
/// nonzero coordinate is positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RatPoint(pub [i64; 5]);

impl RatPoint {
    pub fn new(x: [i64; 5]) -> Option<Self> {
        let g = x.iter().fold(0i64, |g, &c| g.gcd(&c));
        if g == 0 {
            return None;
        }
        let mut y = x.map(|c| c / g);
        if y.iter().find(|&&c| c != 0).copied().unwrap_or(0) < 0 {
            y = y.map(|c| -c);
        }
        Some(RatPoint(y))
    }

    /// `ℤ`-integral on the complement of `X₀ = 0`.
    pub fn is_integral(&self) -> bool {
        self.0[0].abs() == 1
    }

    /// `ℤ_p`-integral on the complement of `X₀ = 0`.
    pub fn is_p_integral(&self, p: u64) -> bool {
        self.0[0] != 0 && (self.0[0].unsigned_abs() % p) != 0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap()
    }
}

impl std::fmt::Display for RatPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", s.join(":"))
    }
}

fn isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Integer roots of `a x² + b x + c` in `[−h, h]`; `None` when the
/// polynomial vanishes identically.
fn int_roots(a: i128, b: i128, c: i128, h: i128) -> Option<([i128; 2], usize)> {
    let mut out = ([0i128; 2], 0usize);
    let mut push = |x: i128| {
        if x.abs() <= h && !out.0[..out.1].contains(&x) {
            out.0[out.1] = x;
            out.1 += 1;
        }
    };
    if a == 0 {
        if b == 0 {
            return if c == 0 { None } else { Some(out) };
        }
        if c % b == 0 {
            push(-c / b);
        }
        return Some(out);
    }
    if let Some(s) = isqrt(b * b - 4 * a * c) {
        for num in [-b + s, -b - s] {
            if num % (2 * a) == 0 {
                push(num / (2 * a));
            }
        }
    }
    Some(out)
}

/// `q = a X₄² + (b₀ + b₁X₃) X₄ + (c₀ + c₁X₃ + c₂X₃²)` at fixed `X₀, X₁, X₂`.
struct X4Slice {
    a: i128,
    b: [i128; 2],
    c: [i128; 3],
}

impl X4Slice {
    fn new(q: &QuadForm, x: &[i64; 3]) -> Self {
        let mut b = [0i128; 2];
        let mut c = [0i128; 3];
        for (&(i, j), &k) in MONOMIALS.iter().zip(q) {
            let k = k as i128;
            match (i, j) {
                (4, 4) => {}
                (3, 4) => b[1] += k,
                (i, 4) => b[0] += k * x[i] as i128,
                (3, 3) => c[2] += k,
                (i, 3) => c[1] += k * x[i] as i128,
                (i, j) => c[0] += k * x[i] as i128 * x[j] as i128,
            }
        }
        X4Slice { a: q[14] as i128, b, c }
    }

    fn roots(&self, x3: i128, h: i128) -> Option<([i128; 2], usize)> {
        int_roots(self.a, self.b[0] + self.b[1] * x3, self.c[0] + (self.c[1] + self.c[2] * x3) * x3, h)
    }
}

/// All primitive points with `max |Xᵢ| ≤ h`. Enumerates `X₀..X₃` with
/// `X₀ ≥ 0` and solves each form for integral `X₄` (a linear or quadratic
/// equation), so the cost is `O(h⁴)`.
pub fn find_points(s: &PencilSurface, h: i64) -> Vec<RatPoint> {
    let hh = h as i128;
    let mut out: Vec<RatPoint> = (0..=h)
        .into_par_iter()
        .flat_map_iter(|x0| {
            let mut local = vec![];
            for x1 in -h..=h {
                for x2 in -h..=h {
                    let s1 = X4Slice::new(&s.q1, &[x0, x1, x2]);
                    let s2 = X4Slice::new(&s.q2, &[x0, x1, x2]);
                    for x3 in -h..=h {
                        let mut cands = vec![];
                        match (s1.roots(x3 as i128, hh), s2.roots(x3 as i128, hh)) {
                            (Some((r1, n1)), Some((r2, n2))) => {
                                cands.extend(r1[..n1].iter().filter(|r| r2[..n2].contains(r)));
                            }
                            (Some((r, n)), None) | (None, Some((r, n))) => cands.extend(&r[..n]),
                            (None, None) => cands.extend(-hh..=hh),
                        }
                        for x4 in cands {
                            let p = [x0, x1, x2, x3, x4 as i64];
                            if let Some(rp) = RatPoint::new(p) {
                                if rp.0 == p {
                                    local.push(rp);
                                }
                            }
                        }
                    }
                }
            }
            local
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// A degenerate member `r·q₁ + s·q₂` of the pencil with rational `(r : s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateMember {
    pub root: (BigInt, BigInt),
    pub rank: usize,
    /// Generator of the kernel of the Gram matrix when the rank is 4.
    pub cusp: Option<[i64; 5]>,
}

#[derive(Clone, Debug)]
pub struct PencilQuintic {
    /// `cₖ` of `λᵏ μ^{5−k}` in `det(λ·G₁ + μ·G₂)`, Gram matrices doubled.
    pub coeffs: Vec<BigInt>,
    pub distinct_roots: usize,
    pub rational: Vec<DegenerateMember>,
}

impl PencilQuintic {
    pub fn nonsingular(&self) -> bool {
        self.distinct_roots == 5
    }
}

type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let f = r.last().unwrap() / b.last().unwrap();
        for (i, c) in b.iter().enumerate() {
            r[k + i] = &r[k + i] - &f * c;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut ds = vec![BigInt::one()];
    for p in crate::arith::prime_divisors(&n) {
        let mut k = 0u32;
        let mut m = n.clone();
        while m.is_multiple_of(&p) {
            m /= &p;
            k += 1;
        }
        let mut next = vec![];
        for d in &ds {
            let mut pp = BigInt::one();
            for _ in 0..=k {
                next.push(d * &pp);
                pp *= &p;
            }
        }
        ds = next;
    }
    ds
}

fn member(s: &PencilSurface, r: &BigInt, t: &BigInt) -> IntMatrix {
    let (g1, g2) = (gram(&s.q1), gram(&s.q2));
    IntMatrix::from_fn(5, 5, |i, j| r * g1.get(i, j) + t * g2.get(i, j))
}

fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).diagonal().iter().filter(|d| !d.is_zero()).count()
}

/// The binary quintic `det(λq₁ + μq₂)`, its number of distinct roots over an
/// algebraic closure, and its rational roots with rank and cusp.
pub fn pencil_quintic(s: &PencilSurface) -> PencilQuintic {
    // interpolate P(t) = det(t·G₁ + G₂) from t = 0..5
    let vals: Vec<BigRational> =
        (0..6).map(|t| BigRational::from_integer(member(s, &BigInt::from(t), &BigInt::one()).determinant())).collect();
    let mut coeffs = vec![BigRational::zero(); 6];
    for i in 0..6i64 {
        // Lagrange basis polynomial for node i
        let mut basis: Poly = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..6i64 {
            if j == i {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - c * BigRational::from_integer(j.into());
            }
            basis = next;
            denom *= BigRational::from_integer((i - j).into());
        }
        for (k, c) in basis.iter().enumerate() {
            coeffs[k] = &coeffs[k] + c * &vals[i as usize] / &denom;
        }
    }
    let coeffs: Vec<BigInt> = coeffs.iter().map(|c| c.to_integer()).collect();
    let p: Poly = trim(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect());
    let mut roots: Vec<(BigInt, BigInt)> = vec![];
    let distinct_roots = if p.is_empty() {
        0
    } else {
        let dp: Poly = trim(p.iter().enumerate().skip(1).map(|(k, c)| c * BigRational::from_integer(k.into())).collect());
        let g = poly_gcd(&p, &dp);
        let finite = p.len() - 1 - (g.len() - 1);
        // a root at (1 : 0) of any multiplicity counts once
        finite + usize::from(p.len() < 6)
    };
    if coeffs[5].is_zero() {
        roots.push((BigInt::one(), BigInt::zero()));
    }
    if !p.is_empty() {
        let low = p.iter().position(|c| !c.is_zero()).unwrap();
        if low > 0 {
            roots.push((BigInt::zero(), BigInt::one()));
        }
        let lead = p.last().unwrap().to_integer();
        let cst = p[low].to_integer();
        let mut seen = std::collections::BTreeSet::new();
        for r in divisors(&cst) {
            for d in divisors(&lead) {
                for sign in [1, -1] {
                    let t = BigRational::new(&r * sign, d.clone());
                    let val = p.iter().rev().fold(BigRational::zero(), |acc, c| acc * &t + c);
                    if val.is_zero() && seen.insert(t.clone()) {
                        roots.push((t.numer().clone(), t.denom().clone()));
                    }
                }
            }
        }
    }
    let rational = roots
        .into_iter()
        .map(|(r, t)| {
            let m = member(s, &r, &t);
            let rk = rank(&m);
            let cusp = (rk == 4).then(|| {
                let k = integer_kernel(&m);
                let v: Vec<i64> = (0..5).map(|i| k.get(i, 0).to_i64().expect("small kernel")).collect();
                RatPoint::new([v[0], v[1], v[2], v[3], v[4]]).expect("nonzero kernel").0
            });
            DegenerateMember { root: (r, t), rank: rk, cusp }
        })
        .collect();
    PencilQuintic { coeffs, distinct_roots, rational }
}

#[cfg(test)]
mod tests;
