//! The four reference surfaces with their listed integral points, Galois
//! groups on the conic classes and evaluation recipes.

use super::eval::{FunctionSpec, Recipe};
use super::{PencilSurface, QuadForm, RatPoint, MONOMIALS};
use crate::residue_symbols::PlaceQ;
use crate::weyl_d5::{fixtures as groups, SignedPerm};

pub struct Fixture {
    pub id: &'static str,
    pub surface: PencilSurface,
    pub listed_points: Vec<RatPoint>,
    pub recipes: Vec<(&'static str, Recipe)>,
    /// Bad primes of the model and the real place.
    pub places: Vec<PlaceQ>,
    pub group: Vec<SignedPerm>,
    /// Invariant factors of `Br₁ U / Br₀ U`.
    pub brauer: Vec<u64>,
}

impl Fixture {
    pub fn recipe(&self, name: &str) -> Option<&Recipe> {
        self.recipes.iter().find(|(n, _)| *n == name).map(|(_, r)| r)
    }
}

/// Form from `(i, j, c)` triples meaning `c·XᵢXⱼ`.
pub fn form(terms: &[(usize, usize, i64)]) -> QuadForm {
    let mut q = [0; 15];
    for &(i, j, c) in terms {
        let (i, j) = (i.min(j), i.max(j));
        let k = MONOMIALS.iter().position(|&m| m == (i, j)).unwrap();
        q[k] += c;
    }
    q
}

fn pts(xs: &[[i64; 5]]) -> Vec<RatPoint> {
    xs.iter().map(|&x| RatPoint::new(x).unwrap()).collect()
}

fn places(ps: &[u64]) -> Vec<PlaceQ> {
    let mut v: Vec<PlaceQ> = ps.iter().map(|&p| PlaceQ::Prime(p)).collect();
    v.push(PlaceQ::Real);
    v
}

fn surface(id: &str, q1: QuadForm, q2: QuadForm) -> PencilSurface {
    PencilSurface { q1, q2, fixture: Some(id.into()) }
}

/// D₄ acting on `{±e₂, ±e₃}` and in lockstep on `{±e₄, ±e₅}`, fixing `e₁`.
pub fn coupled_d4() -> Vec<SignedPerm> {
    vec![
        SignedPerm::new([1, 3, -2, 5, -4]).unwrap(),
        SignedPerm::new([1, 3, 2, 5, 4]).unwrap(),
    ]
}

/// 2-torsion class of type II split by `ℚ(√(2√5 + 4))`.
pub fn typeii_sqrt5() -> Fixture {
    let id = "typeii-sqrt5";
    Fixture {
        id,
        surface: surface(
            id,
            form(&[(0, 0, 1), (0, 2, 2), (0, 4, -4), (1, 2, -2), (1, 4, 4), (1, 3, -1), (2, 2, -1)]),
            form(&[(0, 4, -2), (1, 4, 1), (2, 3, 1), (4, 4, -2)]),
        ),
        listed_points: pts(&[[1, 1, 0, 1, 0], [1, 1, -2, -3, -2], [1, 331, 49, 900, 252]]),
        recipes: vec![(
            "alpha",
            Recipe::HilbertSqrt5 { t: [[0, 0], [3, 1], [4, 0], [0, 0], [0, 0]], d: [4, 2] },
        )],
        places: places(&[2, 5]),
        group: coupled_d4(),
        brauer: vec![2],
    }
}

/// 4-torsion class of type I with a quadrilateral over `ℚ(ζ₅)`.
pub fn typei_zeta5() -> Fixture {
    let id = "typei-zeta5";
    Fixture {
        id,
        surface: surface(
            id,
            form(&[
                (0, 0, -1),
                (0, 1, 8),
                (0, 2, -4),
                (0, 3, -10),
                (1, 1, 4),
                (1, 2, -6),
                (1, 3, -8),
                (2, 2, 2),
                (2, 3, 3),
                (3, 3, -1),
                (3, 4, -1),
            ]),
            form(&[(0, 0, 7), (0, 1, 9), (0, 3, 6), (1, 1, 7), (2, 4, 1), (3, 3, 3)]),
        ),
        listed_points: pts(&[[1, 0, 2, -1, -2], [1, 1, 2, -1, -10], [1, -20, -32, -9, 88], [1, -80, -62, 11, 718]]),
        recipes: vec![(
            "alpha",
            Recipe::Cyclic {
                f: FunctionSpec::Linear([35, 50, -19, -2, 5]),
                conductor: 5,
                real_subfield: false,
                generator: 2,
                negate: true,
            },
        )],
        places: places(&[2, 5, 31, 251]),
        group: groups::dic3(),
        brauer: vec![4],
    }
}

/// The octic quadrics cutting out the two orbits of eight lines.
pub fn octic_quadrics() -> (QuadForm, QuadForm) {
    (
        form(&[
            (0, 2, 3),
            (0, 3, -2),
            (0, 4, 12),
            (1, 1, -4),
            (1, 2, 3),
            (1, 3, -2),
            (1, 4, 5),
            (2, 2, 1),
            (2, 3, 17),
            (2, 4, -22),
            (3, 3, 15),
            (3, 4, -13),
            (4, 4, -1),
        ]),
        form(&[
            (0, 2, 3),
            (0, 3, -19),
            (0, 4, -5),
            (1, 1, -4),
            (1, 2, 20),
            (1, 3, 15),
            (1, 4, 5),
            (2, 2, 1),
            (2, 3, 17),
            (2, 4, 12),
            (3, 3, 15),
            (3, 4, -13),
            (4, 4, -1),
        ]),
    )
}

/// 4-torsion class of type II with lines over `ℚ(ζ₁₇ + ζ₁₇⁻¹)`.
pub fn typeii_zeta17() -> Fixture {
    let id = "typeii-zeta17";
    let (g1, g2) = octic_quadrics();
    let cyc = |q| Recipe::Cyclic { f: FunctionSpec::Quadric(q), conductor: 17, real_subfield: true, generator: 3, negate: true };
    Fixture {
        id,
        surface: surface(
            id,
            form(&[(0, 0, 1), (0, 3, -1), (1, 1, -1), (1, 2, 1), (1, 3, 1), (2, 3, 1), (3, 3, 1), (3, 4, -1)]),
            form(&[(0, 0, -1), (0, 1, -1), (0, 3, -1), (1, 1, 1), (2, 4, 1)]),
        ),
        listed_points: pts(&[
            [1, -1, 0, 1, -1],
            [1, 1, 0, -1, -1],
            [1, 0, 1, 1, 2],
            [1, 2, 0, 1, -1],
            [1, 0, -2, 1, -1],
            [1, 0, 0, -1, -3],
            [1, 0, 3, -1, 0],
            [1, 42, -221, -47, 8],
            [1, 42, 9, -277, -222],
        ]),
        recipes: vec![("alpha", cyc(g1)), ("alpha-second-octic", cyc(g2))],
        places: places(&[2, 17]),
        group: groups::cyclic8(),
        brauer: vec![4],
    }
}

/// Order-64 block group; `2α` is a 2-torsion class of type I split by `√5`.
pub fn block64() -> Fixture {
    let id = "block64";
    Fixture {
        id,
        surface: surface(
            id,
            form(&[(0, 0, 1), (0, 1, 2), (0, 3, -3), (1, 1, 1), (1, 3, -3), (2, 2, -1), (2, 4, -1), (3, 3, 2), (3, 4, -1)]),
            form(&[(0, 0, -2), (0, 1, -1), (0, 3, 2), (1, 1, -2), (1, 3, 2), (2, 4, 1), (3, 3, -1)]),
        ),
        listed_points: pts(&[
            [1, 1, -1, 2, -1],
            [1, 15, -5, 4, -71],
            [1, 20, 15, -6, 74],
            [1, -9, -2, 1, -86],
            [1, 41, 15, -6, 263],
            [1, 223, -229, 308, -247],
            [1, 299, -213, 312, -419],
            [1, -96, -53, 22, -434],
        ]),
        recipes: vec![("two-alpha", Recipe::Hilbert { t: [0, 0, 1, 1, 0], d: 5 })],
        places: places(&[3, 5, 7, 19]),
        group: groups::block_maximal(),
        brauer: vec![4],
    }
}

pub fn all() -> Vec<Fixture> {
    vec![typeii_sqrt5(), typei_zeta5(), typeii_zeta17(), block64()]
}

pub fn by_id(id: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.id == id)
}
