//! Local evaluation maps `x ↦ inv_v(α(x))` for the implemented class recipes
//! and the audit over a point sample.

use super::{eval_form, QuadForm, RatPoint, SurfaceError};
use crate::arith::QmodZ;
use crate::residue_symbols::{
    artin_cyclotomic, bad_places, cyclic_symbol_invariant, hilbert_qp, hilbert_sqrt5, places_above, sign_to_invariant,
    CyclicQuotient, CyclotomicQuotient, PlaceQ, QuadElem,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A rational function on `U`: a linear form over `X₀` or a quadratic form
/// over `X₀²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionSpec {
    Linear([i64; 5]),
    Quadric(QuadForm),
}

impl FunctionSpec {
    pub fn value(&self, x: &RatPoint) -> BigRational {
        let x0 = BigInt::from(x.0[0]);
        match self {
            FunctionSpec::Linear(t) => {
                let n: i128 = t.iter().zip(&x.0).map(|(&a, &b)| a as i128 * b as i128).sum();
                BigRational::new(n.into(), x0)
            }
            FunctionSpec::Quadric(q) => BigRational::new(eval_form(q, &x.0).into(), &x0 * &x0),
        }
    }
}

/// How a Brauer class is evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Recipe {
    /// `(t(x)/X₀, ℚ_v(√d)/ℚ_v)`.
    Hilbert { t: [i64; 5], d: i64 },
    /// `Σ_{w|v} (t(x)/X₀, k′_w(√d)/k′_w)` over `k′ = ℚ(√5)`; coefficients as
    /// `[a, b]` for `a + b√5`.
    HilbertSqrt5 { t: [[i64; 2]; 5], d: [i64; 2] },
    /// `±(f(x), l_w/ℚ_v)` for `l` the abelian field of `(ℤ/m)*/H`, read off
    /// as `i/n` against the chosen generator.
    Cyclic { f: FunctionSpec, conductor: u64, real_subfield: bool, generator: u64, negate: bool },
}

impl Recipe {
    fn quotient(&self) -> Option<Result<CyclicQuotient, SurfaceError>> {
        match self {
            Recipe::Cyclic { conductor, real_subfield, generator, .. } => {
                let q = if *real_subfield {
                    CyclotomicQuotient::real_subfield(*conductor)
                } else {
                    CyclotomicQuotient::full(*conductor)
                };
                Some(CyclicQuotient::new(q, *generator).map_err(SurfaceError::from))
            }
            _ => None,
        }
    }

    fn sqrt5_value(t: &[[i64; 2]; 5], x: &RatPoint) -> QuadElem {
        let x0 = BigInt::from(x.0[0]);
        let a: i128 = t.iter().zip(&x.0).map(|(c, &b)| c[0] as i128 * b as i128).sum();
        let b: i128 = t.iter().zip(&x.0).map(|(c, &b)| c[1] as i128 * b as i128).sum();
        QuadElem::new(BigRational::new(a.into(), x0.clone()), BigRational::new(b.into(), x0))
    }
}

fn check(x: &RatPoint) -> Result<(), SurfaceError> {
    if x.0[0] == 0 {
        return Err(SurfaceError::Malformed(format!("{x} lies on X₀ = 0")));
    }
    Ok(())
}

/// `ev_{α,v}(x)`.
pub fn evaluate_at(recipe: &Recipe, x: &RatPoint, v: PlaceQ) -> Result<QmodZ, SurfaceError> {
    check(x)?;
    match recipe {
        Recipe::Hilbert { t, d } => {
            let val = FunctionSpec::Linear(*t).value(x);
            if val.is_zero() {
                return Err(SurfaceError::ZeroValue);
            }
            Ok(sign_to_invariant(hilbert_qp(&BigRational::from_integer((*d).into()), &val, v)))
        }
        Recipe::HilbertSqrt5 { t, d } => {
            let val = Recipe::sqrt5_value(t, x);
            if val.is_zero() {
                return Err(SurfaceError::ZeroValue);
            }
            let d = QuadElem::new(BigRational::from_integer(d[0].into()), BigRational::from_integer(d[1].into()));
            let mut s = QmodZ::zero();
            for w in places_above(v) {
                s = s + sign_to_invariant(hilbert_sqrt5(&val, &d, w)?);
            }
            Ok(s)
        }
        Recipe::Cyclic { f, negate, .. } => {
            let cq = recipe.quotient().unwrap()?;
            let val = f.value(x);
            if val.is_zero() {
                return Err(SurfaceError::ZeroValue);
            }
            let inv = cyclic_symbol_invariant(&cq, artin_cyclotomic(&val, v, &cq.quot))?;
            Ok(if *negate { -inv } else { inv })
        }
    }
}

/// Every place where `ev_{α,v}(x)` can be nonzero.
pub fn support_places(recipe: &Recipe, x: &RatPoint) -> Result<Vec<PlaceQ>, SurfaceError> {
    check(x)?;
    Ok(match recipe {
        Recipe::Hilbert { t, d } => bad_places(&[&FunctionSpec::Linear(*t).value(x), &BigRational::from_integer((*d).into())]),
        Recipe::HilbertSqrt5 { t, d } => {
            let n = Recipe::sqrt5_value(t, x).norm();
            let nd = BigRational::from_integer((d[0] * d[0] - 5 * d[1] * d[1]).into());
            bad_places(&[&n, &nd, &BigRational::from_integer(5.into())])
        }
        Recipe::Cyclic { f, conductor, .. } => bad_places(&[&f.value(x), &BigRational::from_integer((*conductor).into())]),
    })
}

/// `(v, ev_{α,v}(x))` over all places of [`support_places`].
pub fn evaluate_all_places(recipe: &Recipe, x: &RatPoint) -> Result<Vec<(PlaceQ, QmodZ)>, SurfaceError> {
    support_places(recipe, x)?.into_iter().map(|v| Ok((v, evaluate_at(recipe, x, v)?))).collect()
}

#[derive(Clone, Debug)]
pub struct PointEval {
    pub point: RatPoint,
    pub values: BTreeMap<PlaceQ, QmodZ>,
    pub reciprocity_sum: QmodZ,
}

#[derive(Clone, Debug, Default)]
pub struct EvalReport {
    pub places: Vec<PlaceQ>,
    pub points: Vec<PointEval>,
    /// Points where the evaluated function vanishes.
    pub skipped: Vec<RatPoint>,
    /// Value counts at each place over the `ℤ_v`-integral sample.
    pub tallies: BTreeMap<PlaceQ, BTreeMap<QmodZ, usize>>,
    /// Values at each place over `ℤ`-integral points.
    pub integral_values: BTreeMap<PlaceQ, BTreeSet<QmodZ>>,
    pub reciprocity_failures: Vec<RatPoint>,
}

impl EvalReport {
    pub fn local_values(&self, v: PlaceQ) -> BTreeSet<QmodZ> {
        self.tallies.get(&v).map(|t| t.keys().copied().collect()).unwrap_or_default()
    }

    /// Places where integral points realise fewer values than the local
    /// sample, which witnesses a failure of strong approximation.
    pub fn violation_places(&self) -> Vec<PlaceQ> {
        self.places
            .iter()
            .copied()
            .filter(|v| {
                let int = self.integral_values.get(v).cloned().unwrap_or_default();
                !int.is_empty() && int.len() < self.local_values(*v).len()
            })
            .collect()
    }

    /// Pairs of values at `(v, w)` realised by integral points.
    pub fn integral_pairs(&self, v: PlaceQ, w: PlaceQ) -> BTreeSet<(QmodZ, QmodZ)> {
        self.points.iter().filter(|p| p.point.is_integral()).map(|p| (p.values[&v], p.values[&w])).collect()
    }
}

fn in_sample(x: &RatPoint, v: PlaceQ) -> bool {
    match v {
        PlaceQ::Real => true,
        PlaceQ::Prime(p) => x.is_p_integral(p),
    }
}

/// Evaluates `recipe` on `points` (those with `X₀ ≠ 0`) at `places`, and checks
/// the sum over all places at each point.
pub fn audit(recipe: &Recipe, points: &[RatPoint], places: &[PlaceQ]) -> Result<EvalReport, SurfaceError> {
    let results: Vec<Result<Option<PointEval>, SurfaceError>> = points
        .par_iter()
        .filter(|x| x.0[0] != 0)
        .map(|x| {
            let all = match evaluate_all_places(recipe, x) {
                Err(SurfaceError::ZeroValue) => return Ok(None),
                r => r?,
            };
            let reciprocity_sum = all.iter().map(|(_, q)| *q).sum();
            let mut values = BTreeMap::new();
            for &v in places {
                values.insert(v, evaluate_at(recipe, x, v)?);
            }
            Ok(Some(PointEval { point: *x, values, reciprocity_sum }))
        })
        .collect();
    let mut rep = EvalReport { places: places.to_vec(), ..Default::default() };
    for (x, r) in points.iter().filter(|x| x.0[0] != 0).zip(results) {
        match r? {
            None => rep.skipped.push(*x),
            Some(pe) => rep.points.push(pe),
        }
    }
    rep.points.sort_by_key(|p| p.point);
    for pe in &rep.points {
        if !pe.reciprocity_sum.is_zero() {
            rep.reciprocity_failures.push(pe.point);
        }
        for (&v, &q) in &pe.values {
            if in_sample(&pe.point, v) {
                *rep.tallies.entry(v).or_default().entry(q).or_default() += 1;
            }
            if pe.point.is_integral() {
                rep.integral_values.entry(v).or_default().insert(q);
            }
        }
    }
    Ok(rep)
}

impl std::fmt::Display for EvalReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "points evaluated: {}  skipped (function vanishes): {}", self.points.len(), self.skipped.len())?;
        for v in &self.places {
            let t = self.tallies.get(v).cloned().unwrap_or_default();
            let s: Vec<String> = t.iter().map(|(q, n)| format!("{q}: {n}")).collect();
            let ints: Vec<String> =
                self.integral_values.get(v).map(|s| s.iter().map(|q| q.to_string()).collect()).unwrap_or_default();
            writeln!(f, "place {v}: local sample {{{}}}  integral points {{{}}}", s.join(", "), ints.join(", "))?;
        }
        writeln!(f, "reciprocity failures: {}", self.reciprocity_failures.len())?;
        let viol: Vec<String> = self.violation_places().iter().map(|v| v.to_string()).collect();
        if viol.is_empty() {
            write!(f, "no strong approximation witness at the listed places")
        } else {
            write!(f, "strong approximation violated: integral points miss local values at {}", viol.join(", "))
        }
    }
}
