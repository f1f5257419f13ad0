//! End-to-end checks of the whole pipeline, one per acceptance criterion.
//! Shared by `dp4br selfcheck` and the `acceptance` test binary.

use crate::arith::{int, rat, QmodZ};
use crate::cohomology::{h1_cochain, h1_presented};
use crate::line_geometry::{
    apply_q, divisor_coboundary, lift_cocycle_to_divisors, line_action_from_signed, pic_from_lines, q_of_coboundary,
    quadrilaterals, QuadShape,
};
use crate::local_invariant::fixtures::{quadratic_odd, quadratic_two_adic, synthetic_tame};
use crate::local_invariant::{
    extend_unramified_4, invariant, invariant_tame, invariant_wild, invariant_wild_auto, twist_by_coboundary, LocalCocycle,
    LocalError, RING_LOG2_LIMIT,
};
use crate::residue_symbols::{
    artin_cyclotomic, bad_places, hilbert_qp, sign_to_invariant, CyclotomicQuotient, PlaceQ,
};
use crate::surface_lab::fixtures::{self, Fixture};
use crate::surface_lab::{audit, evaluate_at, find_points, EvalReport, RatPoint, SurfaceError};
use crate::weyl_d5::{classify_4torsion, h1_full, h1_two_torsion, pic_module, subgroup_conjugacy_classes, FourTorsionType, WeylD5};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "subgroup census"),
    (2, "2-torsion histogram"),
    (3, "annihilation by 4"),
    (4, "4-torsion occurrence"),
    (5, "pipeline equivalence"),
    (6, "quadrilateral census"),
    (7, "cocycle lift"),
    (8, "local invariant engine"),
    (9, "symbol laws"),
    (10, "fixture evaluations"),
];

/// Search height for the fixture evaluations.
pub const FIXTURE_HEIGHT: i64 = 60;


#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "criterion {:>2} {:<24} {}  ({:.1}s) {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn run(id: u8) -> CriterionReport {
    let name = CRITERIA.iter().find(|c| c.0 == id).map(|c| c.1).unwrap_or("unknown");
    let t = Instant::now();
    let out = match id {
        1 => census(),
        2 => two_torsion_histogram(),
        3 => annihilation(),
        4 => four_torsion(),
        5 => pipeline_equivalence(),
        6 => quadrilateral_census(),
        7 => cocycle_lift(),
        8 => local_engine(),
        9 => symbol_laws(),
        10 => fixture_evaluations(),
        _ => Err(format!("no criterion {id}")),
    };
    let elapsed = t.elapsed();
    let (passed, detail) = match out {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionReport { id, name, passed, detail, elapsed }
}

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA.iter().map(|c| run(c.0)).collect()
}

fn census() -> Outcome {
    let t = Instant::now();
    ensure(WeylD5::get().order() == 1920, || "W(D5) does not have order 1920".into())?;
    let classes = subgroup_conjugacy_classes();
    ensure(classes.len() == 197, || format!("{} classes", classes.len()))?;
    let mut idx: Vec<usize> = classes.iter().filter(|c| c.maximal).map(|c| 1920 / c.order()).collect();
    idx.sort();
    ensure(idx == [2, 5, 6, 10, 16], || format!("maximal indices {idx:?}"))?;
    let total: usize = classes.iter().map(|c| c.class_size).sum();
    ensure(t.elapsed() < Duration::from_secs(600), || "over 10 minutes".into())?;
    Ok(format!("197 classes, {total} subgroups, maximal indices {idx:?}"))
}

fn two_torsion_histogram() -> Outcome {
    let mut hist = BTreeMap::new();
    for c in subgroup_conjugacy_classes() {
        let t = h1_two_torsion(&c.group);
        let full = h1_full(&c.group);
        ensure(t.group.two_rank() == full.group.two_rank(), || format!("class {}: orbit formula disagrees with H¹", c.id))?;
        *hist.entry(t.group.two_rank()).or_insert(0usize) += 1;
    }
    let got: Vec<usize> = (0..=4).map(|e| hist.get(&e).copied().unwrap_or(0)).collect();
    ensure(hist.len() == 5 && got == [59, 71, 47, 17, 3], || format!("histogram {hist:?}"))?;
    Ok(format!("e = 0..4: {got:?}"))
}

fn annihilation() -> Outcome {
    let mut shapes = BTreeSet::new();
    for c in subgroup_conjugacy_classes() {
        let g = h1_full(&c.group).group;
        let t = g.torsion_u64();
        ensure(g.free_rank == 0 && t.iter().all(|d| 4 % d == 0), || format!("class {}: H¹ = {g}", c.id))?;
        let fours = t.iter().filter(|&&d| d == 4).count();
        let twos = t.iter().filter(|&&d| d == 2).count();
        let ok = (fours == 0 && twos <= 4) || (fours == 1 && twos <= 2);
        ensure(ok, || format!("class {}: H¹ = {g} outside the allowed list", c.id))?;
        shapes.insert(g.to_string());
    }
    Ok(format!("{} shapes: {}", shapes.len(), shapes.into_iter().collect::<Vec<_>>().join(", ")))
}

fn four_torsion() -> Outcome {
    let classes = subgroup_conjugacy_classes();
    let rows: Vec<(usize, usize, FourTorsionType, Vec<u64>)> = classes
        .par_iter()
        .filter_map(|c| {
            let h = h1_full(&c.group);
            let t = classify_4torsion(&c.group);
            (h.has_z4() || t != FourTorsionType::None).then(|| (c.id, c.order(), t, h.group.torsion_u64()))
        })
        .collect();
    for (id, _, t, tors) in &rows {
        ensure(tors.contains(&4) == (*t != FourTorsionType::None), || format!("class {id}: ℤ/4 vs type {t}"))?;
    }
    let type_i: Vec<usize> = rows.iter().filter(|r| matches!(r.2, FourTorsionType::TypeI | FourTorsionType::Overlap)).map(|r| r.1).collect();
    let mut type_ii: Vec<usize> =
        rows.iter().filter(|r| matches!(r.2, FourTorsionType::TypeII | FourTorsionType::Overlap)).map(|r| r.1).collect();
    type_ii.sort();
    let overlap: Vec<usize> = rows.iter().filter(|r| r.2 == FourTorsionType::Overlap).map(|r| r.1).collect();
    ensure(type_i.len() == 6, || format!("{} type-I classes", type_i.len()))?;
    ensure(type_ii == [4, 8, 8, 16, 16, 32, 32, 64], || format!("type-II orders {type_ii:?}"))?;
    ensure(overlap == [4], || format!("overlap orders {overlap:?}"))?;
    let mut z4z2 = vec![];
    for (id, order, t, tors) in &rows {
        if matches!(t, FourTorsionType::TypeII | FourTorsionType::Overlap) {
            let e = tors.iter().filter(|&&d| d == 2).count();
            ensure(e <= 1, || format!("class {id}: type II with e = {e}"))?;
            if e == 1 {
                z4z2.push(*order);
            }
        }
    }
    z4z2.sort();
    ensure(z4z2 == [8, 16], || format!("type-II ℤ4⊕ℤ2 orders {z4z2:?}"))?;
    Ok(format!("type I: {}, type II orders {type_ii:?}, overlap order 4, ℤ4⊕ℤ2 type II orders {z4z2:?}", type_i.len()))
}

fn pipeline_equivalence() -> Outcome {
    let t = Instant::now();
    let classes = subgroup_conjugacy_classes();
    let bad: Vec<String> = classes
        .par_iter()
        .filter_map(|c| {
            let want = h1_full(&c.group).group;
            let act = line_action_from_signed(&c.group);
            let lines = pic_from_lines(&act).map_err(|e| e.to_string()).and_then(|p| h1_presented(&p.module).map_err(|e| e.to_string()));
            match lines {
                Ok(h) if h.group == want => {}
                Ok(h) => return Some(format!("class {}: lines {} vs lattice {want}", c.id, h.group)),
                Err(e) => return Some(format!("class {}: {e}", c.id)),
            }
            if c.order() <= 32 {
                match h1_cochain(&pic_module(&c.group)) {
                    Ok(h) if h.group == want => {}
                    Ok(h) => return Some(format!("class {}: cochains {} vs lattice {want}", c.id, h.group)),
                    Err(e) => return Some(format!("class {}: {e}", c.id)),
                }
            }
            None
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    ensure(t.elapsed() < Duration::from_secs(1800), || "over 30 minutes".into())?;
    let small = classes.iter().filter(|c| c.order() <= 32).count();
    Ok(format!("197 line-module agreements, {small} cochain agreements"))
}

fn quadrilateral_census() -> Outcome {
    let q = quadrilaterals();
    ensure(q.len() == 40, || format!("{} quadrilaterals", q.len()))?;
    let elc = (0..q.len()).filter(|&k| q.shape(k) == QuadShape::ElEc).count();
    ensure(elc == 10, || format!("{elc} of shape (E,L,E,C)"))?;
    let act = line_action_from_signed(&crate::weyl_d5::Subgroup::trivial());
    let pic = pic_from_lines(&act).map_err(|e| e.to_string())?;
    let base = &pic.module.base;
    ensure(base.torsion.is_empty() && base.free_rank == 5, || format!("cokernel {base}"))?;
    Ok("40 = 10 + 30, cokernel ℤ⁵".into())
}

fn cocycle_lift() -> Outcome {
    let classes = subgroup_conjugacy_classes();
    let results: Vec<Result<(usize, usize), String>> = classes
        .par_iter()
        .filter(|c| !h1_full(&c.group).group.is_trivial())
        .map(|c| {
            let err = |e: String| format!("class {}: {e}", c.id);
            let act = line_action_from_signed(&c.group);
            let pic = pic_from_lines(&act).map_err(|e| err(e.to_string()))?;
            let h = h1_presented(&pic.module).map_err(|e| err(e.to_string()))?;
            let qp = act.quad_perms().map_err(|e| err(e.to_string()))?;
            let n = act.group.order();
            let mut gens = 0;
            for phi in h.generators() {
                gens += 1;
                let psi = lift_cocycle_to_divisors(&act, &pic, &phi).map_err(|e| err(e.to_string()))?;
                let d = divisor_coboundary(&act, &pic, &phi);
                for (p, x) in psi.values.iter().enumerate() {
                    if apply_q(x) != d[p] {
                        return Err(err(format!("q∘ψ ≠ δφ̃ at pair {p}")));
                    }
                }
                for a in 0..n {
                    for b in 0..n {
                        for cc in 0..n {
                            if q_of_coboundary(&act, &qp, &psi, a, b, cc).iter().any(|&v| v != 0) {
                                return Err(err(format!("δψ({a},{b},{cc}) has nonzero divisor")));
                            }
                        }
                    }
                }
            }
            Ok((gens, n * n * n))
        })
        .collect();
    let mut classes_done = 0;
    let mut gens = 0;
    let mut triples = 0;
    for r in results {
        let (g, t) = r?;
        classes_done += 1;
        gens += g;
        triples += g * t;
    }
    Ok(format!("{classes_done} classes, {gens} generators, {triples} triples"))
}

fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> BigRational {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if n != 0 {
            return rat(n, rng.gen_range(1..=bound));
        }
    }
}

/// Tame fixtures `(q_k, e, f, twist)` with 2-power group order.
pub fn synthetic_parameters() -> Vec<(u64, u64, u32, u64)> {
    vec![
        (3, 1, 4, 0),
        (3, 2, 4, 5),
        (3, 4, 4, 1),
        (3, 8, 4, 11),
        (5, 1, 4, 2),
        (5, 2, 4, 0),
        (5, 4, 4, 7),
        (7, 2, 4, 3),
        (7, 4, 4, 9),
        (9, 8, 4, 4),
        (11, 4, 4, 6),
        (13, 4, 4, 10),
        (3, 1, 8, 0),
        (3, 2, 8, 13),
        (3, 4, 8, 2),
        (5, 1, 8, 3),
        (5, 2, 8, 1),
        (5, 4, 8, 8),
        (7, 1, 8, 5),
        (7, 2, 8, 4),
    ]
}

fn local_engine() -> Outcome {
    // standard cocycles
    let params = synthetic_parameters();
    let st_ok: Vec<Result<(), String>> = params
        .par_iter()
        .map(|&(qk, e, f, tw)| {
            let d = synthetic_tame(qk, e, f, tw).map_err(|x| x.to_string())?;
            let inv = invariant_tame(&d, &d.standard_cocycle()).map_err(|x| format!("({qk},{e},{f}): {x}"))?;
            ensure(inv == QmodZ::new(1, f as i64), || format!("({qk},{e},{f},{tw}): inv st = {inv}"))?;
            let z = invariant_tame(&d, &LocalCocycle::trivial(d.group.order())).map_err(|x| x.to_string())?;
            ensure(z.is_zero(), || format!("({qk},{e},{f},{tw}): trivial cocycle has invariant {z}"))
        })
        .collect();
    st_ok.into_iter().collect::<Result<Vec<_>, _>>()?;

    // unramified modification for f ∈ {1, 2}, against the invariant of a
    // power of the standard class, after a coboundary twist
    let mut modified = 0;
    for (qk, e, f, tw) in [(3u64, 1u64, 1u32, 0u64), (5, 2, 1, 1), (5, 4, 1, 3), (3, 2, 2, 0), (5, 4, 2, 3), (7, 2, 2, 1), (9, 8, 2, 5)] {
        let d = synthetic_tame(qk, e, f, tw).map_err(|x| x.to_string())?;
        let n = d.group.order();
        let st = d.standard_cocycle();
        let b: Vec<(i64, u64)> =
            (0..n).map(|k| if k == 0 { (0, 0) } else { ((k % 3) as i64, (5 * k as u64 + 1) % (d.q - 1)) }).collect();
        for (k, c) in [(1, st.clone()), (1, twist_by_coboundary(&d, &st, &b).map_err(|x| x.to_string())?)] {
            let (dx, cx) = extend_unramified_4(&d, &c).map_err(|x| x.to_string())?;
            ensure(dx.f == 4, || "extension did not reach f = 4".into())?;
            let inv = invariant_tame(&dx, &cx).map_err(|x| x.to_string())?;
            ensure(inv == QmodZ::new(k, f as i64), || format!("({qk},{e},{f}): modified invariant {inv}"))?;
            modified += 1;
        }
        if f == 2 {
            // the same tower presented directly with f = 4
            let d4 = synthetic_tame(qk, e, 4, tw).map_err(|x| x.to_string())?;
            let s4 = d4.standard_cocycle();
            let direct = invariant_tame(&d4, &s4.mul_tame(&s4, d4.q - 1)).map_err(|x| x.to_string())?;
            ensure(direct == QmodZ::half(), || format!("({qk},{e}): direct f = 4 tower gives {direct}"))?;
        }
    }

    // odd-p quadratic cyclic algebras against Hilbert symbols
    let mut rng = ChaCha8Rng::seed_from_u64(8001);
    let primes = [3u64, 5, 7, 11, 13];
    let triples: Vec<(BigRational, BigRational, u64)> = (0..100)
        .map(|_| {
            let a = random_rational(&mut rng, 60);
            let b = random_rational(&mut rng, 60);
            (a, b, primes[rng.gen_range(0..primes.len())])
        })
        .collect();
    let odd: Vec<Result<(), String>> = triples
        .par_iter()
        .map(|(a, b, p)| {
            let inv = match quadratic_odd(a, b, *p).map_err(|x| x.to_string())? {
                None => QmodZ::zero(),
                Some((d, c)) => invariant(&d, &c).map_err(|x| format!("({a},{b})_{p}: {x}"))?,
            };
            let want = sign_to_invariant(hilbert_qp(a, b, PlaceQ::Prime(*p)));
            ensure(inv == want, || format!("({a},{b})_{p}: engine {inv}, symbol {want}"))
        })
        .collect();
    odd.into_iter().collect::<Result<Vec<_>, _>>()?;

    // two-adic triples on the wild path, starting at precision 1
    let mut pairs = vec![];
    while pairs.len() < 20 {
        let a = random_rational(&mut rng, 40);
        let b = random_rational(&mut rng, 40);
        if quadratic_two_adic(&a, &b).map_err(|x| x.to_string())?.is_some() {
            pairs.push((a, b));
        }
    }
    pairs[0] = (int(-1), int(-1));
    let wild: Vec<Result<bool, String>> = pairs
        .par_iter()
        .map(|(a, b)| {
            let (d, c) = quadratic_two_adic(a, b).map_err(|x| x.to_string())?.expect("non-square");
            let guarded = matches!(invariant_wild(&d, &c, 1, RING_LOG2_LIMIT), Err(LocalError::IncreasePrecision { .. }));
            let (inv, _) = invariant_wild_auto(&d, &c, 1, 8, RING_LOG2_LIMIT).map_err(|x| format!("({a},{b})_2: {x}"))?;
            let want = sign_to_invariant(hilbert_qp(a, b, PlaceQ::Prime(2)));
            ensure(inv == want, || format!("({a},{b})_2: engine {inv}, symbol {want}"))?;
            Ok(guarded)
        })
        .collect();
    let guards = wild.into_iter().collect::<Result<Vec<bool>, _>>()?.into_iter().filter(|&g| g).count();
    ensure(guards > 0, || "precision guard never triggered".into())?;
    Ok(format!(
        "{} standard fixtures, {modified} modified cocycles, 100 odd-p and 20 two-adic symbols; guard raised {guards} times",
        params.len()
    ))
}

fn symbol_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9001);
    for _ in 0..500 {
        let a = random_rational(&mut rng, 1000);
        let b = random_rational(&mut rng, 1000);
        let prod: i32 = bad_places(&[&a, &b]).into_iter().map(|v| hilbert_qp(&a, &b, v) as i32).product();
        ensure(prod == 1, || format!("product formula fails for ({a}, {b})"))?;
    }
    for quot in [CyclotomicQuotient::full(5), CyclotomicQuotient::full(17)] {
        for _ in 0..100 {
            let a = random_rational(&mut rng, 1000);
            let prod = bad_places(&[&a, &int(quot.m as i64)])
                .into_iter()
                .fold(quot.identity(), |acc, v| quot.mul(acc, artin_cyclotomic(&a, v, &quot)));
            ensure(prod == quot.identity(), || format!("reciprocity fails for {a} at conductor {}", quot.m))?;
        }
    }
    Ok("500 Hilbert products, 200 Artin products".into())
}

fn sample(fx: &Fixture) -> Vec<RatPoint> {
    let mut pts = find_points(&fx.surface, FIXTURE_HEIGHT);
    pts.extend(fx.listed_points.iter().copied());
    pts.sort();
    pts.dedup();
    pts
}

fn all_values(rep: &EvalReport, v: PlaceQ) -> BTreeSet<QmodZ> {
    rep.local_values(v)
}

fn quarters() -> BTreeSet<QmodZ> {
    (0..4).map(|i| QmodZ::new(i, 4)).collect()
}

/// Audits every recipe of a fixture and returns the reports by name.
pub fn fixture_reports(fx: &Fixture) -> Result<Vec<(&'static str, EvalReport)>, SurfaceError> {
    let pts = sample(fx);
    fx.recipes.iter().map(|(n, r)| Ok((*n, audit(r, &pts, &fx.places)?))).collect()
}

fn fixture_evaluations() -> Outcome {
    let mut notes = vec![];
    for fx in fixtures::all() {
        let t = Instant::now();
        let reps = fixture_reports(&fx).map_err(|e| format!("{}: {e}", fx.id))?;
        for (name, rep) in &reps {
            ensure(rep.reciprocity_failures.is_empty(), || {
                format!("{} {name}: reciprocity fails at {}", fx.id, rep.reciprocity_failures[0])
            })?;
            ensure(rep.points.iter().any(|p| p.point.is_integral()), || format!("{}: no integral point", fx.id))?;
        }
        let rep = &reps[0].1;
        let p = PlaceQ::Prime;
        let fail = |m: &str| format!("{}: {m}", fx.id);
        match fx.id {
            "typei-zeta5" => {
                ensure(all_values(rep, p(2)).len() == 1, || fail("not constant at 2"))?;
                ensure(all_values(rep, p(5)) == quarters(), || fail("not all four values at 5"))?;
                let int5 = &rep.integral_values[&p(5)];
                ensure(!int5.contains(&QmodZ::new(1, 4)) && !int5.contains(&QmodZ::new(3, 4)), || {
                    fail("integral point with value 1/4 or 3/4 at 5")
                })?;
            }
            "typeii-zeta17" => {
                let other = &reps[1].1;
                let mut places: BTreeSet<PlaceQ> = fx.places.iter().copied().collect();
                for pe in &rep.points {
                    places.extend(pe.values.keys().copied());
                }
                let (a, b) = (fx.recipe("alpha").unwrap(), fx.recipe("alpha-second-octic").unwrap());
                for pe in &rep.points {
                    let support = crate::surface_lab::support_places(a, &pe.point).map_err(|e| e.to_string())?;
                    for v in support.into_iter().chain(places.iter().copied()) {
                        match (evaluate_at(a, &pe.point, v), evaluate_at(b, &pe.point, v)) {
                            (Ok(x), Ok(y)) if x == y => {}
                            (Err(SurfaceError::ZeroValue), _) | (_, Err(SurfaceError::ZeroValue)) => {}
                            r => return Err(fail(&format!("octic evaluations differ at {} {v}: {r:?}", pe.point))),
                        }
                    }
                }
                ensure(other.reciprocity_failures.is_empty(), || fail("second octic reciprocity"))?;
                ensure(all_values(rep, p(2)).len() == 1, || fail("not constant at 2"))?;
                ensure(all_values(rep, PlaceQ::Real).len() == 1, || fail("not constant at ∞"))?;
                ensure(all_values(rep, p(17)) == quarters(), || fail("not all four values at 17"))?;
            }
            "typeii-sqrt5" => {
                for pe in &rep.points {
                    let x = pe.point.0;
                    // sign of ((3 − √5)X₁ + 4X₂)/X₀
                    let conj = crate::residue_symbols::QuadElem::new(rat(3 * x[1] + 4 * x[2], x[0]), rat(-x[1], x[0]));
                    let neg = conj.sign() < 0;
                    ensure((pe.values[&PlaceQ::Real] == QmodZ::half()) == neg, || fail(&format!("sign rule fails at {}", pe.point)))?;
                }
                ensure(all_values(rep, p(2)).len() == 2, || fail("ev at 2 takes one value"))?;
                ensure(all_values(rep, PlaceQ::Real).len() == 2, || fail("ev at ∞ takes one value"))?;
                let pairs = rep.integral_pairs(p(2), PlaceQ::Real);
                ensure(pairs.contains(&(QmodZ::zero(), QmodZ::zero())) && pairs.contains(&(QmodZ::half(), QmodZ::half())), || {
                    fail(&format!("integral (2, ∞) pairs {pairs:?}"))
                })?;
            }
            "block64" => {
                for q in [3, 7] {
                    ensure(rep.integral_values[&p(q)].len() == 1, || fail(&format!("not constant at {q} on integral points")))?;
                }
            }
            _ => {}
        }
        ensure(t.elapsed() < Duration::from_secs(1200), || fail("over 20 minutes"))?;
        notes.push(format!("{} {} pts", fx.id, rep.points.len()));
    }
    Ok(notes.join(", "))
}
