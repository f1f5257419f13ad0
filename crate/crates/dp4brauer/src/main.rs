use clap::{Parser, Subcommand};
use dp4brauer::cohomology::{h1_cochain, h1_presented};
use dp4brauer::line_geometry::{
    apply_q, divisor_coboundary, lift_cocycle_to_divisors, line_action_from_signed, pic_from_lines, q_of_coboundary,
    quadrilaterals, DivisorCochain, LineLabel, QuadShape,
};
use dp4brauer::local_invariant::{
    invariant, invariant_wild_auto, LocalCocycle, LocalError, LocalExtensionData, WildExtensionData, RING_LOG2_LIMIT,
};
use dp4brauer::residue_symbols::PlaceQ;
use dp4brauer::selfcheck;
use dp4brauer::surface_lab::fixtures::by_id;
use dp4brauer::surface_lab::{audit, find_points, PencilSurface, Recipe, SurfaceError};
use dp4brauer::weyl_d5::{
    class_of, classify_4torsion, h1_full, h1_two_torsion, parse_group_file, pic_module, s_orbits, subgroup_conjugacy_classes,
    Subgroup,
};
use num_traits::ToPrimitive;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "dp4br", version, about = "Brauer groups of open degree-4 del Pezzo surfaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Conjugacy classes of subgroups of W(D5) with H¹ and torsion type.
    Classify {
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// H¹(G, Pic) of a group by the orbit formula, the lattice formula and
    /// cochains.
    Cohomology {
        #[arg(long)]
        group: PathBuf,
    },
    /// Line permutations, quadrilaterals and the Pic U cross-check.
    Lines {
        #[arg(long)]
        group: PathBuf,
    },
    /// Divisor-valued lift of the K-th H¹ generator, as JSON.
    LiftCocycle {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        class: usize,
    },
    /// Local invariant of a 2-cocycle.
    Localinv {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        /// Read the data as a 2-adic extension for the wild engine.
        #[arg(long)]
        wild: bool,
        /// Starting precision for the wild engine.
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
    /// Local evaluation of a Brauer class on points up to a height bound.
    Evaluate {
        #[arg(long)]
        surface: PathBuf,
        /// A prime, `inf`, a comma separated list, or `all`.
        #[arg(long, default_value = "all")]
        place: String,
        #[arg(long, default_value_t = 20)]
        height: i64,
        /// Recipe name of the surface's fixture, or a JSON recipe file.
        #[arg(long)]
        recipe: String,
        /// Print the value of every point.
        #[arg(long)]
        points: bool,
    },
    /// Runs the acceptance suites.
    Selfcheck {
        /// Comma separated criterion numbers.
        #[arg(long)]
        only: Option<String>,
    },
}

/// Exit status: 1 for a detected violation, 2 for malformed input.
enum Fail {
    Violation(String),
    Malformed(String),
}

type Res = Result<(), Fail>;

fn malformed(e: impl std::fmt::Display) -> Fail {
    Fail::Malformed(e.to_string())
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail::Malformed(format!("{}: {e}", path.display())))
}

fn load_group(path: &Path) -> Result<Subgroup, Fail> {
    parse_group_file(&read(path)?).map_err(|e| Fail::Malformed(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.cmd {
        Cmd::Classify { csv } => classify(csv.as_deref()),
        Cmd::Cohomology { group } => cohomology(&group),
        Cmd::Lines { group } => lines(&group),
        Cmd::LiftCocycle { group, class } => lift(&group, class),
        Cmd::Localinv { data, cocycle, wild, n } => localinv(&data, &cocycle, wild, n),
        Cmd::Evaluate { surface, place, height, recipe, points } => evaluate(&surface, &place, height, &recipe, points),
        Cmd::Selfcheck { only } => run_selfcheck(only.as_deref()),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Violation(m)) => {
            eprintln!("violation: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Malformed(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

#[derive(Serialize)]
struct ClassRow {
    id: usize,
    order: usize,
    conjugates: usize,
    maximal: bool,
    h1: String,
    two_rank: usize,
    four_torsion: String,
    generators: String,
}

fn classify(csv_out: Option<&Path>) -> Res {
    let rows: Vec<ClassRow> = subgroup_conjugacy_classes()
        .iter()
        .map(|c| {
            let h = h1_full(&c.group);
            ClassRow {
                id: c.id,
                order: c.order(),
                conjugates: c.class_size,
                maximal: c.maximal,
                two_rank: h.group.two_rank(),
                h1: h.group.to_string(),
                four_torsion: classify_4torsion(&c.group).to_string(),
                generators: c.group.generator_perms().iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" "),
            }
        })
        .collect();
    println!("{:>4} {:>5} {:>5} {:>3}  {:<22} {:<8} generators", "id", "order", "conj", "max", "H1", "4-tors");
    for r in &rows {
        println!(
            "{:>4} {:>5} {:>5} {:>3}  {:<22} {:<8} {}",
            r.id,
            r.order,
            r.conjugates,
            if r.maximal { "*" } else { "" },
            r.h1,
            r.four_torsion,
            r.generators
        );
    }
    println!("{} classes", rows.len());
    if let Some(p) = csv_out {
        let mut w = csv::Writer::from_path(p).map_err(malformed)?;
        for r in &rows {
            w.serialize(r).map_err(malformed)?;
        }
        w.flush().map_err(malformed)?;
    }
    Ok(())
}

fn cohomology(path: &Path) -> Res {
    let g = load_group(path)?;
    println!("order {}  class {}", g.order(), class_of(&g));
    let orbits: Vec<String> = s_orbits(&g)
        .iter()
        .map(|o| format!("{{{}}} {}", o.indices.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","), if o.split { "split" } else { "non-split" }))
        .collect();
    println!("S-orbits: {}", orbits.join("; "));
    let t = h1_two_torsion(&g);
    let h = h1_full(&g);
    println!("H1 2-torsion (orbit formula): {}", t.group);
    println!("H1 (lattice formula): {}", h.group);
    println!("4-torsion type: {}", classify_4torsion(&g));
    for (k, m) in h.generator_lifts().iter().enumerate() {
        println!("generator {k}: class of {m:?} in (P/4P)^G");
    }
    if t.group.two_rank() != h.group.two_rank() {
        return Err(Fail::Violation("orbit formula and lattice formula disagree".into()));
    }
    if g.order() <= 64 {
        let c = h1_cochain(&pic_module(&g)).map_err(malformed)?;
        println!("H1 (cochains): {}", c.group);
        if c.group != h.group {
            return Err(Fail::Violation("cochain H1 disagrees with the lattice formula".into()));
        }
    }
    Ok(())
}

fn lines(path: &Path) -> Res {
    let g = load_group(path)?;
    let act = line_action_from_signed(&g);
    let labels = LineLabel::all();
    for s in g.generator_perms() {
        let i = g.elements().iter().position(|&x| dp4brauer::weyl_d5::WeylD5::get().elem(x) == s).unwrap();
        let img: Vec<String> = labels.iter().enumerate().map(|(k, l)| format!("{l}->{}", labels[act.perms[i][k] as usize])).collect();
        println!("{s}: {}", img.join(" "));
    }
    let q = quadrilaterals();
    let elec = (0..q.len()).filter(|&k| q.shape(k) == QuadShape::ElEc).count();
    println!("{} quadrilaterals ({} of shape E,L,E,C; {} of shape E,L,L,L)", q.len(), elec, q.len() - elec);
    let qp = act.quad_perms().map_err(|e| Fail::Violation(e.to_string()))?;
    let mut orbits = vec![];
    let mut seen = vec![false; q.len()];
    for k in 0..q.len() {
        if seen[k] {
            continue;
        }
        let mut orb: Vec<usize> = qp.iter().map(|p| p[k]).collect();
        orb.sort_unstable();
        orb.dedup();
        orb.iter().for_each(|&j| seen[j] = true);
        orbits.push(orb);
    }
    println!("{} orbits on quadrilaterals", orbits.len());
    for orb in &orbits {
        let names: Vec<String> = orb.iter().map(|&k| format!("[{}]", q.labels(k).map(|l| l.to_string()).join(","))).collect();
        println!("  {}", names.join(" "));
    }
    let pic = pic_from_lines(&act).map_err(|e| Fail::Violation(e.to_string()))?;
    println!("Pic U = {}", pic.module.base);
    let hl = h1_presented(&pic.module).map_err(malformed)?;
    let hp = h1_full(&g);
    println!("H1 from lines: {}  H1 from lattice: {}", hl.group, hp.group);
    if hl.group != hp.group {
        return Err(Fail::Violation("the two H1 computations disagree".into()));
    }
    Ok(())
}

#[derive(Serialize)]
struct LiftDocument {
    /// Group elements as signed permutations, in cochain index order.
    elements: Vec<String>,
    h1: String,
    class: usize,
    /// `phi[g]`: the 1-cocycle in Pic U coordinates.
    phi: Vec<Vec<i64>>,
    psi: DivisorCochain,
}

fn lift(path: &Path, k: usize) -> Res {
    let g = load_group(path)?;
    let act = line_action_from_signed(&g);
    let pic = pic_from_lines(&act).map_err(|e| Fail::Violation(e.to_string()))?;
    let h = h1_presented(&pic.module).map_err(malformed)?;
    let gens = h.generators();
    let phi = gens
        .get(k)
        .ok_or_else(|| Fail::Malformed(format!("class {k} out of range: H1 = {} has {} generators", h.group, gens.len())))?;
    let psi = lift_cocycle_to_divisors(&act, &pic, phi).map_err(|e| Fail::Violation(e.to_string()))?;
    let d = divisor_coboundary(&act, &pic, phi);
    if psi.values.iter().zip(&d).any(|(x, y)| &apply_q(x) != y) {
        return Err(Fail::Violation("q∘ψ differs from δφ̃".into()));
    }
    let qp = act.quad_perms().map_err(|e| Fail::Violation(e.to_string()))?;
    let n = act.group.order();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if q_of_coboundary(&act, &qp, &psi, a, b, c).iter().any(|&v| v != 0) {
                    return Err(Fail::Violation(format!("δψ({a},{b},{c}) has nonzero divisor")));
                }
            }
        }
    }
    let w = dp4brauer::weyl_d5::WeylD5::get();
    let doc = LiftDocument {
        elements: g.elements().iter().map(|&x| w.elem(x).to_string()).collect(),
        h1: h.group.to_string(),
        class: k,
        phi: phi.values.iter().map(|v| v.iter().map(|x| x.to_i64().expect("small coordinates")).collect()).collect(),
        psi,
    };
    println!("{}", serde_json::to_string(&doc).map_err(malformed)?);
    Ok(())
}

fn local_fail(e: LocalError) -> Fail {
    match e {
        LocalError::NotACocycle(_) | LocalError::NotFourTorsion | LocalError::NoMultiplier | LocalError::IncreasePrecision { .. } => {
            Fail::Violation(e.to_string())
        }
        _ => Fail::Malformed(e.to_string()),
    }
}

fn localinv(data: &Path, cocycle: &Path, wild: bool, n: u32) -> Res {
    let c: LocalCocycle =
        serde_json::from_str(&read(cocycle)?).map_err(|e| Fail::Malformed(format!("{}: {e}", cocycle.display())))?;
    let text = read(data)?;
    let bad = |e: serde_json::Error| Fail::Malformed(format!("{}: {e}", data.display()));
    if wild {
        let d: WildExtensionData = serde_json::from_str(&text).map_err(bad)?;
        let (inv, used) = invariant_wild_auto(&d, &c, n, n + 8, RING_LOG2_LIMIT).map_err(local_fail)?;
        println!("invariant {inv}");
        println!("precision n = {used}");
    } else {
        let d: LocalExtensionData = serde_json::from_str(&text).map_err(bad)?;
        let inv = invariant(&d, &c).map_err(local_fail)?;
        println!("invariant {inv}");
    }
    Ok(())
}

fn evaluate(surface: &Path, place: &str, height: i64, recipe: &str, show: bool) -> Res {
    let s = PencilSurface::from_json(&read(surface)?).map_err(|e| Fail::Malformed(format!("{}: {e}", surface.display())))?;
    let fixture = match &s.fixture {
        Some(id) => Some(by_id(id).ok_or_else(|| Fail::Malformed(format!("unknown fixture id {id:?}")))?),
        None => None,
    };
    let r: Recipe = match fixture.as_ref().and_then(|f| f.recipe(recipe)) {
        Some(r) => r.clone(),
        None => {
            let p = Path::new(recipe);
            if !p.exists() {
                return Err(Fail::Malformed(format!("{recipe:?} is neither a recipe of the fixture nor a file")));
            }
            serde_json::from_str(&read(p)?).map_err(|e| Fail::Malformed(format!("{recipe}: {e}")))?
        }
    };
    let places: Vec<PlaceQ> = if place == "all" {
        match &fixture {
            Some(f) => f.places.clone(),
            None => vec![PlaceQ::Prime(2), PlaceQ::Real],
        }
    } else {
        place.split(',').map(|t| t.trim().parse::<PlaceQ>()).collect::<Result<_, _>>().map_err(malformed)?
    };
    let mut pts = find_points(&s, height);
    if let Some(f) = &fixture {
        if f.surface.q1 == s.q1 && f.surface.q2 == s.q2 {
            pts.extend(f.listed_points.iter().copied());
        }
    }
    for p in &pts {
        if !s.contains(&p.0) {
            return Err(Fail::Malformed(format!("{p} is not on the surface")));
        }
    }
    pts.sort();
    pts.dedup();
    println!("height {height}: {} points, {} integral", pts.len(), pts.iter().filter(|p| p.is_integral()).count());
    let rep = audit(&r, &pts, &places).map_err(|e| match e {
        SurfaceError::Symbol(_) | SurfaceError::Malformed(_) => Fail::Malformed(e.to_string()),
        _ => Fail::Violation(e.to_string()),
    })?;
    if show {
        for pe in &rep.points {
            let vals: Vec<String> = pe.values.iter().map(|(v, q)| format!("{v}: {q}")).collect();
            println!("{}{} {}", pe.point, if pe.point.is_integral() { " *" } else { "" }, vals.join("  "));
        }
    }
    println!("{rep}");
    if !rep.reciprocity_failures.is_empty() {
        return Err(Fail::Violation(format!("sum of local invariants is nonzero at {}", rep.reciprocity_failures[0])));
    }
    Ok(())
}

fn run_selfcheck(only: Option<&str>) -> Res {
    let ids: Vec<u8> = match only {
        Some(s) => s.split(',').map(|t| t.trim().parse::<u8>()).collect::<Result<_, _>>().map_err(malformed)?,
        None => selfcheck::CRITERIA.iter().map(|c| c.0).collect(),
    };
    let mut failed = vec![];
    for id in ids {
        if !selfcheck::CRITERIA.iter().any(|c| c.0 == id) {
            return Err(Fail::Malformed(format!("no criterion {id}")));
        }
        let r = selfcheck::run(id);
        println!("{r}");
        if !r.passed {
            failed.push(id.to_string());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Fail::Violation(format!("criteria {} failed", failed.join(", "))))
    }
}
