use dp4brauer::surface_lab::{fixtures, PencilSurface, Recipe};
use dp4brauer::weyl_d5::{h1_full, parse_group_file, Subgroup};
use std::path::Path;

fn read(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)).unwrap()
}

#[test]
fn fixture_groups_match_their_files() {
    for fx in fixtures::all() {
        let g = parse_group_file(&read(&format!("{}.group", fx.id))).unwrap();
        let want = Subgroup::generated_by(&fx.group).unwrap();
        assert_eq!(g.elements(), want.elements(), "{}", fx.id);
        assert_eq!(h1_full(&g).group.torsion_u64(), fx.brauer, "{}", fx.id);
    }
}

#[test]
fn surfaces_and_recipes_roundtrip() {
    for fx in fixtures::all() {
        let s = PencilSurface::from_json(&read(&format!("{}.surface.json", fx.id))).unwrap();
        assert_eq!(s.fixture.as_deref(), Some(fx.id));
        assert_eq!((&s.q1, &s.q2), (&fx.surface.q1, &fx.surface.q2), "{}", fx.id);
        for (name, recipe) in &fx.recipes {
            let r: Recipe = serde_json::from_str(&read(&format!("{}.{name}.recipe.json", fx.id))).unwrap();
            assert_eq!(&r, recipe, "{} {name}", fx.id);
        }
    }
}

#[test]
fn auxiliary_groups_parse() {
    for (name, order) in [("cyclic4-overlap.group", 4), ("s3-times-z4.group", 24), ("translations.group", 16)] {
        let g = parse_group_file(&read(name)).unwrap();
        assert_eq!(g.order(), order, "{name}");
    }
}
