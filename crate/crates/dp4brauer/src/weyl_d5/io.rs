//! Group exchange format: one generator per line, written as the five
//! signed images of `e₁..e₅`, either bracketed and comma separated
//! (`[2,-1,-3,4,5]`) or whitespace separated (`2 -1 -3 4 5`). Blank lines
//! and text after `#` are ignored. An empty file is the trivial group.

use super::{SignedPerm, Subgroup, WeylError};

pub fn parse_group_file(text: &str) -> Result<Subgroup, WeylError> {
    let mut gens = vec![];
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| WeylError::Parse { line: no + 1, msg };
        let body = line.trim_start_matches('[').trim_end_matches(']');
        let nums: Vec<i8> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i8>().map_err(|e| err(format!("{t:?}: {e}"))))
            .collect::<Result<_, _>>()?;
        let img: [i8; 5] = nums.try_into().map_err(|v: Vec<i8>| err(format!("expected 5 entries, got {}", v.len())))?;
        let s = SignedPerm::new(img).map_err(|e| err(e.to_string()))?;
        gens.push(s);
    }
    Subgroup::generated_by(&gens)
}

pub fn format_group_file(g: &Subgroup) -> String {
    let mut out = format!("# order {}\n", g.order());
    for s in g.generator_perms() {
        out.push_str(&format!("{s}\n"));
    }
    out
}
