use std::fmt::Write;

use serde_json::{json, Value};

use super::level::{LatticeElem, LatticeLevel, Tower};
use super::poset::verify_jordan_dedekind;

/// Hasse diagram of `A_n` in DOT, one rank per height, edges pointing up.
pub fn to_dot(tower: &Tower, level: &LatticeLevel) -> String {
    let (_, hght) = verify_jordan_dedekind(&level.poset);
    let hght = hght.unwrap_or_else(|| vec![0; level.len()]);
    let mut out = format!(
        "digraph A{} {{\n  rankdir=BT;\n  node [shape=plaintext];\n",
        level.n
    );
    for a in 0..level.len() {
        let _ = writeln!(out, "  n{a} [label=\"{}\"];", tower.name(a));
    }
    let top = hght.iter().copied().max().unwrap_or(0);
    for h in 0..=top {
        let ids: Vec<String> = (0..level.len())
            .filter(|&a| hght[a] == h)
            .map(|a| format!("n{a}"))
            .collect();
        let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
    }
    for (a, b) in level.poset.covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

/// `{n, size, elements: [{id, name, kind, proj, height}], covers: [[a, b]]}`,
/// where `proj` lists the five projections (null where undefined).
pub fn level_json(tower: &Tower, level: &LatticeLevel) -> Value {
    let (_, hght) = verify_jordan_dedekind(&level.poset);
    let elements: Vec<Value> = (0..level.len())
        .map(|a| {
            let kind = match level.elems[a] {
                LatticeElem::O => "o",
                LatticeElem::E(_) => "e",
                LatticeElem::Tuple { .. } => "tuple",
            };
            json!({
                "id": a,
                "name": tower.name(a),
                "kind": kind,
                "proj": [tower.proj0(a), tower.proj1(a), tower.proj2(a), tower.proj3(a), tower.proj4(a)],
                "height": hght.as_ref().map(|h| h[a]),
            })
        })
        .collect();
    let covers: Vec<[usize; 2]> = level.poset.covers().map(|(a, b)| [a, b]).collect();
    json!({ "n": level.n, "size": level.len(), "elements": elements, "covers": covers })
}
