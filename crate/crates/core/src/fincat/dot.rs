//! Graphviz output.

use std::fmt::Write;

use super::FinCat;

pub(crate) fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(ch),
        }
    }
    out.push('"');
    out
}

/// Covering pairs `x < y` of a poset, in object order.
pub fn covering_relations(c: &FinCat) -> Vec<(usize, usize)> {
    let m = c.num_objects();
    let mut out = Vec::new();
    for x in 0..m {
        for y in 0..m {
            if x == y || !c.leq(x, y) {
                continue;
            }
            let covered = !(0..m).any(|z| z != x && z != y && c.leq(x, z) && c.leq(z, y));
            if covered {
                out.push((x, y));
            }
        }
    }
    out
}

/// Emits a digraph. Posets are drawn by their covering relations; other
/// categories show every non-identity arrow with its name.
pub fn to_dot(c: &FinCat, name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph {} {{", quote(name));
    for (i, o) in c.object_names().iter().enumerate() {
        let _ = writeln!(s, "  n{i} [label={}];", quote(o));
    }
    if c.is_poset() {
        for (x, y) in covering_relations(c) {
            let _ = writeln!(s, "  n{x} -> n{y};");
        }
    } else {
        for (i, a) in c.arrows().iter().enumerate() {
            if !c.is_identity(i) {
                let _ = writeln!(s, "  n{} -> n{} [label={}];", a.src, a.tgt, quote(&a.name));
            }
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_draws_only_covers() {
        let d = to_dot(&FinCat::chain(2), "c");
        assert!(d.contains("n0 -> n1;"));
        assert!(d.contains("n1 -> n2;"));
        assert!(!d.contains("n0 -> n2"));
    }

    #[test]
    fn labels_are_escaped() {
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}
