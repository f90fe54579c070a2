//! Graphviz output. Edges point from a lower element to an element covering it.

use std::fmt::Write;

use crate::frame::{FinitePoset, Frame, Preorder, TopologySpace};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram of a poset.
pub fn poset_dot(name: &str, poset: &FinitePoset) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for l in poset.labels() {
        writeln!(out, "  {};", quote(l)).unwrap();
    }
    for (lo, hi) in poset.covers() {
        writeln!(out, "  {} -> {};", quote(poset.label(lo)), quote(poset.label(hi))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of a frame, nodes labelled by their base-element sets.
pub fn frame_dot(name: &str, frame: &Frame) -> String {
    poset_dot(name, &frame.as_poset())
}

/// A topology drawn through the specialisation order of its T0 quotient.
pub fn topology_dot(name: &str, space: &TopologySpace) -> String {
    let (q, _) = space.t0_quotient();
    let order: Preorder = q.specialisation();
    let poset = FinitePoset::try_from(order).expect("the T0 quotient has a partial specialisation order");
    poset_dot(name, &poset)
}
