use serde_json::{json, Value};

use crate::graphs::SubgroupGraph;
use crate::lattice::{SubgroupId, SubgroupLattice};

fn generator_hint(lat: &SubgroupLattice, h: SubgroupId) -> String {
    let g = lat.group();
    let gens: Vec<String> = lat
        .subgroup(h)
        .generators
        .iter()
        .map(|&x| g.element(x).to_string())
        .collect();
    format!("<{}>", gens.join(", "))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz source. Vertices are named `h<id>` and labelled with the subgroup
/// order and generators; every vertex of `graph` is drawn, isolated or not.
pub fn to_dot(lat: &SubgroupLattice, graph: &SubgroupGraph, name: &str) -> String {
    let mut out = format!("graph \"{}\" {{\n  node [shape=box, fontsize=10];\n", dot_escape(name));
    for &h in &graph.vertices {
        out += &format!(
            "  h{h} [label=\"H{h}: order {}\\n{}\"];\n",
            lat.order(h),
            dot_escape(&generator_hint(lat, h))
        );
    }
    for (a, b) in graph.subgroup_edges() {
        out += &format!("  h{a} -- h{b};\n");
    }
    out + "}\n"
}

/// Vertices with their orders and generators, plus the edge list by subgroup id.
pub fn graph_json(lat: &SubgroupLattice, graph: &SubgroupGraph, name: &str) -> Value {
    let vertices: Vec<Value> = graph
        .vertices
        .iter()
        .map(|&h| {
            json!({
                "id": h,
                "order": lat.order(h),
                "generators": generator_hint(lat, h),
                "degree": graph.degree_of(h).unwrap_or(0),
            })
        })
        .collect();
    let edges: Vec<[SubgroupId; 2]> = graph.subgroup_edges().into_iter().map(|(a, b)| [a, b]).collect();
    json!({
        "group": name,
        "kind": graph.kind,
        "vertex_count": graph.vertices.len(),
        "edge_count": edges.len(),
        "vertices": vertices,
        "edges": edges,
    })
}

/// Adjacency lists, one vertex per line.
pub fn graph_text(lat: &SubgroupLattice, graph: &SubgroupGraph, name: &str) -> String {
    let mut out = format!(
        "{} of {name}: {} vertices, {} edges\n",
        graph.kind,
        graph.vertices.len(),
        graph.graph.edge_count()
    );
    for (i, &h) in graph.vertices.iter().enumerate() {
        let nbrs: Vec<String> = graph.graph.neighbors(i).iter().map(|j| graph.vertices[j].to_string()).collect();
        out += &format!(
            "H{h} (order {}, {}): {}\n",
            lat.order(h),
            generator_hint(lat, h),
            nbrs.join(" ")
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{build_graph, GraphKind};
    use crate::lattice::all_subgroups;
    use crate::perm::{parse_group_spec, realize, ActionRegistry, DEFAULT_ORDER_CAP};
    use std::sync::Arc;

    fn lattice(s: &str) -> SubgroupLattice {
        let g = realize(&parse_group_spec(s).unwrap(), &ActionRegistry::new(), DEFAULT_ORDER_CAP).unwrap();
        all_subgroups(Arc::new(g)).unwrap()
    }

    #[test]
    fn dot_includes_isolated_vertices_only_for_d() {
        let lat = lattice("symmetric(3)");
        let d = build_graph(&lat, GraphKind::Difference);
        let dot = to_dot(&lat, &d, "d_s3");
        assert_eq!(dot.matches("[label=").count(), 4);
        assert_eq!(dot.matches(" -- ").count(), 3);
        let star = build_graph(&lat, GraphKind::DifferenceStar);
        assert_eq!(to_dot(&lat, &star, "dstar_s3").matches("[label=").count(), 3);
    }

    #[test]
    fn json_for_z6() {
        let lat = lattice("cyclic(6)");
        for (kind, edges) in [(GraphKind::Delta, 1), (GraphKind::Gamma, 1), (GraphKind::Difference, 0)] {
            let v = graph_json(&lat, &build_graph(&lat, kind), "z6");
            assert_eq!(v["vertex_count"], 2);
            assert_eq!(v["edge_count"], edges);
        }
    }
}
