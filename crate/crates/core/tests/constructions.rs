use std::collections::{BTreeMap, BTreeSet};

use grid_designs::constructions::{
    g4_edges, grid16_basis, grid16_design, grid16_field, grid16_layout, render_power_notation,
    torus2_design, torus_design, walecki_cycles, walecki_paths, BasisTuple,
};
use grid_designs::field::{FieldElement, FieldSpec};
use grid_designs::graph::{
    cartesian_product, complete_graph, cycle_graph, find_embedding, hamiltonian_pair, path_graph,
    verify_design, Edge, EdgeSet, Layout, Target,
};

/// Multiset of pairs covered by all parts; a valid design covers each pair
/// of `K_n` exactly once.
fn pair_counts(parts: &[Layout]) -> BTreeMap<(u32, u32), usize> {
    let mut counts = BTreeMap::new();
    for part in parts {
        let (rows, cols) = (part.rows(), part.cols());
        for r in 0..rows {
            for c in 0..cols {
                let here = part.get(r, c);
                let mut nbrs = Vec::new();
                if c + 1 < cols {
                    nbrs.push(part.get(r, c + 1));
                } else if part.wrap() && cols >= 3 {
                    nbrs.push(part.get(r, 0));
                }
                if r + 1 < rows {
                    nbrs.push(part.get(r + 1, c));
                } else if part.wrap() && rows >= 3 {
                    nbrs.push(part.get(0, c));
                }
                for w in nbrs {
                    *counts.entry((here.min(w), here.max(w))).or_insert(0) += 1;
                }
            }
        }
    }
    counts
}

fn covers_exactly_once(n: u32, parts: &[Layout]) -> bool {
    let counts = pair_counts(parts);
    counts.len() == (n * (n - 1) / 2) as usize && counts.values().all(|&c| c == 1)
}

#[test]
fn torus_parts_use_one_difference_class_each() {
    for p in [3u32, 5, 7] {
        let field = FieldSpec::new(p, 2, None).unwrap();
        let design = torus_design(p).unwrap();
        assert!(covers_exactly_once(p * p, &design.parts));
        let mut seen: BTreeSet<FieldElement> = BTreeSet::new();
        for part in &design.parts {
            let diffs: BTreeSet<FieldElement> = part
                .edges()
                .unwrap()
                .iter()
                .flat_map(|e| {
                    let (a, b) = (
                        field.decode(e.lo() as u64).unwrap(),
                        field.decode(e.hi() as u64).unwrap(),
                    );
                    [field.sub(a, b).unwrap(), field.sub(b, a).unwrap()]
                })
                .collect();
            // {+-alpha, +-beta}
            assert_eq!(diffs.len(), 4);
            assert!(seen.is_disjoint(&diffs));
            seen.extend(diffs);
        }
        assert_eq!(seen.len() as u32, p * p - 1);
    }
}

#[test]
fn torus_design_rejects_non_odd_primes() {
    assert!(torus_design(2).is_err());
    assert!(torus_design(9).is_err());
    assert!(torus2_design(4).is_err());
}

#[test]
fn torus2_at_three_covers_k81() {
    let d = torus2_design(3).unwrap();
    assert_eq!(d.parts.len(), 20);
    assert!(covers_exactly_once(81, &d.parts));
}

#[test]
fn hamiltonian_pairs_split_the_torus() {
    for p in 3..=7usize {
        let pair = hamiltonian_pair(p).unwrap();
        let torus = cartesian_product(&cycle_graph(p).unwrap(), &cycle_graph(p).unwrap());
        let mut union = EdgeSet::new();
        for cycle in [&pair.first, &pair.second] {
            let distinct: BTreeSet<u32> = cycle.iter().copied().collect();
            assert_eq!(distinct.len(), p * p);
            assert_eq!(cycle.len(), p * p);
            for i in 0..cycle.len() {
                let e = Edge::new(cycle[i], cycle[(i + 1) % cycle.len()]).unwrap();
                assert!(torus.edges().contains(&e));
                assert!(union.insert(e), "edge used twice");
            }
        }
        assert_eq!(&union, torus.edges());
    }
}

#[test]
fn cartesian_product_sizes() {
    let g = cartesian_product(&path_graph(4).unwrap(), &path_graph(4).unwrap());
    assert_eq!(g.vertex_count(), 16);
    assert_eq!(g.edge_count(), 24);
    assert_eq!(g, Target::path(4, 4).graph());
    let t = cartesian_product(&cycle_graph(5).unwrap(), &cycle_graph(3).unwrap());
    assert_eq!(t.edge_count(), 30);
    assert!(t.degrees().iter().all(|&d| d == 4));
    assert_eq!(complete_graph(16).edge_count(), 120);
}

#[test]
fn grid16_matches_independent_coverage_count() {
    let d = grid16_design();
    assert!(covers_exactly_once(16, &d.parts));
    assert!(verify_design(&d).passed());
}

#[test]
fn grid16_span_identity() {
    let f = grid16_field();
    for i in 0..5i64 {
        let left = f
            .span(&[f.x_pow(3 * i), f.x_pow(13 + 3 * i), f.x_pow(3 + 3 * i)])
            .unwrap();
        let right = f
            .span(&[f.x_pow(3 + 3 * i), f.x_pow(14 + 3 * i), f.x_pow(6 + 3 * i)])
            .unwrap();
        assert_eq!(left, right);
        assert_eq!(left.len(), 8);
    }
}

#[test]
fn grid16_rotation_by_x_cubed() {
    let f = grid16_field();
    let d = grid16_design();
    let x3 = f.x_pow(3);
    for i in 0..5 {
        let next = &d.parts[(i + 1) % 5];
        for (&a, &b) in d.parts[i].cells().iter().zip(next.cells()) {
            let rotated = f.mul(f.decode(a as u64).unwrap(), x3).unwrap();
            assert_eq!(rotated.encode(), b);
        }
    }
}

#[test]
fn difference_graphs_partition_k16() {
    let f = grid16_field();
    let mut union = EdgeSet::new();
    for i in 0..5 {
        let basis = grid16_basis(&f, i).unwrap();
        let edges = g4_edges(&f, &basis).unwrap();
        assert_eq!(edges.len(), 24);
        assert_eq!(edges, grid16_layout(&f, &basis).unwrap().edges().unwrap());
        for e in &edges {
            assert!(union.insert(*e), "difference graphs overlap");
        }
    }
    assert_eq!(&union, complete_graph(16).edges());
}

#[test]
fn difference_graph_is_a_4x4_grid() {
    let f = grid16_field();
    let basis = grid16_basis(&f, 2).unwrap();
    let edges = g4_edges(&f, &basis).unwrap();
    let layout = find_embedding(&Target::path(4, 4), &edges)
        .unwrap()
        .expect("a grid embedding");
    assert_eq!(layout.edges().unwrap(), edges);
}

#[test]
fn basis_tuple_rejects_dependent_elements() {
    let f = grid16_field();
    assert!(BasisTuple::new(&f, vec![f.x_pow(0), f.x_pow(5), f.x_pow(10), f.x_pow(1)]).is_err());
    assert!(BasisTuple::new(&f, vec![f.x_pow(0), f.x_pow(1), f.x_pow(2), f.x_pow(3)]).is_ok());
}

#[test]
fn embedding_found_for_difference_torus_in_gf9() {
    let f = FieldSpec::new(3, 2, None).unwrap();
    let (alpha, beta) = (f.x_pow(0), f.x_pow(1));
    let mut edges = EdgeSet::new();
    for v in f.elements() {
        for d in [alpha, beta] {
            edges.extend(Edge::new(v.encode(), f.add(v, d).unwrap().encode()));
        }
    }
    assert_eq!(edges.len(), 18);
    let target = Target::torus(3, 3);
    let layout = find_embedding(&target, &edges).unwrap().expect("C3 x C3");
    assert_eq!(layout.edges().unwrap(), edges);
    assert_eq!(layout, layout.canonical());

    // removing an edge breaks it
    let mut fewer = edges.clone();
    let first = *fewer.iter().next().unwrap();
    fewer.remove(&first);
    assert!(find_embedding(&target, &fewer).is_err());
}

#[test]
fn embedding_absent_for_non_grid() {
    // a 16-cycle plus diameters: 24 edges, but 3-regular
    let mut edges = EdgeSet::new();
    for i in 0..16u32 {
        edges.extend(Edge::new(i, (i + 1) % 16));
    }
    for i in 0..8u32 {
        edges.extend(Edge::new(i, i + 8));
    }
    assert_eq!(edges.len(), 24);
    assert!(find_embedding(&Target::path(4, 4), &edges)
        .unwrap()
        .is_none());
}

#[test]
fn walecki_designs_cover_exactly_once() {
    for n in (3..=15).step_by(2) {
        let d = walecki_cycles(n).unwrap();
        assert_eq!(d.parts.len(), (n - 1) / 2);
        assert!(covers_exactly_once(n as u32, &d.parts));
    }
    for n in (2..=16).step_by(2) {
        let d = walecki_paths(n).unwrap();
        assert_eq!(d.parts.len(), n / 2);
        assert!(covers_exactly_once(n as u32, &d.parts));
    }
    assert!(walecki_cycles(8).is_err());
    assert!(walecki_paths(7).is_err());
}

#[test]
fn power_notation_shape() {
    let f = grid16_field();
    let text = render_power_notation(&f, &grid16_design()).unwrap();
    let blocks: Vec<&str> = text.trim_end().split("\n\n").collect();
    assert_eq!(blocks.len(), 5);
    let tokens: Vec<&str> = text.split_whitespace().collect();
    assert_eq!(tokens.len(), 80);
    assert_eq!(tokens.iter().filter(|&&t| t == "0").count(), 5);
    assert_eq!(tokens.iter().filter(|&&t| t == "1").count(), 5);
}

#[test]
#[ignore = "benchmark: K_625 with 156 parts"]
fn torus2_at_five_covers_k625() {
    let start = std::time::Instant::now();
    let d = torus2_design(5).unwrap();
    assert_eq!(d.parts.len(), 156);
    assert!(verify_design(&d).passed());
    let target = Target::torus(25, 25);
    for part in &d.parts {
        assert!(find_embedding(&target, &part.edges().unwrap())
            .unwrap()
            .is_some());
    }
    assert!(start.elapsed() < std::time::Duration::from_secs(300));
}
