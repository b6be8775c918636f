use std::collections::BTreeSet;

use grid_designs::graph::{verify_design, Target};
use grid_designs::search::{exhaustive_design_search, DesignSearch, SearchStatus};

/// Counts vertex permutations of `target` preserving its edges.
fn brute_force_automorphisms(target: Target) -> usize {
    let n = target.cell_count();
    let edges: BTreeSet<(usize, usize)> = target.position_edges().into_iter().collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0;
    // Heap's algorithm
    let mut c = vec![0; n];
    let mut check = |perm: &[usize]| {
        if edges.iter().all(|&(a, b)| {
            let (x, y) = (perm[a], perm[b]);
            edges.contains(&(x.min(y), x.max(y)))
        }) {
            count += 1;
        }
    };
    check(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            check(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    count
}

#[test]
fn torus_3x3_designs_without_first_part_fixing() {
    let target = Target::torus(3, 3);
    let aut = brute_force_automorphisms(target);
    assert_eq!(aut, 72);
    assert_eq!(target.automorphisms().len(), aut);
    // the complement of C3 x C3 in K9 is again C3 x C3, so each copy
    // determines a design, and each design holds two copies
    let copies = (1..=9).product::<usize>() / aut;
    let expected = copies / 2;

    let all = DesignSearch::new(9, target)
        .limit(10_000)
        .symmetry_reduction(false)
        .run()
        .unwrap();
    assert_eq!(all.status, SearchStatus::Exhausted);
    assert_eq!(all.solutions.len(), expected);
    let keys: BTreeSet<_> = all.solutions.iter().map(|d| d.canonical_key()).collect();
    assert_eq!(keys.len(), expected);

    let reduced = DesignSearch::new(9, target).limit(10_000).run().unwrap();
    assert_eq!(reduced.status, SearchStatus::Exhausted);
    assert_eq!(reduced.solutions.len(), 1);
    for d in &reduced.solutions {
        assert!(verify_design(d).passed());
        assert!(keys.contains(&d.canonical_key()));
    }
}

#[test]
fn outcome_is_independent_of_worker_count() {
    let target = Target::torus(3, 3);
    let run = |workers| {
        DesignSearch::new(9, target)
            .limit(25)
            .symmetry_reduction(false)
            .workers(workers)
            .run()
            .unwrap()
    };
    let one = run(1);
    assert_eq!(one.status, SearchStatus::Found);
    assert_eq!(one.solutions.len(), 25);
    for workers in [2, 3, 8] {
        let other = run(workers);
        assert_eq!(other.status, one.status);
        assert_eq!(other.solutions, one.solutions);
    }
}

#[test]
fn path_grid_3x3_has_no_design_on_k9() {
    for workers in [1, 4] {
        let o = DesignSearch::new(9, Target::path(3, 3))
            .workers(workers)
            .run()
            .unwrap();
        assert_eq!(o.status, SearchStatus::Exhausted);
        assert!(o.solutions.is_empty());
    }
    // also without the first-part reduction
    let o = DesignSearch::new(9, Target::path(3, 3))
        .symmetry_reduction(false)
        .run()
        .unwrap();
    assert_eq!(o.status, SearchStatus::Exhausted);
    assert!(o.solutions.is_empty());
}

#[test]
fn path_designs_of_small_complete_graphs() {
    // K_4 into two P_4, K_6 into three P_6
    for n in [4, 6] {
        let o = DesignSearch::new(n, Target::path(1, n))
            .limit(1000)
            .run()
            .unwrap();
        assert_eq!(o.status, SearchStatus::Exhausted);
        assert!(!o.solutions.is_empty());
        for d in &o.solutions {
            assert!(verify_design(d).passed());
        }
    }
}

#[test]
fn timeout_is_not_a_nonexistence_claim() {
    let o = exhaustive_design_search(
        16,
        Target::path(4, 4),
        1,
        Some(std::time::Duration::from_millis(200)),
    )
    .unwrap();
    assert!(matches!(
        o.status,
        SearchStatus::Timeout | SearchStatus::Found
    ));
    if o.status == SearchStatus::Found {
        assert!(verify_design(&o.solutions[0]).passed());
    }
}

#[test]
fn divisibility_gate_rejects_without_searching() {
    let o = exhaustive_design_search(25, Target::path(5, 5), 1, None).unwrap();
    assert_eq!(o.status, SearchStatus::Exhausted);
    assert_eq!(o.nodes_explored, 0);
    assert!(o.note.unwrap().contains("no design possible"));
}
