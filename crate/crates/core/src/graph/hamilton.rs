use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::{cartesian_product, cycle_graph, Edge, EdgeSet};
use crate::error::{Error, Result};

const NODE_LIMIT: u64 = 50_000_000;

/// Two edge-disjoint Hamiltonian cycles of `C_n x C_n` covering all of its
/// edges. Vertex `(a, b)` is numbered `a * n + b`. Each cycle starts at 0
/// and does not repeat the start at the end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianPair {
    pub n: usize,
    pub first: Vec<u32>,
    pub second: Vec<u32>,
}

impl HamiltonianPair {
    pub fn cycle_edges(cycle: &[u32]) -> EdgeSet {
        (0..cycle.len())
            .filter_map(|i| Edge::new(cycle[i], cycle[(i + 1) % cycle.len()]))
            .collect()
    }

    fn validate(&self) -> bool {
        let n2 = self.n * self.n;
        let torus = cartesian_product(&cycle_graph(self.n).unwrap(), &cycle_graph(self.n).unwrap());
        let hamiltonian =
            |c: &[u32]| c.len() == n2 && c.iter().collect::<BTreeSet<_>>().len() == n2;
        let (e1, e2) = (
            Self::cycle_edges(&self.first),
            Self::cycle_edges(&self.second),
        );
        hamiltonian(&self.first)
            && hamiltonian(&self.second)
            && e1.len() == n2
            && e2.len() == n2
            && e1.is_disjoint(&e2)
            && e1.union(&e2).copied().collect::<EdgeSet>() == *torus.edges()
    }
}

/// Decomposes `C_n x C_n` into two Hamiltonian cycles. Results are cached
/// per `n`; the search is deterministic.
pub fn hamiltonian_pair(n: usize) -> Result<Arc<HamiltonianPair>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<HamiltonianPair>>>> = OnceLock::new();
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "C_n x C_n needs n >= 3, got {n}"
        )));
    }
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(hit) = guard.get(&n) {
        return Ok(Arc::clone(hit));
    }
    let pair = Arc::new(
        Splitter::new(n)
            .solve()
            .ok_or(Error::HamiltonianPairNotFound(n))?,
    );
    if !pair.validate() {
        return Err(Error::HamiltonianPairNotFound(n));
    }
    guard.insert(n, Arc::clone(&pair));
    Ok(pair)
}

enum Undo {
    Edge(usize),
    End(u8, usize, usize),
}

/// Two-colors the edges of the 4-regular torus so that both color classes
/// are Hamiltonian cycles: every vertex gets two edges of each color, and a
/// color class may only close a cycle with its last edge.
struct Splitter {
    n2: usize,
    ends: Vec<(usize, usize)>,
    incident: Vec<[usize; 4]>,
    color: Vec<u8>,
    deg: [Vec<u8>; 2],
    undecided: Vec<u8>,
    frag_end: [Vec<usize>; 2],
    count: [usize; 2],
    trail: Vec<Undo>,
    nodes: u64,
}

impl Splitter {
    fn new(n: usize) -> Self {
        let n2 = n * n;
        let torus = cartesian_product(&cycle_graph(n).unwrap(), &cycle_graph(n).unwrap());
        let ends: Vec<(usize, usize)> = torus
            .edges()
            .iter()
            .map(|e| (e.lo() as usize, e.hi() as usize))
            .collect();
        let mut lists = vec![Vec::with_capacity(4); n2];
        for (id, &(a, b)) in ends.iter().enumerate() {
            lists[a].push(id);
            lists[b].push(id);
        }
        let incident = lists
            .into_iter()
            .map(|l| <[usize; 4]>::try_from(l).expect("4-regular"))
            .collect();
        Self {
            n2,
            color: vec![0; ends.len()],
            ends,
            incident,
            deg: [vec![0; n2], vec![0; n2]],
            undecided: vec![4; n2],
            frag_end: [(0..n2).collect(), (0..n2).collect()],
            count: [0, 0],
            trail: Vec::new(),
            nodes: 0,
        }
    }

    fn solve(mut self) -> Option<HamiltonianPair> {
        if !self.branch() {
            return None;
        }
        let n = (self.n2 as f64).sqrt().round() as usize;
        Some(HamiltonianPair {
            n,
            first: self.walk(1),
            second: self.walk(2),
        })
    }

    fn walk(&self, c: u8) -> Vec<u32> {
        let next = |v: usize, prev: Option<usize>| {
            self.incident[v]
                .iter()
                .filter(|&&id| self.color[id] == c)
                .map(|&id| {
                    if self.ends[id].0 == v {
                        self.ends[id].1
                    } else {
                        self.ends[id].0
                    }
                })
                .filter(|&w| Some(w) != prev)
                .min()
                .expect("degree 2")
        };
        let mut cycle = vec![0u32];
        let (mut prev, mut cur) = (0usize, next(0, None));
        while cur != 0 {
            cycle.push(cur as u32);
            let nxt = next(cur, Some(prev));
            prev = cur;
            cur = nxt;
        }
        cycle
    }

    fn branch(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > NODE_LIMIT {
            return false;
        }
        let Some(edge) = self.color.iter().position(|&c| c == 0) else {
            return true;
        };
        for c in [1u8, 2] {
            let mark = self.trail.len();
            if self.assign(edge, c) && self.branch() {
                return true;
            }
            self.rollback(mark);
        }
        false
    }

    /// Colors an edge and propagates the degree constraints.
    fn assign(&mut self, edge: usize, c: u8) -> bool {
        let mut queue = vec![(edge, c)];
        while let Some((id, c)) = queue.pop() {
            if self.color[id] == c {
                continue;
            }
            if self.color[id] != 0 || !self.set(id, c) {
                return false;
            }
            let (a, b) = self.ends[id];
            for v in [a, b] {
                for k in 0..2 {
                    if self.deg[k][v] == 2 && self.undecided[v] > 0 {
                        let other = if k == 0 { 2 } else { 1 };
                        for &e in &self.incident[v] {
                            if self.color[e] == 0 {
                                queue.push((e, other));
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn set(&mut self, id: usize, c: u8) -> bool {
        let k = (c - 1) as usize;
        let (a, b) = self.ends[id];
        self.color[id] = c;
        self.trail.push(Undo::Edge(id));
        for v in [a, b] {
            self.deg[k][v] += 1;
            self.undecided[v] -= 1;
        }
        self.count[k] += 1;
        if self.deg[k][a] > 2 || self.deg[k][b] > 2 {
            return false;
        }
        let (ea, eb) = (self.frag_end[k][a], self.frag_end[k][b]);
        if ea == b {
            if self.count[k] != self.n2 {
                return false;
            }
        } else {
            self.trail
                .push(Undo::End(k as u8, ea, self.frag_end[k][ea]));
            self.trail
                .push(Undo::End(k as u8, eb, self.frag_end[k][eb]));
            self.frag_end[k][ea] = eb;
            self.frag_end[k][eb] = ea;
        }
        [a, b].iter().all(|&v| {
            self.undecided[v] + self.deg[0][v] >= 2 && self.undecided[v] + self.deg[1][v] >= 2
        })
    }

    fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Undo::Edge(id) => {
                    let k = (self.color[id] - 1) as usize;
                    let (a, b) = self.ends[id];
                    for v in [a, b] {
                        self.deg[k][v] -= 1;
                        self.undecided[v] += 1;
                    }
                    self.color[id] = 0;
                    self.count[k] -= 1;
                }
                Undo::End(k, v, old) => self.frag_end[k as usize][v] = old,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_for_small_primes_are_valid() {
        for p in [3, 5, 7] {
            let pair = hamiltonian_pair(p).unwrap();
            assert!(pair.validate());
            assert_eq!(pair.first.len(), p * p);
            assert_eq!(pair.second.len(), p * p);
            let total = HamiltonianPair::cycle_edges(&pair.first).len()
                + HamiltonianPair::cycle_edges(&pair.second).len();
            assert_eq!(total, 2 * p * p);
        }
    }

    #[test]
    fn results_are_cached_and_deterministic() {
        let a = hamiltonian_pair(5).unwrap();
        let b = hamiltonian_pair(5).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(Splitter::new(5).solve().unwrap(), *a);
    }

    #[test]
    fn small_n_is_rejected() {
        assert!(hamiltonian_pair(2).is_err());
    }
}
