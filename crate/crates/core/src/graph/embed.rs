use std::collections::{BTreeSet, VecDeque};

use super::{EdgeSet, Layout, Target};
use crate::error::{Error, Result};

/// Finds a layout of `target` whose induced edges are exactly `host_edges`.
///
/// Backtracks over positions in breadth-first order, requiring each placed
/// vertex to have the same degree as its position and to be adjacent to
/// every already-placed neighbor. Since the edge counts agree, an injective
/// edge map is automatically onto. The result is returned in canonical form.
pub fn find_embedding(target: &Target, host_edges: &EdgeSet) -> Result<Option<Layout>> {
    let expected = target.edge_count();
    if host_edges.len() != expected {
        return Err(Error::EdgeCountMismatch {
            expected,
            found: host_edges.len(),
        });
    }
    let vertices: Vec<u32> = host_edges
        .iter()
        .flat_map(|e| [e.lo(), e.hi()])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let cells = target.cell_count();
    if vertices.len() != cells {
        return Ok(None);
    }
    let local = |v: u32| vertices.binary_search(&v).expect("endpoint is a vertex");
    let mut adj = vec![false; cells * cells];
    let mut nbrs = vec![Vec::new(); cells];
    for e in host_edges {
        let (a, b) = (local(e.lo()), local(e.hi()));
        adj[a * cells + b] = true;
        adj[b * cells + a] = true;
        nbrs[a].push(b);
        nbrs[b].push(a);
    }

    let tnbrs = target.neighbors();
    let tdeg: Vec<usize> = tnbrs.iter().map(Vec::len).collect();
    let hdeg: Vec<usize> = nbrs.iter().map(Vec::len).collect();
    let (mut a, mut b) = (tdeg.clone(), hdeg.clone());
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Ok(None);
    }

    let order = bfs_order(&tnbrs);
    let mut rank = vec![0; cells];
    for (i, &pos) in order.iter().enumerate() {
        rank[pos] = i;
    }
    let back: Vec<Vec<usize>> = order
        .iter()
        .map(|&pos| {
            tnbrs[pos]
                .iter()
                .copied()
                .filter(|&q| rank[q] < rank[pos])
                .collect()
        })
        .collect();

    let mut search = Embedder {
        cells,
        adj: &adj,
        nbrs: &nbrs,
        tdeg: &tdeg,
        hdeg: &hdeg,
        order: &order,
        back: &back,
        image: vec![usize::MAX; cells],
        used: vec![false; cells],
    };
    if !search.place(0) {
        return Ok(None);
    }
    let layout_cells: Vec<u32> = search.image.iter().map(|&v| vertices[v]).collect();
    let layout = Layout::new(target.rows, target.cols, layout_cells, target.wrap())?;
    Ok(Some(layout.canonical()))
}

fn bfs_order(nbrs: &[Vec<usize>]) -> Vec<usize> {
    let n = nbrs.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &nbrs[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

struct Embedder<'a> {
    cells: usize,
    adj: &'a [bool],
    nbrs: &'a [Vec<usize>],
    tdeg: &'a [usize],
    hdeg: &'a [usize],
    order: &'a [usize],
    back: &'a [Vec<usize>],
    image: Vec<usize>,
    used: Vec<bool>,
}

impl Embedder<'_> {
    fn place(&mut self, idx: usize) -> bool {
        if idx == self.cells {
            return true;
        }
        let pos = self.order[idx];
        let candidates: Vec<usize> = match self.back[idx].first() {
            Some(&q) => self.nbrs[self.image[q]].clone(),
            None => (0..self.cells).collect(),
        };
        for w in candidates {
            if self.used[w] || self.hdeg[w] != self.tdeg[pos] {
                continue;
            }
            if !self.back[idx]
                .iter()
                .all(|&q| self.adj[self.image[q] * self.cells + w])
            {
                continue;
            }
            self.image[pos] = w;
            self.used[w] = true;
            if self.place(idx + 1) {
                return true;
            }
            self.used[w] = false;
        }
        false
    }
}
