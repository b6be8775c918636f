use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Edge, EdgeSet, Graph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `P_r x P_c`, no wraparound.
    PathGrid,
    /// `C_r x C_c`, wraparound in every dimension of length at least 3.
    TorusGrid,
}

/// A target grid graph: family plus dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Target {
    pub family: Family,
    pub rows: usize,
    pub cols: usize,
}

impl Target {
    pub fn path(rows: usize, cols: usize) -> Self {
        Self {
            family: Family::PathGrid,
            rows,
            cols,
        }
    }

    pub fn torus(rows: usize, cols: usize) -> Self {
        Self {
            family: Family::TorusGrid,
            rows,
            cols,
        }
    }

    pub fn wrap(&self) -> bool {
        self.family == Family::TorusGrid
    }

    pub fn cell_count(&self) -> usize {
        self.rows * self.cols
    }

    /// Adjacent position pairs `(i, j)` with `i < j`, positions indexed
    /// row-major.
    pub fn position_edges(&self) -> Vec<(usize, usize)> {
        let (rows, cols) = (self.rows, self.cols);
        let mut set = BTreeSet::new();
        let mut push = |a: usize, b: usize| {
            if a != b {
                set.insert((a.min(b), a.max(b)));
            }
        };
        for r in 0..rows {
            for c in 0..cols {
                let here = r * cols + c;
                if c + 1 < cols {
                    push(here, here + 1);
                } else if self.wrap() && cols >= 3 {
                    push(here, r * cols);
                }
                if r + 1 < rows {
                    push(here, here + cols);
                } else if self.wrap() && rows >= 3 {
                    push(here, c);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn edge_count(&self) -> usize {
        self.position_edges().len()
    }

    /// Neighbor positions of every position.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.cell_count()];
        for (a, b) in self.position_edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// The grid graph itself, on positions `0..rows*cols`.
    pub fn graph(&self) -> Graph {
        let n = self.cell_count();
        let edges = self
            .position_edges()
            .into_iter()
            .map(|(a, b)| Edge(a as u32, b as u32))
            .collect();
        Graph { n, edges }
    }

    /// Layout placing vertex `i` at row-major position `i`.
    pub fn identity_layout(&self) -> Layout {
        Layout {
            rows: self.rows,
            cols: self.cols,
            cells: (0..self.cell_count() as u32).collect(),
            wrap: self.wrap(),
        }
    }

    /// Position permutations induced by the grid symmetries: reflections,
    /// the transpose for square grids, and translations for tori. Each
    /// entry maps a position to its image. The identity comes first.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let (rows, cols) = (self.rows, self.cols);
        let square = rows == cols;
        let translations: Vec<(usize, usize)> = if self.wrap() {
            (0..rows)
                .flat_map(|dr| (0..cols).map(move |dc| (dr, dc)))
                .collect()
        } else {
            vec![(0, 0)]
        };
        let edges: BTreeSet<(usize, usize)> = self.position_edges().into_iter().collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let identity: Vec<usize> = (0..self.cell_count()).collect();
        seen.insert(identity.clone());
        out.push(identity);
        for transpose in [false, true] {
            if transpose && !square {
                continue;
            }
            for flip_r in [false, true] {
                for flip_c in [false, true] {
                    for &(dr, dc) in &translations {
                        let perm: Vec<usize> = (0..self.cell_count())
                            .map(|pos| {
                                let (mut r, mut c) = (pos / cols, pos % cols);
                                if transpose {
                                    std::mem::swap(&mut r, &mut c);
                                }
                                if flip_r {
                                    r = rows - 1 - r;
                                }
                                if flip_c {
                                    c = cols - 1 - c;
                                }
                                ((r + dr) % rows) * cols + (c + dc) % cols
                            })
                            .collect();
                        let preserves = edges.iter().all(|&(a, b)| {
                            let (x, y) = (perm[a], perm[b]);
                            edges.contains(&(x.min(y), x.max(y)))
                        });
                        if preserves && seen.insert(perm.clone()) {
                            out.push(perm);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.family {
            Family::PathGrid => 'p',
            Family::TorusGrid => 'c',
        };
        write!(f, "{tag}{}x{}", self.rows, self.cols)
    }
}

impl FromStr for Target {
    type Err = Error;

    /// Parses `p4x4` (path grid) or `c3x3` (torus grid).
    fn from_str(s: &str) -> Result<Self> {
        let bad =
            || Error::InvalidParameter(format!("target must look like p4x4 or c3x3, got {s:?}"));
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_lowercase()) {
            Some('p') => Family::PathGrid,
            Some('c') => Family::TorusGrid,
            _ => return Err(bad()),
        };
        let (r, c) = chars.as_str().split_once(['x', 'X']).ok_or_else(bad)?;
        let rows: usize = r.parse().map_err(|_| bad())?;
        let cols: usize = c.parse().map_err(|_| bad())?;
        if rows == 0 || cols == 0 {
            return Err(bad());
        }
        Ok(Self { family, rows, cols })
    }
}

/// An `rows x cols` matrix of vertex ids, stored row-major with row 0 at the
/// top. Adjacent cells induce the layout's edges; `wrap` adds the torus
/// wraparound adjacencies.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Layout {
    rows: usize,
    cols: usize,
    cells: Vec<u32>,
    wrap: bool,
}

impl Layout {
    /// Checks the shape and that all cells are distinct.
    pub fn new(rows: usize, cols: usize, cells: Vec<u32>, wrap: bool) -> Result<Self> {
        let layout = Self::new_unchecked(rows, cols, cells, wrap)?;
        match layout.duplicate() {
            Some(v) => Err(Error::DuplicateCells(v)),
            None => Ok(layout),
        }
    }

    /// Checks only the shape. Used for untrusted input that the verifier
    /// should diagnose rather than reject.
    pub fn new_unchecked(rows: usize, cols: usize, cells: Vec<u32>, wrap: bool) -> Result<Self> {
        if rows == 0 || cols == 0 || cells.len() != rows * cols {
            return Err(Error::LayoutShape {
                rows,
                cols,
                len: cells.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            cells,
            wrap,
        })
    }

    pub fn from_rows(rows: &[Vec<u32>], wrap: bool) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::LayoutShape {
                rows: rows.len(),
                cols,
                len: rows.iter().map(Vec::len).sum(),
            });
        }
        Self::new(rows.len(), cols, rows.concat(), wrap)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn wrap(&self) -> bool {
        self.wrap
    }

    /// Row-major cells, top row first.
    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.cells[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.cells[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.cells.chunks(self.cols).map(<[u32]>::to_vec).collect()
    }

    pub fn shape(&self) -> Target {
        let family = if self.wrap {
            Family::TorusGrid
        } else {
            Family::PathGrid
        };
        Target {
            family,
            rows: self.rows,
            cols: self.cols,
        }
    }

    /// First repeated cell value, if any.
    pub fn duplicate(&self) -> Option<u32> {
        let mut seen = BTreeSet::new();
        self.cells.iter().copied().find(|&v| !seen.insert(v))
    }

    /// The vertex pairs placed in adjacent cells.
    pub fn edges(&self) -> Result<EdgeSet> {
        if let Some(v) = self.duplicate() {
            return Err(Error::DuplicateCells(v));
        }
        Ok(self
            .shape()
            .position_edges()
            .into_iter()
            .map(|(a, b)| Edge::new(self.cells[a], self.cells[b]).expect("distinct cells"))
            .collect())
    }

    /// The image of this layout under a position permutation:
    /// `image[pos] = self[perm[pos]]`.
    pub fn permuted(&self, perm: &[usize]) -> Layout {
        Layout {
            cells: perm.iter().map(|&i| self.cells[i]).collect(),
            ..self.clone()
        }
    }

    /// Lexicographically least cell sequence among the images under the
    /// grid's symmetry group. Two layouts with equal canonical forms induce
    /// the same edge set.
    pub fn canonical(&self) -> Layout {
        self.shape()
            .automorphisms()
            .iter()
            .map(|perm| self.permuted(perm))
            .min()
            .expect("identity is always present")
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .cells
            .iter()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
