use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Edge, Layout, Target};
use crate::error::{Error, Result};

/// A claimed decomposition of `K_host_n` into copies of `target`, one
/// [`Layout`] per copy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DesignJson", into = "DesignJson")]
pub struct Design {
    pub host_n: usize,
    pub target: Target,
    pub parts: Vec<Layout>,
}

impl Design {
    pub fn new(host_n: usize, target: Target, parts: Vec<Layout>) -> Self {
        Self {
            host_n,
            target,
            parts,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("design serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Symmetry-invariant identity of the design: each part replaced by its
    /// canonical layout, parts sorted.
    pub fn canonical_key(&self) -> Vec<Vec<u32>> {
        let mut key: Vec<Vec<u32>> = self
            .parts
            .iter()
            .map(|p| p.canonical().cells().to_vec())
            .collect();
        key.sort();
        key
    }
}

const JSON_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct DesignJson {
    version: u32,
    host_n: usize,
    target: Target,
    parts: Vec<PartJson>,
}

#[derive(Serialize, Deserialize)]
struct PartJson {
    cells: Vec<Vec<u32>>,
}

impl From<Design> for DesignJson {
    fn from(d: Design) -> Self {
        Self {
            version: JSON_VERSION,
            host_n: d.host_n,
            target: d.target,
            parts: d
                .parts
                .iter()
                .map(|p| PartJson { cells: p.to_rows() })
                .collect(),
        }
    }
}

impl TryFrom<DesignJson> for Design {
    type Error = Error;

    fn try_from(j: DesignJson) -> Result<Self> {
        if j.version != JSON_VERSION {
            return Err(Error::MalformedDesign(format!(
                "unsupported version {}",
                j.version
            )));
        }
        let parts = j
            .parts
            .iter()
            .enumerate()
            .map(|(i, part)| {
                let rows = part.cells.len();
                let cols = part.cells.first().map_or(0, Vec::len);
                if part.cells.iter().any(|r| r.len() != cols) {
                    return Err(Error::MalformedDesign(format!("part {i} has ragged rows")));
                }
                Layout::new_unchecked(rows, cols, part.cells.concat(), j.target.wrap())
                    .map_err(|e| Error::MalformedDesign(format!("part {i}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Design {
            host_n: j.host_n,
            target: j.target,
            parts,
        })
    }
}

/// The first problem the verifier finds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    MalformedLayout {
        part: usize,
        reason: String,
    },
    DoublyCovered {
        edge: Edge,
        first_part: usize,
        second_part: usize,
    },
    Uncovered {
        edge: Edge,
    },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::MalformedLayout { part, reason } => {
                write!(f, "part {part} is malformed: {reason}")
            }
            Failure::DoublyCovered {
                edge,
                first_part,
                second_part,
            } => {
                write!(
                    f,
                    "pair {edge} is covered by parts {first_part} and {second_part}"
                )
            }
            Failure::Uncovered { edge } => write!(f, "pair {edge} is not covered by any part"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub parts: usize,
    pub edges_covered: usize,
    pub host_edges: usize,
    pub failure: Option<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(
                f,
                "PASS: {} parts cover all {} pairs exactly once",
                self.parts, self.host_edges
            ),
            Some(failure) => write!(f, "FAIL: {failure}"),
        }
    }
}

/// Checks that the parts' edge sets partition the edges of `K_host_n`.
pub fn verify_design(d: &Design) -> VerificationReport {
    let n = d.host_n;
    let host_edges = n * n.saturating_sub(1) / 2;
    let mut report = VerificationReport {
        parts: d.parts.len(),
        edges_covered: 0,
        host_edges,
        failure: None,
    };
    let index = |e: Edge| {
        let (u, v) = (e.lo() as usize, e.hi() as usize);
        u * n - u * (u + 1) / 2 + (v - u - 1)
    };
    // 0 = uncovered, otherwise part index + 1
    let mut cover = vec![0u32; host_edges];
    let expected_wrap = d.target.wrap();

    for (i, part) in d.parts.iter().enumerate() {
        let malformed = |reason: String| Failure::MalformedLayout { part: i, reason };
        if part.rows() != d.target.rows || part.cols() != d.target.cols {
            report.failure = Some(malformed(format!(
                "shape {}x{} differs from target {}x{}",
                part.rows(),
                part.cols(),
                d.target.rows,
                d.target.cols
            )));
            return report;
        }
        if part.wrap() != expected_wrap {
            report.failure = Some(malformed("wrap flag differs from target family".into()));
            return report;
        }
        if let Some(&v) = part.cells().iter().find(|&&v| v as usize >= n) {
            report.failure = Some(malformed(format!("vertex {v} is outside 0..{n}")));
            return report;
        }
        let edges = match part.edges() {
            Ok(e) => e,
            Err(e) => {
                report.failure = Some(malformed(e.to_string()));
                return report;
            }
        };
        for e in edges {
            let slot = &mut cover[index(e)];
            if *slot != 0 {
                report.failure = Some(Failure::DoublyCovered {
                    edge: e,
                    first_part: *slot as usize - 1,
                    second_part: i,
                });
                return report;
            }
            *slot = i as u32 + 1;
            report.edges_covered += 1;
        }
    }

    if report.edges_covered != host_edges {
        'scan: for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                let e = Edge(u, v);
                if cover[index(e)] == 0 {
                    report.failure = Some(Failure::Uncovered { edge: e });
                    break 'scan;
                }
            }
        }
    }
    report
}

/// Graphviz rendering: one subgraph per part, every edge labeled with its
/// part index.
pub fn design_to_dot(d: &Design) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph design {{");
    let _ = writeln!(
        out,
        "  // K_{} into {} copies of {}",
        d.host_n,
        d.parts.len(),
        d.target
    );
    for (i, part) in d.parts.iter().enumerate() {
        let _ = writeln!(out, "  subgraph part_{i} {{");
        for (a, b) in part.shape().position_edges() {
            if let Some(e) = Edge::new(part.cells()[a], part.cells()[b]) {
                let _ = writeln!(out, "    {} -- {} [label=\"{i}\"];", e.lo(), e.hi());
            }
        }
        let _ = writeln!(out, "  }}");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_pair_design() -> Design {
        // K_5 as two 5-cycles
        let t = Target::torus(1, 5);
        let a = Layout::new(1, 5, vec![0, 1, 2, 3, 4], true).unwrap();
        let b = Layout::new(1, 5, vec![0, 2, 4, 1, 3], true).unwrap();
        Design::new(5, t, vec![a, b])
    }

    #[test]
    fn valid_design_passes() {
        let r = verify_design(&triangle_pair_design());
        assert!(r.passed(), "{r}");
        assert_eq!(r.edges_covered, 10);
    }

    #[test]
    fn dropped_part_leaves_pair_uncovered() {
        let mut d = triangle_pair_design();
        d.parts.pop();
        assert_eq!(
            verify_design(&d).failure,
            Some(Failure::Uncovered { edge: Edge(0, 2) })
        );
    }

    #[test]
    fn duplicated_part_is_doubly_covered() {
        let mut d = triangle_pair_design();
        d.parts.push(d.parts[0].clone());
        assert_eq!(
            verify_design(&d).failure,
            Some(Failure::DoublyCovered {
                edge: Edge(0, 1),
                first_part: 0,
                second_part: 2
            })
        );
    }

    #[test]
    fn malformed_parts_are_reported() {
        let mut d = triangle_pair_design();
        d.parts[1] = Layout::new_unchecked(1, 5, vec![0, 2, 4, 1, 1], true).unwrap();
        assert!(matches!(
            verify_design(&d).failure,
            Some(Failure::MalformedLayout { part: 1, .. })
        ));
        let mut d = triangle_pair_design();
        d.parts[1] = Layout::new(1, 5, vec![0, 2, 4, 1, 7], true).unwrap();
        assert!(matches!(
            verify_design(&d).failure,
            Some(Failure::MalformedLayout { part: 1, .. })
        ));
        let mut d = triangle_pair_design();
        d.parts[0] = Layout::new(5, 1, vec![0, 1, 2, 3, 4], true).unwrap();
        assert!(matches!(
            verify_design(&d).failure,
            Some(Failure::MalformedLayout { part: 0, .. })
        ));
    }

    #[test]
    fn json_shape_and_round_trip() {
        let d = triangle_pair_design();
        let json = d.to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["version"], 1);
        assert_eq!(v["target"]["family"], "torus_grid");
        assert_eq!(v["parts"][1]["cells"][0][1], 2);
        assert_eq!(Design::from_json(&json).unwrap(), d);
    }

    #[test]
    fn json_rejects_bad_input() {
        assert!(Design::from_json("{\"version\":1,\"host_n\":5").is_err());
        let ragged = r#"{"version":1,"host_n":4,"target":{"family":"path_grid","rows":2,"cols":2},
            "parts":[{"cells":[[0,1],[2]]}]}"#;
        assert!(Design::from_json(ragged).is_err());
        let v2 = r#"{"version":2,"host_n":4,"target":{"family":"path_grid","rows":2,"cols":2},"parts":[]}"#;
        assert!(Design::from_json(v2).is_err());
    }

    #[test]
    fn dot_has_one_subgraph_per_part() {
        let dot = design_to_dot(&triangle_pair_design());
        assert_eq!(dot.matches("subgraph").count(), 2);
        assert!(dot.contains("0 -- 2 [label=\"1\"];"));
    }
}
