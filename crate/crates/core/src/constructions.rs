//! Explicit designs built from finite-field difference structures, plus the
//! classical Walecki decompositions of `K_n` into Hamiltonian cycles and
//! paths.

use crate::error::{Error, Result};
use crate::field::{is_prime, FieldElement, FieldSpec};
use crate::graph::{hamiltonian_pair, Design, Edge, EdgeSet, Layout, Target};

/// Field elements known to form a basis over the prime subfield.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisTuple {
    elems: Vec<FieldElement>,
}

impl BasisTuple {
    pub fn new(field: &FieldSpec, elems: Vec<FieldElement>) -> Result<Self> {
        if field.is_basis(&elems)? {
            Ok(Self { elems })
        } else {
            Err(Error::NotABasis)
        }
    }

    pub fn elems(&self) -> &[FieldElement] {
        &self.elems
    }
}

fn odd_prime(p: u32) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidParameter(format!(
            "p must be an odd prime, got {p}"
        )));
    }
    Ok(())
}

/// `K_{p^2}` as `(p^2 - 1) / 4` copies of `C_p x C_p`.
///
/// Part i uses the basis `(alpha, beta) = (x^{2i}, x^{2i+1})` of GF(p^2) and
/// places `r*beta + c*alpha` at row r (counted from the bottom), column c.
/// Torus adjacency then joins exactly the pairs differing by `+-alpha` or
/// `+-beta`, and the classes `{x^j, -x^j}` for `j < (p^2 - 1) / 2` partition
/// the nonzero elements.
pub fn torus_design(p: u32) -> Result<Design> {
    odd_prime(p)?;
    let field = FieldSpec::new(p, 2, None)?;
    let n = p as usize;
    let count = (n * n - 1) / 4;
    let mut parts = Vec::with_capacity(count);
    for i in 0..count as i64 {
        let basis = BasisTuple::new(&field, vec![field.x_pow(2 * i), field.x_pow(2 * i + 1)])?;
        let (alpha, beta) = (basis.elems[0], basis.elems[1]);
        let mut cells = Vec::with_capacity(n * n);
        for stored_row in 0..n {
            let r = (n - 1 - stored_row) as u32;
            for c in 0..p {
                let v = field.add(field.scalar_mul(r, beta)?, field.scalar_mul(c, alpha)?)?;
                cells.push(v.encode());
            }
        }
        parts.push(Layout::new(n, n, cells, true)?);
    }
    Ok(Design::new(n * n, Target::torus(n, n), parts))
}

/// `K_{p^4}` as `(p^4 - 1) / 4` copies of `C_{p^2} x C_{p^2}`.
///
/// Each consecutive block `(x^{4i}, .., x^{4i+3})` spans a difference graph
/// isomorphic to `(C_p x C_p) x (C_p x C_p)`. Splitting each `C_p x C_p`
/// factor into two Hamiltonian cycles `H1, H2` gives the two parts
/// `H1 x H1'` and `H2 x H2'` per block. Each part has `2 p^4` edges and the
/// block graph has `4 p^4`, so each block yields two parts, not four.
pub fn torus2_design(p: u32) -> Result<Design> {
    odd_prime(p)?;
    let field = FieldSpec::new(p, 4, None)?;
    let pair = hamiltonian_pair(p as usize)?;
    let n = p as usize;
    let side = n * n;
    let groups = (side * side - 1) / 8;

    // coordinate vertex a*p + b of C_p x C_p -> a*u + b*w
    let embed = |u: FieldElement, w: FieldElement| -> Result<Vec<FieldElement>> {
        (0..side as u32)
            .map(|v| field.add(field.scalar_mul(v / p, u)?, field.scalar_mul(v % p, w)?))
            .collect()
    };

    let mut parts = Vec::with_capacity(2 * groups);
    for i in 0..groups as i64 {
        let basis = BasisTuple::new(&field, (0..4).map(|j| field.x_pow(4 * i + j)).collect())?;
        let [alpha, beta, gamma, delta] =
            <[FieldElement; 4]>::try_from(basis.elems.as_slice()).expect("four elements");
        let low = embed(alpha, beta)?;
        let high = embed(gamma, delta)?;
        for (rows_cycle, cols_cycle) in [(&pair.first, &pair.first), (&pair.second, &pair.second)] {
            let mut cells = Vec::with_capacity(side * side);
            for &s in rows_cycle.iter() {
                for &t in cols_cycle.iter() {
                    cells.push(field.add(low[s as usize], high[t as usize])?.encode());
                }
            }
            parts.push(Layout::new(side, side, cells, true)?);
        }
    }
    Ok(Design::new(side * side, Target::torus(side, side), parts))
}

/// GF(16) as Z_2[x]/(x^4 + x + 1).
pub fn grid16_field() -> FieldSpec {
    let field = FieldSpec::new(2, 4, None).expect("GF(16) exists");
    assert_eq!(
        field.modulus(),
        &[1, 1, 0, 0, 1],
        "default GF(16) modulus must be x^4 + x + 1"
    );
    field
}

/// `(x^{3i}, x^{13+3i}, x^{11+3i}, x^{3+3i})`, exponents mod 15.
pub fn grid16_basis(field: &FieldSpec, i: i64) -> Result<BasisTuple> {
    BasisTuple::new(
        field,
        [0, 13, 11, 3]
            .iter()
            .map(|&e| field.x_pow(e + 3 * i))
            .collect(),
    )
}

fn grid16_basis_parts(basis: &BasisTuple) -> Result<[FieldElement; 4]> {
    <[FieldElement; 4]>::try_from(basis.elems()).map_err(|_| Error::WrongElementCount {
        expected: 4,
        found: basis.elems().len(),
    })
}

/// The 4x4 path-grid layout of a basis `(alpha, beta, gamma, delta)` of
/// GF(16): column offsets `beta, 0, alpha, alpha+beta` from left to right and
/// row offsets `0, gamma, gamma+delta, delta` from bottom to top.
///
/// Horizontal neighbors in the middle two columns differ by alpha, other
/// horizontal neighbors by beta. Vertical neighbors in the middle two rows
/// differ by delta, other vertical neighbors by gamma. Note that delta
/// separates the middle two rows, not columns.
pub fn grid16_layout(field: &FieldSpec, basis: &BasisTuple) -> Result<Layout> {
    let [alpha, beta, gamma, delta] = grid16_basis_parts(basis)?;
    let col_offsets = [beta, field.zero(), alpha, field.add(alpha, beta)?];
    let row_offsets_bottom_up = [field.zero(), gamma, field.add(gamma, delta)?, delta];
    let mut cells = Vec::with_capacity(16);
    for stored_row in 0..4 {
        let row = row_offsets_bottom_up[3 - stored_row];
        for col in col_offsets {
            cells.push(field.add(col, row)?.encode());
        }
    }
    Layout::new(4, 4, cells, false)
}

/// The difference graph `G(alpha, beta, gamma, delta)` on GF(16): pairs
/// differing by alpha inside `span(alpha, gamma, delta)`, by beta, by gamma,
/// or by delta outside `span(alpha, beta, delta)`.
pub fn g4_edges(field: &FieldSpec, basis: &BasisTuple) -> Result<EdgeSet> {
    let [alpha, beta, gamma, delta] = grid16_basis_parts(basis)?;
    let span_agd = field.span(&[alpha, gamma, delta])?;
    let span_abd = field.span(&[alpha, beta, delta])?;
    let mut edges = EdgeSet::new();
    for v in field.elements() {
        let mut push =
            |d: FieldElement, keep: &dyn Fn(FieldElement, FieldElement) -> bool| -> Result<()> {
                let w = field.add(v, d)?;
                if keep(v, w) {
                    edges.extend(Edge::new(v.encode(), w.encode()));
                }
                Ok(())
            };
        push(alpha, &|a, b| {
            span_agd.contains(&a) && span_agd.contains(&b)
        })?;
        push(beta, &|_, _| true)?;
        push(gamma, &|_, _| true)?;
        push(delta, &|a, b| {
            !span_abd.contains(&a) && !span_abd.contains(&b)
        })?;
    }
    Ok(edges)
}

/// `K_16` as five copies of `P_4 x P_4`. Multiplying every cell of part i by
/// `x^3` gives part i+1 (mod 5).
pub fn grid16_design() -> Design {
    let field = grid16_field();
    let parts = (0..5)
        .map(|i| grid16_basis(&field, i).and_then(|b| grid16_layout(&field, &b)))
        .collect::<Result<Vec<_>>>()
        .expect("the GF(16) bases are valid");
    Design::new(16, Target::path(4, 4), parts)
}

/// Renders each cell as "0", "1" or "x^k", left-aligned in 5-character
/// columns, one blank line between parts.
pub fn render_power_notation(field: &FieldSpec, design: &Design) -> Result<String> {
    let mut grids = Vec::with_capacity(design.parts.len());
    for part in &design.parts {
        let mut lines = Vec::with_capacity(part.rows());
        for r in 0..part.rows() {
            let mut line = String::new();
            for &v in part.row(r) {
                let token = match field.decode(v as u64)? {
                    z if z.is_zero() => "0".to_string(),
                    e => match field.dlog(e)? {
                        0 => "1".to_string(),
                        k => format!("x^{k}"),
                    },
                };
                line.push_str(&format!("{token:<5}"));
            }
            lines.push(line.trim_end().to_string());
        }
        grids.push(lines.join("\n"));
    }
    Ok(grids.join("\n\n") + "\n")
}

/// Walecki's decomposition of `K_n` (n odd) into `(n - 1) / 2` Hamiltonian
/// cycles, each stored as a 1 x n wrapping layout. Vertex `n - 1` is the
/// hub; the zigzag `0, 1, m-1, 2, m-2, ..` over `Z_m` (m = n - 1) is rotated.
pub fn walecki_cycles(n: usize) -> Result<Design> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "Walecki cycles need odd n >= 3, got {n}"
        )));
    }
    let m = n - 1;
    let zig = zigzag(m);
    let parts = (0..m / 2)
        .map(|i| {
            let cells = std::iter::once(m as u32)
                .chain(zig.iter().map(|&z| ((z + i) % m) as u32))
                .collect();
            Layout::new(1, n, cells, true)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Design::new(n, Target::torus(1, n), parts))
}

/// Walecki's decomposition of `K_n` (n even) into `n / 2` Hamiltonian paths,
/// rotations of the zigzag `0, 1, n-1, 2, n-2, ..` over `Z_n`.
pub fn walecki_paths(n: usize) -> Result<Design> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "Walecki paths need even n >= 2, got {n}"
        )));
    }
    let zig = zigzag(n);
    let parts = (0..n / 2)
        .map(|i| {
            Layout::new(
                1,
                n,
                zig.iter().map(|&z| ((z + i) % n) as u32).collect(),
                false,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Design::new(n, Target::path(1, n), parts))
}

fn zigzag(m: usize) -> Vec<usize> {
    (0..m)
        .map(|j| {
            if j % 2 == 1 {
                j.div_ceil(2)
            } else {
                (m - j / 2) % m
            }
        })
        .collect()
}
