use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Chain,
    Square,
    Hexagonal,
    Triangular,
    Cubic,
    Tetrahedral,
    Custom,
}

impl LatticeKind {
    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Chain => "chain",
            LatticeKind::Square => "square",
            LatticeKind::Hexagonal => "hexagonal",
            LatticeKind::Triangular => "triangular",
            LatticeKind::Cubic => "cubic",
            LatticeKind::Tetrahedral => "tetrahedral",
            LatticeKind::Custom => "custom",
        }
    }
}

impl std::str::FromStr for LatticeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "chain" | "1d" => LatticeKind::Chain,
            "square" => LatticeKind::Square,
            "hexagonal" | "hex" | "honeycomb" => LatticeKind::Hexagonal,
            "triangular" => LatticeKind::Triangular,
            "cubic" => LatticeKind::Cubic,
            "tetrahedral" | "diamond" => LatticeKind::Tetrahedral,
            "custom" => LatticeKind::Custom,
            other => return Err(Error::domain(format!("unknown lattice kind {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    #[default]
    Open,
    Periodic,
}

/// Sites and nearest-neighbour bonds of a lattice patch.
///
/// Edges are stored as `(low, high)` pairs in insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    pub kind: LatticeKind,
    pub sites: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default)]
    pub boundary: Boundary,
}

impl Lattice {
    pub fn new(
        kind: LatticeKind,
        sites: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        boundary: Boundary,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (a, b) in edges {
            if a >= sites || b >= sites {
                return Err(Error::Data(format!("edge ({a}, {b}) references a site >= {sites}")));
            }
            if a == b {
                return Err(Error::Data(format!("self-loop on site {a}")));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::Data(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
            out.push(e);
        }
        Ok(Lattice {
            kind,
            sites,
            edges: out,
            boundary,
        })
    }

    /// Re-validates a deserialized lattice.
    pub fn validated(self) -> Result<Self> {
        Lattice::new(self.kind, self.sites, self.edges, self.boundary)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let l: Lattice = serde_json::from_str(text)?;
        l.validated()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("lattice serializes")
    }

    pub fn degree(&self, site: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == site || b == site)
            .count()
    }

    pub fn max_degree(&self) -> usize {
        let mut deg = vec![0usize; self.sites];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let e = (a.min(b), a.max(b));
        self.edges.contains(&e)
    }

    pub fn chain(sites: usize, boundary: Boundary) -> Result<Self> {
        let mut edges: Vec<(usize, usize)> = (1..sites).map(|i| (i - 1, i)).collect();
        if boundary == Boundary::Periodic && sites > 2 {
            edges.push((0, sites - 1));
        }
        Lattice::new(LatticeKind::Chain, sites, edges, boundary)
    }

    pub fn square(width: usize, height: usize, boundary: Boundary) -> Result<Self> {
        let idx = |x: usize, y: usize| y * width + x;
        let mut edges = Vec::new();
        for y in 0..height {
            for x in 0..width {
                if let Some(nx) = step(x, width, boundary) {
                    edges.push((idx(x, y), idx(nx, y)));
                }
                if let Some(ny) = step(y, height, boundary) {
                    edges.push((idx(x, y), idx(x, ny)));
                }
            }
        }
        Lattice::new(LatticeKind::Square, width * height, edges, boundary)
    }

    /// Honeycomb patch in brick-wall form: every horizontal bond plus the
    /// vertical bonds leaving sites with even `x + y`.
    pub fn hexagonal(width: usize, height: usize) -> Result<Self> {
        let idx = |x: usize, y: usize| y * width + x;
        let mut edges = Vec::new();
        for y in 0..height {
            for x in 0..width {
                if x + 1 < width {
                    edges.push((idx(x, y), idx(x + 1, y)));
                }
                if (x + y) % 2 == 0 && y + 1 < height {
                    edges.push((idx(x, y), idx(x, y + 1)));
                }
            }
        }
        Lattice::new(LatticeKind::Hexagonal, width * height, edges, Boundary::Open)
    }

    /// Square grid plus one diagonal per plaquette (coordination six).
    pub fn triangular(width: usize, height: usize, boundary: Boundary) -> Result<Self> {
        let idx = |x: usize, y: usize| y * width + x;
        let mut edges = Vec::new();
        for y in 0..height {
            for x in 0..width {
                let nx = step(x, width, boundary);
                let ny = step(y, height, boundary);
                if let Some(nx) = nx {
                    edges.push((idx(x, y), idx(nx, y)));
                }
                if let Some(ny) = ny {
                    edges.push((idx(x, y), idx(x, ny)));
                }
                if let (Some(nx), Some(ny)) = (nx, ny) {
                    edges.push((idx(x, y), idx(nx, ny)));
                }
            }
        }
        Lattice::new(LatticeKind::Triangular, width * height, edges, boundary)
    }

    pub fn cubic(lx: usize, ly: usize, lz: usize, boundary: Boundary) -> Result<Self> {
        let idx = |x: usize, y: usize, z: usize| (z * ly + y) * lx + x;
        let mut edges = Vec::new();
        for z in 0..lz {
            for y in 0..ly {
                for x in 0..lx {
                    if let Some(nx) = step(x, lx, boundary) {
                        edges.push((idx(x, y, z), idx(nx, y, z)));
                    }
                    if let Some(ny) = step(y, ly, boundary) {
                        edges.push((idx(x, y, z), idx(x, ny, z)));
                    }
                    if let Some(nz) = step(z, lz, boundary) {
                        edges.push((idx(x, y, z), idx(x, y, nz)));
                    }
                }
            }
        }
        Lattice::new(LatticeKind::Cubic, lx * ly * lz, edges, boundary)
    }

    /// Diamond lattice patch: `l^3` unit cells with two sites each; the
    /// A site of cell `r` bonds to the B sites of `r`, `r - e_x`, `r - e_y`
    /// and `r - e_z`.
    pub fn tetrahedral(l: usize) -> Result<Self> {
        let cell = |x: usize, y: usize, z: usize| (z * l + y) * l + x;
        let a = |c: usize| 2 * c;
        let b = |c: usize| 2 * c + 1;
        let mut edges = Vec::new();
        for z in 0..l {
            for y in 0..l {
                for x in 0..l {
                    let c = cell(x, y, z);
                    edges.push((a(c), b(c)));
                    if x > 0 {
                        edges.push((a(c), b(cell(x - 1, y, z))));
                    }
                    if y > 0 {
                        edges.push((a(c), b(cell(x, y - 1, z))));
                    }
                    if z > 0 {
                        edges.push((a(c), b(cell(x, y, z - 1))));
                    }
                }
            }
        }
        Lattice::new(LatticeKind::Tetrahedral, 2 * l * l * l, edges, Boundary::Open)
    }

    /// All-to-all connectivity.
    pub fn complete(sites: usize) -> Result<Self> {
        let edges = (0..sites).flat_map(|i| ((i + 1)..sites).map(move |j| (i, j)));
        Lattice::new(LatticeKind::Custom, sites, edges, Boundary::Open)
    }
}

fn step(i: usize, len: usize, boundary: Boundary) -> Option<usize> {
    if i + 1 < len {
        Some(i + 1)
    } else if boundary == Boundary::Periodic && len > 2 {
        Some(0)
    } else {
        None
    }
}
