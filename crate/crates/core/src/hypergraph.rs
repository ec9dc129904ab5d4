//! Hypergraphs with parallel edges and the complete multipartite builders.
//!
//! Edges are identified by their id, never by their vertex set: two edges with
//! the same vertices are parallel but distinct. Vertices live in declared parts
//! and are addressed as `(part, index)` pairs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Vertex {
    pub part: usize,
    pub index: usize,
}

impl Vertex {
    pub fn new(part: usize, index: usize) -> Self {
        Vertex { part, index }
    }
}

impl From<(usize, usize)> for Vertex {
    fn from((part, index): (usize, usize)) -> Self {
        Vertex { part, index }
    }
}

impl From<Vertex> for (usize, usize) {
    fn from(v: Vertex) -> Self {
        (v.part, v.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: usize,
    pub vertices: Vec<Vertex>,
}

#[derive(Deserialize, Serialize)]
struct RawHypergraph {
    parts: Vec<usize>,
    edges: Vec<Edge>,
}

/// A finite hypergraph whose edge ids are exactly `0..ε`.
///
/// Immutable after construction. Each vertex also has a flat index
/// (`offset[part] + index`) used by the window and search code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct Hypergraph {
    parts: Vec<usize>,
    offsets: Vec<usize>,
    edges: Vec<Edge>,
    incidence: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::new(raw.parts, raw.edges)
    }
}

impl From<Hypergraph> for RawHypergraph {
    fn from(h: Hypergraph) -> Self {
        RawHypergraph {
            parts: h.parts,
            edges: h.edges,
        }
    }
}

impl Hypergraph {
    /// Validates and builds a hypergraph. Edges may be given in any order but
    /// their ids must be a permutation of `0..edges.len()`.
    pub fn new(parts: Vec<usize>, mut edges: Vec<Edge>) -> Result<Self> {
        let eps = edges.len();
        let mut seen = vec![false; eps];
        for e in &edges {
            if e.id >= eps {
                return Err(Error::InvalidHypergraph(format!(
                    "edge id {} is not in 0..{}",
                    e.id, eps
                )));
            }
            if std::mem::replace(&mut seen[e.id], true) {
                return Err(Error::InvalidHypergraph(format!(
                    "duplicate edge id {}",
                    e.id
                )));
            }
        }
        edges.sort_by_key(|e| e.id);

        let mut offsets = Vec::with_capacity(parts.len());
        let mut total = 0usize;
        for &n in &parts {
            offsets.push(total);
            total += n;
        }

        let mut incidence = Vec::with_capacity(eps);
        for e in &mut edges {
            if e.vertices.is_empty() {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {} has no vertices",
                    e.id
                )));
            }
            for v in &e.vertices {
                if v.part >= parts.len() || v.index >= parts[v.part] {
                    return Err(Error::InvalidHypergraph(format!(
                        "edge {} uses vertex ({}, {}) outside parts {:?}",
                        e.id, v.part, v.index, parts
                    )));
                }
            }
            e.vertices.sort();
            if e.vertices.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {} repeats a vertex",
                    e.id
                )));
            }
            incidence.push(
                e.vertices
                    .iter()
                    .map(|v| offsets[v.part] + v.index)
                    .collect(),
            );
        }

        Ok(Hypergraph {
            parts,
            offsets,
            edges,
            incidence,
        })
    }

    /// Builds a hypergraph from vertex sets, assigning ids in list order.
    pub fn from_vertex_sets(parts: Vec<usize>, sets: Vec<Vec<Vertex>>) -> Result<Self> {
        let edges = sets
            .into_iter()
            .enumerate()
            .map(|(id, vertices)| Edge { id, vertices })
            .collect();
        Hypergraph::new(parts, edges)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Flat vertex indices of edge `id`, sorted.
    pub fn flat_vertices(&self, id: usize) -> &[usize] {
        &self.incidence[id]
    }

    pub fn flat_index(&self, v: Vertex) -> usize {
        self.offsets[v.part] + v.index
    }

    pub fn vertex_at(&self, flat: usize) -> Vertex {
        // Last part whose offset is <= flat; empty parts share offsets with their successor.
        let part = self.offsets.partition_point(|&o| o <= flat) - 1;
        Vertex::new(part, flat - self.offsets[part])
    }

    /// Degree of every vertex by flat index; parallel edges each count.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for inc in &self.incidence {
            for &v in inc {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Δ(H); 0 for a hypergraph without edges.
    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("hypergraph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Result of [`multiply`]: the multiplied hypergraph plus provenance of each new edge.
#[derive(Clone, Debug)]
pub struct Multiplied {
    pub hypergraph: Hypergraph,
    /// `copy_map[id] = (original edge id, copy index)`.
    pub copy_map: Vec<(usize, usize)>,
}

/// Copy id of copy `c` of edge `e` in `multiply(h, lambda)`.
pub fn copy_id(edge: usize, copy: usize, lambda: usize) -> usize {
    edge * lambda + copy
}

/// λH: every edge replaced by `lambda` parallel copies. Copy `c` of edge `e`
/// receives id `e * lambda + c`.
pub fn multiply(h: &Hypergraph, lambda: usize) -> Result<Multiplied> {
    if lambda == 0 {
        return Err(Error::Parameter("multiplicity must be at least 1".into()));
    }
    let mut edges = Vec::with_capacity(h.edge_count() * lambda);
    let mut copy_map = Vec::with_capacity(h.edge_count() * lambda);
    for e in h.edges() {
        for c in 0..lambda {
            edges.push(Edge {
                id: copy_id(e.id, c, lambda),
                vertices: e.vertices.clone(),
            });
            copy_map.push((e.id, c));
        }
    }
    Ok(Multiplied {
        hypergraph: Hypergraph::new(h.parts.clone(), edges)?,
        copy_map,
    })
}

pub fn max_degree(h: &Hypergraph) -> usize {
    h.max_degree()
}

/// The parameters `(λ; n1 ≤ … ≤ nk)` of λK_{n1,…,nk}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartiteSpec {
    lambda: usize,
    sizes: Vec<usize>,
}

impl PartiteSpec {
    pub fn new(lambda: usize, sizes: Vec<usize>) -> Result<Self> {
        if lambda == 0 {
            return Err(Error::InvalidSpec("lambda must be positive".into()));
        }
        if sizes.is_empty() {
            return Err(Error::InvalidSpec("at least one part is required".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidSpec("part sizes must be positive".into()));
        }
        if sizes.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidSpec(format!(
                "part sizes must be nondecreasing, got {:?}",
                sizes
            )));
        }
        let count = sizes
            .iter()
            .try_fold(lambda, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidSpec("edge count overflows".into()))?;
        if count > u32::MAX as usize {
            return Err(Error::InvalidSpec(format!(
                "edge count {count} is too large"
            )));
        }
        Ok(PartiteSpec { lambda, sizes })
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn n1(&self) -> usize {
        self.sizes[0]
    }

    /// Number of parts whose size equals n1 (the largest u with n_u = n_1).
    pub fn u(&self) -> usize {
        self.sizes
            .iter()
            .take_while(|&&n| n == self.sizes[0])
            .count()
    }

    /// N = n2 · … · nk.
    pub fn big_n(&self) -> usize {
        self.sizes[1..].iter().product()
    }

    /// N′ = n_{u+1} · … · nk.
    pub fn n_prime(&self) -> usize {
        self.sizes[self.u()..].iter().product()
    }

    /// n1^(u−1).
    pub fn head_power(&self) -> usize {
        self.n1().pow(self.u() as u32 - 1)
    }

    /// λN, which is also Δ(λK).
    pub fn lambda_n(&self) -> usize {
        self.lambda * self.big_n()
    }

    pub fn edge_count(&self) -> usize {
        self.lambda * self.big_n() * self.n1()
    }

    /// Same sizes with λ = 1.
    pub fn simple(&self) -> PartiteSpec {
        PartiteSpec {
            lambda: 1,
            sizes: self.sizes.clone(),
        }
    }

    /// Lexicographic rank of a one-vertex-per-part tuple.
    pub fn tuple_rank(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.k());
        tuple
            .iter()
            .zip(&self.sizes)
            .fold(0, |acc, (&x, &n)| acc * n + x)
    }

    /// Id of copy `copy` of the edge with vertex tuple `tuple` in the canonical builder.
    pub fn edge_id(&self, tuple: &[usize], copy: usize) -> usize {
        self.tuple_rank(tuple) * self.lambda + copy
    }

    /// Inverse of [`PartiteSpec::edge_id`].
    pub fn edge_tuple(&self, id: usize) -> (Vec<usize>, usize) {
        let copy = id % self.lambda;
        let mut rank = id / self.lambda;
        let mut tuple = vec![0; self.k()];
        for (slot, &n) in tuple.iter_mut().zip(&self.sizes).rev() {
            *slot = rank % n;
            rank /= n;
        }
        (tuple, copy)
    }
}

/// λK_{n1,…,nk}. Ids follow the lexicographic order of (vertex tuple, copy index).
pub fn build_complete_multipartite(spec: &PartiteSpec) -> Hypergraph {
    let k = spec.k();
    let mut edges = Vec::with_capacity(spec.edge_count());
    let mut tuple = vec![0usize; k];
    loop {
        for c in 0..spec.lambda() {
            edges.push(Edge {
                id: edges.len(),
                vertices: tuple
                    .iter()
                    .enumerate()
                    .map(|(p, &x)| Vertex::new(p, x))
                    .collect(),
            });
            debug_assert_eq!(edges.len() - 1, spec.edge_id(&tuple, c));
        }
        // Odometer increment, last coordinate fastest.
        let mut pos = k;
        loop {
            if pos == 0 {
                return Hypergraph::new(spec.sizes().to_vec(), edges)
                    .expect("complete multipartite builder produces a valid hypergraph");
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < spec.sizes()[pos] {
                break;
            }
            tuple[pos] = 0;
        }
    }
}
