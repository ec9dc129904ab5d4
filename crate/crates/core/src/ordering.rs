//! Edge orderings, their composition, and window-based evaluation of
//! `ms_r(ℓ)` / `cms_r(ℓ)`.
//!
//! An [`EdgeOrdering`] lists edge ids by position. Windows of length `s`
//! follow the extended convention: with `a = ⌊s/ε⌋`, a non-cyclic window may
//! start at any position `p ≤ (a+1)ε − s`, and positions are read modulo `ε`
//! so windows longer than the edge count repeat edges. Cyclic windows may
//! start anywhere in `[ε]`.

use std::collections::HashSet;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{copy_id, Hypergraph};

/// A sequence of distinct edge ids; position `p` holds the edge labelled `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawOrdering")]
pub struct EdgeOrdering {
    labels: Vec<usize>,
}

#[derive(Deserialize)]
struct RawOrdering {
    labels: Vec<usize>,
}

impl TryFrom<RawOrdering> for EdgeOrdering {
    type Error = Error;

    fn try_from(raw: RawOrdering) -> Result<Self> {
        EdgeOrdering::new(raw.labels)
    }
}

impl EdgeOrdering {
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(labels.len());
        for &id in &labels {
            if !seen.insert(id) {
                return Err(Error::InvalidOrdering(format!("edge {id} appears twice")));
            }
        }
        Ok(EdgeOrdering { labels })
    }

    /// The ordering `0, 1, …, ε−1`.
    pub fn identity(eps: usize) -> Self {
        EdgeOrdering {
            labels: (0..eps).collect(),
        }
    }

    pub fn empty() -> Self {
        EdgeOrdering { labels: Vec::new() }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edge_at(&self, position: usize) -> usize {
        self.labels[position]
    }

    /// Label (position) of every edge id in `0..eps`; `None` for ids not present.
    pub fn positions(&self, eps: usize) -> Vec<Option<usize>> {
        let mut pos = vec![None; eps];
        for (p, &id) in self.labels.iter().enumerate() {
            if id < eps {
                pos[id] = Some(p);
            }
        }
        pos
    }

    /// Checks that this is a bijection from the edges of `h` onto `[ε]`.
    pub fn validate_for(&self, h: &Hypergraph) -> Result<()> {
        let eps = h.edge_count();
        if self.labels.len() != eps {
            return Err(Error::InvalidOrdering(format!(
                "ordering has {} labels but the hypergraph has {} edges",
                self.labels.len(),
                eps
            )));
        }
        if let Some(&id) = self.labels.iter().find(|&&id| id >= eps) {
            return Err(Error::InvalidOrdering(format!(
                "edge id {id} does not exist (ε = {eps})"
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ordering serialization cannot fail")
    }
}

/// ℓ0 ∨ … ∨ ℓ(a−1): concatenation; fails if two orderings share an edge.
pub fn join(orderings: &[EdgeOrdering]) -> Result<EdgeOrdering> {
    let mut labels = Vec::with_capacity(orderings.iter().map(EdgeOrdering::len).sum());
    let mut seen = HashSet::new();
    for (block, o) in orderings.iter().enumerate() {
        for &id in &o.labels {
            if !seen.insert(id) {
                return Err(Error::Composition(format!(
                    "edge {id} of block {block} already occurs in an earlier block"
                )));
            }
            labels.push(id);
        }
    }
    Ok(EdgeOrdering { labels })
}

/// a·ℓ over a·H, where copy `c` of edge `e` has id `e·a + c` as produced by
/// [`crate::hypergraph::multiply`]. Repetition `c` of the sequence uses copy `c`.
pub fn replicate(l: &EdgeOrdering, a: usize) -> EdgeOrdering {
    let labels = (0..a)
        .flat_map(|c| l.labels.iter().map(move |&e| copy_id(e, c, a)))
        .collect();
    EdgeOrdering { labels }
}

/// ℓ ∨_s ℓ′: the last `s−1` edges of `l1` followed by the first `s−1` of `l2`.
pub fn join_boundary(l1: &EdgeOrdering, l2: &EdgeOrdering, s: usize) -> Result<EdgeOrdering> {
    let take = s.saturating_sub(1);
    let shortest = l1.len().min(l2.len());
    if take > shortest {
        return Err(Error::OutOfRange {
            what: "s - 1",
            value: take,
            bound: shortest + 1,
        });
    }
    let mut labels = l1.labels[l1.len() - take..].to_vec();
    labels.extend_from_slice(&l2.labels[..take]);
    join(&[EdgeOrdering { labels }])
}

/// Legal start positions for windows of length `s` over `eps` edges.
pub fn window_starts(eps: usize, s: usize, cyclic: bool) -> Option<RangeInclusive<usize>> {
    if eps == 0 || s == 0 {
        return None;
    }
    if cyclic {
        return Some(0..=eps - 1);
    }
    let a = s / eps;
    let last = ((a + 1) * eps - s).min(eps - 1);
    Some(0..=last)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub start: usize,
    pub length: usize,
    pub cyclic: bool,
    /// Edge ids in window order; repeats when `length > ε`.
    pub edges: Vec<usize>,
}

/// Every legal window of length `s`, in order of start position.
pub fn windows(l: &EdgeOrdering, s: usize, cyclic: bool) -> impl Iterator<Item = Window> + '_ {
    let eps = l.len();
    window_starts(eps, s, cyclic)
        .into_iter()
        .flatten()
        .map(move |start| Window {
            start,
            length: s,
            cyclic,
            edges: (0..s).map(|i| l.labels[(start + i) % eps]).collect(),
        })
}

/// True iff the window's edge multiset gives every vertex degree at most `r`.
pub fn check_window_degree(h: &Hypergraph, w: &Window, r: usize) -> bool {
    let mut deg = vec![0usize; h.vertex_count()];
    for &e in &w.edges {
        for &v in h.flat_vertices(e) {
            deg[v] += 1;
            if deg[v] > r {
                return false;
            }
        }
    }
    true
}

/// First window that breaks the degree bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub start: usize,
    /// Flat vertex index.
    pub vertex: usize,
    pub degree: usize,
}

/// Scans all legal windows of length `s` with a sliding degree counter and
/// returns the first one (by start) in which some vertex exceeds degree `r`.
pub fn first_violation(
    h: &Hypergraph,
    l: &EdgeOrdering,
    r: usize,
    s: usize,
    cyclic: bool,
) -> Option<Violation> {
    let eps = l.len();
    let starts = window_starts(eps, s, cyclic)?;
    let mut deg = vec![0usize; h.vertex_count()];
    let edge_at = |p: usize| l.labels[p % eps];

    let first = *starts.start();
    for i in 0..s {
        for &v in h.flat_vertices(edge_at(first + i)) {
            deg[v] += 1;
        }
    }
    if let Some((v, &d)) = deg.iter().enumerate().find(|(_, &d)| d > r) {
        return Some(Violation {
            start: first,
            vertex: v,
            degree: d,
        });
    }
    for start in (first + 1)..=*starts.end() {
        for &v in h.flat_vertices(edge_at(start - 1)) {
            deg[v] -= 1;
        }
        // Only the vertices of the entering edge can newly exceed r.
        for &v in h.flat_vertices(edge_at(start + s - 1)) {
            deg[v] += 1;
        }
        if let Some(&v) = h
            .flat_vertices(edge_at(start + s - 1))
            .iter()
            .find(|&&v| deg[v] > r)
        {
            return Some(Violation {
                start,
                vertex: v,
                degree: deg[v],
            });
        }
    }
    None
}

/// ms_r(ℓ) (or cms_r(ℓ) when `cyclic`): the largest `s` for which every legal
/// window of length `s` has maximum degree at most `r`.
///
/// `l` must be a bijection onto the edges of `h`. Lengths are tried in
/// increasing order; passing is monotone in `s` since every `(s−1)`-window is
/// a prefix or suffix of some legal `s`-window. Terminates by `(r+1)·ε`.
pub fn eval_ms(h: &Hypergraph, l: &EdgeOrdering, r: usize, cyclic: bool) -> usize {
    let eps = l.len();
    if eps == 0 {
        return 0;
    }
    let cap = (r + 1) * eps;
    let mut s = 0;
    while s < cap && first_violation(h, l, r, s + 1, cyclic).is_none() {
        s += 1;
    }
    s
}

/// ms(ℓ, ℓ′) for r = 1: the largest `s` such that every `s` consecutive edges
/// of ℓ ∨_s ℓ′ form a matching. Both inputs are orderings of edge-disjoint
/// sub-hypergraphs of `h`.
pub fn ms_pair(h: &Hypergraph, l1: &EdgeOrdering, l2: &EdgeOrdering) -> usize {
    let max_s = l1.len().min(l2.len()) + 1;
    let mut best = 1;
    for s in 2..=max_s {
        let boundary = join_boundary(l1, l2, s).expect("s - 1 never exceeds either length here");
        // Only plain windows: the boundary has 2(s−1) ≥ s edges.
        let seq = boundary.labels();
        let ok = seq.windows(s).all(|w| is_matching(h, w));
        if ok {
            best = s;
        }
    }
    best
}

/// True iff no two of the given edges share a vertex.
pub fn is_matching(h: &Hypergraph, edges: &[usize]) -> bool {
    let mut used = HashSet::new();
    edges
        .iter()
        .flat_map(|&e| h.flat_vertices(e))
        .all(|&v| used.insert(v))
}
