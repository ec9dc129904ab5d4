//! Matching decompositions of complete multipartite hypergraphs.
//!
//! Two families are provided. The diagonal family splits K_{n1,…,nk} into
//! `d × N/d` matchings, matching `(i, j)` being the translate of the diagonal
//! `{⟨x*⟩ : x ∈ [n1]}` by `⟨(i, j)⟩`. The refined family splits λK_{n1,…,nk}
//! into `n1^{u−1} × λN′` matchings by pairing a block decomposition of the
//! first `u` parts with shifted diagonals over the remaining parts.
//!
//! Within every matching, edge `x` is the one whose part-1 vertex is `x`.

use std::collections::HashSet;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, PartiteSpec};
use crate::mixed_radix::PairBase;
use crate::ordering::{join, EdgeOrdering};

/// Matchings indexed by `(i, j) ∈ [rows] × [cols]`, each listed in its own order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingFamily {
    rows: usize,
    cols: usize,
    matchings: Vec<Vec<usize>>,
}

impl MatchingFamily {
    pub fn new(rows: usize, cols: usize, matchings: Vec<Vec<usize>>) -> Result<Self> {
        if matchings.len() != rows * cols {
            return Err(Error::Config(format!(
                "{} matchings do not fill a {rows} x {cols} index domain",
                matchings.len()
            )));
        }
        Ok(MatchingFamily {
            rows,
            cols,
            matchings,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.matchings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matchings.is_empty()
    }

    /// Edge ids of matching `(i, j)` in order.
    pub fn matching(&self, i: usize, j: usize) -> &[usize] {
        &self.matchings[i * self.cols + j]
    }

    pub fn ordering(&self, i: usize, j: usize) -> EdgeOrdering {
        EdgeOrdering::new(self.matching(i, j).to_vec()).expect("matchings hold distinct edges")
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &[usize])> {
        self.matchings
            .iter()
            .enumerate()
            .map(|(idx, m)| ((idx / self.cols, idx % self.cols), m.as_slice()))
    }

    /// Concatenation of all matchings with `(i, j)` placed at block `position(i, j)`.
    pub fn schedule(
        &self,
        mut position: impl FnMut(usize, usize) -> Result<usize>,
    ) -> Result<EdgeOrdering> {
        let mut blocks: Vec<Option<EdgeOrdering>> = vec![None; self.len()];
        for ((i, j), _) in self.iter() {
            let p = position(i, j)?;
            let slot = blocks.get_mut(p).ok_or(Error::OutOfRange {
                what: "block position",
                value: p,
                bound: self.len(),
            })?;
            if slot.replace(self.ordering(i, j)).is_some() {
                return Err(Error::Composition(format!(
                    "two matchings scheduled at block {p}"
                )));
            }
        }
        let blocks: Vec<EdgeOrdering> = blocks.into_iter().map(Option::unwrap).collect();
        join(&blocks)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family serialization cannot fail")
    }
}

fn tuple_edge(spec: &PartiteSpec, tuple: &[usize], copy: usize) -> usize {
    spec.edge_id(tuple, copy)
}

/// The diagonal family of K_{n1,…,nk} for `moduli = (n1, m2, …, mk)` with
/// `m_i | n_i` and `d = m2·…·mk`.
pub fn diagonal_family(spec: &PartiteSpec, d: usize, moduli: &[usize]) -> Result<MatchingFamily> {
    if spec.lambda() != 1 {
        return Err(Error::Config(format!(
            "the diagonal family is defined for λ = 1, got λ = {}",
            spec.lambda()
        )));
    }
    if moduli.first() != Some(&spec.n1()) {
        return Err(Error::Config(format!(
            "first modulus must equal n1 = {}, got {:?}",
            spec.n1(),
            moduli
        )));
    }
    let base = PairBase::new(spec.sizes(), moduli)?;
    if base.moduli().modulus() != d {
        return Err(Error::Config(format!(
            "moduli {:?} multiply to {} rather than d = {d}",
            moduli,
            base.moduli().modulus()
        )));
    }
    let cols = spec.big_n() / d;
    let diagonals = (0..spec.n1())
        .map(|x| base.diagonal(x))
        .collect::<Result<Vec<_>>>()?;
    let mut matchings = Vec::with_capacity(spec.big_n());
    for i in 0..d {
        for j in 0..cols {
            let shift = base.index_pair(i, j)?;
            matchings.push(
                diagonals
                    .iter()
                    .map(|x| tuple_edge(spec, &base.to_tuple(&base.add(x, &shift)), 0))
                    .collect(),
            );
        }
    }
    MatchingFamily::new(d, cols, matchings)
}

/// Moduli `(n1, m2, …, mk)` with `m_i | n_i` and product `d`, taking
/// `m_i = gcd(remaining, n_i)` part by part; `None` when `d ∤ N`.
pub fn choose_moduli(sizes: &[usize], d: usize) -> Option<Vec<usize>> {
    let mut remaining = d;
    let mut moduli = vec![*sizes.first()?];
    for &n in &sizes[1..] {
        let m = remaining.gcd(&n);
        moduli.push(m);
        remaining /= m;
    }
    (remaining == 1).then_some(moduli)
}

/// Every admissible moduli vector for `d`, in lexicographic order.
pub fn moduli_choices(sizes: &[usize], d: usize) -> Vec<Vec<usize>> {
    fn go(sizes: &[usize], remaining: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some((&n, rest)) = sizes.split_first() else {
            if remaining == 1 {
                out.push(acc.clone());
            }
            return;
        };
        for m in (1..=n).filter(|m| n % m == 0 && remaining.is_multiple_of(*m)) {
            acc.push(m);
            go(rest, remaining / m, acc, out);
            acc.pop();
        }
    }
    let Some(&n1) = sizes.first() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    go(&sizes[1..], d, &mut vec![n1], &mut out);
    out
}

/// An ordering of K_{n1,…,n1} (`u` parts) whose consecutive `n1`-blocks are
/// perfect matchings: the diagonal family with every modulus `n1`, block `i`
/// in increasing order of `i`.
pub fn base_ordering(n1: usize, u: usize) -> Result<EdgeOrdering> {
    let spec = PartiteSpec::new(1, vec![n1; u])?;
    let fam = diagonal_family(&spec, spec.big_n(), &vec![n1; u])?;
    fam.schedule(|i, _| Ok(i))
}

/// The refined family of λK_{n1,…,nk} over `[n1^{u−1}] × [λN′]`.
///
/// Matching `(i, j)` takes its first `u` coordinates from block `i` of
/// [`base_ordering`] and the rest from the diagonal over
/// `(n1, n_{u+1}, …, nk)` shifted by `−⟨j mod N′⟩`; it uses copy `⌊j/N′⌋`.
pub fn refined_family(spec: &PartiteSpec) -> Result<MatchingFamily> {
    let (n1, u, k) = (spec.n1(), spec.u(), spec.k());
    let head = base_ordering(n1, u)?;
    let head_spec = PartiteSpec::new(1, vec![n1; u])?;
    let mut bar_sizes = vec![n1];
    bar_sizes.extend_from_slice(&spec.sizes()[u..]);
    let bar = PairBase::new(&bar_sizes, &bar_sizes)?;
    let n_prime = spec.n_prime();
    let rows = spec.head_power();
    let cols = spec.lambda() * n_prime;

    let mut matchings = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            let shift = bar.index_pair(j % n_prime, 0)?;
            let copy = j / n_prime;
            let mut m = Vec::with_capacity(n1);
            for x in 0..n1 {
                let (head_tuple, _) = head_spec.edge_tuple(head.edge_at(i * n1 + x));
                let tail = bar.to_tuple(&bar.sub(&bar.diagonal(x)?, &shift));
                debug_assert_eq!(head_tuple[0], tail[0]);
                let mut tuple = head_tuple;
                tuple.extend_from_slice(&tail[1..]);
                debug_assert_eq!(tuple.len(), k);
                m.push(tuple_edge(spec, &tuple, copy));
            }
            matchings.push(m);
        }
    }
    MatchingFamily::new(rows, cols, matchings)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    /// `(i, j, flat vertex)` for every vertex hit twice inside a matching.
    pub shared_vertices: Vec<(usize, usize, usize)>,
    /// `(i, j, size)` for matchings whose size differs from the smallest part.
    pub wrong_sizes: Vec<(usize, usize, usize)>,
    pub duplicated_edges: Vec<usize>,
    pub missing_edges: Vec<usize>,
    pub unknown_edges: Vec<usize>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.shared_vertices.is_empty()
            && self.wrong_sizes.is_empty()
            && self.duplicated_edges.is_empty()
            && self.missing_edges.is_empty()
            && self.unknown_edges.is_empty()
    }
}

/// Checks that `fam` is a decomposition of `h` into matchings of uniform size
/// equal to the smallest part.
pub fn verify_family(h: &Hypergraph, fam: &MatchingFamily) -> FamilyReport {
    let mut report = FamilyReport::default();
    let expected = h.parts().iter().copied().min().unwrap_or(0);
    let eps = h.edge_count();
    let mut uses = vec![0usize; eps];
    for ((i, j), m) in fam.iter() {
        if m.len() != expected {
            report.wrong_sizes.push((i, j, m.len()));
        }
        let mut seen = HashSet::new();
        for &e in m {
            if e >= eps {
                report.unknown_edges.push(e);
                continue;
            }
            uses[e] += 1;
            for &v in h.flat_vertices(e) {
                if !seen.insert(v) {
                    report.shared_vertices.push((i, j, v));
                }
            }
        }
    }
    for (e, &n) in uses.iter().enumerate() {
        match n {
            0 => report.missing_edges.push(e),
            1 => {}
            _ => report.duplicated_edges.push(e),
        }
    }
    report
}
