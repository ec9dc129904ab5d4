//! Exact ms_r / cms_r for small hypergraphs by branch-and-bound search.
//!
//! The decision procedure [`exists_ordering`] asks whether some ordering has
//! every legal window of length `s` within degree `r`. Writing `s = aε + b`
//! with `b < ε`, a legal window is `a` full copies of the edge set plus a
//! length-`b` window at the same start (non-wrapping in the non-cyclic case),
//! so the search only has to place edges so that every length-`b` window gives
//! vertex `v` at most `r − a·deg(v)`.
//!
//! Edges with identical vertex sets are interchangeable and are branched on
//! as one class. In cyclic mode the first position is pinned to class 0,
//! since every rotation of a valid cyclic ordering is valid.

use std::collections::{BTreeMap, HashSet};
use std::time::{Duration, Instant};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::ordering::{eval_ms, first_violation, EdgeOrdering};

const MEMO_LIMIT: usize = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    max_nodes: u64,
    max_time: Duration,
}

impl SearchBudget {
    pub fn new(max_nodes: u64, max_time: Duration) -> Result<Self> {
        if max_nodes == 0 || max_time.is_zero() {
            return Err(Error::Parameter(
                "search budget limits must be positive".into(),
            ));
        }
        Ok(SearchBudget {
            max_nodes,
            max_time,
        })
    }

    /// Time-limited budget with no node limit.
    pub fn from_millis(ms: u64) -> Result<Self> {
        Self::new(u64::MAX, Duration::from_millis(ms))
    }

    pub fn max_nodes(&self) -> u64 {
        self.max_nodes
    }

    pub fn max_time(&self) -> Duration {
        self.max_time
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: u64::MAX,
            max_time: Duration::from_secs(60),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes(EdgeOrdering),
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionReport {
    pub decision: Decision,
    pub nodes: u64,
}

/// Result of [`exact_ms`]; `ms` is `None` when the budget ran out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub ms: Option<usize>,
    pub witness: Option<EdgeOrdering>,
    pub nodes: u64,
}

impl OracleReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("oracle report serialization cannot fail")
    }
}

impl Serialize for OracleReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("OracleReport", 3)?;
        match self.ms {
            Some(ms) => st.serialize_field("ms", &ms)?,
            None => st.serialize_field("ms", "unknown")?,
        }
        st.serialize_field("witness", &self.witness)?;
        st.serialize_field("nodes", &self.nodes)?;
        st.end()
    }
}

struct Tracker {
    started: Instant,
    budget: SearchBudget,
    nodes: u64,
    exhausted: bool,
}

impl Tracker {
    fn new(budget: SearchBudget) -> Self {
        Tracker {
            started: Instant::now(),
            budget,
            nodes: 0,
            exhausted: false,
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes >= self.budget.max_nodes
            || (self.nodes.is_multiple_of(1024) && self.started.elapsed() >= self.budget.max_time)
        {
            self.exhausted = true;
        }
        !self.exhausted
    }
}

/// A vertex set shared by one or more parallel edges.
struct Class {
    vertices: Vec<usize>,
    members: Vec<usize>,
}

/// A group of vertices every edge meets at least `need` times.
struct PartCover {
    vertices: Vec<usize>,
    need: usize,
}

enum Outcome {
    Found,
    Exhausted,
    Failed,
}

struct Search<'a> {
    eps: usize,
    b: usize,
    cyclic: bool,
    nv: usize,
    classes: Vec<Class>,
    covers: Vec<PartCover>,
    cap: Vec<usize>,
    remaining: Vec<usize>,
    rem_deg: Vec<usize>,
    /// Row `p` holds per-vertex counts over positions `[0, p)`.
    prefix: Vec<u32>,
    seq: Vec<usize>,
    failed: HashSet<Vec<u32>>,
    tracker: &'a mut Tracker,
}

impl Search<'_> {
    fn count(&self, v: usize, lo: usize, hi: usize) -> usize {
        (self.prefix[hi * self.nv + v] - self.prefix[lo * self.nv + v]) as usize
    }

    fn push(&mut self, c: usize) -> bool {
        let p = self.seq.len();
        let nv = self.nv;
        let (row, next) = self.prefix.split_at_mut((p + 1) * nv);
        next[..nv].copy_from_slice(&row[p * nv..]);
        for &v in &self.classes[c].vertices {
            next[v] += 1;
        }
        self.seq.push(c);
        self.remaining[c] -= 1;
        for &v in &self.classes[c].vertices {
            self.rem_deg[v] -= 1;
        }
        self.placement_ok(c, p)
    }

    fn pop(&mut self) {
        let c = self.seq.pop().expect("pop after push");
        self.remaining[c] += 1;
        for &v in &self.classes[c].vertices {
            self.rem_deg[v] += 1;
        }
    }

    /// Windows that gained position `p` stay within capacity.
    fn placement_ok(&self, c: usize, p: usize) -> bool {
        let (b, eps) = (self.b, self.eps);
        let lo = (p + 1).saturating_sub(b);
        for &v in &self.classes[c].vertices {
            if self.count(v, lo, p + 1) > self.cap[v] {
                return false;
            }
            if self.cyclic {
                for st in (eps - b + 1).max(1)..=p {
                    let head = self.count(v, 0, st + b - eps);
                    if self.count(v, st, p + 1) + head > self.cap[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Necessary conditions on the unfilled suffix.
    fn bounds_ok(&self) -> bool {
        let (b, eps) = (self.b, self.eps);
        let filled = self.seq.len();
        let left = eps - filled;
        for v in 0..self.nv {
            let cap = self.cap[v].min(b);
            let room = (left / b) * cap + cap.min(left % b);
            if self.rem_deg[v] > room {
                return false;
            }
        }
        let first = (filled + 1).saturating_sub(b);
        let last = filled.min(eps - b);
        for w0 in first..=last {
            let unfilled = w0 + b - filled;
            for cover in &self.covers {
                let slack: usize = cover
                    .vertices
                    .iter()
                    .map(|&v| {
                        let used = self.count(v, w0, filled.max(w0));
                        self.cap[v].saturating_sub(used).min(self.rem_deg[v])
                    })
                    .sum();
                if slack < cover.need * unfilled {
                    return false;
                }
            }
        }
        true
    }

    fn memo_key(&self) -> Vec<u32> {
        let filled = self.seq.len();
        let keep = filled.min(self.b - 1);
        let mut key: Vec<u32> = self.remaining.iter().map(|&x| x as u32).collect();
        key.push(u32::MAX);
        key.extend(self.seq[filled - keep..].iter().map(|&c| c as u32));
        if self.cyclic {
            key.push(u32::MAX);
            key.extend(self.seq[..keep].iter().map(|&c| c as u32));
        }
        key
    }

    fn dfs(&mut self) -> Outcome {
        if self.seq.len() == self.eps {
            return Outcome::Found;
        }
        if !self.tracker.tick() {
            return Outcome::Exhausted;
        }
        let key = self.memo_key();
        if self.failed.contains(&key) {
            return Outcome::Failed;
        }
        let candidates: Vec<usize> = if self.cyclic && self.seq.is_empty() {
            vec![0]
        } else {
            (0..self.classes.len())
                .filter(|&c| self.remaining[c] > 0)
                .collect()
        };
        for c in candidates {
            let ok = self.push(c) && self.bounds_ok();
            if ok {
                match self.dfs() {
                    Outcome::Failed => {}
                    done => {
                        if matches!(done, Outcome::Exhausted) {
                            self.pop();
                        }
                        return done;
                    }
                }
            }
            self.pop();
        }
        if self.failed.len() < MEMO_LIMIT {
            self.failed.insert(key);
        }
        Outcome::Failed
    }

    fn witness(&self) -> EdgeOrdering {
        let mut next = vec![0usize; self.classes.len()];
        let labels = self
            .seq
            .iter()
            .map(|&c| {
                let id = self.classes[c].members[next[c]];
                next[c] += 1;
                id
            })
            .collect();
        EdgeOrdering::new(labels).expect("each member is used once")
    }
}

fn classes_of(h: &Hypergraph) -> Vec<Class> {
    let mut by_set: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for e in h.edges() {
        by_set
            .entry(h.flat_vertices(e.id).to_vec())
            .or_default()
            .push(e.id);
    }
    let mut classes: Vec<Class> = by_set
        .into_iter()
        .map(|(vertices, members)| Class { vertices, members })
        .collect();
    classes.sort_by_key(|c| c.members[0]);
    classes
}

fn covers_of(h: &Hypergraph) -> Vec<PartCover> {
    let mut offset = 0;
    let mut covers = Vec::new();
    for &size in h.parts() {
        let range = offset..offset + size;
        let need = h
            .edges()
            .iter()
            .map(|e| {
                h.flat_vertices(e.id)
                    .iter()
                    .filter(|v| range.contains(v))
                    .count()
            })
            .min()
            .unwrap_or(0);
        if need > 0 {
            covers.push(PartCover {
                vertices: range.collect(),
                need,
            });
        }
        offset += size;
    }
    covers
}

fn decide(
    h: &Hypergraph,
    r: usize,
    s: usize,
    cyclic: bool,
    tracker: &mut Tracker,
) -> Result<Decision> {
    if r == 0 || s == 0 {
        return Err(Error::Parameter(format!(
            "oracle needs r >= 1 and s >= 1, got r = {r}, s = {s}"
        )));
    }
    let eps = h.edge_count();
    if eps == 0 {
        return Ok(Decision::No);
    }
    let (a, b) = (s / eps, s % eps);
    let degrees = h.degrees();
    let mut cap = Vec::with_capacity(degrees.len());
    for &d in &degrees {
        match r.checked_sub(a * d) {
            Some(c) => cap.push(c),
            None => return Ok(Decision::No),
        }
    }
    if b == 0 {
        return Ok(Decision::Yes(EdgeOrdering::identity(eps)));
    }
    let infeasible = degrees.iter().zip(&cap).any(|(&d, &c)| {
        if cyclic {
            d * b > c * eps
        } else {
            d > c * eps.div_ceil(b)
        }
    });
    if infeasible {
        return Ok(Decision::No);
    }

    let classes = classes_of(h);
    let nv = h.vertex_count();
    let mut search = Search {
        eps,
        b,
        cyclic,
        nv,
        remaining: classes.iter().map(|c| c.members.len()).collect(),
        classes,
        covers: covers_of(h),
        cap,
        rem_deg: degrees,
        prefix: vec![0; (eps + 1) * nv],
        seq: Vec::with_capacity(eps),
        failed: HashSet::new(),
        tracker,
    };
    if !search.bounds_ok() {
        return Ok(Decision::No);
    }
    Ok(match search.dfs() {
        Outcome::Found => {
            let w = search.witness();
            assert!(
                first_violation(h, &w, r, s, cyclic).is_none(),
                "oracle witness fails certification at r = {r}, s = {s}"
            );
            Decision::Yes(w)
        }
        Outcome::Failed => Decision::No,
        Outcome::Exhausted => Decision::Unknown,
    })
}

/// Is there an ordering of `h` whose legal windows of length `s` all have
/// maximum degree at most `r`? A `Yes` carries a certified witness.
pub fn exists_ordering(
    h: &Hypergraph,
    r: usize,
    s: usize,
    cyclic: bool,
    budget: &SearchBudget,
) -> Result<DecisionReport> {
    let mut tracker = Tracker::new(*budget);
    let decision = decide(h, r, s, cyclic, &mut tracker)?;
    Ok(DecisionReport {
        decision,
        nodes: tracker.nodes,
    })
}

/// The exact ms_r(h) (or cms_r(h)) over all orderings.
///
/// Starts from the identity ordering's value and asks for one more each
/// round; a witness lets the search jump to that witness's own value. The
/// budget covers the whole run.
pub fn exact_ms(
    h: &Hypergraph,
    r: usize,
    cyclic: bool,
    budget: &SearchBudget,
) -> Result<OracleReport> {
    if r == 0 {
        return Err(Error::Parameter("oracle needs r >= 1".into()));
    }
    let eps = h.edge_count();
    let mut tracker = Tracker::new(*budget);
    if eps == 0 {
        return Ok(OracleReport {
            ms: Some(0),
            witness: Some(EdgeOrdering::empty()),
            nodes: 0,
        });
    }
    let mut witness = EdgeOrdering::identity(eps);
    let mut best = eval_ms(h, &witness, r, cyclic);
    loop {
        match decide(h, r, best + 1, cyclic, &mut tracker)? {
            Decision::Yes(w) => {
                best = eval_ms(h, &w, r, cyclic);
                witness = w;
            }
            Decision::No => {
                return Ok(OracleReport {
                    ms: Some(best),
                    witness: Some(witness),
                    nodes: tracker.nodes,
                })
            }
            Decision::Unknown => {
                return Ok(OracleReport {
                    ms: None,
                    witness: None,
                    nodes: tracker.nodes,
                })
            }
        }
    }
}
