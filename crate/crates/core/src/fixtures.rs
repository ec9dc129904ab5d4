//! Small named graphs with known sequencibility facts, plus complete graph builders.
//!
//! Graphs are 2-uniform hypergraphs. Unless stated otherwise all vertices sit in
//! a single declared part.
//!
//! **G** (6 vertices): a centre `v` joined to `a`, `b`, `c`; the edge `a–b`; and
//! a vertex `d` joined to `c` and to a pendant `f`. Vertex indices are
//! `v=0, a=1, b=2, c=3, d=4, f=5`. Edge ids: `0 v–a, 1 a–b, 2 v–b, 3 c–d,
//! 4 v–c, 5 d–f`, so the three edges at `v` carry labels 0, 2, 4 in the
//! identity ordering. **G′** is G without the pendant edge `d–f`.
//!
//! **H** (8 vertices): a centre `c`, a cycle-like rim `t`, `l`, `o`, and a hub
//! `w` of degree 7 with three leaves `x1`, `x2`, `x3`. Indices
//! `c=0, t=1, l=2, o=3, w=4, x1=5, x2=6, x3=7`. Edge ids follow the
//! reference labelling: `0 w–x3, 1 c–l, 2 w–x2, 3 t–o, 4 c–w, 5 t–l, 6 o–w, 7 c–t,
//! 8 l–w, 9 c–o, 10 t–w, 11 l–o, 12 w–x1`. Every edge at `w` has an even label,
//! so the identity ordering has every consecutive pair disjoint.
//!
//! **2H** doubles every edge of H: 26 edges, 14 of them at `w`.

use serde::Serialize;

use crate::error::Result;
use crate::hypergraph::{multiply, Hypergraph, Vertex};
use crate::oracle::{exact_ms, exists_ordering, Decision, SearchBudget};
use crate::ordering::{eval_ms, EdgeOrdering};

fn single_part_graph(n: usize, pairs: &[(usize, usize)]) -> Hypergraph {
    Hypergraph::from_vertex_sets(
        vec![n],
        pairs
            .iter()
            .map(|&(x, y)| vec![Vertex::new(0, x), Vertex::new(0, y)])
            .collect(),
    )
    .expect("fixture graphs are well formed")
}

const G_EDGES: [(usize, usize); 6] = [(0, 1), (1, 2), (0, 2), (3, 4), (0, 3), (4, 5)];

pub fn graph_g() -> Hypergraph {
    single_part_graph(6, &G_EDGES)
}

pub fn graph_g_prime() -> Hypergraph {
    single_part_graph(6, &G_EDGES[..5])
}

pub fn graph_h() -> Hypergraph {
    let (c, t, l, o, w, x1, x2, x3) = (0, 1, 2, 3, 4, 5, 6, 7);
    single_part_graph(
        8,
        &[
            (w, x3),
            (c, l),
            (w, x2),
            (t, o),
            (c, w),
            (t, l),
            (o, w),
            (c, t),
            (l, w),
            (c, o),
            (t, w),
            (l, o),
            (w, x1),
        ],
    )
}

pub fn graph_2h() -> Hypergraph {
    multiply(&graph_h(), 2).expect("λ = 2 is valid").hypergraph
}

/// The identity labelling of H, with every consecutive pair disjoint.
pub fn reference_h_ordering() -> EdgeOrdering {
    EdgeOrdering::identity(13)
}

/// Every ordering of G that puts the edges at `v` on labels 0, 2, 4 in id
/// order, with the other three edges on labels 1, 3, 5 in any order.
pub fn centred_g_orderings() -> Vec<EdgeOrdering> {
    let others = [1, 3, 5];
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    perms
        .iter()
        .map(|p| {
            EdgeOrdering::new(vec![0, others[p[0]], 2, others[p[1]], 4, others[p[2]]])
                .expect("distinct labels")
        })
        .collect()
}

/// K_n with all vertices in one part; edges in lexicographic order of pairs.
pub fn complete_graph(n: usize) -> Hypergraph {
    let pairs: Vec<_> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .collect();
    single_part_graph(n, &pairs)
}

/// K_{s(n)}: the complete `s`-partite graph with parts of size `n`, declared
/// as `s` parts.
pub fn complete_multipartite_graph(s: usize, n: usize) -> Hypergraph {
    let mut sets = Vec::new();
    for p in 0..s {
        for q in p + 1..s {
            for x in 0..n {
                for y in 0..n {
                    sets.push(vec![Vertex::new(p, x), Vertex::new(q, y)]);
                }
            }
        }
    }
    Hypergraph::from_vertex_sets(vec![n; s], sets)
        .expect("complete multipartite graphs are well formed")
}

/// A machine-checkable claim about a fixture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Fact {
    /// The exact (cyclic) r-sequencibility.
    Exact {
        r: usize,
        cyclic: bool,
        value: usize,
    },
    /// Some ordering reaches `s`.
    Reachable { r: usize, s: usize, cyclic: bool },
    /// The given ordering reaches `s`.
    OrderingReaches {
        labels: Vec<usize>,
        r: usize,
        s: usize,
        cyclic: bool,
    },
    /// With `r = aΔ + b`, the optimum exceeds `a·ε` plus the optimum at `b`.
    BeatsLinearLift { r: usize, cyclic: bool },
}

#[derive(Clone, Debug, Serialize)]
pub struct Fixture {
    pub name: &'static str,
    pub hypergraph: Hypergraph,
    pub facts: Vec<Fact>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactOutcome {
    /// `None` when the oracle ran out of budget.
    pub holds: Option<bool>,
    pub detail: String,
}

pub fn gallery() -> Vec<Fixture> {
    let mut g_facts = vec![
        Fact::Exact {
            r: 1,
            cyclic: true,
            value: 1,
        },
        Fact::Reachable {
            r: 4,
            s: 8,
            cyclic: true,
        },
        Fact::BeatsLinearLift { r: 4, cyclic: true },
    ];
    g_facts.extend(
        centred_g_orderings()
            .into_iter()
            .map(|l| Fact::OrderingReaches {
                labels: l.labels().to_vec(),
                r: 4,
                s: 8,
                cyclic: true,
            }),
    );
    vec![
        Fixture {
            name: "G",
            hypergraph: graph_g(),
            facts: g_facts,
        },
        Fixture {
            name: "G'",
            hypergraph: graph_g_prime(),
            facts: vec![
                Fact::Exact {
                    r: 1,
                    cyclic: false,
                    value: 1,
                },
                Fact::Reachable {
                    r: 4,
                    s: 7,
                    cyclic: false,
                },
                Fact::OrderingReaches {
                    labels: (0..5).collect(),
                    r: 4,
                    s: 7,
                    cyclic: false,
                },
                Fact::BeatsLinearLift {
                    r: 4,
                    cyclic: false,
                },
            ],
        },
        Fixture {
            name: "H",
            hypergraph: graph_h(),
            facts: vec![
                Fact::OrderingReaches {
                    labels: reference_h_ordering().labels().to_vec(),
                    r: 1,
                    s: 2,
                    cyclic: false,
                },
                Fact::Exact {
                    r: 1,
                    cyclic: false,
                    value: 2,
                },
            ],
        },
        Fixture {
            name: "2H",
            hypergraph: graph_2h(),
            facts: vec![Fact::Exact {
                r: 1,
                cyclic: false,
                value: 1,
            }],
        },
    ]
}

fn known(holds: bool, detail: String) -> FactOutcome {
    FactOutcome {
        holds: Some(holds),
        detail,
    }
}

fn unknown(detail: String) -> FactOutcome {
    FactOutcome {
        holds: None,
        detail,
    }
}

pub fn check_fact(h: &Hypergraph, fact: &Fact, budget: &SearchBudget) -> Result<FactOutcome> {
    let mode = |cyclic: bool| if cyclic { "cms" } else { "ms" };
    Ok(match fact {
        Fact::Exact { r, cyclic, value } => match exact_ms(h, *r, *cyclic, budget)?.ms {
            Some(ms) => known(
                ms == *value,
                format!("{}_{r} = {ms} (expected {value})", mode(*cyclic)),
            ),
            None => unknown(format!("{}_{r} unknown within budget", mode(*cyclic))),
        },
        Fact::Reachable { r, s, cyclic } => {
            match exists_ordering(h, *r, *s, *cyclic, budget)?.decision {
                Decision::Yes(w) => known(
                    true,
                    format!("{}_{r} >= {s} via witness {:?}", mode(*cyclic), w.labels()),
                ),
                Decision::No => known(
                    false,
                    format!("no ordering reaches {}_{r} >= {s}", mode(*cyclic)),
                ),
                Decision::Unknown => unknown(format!(
                    "{}_{r} >= {s} undecided within budget",
                    mode(*cyclic)
                )),
            }
        }
        Fact::OrderingReaches {
            labels,
            r,
            s,
            cyclic,
        } => {
            let l = EdgeOrdering::new(labels.clone())?;
            l.validate_for(h)?;
            let got = eval_ms(h, &l, *r, *cyclic);
            known(
                got >= *s,
                format!("{}_{r}({labels:?}) = {got} (need >= {s})", mode(*cyclic)),
            )
        }
        Fact::BeatsLinearLift { r, cyclic } => {
            let delta = h.max_degree();
            let (a, b) = (r / delta, r % delta);
            let top = exact_ms(h, *r, *cyclic, budget)?.ms;
            let base = if b == 0 {
                Some(0)
            } else {
                exact_ms(h, b, *cyclic, budget)?.ms
            };
            match (top, base) {
                (Some(top), Some(base)) => {
                    let lift = a * h.edge_count() + base;
                    known(
                        top > lift,
                        format!(
                            "{}_{r} = {top} vs {a}·{} + {base} = {lift}",
                            mode(*cyclic),
                            h.edge_count()
                        ),
                    )
                }
                _ => unknown("exact values unknown within budget".into()),
            }
        }
    })
}
