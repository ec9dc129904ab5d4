//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use matchseq::decompositions::{
    diagonal_family, moduli_choices, refined_family, verify_family, MatchingFamily,
};
use matchseq::fixtures::{
    check_fact, complete_graph, complete_multipartite_graph, gallery, graph_g, graph_g_prime,
};
use matchseq::hypergraph::{multiply, Vertex};
use matchseq::index_maps::{
    has_cyclic_stepping, has_linear_stepping, is_bijection, rho_detail, sigma, tau,
    validate_rho_params, SigmaParams,
};
use matchseq::oracle::{exact_ms, exists_ordering, Decision, SearchBudget};
use matchseq::ordering::{eval_ms, ms_pair};
use matchseq::theorem::{condition_one, construct, upper_bound, value, TheoremInput};
use matchseq::{build_complete_multipartite, Hypergraph, PartiteSpec};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn budget() -> SearchBudget {
    SearchBudget::new(u64::MAX, Duration::from_secs(300)).unwrap()
}

/// Every spec with `λ·∏ n_i ≤ max_edges` and at most `max_k` parts.
fn specs(max_edges: usize, max_k: usize) -> Vec<PartiteSpec> {
    fn grow(
        sizes: &mut Vec<usize>,
        product: usize,
        max_edges: usize,
        max_k: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !sizes.is_empty() {
            out.push(sizes.clone());
        }
        if sizes.len() == max_k {
            return;
        }
        let lo = sizes.last().copied().unwrap_or(1);
        for n in lo..=max_edges / product {
            sizes.push(n);
            grow(sizes, product * n, max_edges, max_k, out);
            sizes.pop();
        }
    }
    let mut all = Vec::new();
    grow(&mut Vec::new(), 1, max_edges, max_k, &mut all);
    let mut out = Vec::new();
    for sizes in all {
        let product: usize = sizes.iter().product();
        for lambda in 1..=max_edges / product {
            out.push(PartiteSpec::new(lambda, sizes.clone()).unwrap());
        }
    }
    out
}

/// Every spec with `n1 ≥ 2`, at least two parts and `λN ≤ max`. With
/// `n1 = 1` every `r` is divisible by `n1^{u−1}`, so ρ never applies.
fn specs_with_lambda_n(max: usize) -> Vec<PartiteSpec> {
    fn tails(lo: usize, budget: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !acc.is_empty() {
            out.push(acc.clone());
        }
        for n in lo..=budget {
            acc.push(n);
            tails(n, budget / n, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    for n1 in 2..=max {
        let mut all = Vec::new();
        tails(n1, max, &mut Vec::new(), &mut all);
        for tail in all {
            let big_n: usize = tail.iter().product();
            for lambda in 1..=max / big_n {
                let mut sizes = vec![n1];
                sizes.extend(&tail);
                out.push(PartiteSpec::new(lambda, sizes).unwrap());
            }
        }
    }
    out
}

fn exact(h: &Hypergraph, r: usize, cyclic: bool) -> Result<usize, String> {
    exact_ms(h, r, cyclic, &budget())
        .map_err(|e| e.to_string())?
        .ms
        .ok_or_else(|| format!("oracle budget exhausted (r = {r}, cyclic = {cyclic})"))
}

fn theorem_matches_oracle() -> Outcome {
    let mut checked = 0;
    for spec in specs(12, 6) {
        let h = build_complete_multipartite(&spec);
        for r in 1..=3 {
            for cyclic in [false, true] {
                let expected = value(&TheoremInput::new(spec.clone(), r).unwrap(), cyclic);
                let got = exact(&h, r, cyclic)?;
                if got != expected {
                    return Err(format!(
                        "λ={} sizes={:?} r={r} cyclic={cyclic}: oracle {got}, closed form {expected}",
                        spec.lambda(),
                        spec.sizes()
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (spec, r, mode) cases agree"))
}

fn classical_fixtures() -> Outcome {
    let k = |sizes: &[usize]| {
        build_complete_multipartite(&PartiteSpec::new(1, sizes.to_vec()).unwrap())
    };
    let cases: [(&str, Hypergraph, bool, usize); 6] = [
        ("ms(K_{2,3})", k(&[2, 3]), false, 2),
        ("cms(K_{2,3})", k(&[2, 3]), true, 2),
        ("ms(K_{3,3})", k(&[3, 3]), false, 2),
        ("cms(K_{3,3})", k(&[3, 3]), true, 2),
        ("ms(K_5)", complete_graph(5), false, 2),
        ("cms(K_6)", complete_graph(6), true, 2),
    ];
    let mut parts = Vec::new();
    for (name, h, cyclic, expected) in cases {
        let got = exact(&h, 1, cyclic)?;
        if got != expected {
            return Err(format!("{name} = {got}, expected {expected}"));
        }
        parts.push(format!("{name}={got}"));
    }
    Ok(parts.join(" "))
}

fn construction_optimality() -> Outcome {
    let spec = PartiteSpec::new(1, vec![2, 2, 4]).unwrap();
    let input = TheoremInput::new(spec.clone(), 5).unwrap();
    let h = build_complete_multipartite(&spec);
    let c = construct(&input, false).map_err(|e| e.to_string())?;
    let measured = eval_ms(&h, &c.ordering, 5, false);
    let cap = upper_bound(&spec, 5);
    if c.s != 10 || measured != 10 || cap != 10 {
        return Err(format!("claimed {}, measured {measured}, cap {cap}", c.s));
    }
    let cyclic_value = value(&input, true);
    let cc = construct(&input, true).map_err(|e| e.to_string())?;
    let cyclic_measured = eval_ms(&h, &cc.ordering, 5, true);
    if cyclic_value != 9 || cyclic_measured != 9 {
        return Err(format!(
            "cyclic value {cyclic_value}, constructed {cyclic_measured}"
        ));
    }
    Ok("non-cyclic ordering certifies 10 = r·n1; cyclic value 9".into())
}

fn adjacent_pairs_at_least(
    h: &Hypergraph,
    fam: &MatchingFamily,
    bound: usize,
) -> Result<(), String> {
    for i in 0..fam.rows() {
        for j in 0..fam.cols() {
            let next = (j + 1) % fam.cols();
            if next == j {
                continue;
            }
            let got = ms_pair(h, &fam.ordering(i, j), &fam.ordering(i, next));
            if got < bound {
                return Err(format!("ms_pair at ({i},{j}) = {got} < {bound}"));
            }
        }
    }
    Ok(())
}

fn decomposition_properties() -> Outcome {
    let (mut diagonal, mut refined) = (0, 0);
    for spec in specs(64, 6) {
        let h = build_complete_multipartite(&spec);
        let n1 = spec.n1();
        if spec.lambda() == 1 {
            let n = spec.big_n();
            for d in (1..=n).filter(|d| n % d == 0) {
                for moduli in moduli_choices(spec.sizes(), d) {
                    let fam = diagonal_family(&spec, d, &moduli).map_err(|e| e.to_string())?;
                    let report = verify_family(&h, &fam);
                    if !report.passed() {
                        return Err(format!(
                            "diagonal {:?} d={d} {moduli:?}: {report:?}",
                            spec.sizes()
                        ));
                    }
                    adjacent_pairs_at_least(&h, &fam, n1 - 1).map_err(|e| {
                        format!("diagonal {:?} d={d} {moduli:?}: {e}", spec.sizes())
                    })?;
                    diagonal += 1;
                }
            }
        }
        let fam = refined_family(&spec).map_err(|e| e.to_string())?;
        let report = verify_family(&h, &fam);
        if !report.passed() {
            return Err(format!(
                "refined λ={} {:?}: {report:?}",
                spec.lambda(),
                spec.sizes()
            ));
        }
        adjacent_pairs_at_least(&h, &fam, n1)
            .map_err(|e| format!("refined λ={} {:?}: {e}", spec.lambda(), spec.sizes()))?;
        refined += 1;
    }
    Ok(format!(
        "{diagonal} diagonal and {refined} refined families verified"
    ))
}

fn index_map_properties() -> Outcome {
    for t in 2..=60 {
        for s in 1..t {
            let sg = sigma(SigmaParams::new(s, t).unwrap());
            if !is_bijection(&sg) || !has_cyclic_stepping(&sg, s) {
                return Err(format!("sigma fails at s={s} t={t}"));
            }
            let tu = tau(s, t).unwrap();
            if !is_bijection(&tu) || !has_linear_stepping(&tu, s) {
                return Err(format!("tau fails at s={s} t={t}"));
            }
        }
    }
    let mut valid = 0;
    for spec in specs_with_lambda_n(64) {
        let lambda_n = spec.lambda_n();
        let head = spec.head_power();
        for r in (1..lambda_n).filter(|r| r % head != 0) {
            let input = TheoremInput::new(spec.clone(), r).unwrap();
            let accepted = validate_rho_params(&spec, r);
            if accepted.is_ok() != condition_one(&input).unwrap() {
                return Err(format!(
                    "{:?} r={r}: parameter check disagrees with condition (1)",
                    spec
                ));
            }
            let Ok(params) = accepted else { continue };
            let cols = spec.lambda() * spec.n_prime();
            let mut seen = vec![false; lambda_n];
            for i in 0..head {
                for j in 0..cols {
                    let d = rho_detail(&params, i, j).map_err(|e| e.to_string())?;
                    if d.value >= lambda_n || std::mem::replace(&mut seen[d.value], true) {
                        return Err(format!(
                            "{spec:?} r={r}: rho({i},{j}) = {} repeats or overflows",
                            d.value
                        ));
                    }
                    let (lo, hi) = params.offsets(d.branch);
                    let offset = d.value as i64 - d.s as i64 * params.r;
                    if offset < lo || offset >= hi {
                        return Err(format!(
                            "{spec:?} r={r}: rho({i},{j}) leaves its branch range"
                        ));
                    }
                    if d.value + r < lambda_n {
                        let next = if j + 1 < cols {
                            rho_detail(&params, i, j + 1)
                                .map_err(|e| e.to_string())?
                                .value
                        } else {
                            usize::MAX
                        };
                        if next != d.value + r {
                            return Err(format!("{spec:?} r={r}: stepping fails at ({i},{j})"));
                        }
                    }
                }
            }
            valid += 1;
        }
    }
    Ok(format!(
        "sigma/tau for t <= 60; rho on {valid} valid (spec, r)"
    ))
}

fn gallery_facts() -> Outcome {
    let mut count = 0;
    for fixture in gallery() {
        for fact in &fixture.facts {
            let outcome =
                check_fact(&fixture.hypergraph, fact, &budget()).map_err(|e| e.to_string())?;
            match outcome.holds {
                Some(true) => count += 1,
                Some(false) => return Err(format!("{}: {}", fixture.name, outcome.detail)),
                None => return Err(format!("{}: {}", fixture.name, outcome.detail)),
            }
        }
    }
    Ok(format!("{count} facts on G, G', H, 2H"))
}

fn corpus() -> Vec<(&'static str, Hypergraph)> {
    let k = |lambda: usize, sizes: &[usize]| {
        build_complete_multipartite(&PartiteSpec::new(lambda, sizes.to_vec()).unwrap())
    };
    let path = Hypergraph::from_vertex_sets(
        vec![6],
        (0..5)
            .map(|i| vec![Vertex::new(0, i), Vertex::new(0, i + 1)])
            .collect(),
    )
    .unwrap();
    let star_plus = Hypergraph::from_vertex_sets(
        vec![5],
        [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)]
            .iter()
            .map(|&(x, y)| vec![Vertex::new(0, x), Vertex::new(0, y)])
            .collect(),
    )
    .unwrap();
    let mixed = Hypergraph::from_vertex_sets(
        vec![5],
        vec![
            vec![Vertex::new(0, 0), Vertex::new(0, 1), Vertex::new(0, 2)],
            vec![Vertex::new(0, 2), Vertex::new(0, 3)],
            vec![Vertex::new(0, 0), Vertex::new(0, 3), Vertex::new(0, 4)],
            vec![Vertex::new(0, 1), Vertex::new(0, 4)],
            vec![Vertex::new(0, 2), Vertex::new(0, 4)],
        ],
    )
    .unwrap();
    vec![
        ("K_{2,3}", k(1, &[2, 3])),
        ("K_{2,2}", k(1, &[2, 2])),
        ("K_{1,2,3}", k(1, &[1, 2, 3])),
        ("K_{2,2,2}", k(1, &[2, 2, 2])),
        ("2K_{1,3}", k(2, &[1, 3])),
        ("K_4", complete_graph(4)),
        ("K_{2,2,2} graph", complete_multipartite_graph(3, 2)),
        ("G", graph_g()),
        ("G'", graph_g_prime()),
        ("path", path),
        ("star with chords", star_plus),
        ("mixed", mixed),
    ]
}

fn lifting_inequalities() -> Outcome {
    let mut checks = 0;
    for (name, h) in corpus() {
        assert!(h.edge_count() <= 12);
        let delta = h.max_degree();
        let eps = h.edge_count();
        for cyclic in [false, true] {
            for r1 in 1..delta {
                for r2 in 2..delta {
                    if r1 * r2 >= delta {
                        continue;
                    }
                    let (lo, hi) = (exact(&h, r1, cyclic)?, exact(&h, r1 * r2, cyclic)?);
                    if r2 * lo > hi {
                        return Err(format!(
                            "{name}: {r2}·ms_{r1} = {} > ms_{} = {hi}",
                            r2 * lo,
                            r1 * r2
                        ));
                    }
                    checks += 1;
                }
            }
            for a in 1..=2 {
                for b in 1..delta {
                    let r = a * delta + b;
                    let (base, top) = (exact(&h, b, cyclic)?, exact(&h, r, cyclic)?);
                    if a * eps + base > top {
                        return Err(format!(
                            "{name}: {a}·{eps} + ms_{b} = {} > ms_{r} = {top}",
                            a * eps + base
                        ));
                    }
                    checks += 1;
                }
            }
        }
        if eps <= 6 {
            for lambda in 2..=12 / eps {
                let big = multiply(&h, lambda).map_err(|e| e.to_string())?.hypergraph;
                for r in 1..=2 {
                    let (small, lifted) = (exact(&h, r, true)?, exact(&big, r, true)?);
                    if lifted < small {
                        return Err(format!(
                            "{name}: cms_{r}({lambda}H) = {lifted} < cms_{r}(H) = {small}"
                        ));
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(format!(
        "{checks} inequalities hold on {} hypergraphs",
        corpus().len()
    ))
}

fn conjecture_scan() -> Outcome {
    let mut cells = Vec::new();
    for (s, n) in [(2, 2), (2, 3), (3, 2)] {
        let h = complete_multipartite_graph(s, n);
        let predicted = s * n / 2 - 1;
        for cyclic in [false, true] {
            let got = exact(&h, 1, cyclic)?;
            if got != predicted {
                return Err(format!(
                    "K_{{{s}({n})}} cyclic={cyclic}: {got} vs {predicted}"
                ));
            }
        }
        cells.push(format!("({s},{n})={predicted}"));
    }
    // A direct decision check that the predicted value is not exceeded.
    let oct = complete_multipartite_graph(3, 2);
    if exists_ordering(&oct, 1, 3, true, &budget())
        .map_err(|e| e.to_string())?
        .decision
        != Decision::No
    {
        return Err("cms(K_{3(2)}) >= 3 was not refuted".into());
    }
    Ok(cells.join(" "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 theorem-oracle agreement", theorem_matches_oracle),
        ("2 classical fixtures", classical_fixtures),
        ("3 construction optimality", construction_optimality),
        ("4 decomposition properties", decomposition_properties),
        ("5 index-map properties", index_map_properties),
        ("6 gallery facts", gallery_facts),
        ("7 lifting inequalities", lifting_inequalities),
        ("8 conjecture scan", conjecture_scan),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (name, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.starts_with(f.as_str())) {
            continue;
        }
        let started = Instant::now();
        let outcome = check();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{name}] {detail} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL [{name}] {why} ({secs:.1}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
