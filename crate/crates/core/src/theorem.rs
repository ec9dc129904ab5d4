//! Closed-form ms_r / cms_r of λK_{n1,…,nk} and orderings that attain them.
//!
//! Write `r = r1·λN + r2` with `0 ≤ r2 < λN` and `P = n1^{u−1}`. Both values
//! are `r·n1` or `r·n1 − 1`: the cyclic one is `r·n1` exactly when `P | r2`;
//! the non-cyclic one also reaches `r·n1` when [`condition_one`] holds.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::decompositions::{choose_moduli, diagonal_family, refined_family};
use crate::error::{Error, Result};
use crate::hypergraph::{build_complete_multipartite, PartiteSpec};
use crate::index_maps::{rho, rho_simple, sigma, validate_rho_params, SigmaParams};
use crate::ordering::{first_violation, replicate, EdgeOrdering};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremInput {
    spec: PartiteSpec,
    r: usize,
}

impl TheoremInput {
    pub fn new(spec: PartiteSpec, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::Parameter("r must be at least 1".into()));
        }
        Ok(TheoremInput { spec, r })
    }

    pub fn spec(&self) -> &PartiteSpec {
        &self.spec
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn r1(&self) -> usize {
        self.r / self.spec.lambda_n()
    }

    pub fn r2(&self) -> usize {
        self.r % self.spec.lambda_n()
    }
}

/// Which case of the closed form produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `r2 = 0`.
    RemainderZero,
    /// `u = 1`, so `P = 1` divides every `r2`.
    SingleSmallestPart,
    /// `P | r2` with `r2 > 0` and `u > 1`.
    Divisible,
    ConditionOne,
    Otherwise,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::RemainderZero => "divisible: r2=0",
            Branch::SingleSmallestPart => "divisible: u=1",
            Branch::Divisible => "divisible",
            Branch::ConditionOne => "condition-1",
            Branch::Otherwise => "otherwise",
        })
    }
}

/// `(⌊r2/P⌋ + 1)·⌊λN/r2⌋ ≤ λN′ ≤ ⌊r2/P⌋·(⌊λN/r2⌋ + 1)`.
pub fn condition_one(input: &TheoremInput) -> Result<bool> {
    let r2 = input.r2();
    if r2 == 0 {
        return Err(Error::Parameter(
            "condition (1) is undefined for r2 = 0".into(),
        ));
    }
    let spec = input.spec();
    let p = r2 / spec.head_power();
    let a = spec.lambda_n() / r2;
    let lnp = spec.lambda() * spec.n_prime();
    Ok((p + 1) * a <= lnp && lnp <= p * (a + 1))
}

pub fn value_with_branch(input: &TheoremInput, cyclic: bool) -> (usize, Branch) {
    let top = upper_bound(input.spec(), input.r());
    let r2 = input.r2();
    let branch = if r2 == 0 {
        Branch::RemainderZero
    } else if input.spec().u() == 1 {
        Branch::SingleSmallestPart
    } else if r2.is_multiple_of(input.spec().head_power()) {
        Branch::Divisible
    } else if !cyclic && condition_one(input).expect("r2 > 0 here") {
        Branch::ConditionOne
    } else {
        Branch::Otherwise
    };
    let value = if branch == Branch::Otherwise {
        top - 1
    } else {
        top
    };
    (value, branch)
}

pub fn value(input: &TheoremInput, cyclic: bool) -> usize {
    value_with_branch(input, cyclic).0
}

/// `r·n1`: a window longer than this hits some part-1 vertex more than `r` times.
pub fn upper_bound(spec: &PartiteSpec, r: usize) -> usize {
    r * spec.n1()
}

/// An ordering together with the value it was certified at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RawCertified", try_from = "RawCertified")]
pub struct CertifiedOrdering {
    pub ordering: EdgeOrdering,
    pub s: usize,
    pub r: usize,
    pub cyclic: bool,
}

#[derive(Serialize, Deserialize)]
struct RawCertified {
    labels: Vec<usize>,
    s: usize,
    r: usize,
    cyclic: bool,
}

impl From<CertifiedOrdering> for RawCertified {
    fn from(c: CertifiedOrdering) -> Self {
        RawCertified {
            labels: c.ordering.labels().to_vec(),
            s: c.s,
            r: c.r,
            cyclic: c.cyclic,
        }
    }
}

impl TryFrom<RawCertified> for CertifiedOrdering {
    type Error = Error;

    fn try_from(raw: RawCertified) -> Result<Self> {
        Ok(CertifiedOrdering {
            ordering: EdgeOrdering::new(raw.labels)?,
            s: raw.s,
            r: raw.r,
            cyclic: raw.cyclic,
        })
    }
}

impl CertifiedOrdering {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certified ordering serialization cannot fail")
    }
}

/// Diagonal family of K_{n1,…,nk} placed by σ with step `r2 mod N`, then
/// repeated once per copy of λK. Attains `r·n1 − 1` in both modes.
fn sigma_scheduled(spec: &PartiteSpec, r2: usize) -> Result<EdgeOrdering> {
    let simple = spec.simple();
    let n = simple.big_n();
    let step = r2 % n;
    let d = n.gcd(&step);
    let moduli = choose_moduli(simple.sizes(), d).expect("gcd(N, r) divides N");
    let fam = diagonal_family(&simple, d, &moduli)?;
    let cols = fam.cols();
    let order = sigma(SigmaParams::new(step, n)?);
    let base = fam.schedule(|i, j| Ok(order[i * cols + j]))?;
    Ok(replicate(&base, spec.lambda()))
}

/// Builds an ordering of λK_{n1,…,nk} and certifies it at `value(input, cyclic)`.
pub fn construct(input: &TheoremInput, cyclic: bool) -> Result<CertifiedOrdering> {
    let spec = input.spec();
    let r2 = input.r2();
    let (target, branch) = value_with_branch(input, cyclic);
    let ordering = match branch {
        Branch::RemainderZero => EdgeOrdering::identity(spec.edge_count()),
        Branch::SingleSmallestPart | Branch::Divisible => {
            let head = spec.head_power();
            refined_family(spec)?.schedule(|i, j| Ok(rho_simple(head, i, j)))?
        }
        Branch::ConditionOne => {
            let params = validate_rho_params(spec, r2)?;
            refined_family(spec)?.schedule(|i, j| rho(&params, i, j))?
        }
        Branch::Otherwise => sigma_scheduled(spec, r2)?,
    };
    let h = build_complete_multipartite(spec);
    ordering.validate_for(&h)?;
    if first_violation(&h, &ordering, input.r(), target, cyclic).is_some() {
        return Err(Error::ConstructionDefect {
            claimed: target,
            measured: crate::ordering::eval_ms(&h, &ordering, input.r(), cyclic),
            r: input.r(),
            cyclic,
        });
    }
    Ok(CertifiedOrdering {
        ordering,
        s: target,
        r: input.r(),
        cyclic,
    })
}
