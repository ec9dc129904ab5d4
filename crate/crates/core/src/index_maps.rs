//! Index bijections that decide where each matching of a decomposition goes.
//!
//! * [`sigma`] steps cyclically by `s` inside each residue class mod `gcd(s, t)`.
//! * [`tau`] is the same bijection, used for its non-cyclic stepping property:
//!   whenever `τ(x) ≤ t − s − 1`, `τ(x + 1) = τ(x) + s`.
//! * [`rho`] interleaves two σ/τ schedules so that matchings `(i, j)` and
//!   `(i, j + 1)` land exactly `r` positions apart.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::hypergraph::PartiteSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SigmaParams {
    s: usize,
    t: usize,
}

impl SigmaParams {
    pub fn new(s: usize, t: usize) -> Result<Self> {
        if s == 0 || s >= t {
            return Err(Error::Parameter(format!(
                "sigma needs 1 <= s < t, got s = {s}, t = {t}"
            )));
        }
        Ok(SigmaParams { s, t })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn d(&self) -> usize {
        self.s.gcd(&self.t)
    }
}

/// `a ↦ (i + j·s) mod t` where `a = i·(t/d) + j`, `j < t/d`. Defined for `1 ≤ s ≤ t`;
/// `s = t` gives the identity.
fn stepping_order(s: usize, t: usize) -> Vec<usize> {
    let c = t / s.gcd(&t);
    (0..t).map(|a| (a / c + (a % c) * s) % t).collect()
}

/// σ as a table: entry `a` is σ(a).
pub fn sigma(params: SigmaParams) -> Vec<usize> {
    stepping_order(params.s, params.t)
}

/// τ as a table: entry `x` is τ(x).
pub fn tau(s: usize, t: usize) -> Result<Vec<usize>> {
    let params = SigmaParams::new(s, t)?;
    Ok(stepping_order(params.s, params.t))
}

/// True iff `order` satisfies σ's cyclic stepping: within each run of
/// `t/d` consecutive indices, values advance by `s` modulo `t`, wrapping back
/// to the run's start.
pub fn has_cyclic_stepping(order: &[usize], s: usize) -> bool {
    let t = order.len();
    let c = t / s.gcd(&t);
    (0..t).all(|a| {
        let next = a - a % c + (a % c + 1) % c;
        order[next] == (order[a] + s) % t
    })
}

/// True iff `order(x) ≤ t − s − 1` always implies `order(x + 1) = order(x) + s`
/// (with no successor at `x = t − 1`, the premise must fail there).
pub fn has_linear_stepping(order: &[usize], s: usize) -> bool {
    let t = order.len();
    (0..t).all(|x| {
        if order[x] + s >= t {
            return true;
        }
        x + 1 < t && order[x + 1] == order[x] + s
    })
}

/// True iff `order` is a permutation of `[order.len()]`.
pub fn is_bijection(order: &[usize]) -> bool {
    let mut seen = vec![false; order.len()];
    order
        .iter()
        .all(|&v| v < seen.len() && !std::mem::replace(&mut seen[v], true))
}

/// Parameters of ρ for a λK spec and `0 < r < λN` with `n1^{u−1} ∤ r`.
///
/// Fields are signed so degenerate parameter sets (for example `q = 0`, where
/// δ can go negative on an unused branch) remain representable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoParams {
    pub r: i64,
    /// n1^{u−1}.
    pub head: i64,
    /// λN.
    pub lambda_n: i64,
    /// λN′.
    pub lambda_n_prime: i64,
    pub p: i64,
    pub q: i64,
    pub a: i64,
    pub b: i64,
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
    pub nu: i64,
    sigma: Vec<usize>,
    tau: Vec<usize>,
}

impl RhoParams {
    /// Derives every parameter without checking any inequality. `r` must be
    /// positive and below λN.
    pub fn derive_unchecked(spec: &PartiteSpec, r: usize) -> Result<Self> {
        let lambda_n = spec.lambda_n();
        if r == 0 || r >= lambda_n {
            return Err(Error::Parameter(format!(
                "rho needs 0 < r < λN = {lambda_n}, got {r}"
            )));
        }
        let head = spec.head_power() as i64;
        let lambda_n_prime = (spec.lambda() * spec.n_prime()) as i64;
        let (r, lambda_n) = (r as i64, lambda_n as i64);
        let (p, q) = r.div_rem(&head);
        let (a, b) = lambda_n.div_rem(&r);
        let (alpha, beta) = (p, p + 1);
        let t = lambda_n_prime as usize;
        let table = |s: i64| {
            if s >= 1 && s as usize <= t {
                stepping_order(s as usize, t)
            } else {
                Vec::new()
            }
        };
        Ok(RhoParams {
            r,
            head,
            lambda_n,
            lambda_n_prime,
            p,
            q,
            a,
            b,
            alpha,
            beta,
            gamma: lambda_n_prime - a * p,
            delta: lambda_n_prime - a * (p + 1),
            nu: head - q,
            sigma: table(alpha),
            tau: table(beta),
        })
    }

    /// Split of σ(j) (rows below ν) or τ(j) (rows from ν) by α or β.
    fn split(&self, i: i64, j: usize) -> Result<(i64, i64)> {
        let (table, width) = if i < self.nu {
            (&self.sigma, self.alpha)
        } else {
            (&self.tau, self.beta)
        };
        let v = *table.get(j).ok_or_else(|| {
            Error::Parameter(format!("no stepping table of width {width} over [λN′]"))
        })? as i64;
        Ok(v.div_rem(&width))
    }

    fn identities_hold(&self) -> bool {
        self.gamma * self.nu + self.delta * self.q == self.b
            && (self.alpha - self.gamma) * self.nu + (self.beta - self.delta) * self.q
                == self.r - self.b
            && self.a * self.alpha + self.gamma == self.lambda_n_prime
            && self.a * self.beta + self.delta == self.lambda_n_prime
    }
}

/// Computes ρ's parameters and accepts them only when
/// `(p+1)·a ≤ λN′ ≤ p·(a+1)` holds; this is the same double inequality that
/// decides whether the non-cyclic value reaches `r·n1`.
pub fn validate_rho_params(spec: &PartiteSpec, r: usize) -> Result<RhoParams> {
    let params = RhoParams::derive_unchecked(spec, r)?;
    if params.q == 0 {
        return Err(Error::Parameter(format!(
            "r = {r} is divisible by n1^(u-1) = {}",
            params.head
        )));
    }
    let RhoParams {
        p,
        a,
        lambda_n_prime: lnp,
        ..
    } = params;
    if !((p + 1) * a <= lnp && lnp <= p * (a + 1)) {
        return Err(Error::Parameter(format!(
            "(p+1)a <= λN' <= p(a+1) fails: p = {p}, a = {a}, λN' = {lnp}"
        )));
    }
    let nonneg = [
        params.gamma,
        params.delta,
        params.alpha - params.gamma,
        params.beta - params.delta,
    ];
    if p < 1 || nonneg.iter().any(|&x| x < 0) {
        return Err(Error::Parameter(format!(
            "rho parameters out of range: p = {p}, γ = {}, δ = {}",
            params.gamma, params.delta
        )));
    }
    assert!(
        params.identities_hold(),
        "rho identities fail for {params:?}"
    );
    Ok(params)
}

/// Which of the four cases of ρ applies to `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RhoBranch {
    /// `i < ν`, `t < γ`: offsets `[0, νγ)`.
    LowAlpha,
    /// `i ≥ ν`, `t < δ`: offsets `[νγ, b)`.
    LowBeta,
    /// `i < ν`, `γ ≤ t < α`: offsets `[b, b + ν(α−γ))`.
    HighAlpha,
    /// `i ≥ ν`, `δ ≤ t < β`: offsets `[b + ν(α−γ), r)`.
    HighBeta,
}

/// ρ(i, j) together with its branch and `s_{i,j}`; `value − s·r` is the
/// offset inside the length-`r` stretch that the branch owns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RhoDetail {
    pub value: usize,
    pub s: usize,
    pub branch: RhoBranch,
}

impl RhoParams {
    /// Half-open offset range owned by `branch`.
    pub fn offsets(&self, branch: RhoBranch) -> (i64, i64) {
        let mid = self.b + self.nu * (self.alpha - self.gamma);
        match branch {
            RhoBranch::LowAlpha => (0, self.nu * self.gamma),
            RhoBranch::LowBeta => (self.nu * self.gamma, self.b),
            RhoBranch::HighAlpha => (self.b, mid),
            RhoBranch::HighBeta => (mid, self.r),
        }
    }
}

pub fn rho_detail(params: &RhoParams, i: usize, j: usize) -> Result<RhoDetail> {
    if i as i64 >= params.head {
        return Err(Error::OutOfRange {
            what: "i",
            value: i,
            bound: params.head as usize,
        });
    }
    if j as i64 >= params.lambda_n_prime {
        return Err(Error::OutOfRange {
            what: "j",
            value: j,
            bound: params.lambda_n_prime as usize,
        });
    }
    let i = i as i64;
    let (s, t) = params.split(i, j)?;
    let RhoParams {
        r,
        b,
        nu,
        q,
        alpha,
        gamma,
        delta,
        ..
    } = *params;
    let (branch, offset) = if i < nu {
        if t < gamma {
            (RhoBranch::LowAlpha, nu * t + i)
        } else {
            (RhoBranch::HighAlpha, b + nu * (t - gamma) + i)
        }
    } else if t < delta {
        (RhoBranch::LowBeta, nu * gamma + q * t + i - nu)
    } else {
        (
            RhoBranch::HighBeta,
            b + nu * (alpha - gamma) + q * (t - delta) + i - nu,
        )
    };
    let v = s * r + offset;
    let value = usize::try_from(v)
        .map_err(|_| Error::Parameter(format!("rho({i}, {j}) = {v} is negative")))?;
    Ok(RhoDetail {
        value,
        s: s as usize,
        branch,
    })
}

/// ρ(i, j) for `i ∈ [n1^{u−1}]`, `j ∈ [λN′]`.
pub fn rho(params: &RhoParams, i: usize, j: usize) -> Result<usize> {
    rho_detail(params, i, j).map(|d| d.value)
}

/// The schedule used when `r` is exactly `n1^{u−1}`: ρ(i, j) = j·r + i.
pub fn rho_simple(r: usize, i: usize, j: usize) -> usize {
    j * r + i
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(lambda: usize, sizes: &[usize]) -> PartiteSpec {
        PartiteSpec::new(lambda, sizes.to_vec()).unwrap()
    }

    #[test]
    fn sigma_examples() {
        let s = sigma(SigmaParams::new(2, 6).unwrap());
        assert_eq!(s, vec![0, 2, 4, 1, 3, 5]);
        assert!(has_cyclic_stepping(&s, 2));
        assert_eq!(
            sigma(SigmaParams::new(1, 7).unwrap()),
            (0..7).collect::<Vec<_>>()
        );
        assert_eq!(SigmaParams::new(4, 6).unwrap().d(), 2);
        assert!(SigmaParams::new(6, 6).is_err());
        assert!(SigmaParams::new(0, 6).is_err());
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(1, 5).unwrap(), (0..5).collect::<Vec<_>>());
        let t = tau(2, 6).unwrap();
        assert!(has_linear_stepping(&t, 2));
        assert!(has_linear_stepping(&tau(3, 5).unwrap(), 3));
        assert!(tau(5, 5).is_err());
    }

    #[test]
    fn stepping_checkers_reject_bad_orders() {
        assert!(!has_cyclic_stepping(&[0, 1, 2, 3, 4, 5], 2));
        assert!(!has_linear_stepping(&[0, 1, 2, 3], 2));
        assert!(!is_bijection(&[0, 0, 1]));
        assert!(!is_bijection(&[0, 3, 1]));
    }

    /// Exhaustive witness search over all permutations of [5] for s = 3.
    #[test]
    fn a_linear_stepping_order_exists_for_3_of_5() {
        fn permutations(rest: &mut Vec<usize>, acc: &mut Vec<usize>, found: &mut usize) {
            if rest.is_empty() {
                if has_linear_stepping(acc, 3) {
                    *found += 1;
                }
                return;
            }
            for k in 0..rest.len() {
                let v = rest.remove(k);
                acc.push(v);
                permutations(rest, acc, found);
                acc.pop();
                rest.insert(k, v);
            }
        }
        let mut found = 0;
        permutations(&mut (0..5).collect(), &mut Vec::new(), &mut found);
        assert!(found > 0);
        assert!(has_linear_stepping(&tau(3, 5).unwrap(), 3));
    }

    #[test]
    fn sigma_and_tau_for_all_small_pairs() {
        for t in 2..=30 {
            for s in 1..t {
                let order = sigma(SigmaParams::new(s, t).unwrap());
                assert!(is_bijection(&order), "s={s} t={t}");
                assert!(has_cyclic_stepping(&order, s), "s={s} t={t}");
                assert!(has_linear_stepping(&tau(s, t).unwrap(), s), "s={s} t={t}");
            }
        }
    }

    #[test]
    fn rho_params_for_2_2_4() {
        let p = validate_rho_params(&spec(1, &[2, 2, 4]), 5).unwrap();
        assert_eq!(
            (p.p, p.q, p.a, p.b, p.alpha, p.beta, p.gamma, p.delta, p.nu),
            (2, 1, 1, 3, 2, 3, 2, 1, 1)
        );
        assert_eq!(p.gamma * p.nu + p.delta * p.q, p.b);
    }

    #[test]
    fn rho_params_rejections() {
        let s = spec(1, &[2, 2, 4]);
        assert!(matches!(
            validate_rho_params(&s, 3),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            validate_rho_params(&s, 4),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            validate_rho_params(&s, 0),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            validate_rho_params(&s, 8),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn rho_on_2_2_4_is_a_stepping_bijection() {
        let p = validate_rho_params(&spec(1, &[2, 2, 4]), 5).unwrap();
        let mut image = Vec::new();
        for i in 0..2 {
            for j in 0..4 {
                let v = rho(&p, i, j).unwrap();
                image.push(v);
                if j + 1 < 4 && v < 8 - 5 {
                    assert_eq!(rho(&p, i, j + 1).unwrap(), v + 5);
                }
            }
        }
        image.sort_unstable();
        assert_eq!(image, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn rho_offsets_stay_inside_their_branch() {
        let p = validate_rho_params(&spec(1, &[2, 2, 4]), 5).unwrap();
        for i in 0..2 {
            for j in 0..4 {
                let d = rho_detail(&p, i, j).unwrap();
                let (lo, hi) = p.offsets(d.branch);
                let off = d.value as i64 - d.s as i64 * p.r;
                assert!(lo <= off && off < hi, "{d:?}");
            }
        }
        assert_eq!(rho_detail(&p, 1, 2).unwrap().branch, RhoBranch::HighBeta);
    }

    #[test]
    fn rho_degenerates_to_the_simple_schedule() {
        // r = n1^{u−1}: p = 1, q = 0, every row uses σ with step 1.
        for sizes in [[2, 2, 3], [3, 3, 2]] {
            let mut sizes = sizes.to_vec();
            sizes.sort_unstable();
            let s = spec(1, &sizes);
            let r = s.head_power();
            let p = RhoParams::derive_unchecked(&s, r).unwrap();
            assert_eq!((p.p, p.q), (1, 0));
            for i in 0..r {
                for j in 0..s.n_prime() {
                    assert_eq!(rho(&p, i, j).unwrap(), rho_simple(r, i, j));
                }
            }
        }
    }

    #[test]
    fn rho_rejects_out_of_domain_indices() {
        let p = validate_rho_params(&spec(1, &[2, 2, 4]), 5).unwrap();
        assert!(matches!(rho(&p, 2, 0), Err(Error::OutOfRange { .. })));
        assert!(matches!(rho(&p, 0, 4), Err(Error::OutOfRange { .. })));
    }
}
