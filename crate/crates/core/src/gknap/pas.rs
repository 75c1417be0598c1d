use serde::{Deserialize, Serialize};

use super::rounding::{prune_to_kernel, Rounding};
use super::strip::StripConfig;
use super::GknapError;
use crate::geometry::Placement;
use crate::oracle::{packing_feasible_exact, OracleBudget};
use crate::{Epsilon, Item, KernelReport, KnapsackInstance, Packing, PasOutcome};

/// Largest k′ accepted by [`solve_restricted`] unless overridden.
pub const DEFAULT_MAX_K_PRIME: usize = 6;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GknapKnobs {
    /// Overrides k̃ = k^{⌈8/ε⌉+1}.
    pub k_tilde: Option<u128>,
    pub max_k_prime: Option<usize>,
    pub strip: StripConfig,
    pub budget: OracleBudget,
}

impl GknapKnobs {
    pub fn k_tilde(&self, k: usize, eps: Epsilon) -> u128 {
        self.k_tilde.unwrap_or_else(|| theory_k_tilde(k, eps))
    }
}

/// k^{⌈8/ε⌉+1}, saturating.
pub fn theory_k_tilde(k: usize, eps: Epsilon) -> u128 {
    let e = eps.ceil_div(8) as u32 + 1;
    (k.max(1) as u128).checked_pow(e).unwrap_or(u128::MAX)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictedResult {
    pub kernel: KernelReport,
    /// A packing of k′ kernel items into the full square, if one exists.
    pub packing: Option<Packing>,
    /// Subsets handed to the feasibility oracle.
    pub probes: usize,
}

/// Searches the kernel for k′ items that pack into [0,N]², trying subsets
/// in lexicographic order and skipping those whose area exceeds N².
pub fn solve_restricted(
    items: &[Item],
    n: i64,
    rotations: bool,
    k_prime: usize,
    k_tilde: u128,
    max_k_prime: usize,
    budget: &OracleBudget,
) -> Result<RestrictedResult, GknapError> {
    if k_prime > max_k_prime {
        return Err(GknapError::LimitExceeded(format!("k′ = {k_prime} exceeds the limit {max_k_prime}")));
    }
    let kernel = prune_to_kernel(items, n, k_prime, k_tilde);
    let fits = |it: &Item| it.w <= n && it.h <= n;
    let cand: Vec<usize> = kernel.indices.iter().copied().filter(|&i| fits(&items[i])).collect();
    let mut probes = 0;
    if k_prime == 0 {
        return Ok(RestrictedResult { kernel, packing: Some(Packing::new(n)), probes });
    }
    if cand.len() < k_prime {
        return Ok(RestrictedResult { kernel, packing: None, probes });
    }
    let cap = n as i128 * n as i128;
    let area = |i: usize| items[i].w as i128 * items[i].h as i128;
    let mut pick: Vec<usize> = (0..k_prime).collect();
    loop {
        let chosen: Vec<usize> = pick.iter().map(|&p| cand[p]).collect();
        if chosen.iter().map(|&i| area(i)).sum::<i128>() <= cap {
            probes += 1;
            let sub: Vec<Item> = chosen.iter().map(|&i| items[i]).collect();
            if let Some(pl) = packing_feasible_exact(&sub, rotations, n, n, budget)? {
                let placements: Vec<Placement> =
                    pl.into_iter().map(|p| Placement { item: chosen[p.item], ..p }).collect();
                return Ok(RestrictedResult { kernel, packing: Some(Packing { n, placements }), probes });
            }
        }
        let Some(pos) = (0..k_prime).rev().find(|&i| pick[i] < cand.len() - k_prime + i) else {
            return Ok(RestrictedResult { kernel, packing: None, probes });
        };
        pick[pos] += 1;
        for i in pos + 1..k_prime {
            pick[i] = pick[i - 1] + 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GknapPasReport {
    pub outcome: PasOutcome<Packing>,
    pub k_prime: usize,
    pub k_tilde: u128,
    pub kernel_size: usize,
    pub probes: usize,
}

/// Whether a failed search proves OPT < k: always when the rounding classes
/// are exact sides, otherwise only with the default k̃, rotations allowed and
/// k at or above the strip-freeing floor.
pub fn negative_branch_sound(inst: &KnapsackInstance, k: usize, eps: Epsilon, knobs: &GknapKnobs) -> bool {
    let k_prime = eps.ceil_keep(k);
    let k_tilde = knobs.k_tilde(k, eps);
    let exact = Rounding::new(inst.n, k_prime, k_tilde).is_none_or(|r| r.m >= inst.n as i128);
    exact || (knobs.k_tilde.is_none() && inst.rotations && k >= knobs.strip.floor(eps))
}

/// Returns ⌈(1−ε)k⌉ packed items or asserts that fewer than k items fit.
pub fn pas_2dkr(
    inst: &KnapsackInstance,
    k: usize,
    eps: Epsilon,
    knobs: &GknapKnobs,
) -> Result<GknapPasReport, GknapError> {
    let k_prime = eps.ceil_keep(k);
    let k_tilde = knobs.k_tilde(k, eps);
    if inst.items.len() < k {
        let outcome = PasOutcome::OptBelowK { sound: true };
        return Ok(GknapPasReport { outcome, k_prime, k_tilde, kernel_size: inst.items.len(), probes: 0 });
    }
    let res = solve_restricted(
        &inst.items,
        inst.n,
        inst.rotations,
        k_prime,
        k_tilde,
        knobs.max_k_prime.unwrap_or(DEFAULT_MAX_K_PRIME),
        &knobs.budget,
    )?;
    let outcome = match res.packing {
        Some(p) => PasOutcome::Solution(p),
        None => PasOutcome::OptBelowK { sound: negative_branch_sound(inst, k, eps, knobs) },
    };
    Ok(GknapPasReport { outcome, k_prime, k_tilde, kernel_size: res.kernel.indices.len(), probes: res.probes })
}

/// The pruned item set for k′ = ⌈(1−ε)k⌉ and the configured k̃.
pub fn kernel_2dkr(inst: &KnapsackInstance, k: usize, eps: Epsilon, knobs: &GknapKnobs) -> KernelReport {
    prune_to_kernel(&inst.items, inst.n, eps.ceil_keep(k), knobs.k_tilde(k, eps))
}
