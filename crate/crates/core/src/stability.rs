//! Stability of networks under unilateral link-breaking.
//!
//! A deviation by player `x` removes a nonempty subset of the arcs incident to
//! `x`; players can drop links on their own but cannot create them. A network
//! is stable when no deviation strictly increases the deviator's payoff.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::formation::{Arc, Network};
use crate::model::{ActivationRule, CoalitionSpec, GameInstance, PlayerId};
use crate::payoff::{active_coalitions, is_active, player_payoff};
use crate::rational::Rational;

/// Incident-arc counts above this are not enumerated (the subset space is `2^k`).
pub const MAX_INCIDENT_ARCS: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deviation {
    pub player: PlayerId,
    pub removed_arcs: Vec<Arc>,
    pub resulting_network: Network,
    pub gain: Rational,
}

impl Deviation {
    /// Ordering used to pick a single witness: larger gain first, then the
    /// smaller player, then the lexicographically smaller arc list.
    fn preference(&self, other: &Deviation) -> Ordering {
        other
            .gain
            .cmp(&self.gain)
            .then(self.player.cmp(&other.player))
            .then_with(|| self.removed_arcs.cmp(&other.removed_arcs))
    }
}

fn better(best: Option<Deviation>, candidate: Deviation) -> Option<Deviation> {
    match best {
        Some(b) if b.preference(&candidate) != Ordering::Greater => Some(b),
        _ => Some(candidate),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub stable: bool,
    pub witness: Option<Deviation>,
    /// Set by the disjoint criterion: the negative-income coalition the witness dissolves.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_one_based")]
    pub negative_coalition: Option<usize>,
}

impl StabilityReport {
    fn from_witness(witness: Option<Deviation>) -> Self {
        StabilityReport { stable: witness.is_none(), witness, negative_coalition: None }
    }
}

/// All nonempty subsets of the player's incident arcs.
///
/// Subset `m` (for `m = 1 .. 2^k`) holds the incident arcs whose ascending
/// position has its bit set in `m`.
pub fn enumerate_deviations(network: &Network, player: PlayerId) -> Vec<Vec<Arc>> {
    let incident = network.incident_arcs(player);
    assert!(
        incident.len() <= MAX_INCIDENT_ARCS,
        "{} incident arcs is too many to enumerate",
        incident.len()
    );
    (1u64..(1u64 << incident.len()))
        .map(|mask| subset(&incident, mask))
        .collect()
}

fn subset(arcs: &[Arc], mask: u64) -> Vec<Arc> {
    arcs.iter()
        .enumerate()
        .filter(|(k, _)| (mask >> k) & 1 == 1)
        .map(|(_, &a)| a)
        .collect()
}

/// Best improving deviation of one player, if any.
fn best_deviation(
    instance: &GameInstance,
    network: &Network,
    rule: ActivationRule,
    player: PlayerId,
) -> Option<Deviation> {
    let incident = network.incident_arcs(player);
    if incident.is_empty() {
        return None;
    }
    assert!(
        incident.len() <= MAX_INCIDENT_ARCS,
        "{} incident arcs is too many to enumerate",
        incident.len()
    );
    // Only coalitions that pay this player can change their payoff.
    let relevant: Vec<(&CoalitionSpec, Rational)> = instance
        .coalitions
        .iter()
        .filter(|c| !c.income.is_zero())
        .filter_map(|c| c.share_of(player).map(|s| (c, s * c.income)))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    let payoff = |g: &Network| -> Rational {
        relevant
            .iter()
            .filter(|(c, _)| is_active(c, g, rule))
            .map(|(_, v)| *v)
            .sum()
    };
    let before = payoff(network);

    let mut best: Option<(Rational, u64)> = None;
    for mask in 1u64..(1u64 << incident.len()) {
        let arcs = subset(&incident, mask);
        let gain = payoff(&network.without(&arcs)) - before;
        if !gain.is_positive() {
            continue;
        }
        best = match best {
            Some((g, m)) if g > gain => Some((g, m)),
            Some((g, m)) if g == gain && subset(&incident, m) <= arcs => Some((g, m)),
            _ => Some((gain, mask)),
        };
    }
    best.map(|(gain, mask)| {
        let removed_arcs = subset(&incident, mask);
        Deviation {
            player,
            resulting_network: network.without(&removed_arcs),
            removed_arcs,
            gain,
        }
    })
}

/// Exhaustive check over every break-only deviation of every player.
pub fn is_stable(instance: &GameInstance, network: &Network, rule: ActivationRule) -> StabilityReport {
    let per_player: Vec<Option<Deviation>> = (0..instance.n)
        .into_par_iter()
        .map(|p| best_deviation(instance, network, rule, PlayerId(p)))
        .collect();
    let witness = per_player.into_iter().flatten().fold(None, better);
    StabilityReport::from_witness(witness)
}

/// Stability reports for many networks, in input order.
pub fn stability_reports(
    instance: &GameInstance,
    networks: &[Network],
    rule: ActivationRule,
) -> Vec<StabilityReport> {
    networks
        .par_iter()
        .map(|g| is_stable(instance, g, rule))
        .collect()
}

/// First pair of coalitions (by index) whose arc sets intersect.
pub fn overlapping_pair(instance: &GameInstance) -> Option<(usize, usize)> {
    let cs = &instance.coalitions;
    (0..cs.len())
        .flat_map(|i| (i + 1..cs.len()).map(move |j| (i, j)))
        .find(|&(i, j)| cs[i].shares_arcs_with(&cs[j]))
}

/// Fast criterion for instances whose coalitions have pairwise disjoint arc sets.
///
/// Breaking one member pair dissolves exactly one coalition in that case, so the
/// network is stable iff no active coalition with negative income pays a
/// positive share to any member.
pub fn check_disjoint_stability(
    instance: &GameInstance,
    network: &Network,
    rule: ActivationRule,
) -> Result<StabilityReport> {
    if let Some((i, j)) = overlapping_pair(instance) {
        return Err(Error::NotDisjoint {
            first: format!("#{} {}", i + 1, instance.coalitions[i]),
            second: format!("#{} {}", j + 1, instance.coalitions[j]),
        });
    }

    let mut best: Option<(Deviation, usize)> = None;
    for idx in active_coalitions(instance, network, rule).indices {
        let c = &instance.coalitions[idx];
        if !c.income.is_negative() {
            continue;
        }
        for (&x, share) in c.members.iter().zip(&c.shares) {
            if !share.is_positive() {
                continue;
            }
            for &y in c.members.iter().filter(|&&y| y != x) {
                let removed_arcs: Vec<Arc> = [Arc { from: x, to: y }, Arc { from: y, to: x }]
                    .into_iter()
                    .filter(|&a| network.contains(a))
                    .collect::<std::collections::BTreeSet<_>>()
                    .into_iter()
                    .collect();
                let after = network.without(&removed_arcs);
                let gain = player_payoff(instance, &after, rule, x)
                    - player_payoff(instance, network, rule, x);
                let candidate = Deviation { player: x, removed_arcs, resulting_network: after, gain };
                best = match best {
                    Some((b, bi)) if b.preference(&candidate) != Ordering::Greater => Some((b, bi)),
                    _ => Some((candidate, idx)),
                };
            }
        }
    }

    Ok(match best {
        None => StabilityReport::from_witness(None),
        Some((witness, idx)) => StabilityReport {
            stable: false,
            witness: Some(witness),
            negative_coalition: Some(idx),
        },
    })
}

/// A one-player move between two listed profiles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReachableDeviation {
    #[serde(serialize_with = "one_based")]
    pub from: usize,
    #[serde(serialize_with = "one_based")]
    pub to: usize,
    pub player: PlayerId,
    pub removed_arcs: Vec<Arc>,
    pub gain: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictedReport {
    /// Profile indices (0-based in memory, 1-based when serialized).
    #[serde(serialize_with = "all_one_based")]
    pub equilibria: Vec<usize>,
    pub reachable: Vec<ReachableDeviation>,
}

/// Nash check restricted to the instance's listed profiles.
///
/// Profile `t` is reachable from `s` by player `x` when `g_t` is `g_s` minus a
/// nonempty set of arcs that all touch `x`.
pub fn restricted_equilibria(instance: &GameInstance, rule: ActivationRule) -> Result<RestrictedReport> {
    if instance.profiles.is_empty() {
        return Err(Error::InvalidInput("instance lists no action profiles".to_string()));
    }
    let networks = instance.profile_networks()?;
    let mut reachable = Vec::new();
    for (s, gs) in networks.iter().enumerate() {
        for (t, gt) in networks.iter().enumerate() {
            if s == t || !gt.is_subset_of(gs) {
                continue;
            }
            let removed = gs.difference(gt);
            if removed.is_empty() {
                continue;
            }
            for player in instance.players().filter(|&p| removed.iter().all(|a| a.touches(p))) {
                let gain = player_payoff(instance, gt, rule, player) - player_payoff(instance, gs, rule, player);
                reachable.push(ReachableDeviation {
                    from: s,
                    to: t,
                    player,
                    removed_arcs: removed.clone(),
                    gain,
                });
            }
        }
    }
    let equilibria = (0..networks.len())
        .filter(|&s| !reachable.iter().any(|r| r.from == s && r.gain.is_positive()))
        .collect();
    Ok(RestrictedReport { equilibria, reachable })
}

fn one_based<S: Serializer>(index: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(*index as u64 + 1)
}

fn opt_one_based<S: Serializer>(index: &Option<usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match index {
        Some(i) => s.serialize_some(&(*i as u64 + 1)),
        None => s.serialize_none(),
    }
}

fn all_one_based<S: Serializer>(indices: &[usize], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(indices.iter().map(|i| i + 1))
}
