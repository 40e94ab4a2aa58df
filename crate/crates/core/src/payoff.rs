//! Coalition activation and additive payoffs.
//!
//! A player's payoff in a network is the sum of `share · income` over the
//! active coalitions that contain them.

use rayon::prelude::*;
use serde::Serialize;

use crate::formation::Network;
use crate::model::{ActivationRule, CoalitionSpec, GameInstance, PlayerId};
use crate::rational::Rational;

pub fn is_active(coalition: &CoalitionSpec, network: &Network, rule: ActivationRule) -> bool {
    if coalition.members.iter().any(|m| m.index() >= network.n()) {
        return false;
    }
    coalition.member_pairs().into_iter().all(|(a, b)| match rule {
        ActivationRule::Mutual => network.mutual(a, b),
        ActivationRule::Linked => network.linked(a, b),
    })
}

/// Indices (into `GameInstance::coalitions`) of the coalitions active in a network.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActiveCoalitionSet {
    pub indices: Vec<usize>,
}

impl ActiveCoalitionSet {
    pub fn iter<'a>(&'a self, instance: &'a GameInstance) -> impl Iterator<Item = &'a CoalitionSpec> {
        self.indices.iter().map(move |&i| &instance.coalitions[i])
    }

    /// Active coalitions with nonzero income.
    pub fn nonzero(&self, instance: &GameInstance) -> Vec<usize> {
        self.indices
            .iter()
            .copied()
            .filter(|&i| !instance.coalitions[i].income.is_zero())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

pub fn active_coalitions(
    instance: &GameInstance,
    network: &Network,
    rule: ActivationRule,
) -> ActiveCoalitionSet {
    let indices = instance
        .coalitions
        .iter()
        .enumerate()
        .filter(|(_, c)| is_active(c, network, rule))
        .map(|(i, _)| i)
        .collect();
    ActiveCoalitionSet { indices }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PayoffVector(pub Vec<Rational>);

impl PayoffVector {
    pub fn get(&self, player: PlayerId) -> Rational {
        self.0[player.index()]
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }
}

pub fn payoff_vector(instance: &GameInstance, network: &Network, rule: ActivationRule) -> PayoffVector {
    let mut values = vec![Rational::ZERO; instance.n];
    for c in &instance.coalitions {
        if c.income.is_zero() || !is_active(c, network, rule) {
            continue;
        }
        for (m, s) in c.members.iter().zip(&c.shares) {
            values[m.index()] += *s * c.income;
        }
    }
    PayoffVector(values)
}

/// Payoff of a single player; cheaper than a full vector during deviation search.
pub fn player_payoff(
    instance: &GameInstance,
    network: &Network,
    rule: ActivationRule,
    player: PlayerId,
) -> Rational {
    instance
        .coalitions
        .iter()
        .filter(|c| !c.income.is_zero())
        .filter_map(|c| c.share_of(player).map(|s| (c, s)))
        .filter(|(c, _)| is_active(c, network, rule))
        .map(|(c, s)| s * c.income)
        .sum()
}

/// Payoff vectors for many networks, in input order.
pub fn payoff_table(instance: &GameInstance, networks: &[Network], rule: ActivationRule) -> Vec<PayoffVector> {
    networks
        .par_iter()
        .map(|g| payoff_vector(instance, g, rule))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formation::Arc;

    fn third() -> Rational {
        Rational::new(1, 3)
    }

    fn g5() -> Network {
        Network::from_arcs(
            5,
            [(0, 1), (0, 2), (0, 3), (0, 4), (2, 1), (2, 3), (2, 4), (3, 1), (3, 4), (4, 1)]
                .map(|(a, b)| Arc::new(a, b)),
        )
        .unwrap()
    }

    #[test]
    fn linked_versus_mutual() {
        let c = CoalitionSpec::from_labels(&[3, 4, 5], 18.into(), &[third(); 3]);
        assert!(is_active(&c, &g5(), ActivationRule::Linked));
        assert!(!is_active(&c, &g5(), ActivationRule::Mutual));
        let empty = Network::empty(5);
        assert!(!is_active(&c, &empty, ActivationRule::Linked));
        assert!(!is_active(&c, &empty, ActivationRule::Mutual));
    }

    #[test]
    fn empty_network_pays_nothing() {
        let c = CoalitionSpec::from_labels(&[1, 2], (-4).into(), &[Rational::new(1, 2); 2]);
        let inst = GameInstance::new(3, vec![c]);
        let g = Network::empty(3);
        assert!(active_coalitions(&inst, &g, ActivationRule::Linked).is_empty());
        assert_eq!(payoff_vector(&inst, &g, ActivationRule::Linked).0, vec![Rational::ZERO; 3]);
    }

    #[test]
    fn two_player_coalition_payoff() {
        let half = Rational::new(1, 2);
        let c = CoalitionSpec::from_labels(&[1, 2], (-4).into(), &[half, half]);
        let inst = GameInstance::new(3, vec![c]);
        let one_way = Network::from_arcs(3, [Arc::new(0, 1)]).unwrap();
        let h = payoff_vector(&inst, &one_way, ActivationRule::Linked);
        assert_eq!(h.0, vec![(-2).into(), (-2).into(), Rational::ZERO]);
        let h = payoff_vector(&inst, &one_way, ActivationRule::Mutual);
        assert_eq!(h.total(), Rational::ZERO);
        assert_eq!(player_payoff(&inst, &one_way, ActivationRule::Linked, PlayerId(1)), (-2).into());
    }

    #[test]
    fn zero_income_coalitions_are_listed_but_do_not_pay() {
        let inst = GameInstance::new(
            3,
            vec![CoalitionSpec::uniform(vec![PlayerId(0), PlayerId(1), PlayerId(2)], Rational::ZERO)],
        );
        let g = Network::complete(3);
        let act = active_coalitions(&inst, &g, ActivationRule::Mutual);
        assert_eq!(act.indices, vec![0]);
        assert!(act.nonzero(&inst).is_empty());
        assert_eq!(payoff_vector(&inst, &g, ActivationRule::Mutual).total(), Rational::ZERO);
    }
}
