//! Domain types shared by every stage of the pipeline, plus instance validation.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::compromise::PayoffMatrix;
use crate::formation::{form_network, Network, OfferProfile};
use crate::rational::Rational;

/// Networks are stored as one 64-bit adjacency word per player.
pub const MAX_PLAYERS: usize = 64;

/// A player, stored 0-based and displayed/serialized 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlayerId(pub usize);

impl PlayerId {
    pub fn index(self) -> usize {
        self.0
    }

    /// Converts a 1-based label into a player id.
    pub fn from_label(label: usize) -> Option<Self> {
        label.checked_sub(1).map(PlayerId)
    }

    pub fn label(self) -> usize {
        self.0 + 1
    }
}

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl Serialize for PlayerId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.label() as u64)
    }
}

impl<'de> Deserialize<'de> for PlayerId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let label = usize::deserialize(deserializer)?;
        PlayerId::from_label(label)
            .ok_or_else(|| serde::de::Error::custom("player labels are 1-based; got 0"))
    }
}

/// Criterion deciding whether a coalition exists in a network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActivationRule {
    /// Every ordered pair of distinct members is an arc.
    Mutual,
    /// Every unordered member pair is joined by an arc in at least one direction.
    Linked,
}

impl fmt::Display for ActivationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ActivationRule::Mutual => "mutual",
            ActivationRule::Linked => "linked",
        })
    }
}

/// A 2- or 3-player coalition with income `D(S)` split by per-member shares.
///
/// `shares[k]` belongs to `members[k]`. Member order is kept as given so the
/// coalition prints the way it was written down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalitionSpec {
    pub members: Vec<PlayerId>,
    pub income: Rational,
    pub shares: Vec<Rational>,
}

impl CoalitionSpec {
    pub fn new(members: Vec<PlayerId>, income: Rational, shares: Vec<Rational>) -> Self {
        CoalitionSpec { members, income, shares }
    }

    /// Coalition with equal shares `1/|S|`.
    pub fn uniform(members: Vec<PlayerId>, income: Rational) -> Self {
        let share = Rational::new(1, members.len() as i64);
        let shares = vec![share; members.len()];
        CoalitionSpec { members, income, shares }
    }

    /// Builds a coalition from 1-based labels; convenient for fixtures and tests.
    pub fn from_labels(labels: &[usize], income: Rational, shares: &[Rational]) -> Self {
        let members = labels
            .iter()
            .map(|&l| PlayerId::from_label(l).expect("1-based label"))
            .collect();
        CoalitionSpec::new(members, income, shares.to_vec())
    }

    pub fn contains(&self, player: PlayerId) -> bool {
        self.members.contains(&player)
    }

    pub fn share_of(&self, player: PlayerId) -> Option<Rational> {
        self.members
            .iter()
            .position(|&m| m == player)
            .and_then(|k| self.shares.get(k).copied())
    }

    pub fn share_sum(&self) -> Rational {
        self.shares.iter().sum()
    }

    /// Sorted member set, used to detect duplicates.
    pub fn member_set(&self) -> BTreeSet<PlayerId> {
        self.members.iter().copied().collect()
    }

    /// All unordered member pairs `(a, b)` with `a < b`.
    pub fn member_pairs(&self) -> Vec<(PlayerId, PlayerId)> {
        let mut pairs = Vec::new();
        for (i, &a) in self.members.iter().enumerate() {
            for &b in &self.members[i + 1..] {
                pairs.push(if a < b { (a, b) } else { (b, a) });
            }
        }
        pairs
    }

    /// Two coalitions have intersecting arc sets iff they share a member pair.
    pub fn shares_arcs_with(&self, other: &CoalitionSpec) -> bool {
        let mine = self.member_pairs();
        other.member_pairs().iter().any(|p| mine.contains(p))
    }
}

impl fmt::Display for CoalitionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        write!(f, "({})", labels.join(","))
    }
}

/// A network carried by an instance under a name (e.g. a worked-example fixture).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedNetwork {
    pub name: String,
    pub network: Network,
}

/// The game: players, coalition incomes and shares, and optionally the list of
/// admissible action profiles.
///
/// Unlisted coalitions have income 0 and are never enumerated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameInstance {
    pub n: usize,
    pub coalitions: Vec<CoalitionSpec>,
    pub profiles: Vec<OfferProfile>,
    pub networks: Vec<NamedNetwork>,
    /// Payoff matrix supplied alongside the instance (not engine-computed).
    pub payoff_matrix: Option<PayoffMatrix>,
    pub default_rule: Option<ActivationRule>,
}

impl GameInstance {
    pub fn new(n: usize, coalitions: Vec<CoalitionSpec>) -> Self {
        GameInstance {
            n,
            coalitions,
            profiles: Vec::new(),
            networks: Vec::new(),
            payoff_matrix: None,
            default_rule: None,
        }
    }

    pub fn players(&self) -> impl Iterator<Item = PlayerId> {
        (0..self.n).map(PlayerId)
    }

    pub fn network(&self, name: &str) -> Option<&Network> {
        self.networks.iter().find(|nn| nn.name == name).map(|nn| &nn.network)
    }

    /// Networks realized by the listed profiles, in order.
    pub fn profile_networks(&self) -> crate::error::Result<Vec<Network>> {
        self.profiles.iter().map(form_network).collect()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Checks an instance for structural problems.
///
/// With `strict` set, coalitions whose shares do not sum to 1 are errors;
/// otherwise they are reported as warnings.
pub fn validate_instance(instance: &GameInstance, strict: bool) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = instance.n;

    if n < 2 {
        report.errors.push(format!("need at least 2 players, got {n}"));
    }
    if n > MAX_PLAYERS {
        report
            .errors
            .push(format!("at most {MAX_PLAYERS} players are supported, got {n}"));
    }

    let mut seen: Vec<(BTreeSet<PlayerId>, usize)> = Vec::new();
    for (idx, c) in instance.coalitions.iter().enumerate() {
        let tag = format!("coalition #{} {}", idx + 1, c);
        if !(2..=3).contains(&c.members.len()) {
            report
                .errors
                .push(format!("{tag}: must have 2 or 3 members, has {}", c.members.len()));
        }
        if let Some(bad) = c.members.iter().find(|m| m.index() >= n) {
            report
                .errors
                .push(format!("{tag}: player {bad} out of range 1..={n}"));
        }
        let set = c.member_set();
        if set.len() != c.members.len() {
            report.errors.push(format!("{tag}: repeated member"));
        }
        if c.shares.len() != c.members.len() {
            report.errors.push(format!(
                "{tag}: {} shares for {} members",
                c.shares.len(),
                c.members.len()
            ));
        }
        for (m, s) in c.members.iter().zip(&c.shares) {
            if s.is_negative() {
                report
                    .errors
                    .push(format!("{tag}: negative share {s} for player {m}"));
            }
        }
        let sum = c.share_sum();
        if sum != Rational::ONE {
            let msg = format!("{tag}: shares sum to {sum}, not 1");
            if strict {
                report.errors.push(msg);
            } else {
                report.warnings.push(msg);
            }
        }
        if let Some((_, first)) = seen.iter().find(|(s, _)| *s == set) {
            report.errors.push(format!(
                "{tag}: same member set as coalition #{}",
                first + 1
            ));
        } else {
            seen.push((set, idx));
        }
    }

    for (idx, p) in instance.profiles.iter().enumerate() {
        let tag = format!("profile #{}", idx + 1);
        if let Err(e) = p.check_dimensions() {
            report.errors.push(format!("{tag}: {e}"));
            continue;
        }
        if p.size() != n {
            report
                .errors
                .push(format!("{tag}: matrices are {0}x{0}, expected {n}x{n}", p.size()));
        }
        let diag = p.diagonal_entries();
        if !diag.is_empty() {
            let who: Vec<String> = diag.iter().map(|d| d.to_string()).collect();
            report.warnings.push(format!(
                "{tag}: diagonal entries for player(s) {} ignored",
                who.join(",")
            ));
        }
    }

    for nn in &instance.networks {
        if nn.network.n() != n {
            report.errors.push(format!(
                "network {:?}: has {} players, expected {n}",
                nn.name,
                nn.network.n()
            ));
        }
    }

    if let Some(m) = &instance.payoff_matrix {
        if m.rows.is_empty() {
            report.errors.push("payoff matrix has no rows".to_string());
        }
        for (i, row) in m.rows.iter().enumerate() {
            if row.len() != n {
                report.errors.push(format!(
                    "payoff matrix row {}: {} entries, expected {n}",
                    i + 1,
                    row.len()
                ));
            }
        }
        if m.labels.len() != m.rows.len() {
            report.errors.push(format!(
                "payoff matrix: {} labels for {} rows",
                m.labels.len(),
                m.rows.len()
            ));
        }
    }

    report
}
