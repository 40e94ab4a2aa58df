//! Network formation from offer/acceptance matrices and arc-level editing.
//!
//! An arc `(i, j)` forms when `i` offers to `j` (`gamma_plus[i][j]`) and `j`
//! accepts offers from `i` (`gamma_minus[j][i]`), i.e. `g = min(Γ⁺, (Γ⁻)ᵀ)`.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::{PlayerId, MAX_PLAYERS};

/// One action profile: every player's offers (row of `gamma_plus`) and
/// acceptances (row of `gamma_minus`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OfferProfile {
    pub label: String,
    pub gamma_plus: Vec<Vec<bool>>,
    pub gamma_minus: Vec<Vec<bool>>,
}

impl OfferProfile {
    pub fn new(label: impl Into<String>, gamma_plus: Vec<Vec<bool>>, gamma_minus: Vec<Vec<bool>>) -> Self {
        OfferProfile { label: label.into(), gamma_plus, gamma_minus }
    }

    /// Builds a profile from 0/1 rows.
    pub fn from_bits(label: impl Into<String>, gamma_plus: &[&[u8]], gamma_minus: &[&[u8]]) -> Self {
        let conv = |m: &[&[u8]]| m.iter().map(|r| r.iter().map(|&b| b != 0).collect()).collect();
        OfferProfile::new(label, conv(gamma_plus), conv(gamma_minus))
    }

    pub fn size(&self) -> usize {
        self.gamma_plus.len()
    }

    pub fn check_dimensions(&self) -> Result<()> {
        let n = self.gamma_plus.len();
        let square = |m: &Vec<Vec<bool>>| m.len() == n && m.iter().all(|r| r.len() == n);
        if !square(&self.gamma_plus) || !square(&self.gamma_minus) {
            return Err(Error::InvalidInput(
                "offer and acceptance matrices must be square and the same size".to_string(),
            ));
        }
        if n > MAX_PLAYERS {
            return Err(Error::InvalidInput(format!("{n} players exceeds {MAX_PLAYERS}")));
        }
        Ok(())
    }

    /// Players with a set diagonal entry in either matrix.
    pub fn diagonal_entries(&self) -> Vec<PlayerId> {
        (0..self.size())
            .filter(|&i| {
                self.gamma_plus.get(i).and_then(|r| r.get(i)).copied().unwrap_or(false)
                    || self.gamma_minus.get(i).and_then(|r| r.get(i)).copied().unwrap_or(false)
            })
            .map(PlayerId)
            .collect()
    }
}

/// An ordered pair of distinct players.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(PlayerId, PlayerId)", into = "(PlayerId, PlayerId)")]
pub struct Arc {
    pub from: PlayerId,
    pub to: PlayerId,
}

impl Arc {
    pub fn new(from: usize, to: usize) -> Self {
        Arc { from: PlayerId(from), to: PlayerId(to) }
    }

    pub fn touches(&self, player: PlayerId) -> bool {
        self.from == player || self.to == player
    }
}

impl From<(PlayerId, PlayerId)> for Arc {
    fn from((from, to): (PlayerId, PlayerId)) -> Self {
        Arc { from, to }
    }
}

impl From<Arc> for (PlayerId, PlayerId) {
    fn from(a: Arc) -> Self {
        (a.from, a.to)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.from, self.to)
    }
}

/// A loop-free directed graph on `n` players, one adjacency word per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Network {
    n: usize,
    out: Vec<u64>,
}

impl Network {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_PLAYERS, "{n} players exceeds {MAX_PLAYERS}");
        Network { n, out: vec![0; n] }
    }

    /// Every ordered pair of distinct players.
    pub fn complete(n: usize) -> Self {
        let mut g = Network::empty(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    g.out[i] |= 1 << j;
                }
            }
        }
        g
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        if n > MAX_PLAYERS {
            return Err(Error::InvalidInput(format!("{n} players exceeds {MAX_PLAYERS}")));
        }
        let mut g = Network::empty(n);
        for a in arcs {
            if a.from.index() >= n || a.to.index() >= n {
                return Err(Error::InvalidInput(format!("arc {a} out of range for {n} players")));
            }
            if a.from == a.to {
                return Err(Error::InvalidInput(format!("self-arc {a} not allowed")));
            }
            g.out[a.from.index()] |= 1 << a.to.index();
        }
        Ok(g)
    }

    /// Reads a 0/1 adjacency matrix. Diagonal entries are dropped.
    pub fn from_matrix(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("adjacency matrix must be square".to_string()));
        }
        let arcs = rows.iter().enumerate().flat_map(|(i, r)| {
            r.iter()
                .enumerate()
                .filter(move |&(j, &b)| b && i != j)
                .map(move |(j, _)| Arc::new(i, j))
        });
        Network::from_arcs(n, arcs.collect::<Vec<_>>())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_arc(&self, from: PlayerId, to: PlayerId) -> bool {
        from.index() < self.n && to.index() < self.n && (self.out[from.index()] >> to.index()) & 1 == 1
    }

    pub fn contains(&self, arc: Arc) -> bool {
        self.has_arc(arc.from, arc.to)
    }

    /// At least one arc between `a` and `b`.
    pub fn linked(&self, a: PlayerId, b: PlayerId) -> bool {
        self.has_arc(a, b) || self.has_arc(b, a)
    }

    /// Arcs in both directions between `a` and `b`.
    pub fn mutual(&self, a: PlayerId, b: PlayerId) -> bool {
        self.has_arc(a, b) && self.has_arc(b, a)
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.out.iter().all(|&w| w == 0)
    }

    /// All arcs in ascending `(from, to)` order.
    pub fn arcs(&self) -> Vec<Arc> {
        let mut arcs = Vec::with_capacity(self.arc_count());
        for (i, &word) in self.out.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let j = w.trailing_zeros() as usize;
                arcs.push(Arc::new(i, j));
                w &= w - 1;
            }
        }
        arcs
    }

    /// Arcs leaving or entering `player`, ascending.
    pub fn incident_arcs(&self, player: PlayerId) -> Vec<Arc> {
        let p = player.index();
        if p >= self.n {
            return Vec::new();
        }
        let mut arcs: Vec<Arc> = (0..self.n)
            .filter(|&j| j != p)
            .flat_map(|j| {
                let out = (self.out[p] >> j) & 1 == 1;
                let inc = (self.out[j] >> p) & 1 == 1;
                [out.then(|| Arc::new(p, j)), inc.then(|| Arc::new(j, p))]
            })
            .flatten()
            .collect();
        arcs.sort();
        arcs
    }

    /// Returns a copy without `arcs`; every arc must currently be present.
    pub fn remove_arcs(&self, arcs: &[Arc]) -> Result<Network> {
        let mut g = self.clone();
        for &a in arcs {
            if !g.contains(a) {
                return Err(Error::InvalidInput(format!("arc {a} is not in the network")));
            }
            g.out[a.from.index()] &= !(1 << a.to.index());
        }
        Ok(g)
    }

    /// Copy without `arcs`, ignoring any that are absent.
    pub(crate) fn without(&self, arcs: &[Arc]) -> Network {
        let mut g = self.clone();
        for &a in arcs {
            g.out[a.from.index()] &= !(1 << a.to.index());
        }
        g
    }

    pub fn is_subset_of(&self, other: &Network) -> bool {
        self.n == other.n && self.out.iter().zip(&other.out).all(|(a, b)| a & !b == 0)
    }

    /// Arcs of `self` missing from `other`, ascending.
    pub fn difference(&self, other: &Network) -> Vec<Arc> {
        self.arcs().into_iter().filter(|&a| !other.contains(a)).collect()
    }

    pub fn to_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| ((self.out[i] >> j) & 1) as u8).collect())
            .collect()
    }
}

impl Serialize for Network {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Network", 2)?;
        st.serialize_field("players", &self.n)?;
        st.serialize_field("arcs", &self.arcs())?;
        st.end()
    }
}

/// Forms the network of mutually consented arcs; diagonal entries never produce arcs.
pub fn form_network(profile: &OfferProfile) -> Result<Network> {
    profile.check_dimensions()?;
    let n = profile.size();
    let mut g = Network::empty(n);
    for i in 0..n {
        for j in 0..n {
            if i != j && profile.gamma_plus[i][j] && profile.gamma_minus[j][i] {
                g.out[i] |= 1 << j;
            }
        }
    }
    Ok(g)
}

pub fn incident_arcs(network: &Network, player: PlayerId) -> Vec<Arc> {
    network.incident_arcs(player)
}

pub fn remove_arcs(network: &Network, arcs: &[Arc]) -> Result<Network> {
    network.remove_arcs(arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g10() -> Network {
        let rows: Vec<Vec<bool>> = [
            [0, 0, 0, 0, 0],
            [0, 0, 0, 1, 0],
            [0, 1, 0, 1, 0],
            [0, 0, 0, 0, 1],
            [0, 1, 0, 0, 0],
        ]
        .iter()
        .map(|r| r.iter().map(|&b| b == 1).collect())
        .collect();
        Network::from_matrix(&rows).unwrap()
    }

    #[test]
    fn no_offers_no_arcs() {
        let zeros = vec![vec![false; 4]; 4];
        let ones = vec![vec![true; 4]; 4];
        let p = OfferProfile::new("z", zeros, ones.clone());
        assert!(form_network(&p).unwrap().is_empty());
        let full = OfferProfile::new("f", ones.clone(), ones);
        assert_eq!(form_network(&full).unwrap(), Network::complete(4));
        assert_eq!(Network::complete(4).arc_count(), 12);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let p = OfferProfile::new("bad", vec![vec![false; 3]; 3], vec![vec![false; 2]; 2]);
        assert!(matches!(form_network(&p), Err(Error::InvalidInput(_))));
        let ragged = OfferProfile::new("bad", vec![vec![false; 3], vec![false; 2], vec![false; 3]], vec![vec![false; 3]; 3]);
        assert!(form_network(&ragged).is_err());
    }

    #[test]
    fn diagonal_is_stripped() {
        let mut plus = vec![vec![false; 3]; 3];
        let mut minus = vec![vec![false; 3]; 3];
        plus[1][1] = true;
        minus[1][1] = true;
        let p = OfferProfile::new("d", plus, minus);
        assert_eq!(p.diagonal_entries(), vec![PlayerId(1)]);
        assert!(form_network(&p).unwrap().is_empty());
    }

    #[test]
    fn incident_arcs_cases() {
        assert!(g10().incident_arcs(PlayerId(0)).is_empty());
        assert!(Network::empty(5).incident_arcs(PlayerId(2)).is_empty());
        let k5 = Network::complete(5);
        for p in 0..5 {
            assert_eq!(k5.incident_arcs(PlayerId(p)).len(), 8);
        }
        assert_eq!(
            g10().incident_arcs(PlayerId(1)),
            vec![Arc::new(1, 3), Arc::new(2, 1), Arc::new(4, 1)]
        );
    }

    #[test]
    fn remove_arcs_cases() {
        let g = g10();
        assert_eq!(g.remove_arcs(&[]).unwrap(), g);
        let all = g.arcs();
        assert!(g.remove_arcs(&all).unwrap().is_empty());
        assert!(g.remove_arcs(&[Arc::new(0, 1)]).is_err());
        let shorter = g.remove_arcs(&[Arc::new(1, 3)]).unwrap();
        assert_eq!(shorter.arc_count(), g.arc_count() - 1);
        assert_eq!(g.arc_count(), 5);
    }

    #[test]
    fn from_arcs_rejects_loops_and_range() {
        assert!(Network::from_arcs(3, [Arc::new(1, 1)]).is_err());
        assert!(Network::from_arcs(3, [Arc::new(0, 3)]).is_err());
    }

    fn bool_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<bool>>> {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), n)
    }

    fn profile() -> impl Strategy<Value = OfferProfile> {
        (2usize..7).prop_flat_map(|n| (bool_matrix(n), bool_matrix(n)))
            .prop_map(|(p, m)| OfferProfile::new("p", p, m))
    }

    proptest! {
        #[test]
        fn arcs_only_where_offered(p in profile()) {
            let g = form_network(&p).unwrap();
            for a in g.arcs() {
                prop_assert!(p.gamma_plus[a.from.index()][a.to.index()]);
                prop_assert!(a.from != a.to);
            }
        }

        #[test]
        fn adding_consent_never_removes_arcs(p in profile(), i in 0usize..6, j in 0usize..6, which in any::<bool>()) {
            let n = p.size();
            let (i, j) = (i % n, j % n);
            let before = form_network(&p).unwrap();
            let mut q = p.clone();
            if which { q.gamma_plus[i][j] = true } else { q.gamma_minus[i][j] = true }
            let after = form_network(&q).unwrap();
            prop_assert!(before.is_subset_of(&after));
        }

        #[test]
        fn remove_then_restore(p in profile(), mask in any::<u64>()) {
            let g = form_network(&p).unwrap();
            let arcs = g.arcs();
            let removed: Vec<Arc> = arcs.iter().enumerate()
                .filter(|(k, _)| (mask >> (k % 64)) & 1 == 1)
                .map(|(_, &a)| a)
                .collect();
            let h = g.remove_arcs(&removed).unwrap();
            prop_assert_eq!(h.arc_count(), g.arc_count() - removed.len());
            let mut restored = h.arcs();
            restored.extend(removed);
            prop_assert_eq!(Network::from_arcs(g.n(), restored).unwrap(), g);
        }
    }
}
