//! Seeded random instances and networks.
//!
//! ChaCha8 keeps the streams identical across platforms for a fixed seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formation::{Arc, Network};
use crate::model::{CoalitionSpec, GameInstance, PlayerId, MAX_PLAYERS};
use crate::rational::Rational;

fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Largest number of coalitions with pairwise disjoint arc sets on `n`
/// players: every coalition uses at least one member pair of its own.
pub fn max_disjoint_coalitions(n: usize) -> usize {
    pair_count(n)
}

/// Random game with equal shares `1/|S|` and integer incomes drawn uniformly
/// from `income_range` (inclusive).
///
/// With `disjoint`, no two coalitions share a member pair.
pub fn random_instance(
    seed: u64,
    n: usize,
    coalition_count: usize,
    income_range: (i64, i64),
    disjoint: bool,
) -> Result<GameInstance> {
    if !(2..=MAX_PLAYERS).contains(&n) {
        return Err(Error::InvalidInput(format!("player count must be in 2..={MAX_PLAYERS}, got {n}")));
    }
    let (lo, hi) = income_range;
    if lo > hi {
        return Err(Error::InvalidInput(format!("empty income range [{lo}, {hi}]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let member_sets = if disjoint {
        disjoint_member_sets(&mut rng, n, coalition_count)?
    } else {
        any_member_sets(&mut rng, n, coalition_count)?
    };
    let coalitions = member_sets
        .into_iter()
        .map(|members| {
            let income = Rational::integer(rng.gen_range(lo..=hi));
            CoalitionSpec::uniform(members.into_iter().map(PlayerId).collect(), income)
        })
        .collect();
    Ok(GameInstance::new(n, coalitions))
}

fn any_member_sets(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Result<Vec<Vec<usize>>> {
    let mut all: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            all.push(vec![a, b]);
            for c in b + 1..n {
                all.push(vec![a, b, c]);
            }
        }
    }
    if count > all.len() {
        return Err(Error::InvalidInput(format!(
            "{count} distinct coalitions requested but only {} exist for {n} players",
            all.len()
        )));
    }
    all.shuffle(rng);
    all.truncate(count);
    Ok(all)
}

fn disjoint_member_sets(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Result<Vec<Vec<usize>>> {
    let max = max_disjoint_coalitions(n);
    if count > max {
        return Err(Error::InvalidInput(format!(
            "{count} coalitions with disjoint arc sets requested but at most {max} fit on {n} players"
        )));
    }
    let mut used = vec![vec![false; n]; n];
    let mut unused = pair_count(n);
    let mut sets = Vec::with_capacity(count);
    for k in 0..count {
        // Keep enough free pairs for the coalitions still to come.
        let still_needed = count - k - 1;
        let mut chosen = None;
        if rng.gen_bool(0.5) && unused >= still_needed + 3 {
            let mut triples = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        if !used[a][b] && !used[a][c] && !used[b][c] {
                            triples.push(vec![a, b, c]);
                        }
                    }
                }
            }
            chosen = triples.choose(rng).cloned();
        }
        let members = match chosen {
            Some(t) => t,
            None => {
                let free: Vec<Vec<usize>> = (0..n)
                    .flat_map(|a| (a + 1..n).map(move |b| vec![a, b]))
                    .filter(|p| !used[p[0]][p[1]])
                    .collect();
                free.choose(rng).cloned().expect("a free pair remains")
            }
        };
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                used[a][b] = true;
            }
        }
        unused -= pair_count(members.len());
        sets.push(members);
    }
    Ok(sets)
}

/// Random loop-free network where each ordered pair is an arc with probability `density`.
pub fn random_network(seed: u64, n: usize, density: f64) -> Result<Network> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidInput(format!("density {density} not in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(density) {
                arcs.push(Arc::new(i, j));
            }
        }
    }
    Network::from_arcs(n, arcs)
}
