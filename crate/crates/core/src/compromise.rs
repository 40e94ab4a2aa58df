//! Min-max regret compromise over a payoff matrix (rows = profiles, columns = players).

use std::cmp::Reverse;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::payoff::PayoffVector;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PayoffMatrix {
    pub labels: Vec<String>,
    pub rows: Vec<Vec<Rational>>,
}

impl PayoffMatrix {
    /// Rows labelled `1..=k`.
    pub fn new(rows: Vec<Vec<Rational>>) -> Self {
        let labels = (1..=rows.len()).map(|i| i.to_string()).collect();
        PayoffMatrix { labels, rows }
    }

    pub fn from_integers(rows: &[&[i64]]) -> Self {
        PayoffMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::integer(v)).collect())
                .collect(),
        )
    }

    pub fn from_payoffs(labels: Vec<String>, rows: Vec<PayoffVector>) -> Self {
        PayoffMatrix { labels, rows: rows.into_iter().map(|r| r.0).collect() }
    }

    pub fn players(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    fn check(&self) -> Result<()> {
        if self.rows.is_empty() {
            return Err(Error::InvalidInput("payoff matrix has no rows".to_string()));
        }
        let n = self.players();
        if self.rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("payoff matrix rows differ in length".to_string()));
        }
        Ok(())
    }
}

/// Column-wise maxima: the best payoff each player sees in any profile.
pub fn ideal_vector(matrix: &PayoffMatrix) -> Result<Vec<Rational>> {
    matrix.check()?;
    let n = matrix.players();
    Ok((0..n)
        .map(|i| matrix.rows.iter().map(|r| r[i]).max().expect("nonempty"))
        .collect())
}

/// Per-row shortfall from the ideal vector. With `sorted`, each row comes back
/// in ascending order (presentation only; player order is lost).
pub fn regret_vectors(matrix: &PayoffMatrix, sorted: bool) -> Result<Vec<Vec<Rational>>> {
    let ideal = ideal_vector(matrix)?;
    Ok(matrix
        .rows
        .iter()
        .map(|row| {
            let mut r: Vec<Rational> = ideal.iter().zip(row).map(|(m, h)| *m - *h).collect();
            if sorted {
                r.sort();
            }
            r
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompromiseReport {
    pub ideal: Vec<Rational>,
    /// Regrets in player order, one row per profile.
    pub regrets: Vec<Vec<Rational>>,
    pub row_max: Vec<Rational>,
    pub value: Rational,
    /// Rows attaining `value`, ascending (0-based in memory, 1-based when serialized).
    #[serde(serialize_with = "one_based")]
    pub solutions: Vec<usize>,
}

impl CompromiseReport {
    pub fn sorted_regrets(&self) -> Vec<Vec<Rational>> {
        self.regrets
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.sort();
                r
            })
            .collect()
    }

    /// Breaks ties among `solutions` by comparing regret vectors sorted in
    /// descending order, lexicographically. Returns the surviving rows.
    pub fn lexicographic_refinement(&self) -> Vec<usize> {
        let key = |s: usize| {
            let mut r = self.regrets[s].clone();
            r.sort_by_key(|&x| Reverse(x));
            r
        };
        let best = self.solutions.iter().map(|&s| key(s)).min();
        self.solutions
            .iter()
            .copied()
            .filter(|&s| Some(key(s)) == best)
            .collect()
    }
}

pub fn compromise_solution(matrix: &PayoffMatrix) -> Result<CompromiseReport> {
    let ideal = ideal_vector(matrix)?;
    let regrets = regret_vectors(matrix, false)?;
    let row_max: Vec<Rational> = regrets
        .iter()
        .map(|r| r.iter().copied().max().unwrap_or(Rational::ZERO))
        .collect();
    let value = *row_max.iter().min().expect("nonempty");
    let solutions = (0..row_max.len()).filter(|&s| row_max[s] == value).collect();
    Ok(CompromiseReport { ideal, regrets, row_max, value, solutions })
}

fn one_based<S: Serializer>(indices: &[usize], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(indices.iter().map(|i| i + 1))
}
