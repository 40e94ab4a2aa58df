//! JSON instance documents.
//!
//! Players are 1-based in documents. Incomes, shares and payoffs are fraction
//! strings (`"1/3"`, `"-6"`), never floats.

use serde::{Deserialize, Deserializer, Serialize};

use crate::compromise::PayoffMatrix;
use crate::error::{Error, Result};
use crate::formation::{Arc, Network, OfferProfile};
use crate::model::{validate_instance, ActivationRule, CoalitionSpec, GameInstance, NamedNetwork, PlayerId};
use crate::rational::Rational;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub schema_version: u32,
    pub players: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default_rule: Option<ActivationRule>,
    pub coalitions: Vec<CoalitionDocument>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub profiles: Vec<ProfileDocument>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub networks: Vec<NetworkDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payoff_matrix: Option<PayoffMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoalitionDocument {
    pub members: Vec<PlayerId>,
    pub income: Rational,
    /// Aligned with `members`.
    pub shares: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDocument {
    #[serde(default)]
    pub label: String,
    pub gamma_plus: Vec<Vec<Bit>>,
    pub gamma_minus: Vec<Vec<Bit>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDocument {
    pub name: String,
    pub arcs: Vec<Arc>,
}

/// A matrix entry restricted to 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Bit(u8);

impl<'de> Deserialize<'de> for Bit {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match u8::deserialize(deserializer)? {
            b @ (0 | 1) => Ok(Bit(b)),
            other => Err(serde::de::Error::custom(format!("matrix entries must be 0 or 1, got {other}"))),
        }
    }
}

fn to_bools(m: &[Vec<Bit>]) -> Vec<Vec<bool>> {
    m.iter().map(|r| r.iter().map(|b| b.0 == 1).collect()).collect()
}

fn to_bits(m: &[Vec<bool>]) -> Vec<Vec<Bit>> {
    m.iter().map(|r| r.iter().map(|&b| Bit(b as u8)).collect()).collect()
}

impl InstanceDocument {
    pub fn from_instance(instance: &GameInstance) -> Self {
        InstanceDocument {
            schema_version: SCHEMA_VERSION,
            players: instance.n,
            default_rule: instance.default_rule,
            coalitions: instance
                .coalitions
                .iter()
                .map(|c| CoalitionDocument {
                    members: c.members.clone(),
                    income: c.income,
                    shares: c.shares.clone(),
                })
                .collect(),
            profiles: instance
                .profiles
                .iter()
                .map(|p| ProfileDocument {
                    label: p.label.clone(),
                    gamma_plus: to_bits(&p.gamma_plus),
                    gamma_minus: to_bits(&p.gamma_minus),
                })
                .collect(),
            networks: instance
                .networks
                .iter()
                .map(|nn| NetworkDocument { name: nn.name.clone(), arcs: nn.network.arcs() })
                .collect(),
            payoff_matrix: instance.payoff_matrix.clone(),
        }
    }

    pub fn into_instance(self) -> Result<GameInstance> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {}, expected {SCHEMA_VERSION}",
                self.schema_version
            )));
        }
        let n = self.players;
        let networks = self
            .networks
            .into_iter()
            .map(|nd| {
                let network = Network::from_arcs(n, nd.arcs)
                    .map_err(|e| Error::Parse(format!("network {:?}: {e}", nd.name)))?;
                Ok(NamedNetwork { name: nd.name, network })
            })
            .collect::<Result<Vec<_>>>()?;
        let profiles = self
            .profiles
            .into_iter()
            .enumerate()
            .map(|(i, p)| {
                let label = if p.label.is_empty() { format!("{}", i + 1) } else { p.label };
                OfferProfile::new(label, to_bools(&p.gamma_plus), to_bools(&p.gamma_minus))
            })
            .collect();
        Ok(GameInstance {
            n,
            coalitions: self
                .coalitions
                .into_iter()
                .map(|c| CoalitionSpec::new(c.members, c.income, c.shares))
                .collect(),
            profiles,
            networks,
            payoff_matrix: self.payoff_matrix,
            default_rule: self.default_rule,
        })
    }
}

/// Parses a document and checks it leniently (share sums may differ from 1).
pub fn load_instance(text: &str) -> Result<GameInstance> {
    load_instance_with(text, false)
}

/// Parses a document; validation errors are returned as [`Error::Validation`].
pub fn load_instance_with(text: &str, strict: bool) -> Result<GameInstance> {
    let doc: InstanceDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let instance = doc.into_instance()?;
    let report = validate_instance(&instance, strict);
    if !report.is_ok() {
        return Err(Error::Validation(report.errors));
    }
    Ok(instance)
}

pub fn save_instance(instance: &GameInstance) -> String {
    let mut s = serde_json::to_string_pretty(&InstanceDocument::from_instance(instance))
        .expect("documents always serialize");
    s.push('\n');
    s
}
