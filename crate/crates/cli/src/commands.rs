//! One function per subcommand. Each loads its inputs, calls the library, and
//! renders the result; no game logic lives here.

use std::path::{Path, PathBuf};

use netform::io::{builtin as builtin_instance, load_instance_with, matrix_from_csv, matrix_to_csv, random_network, regrets_to_csv, save_instance};
use netform::{
    check_disjoint_stability, compromise_solution, form_network, payoff_table, random_instance, restricted_equilibria,
    stability_reports, validate_instance, ActivationRule, Arc, CompromiseReport, Error, GameInstance, NamedNetwork,
    Network, PayoffMatrix, PlayerId, Rational, StabilityReport,
};
use serde::Serialize;
use thiserror::Error;

use crate::render;
use crate::{Format, Mode, Rule, Source};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Every error path is a usage/input problem (exit 2); domain failures are
    /// reported through [`Outcome::status`] instead.
    pub fn status(&self) -> u8 {
        2
    }
}

pub struct Outcome {
    pub output: String,
    pub status: u8,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, status: 0 }
    }
}

fn load(spec: &str, strict: bool) -> Result<GameInstance, CliError> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        let inst = builtin_instance(name).ok_or_else(|| CliError::Usage(format!("unknown built-in instance {name:?}")))?;
        if strict {
            let report = validate_instance(&inst, true);
            if !report.is_ok() {
                return Err(Error::Validation(report.errors).into());
            }
        }
        return Ok(inst);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| CliError::Usage(format!("{spec}: {e}")))?;
    Ok(load_instance_with(&text, strict)?)
}

fn resolve_rule(rule: Option<Rule>, instance: &GameInstance) -> ActivationRule {
    rule.map(Into::into)
        .or(instance.default_rule)
        .unwrap_or(ActivationRule::Linked)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn profile_labels(instance: &GameInstance) -> Vec<String> {
    instance.profiles.iter().map(|p| p.label.clone()).collect()
}

pub fn form(spec: &str, strict: bool, profile: usize, format: Format) -> Result<Outcome, CliError> {
    let instance = load(spec, strict)?;
    let count = instance.profiles.len();
    let p = profile
        .checked_sub(1)
        .and_then(|i| instance.profiles.get(i))
        .ok_or_else(|| CliError::Usage(format!("profile {profile} out of range 1..={count}")))?;
    let g = form_network(p)?;
    let matrix = g.to_matrix();

    #[derive(Serialize)]
    struct FormOutput<'a> {
        profile: &'a str,
        players: usize,
        matrix: &'a [Vec<u8>],
        arcs: Vec<Arc>,
    }

    let output = match format {
        Format::Json => json(&FormOutput { profile: &p.label, players: g.n(), matrix: &matrix, arcs: g.arcs() }),
        Format::Csv => render::bit_matrix_csv(&matrix),
        Format::Table => format!("network of profile {}\n{}", p.label, render::bit_matrix(&matrix)),
    };
    Ok(Outcome::ok(output))
}

#[derive(Serialize)]
struct DeltaRow {
    profile: String,
    matches: bool,
    computed: Vec<Rational>,
    printed: Vec<Rational>,
    delta: Vec<Rational>,
}

fn delta_rows(labels: &[String], computed: &[Vec<Rational>], printed: &PayoffMatrix) -> Vec<DeltaRow> {
    labels
        .iter()
        .zip(computed)
        .zip(&printed.rows)
        .map(|((label, c), p)| {
            let delta: Vec<Rational> = c.iter().zip(p).map(|(a, b)| *a - *b).collect();
            DeltaRow {
                profile: label.clone(),
                matches: delta.iter().all(Rational::is_zero),
                computed: c.clone(),
                printed: p.clone(),
                delta,
            }
        })
        .collect()
}

pub fn payoffs(spec: &str, strict: bool, rule: Option<Rule>, format: Format) -> Result<Outcome, CliError> {
    let instance = load(spec, strict)?;
    let rule = resolve_rule(rule, &instance);
    let networks = instance.profile_networks()?;
    let table = payoff_table(&instance, &networks, rule);
    let labels = profile_labels(&instance);
    let matrix = PayoffMatrix::from_payoffs(labels.clone(), table);
    let deltas = instance
        .payoff_matrix
        .as_ref()
        .filter(|p| p.rows.len() == matrix.rows.len() && !matrix.rows.is_empty())
        .map(|p| delta_rows(&labels, &matrix.rows, p));

    #[derive(Serialize)]
    struct PayoffOutput<'a> {
        rule: ActivationRule,
        players: usize,
        labels: &'a [String],
        payoffs: &'a [Vec<Rational>],
        #[serde(skip_serializing_if = "Option::is_none")]
        deltas: Option<&'a [DeltaRow]>,
    }

    let output = match format {
        Format::Json => json(&PayoffOutput {
            rule,
            players: instance.n,
            labels: &labels,
            payoffs: &matrix.rows,
            deltas: deltas.as_deref(),
        }),
        Format::Csv if matrix.rows.is_empty() => {
            let header: Vec<String> = (1..=instance.n).map(|p| format!("player{p}")).collect();
            format!("profile,{}\n", header.join(","))
        }
        Format::Csv => matrix_to_csv(&matrix),
        Format::Table => {
            let mut out = format!("payoffs (rule: {rule})\n");
            out += &render::rational_table(instance.n, &labels, &matrix.rows);
            if let Some(rows) = &deltas {
                out += "\ncomputed minus printed (* = mismatch)\n";
                let body: Vec<Vec<Rational>> = rows.iter().map(|r| r.delta.clone()).collect();
                let marked: Vec<String> = rows
                    .iter()
                    .map(|r| if r.matches { r.profile.clone() } else { format!("{} *", r.profile) })
                    .collect();
                out += &render::rational_table(instance.n, &marked, &body);
            }
            out
        }
    };
    Ok(Outcome::ok(output))
}

pub fn equilibria(
    spec: &str,
    strict: bool,
    mode: Mode,
    rule: Option<Rule>,
    format: Format,
    assert_stable: bool,
) -> Result<Outcome, CliError> {
    let instance = load(spec, strict)?;
    let rule = resolve_rule(rule, &instance);
    let labels = profile_labels(&instance);
    match mode {
        Mode::Restricted => {
            if instance.profiles.is_empty() {
                return Err(CliError::Usage("restricted mode needs an instance with profiles".to_string()));
            }
            let report = restricted_equilibria(&instance, rule)?;
            let all_equilibria = report.equilibria.len() == instance.profiles.len();

            #[derive(Serialize)]
            struct RestrictedOutput<'a> {
                rule: ActivationRule,
                mode: &'static str,
                labels: &'a [String],
                #[serde(flatten)]
                report: &'a netform::RestrictedReport,
            }

            let output = match format {
                Format::Json => json(&RestrictedOutput { rule, mode: "restricted", labels: &labels, report: &report }),
                Format::Csv => render::restricted_csv(&labels, &report),
                Format::Table => render::restricted(rule, &labels, &report),
            };
            let status = if assert_stable && !all_equilibria { 1 } else { 0 };
            Ok(Outcome { output, status })
        }
        Mode::Full => {
            let mut named: Vec<(String, Network)> = labels.iter().cloned().zip(instance.profile_networks()?).collect();
            named.extend(instance.networks.iter().map(|nn| (nn.name.clone(), nn.network.clone())));
            let networks: Vec<Network> = named.iter().map(|(_, g)| g.clone()).collect();
            let reports = stability_reports(&instance, &networks, rule);
            let all_stable = reports.iter().all(|r| r.stable);

            #[derive(Serialize)]
            struct Entry<'a> {
                name: &'a str,
                #[serde(flatten)]
                report: &'a StabilityReport,
            }
            #[derive(Serialize)]
            struct FullOutput<'a> {
                rule: ActivationRule,
                mode: &'static str,
                networks: Vec<Entry<'a>>,
            }

            let output = match format {
                Format::Csv => {
                    let names: Vec<String> = named.iter().map(|(n, _)| n.clone()).collect();
                    render::stability_csv(&names, &reports)
                }
                Format::Json => json(&FullOutput {
                    rule,
                    mode: "full",
                    networks: named
                        .iter()
                        .zip(&reports)
                        .map(|((name, _), report)| Entry { name, report })
                        .collect(),
                }),
                Format::Table => {
                    let names: Vec<String> = named.into_iter().map(|(n, _)| n).collect();
                    render::full(rule, &names, &reports)
                }
            };
            let status = if assert_stable && !all_stable { 1 } else { 0 };
            Ok(Outcome { output, status })
        }
    }
}

pub enum MatrixInput {
    Instance { spec: String, source: Source, rule: Option<Rule> },
    Csv(PathBuf),
}

pub fn compromise(input: MatrixInput, strict: bool, format: Format, lex: bool) -> Result<Outcome, CliError> {
    let (source, matrix) = match input {
        MatrixInput::Csv(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            ("csv", matrix_from_csv(&text)?)
        }
        MatrixInput::Instance { spec, source: Source::Printed, .. } => {
            let instance = load(&spec, strict)?;
            let matrix = instance
                .payoff_matrix
                .ok_or_else(|| CliError::Usage("instance carries no printed payoff matrix".to_string()))?;
            ("printed", matrix)
        }
        MatrixInput::Instance { spec, source: Source::Computed, rule } => {
            let instance = load(&spec, strict)?;
            if instance.profiles.is_empty() {
                return Err(CliError::Usage("computed source needs an instance with profiles".to_string()));
            }
            let rule = resolve_rule(rule, &instance);
            let networks = instance.profile_networks()?;
            let matrix = PayoffMatrix::from_payoffs(profile_labels(&instance), payoff_table(&instance, &networks, rule));
            ("computed", matrix)
        }
    };
    let report: CompromiseReport = compromise_solution(&matrix)?;
    let refined = lex.then(|| report.lexicographic_refinement());

    #[derive(Serialize)]
    struct CompromiseOutput<'a> {
        source: &'static str,
        labels: &'a [String],
        sorted_regrets: Vec<Vec<Rational>>,
        #[serde(flatten)]
        report: &'a CompromiseReport,
        #[serde(skip_serializing_if = "Option::is_none")]
        lexicographic_solutions: Option<Vec<usize>>,
    }

    let output = match format {
        Format::Json => json(&CompromiseOutput {
            source,
            labels: &matrix.labels,
            sorted_regrets: report.sorted_regrets(),
            report: &report,
            lexicographic_solutions: refined.as_ref().map(|v| v.iter().map(|i| i + 1).collect()),
        }),
        Format::Csv => regrets_to_csv(&matrix.labels, &report),
        Format::Table => render::compromise(&matrix.labels, &report, refined.as_deref()),
    };
    Ok(Outcome::ok(output))
}

fn parse_network(spec: &str, instance: &GameInstance) -> Result<Network, CliError> {
    let usage = |msg: String| CliError::Usage(msg);
    if let Some(k) = spec.strip_prefix("profile:") {
        let k: usize = k.parse().map_err(|_| usage(format!("bad profile index {k:?}")))?;
        let p = k
            .checked_sub(1)
            .and_then(|i| instance.profiles.get(i))
            .ok_or_else(|| usage(format!("profile {k} out of range 1..={}", instance.profiles.len())))?;
        return Ok(form_network(p)?);
    }
    if let Some(name) = spec.strip_prefix("network:") {
        return instance
            .network(name)
            .cloned()
            .ok_or_else(|| usage(format!("instance has no network named {name:?}")));
    }
    if let Some(list) = spec.strip_prefix("arcs:") {
        let mut arcs = Vec::new();
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (a, b) = item
                .split_once('-')
                .ok_or_else(|| usage(format!("bad arc {item:?}; expected FROM-TO")))?;
            let player = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .ok()
                    .and_then(PlayerId::from_label)
                    .ok_or_else(|| usage(format!("bad player {s:?} in arc {item:?}")))
            };
            arcs.push(Arc { from: player(a)?, to: player(b)? });
        }
        return Network::from_arcs(instance.n, arcs).map_err(|e| usage(e.to_string()));
    }
    Err(usage(format!("network spec {spec:?} must start with profile:, network: or arcs:")))
}

pub fn check_disjoint(
    spec: &str,
    strict: bool,
    network: &str,
    rule: Option<Rule>,
    format: Format,
) -> Result<Outcome, CliError> {
    let instance = load(spec, strict)?;
    let rule = resolve_rule(rule, &instance);
    let g = parse_network(network, &instance)?;
    let report = check_disjoint_stability(&instance, &g, rule)?;

    #[derive(Serialize)]
    struct DisjointOutput<'a> {
        rule: ActivationRule,
        #[serde(skip_serializing_if = "Option::is_none")]
        coalition: Option<String>,
        #[serde(flatten)]
        report: &'a StabilityReport,
    }

    let coalition = report.negative_coalition.map(|i| instance.coalitions[i].to_string());
    let output = match format {
        Format::Json => json(&DisjointOutput { rule, coalition, report: &report }),
        Format::Csv => render::stability_csv(&[network.to_string()], std::slice::from_ref(&report)),
        Format::Table => render::disjoint(rule, &instance, &report),
    };
    Ok(Outcome { output, status: if report.stable { 0 } else { 1 } })
}

pub struct GenerateArgs {
    pub seed: u64,
    pub players: usize,
    pub coalitions: usize,
    pub income_range: (i64, i64),
    pub disjoint: bool,
    pub networks: usize,
    pub density: f64,
}

pub fn generate(args: GenerateArgs, output: Option<&Path>) -> Result<Outcome, CliError> {
    let mut instance = random_instance(args.seed, args.players, args.coalitions, args.income_range, args.disjoint)?;
    for k in 0..args.networks {
        let network = random_network(args.seed.wrapping_add(1 + k as u64), args.players, args.density)?;
        instance.networks.push(NamedNetwork { name: format!("g{}", k + 1), network });
    }
    let doc = save_instance(&instance);
    match output {
        Some(path) => {
            std::fs::write(path, doc)?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(doc)),
    }
}

pub fn validate(spec: &str, strict: bool, format: Format) -> Result<Outcome, CliError> {
    let instance = match spec.strip_prefix("builtin:") {
        Some(name) => builtin_instance(name).ok_or_else(|| CliError::Usage(format!("unknown built-in instance {name:?}")))?,
        None => {
            let text = std::fs::read_to_string(spec).map_err(|e| CliError::Usage(format!("{spec}: {e}")))?;
            let doc: netform::io::InstanceDocument =
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            doc.into_instance()?
        }
    };
    let report = validate_instance(&instance, strict);
    let output = match format {
        Format::Json => json(&report),
        Format::Csv => render::validation_csv(&report),
        Format::Table => {
            let mut out = String::new();
            for e in &report.errors {
                out += &format!("error: {e}\n");
            }
            for w in &report.warnings {
                out += &format!("warning: {w}\n");
            }
            if report.is_ok() {
                out += "ok\n";
            }
            out
        }
    };
    Ok(Outcome { output, status: if report.is_ok() { 0 } else { 1 } })
}

pub fn builtin(name: &str) -> Result<Outcome, CliError> {
    let text = match name {
        "example" => netform::io::EXAMPLE_JSON,
        "small" => netform::io::SMALL_EXAMPLE_JSON,
        _ => return Err(CliError::Usage(format!("unknown built-in instance {name:?}; try example or small"))),
    };
    Ok(Outcome::ok(text.to_string()))
}
