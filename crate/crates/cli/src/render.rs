//! Plain-text tables.

use std::fmt::Write;

use netform::{ActivationRule, CompromiseReport, GameInstance, Rational, RestrictedReport, StabilityReport, ValidationReport};

pub fn bit_matrix(rows: &[Vec<u8>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(u8::to_string).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

pub fn bit_matrix_csv(rows: &[Vec<u8>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(u8::to_string).collect::<Vec<_>>().join(",") + "\n")
        .collect()
}

fn vector(values: &[Rational]) -> String {
    let parts: Vec<String> = values.iter().map(Rational::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Right-aligned table with one column per player.
pub fn rational_table(players: usize, labels: &[String], rows: &[Vec<Rational>]) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(Rational::to_string).collect()).collect();
    let label_w = labels.iter().map(String::len).chain(["profile".len()]).max().unwrap_or(0);
    let col_w = cells
        .iter()
        .flatten()
        .map(String::len)
        .chain((1..=players).map(|p| format!("H{p}").len()))
        .max()
        .unwrap_or(1);
    let mut out = format!("{:<label_w$}", "profile");
    for p in 1..=players {
        let _ = write!(out, "  {:>col_w$}", format!("H{p}"));
    }
    out.push('\n');
    for (label, row) in labels.iter().zip(&cells) {
        let _ = write!(out, "{label:<label_w$}");
        for c in row {
            let _ = write!(out, "  {c:>col_w$}");
        }
        out.push('\n');
    }
    out
}

fn arcs_text(arcs: &[netform::Arc]) -> String {
    arcs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn restricted(rule: ActivationRule, labels: &[String], report: &RestrictedReport) -> String {
    let mut out = format!("restricted equilibria (rule: {rule})\n");
    let eq: Vec<&str> = report.equilibria.iter().map(|&i| labels[i].as_str()).collect();
    let _ = writeln!(out, "equilibria: {}", eq.join(", "));
    let rejected: Vec<&str> = (0..labels.len())
        .filter(|i| !report.equilibria.contains(i))
        .map(|i| labels[i].as_str())
        .collect();
    let _ = writeln!(out, "not equilibria: {}", if rejected.is_empty() { "-".to_string() } else { rejected.join(", ") });
    let _ = writeln!(out, "reachable one-player changes: {}", report.reachable.len());
    for r in &report.reachable {
        let _ = writeln!(
            out,
            "  {} -> {}: player {} breaks {} gain {}",
            labels[r.from],
            labels[r.to],
            r.player,
            arcs_text(&r.removed_arcs),
            r.gain
        );
    }
    out
}

fn witness_line(report: &StabilityReport) -> String {
    match &report.witness {
        None => "stable".to_string(),
        Some(w) => format!(
            "unstable: player {} breaks {} gain {}",
            w.player,
            arcs_text(&w.removed_arcs),
            w.gain
        ),
    }
}

pub fn full(rule: ActivationRule, names: &[String], reports: &[StabilityReport]) -> String {
    let mut out = format!("full break-only stability (rule: {rule})\n");
    let w = names.iter().map(String::len).max().unwrap_or(0);
    for (name, r) in names.iter().zip(reports) {
        let _ = writeln!(out, "{name:<w$}  {}", witness_line(r));
    }
    out
}

pub fn compromise(labels: &[String], report: &CompromiseReport, refined: Option<&[usize]>) -> String {
    let mut out = format!("ideal vector M = {}\n", vector(&report.ideal));
    out += "regrets M - H, sorted ascending:\n";
    let w = labels.iter().map(String::len).max().unwrap_or(0);
    for ((label, r), m) in labels.iter().zip(report.sorted_regrets()).zip(&report.row_max) {
        let _ = writeln!(out, "  {label:<w$}  {}  max {m}", vector(&r));
    }
    let _ = writeln!(out, "value: {}", report.value);
    let sols: Vec<&str> = report.solutions.iter().map(|&i| labels[i].as_str()).collect();
    let _ = writeln!(out, "compromise solution(s): {}", sols.join(", "));
    if let Some(refined) = refined {
        let sols: Vec<&str> = refined.iter().map(|&i| labels[i].as_str()).collect();
        let _ = writeln!(out, "after lexicographic refinement: {}", sols.join(", "));
    }
    out
}

pub fn disjoint(rule: ActivationRule, instance: &GameInstance, report: &StabilityReport) -> String {
    let mut out = format!("disjoint-coalition criterion (rule: {rule})\n");
    if let Some(i) = report.negative_coalition {
        let c = &instance.coalitions[i];
        let _ = writeln!(out, "negative active coalition: {} income {}", c, c.income);
    }
    let _ = writeln!(out, "{}", witness_line(report));
    out
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// One row per profile, then one row per audited move (blank equilibrium column).
pub fn restricted_csv(labels: &[String], report: &RestrictedReport) -> String {
    let verdicts = labels.iter().enumerate().map(|(i, l)| {
        vec![l.clone(), report.equilibria.contains(&i).to_string(), String::new(), String::new(), String::new(), String::new()]
    });
    let moves = report.reachable.iter().map(|r| {
        vec![
            labels[r.from].clone(),
            String::new(),
            labels[r.to].clone(),
            r.player.to_string(),
            arcs_text(&r.removed_arcs),
            r.gain.to_string(),
        ]
    });
    csv_table(&["profile", "equilibrium", "reaches", "player", "removed", "gain"], verdicts.chain(moves))
}

pub fn stability_csv(names: &[String], reports: &[StabilityReport]) -> String {
    let rows = names.iter().zip(reports).map(|(name, r)| {
        let (player, removed, gain) = match &r.witness {
            Some(w) => (w.player.to_string(), arcs_text(&w.removed_arcs), w.gain.to_string()),
            None => Default::default(),
        };
        vec![name.clone(), r.stable.to_string(), player, removed, gain]
    });
    csv_table(&["network", "stable", "player", "removed", "gain"], rows)
}

pub fn validation_csv(report: &ValidationReport) -> String {
    let rows = report
        .errors
        .iter()
        .map(|e| vec!["error".to_string(), e.clone()])
        .chain(report.warnings.iter().map(|w| vec!["warning".to_string(), w.clone()]));
    csv_table(&["level", "message"], rows)
}
