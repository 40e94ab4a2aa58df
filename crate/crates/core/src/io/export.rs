//! CSV reading and writing of payoff matrices, plus regret-table export.

use crate::compromise::{CompromiseReport, PayoffMatrix};
use crate::error::{Error, Result};
use crate::rational::Rational;

fn write_table(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn header(first: &str, players: usize) -> Vec<String> {
    std::iter::once(first.to_string())
        .chain((1..=players).map(|p| format!("player{p}")))
        .collect()
}

fn row(label: &str, values: &[Rational]) -> Vec<String> {
    std::iter::once(label.to_string())
        .chain(values.iter().map(Rational::to_string))
        .collect()
}

pub fn matrix_to_csv(matrix: &PayoffMatrix) -> String {
    write_table(
        &header("profile", matrix.players()),
        matrix.labels.iter().zip(&matrix.rows).map(|(l, r)| row(l, r)),
    )
}

/// Parses the layout written by [`matrix_to_csv`]: a header row, then one
/// row per profile with its label first and one exact value per player.
pub fn matrix_from_csv(text: &str) -> Result<PayoffMatrix> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let width = reader.headers().map_err(|e| Error::Parse(e.to_string()))?.len();
    if width < 2 {
        return Err(Error::Parse("matrix CSV needs a label column and at least one player column".to_string()));
    }
    let (mut labels, mut rows) = (Vec::new(), Vec::new());
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        labels.push(record[0].to_string());
        let values = record
            .iter()
            .skip(1)
            .map(|cell| cell.parse::<Rational>().map_err(|e| Error::Parse(format!("line {line}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(values);
    }
    if rows.is_empty() {
        return Err(Error::Parse("matrix CSV has no data rows".to_string()));
    }
    Ok(PayoffMatrix { labels, rows })
}

/// Regrets in player order, with the row maximum as the last column.
pub fn regrets_to_csv(labels: &[String], report: &CompromiseReport) -> String {
    let mut head = header("profile", report.ideal.len());
    head.push("max".to_string());
    write_table(
        &head,
        labels.iter().zip(&report.regrets).zip(&report.row_max).map(|((l, r), m)| {
            let mut out = row(l, r);
            out.push(m.to_string());
            out
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compromise::compromise_solution;

    #[test]
    fn csv_layout() {
        let mut m = PayoffMatrix::from_integers(&[&[1, 0], &[0, 3]]);
        m.rows[0][1] = Rational::new(-1, 2);
        assert_eq!(matrix_to_csv(&m), "profile,player1,player2\n1,1,-1/2\n2,0,3\n");
        let r = compromise_solution(&m).unwrap();
        assert_eq!(
            regrets_to_csv(&m.labels, &r),
            "profile,player1,player2,max\n1,0,7/2,7/2\n2,1,0,1\n"
        );
    }

    #[test]
    fn csv_round_trip() {
        let mut m = PayoffMatrix::from_integers(&[&[4, -2, 7], &[0, 3, 1]]);
        m.rows[1][2] = Rational::new(5, 3);
        m.labels = vec!["phi1".into(), "phi2".into()];
        assert_eq!(matrix_from_csv(&matrix_to_csv(&m)).unwrap(), m);
    }

    #[test]
    fn csv_errors() {
        assert!(matches!(matrix_from_csv("profile,player1\n"), Err(Error::Parse(_))));
        assert!(matches!(matrix_from_csv("profile\na\n"), Err(Error::Parse(_))));
        let err = matrix_from_csv("profile,player1\na,1\nb,x\n").unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
        // Ragged rows are rejected by the reader.
        assert!(matrix_from_csv("profile,player1,player2\na,1\n").is_err());
    }
}
