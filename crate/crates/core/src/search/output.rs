use std::fmt;
use std::io::Write;
use std::str::FromStr;

use super::SearchRecord;
use crate::classify::MeanKind;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    /// Aligned columns for reading; integral means drop the `/1`.
    Table,
    /// One JSON object per line.
    #[default]
    Jsonl,
    /// Comma-separated with a header row.
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "table" => Ok(OutputFormat::Table),
            "jsonl" | "json" | "ndjson" => Ok(OutputFormat::Jsonl),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::Parse(format!(
                "unknown format {s:?} (table, jsonl, csv)"
            ))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Table => "table",
            OutputFormat::Jsonl => "jsonl",
            OutputFormat::Csv => "csv",
        })
    }
}

const CSV_COLUMNS: [&str; 8] = [
    "n",
    "factorization",
    "d",
    "d_star",
    "d_bistar",
    "sigma",
    "sigma_star",
    "sigma_bistar",
];

/// Streams records in the chosen format. Headers are written lazily with
/// the first record, so an empty result is an empty stream for CSV and
/// JSON lines.
pub struct RecordWriter<W: Write> {
    format: OutputFormat,
    out: W,
    header_done: bool,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(format: OutputFormat, out: W) -> Self {
        RecordWriter {
            format,
            out,
            header_done: false,
        }
    }

    fn header(&mut self) -> Result<()> {
        if self.header_done {
            return Ok(());
        }
        self.header_done = true;
        match self.format {
            OutputFormat::Jsonl => {}
            OutputFormat::Csv => {
                let mut cols: Vec<String> = CSV_COLUMNS.iter().map(|s| s.to_string()).collect();
                cols.extend(MeanKind::ALL.iter().map(|k| k.label().to_string()));
                cols.push("flags".into());
                writeln!(self.out, "{}", cols.join(","))?;
            }
            OutputFormat::Table => {
                writeln!(
                    self.out,
                    "{:>12}  {:<24} {:>6} {:>4} {:>5} {:>14} {:>14} {:>14}  {:>10} {:>10} {:>10}",
                    "n",
                    "factorization",
                    "d",
                    "d*",
                    "d**",
                    "sigma",
                    "sigma*",
                    "sigma**",
                    "H",
                    "H*",
                    "H**"
                )?;
            }
        }
        Ok(())
    }

    pub fn write(&mut self, r: &SearchRecord) -> Result<()> {
        self.header()?;
        match self.format {
            OutputFormat::Jsonl => writeln!(self.out, "{}", r.to_json_line())?,
            OutputFormat::Csv => {
                let mut cols = vec![
                    r.n.to_string(),
                    r.factorization.clone(),
                    r.d.to_string(),
                    r.d_star.to_string(),
                    r.d_bistar.to_string(),
                    r.sigma.to_string(),
                    r.sigma_star.to_string(),
                    r.sigma_bistar.to_string(),
                ];
                cols.extend(r.means.iter().map(|(_, m)| m.render(false)));
                cols.push(r.flags.active().join(";"));
                writeln!(self.out, "{}", cols.join(","))?;
            }
            OutputFormat::Table => {
                writeln!(
                    self.out,
                    "{:>12}  {:<24} {:>6} {:>4} {:>5} {:>14} {:>14} {:>14}  {:>10} {:>10} {:>10}",
                    r.n,
                    r.factorization,
                    r.d,
                    r.d_star,
                    r.d_bistar,
                    r.sigma,
                    r.sigma_star,
                    r.sigma_bistar,
                    r.means.get(MeanKind::H).render(true),
                    r.means.get(MeanKind::HStar).render(true),
                    r.means.get(MeanKind::HBistar).render(true),
                )?;
            }
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<W> {
        self.out.flush()?;
        Ok(self.out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::NumberProfile;

    fn record(n: u64) -> SearchRecord {
        SearchRecord::from_profile(&NumberProfile::of(n).unwrap())
    }

    #[test]
    fn jsonl_round_trip() {
        let mut w = RecordWriter::new(OutputFormat::Jsonl, Vec::new());
        w.write(&record(9072)).unwrap();
        w.write(&record(1)).unwrap();
        let text = String::from_utf8(w.finish().unwrap()).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        let back: SearchRecord = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(back, record(9072));
        assert!(lines[0].contains(r#""H**":"12/1""#));
        assert!(lines[0].contains(r#""factorization":"2^4*3^4*7""#));
    }

    #[test]
    fn csv_has_header_and_retains_denominators() {
        let mut w = RecordWriter::new(OutputFormat::Csv, Vec::new());
        w.write(&record(6)).unwrap();
        let text = String::from_utf8(w.finish().unwrap()).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("n,factorization,d,"));
        let row = lines.next().unwrap();
        assert!(row.starts_with("6,2*3,4,4,4,12,12,12,2/1,"));
    }

    #[test]
    fn table_suppresses_unit_denominator() {
        let mut w = RecordWriter::new(OutputFormat::Table, Vec::new());
        w.write(&record(15925)).unwrap();
        let text = String::from_utf8(w.finish().unwrap()).unwrap();
        let row = text.lines().nth(1).unwrap();
        assert!(row.trim_end().ends_with(" 7"), "{row}");
        assert!(!row.contains("7/1"));
    }

    #[test]
    fn empty_stream_has_no_header() {
        let w = RecordWriter::new(OutputFormat::Csv, Vec::new());
        assert!(w.finish().unwrap().is_empty());
    }
}
