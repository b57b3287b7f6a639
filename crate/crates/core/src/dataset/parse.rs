//! CSV ingestion and emission of match records.
//!
//! Wire format (UTF-8, header required):
//! `season,matchday,home_team,away_team,goal_sequence[,date]`
//! where `goal_sequence` is a string over `{H, A}` in chronological scoring
//! order ("" for a goalless match) and the optional `date` column is
//! carried for provenance but ignored by the analytics.

use std::fmt;
use std::io::{Read, Write};

use super::{GoalSide, MatchRecord, Season};

pub const CSV_HEADER: [&str; 5] = [
    "season",
    "matchday",
    "home_team",
    "away_team",
    "goal_sequence",
];

/// How row-level problems are handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    /// Abort on the first bad row.
    #[default]
    Strict,
    /// Skip bad rows, reporting each as a diagnostic.
    Lenient,
}

/// A diagnosable problem with one data row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowIssue {
    /// 1-based line number in the source file.
    pub line: u64,
    pub kind: IssueKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IssueKind {
    BadSeason(String),
    BadMatchday(String),
    MissingField(&'static str),
    UnknownSideChar(char),
    IdenticalTeams(String),
    EmptyTeamName,
    Malformed(String),
}

impl fmt::Display for RowIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: ", self.line)?;
        match &self.kind {
            IssueKind::BadSeason(s) => write!(f, "bad season label `{s}`"),
            IssueKind::BadMatchday(s) => write!(f, "bad matchday `{s}`"),
            IssueKind::MissingField(name) => write!(f, "missing column `{name}`"),
            IssueKind::UnknownSideChar(c) => {
                write!(f, "goal sequence contains `{c}` (expected H or A)")
            }
            IssueKind::IdenticalTeams(t) => write!(f, "home and away team are both `{t}`"),
            IssueKind::EmptyTeamName => write!(f, "empty team name"),
            IssueKind::Malformed(msg) => write!(f, "{msg}"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum DatasetError {
    #[error("i/o error reading dataset: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("bad header: expected `{expected}`, found `{found}` (an optional trailing `date` column is allowed)")]
    Header { expected: String, found: String },

    #[error("{count} row(s) rejected; first: {first}")]
    RowsRejected { count: usize, first: RowIssue },
}

/// Streaming reader over a match CSV; yields one record or issue per row.
pub struct DatasetReader<R: Read> {
    inner: csv::Reader<R>,
}

impl<R: Read> DatasetReader<R> {
    /// Opens the stream and validates the header.
    pub fn new(reader: R) -> Result<Self, DatasetError> {
        let mut inner = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(true)
            .from_reader(reader);
        let headers = inner.headers()?.clone();
        // spreadsheet exports often prefix a UTF-8 BOM
        let found: Vec<&str> = headers
            .iter()
            .map(|h| h.trim_start_matches('\u{feff}').trim())
            .collect();
        let matches_spec = found.len() >= CSV_HEADER.len()
            && found.iter().zip(CSV_HEADER.iter()).all(|(a, b)| a == b)
            && (found.len() == CSV_HEADER.len()
                || (found.len() == CSV_HEADER.len() + 1 && found[CSV_HEADER.len()] == "date"));
        if !matches_spec {
            return Err(DatasetError::Header {
                expected: CSV_HEADER.join(","),
                found: found.join(","),
            });
        }
        Ok(DatasetReader { inner })
    }

    fn decode(record: &csv::StringRecord, line: u64) -> Result<MatchRecord, RowIssue> {
        let issue = |kind| RowIssue { line, kind };
        let field = |idx: usize, name: &'static str| {
            record
                .get(idx)
                .ok_or_else(|| issue(IssueKind::MissingField(name)))
        };

        let season: Season = field(0, "season")?
            .trim()
            .parse()
            .map_err(|_| issue(IssueKind::BadSeason(record.get(0).unwrap_or("").into())))?;
        let matchday_raw = field(1, "matchday")?.trim();
        let matchday: u32 = matchday_raw
            .parse()
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| issue(IssueKind::BadMatchday(matchday_raw.into())))?;
        let home = field(2, "home_team")?.trim().to_owned();
        let away = field(3, "away_team")?.trim().to_owned();
        if home.is_empty() || away.is_empty() {
            return Err(issue(IssueKind::EmptyTeamName));
        }
        if home == away {
            return Err(issue(IssueKind::IdenticalTeams(home)));
        }
        let sequence_raw = field(4, "goal_sequence")?.trim();
        let mut sequence = Vec::with_capacity(sequence_raw.len());
        for c in sequence_raw.chars() {
            match c {
                'H' => sequence.push(GoalSide::Home),
                'A' => sequence.push(GoalSide::Away),
                other => return Err(issue(IssueKind::UnknownSideChar(other))),
            }
        }
        MatchRecord::new(season, matchday, home, away, sequence)
            .map_err(|e| issue(IssueKind::Malformed(e.to_string())))
    }
}

impl<R: Read> Iterator for DatasetReader<R> {
    type Item = Result<MatchRecord, RowIssue>;

    fn next(&mut self) -> Option<Self::Item> {
        let mut raw = csv::StringRecord::new();
        match self.inner.read_record(&mut raw) {
            Ok(false) => None,
            Ok(true) => {
                let line = raw.position().map_or(0, |p| p.line());
                Some(Self::decode(&raw, line))
            }
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                Some(Err(RowIssue {
                    line,
                    kind: IssueKind::Malformed(e.to_string()),
                }))
            }
        }
    }
}

/// Fully parsed dataset plus any per-row diagnostics (lenient mode only;
/// strict parses never carry issues).
#[derive(Debug)]
pub struct ParsedDataset {
    pub records: Vec<MatchRecord>,
    pub issues: Vec<RowIssue>,
}

/// Reads every record from a CSV stream.
///
/// Strict mode fails on the first bad row; lenient mode skips bad rows and
/// returns them as diagnostics alongside the good ones.
pub fn parse_dataset<R: Read>(reader: R, mode: ParseMode) -> Result<ParsedDataset, DatasetError> {
    let mut records = Vec::new();
    let mut issues = Vec::new();
    for item in DatasetReader::new(reader)? {
        match item {
            Ok(record) => records.push(record),
            Err(issue) => match mode {
                ParseMode::Strict => {
                    return Err(DatasetError::RowsRejected {
                        count: 1,
                        first: issue,
                    })
                }
                ParseMode::Lenient => issues.push(issue),
            },
        }
    }
    Ok(ParsedDataset { records, issues })
}

/// Streaming writer emitting the same CSV format the reader ingests.
pub struct DatasetWriter<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> DatasetWriter<W> {
    /// Opens the stream and writes the header.
    pub fn new(writer: W) -> Result<Self, DatasetError> {
        let mut inner = csv::Writer::from_writer(writer);
        inner.write_record(CSV_HEADER)?;
        Ok(DatasetWriter { inner })
    }

    pub fn write(&mut self, record: &MatchRecord) -> Result<(), DatasetError> {
        let sequence: String = record
            .goal_sequence()
            .iter()
            .map(|g| match g {
                GoalSide::Home => 'H',
                GoalSide::Away => 'A',
            })
            .collect();
        self.inner.write_record([
            record.season().to_string().as_str(),
            record.matchday().to_string().as_str(),
            record.home_team(),
            record.away_team(),
            sequence.as_str(),
        ])?;
        Ok(())
    }

    pub fn flush(&mut self) -> Result<(), DatasetError> {
        self.inner.flush()?;
        Ok(())
    }
}

/// Writes a full record list in the round-trippable CSV format.
pub fn write_dataset_csv<'a, W, I>(writer: W, records: I) -> Result<(), DatasetError>
where
    W: Write,
    I: IntoIterator<Item = &'a MatchRecord>,
{
    let mut out = DatasetWriter::new(writer)?;
    for record in records {
        out.write(record)?;
    }
    out.flush()
}
