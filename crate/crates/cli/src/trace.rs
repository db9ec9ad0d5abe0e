//! JSON-lines trace files: one header object, then one object per segment.

use std::io::{BufRead, Write};
use std::path::Path;

use multimodal_core::coverage::{MotionSegment, SearchMode, Trajectory};
use multimodal_core::solver::optimal_cr;
use multimodal_core::strategies::{Strategy, StrategyParams, Variant};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceHeader {
    pub p: u32,
    pub variant: String,
    pub a: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    pub rounds: usize,
}

impl TraceHeader {
    pub fn from_params(params: &StrategyParams, rounds: usize) -> Self {
        Self {
            p: params.p,
            variant: params.variant.name().to_string(),
            a: params.a,
            r: params.r,
            eps: params.eps,
            rounds,
        }
    }

    /// Rebuilds the strategy parameters. Practical variants take their
    /// target ratio from the solver.
    pub fn params(&self) -> Result<StrategyParams, multimodal_core::Error> {
        let variant = Variant::from_name(&self.variant)
            .ok_or(multimodal_core::Error::InvalidArgument("unknown variant"))?;
        let c = if variant.is_practical() {
            Some(optimal_cr(self.p)?)
        } else {
            None
        };
        let params = StrategyParams {
            p: self.p,
            variant,
            a: self.a,
            r: self.r,
            eps: self.eps,
            c,
        };
        params.validate()?;
        Ok(params)
    }
}

/// Search field of a segment record: a mode index, `"all"` or `"none"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum SearchField {
    Mode(u32),
    Tag(String),
}

impl From<SearchMode> for SearchField {
    fn from(s: SearchMode) -> Self {
        match s {
            SearchMode::Mode(k) => SearchField::Mode(k),
            SearchMode::AllModes => SearchField::Tag("all".into()),
            SearchMode::NoSearch => SearchField::Tag("none".into()),
        }
    }
}

impl SearchField {
    fn mode(&self) -> Option<SearchMode> {
        match self {
            SearchField::Mode(k) => Some(SearchMode::Mode(*k)),
            SearchField::Tag(t) if t == "all" => Some(SearchMode::AllModes),
            SearchField::Tag(t) if t == "none" => Some(SearchMode::NoSearch),
            SearchField::Tag(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SegmentRecord {
    seq: usize,
    t0: f64,
    t1: f64,
    x0: f64,
    x1: f64,
    search: SearchField,
}

/// A loaded trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceFile {
    pub header: TraceHeader,
    pub params: StrategyParams,
    pub trajectory: Trajectory,
}

impl TraceFile {
    pub fn from_strategy(strategy: &Strategy) -> Self {
        Self {
            header: TraceHeader::from_params(&strategy.params, strategy.rounds.len()),
            params: strategy.params,
            trajectory: strategy.trajectory.clone(),
        }
    }

    pub fn write_to(&self, mut out: impl Write) -> std::io::Result<()> {
        serde_json::to_writer(&mut out, &self.header)?;
        out.write_all(b"\n")?;
        for (seq, s) in self.trajectory.segments().iter().enumerate() {
            let rec = SegmentRecord {
                seq,
                t0: s.t_start,
                t1: s.t_end,
                x0: s.x_start,
                x1: s.x_end,
                search: s.search.into(),
            };
            serde_json::to_writer(&mut out, &rec)?;
            out.write_all(b"\n")?;
        }
        out.flush()
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
        self.write_to(std::io::BufWriter::new(file))
            .map_err(|e| CliError::io(path, e))
    }

    /// Parses a trace. `path` only labels errors; record 0 is the header.
    pub fn read_from(input: impl BufRead, path: &Path) -> Result<Self, CliError> {
        let parse = |record: usize, message: String| CliError::Parse {
            path: path.to_path_buf(),
            record,
            message,
        };
        let mut lines = input
            .lines()
            .map(|l| l.map_err(|e| CliError::io(path, e)))
            .filter(|l| !matches!(l, Ok(s) if s.trim().is_empty()));
        let first = lines
            .next()
            .ok_or_else(|| parse(0, "missing header".into()))??;
        let header: TraceHeader =
            serde_json::from_str(&first).map_err(|e| parse(0, e.to_string()))?;
        let params = header.params().map_err(|e| parse(0, e.to_string()))?;

        let mut segments = Vec::new();
        for (i, line) in lines.enumerate() {
            let record = i + 1;
            let rec: SegmentRecord =
                serde_json::from_str(&line?).map_err(|e| parse(record, e.to_string()))?;
            if rec.seq != i {
                return Err(parse(
                    record,
                    format!("expected seq {i}, found {}", rec.seq),
                ));
            }
            let search = rec.search.mode().ok_or_else(|| {
                parse(
                    record,
                    "search must be an integer, \"all\" or \"none\"".into(),
                )
            })?;
            segments.push(MotionSegment {
                t_start: rec.t0,
                t_end: rec.t1,
                x_start: rec.x0,
                x_end: rec.x1,
                search,
            });
        }
        let trajectory = Trajectory::from_segments(header.p, segments).map_err(|e| match e {
            multimodal_core::Error::InvalidSegment { index, .. } => parse(index + 1, e.to_string()),
            other => parse(0, other.to_string()),
        })?;
        Ok(Self {
            header,
            params,
            trajectory,
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let file = std::fs::File::open(path).map_err(|e| CliError::io(path, e))?;
        Self::read_from(std::io::BufReader::new(file), path)
    }
}
