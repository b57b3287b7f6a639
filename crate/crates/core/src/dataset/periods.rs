//! Season labels and multi-season aggregation buckets.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A season identified by its starting year; displays as `1963/64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Season(u16);

impl Season {
    pub fn new(start_year: u16) -> Self {
        Season(start_year)
    }

    pub fn start_year(self) -> u16 {
        self.0
    }
}

impl fmt::Display for Season {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{:02}", self.0, (self.0 + 1) % 100)
    }
}

impl FromStr for Season {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (year, suffix) = s
            .split_once('/')
            .ok_or_else(|| format!("season `{s}` is not of the form 1963/64"))?;
        if year.len() != 4 || suffix.len() != 2 {
            return Err(format!("season `{s}` is not of the form 1963/64"));
        }
        let year: u16 = year
            .parse()
            .map_err(|_| format!("season `{s}` has a non-numeric year"))?;
        let suffix: u16 = suffix
            .parse()
            .map_err(|_| format!("season `{s}` has a non-numeric suffix"))?;
        if (year + 1) % 100 != suffix {
            return Err(format!(
                "season `{s}` suffix does not continue the starting year"
            ));
        }
        Ok(Season(year))
    }
}

/// One aggregation bucket: a consecutive run of seasons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodBucket {
    pub label: String,
    pub first: Season,
    pub last: Season,
}

impl PeriodBucket {
    fn spanning(first: u16, last: u16) -> Self {
        PeriodBucket {
            label: format!("{} – {}", Season(first), Season(last)),
            first: Season(first),
            last: Season(last),
        }
    }

    pub fn contains(&self, season: Season) -> bool {
        (self.first..=self.last).contains(&season)
    }

    /// Mean of the start years covered, used as the bucket's x coordinate.
    pub fn midpoint_year(&self) -> f64 {
        f64::from(self.first.start_year() + self.last.start_year()) / 2.0
    }
}

/// Ordered, non-overlapping season buckets covering a dataset's range,
/// generated from an anchor season with a (possibly shorter) first bucket
/// followed by fixed-length ones. The same scheme extrapolates beyond the
/// data when a trend crossing must be mapped to a bucket label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodSpec {
    buckets: Vec<PeriodBucket>,
    anchor: u16,
    first_len: u16,
    later_len: u16,
}

impl PeriodSpec {
    /// Buckets of `first_len` seasons, then `later_len` seasons each, from
    /// `first` until `last` is covered.
    pub fn with_lengths(
        first: Season,
        last: Season,
        first_len: u16,
        later_len: u16,
    ) -> Result<Self> {
        if first_len == 0 || later_len == 0 {
            return Err(Error::EmptyInput("period lengths must be positive"));
        }
        if last < first {
            return Err(Error::EmptyInput("season range is reversed"));
        }
        let anchor = first.start_year();
        let mut buckets = vec![PeriodBucket::spanning(anchor, anchor + first_len - 1)];
        let mut next = anchor + first_len;
        while next <= last.start_year() {
            buckets.push(PeriodBucket::spanning(next, next + later_len - 1));
            next += later_len;
        }
        Ok(PeriodSpec {
            buckets,
            anchor,
            first_len,
            later_len,
        })
    }

    /// The default league scheme: a 9-season opening bucket, decades after.
    pub fn decades(first: Season, last: Season) -> Result<Self> {
        Self::with_lengths(first, last, 9, 10)
    }

    pub fn buckets(&self) -> &[PeriodBucket] {
        &self.buckets
    }

    pub fn len(&self) -> usize {
        self.buckets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.is_empty()
    }

    pub fn index_of(&self, season: Season) -> Option<usize> {
        self.buckets.iter().position(|b| b.contains(season))
    }

    /// Label of the (possibly extrapolated) bucket containing a fractional
    /// year; years before the anchor clamp to the first bucket.
    pub fn label_containing_year(&self, year: f64) -> String {
        let year = year.floor();
        if year < f64::from(self.anchor) + f64::from(self.first_len) {
            return PeriodBucket::spanning(self.anchor, self.anchor + self.first_len - 1).label;
        }
        let offset = (year - f64::from(self.anchor) - f64::from(self.first_len)) as u64;
        let index = offset / u64::from(self.later_len);
        let start = self.anchor + self.first_len + (index as u16) * self.later_len;
        PeriodBucket::spanning(start, start + self.later_len - 1).label
    }
}
