//! Indexed exponent estimates with tail-window statistics.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesPoint {
    pub index: u64,
    pub value: f64,
    /// Certified range of the value; equal to `value` on exact indices.
    pub lower: f64,
    pub upper: f64,
}

/// An index where the quantity is undefined, kept so it is never mistaken
/// for a zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExcludedIndex {
    pub index: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentSeries {
    pub name: String,
    /// Requested index range, inclusive.
    pub first: u64,
    pub last: u64,
    /// First index of the tail window.
    pub tail_from: u64,
    pub points: Vec<SeriesPoint>,
    pub excluded: Vec<ExcludedIndex>,
}

impl ExponentSeries {
    /// Tail window defaults to the second half of `first..=last`.
    pub fn new(name: impl Into<String>, first: u64, last: u64) -> Self {
        assert!(first <= last, "empty index range");
        ExponentSeries {
            name: name.into(),
            first,
            last,
            tail_from: first + (last - first + 1) / 2,
            points: Vec::new(),
            excluded: Vec::new(),
        }
    }

    pub fn with_tail_from(mut self, tail_from: u64) -> Self {
        self.tail_from = tail_from;
        self
    }

    pub fn push(&mut self, index: u64, lower: f64, upper: f64) {
        debug_assert!(lower.is_finite() && upper.is_finite() && lower <= upper);
        self.points.push(SeriesPoint {
            index,
            value: 0.5 * (lower + upper),
            lower,
            upper,
        });
    }

    pub fn push_exact(&mut self, index: u64, value: f64) {
        self.push(index, value, value);
    }

    pub fn exclude(&mut self, index: u64, reason: impl Into<String>) {
        self.excluded.push(ExcludedIndex {
            index,
            reason: reason.into(),
        });
    }

    /// Largest value over indices in `lo..=hi`; ties go to the smaller index.
    pub fn max_over(&self, lo: u64, hi: u64) -> Option<&SeriesPoint> {
        self.points
            .iter()
            .filter(|p| (lo..=hi).contains(&p.index))
            .fold(None, |best: Option<&SeriesPoint>, p| match best {
                Some(b) if b.value > p.value || (b.value == p.value && b.index <= p.index) => {
                    Some(b)
                }
                _ => Some(p),
            })
    }

    pub fn max(&self) -> Option<&SeriesPoint> {
        self.max_over(u64::MIN, u64::MAX)
    }

    pub fn tail_max(&self) -> Option<&SeriesPoint> {
        self.max_over(self.tail_from, u64::MAX)
    }

    /// Points that strictly improve on every earlier point, in index order.
    pub fn running_best(&self) -> Vec<&SeriesPoint> {
        let mut out: Vec<&SeriesPoint> = Vec::new();
        let mut sorted: Vec<&SeriesPoint> = self.points.iter().collect();
        sorted.sort_by_key(|p| p.index);
        for p in sorted {
            if out.last().is_none_or(|b| p.value > b.value) {
                out.push(p);
            }
        }
        out
    }
}
