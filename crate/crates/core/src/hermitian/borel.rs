use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A real interval with independently open or closed endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub lo_open: bool,
    pub hi: f64,
    pub hi_open: bool,
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Self { lo, lo_open: false, hi, hi_open: false }
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        Self { lo, lo_open: true, hi, hi_open: true }
    }

    pub fn point(x: f64) -> Self {
        Self::closed(x, x)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.contains_approx(x, 0.0)
    }

    /// Closed endpoints are widened by `tol`, open endpoints narrowed by `tol`.
    pub fn contains_approx(&self, x: f64, tol: f64) -> bool {
        let above = if self.lo_open { x > self.lo + tol } else { x >= self.lo - tol };
        let below = if self.hi_open { x < self.hi - tol } else { x <= self.hi + tol };
        above && below
    }

    fn validate(&self) -> Result<()> {
        if self.lo.is_nan() || self.hi.is_nan() {
            return Err(Error::InvalidInput("interval endpoint is NaN".into()));
        }
        let nonempty = self.lo < self.hi || (self.lo == self.hi && !self.lo_open && !self.hi_open);
        if !nonempty {
            return Err(Error::InvalidInput(format!("interval {self} is empty")));
        }
        if (self.lo.is_infinite() && !self.lo_open) || (self.hi.is_infinite() && !self.hi_open) {
            return Err(Error::InvalidInput(format!("interval {self} has a closed infinite endpoint")));
        }
        Ok(())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_open { '(' } else { '[' },
            self.lo,
            self.hi,
            if self.hi_open { ')' } else { ']' }
        )
    }
}

/// A finite union of disjoint intervals, sorted by left endpoint.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
#[serde(transparent)]
pub struct BorelSet {
    intervals: Vec<Interval>,
}

impl BorelSet {
    /// Sorts the intervals and checks they are non-empty and pairwise disjoint.
    pub fn new(mut intervals: Vec<Interval>) -> Result<Self> {
        for i in &intervals {
            i.validate()?;
        }
        intervals.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.lo_open.cmp(&b.lo_open)));
        for w in intervals.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let disjoint = a.hi < b.lo || (a.hi == b.lo && (a.hi_open || b.lo_open));
            if !disjoint {
                return Err(Error::InvalidInput(format!("intervals {a} and {b} overlap")));
            }
        }
        Ok(Self { intervals })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn point(x: f64) -> Self {
        Self { intervals: vec![Interval::point(x)] }
    }

    /// The whole real line.
    pub fn everything() -> Self {
        Self { intervals: vec![Interval::open(f64::NEG_INFINITY, f64::INFINITY)] }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }

    pub fn contains_approx(&self, x: f64, tol: f64) -> bool {
        self.intervals.iter().any(|i| i.contains_approx(x, tol))
    }

    /// Union of two disjoint sets; overlapping inputs are rejected.
    pub fn disjoint_union(&self, other: &BorelSet) -> Result<Self> {
        let mut all = self.intervals.clone();
        all.extend_from_slice(&other.intervals);
        Self::new(all)
    }

    /// Parses either the JSON list encoding or interval notation such as
    /// `[0,1) U {2} U (3,inf)`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with("[{") || t.replace(char::is_whitespace, "") == "[]" || t.starts_with("[ {") {
            return Self::from_json(t);
        }
        parse_notation(t)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let intervals: Vec<Interval> = serde_json::from_str(text)?;
        Self::new(intervals)
    }
}

impl<'de> Deserialize<'de> for BorelSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let intervals = Vec::<Interval>::deserialize(d)?;
        BorelSet::new(intervals).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for BorelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "{{}}");
        }
        for (k, i) in self.intervals.iter().enumerate() {
            if k > 0 {
                write!(f, " U ")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

fn parse_number(s: &str) -> Result<f64> {
    let s = s.trim();
    match s {
        "inf" | "+inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        _ => s
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Error::InvalidInput(format!("bad interval endpoint '{s}'"))),
    }
}

fn parse_notation(text: &str) -> Result<BorelSet> {
    if text.is_empty() || text == "{}" {
        return Ok(BorelSet::empty());
    }
    let mut intervals = Vec::new();
    for part in text.split(['U', '∪']) {
        let p = part.trim();
        if let Some(inner) = p.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            for x in inner.split(',') {
                intervals.push(Interval::point(parse_number(x)?));
            }
            continue;
        }
        let lo_open = match p.chars().next() {
            Some('[') => false,
            Some('(') => true,
            _ => return Err(Error::InvalidInput(format!("bad interval '{p}'"))),
        };
        let hi_open = match p.chars().last() {
            Some(']') if p.len() > 1 => false,
            Some(')') if p.len() > 1 => true,
            _ => return Err(Error::InvalidInput(format!("bad interval '{p}'"))),
        };
        let body = &p[1..p.len() - 1];
        let (lo, hi) = body
            .split_once(',')
            .ok_or_else(|| Error::InvalidInput(format!("bad interval '{p}'")))?;
        intervals.push(Interval { lo: parse_number(lo)?, lo_open, hi: parse_number(hi)?, hi_open });
    }
    BorelSet::new(intervals)
}
