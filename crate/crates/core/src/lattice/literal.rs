//! Text and JSON literals for spacetimes.
//!
//! ```text
//! L=6
//! t=0: 0-5
//! t=1: 0-2,4
//! ```
//!
//! JSON form: `{"L": 6, "rows": {"0": "0-5", "1": "0-2,4"}}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{LatticeError, LatticeSpacetime, Site};

#[derive(Debug, Serialize, Deserialize)]
pub(super) struct SpacetimeJson {
    #[serde(rename = "L")]
    l: u32,
    rows: BTreeMap<i64, String>,
}

impl From<&LatticeSpacetime> for SpacetimeJson {
    fn from(m: &LatticeSpacetime) -> Self {
        Self {
            l: m.circumference(),
            rows: m.rows().into_iter().map(|(t, xs)| (t, format_ranges(&xs))).collect(),
        }
    }
}

impl TryFrom<SpacetimeJson> for LatticeSpacetime {
    type Error = LatticeError;
    fn try_from(j: SpacetimeJson) -> Result<Self, Self::Error> {
        let mut sites = Vec::new();
        for (t, ranges) in &j.rows {
            sites.extend(parse_ranges(ranges)?.into_iter().map(|x| Site::new(*t, x)));
        }
        LatticeSpacetime::new(j.l, sites)
    }
}

/// Parses either literal form.
pub fn parse_spacetime(input: &str) -> Result<LatticeSpacetime, LatticeError> {
    let trimmed = input.trim();
    if trimmed.starts_with('{') {
        let j: SpacetimeJson =
            serde_json::from_str(trimmed).map_err(|e| LatticeError::Parse(e.to_string()))?;
        return j.try_into();
    }
    let mut lines = trimmed.lines().map(str::trim).filter(|s| !s.is_empty() && !s.starts_with('#'));
    let header = lines.next().ok_or_else(|| LatticeError::Parse("missing `L=` header".into()))?;
    let l = header
        .strip_prefix("L=")
        .and_then(|v| v.trim().parse::<u32>().ok())
        .ok_or_else(|| LatticeError::Parse(format!("bad header `{header}`")))?;
    let mut sites = Vec::new();
    for line in lines {
        let (lhs, rhs) =
            line.split_once(':').ok_or_else(|| LatticeError::Parse(format!("bad row `{line}`")))?;
        let t = lhs
            .trim()
            .strip_prefix("t=")
            .and_then(|v| v.trim().parse::<i64>().ok())
            .ok_or_else(|| LatticeError::Parse(format!("bad row label `{lhs}`")))?;
        sites.extend(parse_ranges(rhs)?.into_iter().map(|x| Site::new(t, x)));
    }
    LatticeSpacetime::new(l, sites)
}

pub(super) fn to_text(m: &LatticeSpacetime) -> String {
    let mut out = format!("L={}", m.circumference());
    for (t, xs) in m.rows() {
        out.push_str(&format!("\nt={t}: {}", format_ranges(&xs)));
    }
    out
}

fn parse_ranges(s: &str) -> Result<Vec<i64>, LatticeError> {
    let bad = || LatticeError::Parse(format!("bad x-range list `{}`", s.trim()));
    let mut xs = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let a: i64 = a.trim().parse().map_err(|_| bad())?;
                let b: i64 = b.trim().parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                xs.extend(a..=b);
            }
            None => xs.push(part.parse().map_err(|_| bad())?),
        }
    }
    Ok(xs)
}

fn format_ranges(xs: &[i64]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < xs.len() {
        let mut j = i;
        while j + 1 < xs.len() && xs[j + 1] == xs[j] + 1 {
            j += 1;
        }
        parts.push(if i == j { xs[i].to_string() } else { format!("{}-{}", xs[i], xs[j]) });
        i = j + 1;
    }
    parts.join(",")
}
