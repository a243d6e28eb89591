use serde::Serialize;

use crate::lattice::{LatticeSpacetime, LocMorphism};
use crate::lbord::{BordObject, Bordism};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One exact comparison: `lhs` and `rhs` are the two sides that must agree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub instance_key: String,
    pub status: Status,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
    /// The construction or axiom the check exercises.
    pub construction: String,
}

impl CheckRecord {
    pub fn new(
        check: &str,
        instance_key: impl Into<String>,
        pass: bool,
        lhs: serde_json::Value,
        rhs: serde_json::Value,
        construction: &str,
    ) -> Self {
        Self {
            check: check.to_owned(),
            instance_key: instance_key.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            lhs,
            rhs,
            construction: construction.to_owned(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Records of a suite, kept in a deterministic order.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Report {
    records: Vec<CheckRecord>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn records(&self) -> &[CheckRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(CheckRecord::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed())
    }

    /// Records of one check.
    pub fn of(&self, check: &str) -> impl Iterator<Item = &CheckRecord> + '_ {
        let check = check.to_owned();
        self.records.iter().filter(move |r| r.check == check)
    }

    /// Sorts by check name, then instance key; stable for equal keys.
    pub fn normalized(mut self) -> Self {
        self.records.sort_by(|a, b| (&a.check, &a.instance_key).cmp(&(&b.check, &b.instance_key)));
        self
    }
}

pub(crate) fn region_key(m: &LatticeSpacetime) -> String {
    if m.is_slab() {
        format!("slab[{},{}]", m.t_min(), m.t_max())
    } else {
        let first = m.sites().iter().next().expect("regions are nonempty");
        format!("region{}@({},{})", m.len(), first.t, first.x)
    }
}

pub(crate) fn morphism_key(f: &LocMorphism) -> String {
    let s = f.shift();
    format!("{}->{} by ({},{})", region_key(f.source()), region_key(f.target()), s.dt, s.dx)
}

pub(crate) fn object_key(o: &BordObject) -> String {
    format!("{}@{}", o.rows(), o.sigma())
}

pub(crate) fn bordism_key(b: &Bordism) -> String {
    format!(
        "{}=>{} N={} V0={} V1={} i0=({},{}) i1=({},{})",
        object_key(&b.src()),
        object_key(&b.tgt()),
        b.n(),
        b.v0(),
        b.v1(),
        b.i0().dt,
        b.i0().dx,
        b.i1().dt,
        b.i1().dx
    )
}
