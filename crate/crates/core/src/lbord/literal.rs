//! JSON literals: `{src, tgt, n, v0, v1, i0: {dt, dx}, i1: {dt, dx}}`.

use serde::{Deserialize, Serialize};

use crate::lattice::{LatticeSpacetime, Shift};

use super::{BordObject, Bordism, LBordError, Rows};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectJson {
    pub m: LatticeSpacetime,
    pub sigma: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BordismJson {
    pub src: ObjectJson,
    pub tgt: ObjectJson,
    pub n: LatticeSpacetime,
    pub v0: LatticeSpacetime,
    pub v1: LatticeSpacetime,
    pub i0: Shift,
    pub i1: Shift,
}

impl From<&BordObject> for ObjectJson {
    fn from(o: &BordObject) -> Self {
        Self { m: o.spacetime(), sigma: o.sigma() }
    }
}

impl TryFrom<&ObjectJson> for BordObject {
    type Error = LBordError;
    fn try_from(j: &ObjectJson) -> Result<Self, LBordError> {
        BordObject::new(&j.m, j.sigma)
    }
}

impl From<&Bordism> for BordismJson {
    fn from(b: &Bordism) -> Self {
        let l = b.circumference();
        let st = |r: Rows| r.spacetime(l).expect("validated slab");
        Self {
            src: (&b.src()).into(),
            tgt: (&b.tgt()).into(),
            n: st(b.n()),
            v0: st(b.v0()),
            v1: st(b.v1()),
            i0: b.i0(),
            i1: b.i1(),
        }
    }
}

impl TryFrom<&BordismJson> for Bordism {
    type Error = LBordError;
    fn try_from(j: &BordismJson) -> Result<Self, LBordError> {
        let src = BordObject::try_from(&j.src)?;
        let tgt = BordObject::try_from(&j.tgt)?;
        let n = Rows::of(&j.n)?;
        let v0 = Rows::of(&j.v0)?;
        let v1 = Rows::of(&j.v1)?;
        for m in [&j.n, &j.v0, &j.v1] {
            if m.circumference() != src.circumference() {
                return Err(crate::lattice::LatticeError::CircumferenceMismatch(
                    m.circumference(),
                    src.circumference(),
                )
                .into());
            }
        }
        Bordism::new(src, tgt, n, v0, v1, j.i0, j.i1)
    }
}

impl Bordism {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&BordismJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, LBordError> {
        let j: BordismJson = serde_json::from_str(s)
            .map_err(|e| LBordError::Lattice(crate::lattice::LatticeError::Parse(e.to_string())))?;
        Bordism::try_from(&j)
    }
}
