//! JSON description of a code.
//!
//! ```json
//! {"q": 31, "kind": "plane", "b": 4, "r": 3, "z": 0,
//!  "points": [[1, 1], [1, 2], [1, 3], [1, 4], [6, 5], …]}
//! {"q": 13, "kind": "bundle", "b": 4, "t": 2, "alpha": 1, "beta": 1, "m": 2,
//!  "points": {"seed": 7}}
//! ```
//!
//! Plane points are `[x, y]` and bundle points `[x, y_0, …, y_m]`, listed
//! batch by batch. Field elements are plain integers below `q`. A
//! `{"seed": s}` object samples the points instead.

use serde::{Deserialize, Serialize};

use crate::code::{CodeKind, CodeSpec};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::points::{sample_bundle, sample_plane, BundlePoints, BundleSampling, PlanePoints, DEFAULT_MAX_ATTEMPTS};
use crate::polyspace::binomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Plane,
    Bundle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointsField {
    Explicit(Vec<Vec<u64>>),
    Seeded { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpecFile {
    pub q: u64,
    pub kind: Kind,
    pub b: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_attempts: Option<usize>,
    pub points: PointsField,
}

fn required(v: Option<usize>, name: &str) -> Result<usize> {
    v.ok_or_else(|| Error::Schema(format!("missing field `{name}`")))
}

impl CodeSpecFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// Resolves sampling and checks the point set.
    pub fn to_spec(&self) -> Result<CodeSpec> {
        let field = PrimeField::new(self.q).map_err(|e| Error::Schema(e.to_string()))?;
        if let PointsField::Explicit(rows) = &self.points {
            if let Some(v) = rows.iter().flatten().find(|&&v| v >= self.q) {
                return Err(Error::Schema(format!("value {v} is not below q = {}", self.q)));
            }
        }
        let spec = match self.kind {
            Kind::Plane => {
                let r = required(self.r, "r")?;
                let z = self.z.unwrap_or(0);
                let points = match &self.points {
                    PointsField::Seeded { seed } => sample_plane(&field, self.b, r, *seed)?,
                    PointsField::Explicit(rows) => {
                        let pairs = rows
                            .iter()
                            .map(|p| match p.as_slice() {
                                [x, y] => Ok((*x, *y)),
                                _ => Err(Error::ArityMismatch { expected: 2, found: p.len() }),
                            })
                            .collect::<Result<Vec<_>>>()?;
                        PlanePoints::from_pairs(&field, &pairs, r)?
                    }
                };
                if points.b() != self.b {
                    return Err(Error::Schema(format!("b = {} but the points form {} batches", self.b, points.b())));
                }
                CodeSpec::plane(field, r, z, points)
            }
            Kind::Bundle => {
                let t = required(self.t, "t")?;
                let alpha = required(self.alpha, "alpha")?;
                let beta = required(self.beta, "beta")?;
                let m = required(self.m, "m")?;
                let points = match &self.points {
                    PointsField::Seeded { seed } => {
                        let max_attempts = self.max_attempts.unwrap_or(DEFAULT_MAX_ATTEMPTS);
                        sample_bundle(&field, BundleSampling { b: self.b, t, beta, m, max_attempts }, *seed)?
                    }
                    PointsField::Explicit(rows) => bundle_points(&field, rows, self.b, t, beta, m)?,
                };
                CodeSpec::bundle(field, t, alpha, beta, points)
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The spec with its points written out.
    pub fn from_spec(spec: &CodeSpec) -> Self {
        let q = spec.field.order();
        match &spec.kind {
            CodeKind::Plane { r, z, points } => Self {
                q,
                kind: Kind::Plane,
                b: points.b(),
                r: Some(*r),
                z: Some(*z),
                t: None,
                alpha: None,
                beta: None,
                m: None,
                max_attempts: None,
                points: PointsField::Explicit(points.pairs().into_iter().map(|(x, y)| vec![x, y]).collect()),
            },
            CodeKind::Bundle { t, alpha, beta, points } => Self {
                q,
                kind: Kind::Bundle,
                b: points.b(),
                r: None,
                z: None,
                t: Some(*t),
                alpha: Some(*alpha),
                beta: Some(*beta),
                m: Some(points.m),
                max_attempts: None,
                points: PointsField::Explicit(
                    points
                        .batches
                        .iter()
                        .flat_map(|b| {
                            b.ys.iter().map(move |y| std::iter::once(b.x.0).chain(y.iter().map(|v| v.0)).collect())
                        })
                        .collect(),
                ),
            },
        }
    }
}

fn bundle_points(field: &PrimeField, rows: &[Vec<u64>], b: usize, t: usize, beta: usize, m: usize) -> Result<BundlePoints> {
    let size = t * binomial(beta + m, m) + 1;
    if rows.len() != b * size {
        return Err(Error::Schema(format!("expected {} bundle points ({b} batches of {size}), got {}", b * size, rows.len())));
    }
    let mut batches = Vec::with_capacity(b);
    for (i, chunk) in rows.chunks(size).enumerate() {
        let x = chunk[0][0];
        let mut ys = Vec::with_capacity(size);
        for row in chunk {
            if row.len() != m + 2 {
                return Err(Error::ArityMismatch { expected: m + 2, found: row.len() });
            }
            if row[0] != x {
                return Err(Error::InconsistentBatchX(i + 1));
            }
            ys.push(row[1..].to_vec());
        }
        batches.push((x, ys));
    }
    BundlePoints::from_raw(field, m, &batches)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_round_trip() {
        let text = r#"{"q":7,"kind":"plane","b":3,"r":1,"points":[[0,1],[0,2],[1,3],[1,4],[2,5],[2,6]]}"#;
        let file = CodeSpecFile::from_json(text).unwrap();
        let spec = file.to_spec().unwrap();
        let back = CodeSpecFile::from_spec(&spec);
        assert_eq!(CodeSpecFile::from_json(&back.to_json()).unwrap(), back);
        assert_eq!(back.to_spec().unwrap(), spec);
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(CodeSpecFile::from_json("{"), Err(Error::Schema(_))));
        let missing = r#"{"q":7,"kind":"plane","b":3,"points":{"seed":1}}"#;
        assert!(matches!(CodeSpecFile::from_json(missing).unwrap().to_spec(), Err(Error::Schema(_))));
        let big = r#"{"q":7,"kind":"plane","b":1,"r":1,"points":[[0,1],[0,9]]}"#;
        assert!(matches!(CodeSpecFile::from_json(big).unwrap().to_spec(), Err(Error::Schema(_))));
    }

    #[test]
    fn seeded_bundle() {
        let text = r#"{"q":13,"kind":"bundle","b":3,"t":2,"alpha":1,"beta":1,"m":2,"points":{"seed":3}}"#;
        let spec = CodeSpecFile::from_json(text).unwrap().to_spec().unwrap();
        let back = CodeSpecFile::from_spec(&spec);
        assert_eq!(back.to_spec().unwrap(), spec);
    }
}
