//! On-disk formats: a JSON set file (tagged by `kind`) for every supported
//! representation and a headerless CSV format for point clouds.
//!
//! Matrices are stored as `{rows, cols, data}` with row-major data; exponent
//! matrices use integer data. Floating-point values round-trip exactly
//! through the JSON encoding.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::linalg::{DenseMatrix, DenseVector, ExponentMatrix, IntervalScalar};
use crate::sets::{
    ConPolyZonotope, ConZonotope, Ellipsoid, IntervalBox, PolyZonotope, TaylorModel,
};
use crate::{CpzError, Result};

/// Row-major real matrix payload.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixData {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

/// Row-major nonnegative-integer matrix payload (exponents).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct IntMatrixData {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl MatrixData {
    fn from_dense(m: &DenseMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.data().to_vec(),
        }
    }

    fn to_dense(&self) -> Result<DenseMatrix> {
        DenseMatrix::new(self.rows, self.cols, self.data.clone())
    }
}

impl IntMatrixData {
    fn from_exponents(m: &ExponentMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.data().to_vec(),
        }
    }

    fn to_exponents(&self) -> Result<ExponentMatrix> {
        ExponentMatrix::new(self.rows, self.cols, self.data.clone())
    }
}

/// One set of any supported representation, as stored on disk.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SetFile {
    Cpz {
        c: Vec<f64>,
        g: MatrixData,
        e: IntMatrixData,
        a: MatrixData,
        b: Vec<f64>,
        r: IntMatrixData,
    },
    Polyzono {
        c: Vec<f64>,
        g: MatrixData,
        gi: MatrixData,
        e: IntMatrixData,
    },
    Conzono {
        c: Vec<f64>,
        g: MatrixData,
        a: MatrixData,
        b: Vec<f64>,
    },
    Zonotope {
        c: Vec<f64>,
        g: MatrixData,
    },
    Interval {
        lo: Vec<f64>,
        hi: Vec<f64>,
    },
    Ellipsoid {
        c: Vec<f64>,
        q: MatrixData,
    },
    Taylormodel {
        coeffs: MatrixData,
        expons: IntMatrixData,
        rem_lo: Vec<f64>,
        rem_hi: Vec<f64>,
    },
}

impl SetFile {
    pub fn from_cpz(s: &ConPolyZonotope) -> Self {
        SetFile::Cpz {
            c: s.center().as_slice().to_vec(),
            g: MatrixData::from_dense(s.generators()),
            e: IntMatrixData::from_exponents(s.exponents()),
            a: MatrixData::from_dense(s.con_generators()),
            b: s.con_offset().as_slice().to_vec(),
            r: IntMatrixData::from_exponents(s.con_exponents()),
        }
    }

    /// The stored set, embedded into CPZ form (non-CPZ kinds run through the
    /// matching conversion).
    pub fn to_cpz(&self) -> Result<ConPolyZonotope> {
        match self {
            SetFile::Cpz { c, g, e, a, b, r } => ConPolyZonotope::new(
                DenseVector::new(c.clone()),
                g.to_dense()?,
                e.to_exponents()?,
                a.to_dense()?,
                DenseVector::new(b.clone()),
                r.to_exponents()?,
            ),
            SetFile::Polyzono { c, g, gi, e } => {
                crate::convert::from_poly_zonotope(&PolyZonotope::new(
                    DenseVector::new(c.clone()),
                    g.to_dense()?,
                    gi.to_dense()?,
                    e.to_exponents()?,
                )?)
            }
            SetFile::Conzono { c, g, a, b } => {
                crate::convert::from_con_zonotope(&ConZonotope::new(
                    DenseVector::new(c.clone()),
                    g.to_dense()?,
                    a.to_dense()?,
                    DenseVector::new(b.clone()),
                )?)
            }
            SetFile::Zonotope { c, g } => {
                crate::convert::from_zonotope(&DenseVector::new(c.clone()), &g.to_dense()?)
            }
            SetFile::Interval { lo, hi } => Ok(crate::convert::from_interval(&IntervalBox::new(
                DenseVector::new(lo.clone()),
                DenseVector::new(hi.clone()),
            )?)),
            SetFile::Ellipsoid { c, q } => crate::convert::from_ellipsoid(&Ellipsoid::new(
                DenseVector::new(c.clone()),
                q.to_dense()?,
            )?),
            SetFile::Taylormodel {
                coeffs,
                expons,
                rem_lo,
                rem_hi,
            } => {
                if rem_lo.len() != rem_hi.len() {
                    return Err(CpzError::shape(
                        "remainder bounds",
                        rem_lo.len(),
                        rem_hi.len(),
                    ));
                }
                let remainder: Vec<IntervalScalar> = rem_lo
                    .iter()
                    .zip(rem_hi)
                    .map(|(&lo, &hi)| IntervalScalar::new(lo, hi))
                    .collect::<Result<_>>()?;
                crate::convert::from_taylor_model(&TaylorModel::new(
                    coeffs.to_dense()?,
                    expons.to_exponents()?,
                    remainder,
                )?)
            }
        }
    }
}

/// Read a set file; JSON syntax and schema errors report as validation
/// failures, missing files as I/O failures.
pub fn load(path: &Path) -> Result<SetFile> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| {
        CpzError::Validation(format!("cannot parse set file {}: {e}", path.display()))
    })
}

/// Write a set file as pretty-printed JSON.
pub fn save(path: &Path, set: &SetFile) -> Result<()> {
    let text = serde_json::to_string_pretty(set).map_err(|e| {
        CpzError::Validation(format!("cannot serialize set file: {e}"))
    })?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

/// Write one point per line, comma-separated, no header. The float encoding
/// is the shortest string that parses back to the same double.
pub fn write_points(path: &Path, points: &[DenseVector]) -> Result<()> {
    let mut out = String::new();
    for p in points {
        let fields: Vec<String> = p.as_slice().iter().map(|v| format!("{v}")).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}
