//! Text formats for matrices, algebra elements, crossed fields, Weyl
//! elements and graded forms.
//!
//! Complex numbers are `[re, im]` pairs. Matrices are row-major. CSV
//! matrices hold one matrix row per line as `re, im, re, im, …`.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::crossed::{CrossedElement, CrossedModel};
use crate::error::{Error, Result};
use crate::forms::GradedForm;
use crate::linalg::{CMatrix, C64};
use crate::matrixalg::{Element, TracedAlgebra};
use crate::weyl::{TestFunction, WeylElement};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixRecord {
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries.
    pub data: Vec<[f64; 2]>,
}

impl From<&CMatrix> for MatrixRecord {
    fn from(m: &CMatrix) -> Self {
        let data = (0..m.nrows()).flat_map(|i| (0..m.ncols()).map(move |j| [m[(i, j)].re, m[(i, j)].im])).collect();
        Self { rows: m.nrows(), cols: m.ncols(), data }
    }
}

impl TryFrom<&MatrixRecord> for CMatrix {
    type Error = Error;

    fn try_from(r: &MatrixRecord) -> Result<Self> {
        if r.data.len() != r.rows * r.cols {
            return Err(Error::Parse(format!("{}x{} matrix with {} entries", r.rows, r.cols, r.data.len())));
        }
        Ok(CMatrix::from_fn(r.rows, r.cols, |i, j| {
            let [re, im] = r.data[i * r.cols + j];
            C64::new(re, im)
        }))
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("records serialize")
}

pub fn matrix_to_json(m: &CMatrix) -> String {
    to_json(&MatrixRecord::from(m))
}

pub fn matrix_from_json(s: &str) -> Result<CMatrix> {
    CMatrix::try_from(&from_json::<MatrixRecord>(s)?)
}

/// Reads a matrix from headerless CSV. Every line must have the same even
/// number of fields.
pub fn matrix_from_csv<R: Read>(reader: R) -> Result<CMatrix> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(reader);
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        if rec.len() % 2 != 0 {
            return Err(Error::Parse(format!("line {} has an odd number of fields", rows.len() + 1)));
        }
        let vals = rec
            .iter()
            .map(|f| f.parse::<f64>().map_err(|e| Error::Parse(format!("{f:?}: {e}"))))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(vals.chunks(2).map(|p| C64::new(p[0], p[1])).collect());
    }
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("ragged matrix rows".into()));
    }
    Ok(CMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]))
}

pub fn matrix_to_csv<W: Write>(m: &CMatrix, writer: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
    for i in 0..m.nrows() {
        w.write_record((0..m.ncols()).flat_map(|j| [m[(i, j)].re.to_string(), m[(i, j)].im.to_string()]))?;
    }
    w.flush()?;
    Ok(())
}

/// Direct sum element as a list of blocks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementRecord {
    pub blocks: Vec<MatrixRecord>,
}

impl From<&Element> for ElementRecord {
    fn from(x: &Element) -> Self {
        Self { blocks: x.blocks().iter().map(MatrixRecord::from).collect() }
    }
}

impl ElementRecord {
    /// Checks the blocks against the algebra's shape.
    pub fn to_element(&self, alg: &TracedAlgebra) -> Result<Element> {
        let blocks = self.blocks.iter().map(CMatrix::try_from).collect::<Result<Vec<_>>>()?;
        let x = Element::from_blocks(blocks);
        alg.check(&x)?;
        Ok(x)
    }
}

/// One grid point of a crossed field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossedChunk {
    pub index: usize,
    pub value: ElementRecord,
}

/// Crossed field as grid index → element. Indices must be contiguous.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossedRecord {
    pub chunks: Vec<CrossedChunk>,
}

pub fn crossed_to_json(x: &CrossedElement) -> String {
    let chunks = x
        .field()
        .iter()
        .enumerate()
        .map(|(k, v)| CrossedChunk { index: x.lo() + k, value: ElementRecord::from(v) })
        .collect();
    to_json(&CrossedRecord { chunks })
}

/// Parses a crossed field and checks it against the model's window and base
/// algebra.
pub fn crossed_from_json(model: &CrossedModel, s: &str) -> Result<CrossedElement> {
    let rec: CrossedRecord = from_json(s)?;
    let lo = rec.chunks.first().map_or(0, |c| c.index);
    let mut field = Vec::with_capacity(rec.chunks.len());
    for (k, chunk) in rec.chunks.iter().enumerate() {
        if chunk.index != lo + k {
            return Err(Error::Parse(format!("grid index {} breaks the contiguous window at {}", chunk.index, lo + k)));
        }
        if chunk.index >= model.len() {
            return Err(Error::Domain(format!("grid index {} outside the {}-point grid", chunk.index, model.len())));
        }
        field.push(chunk.value.to_element(model.base())?);
    }
    Ok(CrossedElement::new(lo, field))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiteValue {
    pub n: i32,
    pub j: i32,
    pub value: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeylTerm {
    pub key: Vec<SiteValue>,
    pub coefficient: [f64; 2],
}

/// Weyl element as a `(key, coefficient)` list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeylRecord {
    pub terms: Vec<WeylTerm>,
}

pub fn weyl_to_json(x: &WeylElement) -> String {
    let terms = x
        .terms()
        .iter()
        .map(|(f, z)| WeylTerm {
            key: f.iter().map(|((n, j), v)| SiteValue { n, j, value: [v.re, v.im] }).collect(),
            coefficient: [z.re, z.im],
        })
        .collect();
    to_json(&WeylRecord { terms })
}

/// Keys are rounded to the fixed-point label grid; repeated keys add up.
pub fn weyl_from_json(s: &str) -> Result<WeylElement> {
    let rec: WeylRecord = from_json(s)?;
    let mut x = WeylElement::zero();
    for t in rec.terms {
        let f = TestFunction::from_values(t.key.iter().map(|sv| ((sv.n, sv.j), C64::new(sv.value[0], sv.value[1]))));
        x = x.add(&WeylElement::term(f, C64::new(t.coefficient[0], t.coefficient[1])));
    }
    Ok(x)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormComponent {
    pub index: Vec<usize>,
    pub matrix: MatrixRecord,
}

/// Graded form as multi-index → matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormRecord {
    pub degree: usize,
    pub rank: usize,
    pub dim: usize,
    pub components: Vec<FormComponent>,
}

pub fn form_to_json(w: &GradedForm) -> String {
    let components = w
        .components()
        .iter()
        .map(|(idx, m)| FormComponent { index: idx.clone(), matrix: MatrixRecord::from(m) })
        .collect();
    to_json(&FormRecord { degree: w.degree(), rank: w.rank(), dim: w.dim(), components })
}

/// Missing components are zero.
pub fn form_from_json(s: &str) -> Result<GradedForm> {
    let rec: FormRecord = from_json(s)?;
    let comps = rec
        .components
        .iter()
        .map(|c| Ok((c.index.clone(), CMatrix::try_from(&c.matrix)?)))
        .collect::<Result<Vec<_>>>()?;
    GradedForm::from_components(rec.degree, rec.rank, rec.dim, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::DerivationSpace;
    use crate::random;

    fn sample() -> CMatrix {
        CMatrix::from_fn(2, 3, |i, j| C64::new(i as f64 + 0.25, j as f64 - 1.5))
    }

    #[test]
    fn matrix_json_and_csv_round_trip() {
        let m = sample();
        assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
        let mut buf = Vec::new();
        matrix_to_csv(&m, &mut buf).unwrap();
        assert_eq!(matrix_from_csv(buf.as_slice()).unwrap(), m);
    }

    #[test]
    fn malformed_matrices_are_rejected() {
        assert!(matches!(matrix_from_csv("1,0,2\n".as_bytes()), Err(Error::Parse(_))));
        assert!(matches!(matrix_from_csv("1,0\n1,0,2,0\n".as_bytes()), Err(Error::Parse(_) | Error::Io(_))));
        assert!(matches!(matrix_from_json(r#"{"rows":2,"cols":2,"data":[[1,0]]}"#), Err(Error::Parse(_))));
        assert!(matches!(matrix_from_json(r#"{"rows":1,"cols":1,"data":[[1,0]],"x":1}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn crossed_round_trip_and_window_checks() {
        let model = CrossedModel::new(TracedAlgebra::matrix(2), -1.0, 0.5, 8).unwrap();
        let g = Element::from_matrix(CMatrix::identity(2, 2));
        let x = model.scalar_field_on(2, 5, |t| t.exp(), &g).unwrap();
        assert_eq!(crossed_from_json(&model, &crossed_to_json(&x)).unwrap(), x);
        let gap = r#"{"chunks":[{"index":0,"value":{"blocks":[{"rows":1,"cols":1,"data":[[1,0]]}]}},
                               {"index":2,"value":{"blocks":[{"rows":1,"cols":1,"data":[[1,0]]}]}}]}"#;
        let scalar = CrossedModel::new(TracedAlgebra::matrix(1), -1.0, 0.5, 8).unwrap();
        assert!(matches!(crossed_from_json(&scalar, gap), Err(Error::Parse(_))));
        assert!(crossed_from_json(&model, gap).is_err());
    }

    #[test]
    fn weyl_round_trip() {
        let f = TestFunction::from_real([((0, 1), 0.5), ((2, -3), -1.25)]);
        let g = TestFunction::from_values([((1, 1), C64::new(0.0, 2.0))]);
        let x = WeylElement::term(f, C64::new(1.0, -2.0)).add(&WeylElement::term(g, C64::new(0.5, 0.0)));
        assert_eq!(weyl_from_json(&weyl_to_json(&x)).unwrap(), x);
    }

    #[test]
    fn form_round_trip() {
        let space = DerivationSpace::su2();
        let mut rng = random::rng(3);
        let w = GradedForm::random(&mut rng, &space, 2);
        assert_eq!(form_from_json(&form_to_json(&w)).unwrap(), w);
        let bad = r#"{"degree":1,"rank":3,"dim":2,"components":[{"index":[5],"matrix":{"rows":2,"cols":2,"data":[[0,0],[0,0],[0,0],[0,0]]}}]}"#;
        assert!(form_from_json(bad).is_err());
    }
}
