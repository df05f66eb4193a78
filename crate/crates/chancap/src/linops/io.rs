//! JSON wire format for operators and general complex matrices.
//!
//! Operators travel as `{"dim": d, "re": [[...]], "im": [[...]]}` with
//! row-major entries. Rectangular matrices (Kraus operators of dimension
//! changing maps) use `"dim": [rows, cols]`; square ones keep the plain
//! integer form.

use serde::{Deserialize, Serialize};

use super::matrix::CMat;
use super::{State, TraceClassOperator};
use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OperatorJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixDims {
    Square(usize),
    Rect([usize; 2]),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: MatrixDims,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

fn grids_to_matrix(rows: usize, cols: usize, re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<CMat> {
    let shape_ok = re.len() == rows
        && im.len() == rows
        && re.iter().all(|r| r.len() == cols)
        && im.iter().all(|r| r.len() == cols);
    if !shape_ok {
        return Err(Error::Serialization(format!(
            "entry grids do not match declared shape {rows}x{cols}"
        )));
    }
    Ok(CMat::from_fn(rows, cols, |i, j| {
        Complex64::new(re[i][j], im[i][j])
    }))
}

fn matrix_to_grids(m: &CMat) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let re = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].re).collect())
        .collect();
    let im = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].im).collect())
        .collect();
    (re, im)
}

impl OperatorJson {
    pub fn from_matrix(m: &CMat) -> Self {
        let (re, im) = matrix_to_grids(m);
        Self {
            dim: m.nrows(),
            re,
            im,
        }
    }

    pub fn to_matrix(&self) -> Result<CMat> {
        grids_to_matrix(self.dim, self.dim, &self.re, &self.im)
    }
}

impl MatrixJson {
    pub fn from_matrix(m: &CMat) -> Self {
        let (re, im) = matrix_to_grids(m);
        let dim = if m.nrows() == m.ncols() {
            MatrixDims::Square(m.nrows())
        } else {
            MatrixDims::Rect([m.nrows(), m.ncols()])
        };
        Self { dim, re, im }
    }

    pub fn to_matrix(&self) -> Result<CMat> {
        let (rows, cols) = match self.dim {
            MatrixDims::Square(d) => (d, d),
            MatrixDims::Rect([r, c]) => (r, c),
        };
        grids_to_matrix(rows, cols, &self.re, &self.im)
    }
}

impl TryFrom<OperatorJson> for TraceClassOperator {
    type Error = Error;

    fn try_from(j: OperatorJson) -> Result<Self> {
        TraceClassOperator::new(j.to_matrix()?)
    }
}

impl From<TraceClassOperator> for OperatorJson {
    fn from(op: TraceClassOperator) -> Self {
        OperatorJson::from_matrix(op.matrix())
    }
}

impl TryFrom<OperatorJson> for State {
    type Error = Error;

    fn try_from(j: OperatorJson) -> Result<Self> {
        State::new(j.to_matrix()?)
    }
}

impl From<State> for OperatorJson {
    fn from(s: State) -> Self {
        OperatorJson::from_matrix(s.matrix())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linops::random;

    #[test]
    fn operator_roundtrip_preserves_entries() {
        let mut rng = random::rng_for(3, 0);
        let op = TraceClassOperator::new(random::random_density(&mut rng, 3)).unwrap();
        let text = serde_json::to_string(&op).unwrap();
        let back: TraceClassOperator = serde_json::from_str(&text).unwrap();
        assert!((op.matrix() - back.matrix())
            .iter()
            .all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn load_validates_invariants() {
        let bad = r#"{"dim": 2, "re": [[0.9, 0.0], [0.0, 0.9]], "im": [[0.0,0.0],[0.0,0.0]]}"#;
        assert!(serde_json::from_str::<TraceClassOperator>(bad).is_err());
        let ragged = r#"{"dim": 2, "re": [[0.5, 0.0]], "im": [[0.0,0.0],[0.0,0.0]]}"#;
        assert!(serde_json::from_str::<TraceClassOperator>(ragged).is_err());
    }
}
