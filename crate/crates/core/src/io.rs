//! JSON file formats.
//!
//! Every matrix is stored row-major as `[[[re, im], ...], ...]`:
//!
//! * state: `{"dim": d, "rows": <matrix>}`
//! * basis: same layout, the columns are the basis vectors
//! * channel: `{"dim": d, "kraus": [<matrix>, ...]}`
//! * Hamiltonian: `{"dim": d, "rows": <matrix>, "energy_unit": "J"}` (unit optional)

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::basis::Basis;
use crate::channels::KrausChannel;
use crate::error::{QcohError, Result};
use crate::linalg::{c64, CMatrix};
use crate::qstate::DensityMatrix;
use crate::thermo::Hamiltonian;

pub type MatrixRows = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub rows: MatrixRows,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelFile {
    pub dim: usize,
    pub kraus: Vec<MatrixRows>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianFile {
    pub dim: usize,
    pub rows: MatrixRows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energy_unit: Option<String>,
}

pub fn rows_to_matrix(dim: usize, rows: &MatrixRows) -> Result<CMatrix> {
    if dim == 0 {
        return Err(QcohError::Parse("dim must be positive".into()));
    }
    if rows.len() != dim {
        return Err(QcohError::Parse(format!("dim is {dim} but {} rows given", rows.len())));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != dim) {
        return Err(QcohError::Parse(format!("row {i} has {} entries, expected {dim}", r.len())));
    }
    if rows.iter().flatten().flatten().any(|x| !x.is_finite()) {
        return Err(QcohError::Parse("non-finite entry".into()));
    }
    Ok(CMatrix::from_fn(dim, dim, |i, j| c64(rows[i][j][0], rows[i][j][1])))
}

pub fn matrix_to_rows(m: &CMatrix) -> MatrixRows {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}

pub fn parse_state(json: &str) -> Result<DensityMatrix> {
    let f: MatrixFile = serde_json::from_str(json)?;
    DensityMatrix::new(rows_to_matrix(f.dim, &f.rows)?)
}

pub fn parse_basis(json: &str) -> Result<Basis> {
    let f: MatrixFile = serde_json::from_str(json)?;
    Basis::from_unitary(rows_to_matrix(f.dim, &f.rows)?)
}

pub fn parse_channel(json: &str) -> Result<KrausChannel> {
    let f: ChannelFile = serde_json::from_str(json)?;
    let ops = f.kraus.iter().map(|k| rows_to_matrix(f.dim, k)).collect::<Result<Vec<_>>>()?;
    KrausChannel::new(f.dim, ops)
}

pub fn parse_hamiltonian(json: &str) -> Result<(Hamiltonian, Option<String>)> {
    let f: HamiltonianFile = serde_json::from_str(json)?;
    Ok((Hamiltonian::new(rows_to_matrix(f.dim, &f.rows)?)?, f.energy_unit))
}

pub fn state_to_json(rho: &DensityMatrix) -> String {
    serde_json::to_string(&MatrixFile { dim: rho.dim(), rows: matrix_to_rows(rho.matrix()) }).unwrap()
}

pub fn basis_to_json(b: &Basis) -> String {
    serde_json::to_string(&MatrixFile { dim: b.dim(), rows: matrix_to_rows(b.unitary()) }).unwrap()
}

pub fn channel_to_json(ch: &KrausChannel) -> String {
    serde_json::to_string(&ChannelFile { dim: ch.dim(), kraus: ch.operators().iter().map(matrix_to_rows).collect() })
        .unwrap()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| QcohError::Io(format!("{}: {e}", path.display())))
}

pub fn read_state(path: &Path) -> Result<DensityMatrix> {
    parse_state(&read(path)?)
}

pub fn read_basis(path: &Path) -> Result<Basis> {
    parse_basis(&read(path)?)
}

pub fn read_channel(path: &Path) -> Result<KrausChannel> {
    parse_channel(&read(path)?)
}

pub fn read_hamiltonian(path: &Path) -> Result<(Hamiltonian, Option<String>)> {
    parse_hamiltonian(&read(path)?)
}

/// `computational`, `fourier`, or a path to a basis file.
pub fn resolve_basis(spec: &str, dim: usize) -> Result<Basis> {
    match spec {
        "computational" => Ok(Basis::computational(dim)),
        "fourier" => Ok(Basis::fourier(dim)),
        path => read_basis(Path::new(path)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::bit_flip;
    use crate::qstate::random_density_matrix;

    #[test]
    fn state_json_layout() {
        let rho = parse_state(r#"{"dim": 2, "rows": [[[0.5, 0], [0.5, 0]], [[0.5, 0], [0.5, 0]]]}"#).unwrap();
        assert_eq!(rho.dim(), 2);
        assert_eq!(rho.matrix()[(0, 1)], c64(0.5, 0.0));
        let r = random_density_matrix(3, 2, 1).unwrap();
        let back = parse_state(&state_to_json(&r)).unwrap();
        assert!(crate::linalg::max_abs_diff(back.matrix(), r.matrix()) < 1e-15);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_state(r#"{"dim": 2, "rows": [[[1, 0]]]}"#), Err(QcohError::Parse(_))));
        assert!(matches!(parse_state("not json"), Err(QcohError::Parse(_))));
        assert!(matches!(parse_state(r#"{"dim": 1, "rows": [[[0.5, 0]]]}"#), Err(QcohError::NotUnitTrace { .. })));
    }

    #[test]
    fn basis_columns_are_vectors() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let json = format!(r#"{{"dim": 2, "rows": [[[{s}, 0], [{s}, 0]], [[{s}, 0], [{}, 0]]]}}"#, -s);
        let b = parse_basis(&json).unwrap();
        assert!((b.vector(1)[1].re + s).abs() < 1e-15);
        assert_eq!(parse_basis(&basis_to_json(&b)).unwrap(), b);
        assert!(matches!(
            parse_basis(r#"{"dim": 2, "rows": [[[1, 0], [1, 0]], [[0, 0], [1, 0]]]}"#),
            Err(QcohError::NotUnitary { .. })
        ));
    }

    #[test]
    fn channel_and_hamiltonian_json() {
        let ch = bit_flip(0.3).unwrap();
        assert_eq!(parse_channel(&channel_to_json(&ch)).unwrap(), ch);
        assert!(matches!(
            parse_channel(r#"{"dim": 1, "kraus": [[[[0.5, 0]]]]}"#),
            Err(QcohError::IncompleteChannel { .. })
        ));
        let (h, unit) = parse_hamiltonian(r#"{"dim": 1, "rows": [[[2.0, 0]]], "energy_unit": "eV"}"#).unwrap();
        assert_eq!((h.dim(), unit.as_deref()), (1, Some("eV")));
        let (_, unit) = parse_hamiltonian(r#"{"dim": 1, "rows": [[[2.0, 0]]]}"#).unwrap();
        assert!(unit.is_none());
    }
}
