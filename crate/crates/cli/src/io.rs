//! File formats and argument parsing for matrices and states.
//!
//! Matrices travel as JSON documents with exactly the keys `dim`, `re`,
//! `im` (square real/imaginary arrays). States accept the same document
//! with 1-D arrays for a pure state vector, or a 2-D density matrix.
//! Wherever a matrix file is expected, the shorthand `pauli:x|y|z` is also
//! accepted. Floats are written with 17 significant digits so values
//! round-trip exactly.

use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use opasym::matrix::{ComplexMatrix, DensityMatrix, Observable, PureState};

/// On-disk matrix document.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

/// On-disk state document: 1-D arrays (pure state) or 2-D (density matrix).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dim: usize,
    pub re: serde_json::Value,
    pub im: serde_json::Value,
}

pub enum StateInput {
    Pure(PureState),
    Density(DensityMatrix),
}

impl StateInput {
    pub fn density(&self) -> DensityMatrix {
        match self {
            StateInput::Pure(psi) => psi.to_density(),
            StateInput::Density(rho) => rho.clone(),
        }
    }

    /// Pure-state view: either the vector itself or, for a numerically pure
    /// density matrix (purity within 1e-9 of one), its top eigenvector.
    pub fn as_pure(&self) -> Option<PureState> {
        match self {
            StateInput::Pure(psi) => Some(psi.clone()),
            StateInput::Density(rho) => {
                if (rho.purity() - 1.0).abs() > 1e-9 {
                    return None;
                }
                let decomp = opasym::eig::eig_hermitian(rho.matrix()).ok()?;
                let top = decomp.dim() - 1;
                let amplitudes: Vec<Complex64> = (0..decomp.dim())
                    .map(|i| decomp.eigenvectors()[(i, top)])
                    .collect();
                PureState::normalized(amplitudes).ok()
            }
        }
    }
}

fn matrix_from_parts(dim: usize, re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<ComplexMatrix, String> {
    if re.len() != dim || im.len() != dim {
        return Err(format!(
            "array shape does not match dim={dim}: re has {} rows, im has {} rows",
            re.len(),
            im.len()
        ));
    }
    let mut rows = Vec::with_capacity(dim);
    for (re_row, im_row) in re.iter().zip(im) {
        if re_row.len() != dim || im_row.len() != dim {
            return Err(format!("array shape does not match dim={dim}"));
        }
        rows.push(
            re_row
                .iter()
                .zip(im_row)
                .map(|(&r, &i)| (r, i))
                .collect::<Vec<(f64, f64)>>(),
        );
    }
    ComplexMatrix::from_rows(&rows).map_err(|e| e.to_string())
}

/// Read a matrix document from disk.
pub fn read_matrix_file(path: &Path) -> Result<ComplexMatrix, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let file: MatrixFile = serde_json::from_str(&text)
        .map_err(|e| format!("cannot parse {}: {e}", path.display()))?;
    matrix_from_parts(file.dim, &file.re, &file.im)
}

/// Serialize a matrix with 17-significant-digit floats (exact round-trip).
pub fn matrix_to_json_string(m: &ComplexMatrix) -> String {
    let d = m.dim();
    let fmt = |v: f64| format!("{v:.16e}");
    let mut out = String::from("{");
    out.push_str(&format!("\"dim\":{d},\"re\":["));
    for i in 0..d {
        if i > 0 {
            out.push(',');
        }
        out.push('[');
        for j in 0..d {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&fmt(m[(i, j)].re));
        }
        out.push(']');
    }
    out.push_str("],\"im\":[");
    for i in 0..d {
        if i > 0 {
            out.push(',');
        }
        out.push('[');
        for j in 0..d {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&fmt(m[(i, j)].im));
        }
        out.push(']');
    }
    out.push_str("]}");
    out
}

/// Parse a matrix argument: a `pauli:x|y|z` shorthand or a file path.
pub fn parse_matrix_arg(arg: &str) -> Result<ComplexMatrix, String> {
    if let Some(name) = arg.strip_prefix("pauli:") {
        let obs = match name.to_ascii_lowercase().as_str() {
            "x" => Observable::pauli_x(),
            "y" => Observable::pauli_y(),
            "z" => Observable::pauli_z(),
            other => return Err(format!("unknown Pauli `{other}` (use x, y, or z)")),
        };
        return Ok(obs.matrix().clone());
    }
    read_matrix_file(Path::new(arg))
}

/// Parse an observable argument (matrix + Hermiticity check).
pub fn parse_observable_arg(arg: &str) -> Result<Observable, opasym::Error> {
    let m = parse_matrix_arg(arg).map_err(opasym::Error::InvalidSpec)?;
    Observable::new(m)
}

/// Read a state document: pure vector (1-D arrays) or density matrix (2-D).
pub fn read_state_file(path: &Path) -> Result<StateInput, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let file: StateFile = serde_json::from_str(&text)
        .map_err(|e| format!("cannot parse {}: {e}", path.display()))?;

    let as_1d = |v: &serde_json::Value| -> Option<Vec<f64>> {
        serde_json::from_value(v.clone()).ok()
    };
    let as_2d = |v: &serde_json::Value| -> Option<Vec<Vec<f64>>> {
        serde_json::from_value(v.clone()).ok()
    };

    if let (Some(re), Some(im)) = (as_1d(&file.re), as_1d(&file.im)) {
        if re.len() != file.dim || im.len() != file.dim {
            return Err(format!(
                "state vector length does not match dim={} in {}",
                file.dim,
                path.display()
            ));
        }
        let amplitudes: Vec<Complex64> = re
            .iter()
            .zip(&im)
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect();
        let psi = PureState::new(amplitudes).map_err(|e| e.to_string())?;
        return Ok(StateInput::Pure(psi));
    }
    if let (Some(re), Some(im)) = (as_2d(&file.re), as_2d(&file.im)) {
        let m = matrix_from_parts(file.dim, &re, &im)?;
        let rho = DensityMatrix::new(m).map_err(|e| e.to_string())?;
        return Ok(StateInput::Density(rho));
    }
    Err(format!(
        "{}: re/im must both be 1-D (pure state) or 2-D (density matrix) arrays",
        path.display()
    ))
}

/// Write a file atomically: temp file in the target directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), String> {
    use std::io::Write;
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(dir) => tempfile::NamedTempFile::new_in(dir),
        None => tempfile::NamedTempFile::new_in("."),
    }
    .map_err(|e| format!("cannot create temp file near {}: {e}", path.display()))?;
    tmp.write_all(contents.as_bytes())
        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    tmp.persist(path)
        .map_err(|e| format!("cannot move temp file to {}: {e}", path.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_file_round_trip() {
        let m = ComplexMatrix::from_rows(&[
            vec![(0.1, -0.25), (1.0 / 3.0, 2e-17)],
            vec![(1.0 / 3.0, -2e-17), (-7.125, 0.0)],
        ])
        .unwrap();
        let text = matrix_to_json_string(&m);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        std::fs::write(&path, &text).unwrap();
        let back = read_matrix_file(&path).unwrap();
        assert_eq!(back.entries(), m.entries());
        // write(read(f)) reproduces the serialization byte for byte.
        assert_eq!(matrix_to_json_string(&back), text);
    }

    #[test]
    fn rejects_unknown_keys() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(&path, r#"{"dim":1,"re":[[1.0]],"im":[[0.0]],"extra":1}"#).unwrap();
        assert!(read_matrix_file(&path).is_err());
    }

    #[test]
    fn rejects_shape_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(&path, r#"{"dim":2,"re":[[1.0]],"im":[[0.0]]}"#).unwrap();
        assert!(read_matrix_file(&path).is_err());
    }

    #[test]
    fn pauli_shorthand() {
        let y = parse_matrix_arg("pauli:y").unwrap();
        assert_eq!(y[(0, 1)], Complex64::new(0.0, -1.0));
        assert!(parse_matrix_arg("pauli:w").is_err());
    }

    #[test]
    fn pure_density_file_converts_to_pure_state() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rho.json");
        std::fs::write(
            &path,
            r#"{"dim":2,"re":[[0.5,0.5],[0.5,0.5]],"im":[[0.0,0.0],[0.0,0.0]]}"#,
        )
        .unwrap();
        let state = read_state_file(&path).unwrap();
        let psi = state.as_pure().expect("projector is pure");
        assert!((psi.amplitudes()[0].norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-9);
    }

    #[test]
    fn mixed_density_file_is_not_pure() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rho.json");
        std::fs::write(
            &path,
            r#"{"dim":2,"re":[[0.75,0.0],[0.0,0.25]],"im":[[0.0,0.0],[0.0,0.0]]}"#,
        )
        .unwrap();
        let state = read_state_file(&path).unwrap();
        assert!(state.as_pure().is_none());
    }
}
