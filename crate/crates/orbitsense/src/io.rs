//! Plain-text complex matrix and vector formats.
//!
//! Matrix files: a header line `n m` (rows, columns), then n lines of m
//! whitespace-separated `re im` pairs. Vector files: a header line `n`,
//! then n lines of `re im`.

use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector};

fn format_err(path: &Path, detail: impl Into<String>) -> Error {
    Error::FileFormat {
        path: path.display().to_string(),
        detail: detail.into(),
    }
}

fn parse_floats(path: &Path, line: &str, lineno: usize) -> Result<Vec<f64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|_| format_err(path, format!("line {lineno}: bad number '{tok}'")))
        })
        .collect()
}

pub fn read_matrix(path: &Path) -> Result<CMatrix> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (hno, header) = lines
        .next()
        .ok_or_else(|| format_err(path, "empty file"))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| format_err(path, format!("line {}: bad dimension '{t}'", hno + 1)))
        })
        .collect::<Result<_>>()?;
    if dims.len() != 2 {
        return Err(format_err(path, "header must be 'rows cols'"));
    }
    let (n, m) = (dims[0], dims[1]);
    let mut mat = CMatrix::zeros(n, m);
    for r in 0..n {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| format_err(path, format!("missing row {r}")))?;
        let vals = parse_floats(path, line, lno + 1)?;
        if vals.len() != 2 * m {
            return Err(format_err(
                path,
                format!("row {r} has {} numbers, expected {}", vals.len(), 2 * m),
            ));
        }
        for c in 0..m {
            mat[(r, c)] = Complex64::new(vals[2 * c], vals[2 * c + 1]);
        }
    }
    Ok(mat)
}

pub fn write_matrix(path: &Path, mat: &CMatrix) -> Result<()> {
    let mut out = format!("{} {}\n", mat.nrows(), mat.ncols());
    for r in 0..mat.nrows() {
        let row: Vec<String> = (0..mat.ncols())
            .map(|c| format!("{} {}", mat[(r, c)].re, mat[(r, c)].im))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn read_vector(path: &Path) -> Result<CVector> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (hno, header) = lines
        .next()
        .ok_or_else(|| format_err(path, "empty file"))?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| format_err(path, format!("line {}: bad length", hno + 1)))?;
    let mut v = CVector::zeros(n);
    for i in 0..n {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| format_err(path, format!("missing entry {i}")))?;
        let vals = parse_floats(path, line, lno + 1)?;
        if vals.len() != 2 {
            return Err(format_err(path, format!("entry {i}: expected 're im'")));
        }
        v[i] = Complex64::new(vals[0], vals[1]);
    }
    Ok(v)
}

pub fn write_vector(path: &Path, v: &CVector) -> Result<()> {
    let mut out = format!("{}\n", v.len());
    for i in 0..v.len() {
        out.push_str(&format!("{} {}\n", v[i].re, v[i].im));
    }
    std::fs::write(path, out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::rng::rng_from_seed;

    #[test]
    fn matrix_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.txt");
        let mut rng = rng_from_seed(1);
        let m = crate::linalg::random_unitary(5, &mut rng);
        write_matrix(&path, &m).unwrap();
        let back = read_matrix(&path).unwrap();
        assert!(max_abs_diff(&m, &back) == 0.0);
    }

    #[test]
    fn vector_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.txt");
        let v = CVector::from_fn(7, |i, _| Complex64::new(i as f64, -0.25 * i as f64));
        write_vector(&path, &v).unwrap();
        let back = read_vector(&path).unwrap();
        assert_eq!(v, back);
    }

    #[test]
    fn malformed_inputs_are_named() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.txt");
        std::fs::write(&path, "2 2\n1 0 0 0\n1 x 0 0\n").unwrap();
        let err = read_matrix(&path).unwrap_err();
        assert!(err.to_string().contains("bad number"));
        std::fs::write(&path, "2 2\n1 0\n").unwrap();
        assert!(read_matrix(&path).is_err());
    }
}
