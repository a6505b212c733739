//! Matrix Market (coordinate) and headerless CSV readers and writers.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rsvd_core::{DenseMatrix, MatrixOperator, SparseMatrixCSR};

use crate::error::{BenchError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Real,
    Integer,
    Pattern,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
}

fn parse_banner(path: &Path, line: &str) -> Result<(Field, Symmetry)> {
    let tokens: Vec<String> = line.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" {
        return Err(BenchError::parse(path, 1, "expected '%%MatrixMarket matrix coordinate <field> <symmetry>'"));
    }
    if tokens[1] != "matrix" {
        return Err(BenchError::parse(path, 1, format!("unsupported object '{}'", tokens[1])));
    }
    if tokens[2] != "coordinate" {
        return Err(BenchError::parse(path, 1, format!("unsupported format '{}', only coordinate is read", tokens[2])));
    }
    let field = match tokens[3].as_str() {
        "real" | "double" => Field::Real,
        "integer" => Field::Integer,
        "pattern" => Field::Pattern,
        other => return Err(BenchError::parse(path, 1, format!("unsupported field '{other}'"))),
    };
    let symmetry = match tokens[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        other => return Err(BenchError::parse(path, 1, format!("unsupported symmetry '{other}'"))),
    };
    Ok((field, symmetry))
}

/// Reads a coordinate Matrix Market file into CSR. Symmetric storage is
/// expanded, pattern entries become 1.0 and duplicates are summed.
pub fn load_matrix_market(path: impl AsRef<Path>) -> Result<MatrixOperator> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| BenchError::io(path, e))?;
    let mut lines = BufReader::new(file).lines().enumerate();

    let banner = match lines.next() {
        Some((_, line)) => line.map_err(|e| BenchError::io(path, e))?,
        None => return Err(BenchError::parse(path, 1, "empty file")),
    };
    let (field, symmetry) = parse_banner(path, &banner)?;

    let mut dims: Option<(usize, usize, usize)> = None;
    let mut triplets = Vec::new();
    let mut seen = 0usize;
    let mut last_line = 1;
    for (idx, line) in lines {
        let lineno = idx + 1;
        last_line = lineno;
        let line = line.map_err(|e| BenchError::io(path, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let Some((rows, cols, nnz)) = dims else {
            if tokens.len() != 3 {
                return Err(BenchError::parse(path, lineno, "size line must be '<rows> <cols> <entries>'"));
            }
            let parsed: Vec<usize> = tokens
                .iter()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| BenchError::parse(path, lineno, format!("bad size line: {e}")))?;
            dims = Some((parsed[0], parsed[1], parsed[2]));
            triplets.reserve(parsed[2]);
            continue;
        };
        let want = if field == Field::Pattern { 2 } else { 3 };
        if tokens.len() != want {
            return Err(BenchError::parse(path, lineno, format!("expected {want} fields, found {}", tokens.len())));
        }
        let index = |t: &str| {
            t.parse::<usize>()
                .map_err(|e| BenchError::parse(path, lineno, format!("bad index '{t}': {e}")))
        };
        let (i, j) = (index(tokens[0])?, index(tokens[1])?);
        if i == 0 || j == 0 || i > rows || j > cols {
            return Err(BenchError::parse(
                path,
                lineno,
                format!("entry ({i}, {j}) outside the declared {rows} x {cols} matrix"),
            ));
        }
        let value = match field {
            Field::Pattern => 1.0,
            Field::Real | Field::Integer => {
                let v: f64 = tokens[2]
                    .parse()
                    .map_err(|e| BenchError::parse(path, lineno, format!("bad value '{}': {e}", tokens[2])))?;
                if !v.is_finite() {
                    return Err(BenchError::parse(path, lineno, format!("non-finite value '{}'", tokens[2])));
                }
                v
            }
        };
        triplets.push((i - 1, j - 1, value));
        if symmetry == Symmetry::Symmetric && i != j {
            triplets.push((j - 1, i - 1, value));
        }
        seen += 1;
        if seen > nnz {
            return Err(BenchError::parse(path, lineno, format!("more than the declared {nnz} entries")));
        }
    }
    let Some((rows, cols, nnz)) = dims else {
        return Err(BenchError::parse(path, last_line, "missing size line"));
    };
    if seen != nnz {
        return Err(BenchError::parse(
            path,
            last_line,
            format!("declared {nnz} entries, found {seen}"),
        ));
    }
    Ok(SparseMatrixCSR::from_triplets(rows, cols, &triplets)?.into())
}

/// Writes the nonzeros of `a` as `coordinate real general`.
pub fn write_matrix_market(path: impl AsRef<Path>, a: &MatrixOperator) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| BenchError::io(path, e))?;
    let mut w = BufWriter::new(file);
    let (rows, cols) = a.shape();
    let entries: Vec<(usize, usize, f64)> = match a {
        MatrixOperator::Sparse(s) => (0..rows)
            .flat_map(|i| s.row_entries(i).map(move |(j, v)| (i, j, v)))
            .collect(),
        MatrixOperator::Dense(d) => (0..rows)
            .flat_map(|i| d.row(i).iter().enumerate().map(move |(j, &v)| (i, j, v)))
            .filter(|e| e.2 != 0.0)
            .collect(),
    };
    let mut emit = || -> std::io::Result<()> {
        writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
        writeln!(w, "{rows} {cols} {}", entries.len())?;
        for (i, j, v) in &entries {
            writeln!(w, "{} {} {:.16e}", i + 1, j + 1, v)?;
        }
        w.flush()
    };
    emit().map_err(|e| BenchError::io(path, e))
}

/// Reads a rectangular numeric CSV. Rows and columns in errors are 1-based
/// and count the header row when one is skipped.
pub fn load_dense_csv(path: impl AsRef<Path>, skip_header: bool) -> Result<DenseMatrix> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| BenchError::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(skip_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for record in reader.records() {
        let record = record?;
        let row = record.position().map_or(rows.len() + 1, |p| p.line() as usize);
        if record.len() == 1 && record.get(0) == Some("") {
            continue;
        }
        let values = record
            .iter()
            .enumerate()
            .map(|(c, cell)| match cell.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(BenchError::parse(
                    path,
                    row,
                    format!("non-numeric value '{cell}' at row {row}, column {}", c + 1),
                )),
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if values.len() != first.len() {
                return Err(BenchError::parse(
                    path,
                    row,
                    format!("ragged row {row}: {} fields, expected {}", values.len(), first.len()),
                ));
            }
        }
        rows.push(values);
    }
    if rows.is_empty() {
        return Err(BenchError::parse(path, 1, "no data rows"));
    }
    Ok(DenseMatrix::from_rows(&rows)?)
}

/// Writes `a` densely, one row per line, 17 significant digits.
pub fn write_dense_csv(path: impl AsRef<Path>, a: &DenseMatrix) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| BenchError::io(path, e))?;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(BufWriter::new(file));
    for i in 0..a.rows() {
        w.write_record(a.row(i).iter().map(|v| format!("{v:.16e}")))?;
    }
    w.flush().map_err(|e| BenchError::io(path, e))
}

/// Loads a matrix by extension: `.mtx` as Matrix Market, anything else as CSV.
pub fn load_matrix(path: impl AsRef<Path>) -> Result<MatrixOperator> {
    let path = path.as_ref();
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("mtx") => load_matrix_market(path),
        _ => Ok(load_dense_csv(path, false)?.into()),
    }
}

/// Writes `a` by extension, mirroring [`load_matrix`].
pub fn write_matrix(path: impl AsRef<Path>, a: &MatrixOperator) -> Result<()> {
    let path = path.as_ref();
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("mtx") => write_matrix_market(path, a),
        Some(ext) if ext.eq_ignore_ascii_case("csv") => write_dense_csv(path, &a.to_dense()),
        _ => Err(BenchError::Usage(format!(
            "cannot infer a format from '{}', use .mtx or .csv",
            path.display()
        ))),
    }
}
