use std::path::{Path, PathBuf};

use super::{number, read_file, write_file};
use crate::error::ExportError;
use crate::features::FeatureVector;

#[derive(Clone, Debug, PartialEq)]
pub struct CsvData {
    pub names: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// One comma-separated line of numbers per vector.
pub fn render_csv(vectors: &[FeatureVector]) -> String {
    let mut out = String::new();
    for v in vectors {
        let cells: Vec<String> = v.values.iter().map(|x| number(*x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn names_path(path: &Path) -> PathBuf {
    path.with_extension("names")
}

/// Write the vectors to `path` and their lemma names, one per line, to the
/// same path with a `.names` extension.
pub fn write_csv(vectors: &[FeatureVector], path: &Path) -> Result<(), ExportError> {
    if let Some(first) = vectors.first() {
        if vectors.iter().any(|v| v.values.len() != first.values.len() || v.level != first.level) {
            return Err(ExportError::InconsistentVectors);
        }
    }
    write_file(path, &render_csv(vectors))?;
    let mut names = String::new();
    for v in vectors {
        names.push_str(&v.lemma_name);
        names.push('\n');
    }
    write_file(&names_path(path), &names)
}

/// Rows of a numeric CSV document. Every row must have the same width.
pub fn parse_csv(text: &str, path: &Path) -> Result<Vec<Vec<f64>>, ExportError> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |reason: String| ExportError::Format {
            path: path.to_path_buf(),
            line: i + 1,
            reason,
        };
        let row = line
            .split(',')
            .map(|c| c.trim().parse::<f64>().map_err(|_| bad(format!("not a number: {c:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(bad(format!("{} columns, expected {}", row.len(), first.len())));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Read a file written by [`write_csv`] together with its names file.
pub fn read_csv(path: &Path) -> Result<CsvData, ExportError> {
    let rows = parse_csv(&read_file(path)?, path)?;
    let npath = names_path(path);
    let names: Vec<String> = read_file(&npath)?.lines().map(str::to_string).collect();
    if names.len() != rows.len() {
        return Err(ExportError::Format {
            path: npath,
            line: names.len(),
            reason: format!("{} names for {} rows", names.len(), rows.len()),
        });
    }
    Ok(CsvData { names, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Level;

    fn v(name: &str, values: Vec<f64>) -> FeatureVector {
        FeatureVector {
            lemma_name: name.into(),
            level: Level::Goal,
            values,
            saturated: false,
        }
    }

    #[test]
    fn two_goal_vectors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("goal.csv");
        let vs = vec![v("a", (0..30).map(f64::from).collect()), v("b", vec![-0.5; 30])];
        write_csv(&vs, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.lines().all(|l| l.split(',').count() == 30));
        let back = read_csv(&path).unwrap();
        assert_eq!(back.names, vec!["a", "b"]);
        assert_eq!(back.rows[1], vec![-0.5; 30]);
    }

    #[test]
    fn empty_list_gives_empty_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.csv");
        write_csv(&[], &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "");
        assert_eq!(std::fs::read_to_string(dir.path().join("x.names")).unwrap(), "");
    }

    #[test]
    fn awkward_numbers_round_trip() {
        let vals = vec![0.1 + 0.2, -4444.0, 1e12, 1e-300, f64::MIN_POSITIVE, -0.0];
        let text = render_csv(&[v("a", vals.clone())]);
        let rows = parse_csv(&text, Path::new("mem")).unwrap();
        assert_eq!(rows[0], vals);
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = parse_csv("1,2\n3\n", Path::new("mem")).unwrap_err();
        assert!(matches!(err, ExportError::Format { line: 2, .. }));
    }
}
