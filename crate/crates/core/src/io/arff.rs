use std::path::Path;

use super::{number, read_file, write_file};
use crate::error::ExportError;
use crate::features::FeatureVector;

#[derive(Clone, Debug, PartialEq)]
pub struct ArffData {
    pub relation: String,
    pub attributes: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

fn quote(name: &str) -> String {
    let plain = !name.is_empty()
        && name
            .chars()
            .all(|c| !c.is_whitespace() && !matches!(c, '\'' | '"' | ',' | '{' | '}' | '%' | '\\'));
    if plain {
        name.to_string()
    } else {
        format!("'{}'", name.replace('\\', "\\\\").replace('\'', "\\'"))
    }
}

/// `@RELATION`, one numeric attribute `f<i>` per feature, then the data.
/// Lemma names are listed in comments.
pub fn render_arff(vectors: &[FeatureVector], relation: &str) -> String {
    let dim = vectors.first().map_or(0, |v| v.values.len());
    let mut out = format!("@RELATION {}\n\n", quote(relation));
    for i in 0..dim {
        out.push_str(&format!("@ATTRIBUTE f{i} NUMERIC\n"));
    }
    out.push_str("\n@DATA\n");
    for v in vectors {
        out.push_str(&format!("% {}\n", v.lemma_name));
        let cells: Vec<String> = v.values.iter().map(|x| number(*x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn write_arff(vectors: &[FeatureVector], relation: &str, path: &Path) -> Result<(), ExportError> {
    if let Some(first) = vectors.first() {
        if vectors.iter().any(|v| v.values.len() != first.values.len()) {
            return Err(ExportError::InconsistentVectors);
        }
    }
    write_file(path, &render_arff(vectors, relation))
}

/// Split off the first (possibly quoted) token of a header line.
fn first_token(s: &str) -> Option<(String, &str)> {
    let s = s.trim_start();
    let mut chars = s.char_indices();
    match chars.next()? {
        (_, q @ ('\'' | '"')) => {
            let mut out = String::new();
            let mut escaped = false;
            for (i, c) in chars {
                if escaped {
                    out.push(c);
                    escaped = false;
                } else if c == '\\' {
                    escaped = true;
                } else if c == q {
                    return Some((out, &s[i + 1..]));
                } else {
                    out.push(c);
                }
            }
            None
        }
        _ => {
            let end = s.find(char::is_whitespace).unwrap_or(s.len());
            Some((s[..end].to_string(), &s[end..]))
        }
    }
}

/// Numeric ARFF documents only.
pub fn parse_arff(text: &str, path: &Path) -> Result<ArffData, ExportError> {
    let mut relation = None;
    let mut attributes = Vec::new();
    let mut rows = Vec::new();
    let mut in_data = false;
    for (i, raw) in text.lines().enumerate() {
        let bad = |reason: &str| ExportError::Format {
            path: path.to_path_buf(),
            line: i + 1,
            reason: reason.to_string(),
        };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if in_data {
            let row = line
                .split(',')
                .map(|c| c.trim().parse::<f64>().map_err(|_| bad("non-numeric value")))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != attributes.len() {
                return Err(bad("row width differs from attribute count"));
            }
            rows.push(row);
            continue;
        }
        let (keyword, rest) = first_token(line).ok_or_else(|| bad("unterminated quote"))?;
        match keyword.to_ascii_uppercase().as_str() {
            "@RELATION" => {
                let (name, _) = first_token(rest).ok_or_else(|| bad("missing relation name"))?;
                relation = Some(name);
            }
            "@ATTRIBUTE" => {
                let (name, rest) = first_token(rest).ok_or_else(|| bad("missing attribute name"))?;
                let ty = rest.trim().to_ascii_uppercase();
                if ty != "NUMERIC" && ty != "REAL" {
                    return Err(bad("only numeric attributes are supported"));
                }
                attributes.push(name);
            }
            "@DATA" => in_data = true,
            _ => return Err(bad("unknown header line")),
        }
    }
    Ok(ArffData {
        relation: relation.ok_or_else(|| ExportError::Format {
            path: path.to_path_buf(),
            line: 0,
            reason: "no @RELATION".into(),
        })?,
        attributes,
        rows,
    })
}

pub fn read_arff(path: &Path) -> Result<ArffData, ExportError> {
    parse_arff(&read_file(path)?, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Level;

    fn v(values: Vec<f64>) -> FeatureVector {
        FeatureVector {
            lemma_name: "l".into(),
            level: Level::Goal,
            values,
            saturated: false,
        }
    }

    #[test]
    fn thirty_attributes() {
        let text = render_arff(&[v(vec![1.0; 30])], "goal");
        assert_eq!(text.lines().filter(|l| l.starts_with("@ATTRIBUTE")).count(), 30);
        assert!(text.starts_with("@RELATION goal\n"));
    }

    #[test]
    fn relation_with_spaces_is_quoted() {
        let text = render_arff(&[v(vec![1.5, -2.0])], "my lib's goals");
        assert!(text.starts_with("@RELATION 'my lib\\'s goals'\n"));
        let back = parse_arff(&text, Path::new("mem")).unwrap();
        assert_eq!(back.relation, "my lib's goals");
        assert_eq!(back.attributes, vec!["f0", "f1"]);
        assert_eq!(back.rows, vec![vec![1.5, -2.0]]);
    }

    #[test]
    fn rejects_nominal_attributes() {
        let doc = "@RELATION r\n@ATTRIBUTE c {a,b}\n@DATA\n";
        assert!(parse_arff(doc, Path::new("mem")).is_err());
    }
}
