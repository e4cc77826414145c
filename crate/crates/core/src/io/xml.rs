//! Cluster reports as XML:
//!
//! ```xml
//! <clusters>
//!   <cluster>
//!     <lemma>fact_prod</lemma>
//!     <lemma>sum_first_n</lemma>
//!   </cluster>
//!   <frequency>47.00</frequency>
//! </clusters>
//! ```

use std::collections::BTreeSet;
use std::path::Path;

use quick_xml::escape::resolve_predefined_entity;
use quick_xml::events::{BytesText, Event};
use quick_xml::{Reader, Writer};

use super::{read_file, write_file};
use crate::error::ExportError;
use crate::model::{ClusterEntry, ClusterReport};

pub fn render_cluster_xml(report: &ClusterReport) -> String {
    let mut w = Writer::new_with_indent(Vec::new(), b' ', 2);
    let el = w.create_element("clusters");
    let res = if report.entries.is_empty() {
        el.write_empty().map(|_| ())
    } else {
        el.write_inner_content(|w| {
            for e in &report.entries {
                w.create_element("cluster").write_inner_content(|w| {
                    for l in &e.lemmas {
                        w.create_element("lemma")
                            .write_text_content(BytesText::new(l))?;
                    }
                    Ok(())
                })?;
                w.create_element("frequency")
                    .write_text_content(BytesText::new(&format!("{:.2}", e.frequency_pct)))?;
            }
            Ok(())
        })
        .map(|_| ())
    };
    res.expect("writing to memory cannot fail");
    let mut s = String::from_utf8(w.into_inner()).expect("utf-8 input gives utf-8 output");
    s.push('\n');
    s
}

pub fn write_cluster_xml(report: &ClusterReport, path: &Path) -> Result<(), ExportError> {
    write_file(path, &render_cluster_xml(report))
}

fn in_text(stack: &[String]) -> bool {
    matches!(stack.last().map(String::as_str), Some("lemma" | "frequency"))
}

fn schema(msg: impl Into<String>) -> ExportError {
    ExportError::Schema(msg.into())
}

/// Parse a report. The result carries no engine configuration.
pub fn parse_cluster_xml(text: &str) -> Result<ClusterReport, ExportError> {
    // text is kept verbatim: lemma names may carry spaces
    let mut reader = Reader::from_str(text);

    let mut stack: Vec<String> = Vec::new();
    let mut entries = Vec::new();
    let mut pending: Option<BTreeSet<String>> = None;
    let mut current: Option<BTreeSet<String>> = None;
    let mut buf = String::new();
    let mut seen_root = false;

    loop {
        let ev = reader
            .read_event()
            .map_err(|e| schema(format!("at byte {}: {e}", reader.buffer_position())))?;
        let opens = matches!(ev, Event::Start(_));
        match ev {
            Event::Start(e) | Event::Empty(e) if stack.is_empty() => {
                if e.name().as_ref() != b"clusters" || seen_root {
                    return Err(schema("root element must be a single <clusters>"));
                }
                seen_root = true;
                if opens {
                    stack.push("clusters".into());
                }
            }
            Event::Start(e) => {
                let name = String::from_utf8_lossy(e.name().as_ref()).into_owned();
                match (stack.last().map(String::as_str), name.as_str()) {
                    (Some("clusters"), "cluster") => {
                        if pending.is_some() {
                            return Err(schema("cluster without frequency"));
                        }
                        current = Some(BTreeSet::new());
                    }
                    (Some("clusters"), "frequency") | (Some("cluster"), "lemma") => {}
                    (parent, _) => {
                        return Err(schema(format!(
                            "unexpected <{name}> inside <{}>",
                            parent.unwrap_or("")
                        )))
                    }
                }
                buf.clear();
                stack.push(name);
            }
            Event::Empty(e) => {
                let name = String::from_utf8_lossy(e.name().as_ref()).into_owned();
                return Err(match name.as_str() {
                    "cluster" => schema("empty cluster"),
                    _ => schema(format!("empty <{name}>")),
                });
            }
            Event::Text(t) if in_text(&stack) => {
                let s = t.decode().map_err(|e| schema(e.to_string()))?;
                buf.push_str(&s);
            }
            Event::Text(t) => {
                if !t.iter().all(u8::is_ascii_whitespace) {
                    return Err(schema("stray text"));
                }
            }
            Event::GeneralRef(r) if in_text(&stack) => {
                if let Some(c) = r.resolve_char_ref().map_err(|e| schema(e.to_string()))? {
                    buf.push(c);
                } else {
                    let name = r.decode().map_err(|e| schema(e.to_string()))?;
                    let v = resolve_predefined_entity(&name)
                        .ok_or_else(|| schema(format!("unknown entity &{name};")))?;
                    buf.push_str(v);
                }
            }
            Event::GeneralRef(_) => return Err(schema("stray text")),
            Event::End(_) => {
                let name = stack.pop().unwrap_or_default();
                match name.as_str() {
                    "lemma" => {
                        if buf.is_empty() {
                            return Err(schema("empty lemma name"));
                        }
                        if let Some(c) = current.as_mut() {
                            c.insert(std::mem::take(&mut buf));
                        }
                    }
                    "cluster" => {
                        let c = current.take().unwrap_or_default();
                        if c.is_empty() {
                            return Err(schema("empty cluster"));
                        }
                        pending = Some(c);
                    }
                    "frequency" => {
                        let lemmas = pending.take().ok_or_else(|| schema("frequency without cluster"))?;
                        let frequency_pct: f64 = buf
                            .trim()
                            .parse()
                            .map_err(|_| schema(format!("bad frequency {buf:?}")))?;
                        buf.clear();
                        entries.push(ClusterEntry {
                            lemmas,
                            frequency_pct,
                        });
                    }
                    _ => {}
                }
            }
            Event::Eof => break,
            _ => {}
        }
    }
    if !seen_root {
        return Err(schema("no <clusters> element"));
    }
    if !stack.is_empty() {
        return Err(schema("unclosed element"));
    }
    if pending.is_some() {
        return Err(schema("cluster without frequency"));
    }
    Ok(ClusterReport {
        entries,
        config: None,
    })
}

pub fn read_cluster_xml(path: &Path) -> Result<ClusterReport, ExportError> {
    parse_cluster_xml(&read_file(path)?)
}
