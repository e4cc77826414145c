//! File formats: CSV and ARFF vector files, library export directories and
//! cluster reports as XML.

mod arff;
mod csv;
mod library;
mod xml;

pub use arff::{parse_arff, read_arff, render_arff, write_arff, ArffData};
pub use csv::{parse_csv, read_csv, render_csv, write_csv, CsvData};
pub use library::{
    export_library, import_libraries, import_library, Corpus, Library, LibraryExport,
    LemmaRecord, GOAL_FILE, LEMMAS_FILE, TACTIC_FILE, TREE_FILE,
};
pub use xml::{parse_cluster_xml, read_cluster_xml, render_cluster_xml, write_cluster_xml};

use std::path::Path;

use crate::error::ExportError;

fn write_file(path: &Path, text: &str) -> Result<(), ExportError> {
    std::fs::write(path, text).map_err(|e| ExportError::io(path, e))
}

fn read_file(path: &Path) -> Result<String, ExportError> {
    std::fs::read_to_string(path).map_err(|e| ExportError::io(path, e))
}

/// Shortest decimal that parses back to the same value.
fn number(x: f64) -> String {
    format!("{x}")
}
