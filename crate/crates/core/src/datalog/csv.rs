//! CSV fact files: one relation per file, one tuple per row, no header.

use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::trie::Tuple;
use crate::value::{SymbolTable, Value};

/// Reads tuples from CSV. Fields that parse as integers become `Int`, the
/// rest symbols. Every row must have the same number of fields.
pub fn read_facts<R: Read>(
    reader: R,
    relation: &str,
    symbols: &mut SymbolTable,
    origin: &Path,
) -> Result<Vec<Tuple>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut tuples: Vec<Tuple> = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|source| Error::Csv {
            path: origin.to_path_buf(),
            source,
        })?;
        let tuple: Tuple = record
            .iter()
            .map(|field| Value::parse_lenient(field, symbols))
            .collect();
        if let Some(first) = tuples.first() {
            if first.len() != tuple.len() {
                return Err(Error::TupleArity {
                    relation: relation.to_string(),
                    expected: first.len(),
                    found: tuple.len(),
                });
            }
        }
        tuples.push(tuple);
    }
    Ok(tuples)
}

pub fn load_facts(path: &Path, relation: &str, symbols: &mut SymbolTable) -> Result<Vec<Tuple>> {
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_facts(file, relation, symbols, path)
}
