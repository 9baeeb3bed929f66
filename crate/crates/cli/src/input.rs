use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;

use regtough::graph6::{parse_graph6, parse_graph6_lines, Graph6Error};
use regtough::Graph;

use crate::Failure;

/// One graph read from the input, with its 1-based line number (or the
/// position of its `--g6` flag).
pub struct Record {
    pub line: usize,
    pub graph: Graph,
}

fn parse_failure(line: usize, e: Graph6Error) -> Failure {
    let msg = match e {
        Graph6Error::InvalidByte { offset, byte } => {
            format!("line {line}: invalid graph6 byte at offset {offset} (0x{byte:02x})")
        }
        other => format!("line {line}: {other}"),
    };
    Failure::parse(msg)
}

/// Reads graphs from inline strings if given, else from `path`, else stdin.
/// Stops at the first malformed record.
pub fn read_graphs(path: Option<&PathBuf>, inline: &[String]) -> Result<Vec<Record>, Failure> {
    if !inline.is_empty() {
        return inline
            .iter()
            .enumerate()
            .map(|(i, s)| {
                parse_graph6(s.trim_end().as_bytes())
                    .map(|graph| Record { line: i + 1, graph })
                    .map_err(|e| parse_failure(i + 1, e))
            })
            .collect();
    }
    let text = match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read(p).map_err(|e| Failure::io(format!("cannot read {}: {e}", p.display())))?
        }
        _ => {
            let mut buf = Vec::new();
            io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| Failure::io(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    parse_graph6_lines(&text)
        .into_iter()
        .map(|(line, r)| r.map(|graph| Record { line, graph }).map_err(|e| parse_failure(line, e)))
        .collect()
}
