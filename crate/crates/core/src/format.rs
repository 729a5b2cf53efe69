//! The JSON-lines design file format.
//!
//! ```text
//! {"format":"msts-design","version":1,"alphabet":[2,2,2,4,4],"meta":{...}}
//! {"cw":[[0,1],[3,1],[4,1]]}
//! ...
//! ```
//!
//! UTF-8, LF line endings, one header line followed by one line per codeword
//! with positions strictly ascending. Codewords are written in sorted order so
//! output is byte-deterministic.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::model::{Design, MixedAlphabet, SparseWord};

pub const FORMAT_NAME: &str = "msts-design";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("line {line}: malformed JSON: {message}")]
    Json { line: usize, message: String },

    #[error("line {line}: {message}")]
    Invariant { line: usize, message: String },

    #[error("line {line}: duplicate codeword")]
    Duplicate { line: usize },

    #[error("missing header line")]
    MissingHeader,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    format: String,
    version: u32,
    alphabet: Vec<u32>,
    #[serde(default)]
    meta: Map<String, Value>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodewordLine {
    cw: Vec<[u32; 2]>,
}

pub fn write_design<W: Write>(design: &Design, mut out: W) -> std::io::Result<()> {
    let header = Header {
        format: FORMAT_NAME.to_owned(),
        version: FORMAT_VERSION,
        alphabet: design.alphabet().sizes().to_vec(),
        meta: design.metadata().clone(),
    };
    serde_json::to_writer(&mut out, &header)?;
    out.write_all(b"\n")?;
    for cw in design.iter() {
        let line = CodewordLine {
            cw: cw.entries().iter().map(|&(p, v)| [p, v]).collect(),
        };
        serde_json::to_writer(&mut out, &line)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn design_to_string(design: &Design) -> String {
    let mut buf = Vec::new();
    write_design(design, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn read_design<R: BufRead>(input: R) -> Result<Design, FormatError> {
    let mut lines = input.lines().enumerate().peekable();
    let (_, header_line) = lines.next().ok_or(FormatError::MissingHeader)?;
    let header_line = header_line?;
    let header: Header = serde_json::from_str(&header_line).map_err(|e| FormatError::Json {
        line: 1,
        message: e.to_string(),
    })?;
    if header.format != FORMAT_NAME {
        return Err(FormatError::Invariant {
            line: 1,
            message: format!("unknown format {:?}", header.format),
        });
    }
    if header.version != FORMAT_VERSION {
        return Err(FormatError::Invariant {
            line: 1,
            message: format!("unsupported version {}", header.version),
        });
    }
    let alphabet = MixedAlphabet::new(header.alphabet).map_err(|e| FormatError::Invariant {
        line: 1,
        message: e.to_string(),
    })?;

    let mut design = Design::new(alphabet).with_metadata(header.meta);
    let mut seen = HashSet::new();
    while let Some((idx, line)) = lines.next() {
        let line = line?;
        let lineno = idx + 1;
        if line.trim().is_empty() {
            if lines.peek().is_none() {
                break;
            }
            return Err(FormatError::Json {
                line: lineno,
                message: "blank line".into(),
            });
        }
        let parsed: CodewordLine = serde_json::from_str(&line).map_err(|e| FormatError::Json {
            line: lineno,
            message: e.to_string(),
        })?;
        if !parsed.cw.windows(2).all(|w| w[0][0] < w[1][0]) {
            return Err(FormatError::Invariant {
                line: lineno,
                message: "positions are not strictly ascending".into(),
            });
        }
        let word = SparseWord::new(parsed.cw.iter().map(|e| (e[0], e[1])).collect()).map_err(
            |e| FormatError::Invariant {
                line: lineno,
                message: e.to_string(),
            },
        )?;
        if !seen.insert(word.clone()) {
            return Err(FormatError::Duplicate { line: lineno });
        }
        design.insert(word).map_err(|e| FormatError::Invariant {
            line: lineno,
            message: e.to_string(),
        })?;
    }
    Ok(design)
}

pub fn design_from_str(s: &str) -> Result<Design, FormatError> {
    read_design(s.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Design {
        let mut d = Design::new(MixedAlphabet::mixed(1, 1, 1).unwrap());
        d.insert(SparseWord::new(vec![(0, 1), (1, 1), (2, 1)]).unwrap())
            .unwrap();
        let mut meta = Map::new();
        meta.insert("construction".into(), Value::from("shortest"));
        meta.insert("k".into(), Value::from(1));
        meta.insert("l".into(), Value::from(1));
        d.with_metadata(meta)
    }

    #[test]
    fn writes_exact_bytes() {
        assert_eq!(
            design_to_string(&sample()),
            "{\"format\":\"msts-design\",\"version\":1,\"alphabet\":[2,2,2],\
             \"meta\":{\"construction\":\"shortest\",\"k\":1,\"l\":1}}\n\
             {\"cw\":[[0,1],[1,1],[2,1]]}\n"
        );
    }

    #[test]
    fn roundtrip_keeps_metadata() {
        let d = sample();
        let back = design_from_str(&design_to_string(&d)).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.metadata(), d.metadata());
    }

    #[test]
    fn duplicate_line_is_rejected() {
        let mut text = design_to_string(&sample());
        text.push_str("{\"cw\":[[0,1],[1,1],[2,1]]}\n");
        assert!(matches!(
            design_from_str(&text),
            Err(FormatError::Duplicate { line: 3 })
        ));
    }

    #[test]
    fn malformed_json_and_invariants_are_distinguished() {
        let header = "{\"format\":\"msts-design\",\"version\":1,\"alphabet\":[2,2,2],\"meta\":{}}\n";
        let bad_json = format!("{header}{{\"cw\":[[0,1],\n");
        assert!(matches!(
            design_from_str(&bad_json),
            Err(FormatError::Json { line: 2, .. })
        ));
        let unsorted = format!("{header}{{\"cw\":[[1,1],[0,1],[2,1]]}}\n");
        assert!(matches!(
            design_from_str(&unsorted),
            Err(FormatError::Invariant { line: 2, .. })
        ));
        let out_of_range = format!("{header}{{\"cw\":[[0,1],[1,1],[2,2]]}}\n");
        assert!(matches!(
            design_from_str(&out_of_range),
            Err(FormatError::Invariant { line: 2, .. })
        ));
        let weight2 = format!("{header}{{\"cw\":[[0,1],[1,1]]}}\n");
        assert!(matches!(
            design_from_str(&weight2),
            Err(FormatError::Invariant { line: 2, .. })
        ));
        assert!(matches!(design_from_str(""), Err(FormatError::MissingHeader)));
        let wrong_format = header.replace("msts-design", "other");
        assert!(matches!(
            design_from_str(&wrong_format),
            Err(FormatError::Invariant { line: 1, .. })
        ));
    }
}
