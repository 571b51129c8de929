//! Point-set text format.
//!
//! Line 1 is the header `q n`; every following line is one word as n
//! space-separated integers. Lines starting with `#` (and blank lines) are
//! ignored. Duplicate words are rejected with both line numbers.

use crate::error::ParseError;
use crate::hamming::{PointSet, Word, WordIndex};

pub fn parse_pointset(text: &str) -> Result<PointSet, ParseError> {
    let mut header: Option<(u32, u32)> = None;
    let mut words: Vec<Word> = Vec::new();
    let mut seen = WordIndex::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if header.is_none() {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(ParseError::Line {
                    line: line_no,
                    msg: format!("expected header `q n`, got `{line}`"),
                });
            }
            let q: u32 = fields[0].parse().map_err(|_| ParseError::Line {
                line: line_no,
                msg: format!("bad alphabet size `{}`", fields[0]),
            })?;
            let n: u32 = fields[1].parse().map_err(|_| ParseError::Line {
                line: line_no,
                msg: format!("bad dimension `{}`", fields[1]),
            })?;
            if q < 2 {
                return Err(ParseError::Line {
                    line: line_no,
                    msg: format!("alphabet size must be >= 2, got {q}"),
                });
            }
            if n < 1 {
                return Err(ParseError::Line {
                    line: line_no,
                    msg: "dimension must be >= 1".into(),
                });
            }
            header = Some((q, n));
            continue;
        }

        let (q, n) = header.unwrap();
        let mut symbols = Vec::with_capacity(n as usize);
        for field in line.split_whitespace() {
            let v: u32 = field.parse().map_err(|_| ParseError::Line {
                line: line_no,
                msg: format!("bad symbol `{field}`"),
            })?;
            if v >= q {
                return Err(ParseError::Line {
                    line: line_no,
                    msg: format!("symbol {v} >= q = {q}"),
                });
            }
            symbols.push(v as u16);
        }
        if symbols.len() != n as usize {
            return Err(ParseError::Line {
                line: line_no,
                msg: format!("expected {n} symbols, got {}", symbols.len()),
            });
        }
        let word = Word::new(q, &symbols).map_err(|e| ParseError::Line {
            line: line_no,
            msg: e.to_string(),
        })?;
        if let Some(&first) = seen.get(&word) {
            return Err(ParseError::Duplicate {
                first,
                second: line_no,
            });
        }
        seen.insert(word.clone(), line_no);
        words.push(word);
    }

    let (q, n) = header.ok_or(ParseError::Empty)?;
    PointSet::new(q, n, words).map_err(|e| ParseError::Line {
        line: 0,
        msg: e.to_string(),
    })
}

/// Canonical serialization: header, then rows in lexicographic order.
pub fn serialize_pointset(s: &PointSet) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", s.q(), s.n()));
    for word in s.words() {
        let row: Vec<String> = word.symbols().iter().map(|s| s.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
