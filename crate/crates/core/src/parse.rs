//! Text parsers for user input: matrix literals, mutation words, variable
//! references, integer vectors and polynomial JSON.
//!
//! Every parser returns [`Error::Parse`] with a byte offset on bad input and
//! never panics.

use crate::compat::VariableRef;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, MultiPoly};
use crate::matrix::IntMat;
use crate::pattern::MutationWord;

/// Parses a matrix given either as a JSON array of rows or as text with rows
/// separated by `;` or newlines and entries by whitespace or commas, e.g.
/// `0 1; -1 0`.
pub fn parse_matrix(s: &str) -> Result<IntMat> {
    let trimmed = s.trim_start();
    let offset = s.len() - trimmed.len();
    if trimmed.starts_with('[') {
        let rows: Vec<Vec<i64>> = serde_json::from_str(trimmed)
            .map_err(|e| Error::parse(offset + json_offset(trimmed, &e), e.to_string()))?;
        return IntMat::from_rows(&rows);
    }
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut row: Vec<i64> = Vec::new();
    let mut row_start = true;
    for (pos, tok) in tokens(s, |c| c.is_whitespace() && c != '\n' || c == ',') {
        match tok {
            ";" | "\n" => {
                if !row.is_empty() {
                    rows.push(std::mem::take(&mut row));
                } else if tok == ";" && !row_start {
                    return Err(Error::parse(pos, "empty row"));
                }
                row_start = tok == "\n";
            }
            t => {
                row.push(parse_int(t, pos)?);
                row_start = false;
            }
        }
    }
    if !row.is_empty() {
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse(0, "empty matrix"));
    }
    if let Some(i) = rows.iter().position(|r| r.len() != rows[0].len()) {
        return Err(Error::parse(
            0,
            format!("row {} has {} entries, row 1 has {}", i + 1, rows[i].len(), rows[0].len()),
        ));
    }
    IntMat::from_rows(&rows)
}

/// Parses `2,1,2` (1-based, applied left to right). Blank input is the empty
/// word.
pub fn parse_word(s: &str) -> Result<MutationWord> {
    let mut dirs = Vec::new();
    for (pos, tok) in tokens(s, |c| c.is_whitespace() || c == ',') {
        if tok == ";" || tok == "\n" {
            return Err(Error::parse(pos, "unexpected separator in word"));
        }
        let k: usize = tok
            .parse()
            .map_err(|_| Error::parse(pos, format!("`{tok}` is not a direction")))?;
        if k == 0 {
            return Err(Error::parse(pos, "directions start at 1"));
        }
        dirs.push(k);
    }
    MutationWord::from_one_based(&dirs)
}

/// Parses `word:index`, e.g. `2,1:1`, or `:3` for an initial variable.
pub fn parse_variable_ref(s: &str) -> Result<VariableRef> {
    let colon = s
        .rfind(':')
        .ok_or_else(|| Error::parse(s.len(), "expected `word:index`"))?;
    let word = parse_word(&s[..colon])?;
    let idx_str = &s[colon + 1..];
    let lead = idx_str.len() - idx_str.trim_start().len();
    let index: usize = idx_str
        .trim()
        .parse()
        .map_err(|_| Error::parse(colon + 1 + lead, format!("`{}` is not an index", idx_str.trim())))?;
    if index == 0 {
        return Err(Error::parse(colon + 1 + lead, "indices start at 1"));
    }
    Ok(VariableRef::new(word, index - 1))
}

/// Parses a comma- or space-separated integer vector such as `1,-1,0`.
pub fn parse_int_vector(s: &str) -> Result<Vec<i64>> {
    let inner = s.trim();
    let (inner, base) = match inner.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
        Some(x) => (x, s.find('[').map_or(0, |p| p + 1)),
        None => (s, 0),
    };
    let mut out = Vec::new();
    for (pos, tok) in tokens(inner, |c| c.is_whitespace() || c == ',') {
        if tok == ";" || tok == "\n" {
            return Err(Error::parse(base + pos, "unexpected separator in vector"));
        }
        out.push(parse_int(tok, base + pos)?);
    }
    if out.is_empty() {
        return Err(Error::parse(0, "empty vector"));
    }
    Ok(out)
}

/// Parses the JSON polynomial form: a list of
/// `{"exponents": [..], "coefficient": "<decimal>"}`.
pub fn parse_laurent_json(s: &str) -> Result<LaurentPoly> {
    serde_json::from_str(s).map_err(|e| Error::parse(json_offset(s, &e), e.to_string()))
}

/// Like [`parse_laurent_json`] but rejects negative exponents.
pub fn parse_poly_json(s: &str) -> Result<MultiPoly> {
    serde_json::from_str(s).map_err(|e| Error::parse(json_offset(s, &e), e.to_string()))
}

fn parse_int(tok: &str, pos: usize) -> Result<i64> {
    let t = tok.strip_prefix('+').unwrap_or(tok);
    // accept the unicode minus sign as well
    let owned;
    let t = if let Some(rest) = t.strip_prefix('\u{2212}') {
        owned = format!("-{rest}");
        owned.as_str()
    } else {
        t
    };
    t.parse()
        .map_err(|_| Error::parse(pos, format!("`{tok}` is not a 64-bit integer")))
}

/// Splits into tokens with byte offsets. `;` and `\n` come out as their own
/// tokens; characters accepted by `skip` separate tokens.
fn tokens(s: &str, skip: impl Fn(char) -> bool) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in s.char_indices() {
        let special = c == ';' || c == '\n';
        if special || skip(c) || c == '\r' {
            if let Some(st) = start.take() {
                out.push((st, &s[st..i]));
            }
            if special {
                out.push((i, &s[i..i + 1]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push((st, &s[st..]));
    }
    out
}

/// Converts serde_json's line/column into a byte offset.
fn json_offset(s: &str, e: &serde_json::Error) -> usize {
    let (line, col) = (e.line(), e.column());
    if line == 0 {
        return 0;
    }
    let line_start: usize = s.split_inclusive('\n').take(line - 1).map(str::len).sum();
    (line_start + col.saturating_sub(1)).min(s.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_forms() {
        let expected = IntMat::from_rows(&[[0, 1], [-1, 0]]).unwrap();
        assert_eq!(parse_matrix("0 1; -1 0").unwrap(), expected);
        assert_eq!(parse_matrix("[[0,1],[-1,0]]").unwrap(), expected);
        assert_eq!(parse_matrix("0, 1\n-1, 0\n").unwrap(), expected);
        assert_eq!(parse_matrix("  0 1 ;\n -1 0 ;").unwrap(), expected);
    }

    #[test]
    fn matrix_errors_have_positions() {
        assert_eq!(
            parse_matrix("0 1; -1 x"),
            Err(Error::parse(8, "`x` is not a 64-bit integer"))
        );
        assert!(matches!(parse_matrix("0 1; 1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix("[[0,1],[1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix("0 1;; 1 0"), Err(Error::Parse { pos: 4, .. })));
        assert!(parse_matrix("[[0,1],[1]]").is_err());
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("2,1,2").unwrap().letters(), &[1, 0, 1]);
        assert!(parse_word("").unwrap().is_empty());
        assert!(parse_word("  ").unwrap().is_empty());
        assert_eq!(parse_word("1,0"), Err(Error::parse(2, "directions start at 1")));
        assert!(parse_word("1,a").is_err());
    }

    #[test]
    fn refs() {
        let r = parse_variable_ref("3,2,1:1").unwrap();
        assert_eq!(r.word.letters(), &[2, 1, 0]);
        assert_eq!(r.index, 0);
        assert!(parse_variable_ref("3,2,1").is_err());
        assert!(parse_variable_ref(":0").is_err());
        assert!(parse_variable_ref("1:x").is_err());
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_int_vector("1,-1,0").unwrap(), vec![1, -1, 0]);
        assert_eq!(parse_int_vector("[1, 2]").unwrap(), vec![1, 2]);
        assert_eq!(parse_int_vector("-1 0").unwrap(), vec![-1, 0]);
        assert!(parse_int_vector("").is_err());
    }

    #[test]
    fn polynomial_json() {
        let p = parse_laurent_json(r#"[{"exponents":[1,-1],"coefficient":"2"}]"#).unwrap();
        assert_eq!(p.to_string(), "2*x1*x2^-1");
        assert!(parse_poly_json(r#"[{"exponents":[1,-1],"coefficient":"2"}]"#).is_err());
        assert!(parse_laurent_json(r#"[{"exponents":[1],"coefficient":"z"}]"#).is_err());
        assert!(parse_laurent_json(r#"[{"exponents":[1],"coefficient":"1"},{"exponents":[1,2],"coefficient":"1"}]"#).is_err());
    }
}
