//! The matrix file format:
//!
//! ```text
//! field gf <p>        (or: field q)
//! size <k> <n>
//! <k rows of n entries; integers, or a/b>
//! labels <n names>    (optional)
//! ```
//!
//! Blank lines and lines starting with `#` are skipped.

use starconfig::{Error, ExactMatrix, FieldSpec, LinearCode, Result};

#[derive(Debug, Clone)]
pub struct InputDocument {
    pub field: FieldSpec,
    pub k: usize,
    pub n: usize,
    pub code: LinearCode,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_count(line: usize, token: Option<&str>, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| parse_err(line, format!("{what} must be a non-negative integer, found {token:?}")))
}

pub fn parse_input(text: &str) -> Result<InputDocument> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (no, line) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let words: Vec<&str> = line.split_whitespace().collect();
    let field = match words.as_slice() {
        ["field", "q"] => FieldSpec::Rationals,
        ["field", "gf", p] => {
            let p: u64 = p.parse().map_err(|_| parse_err(no, format!("bad modulus {p:?}")))?;
            FieldSpec::prime(p)?
        }
        _ => return Err(parse_err(no, "expected `field gf <p>` or `field q`")),
    };

    let (no, line) = lines.next().ok_or_else(|| parse_err(no + 1, "expected `size <k> <n>`"))?;
    let mut words = line.split_whitespace();
    if words.next() != Some("size") {
        return Err(parse_err(no, "expected `size <k> <n>`"));
    }
    let k = parse_count(no, words.next(), "k")?;
    let n = parse_count(no, words.next(), "n")?;
    if words.next().is_some() {
        return Err(parse_err(no, "trailing tokens after `size <k> <n>`"));
    }
    if k == 0 || n == 0 {
        return Err(parse_err(no, "k and n must be positive"));
    }

    let mut rows = Vec::with_capacity(k);
    let mut last = no;
    for r in 0..k {
        let (no, line) = lines
            .next()
            .ok_or_else(|| parse_err(last + 1, format!("expected {k} matrix rows, found {r}")))?;
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != n {
            return Err(parse_err(no, format!("row {} has {} entries, expected {n}", r + 1, entries.len())));
        }
        let row = entries
            .iter()
            .map(|t| field.parse_scalar(t).map_err(|e| parse_err(no, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
        last = no;
    }

    let mut labels = None;
    if let Some((no, line)) = lines.next() {
        let mut words = line.split_whitespace();
        if words.next() != Some("labels") {
            return Err(parse_err(no, "expected `labels <names>` or end of input"));
        }
        let names: Vec<String> = words.map(str::to_string).collect();
        if names.len() != n {
            return Err(parse_err(no, format!("{} labels for {n} columns", names.len())));
        }
        labels = Some(names);
        if let Some((no, _)) = lines.next() {
            return Err(parse_err(no, "unexpected content after labels"));
        }
    }

    let code = LinearCode::with_labels(ExactMatrix::from_rows(field, &rows)?, labels)?;
    Ok(InputDocument { field, k, n, code })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example0_file() {
        let doc = parse_input("field gf 2\nsize 2 3\n1 0 1\n0 1 1\n").unwrap();
        assert_eq!((doc.k, doc.n), (2, 3));
        assert_eq!(doc.field, FieldSpec::prime(2).unwrap());
        assert_eq!(doc.code.labels()[2], "x1+x2");
    }

    #[test]
    fn rationals_and_labels() {
        let doc = parse_input("# comment\nfield q\nsize 1 2\n1/2 -3\n\nlabels a b\n").unwrap();
        assert_eq!(doc.code.labels(), ["a", "b"]);
        assert_eq!(doc.code.matrix().get(0, 0).to_string(), "1/2");
    }

    #[test]
    fn diagnostics() {
        let cases = [
            ("", "empty"),
            ("field gf 4\nsize 1 1\n1\n", "prime"),
            ("field r\n", "field gf"),
            ("field q\nsize 2\n", "missing n"),
            ("field q\nsize 1 2\n1\n", "row 1 has 1 entries"),
            ("field q\nsize 2 2\n1 1\n", "expected 2 matrix rows"),
            ("field q\nsize 1 2\n1 x\n", "x"),
            ("field q\nsize 1 2\n1 0\n", "column 2"),
            ("field gf 3\nsize 2 2\n1 1\n2 2\n", "rank(G) must equal k"),
            ("field q\nsize 1 1\n1\nlabels a b\n", "2 labels"),
            ("field q\nsize 1 1\n1\nextra\n", "labels"),
        ];
        for (text, needle) in cases {
            let err = parse_input(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text:?}: {err}");
        }
    }
}
