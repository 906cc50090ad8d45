//! Text format for presentation matrices.
//!
//! ```text
//! # H1 = Z + Z/4
//! 1 2
//! 0 4
//! lambda: 0 2
//! mu: 1 0
//! ```
//!
//! The first non-comment line holds `rows cols`. The next `rows · cols`
//! whitespace-separated integers are the entries in row-major order; they may
//! be spread over any number of lines. Rows are relations and columns are
//! generators, so the file presents `Z^cols / (row space)`. Optional trailing
//! `lambda:` and `mu:` lines give the peripheral classes, one coordinate per
//! generator. `#` starts a comment.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::homology::{IntegerMatrix, PeripheralData};

/// Largest accepted `rows · cols`.
pub const MAX_ENTRIES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFile {
    pub matrix: IntegerMatrix,
    pub lambda: Option<Vec<BigInt>>,
    pub mu: Option<Vec<BigInt>>,
}

impl MatrixFile {
    /// Both peripheral classes, when both were given.
    pub fn peripheral(&self) -> Option<Result<PeripheralData>> {
        match (&self.lambda, &self.mu) {
            (Some(l), Some(m)) => Some(PeripheralData::new(l.clone(), m.clone())),
            _ => None,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.matrix.rows(), self.matrix.cols());
        out.push_str(&self.matrix.to_string());
        for (key, v) in [("lambda", &self.lambda), ("mu", &self.mu)] {
            if let Some(v) = v {
                let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("{key}: {}\n", coords.join(" ")));
            }
        }
        out
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_int(token: &str, line: usize) -> Result<BigInt> {
    token
        .parse::<BigInt>()
        .map_err(|_| parse_err(line, format!("{token:?} is not an integer")))
}

fn parse_dim(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    token
        .parse::<usize>()
        .map_err(|_| parse_err(line, format!("{what} {token:?} is not a nonnegative integer")))
}

pub fn parse_matrix_file(text: &str) -> Result<MatrixFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let mut fields = header.split_whitespace();
    let rows = parse_dim(fields.next(), header_line, "row count")?;
    let cols = parse_dim(fields.next(), header_line, "column count")?;
    if fields.next().is_some() {
        return Err(parse_err(header_line, "header must be exactly \"rows cols\""));
    }
    let expected = rows
        .checked_mul(cols)
        .filter(|&n| n <= MAX_ENTRIES)
        .ok_or_else(|| parse_err(header_line, format!("{rows}x{cols} exceeds {MAX_ENTRIES} entries")))?;

    let mut entries = Vec::new();
    let mut lambda = None;
    let mut mu = None;
    let mut last_line = header_line;
    for (n, line) in lines {
        last_line = n;
        let labelled = [("lambda:", &mut lambda), ("mu:", &mut mu)]
            .into_iter()
            .find(|(key, _)| line.starts_with(key));
        match labelled {
            Some((key, slot)) => {
                if entries.len() < expected {
                    return Err(parse_err(n, format!("{key} before all {expected} entries were read")));
                }
                if slot.is_some() {
                    return Err(parse_err(n, format!("duplicate {key} line")));
                }
                let v = line[key.len()..]
                    .split_whitespace()
                    .map(|t| parse_int(t, n))
                    .collect::<Result<Vec<_>>>()?;
                if v.len() != cols {
                    return Err(parse_err(n, format!("{key} has {} coordinates, expected {cols}", v.len())));
                }
                *slot = Some(v);
            }
            None => {
                if lambda.is_some() || mu.is_some() {
                    return Err(parse_err(n, "matrix entries after peripheral data"));
                }
                for token in line.split_whitespace() {
                    if entries.len() == expected {
                        return Err(parse_err(n, format!("more than {expected} entries")));
                    }
                    entries.push(parse_int(token, n)?);
                }
            }
        }
    }
    if entries.len() != expected {
        return Err(parse_err(
            last_line,
            format!("expected {expected} entries, found {}", entries.len()),
        ));
    }
    Ok(MatrixFile {
        matrix: IntegerMatrix::new(rows, cols, entries)?,
        lambda,
        mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let f = parse_matrix_file("# H1 = Z + Z/4\n1 2\n0 4\nlambda: 0 2\nmu: 1 0\n").unwrap();
        assert_eq!(f.matrix.rows(), 1);
        assert_eq!(f.matrix.get(0, 1), &BigInt::from(4));
        assert_eq!(f.lambda.as_deref(), Some(&[BigInt::from(0), BigInt::from(2)][..]));
        assert!(f.peripheral().unwrap().is_ok());
    }

    #[test]
    fn entries_may_wrap_lines() {
        let f = parse_matrix_file("2 3\n1 2\n3 4 5\n  6\n").unwrap();
        assert_eq!(f.matrix.row(1), &[4, 5, 6].map(BigInt::from)[..]);
        assert!(f.peripheral().is_none());
    }

    #[test]
    fn zero_rows() {
        let f = parse_matrix_file("0 2\nlambda: 1 0\nmu: 0 1\n").unwrap();
        assert_eq!(f.matrix.rows(), 0);
    }

    #[test]
    fn big_entries() {
        let f = parse_matrix_file("1 1\n-123456789012345678901234567890\n").unwrap();
        assert_eq!(f.matrix.get(0, 0).to_string(), "-123456789012345678901234567890");
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "",
            "2\n1 2",
            "2 2 2\n1 2 3 4",
            "2 2\n1 2 3",
            "2 2\n1 2 3 4 5",
            "1 1\nx",
            "1 2\n1 2\nlambda: 1\n",
            "1 2\n1 2\nmu: 1 0\nmu: 0 1\n",
            "1 2\nlambda: 1 0\n1 2\n",
            "1 2\n1 2\nlambda: 1 0\n3\n",
            "99999999999 99999999999\n",
            "-1 2\n",
        ] {
            assert!(parse_matrix_file(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn error_reports_line() {
        match parse_matrix_file("2 2\n1 2\n3 q\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn text_roundtrip() {
        let f = parse_matrix_file("2 2\n1 -2\n3 4\nlambda: 5 6\nmu: 7 8\n").unwrap();
        assert_eq!(parse_matrix_file(&f.to_text()).unwrap(), f);
    }
}
