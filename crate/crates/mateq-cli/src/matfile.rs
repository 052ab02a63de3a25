//! The matrix text format.
//!
//! Line 1 is `rows cols`; each following line holds one matrix row of
//! whitespace-separated entries. A complex literal is `<real>[±<imag>i]`
//! with no internal spaces: `3`, `-0.5i` (meaning `0 - 0.5i`), `1.5-2.0i`.
//! Serialization prints 17 significant digits, so parse(serialize(A))
//! reproduces A exactly at double precision.

use std::fmt;
use std::path::Path;

use mateq::matrix::ComplexMatrix;
use mateq::Complex64;

use crate::CliError;

/// Parse failure with the 1-based line it occurred on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn parse_f64(text: &str) -> Result<f64, String> {
    let value: f64 = text
        .parse()
        .map_err(|_| format!("unparseable number {text:?}"))?;
    if !value.is_finite() {
        return Err(format!("non-finite number {text:?}"));
    }
    Ok(value)
}

/// Parses one complex literal.
pub fn parse_complex(token: &str) -> Result<Complex64, String> {
    if token.is_empty() {
        return Err("empty entry".into());
    }
    if !token.ends_with('i') {
        return Ok(Complex64::new(parse_f64(token)?, 0.0));
    }
    let body = &token[..token.len() - 1];
    if body.is_empty() {
        return Err(format!("unparseable complex literal {token:?}"));
    }
    // The imaginary part starts at the last sign that is not a leading sign
    // and not an exponent sign.
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            split = Some(k);
            break;
        }
    }
    let (re, im) = match split {
        Some(k) => (parse_f64(&body[..k])?, parse_f64(&body[k..])?),
        None => (0.0, parse_f64(body)?),
    };
    Ok(Complex64::new(re, im))
}

/// Parses the whole text format. Errors carry the offending line number.
pub fn parse_matrix(text: &str) -> Result<ComplexMatrix, ParseError> {
    let mut lines = text.lines().enumerate();

    let (header_no, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| err(1, "missing header line"))?;
    let mut parts = header.split_whitespace();
    let rows: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(header_no + 1, "malformed header, expected \"rows cols\""))?;
    let cols: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(header_no + 1, "malformed header, expected \"rows cols\""))?;
    if parts.next().is_some() {
        return Err(err(header_no + 1, "malformed header, trailing tokens"));
    }
    if rows == 0 || cols == 0 {
        return Err(err(header_no + 1, "dimensions must be positive"));
    }

    let mut data = vec![Complex64::new(0.0, 0.0); rows * cols];
    let mut row = 0usize;
    for (no, line) in lines {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if row >= rows {
            return Err(err(no + 1, format!("expected {rows} rows, found extra content")));
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != cols {
            return Err(err(
                no + 1,
                format!("entry count mismatch: expected {cols} entries, got {}", tokens.len()),
            ));
        }
        for (j, token) in tokens.iter().enumerate() {
            let z = parse_complex(token).map_err(|m| err(no + 1, m))?;
            data[row + j * rows] = z;
        }
        row += 1;
    }
    if row != rows {
        return Err(err(
            text.lines().count().max(1),
            format!("entry count mismatch: expected {rows} rows, got {row}"),
        ));
    }
    ComplexMatrix::new(rows, cols, data).map_err(|e| err(header_no + 1, e.to_string()))
}

fn fmt_f64(x: f64) -> String {
    // 17 significant digits: exact round trip at double precision.
    format!("{x:.16e}")
}

/// Serializes one entry in the complex-literal grammar.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        fmt_f64(z.re)
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{}{}{}i", fmt_f64(z.re), sign, fmt_f64(z.im.abs()))
    }
}

/// Serializes a matrix to the text format.
pub fn serialize_matrix(m: &ComplexMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| format_complex(m[(i, j)])).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Reads and parses a matrix file.
pub fn read_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_matrix(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// Serializes a matrix to a file.
pub fn write_matrix(path: &Path, m: &ComplexMatrix) -> Result<(), CliError> {
    std::fs::write(path, serialize_matrix(m)).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_identity() {
        let m = parse_matrix("2 2\n1 0\n0 1\n").unwrap();
        assert_eq!(m, ComplexMatrix::identity(2));
    }

    #[test]
    fn parses_complex_literal() {
        let m = parse_matrix("1 1\n1.5-2.0i\n").unwrap();
        assert_eq!(m[(0, 0)], Complex64::new(1.5, -2.0));
    }

    #[test]
    fn literal_grammar_cases() {
        assert_eq!(parse_complex("3").unwrap(), Complex64::new(3.0, 0.0));
        assert_eq!(parse_complex("-0.5i").unwrap(), Complex64::new(0.0, -0.5));
        assert_eq!(parse_complex("1.5+2.0i").unwrap(), Complex64::new(1.5, 2.0));
        assert_eq!(
            parse_complex("1e-3-2e-4i").unwrap(),
            Complex64::new(1e-3, -2e-4)
        );
        assert_eq!(parse_complex("2e5i").unwrap(), Complex64::new(0.0, 2e5));
        assert!(parse_complex("i").is_err());
        assert!(parse_complex("nan").is_err());
        assert!(parse_complex("inf").is_err());
        assert!(parse_complex("1.5 i").is_err());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_matrix("2 2\n1 0\n0\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("entry count"));

        let e = parse_matrix("x y\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(e.message.contains("header"));

        let e = parse_matrix("1 1\nbogus\n").unwrap_err();
        assert_eq!(e.line, 2);

        let e = parse_matrix("2 2\n1 0\n0 1\n7 7\n").unwrap_err();
        assert_eq!(e.line, 4);
    }

    #[test]
    fn round_trip_is_exact() {
        let values = [
            Complex64::new(1.0 / 3.0, -2.0 / 7.0),
            Complex64::new(-1.5e-300, 0.0),
            Complex64::new(0.1 + 0.2, 1e300),
            Complex64::new(f64::MIN_POSITIVE, -f64::MIN_POSITIVE),
            Complex64::new(-0.0, 3.5),
        ];
        let m = ComplexMatrix::new(1, 5, values.to_vec()).unwrap();
        let back = parse_matrix(&serialize_matrix(&m)).unwrap();
        assert_eq!(back, m);
    }
}
