//! Plain-text integer matrices: one row per line, entries separated by
//! whitespace. Blank lines and lines starting with `#` are ignored.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct MatrixTextError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub fn parse_integer_matrix(text: &str) -> Result<Vec<Vec<i64>>, MatrixTextError> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        let mut offset = 0;
        for token in line.split_whitespace() {
            let column = line[offset..].find(token).unwrap() + offset;
            offset = column + token.len();
            let value = token.parse::<i64>().map_err(|_| MatrixTextError {
                line: lineno + 1,
                column: column + 1,
                message: format!("'{token}' is not an integer"),
            })?;
            row.push(value);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(MatrixTextError {
            line: 1,
            column: 1,
            message: "no matrix rows".into(),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blank_lines() {
        let text = "# toric code\n\n0 2\n  2   0\n";
        assert_eq!(parse_integer_matrix(text).unwrap(), vec![vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn reports_position() {
        let err = parse_integer_matrix("2 1\n1 x2\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert!(parse_integer_matrix("# nothing\n").is_err());
    }
}
