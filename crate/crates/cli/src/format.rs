//! Plain-text algebra and ternary table files.
//!
//! Algebra file:
//!
//! ```text
//! # comment
//! algebra NDT4
//! size 4
//! op mul 2
//! 0 2 1 3
//! ...
//! end
//! ```
//!
//! Entries are row-major with the last argument varying fastest. Table
//! file: `dtable <name> <n>` followed by `n³` entries in the same order.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use diffterm_core::{FiniteAlgebra, OperationTable, TernaryTable};

/// A parse failure with a 1-based line number.
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

fn error<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let mut items = Vec::new();
        let mut last_line = 1;
        for (i, raw) in text.lines().enumerate() {
            last_line = i + 1;
            let line = raw.split('#').next().unwrap_or("");
            items.extend(line.split_whitespace().map(|t| (i + 1, t)));
        }
        Tokens {
            items,
            pos: 0,
            last_line,
        }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }

    fn line(&self) -> usize {
        self.peek().map_or(self.last_line, |(l, _)| l)
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        match self.peek() {
            Some(t) => {
                self.pos += 1;
                Ok(t)
            }
            None => error(
                self.last_line,
                format!("unexpected end of input, expected {what}"),
            ),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<usize, ParseError> {
        let (line, tok) = self.next(&format!("`{word}`"))?;
        if tok != word {
            return error(line, format!("expected `{word}`, found `{tok}`"));
        }
        Ok(line)
    }

    fn number(&mut self, what: &str) -> Result<(usize, usize), ParseError> {
        let (line, tok) = self.next(what)?;
        match tok.parse() {
            Ok(v) => Ok((line, v)),
            Err(_) => error(line, format!("expected {what}, found `{tok}`")),
        }
    }

    fn finish(&self, after: &str) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some((line, tok)) => error(line, format!("unexpected `{tok}` after {after}")),
        }
    }
}

/// Reads `count` entries below `size`. Stops early at a keyword so a short
/// table reports its own count rather than a confusing token error.
fn entries(
    tokens: &mut Tokens<'_>,
    count: usize,
    size: usize,
    header_line: usize,
) -> Result<Vec<usize>, ParseError> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        match tokens.peek() {
            None | Some((_, "op" | "end")) => {
                return error(
                    header_line,
                    format!("expected {count} entries, found {}", out.len()),
                );
            }
            Some(_) => {
                let (line, v) = tokens.number("an entry")?;
                if v >= size {
                    return error(line, format!("entry {v} out of range for size {size}"));
                }
                out.push(v);
            }
        }
    }
    if let Some((line, tok)) = tokens.peek() {
        if tok.parse::<usize>().is_ok() {
            return error(line, format!("expected {count} entries, found more"));
        }
    }
    Ok(out)
}

pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra, ParseError> {
    let mut tokens = Tokens::new(text);
    tokens.keyword("algebra")?;
    let (_, name) = tokens.next("an algebra name")?;
    tokens.keyword("size")?;
    let (size_line, size) = tokens.number("the size")?;
    if size == 0 {
        return error(size_line, "size must be at least 1");
    }
    let mut ops = Vec::new();
    let mut names = BTreeSet::new();
    loop {
        let (line, tok) = tokens.next("`op` or `end`")?;
        match tok {
            "end" => break,
            "op" => {
                let (_, op_name) = tokens.next("an operation name")?;
                if !names.insert(op_name) {
                    return error(line, format!("duplicate operation `{op_name}`"));
                }
                let (_, arity) = tokens.number("an arity")?;
                let Some(count) = u32::try_from(arity).ok().and_then(|k| size.checked_pow(k))
                else {
                    return error(line, "table too large");
                };
                let table = entries(&mut tokens, count, size, line)?;
                ops.push(OperationTable::new(op_name, arity, table));
            }
            other => return error(line, format!("expected `op` or `end`, found `{other}`")),
        }
    }
    tokens.finish("`end`")?;
    FiniteAlgebra::new(name, size, ops).map_err(|e| ParseError {
        line: tokens.line(),
        message: e.to_string(),
    })
}

pub fn print_algebra(alg: &FiniteAlgebra) -> String {
    let n = alg.size();
    let mut out = String::new();
    let _ = writeln!(out, "algebra {}", alg.name());
    let _ = writeln!(out, "size {n}");
    for op in alg.operations() {
        let _ = writeln!(out, "op {} {}", op.name(), op.arity());
        write_rows(&mut out, op.entries(), n);
    }
    out.push_str("end\n");
    out
}

fn write_rows(out: &mut String, entries: &[usize], width: usize) {
    for row in entries.chunks(width.max(1)) {
        let line: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
}

pub fn parse_table(text: &str) -> Result<(String, TernaryTable), ParseError> {
    let mut tokens = Tokens::new(text);
    let header = tokens.keyword("dtable")?;
    let (_, name) = tokens.next("a table name")?;
    let (_, n) = tokens.number("the size")?;
    if n == 0 {
        return error(header, "size must be at least 1");
    }
    let Some(count) = n.checked_pow(3) else {
        return error(header, "table too large");
    };
    let table = entries(&mut tokens, count, n, header)?;
    tokens.finish("the table")?;
    let t = TernaryTable::from_entries(n, table).map_err(|e| ParseError {
        line: header,
        message: e.to_string(),
    })?;
    Ok((name.to_string(), t))
}

pub fn print_table(name: &str, t: &TernaryTable) -> String {
    let mut out = format!("dtable {name} {}\n", t.size());
    write_rows(&mut out, t.entries(), t.size());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_layout_are_free() {
        let a =
            parse_algebra("# x\nalgebra S size 2 # trailing\nop meet 2 0 0\n0 1\nend\n").unwrap();
        assert_eq!(a.size(), 2);
        assert_eq!(a.operations()[0].entries(), &[0, 0, 0, 1]);
    }

    #[test]
    fn short_table_names_the_count() {
        let e = parse_algebra("algebra S\nsize 2\nop f 2\n0 0 0\nend\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("expected 4 entries"), "{e}");
    }

    #[test]
    fn long_table_is_rejected() {
        let e = parse_algebra("algebra S\nsize 2\nop f 2\n0 0 0 1 1\nend\n").unwrap_err();
        assert!(e.message.contains("expected 4 entries"), "{e}");
    }

    #[test]
    fn out_of_range_entry_is_positioned() {
        let e = parse_algebra("algebra S\nsize 2\nop f 2\n0 0\n0 2\nend\n").unwrap_err();
        assert_eq!(e.line, 5);
        assert!(e.message.contains("out of range"));
    }

    #[test]
    fn duplicate_operation_names() {
        let e = parse_algebra("algebra S\nsize 1\nop f 1 0\nop f 1 0\nend\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("duplicate"));
    }

    #[test]
    fn missing_end_and_trailing_input() {
        assert!(parse_algebra("algebra S\nsize 1\nop f 1 0\n").is_err());
        assert!(parse_algebra("algebra S\nsize 1\nend\nop").is_err());
        assert!(parse_algebra("algebra S\nsize 0\nend\n").is_err());
    }

    #[test]
    fn table_round_trip() {
        let t = TernaryTable::projection(2, 2);
        let text = print_table("z", &t);
        assert_eq!(text, "dtable z 2\n0 1\n0 1\n0 1\n0 1\n");
        assert_eq!(parse_table(&text).unwrap(), ("z".to_string(), t));
    }

    #[test]
    fn table_errors() {
        assert!(parse_table("dtable z 2\n0 1 0 1\n")
            .unwrap_err()
            .message
            .contains("expected 8"));
        assert!(parse_table("dtable z 2\n0 1 0 1 0 1 0 2\n").is_err());
        assert!(parse_table("table z 2\n").is_err());
        let e = parse_table("dtable z 1\n0 x\n").unwrap_err();
        assert_eq!(e.to_string(), "line 2: unexpected `x` after the table");
    }
}
