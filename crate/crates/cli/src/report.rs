//! Report records written to standard output.
//!
//! One record per invocation, delimited by `record` and `end` lines:
//!
//! ```text
//! record
//! command has-dto
//! input fixtures/ndt4.alg sha256:…
//! verdict yes
//! certificate -
//! elapsed_ms 3
//! end
//! ```
//!
//! Optional `result` lines carry computed values. Every field except
//! `elapsed_ms` is a function of the command line and the input bytes.

use std::fmt;

use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    /// A computation with no yes/no answer finished.
    Done,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Done => "done",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub verdict: Verdict,
    pub certificate: Option<String>,
    pub results: Vec<String>,
    pub elapsed_ms: u128,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Vec::new(),
            verdict: Verdict::Done,
            certificate: None,
            results: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::No => 1,
            Verdict::Yes | Verdict::Done => 0,
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "record")?;
        writeln!(f, "command {}", self.command)?;
        for (name, hash) in &self.inputs {
            writeln!(f, "input {name} {hash}")?;
        }
        writeln!(f, "verdict {}", self.verdict)?;
        match (&self.certificate, self.verdict) {
            (Some(c), _) => writeln!(f, "certificate {}", c.replace('\n', " "))?,
            (None, Verdict::No) => writeln!(f, "certificate (none available)")?,
            (None, _) => writeln!(f, "certificate -")?,
        }
        for r in &self.results {
            writeln!(f, "result {}", r.replace('\n', " "))?;
        }
        writeln!(f, "elapsed_ms {}", self.elapsed_ms)?;
        writeln!(f, "end")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_digest() {
        assert_eq!(
            digest(b"abc"),
            "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn no_verdict_always_has_a_certificate_line() {
        let mut r = Report::new("check");
        r.verdict = Verdict::No;
        let text = r.to_string();
        assert!(text
            .lines()
            .any(|l| l.starts_with("certificate ") && l != "certificate -"));
        assert_eq!(r.exit_code(), 1);
        assert!(text.starts_with("record\n") && text.ends_with("end\n"));
    }
}
