//! Report lines and their TSV / text rendering. Output is a pure function of
//! the lines unless timing is requested.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
    Info,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
            Status::Info => "info",
        }
    }
}

impl From<glab_core::verify::Status> for Status {
    fn from(s: glab_core::verify::Status) -> Self {
        match s {
            glab_core::verify::Status::Pass => Status::Pass,
            glab_core::verify::Status::Fail => Status::Fail,
            glab_core::verify::Status::Skip => Status::Skip,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub id: String,
    /// The statement the line instantiates.
    pub statement: String,
    pub status: Status,
    pub witness: String,
    pub micros: Option<u128>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Tsv,
    Text,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub digest: String,
    pub lines: Vec<Line>,
}

/// First 16 hex digits of the SHA-256 of the instance file.
pub fn digest(source: &str) -> String {
    let full = hex::encode(Sha256::digest(source.as_bytes()));
    full[..16].to_string()
}

fn clean(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

impl Report {
    pub fn new(command: impl Into<String>, source: &str) -> Self {
        Report {
            command: command.into(),
            digest: digest(source),
            lines: Vec::new(),
        }
    }

    pub fn push(&mut self, id: &str, statement: &str, status: Status, witness: impl Into<String>) {
        self.lines.push(Line {
            id: id.to_string(),
            statement: statement.to_string(),
            status,
            witness: witness.into(),
            micros: None,
        });
    }

    pub fn info(&mut self, id: &str, statement: &str, witness: impl Into<String>) {
        self.push(id, statement, Status::Info, witness);
    }

    pub fn check(&mut self, id: &str, statement: &str, ok: bool, witness: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(id, statement, status, witness);
    }

    pub fn failed(&self) -> bool {
        self.lines.iter().any(|l| l.status == Status::Fail)
    }

    fn count(&self, s: Status) -> usize {
        self.lines.iter().filter(|l| l.status == s).count()
    }

    fn summary(&self) -> String {
        format!(
            "{} pass, {} fail, {} skip, {} info",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip),
            self.count(Status::Info)
        )
    }

    pub fn render(&self, format: Format, timing: bool) -> String {
        let micros = |l: &Line| match (timing, l.micros) {
            (true, Some(m)) => m.to_string(),
            _ => "-".to_string(),
        };
        let mut out = String::new();
        match format {
            Format::Tsv => {
                let _ = writeln!(out, "# command\t{}", self.command);
                let _ = writeln!(out, "# instance\tsha256:{}", self.digest);
                out.push_str("check_id\tpaper_ref\tstatus\twitness\tmicros\n");
                for l in &self.lines {
                    let _ = writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}",
                        clean(&l.id),
                        clean(&l.statement),
                        l.status.as_str(),
                        clean(&l.witness),
                        micros(l)
                    );
                }
                let _ = writeln!(out, "# summary\t{}", self.summary());
            }
            Format::Text => {
                let _ = writeln!(
                    out,
                    "glab {} (instance sha256:{})",
                    self.command, self.digest
                );
                let width = self.lines.iter().map(|l| l.id.len()).max().unwrap_or(0);
                for l in &self.lines {
                    let _ = write!(
                        out,
                        "  {:<4}  {:<width$}  {}",
                        l.status.as_str().to_uppercase(),
                        l.id,
                        l.witness,
                    );
                    if timing && l.micros.is_some() {
                        let _ = write!(out, "  ({} us)", micros(l));
                    }
                    out.push('\n');
                    if !l.statement.is_empty() && l.status != Status::Info {
                        let _ = writeln!(out, "        {:<width$}  [{}]", "", l.statement);
                    }
                }
                let _ = writeln!(out, "summary: {}", self.summary());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tsv_layout() {
        let mut r = Report::new("verify-all", "ring = zmod(2)\n");
        r.check("a", "statement a", true, "3 cases");
        r.check("b", "statement\tb", false, "x\ny");
        let tsv = r.render(Format::Tsv, false);
        let rows: Vec<&str> = tsv.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(rows[0], "check_id\tpaper_ref\tstatus\twitness\tmicros");
        assert_eq!(rows[2], "b\tstatement b\tfail\tx y\t-");
        assert!(rows.iter().all(|l| l.split('\t').count() == 5));
        assert!(r.failed());
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest("abc"), "ba7816bf8f01cfea");
    }
}
