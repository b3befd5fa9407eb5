//! Workbench documents: typed, named blocks of `key: value` lines.
//!
//! ```text
//! closedset cusp {
//!   arity: 2
//!   polytope: (0,0)
//!   sequence: rational (0,0) 2 | 1/i ; 1/i^2
//! }
//! ```

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RecordKind {
    Formula,
    PlFunction,
    ClosedSet,
    Cone,
    Verdict,
    Certificate,
}

impl RecordKind {
    pub const ALL: [RecordKind; 6] = [
        RecordKind::Formula,
        RecordKind::PlFunction,
        RecordKind::ClosedSet,
        RecordKind::Cone,
        RecordKind::Verdict,
        RecordKind::Certificate,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            RecordKind::Formula => "formula",
            RecordKind::PlFunction => "plfunction",
            RecordKind::ClosedSet => "closedset",
            RecordKind::Cone => "cone",
            RecordKind::Verdict => "verdict",
            RecordKind::Certificate => "certificate",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.keyword() == s)
    }
}

impl fmt::Display for RecordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub kind: RecordKind,
    pub name: String,
    pub fields: Vec<(String, String)>,
    /// 1-based line of the header; 0 for records built in memory.
    pub line: usize,
}

impl Record {
    pub fn new(kind: RecordKind, name: &str) -> Self {
        Record {
            kind,
            name: name.to_string(),
            fields: Vec::new(),
            line: 0,
        }
    }

    pub fn push(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.fields.iter().filter(move |(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| self.error(format!("missing field `{key}`")))
    }

    /// A syntax error located at this record's header.
    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: 1,
            message: format!("{} {}: {}", self.kind, self.name, message.into()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub records: Vec<Record>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

impl Document {
    pub fn parse(text: &str) -> Result<Document> {
        let mut records = Vec::new();
        let mut open: Option<Record> = None;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let indent = raw.len() - raw.trim_start().len();
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            match open.as_mut() {
                None => {
                    let Some(head) = t.strip_suffix('{') else {
                        return Err(syntax(line, indent + 1, "expected `<type> <name> {`"));
                    };
                    let mut parts = head.split_whitespace();
                    let kind = parts.next().unwrap_or_default();
                    let Some(kind) = RecordKind::from_keyword(kind) else {
                        return Err(syntax(line, indent + 1, format!("unknown record type `{kind}`")));
                    };
                    let name = parts.next().unwrap_or_default();
                    if !valid_name(name) || parts.next().is_some() {
                        return Err(syntax(line, indent + kind.keyword().len() + 2, "bad record name"));
                    }
                    open = Some(Record {
                        kind,
                        name: name.to_string(),
                        fields: Vec::new(),
                        line,
                    });
                }
                Some(rec) => {
                    if t == "}" {
                        records.push(open.take().expect("open record"));
                        continue;
                    }
                    let Some((key, value)) = t.split_once(':') else {
                        return Err(syntax(line, indent + 1, "expected `key: value`"));
                    };
                    let key = key.trim();
                    if !valid_name(key) {
                        return Err(syntax(line, indent + 1, format!("bad key `{key}`")));
                    }
                    rec.fields.push((key.to_string(), value.trim().to_string()));
                }
            }
        }
        if let Some(rec) = open {
            return Err(syntax(rec.line, 1, format!("record `{}` is not closed", rec.name)));
        }
        Ok(Document { records })
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn first(&self, kind: RecordKind) -> Option<&Record> {
        self.records.iter().find(|r| r.kind == kind)
    }

    pub fn named(&self, kind: RecordKind, name: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.kind == kind && r.name == name)
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, r) in self.records.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            writeln!(f, "{} {} {{", r.kind, r.name)?;
            for (key, v) in &r.fields {
                writeln!(f, "  {key}: {v}")?;
            }
            writeln!(f, "}}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = "formula f {\n  arity: 1\n  text: (x1 + x1)\n}\n\ncone c {\n  apex: (0,0)\n  axis: (1,0)\n}\n";

    #[test]
    fn round_trip() {
        let d = Document::parse(TEXT).unwrap();
        assert_eq!(d.records.len(), 2);
        assert_eq!(d.records[0].get("text"), Some("(x1 + x1)"));
        assert_eq!(d.records[1].line, 6);
        assert_eq!(d.to_string(), TEXT);
    }

    #[test]
    fn comments_and_spacing() {
        let d = Document::parse("# hi\n\nformula   f   {\n text :  !x1  \n}").unwrap();
        assert_eq!(d.records[0].get("text"), Some("!x1"));
    }

    #[test]
    fn rejects_unknown_type() {
        let e = Document::parse("formula f {\n}\n  widget w {\n}\n").unwrap_err();
        assert_eq!(
            e,
            Error::Syntax {
                line: 3,
                column: 3,
                message: "unknown record type `widget`".into()
            }
        );
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(Document::parse("formula f {\n text\n}"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(Document::parse("formula f {\n a: b\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(Document::parse("formula {\n}"), Err(Error::Syntax { line: 1, .. })));
    }
}
