//! Term syntax shared by every value in an instance file:
//! integers, names, `[a, b, ...]` lists and `name(args, ...)` calls.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Name(String),
    List(Vec<Expr>),
    Call(String, Vec<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(f: &mut fmt::Formatter<'_>, items: &[Expr]) -> fmt::Result {
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            Ok(())
        }
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Name(n) => f.write_str(n),
            Expr::List(xs) => {
                f.write_str("[")?;
                join(f, xs)?;
                f.write_str("]")
            }
            Expr::Call(n, xs) => {
                write!(f, "{n}(")?;
                join(f, xs)?;
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Open(char),
    Close(char),
    Comma,
}

fn tokenize(src: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' | '[' => {
                out.push(Tok::Open(c));
                chars.next();
            }
            ')' | ']' => {
                out.push(Tok::Close(c));
                chars.next();
            }
            ',' => {
                out.push(Tok::Comma);
                chars.next();
            }
            '-' | '0'..='9' => {
                let mut s = String::new();
                s.push(c);
                chars.next();
                while let Some(&(_, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    s.push(d);
                    chars.next();
                }
                let v = s
                    .parse()
                    .map_err(|_| format!("bad integer '{s}' at column {}", pos + 1))?;
                out.push(Tok::Int(v));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    s.push(d);
                    chars.next();
                }
                out.push(Tok::Ident(s));
            }
            _ => return Err(format!("unexpected '{c}' at column {}", pos + 1)),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, String> {
        match self.next() {
            Some(Tok::Int(v)) => Ok(Expr::Int(v)),
            Some(Tok::Ident(name)) => {
                if self.peek() == Some(&Tok::Open('(')) {
                    self.pos += 1;
                    Ok(Expr::Call(name, self.items(')')?))
                } else {
                    Ok(Expr::Name(name))
                }
            }
            Some(Tok::Open('[')) => Ok(Expr::List(self.items(']')?)),
            Some(t) => Err(format!("unexpected {t:?}")),
            None => Err("unexpected end of value".into()),
        }
    }

    /// Comma-separated items up to the closing bracket (already past the opener).
    fn items(&mut self, close: char) -> Result<Vec<Expr>, String> {
        let mut out = Vec::new();
        if self.peek() == Some(&Tok::Close(close)) {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            match self.next() {
                Some(Tok::Comma) => continue,
                Some(Tok::Close(c)) if c == close => return Ok(out),
                Some(t) => return Err(format!("expected ',' or '{close}', found {t:?}")),
                None => return Err(format!("missing '{close}'")),
            }
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, String> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input after {e}"));
    }
    Ok(e)
}
