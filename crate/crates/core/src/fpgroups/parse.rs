use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::word::{Letter, Presentation, Word};
use super::FpError;

/// Upper bound on the letters in a single parsed word.
const MAX_WORD_LEN: usize = 1 << 26;

#[derive(Debug, Clone, Default)]
pub struct ParseOptions {
    /// Stop after this many relator expressions (counted before reduction and
    /// deduplication); the rest of the input is hashed but not parsed.
    pub max_relators: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Native,
    Magma,
}

#[derive(Debug, Clone)]
pub struct ParsedPresentation {
    pub presentation: Presentation,
    pub format: Format,
    pub warnings: Vec<String>,
    /// Hex SHA-256 of the full input.
    pub sha256: String,
    pub relators_read: usize,
    pub duplicates_dropped: usize,
    pub truncated: bool,
}

/// Parses a presentation held in memory.
pub fn parse_presentation(text: &str) -> Result<Presentation, FpError> {
    read_presentation(text.as_bytes(), &ParseOptions::default()).map(|p| p.presentation)
}

pub fn load_presentation(path: &Path, opts: &ParseOptions) -> Result<ParsedPresentation, FpError> {
    let file = File::open(path).map_err(|e| FpError::Io(format!("{}: {e}", path.display())))?;
    read_presentation(file, opts)
}

/// Streams a presentation from `reader`; memory use is bounded by the
/// largest relator plus the presentation being built.
pub fn read_presentation<R: Read>(reader: R, opts: &ParseOptions) -> Result<ParsedPresentation, FpError> {
    let hashing = HashingReader { inner: reader, hasher: Sha256::new() };
    let mut lexer = Lexer::new(BufReader::with_capacity(1 << 16, hashing));
    let mut parser = Parser { lx: &mut lexer, gens: HashMap::new(), closed: false };
    let mut out = parser.presentation(opts)?;
    io::copy(&mut lexer.reader, &mut io::sink())?;
    out.sha256 = hex::encode(lexer.reader.get_ref().hasher.clone().finalize());
    Ok(out)
}

/// Parses one word over `generators`.
pub(crate) fn parse_word_with(text: &str, generators: &[String]) -> Result<Word, FpError> {
    let mut lexer = Lexer::new(BufReader::new(text.as_bytes()));
    let mut parser = Parser { lx: &mut lexer, gens: index_map(generators), closed: false };
    let w = parser.word()?;
    let t = parser.lx.next()?;
    if t.tok != Tok::Eof {
        return Err(t.error(format!("unexpected {} after word", t.tok)));
    }
    Ok(w)
}

fn index_map(generators: &[String]) -> HashMap<String, usize> {
    generators.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect()
}

struct HashingReader<R> {
    inner: R,
    hasher: Sha256,
}

impl<R: Read> Read for HashingReader<R> {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        let n = self.inner.read(buf)?;
        self.hasher.update(&buf[..n]);
        Ok(n)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
    Assign,
    Eof,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Assign => f.write_str("`:=`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

impl Token {
    fn error(&self, message: String) -> FpError {
        FpError::Syntax { line: self.line, col: self.col, message }
    }
}

struct Lexer<B> {
    reader: B,
    line: usize,
    col: usize,
    pending: Option<Token>,
}

impl<B: BufRead> Lexer<B> {
    fn new(reader: B) -> Self {
        Lexer { reader, line: 1, col: 1, pending: None }
    }

    fn peek_byte(&mut self) -> io::Result<Option<u8>> {
        Ok(self.reader.fill_buf()?.first().copied())
    }

    fn bump(&mut self) -> io::Result<Option<u8>> {
        let b = self.peek_byte()?;
        if let Some(c) = b {
            self.reader.consume(1);
            if c == b'\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        Ok(b)
    }

    fn syntax(&self, line: usize, col: usize, message: impl Into<String>) -> FpError {
        FpError::Syntax { line, col, message: message.into() }
    }

    fn peek(&mut self) -> Result<&Tok, FpError> {
        if self.pending.is_none() {
            let t = self.lex()?;
            self.pending = Some(t);
        }
        Ok(&self.pending.as_ref().expect("token present").tok)
    }

    fn next(&mut self) -> Result<Token, FpError> {
        match self.pending.take() {
            Some(t) => Ok(t),
            None => self.lex(),
        }
    }

    fn lex(&mut self) -> Result<Token, FpError> {
        loop {
            let (line, col) = (self.line, self.col);
            let Some(c) = self.bump()? else {
                return Ok(Token { tok: Tok::Eof, line, col });
            };
            let tok = match c {
                c if c.is_ascii_whitespace() => continue,
                b'#' => {
                    self.skip_line()?;
                    continue;
                }
                b'/' => match self.peek_byte()? {
                    Some(b'/') => {
                        self.skip_line()?;
                        continue;
                    }
                    Some(b'*') => {
                        self.bump()?;
                        self.skip_block(line, col)?;
                        continue;
                    }
                    _ => Tok::Sym('/'),
                },
                b':' => {
                    if self.peek_byte()? == Some(b'=') {
                        self.bump()?;
                        Tok::Assign
                    } else {
                        Tok::Sym(':')
                    }
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let mut s = String::from(c as char);
                    while let Some(d) = self.peek_byte()? {
                        if d.is_ascii_alphanumeric() || d == b'_' {
                            s.push(d as char);
                            self.bump()?;
                        } else {
                            break;
                        }
                    }
                    Tok::Ident(s)
                }
                c if c.is_ascii_digit() => {
                    let mut n: u64 = (c - b'0') as u64;
                    while let Some(d) = self.peek_byte()? {
                        if !d.is_ascii_digit() {
                            break;
                        }
                        n = n
                            .checked_mul(10)
                            .and_then(|n| n.checked_add((d - b'0') as u64))
                            .ok_or_else(|| self.syntax(line, col, "integer literal too large"))?;
                        self.bump()?;
                    }
                    Tok::Int(n)
                }
                b'*' | b'^' | b'(' | b')' | b'[' | b']' | b',' | b';' | b'|' | b'<' | b'>' | b'=' | b'-' => {
                    Tok::Sym(c as char)
                }
                other => {
                    let shown = if other.is_ascii_graphic() { format!("`{}`", other as char) } else { format!("byte 0x{other:02x}") };
                    return Err(self.syntax(line, col, format!("unexpected character {shown}")));
                }
            };
            return Ok(Token { tok, line, col });
        }
    }

    fn skip_line(&mut self) -> io::Result<()> {
        while let Some(c) = self.bump()? {
            if c == b'\n' {
                break;
            }
        }
        Ok(())
    }

    fn skip_block(&mut self, line: usize, col: usize) -> Result<(), FpError> {
        let mut star = false;
        loop {
            match self.bump()? {
                None => return Err(self.syntax(line, col, "unterminated block comment")),
                Some(b'/') if star => return Ok(()),
                Some(c) => star = c == b'*',
            }
        }
    }
}

struct Parser<'a, B> {
    lx: &'a mut Lexer<B>,
    gens: HashMap<String, usize>,
    /// A bracketed generator list ended without relators.
    closed: bool,
}

impl<B: BufRead> Parser<'_, B> {
    fn expect_sym(&mut self, c: char) -> Result<Token, FpError> {
        let t = self.lx.next()?;
        if t.tok != Tok::Sym(c) {
            return Err(t.error(format!("expected `{c}`, found {}", t.tok)));
        }
        Ok(t)
    }

    fn eat_sym(&mut self, c: char) -> Result<bool, FpError> {
        if *self.lx.peek()? == Tok::Sym(c) {
            self.lx.next()?;
            return Ok(true);
        }
        Ok(false)
    }

    fn ident(&mut self) -> Result<(String, Token), FpError> {
        let t = self.lx.next()?;
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.clone())),
            other => Err(t.error(format!("expected a name, found {other}"))),
        }
    }

    fn presentation(&mut self, opts: &ParseOptions) -> Result<ParsedPresentation, FpError> {
        let native = matches!(self.lx.peek()?, Tok::Ident(s) if is_keyword(s));
        let (name, generators, format) = if native { self.native_header()? } else { self.magma_header()? };
        let mut seen_names = HashSet::new();
        for g in &generators {
            if !seen_names.insert(g.clone()) {
                return Err(FpError::DuplicateGenerator(g.clone()));
            }
        }
        self.gens = index_map(&generators);
        let mut p = Presentation::empty(name, generators);
        let mut out = ParsedPresentation {
            presentation: Presentation::empty(String::new(), Vec::new()),
            format,
            warnings: Vec::new(),
            sha256: String::new(),
            relators_read: 0,
            duplicates_dropped: 0,
            truncated: false,
        };
        let mut seen = HashSet::new();
        loop {
            if opts.max_relators.is_some_and(|m| out.relators_read >= m) {
                out.truncated = !self.at_relator_end(format)?;
                break;
            }
            if self.at_relator_end(format)? {
                break;
            }
            let (line, col) = self.position()?;
            let w = self.word()?;
            out.relators_read += 1;
            if w.cyclically_reduced().is_empty() {
                out.warnings.push(format!("{line}:{col}: relator {} is trivial and was dropped", out.relators_read));
            } else if !p.push_relator(w, &mut seen) {
                out.duplicates_dropped += 1;
            }
            match format {
                Format::Native => while self.eat_sym(',')? || self.eat_sym(';')? {},
                Format::Magma => {
                    if self.eat_sym(',')? {
                        if matches!(self.lx.peek()?, Tok::Sym('>') | Tok::Eof) {
                            let t = self.lx.next()?;
                            return Err(t.error(format!("expected a relator, found {}", t.tok)));
                        }
                    } else if *self.lx.peek()? != Tok::Sym('>') {
                        let t = self.lx.next()?;
                        return Err(t.error(format!("expected `,` or `>`, found {}", t.tok)));
                    }
                }
            }
        }
        if !out.truncated {
            self.finish(format)?;
        }
        out.presentation = p;
        Ok(out)
    }

    fn position(&mut self) -> Result<(usize, usize), FpError> {
        self.lx.peek()?;
        let t = self.lx.pending.as_ref().expect("token present");
        Ok((t.line, t.col))
    }

    fn at_relator_end(&mut self, format: Format) -> Result<bool, FpError> {
        Ok(match format {
            Format::Native => *self.lx.peek()? == Tok::Eof,
            Format::Magma => self.closed || matches!(self.lx.peek()?, Tok::Sym('>') | Tok::Eof),
        })
    }

    fn finish(&mut self, format: Format) -> Result<(), FpError> {
        if format == Format::Magma {
            if !self.closed {
                self.expect_sym('>')?;
            }
            self.eat_sym(';')?;
        }
        let t = self.lx.next()?;
        if t.tok != Tok::Eof {
            return Err(t.error(format!("unexpected {} after presentation", t.tok)));
        }
        Ok(())
    }

    fn native_header(&mut self) -> Result<(String, Vec<String>, Format), FpError> {
        let mut name = "G".to_string();
        if matches!(self.lx.peek()?, Tok::Ident(s) if s == "group") {
            self.lx.next()?;
            if matches!(self.lx.peek()?, Tok::Ident(s) if !is_keyword(s)) {
                name = self.ident()?.0;
            }
        }
        let mut generators = Vec::new();
        if matches!(self.lx.peek()?, Tok::Ident(s) if s == "gens") {
            self.lx.next()?;
            loop {
                match self.lx.peek()? {
                    Tok::Ident(s) if !is_keyword(s) => generators.push(self.ident()?.0),
                    Tok::Sym(',') => {
                        self.lx.next()?;
                    }
                    _ => break,
                }
            }
        }
        let t = self.lx.next()?;
        match &t.tok {
            Tok::Ident(s) if s == "rels" => {}
            Tok::Eof => {}
            other => return Err(t.error(format!("expected `rels`, found {other}"))),
        }
        Ok((name, generators, Format::Native))
    }

    fn name_list(&mut self) -> Result<Vec<String>, FpError> {
        let mut names = Vec::new();
        if matches!(self.lx.peek()?, Tok::Ident(_)) {
            names.push(self.ident()?.0);
            while self.eat_sym(',')? {
                names.push(self.ident()?.0);
            }
        }
        Ok(names)
    }

    fn magma_header(&mut self) -> Result<(String, Vec<String>, Format), FpError> {
        let (first, _) = self.ident()?;
        self.expect_sym('<')?;
        let names = self.name_list()?;
        if self.eat_sym('>')? {
            if *self.lx.peek()? != Tok::Assign {
                self.closed = true;
                return Ok(("G".to_string(), names, Format::Magma));
            }
            let t = self.lx.next()?;
            if t.tok != Tok::Assign {
                return Err(t.error(format!("expected `:=`, found {}", t.tok)));
            }
            self.ident()?;
            self.expect_sym('<')?;
            let generators = self.name_list()?;
            if generators.len() != names.len() {
                return Err(t.error("generator lists on both sides of `:=` differ in length".into()));
            }
            self.magma_bar()?;
            return Ok((first, generators, Format::Magma));
        }
        self.magma_bar()?;
        Ok(("G".to_string(), names, Format::Magma))
    }

    fn magma_bar(&mut self) -> Result<(), FpError> {
        if *self.lx.peek()? == Tok::Sym('>') {
            return Ok(());
        }
        self.expect_sym('|').map(|_| ())
    }

    fn word(&mut self) -> Result<Word, FpError> {
        let lhs = self.product()?;
        if self.eat_sym('=')? {
            let rhs = self.product()?;
            return Ok(lhs.concat(&rhs.inverse()));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Word, FpError> {
        let mut w = self.power()?;
        while self.eat_sym('*')? {
            let rhs = self.power()?;
            w = w.concat(&rhs);
            self.check_len(&w)?;
        }
        Ok(w)
    }

    fn check_len(&mut self, w: &Word) -> Result<(), FpError> {
        if w.len() > MAX_WORD_LEN {
            let (line, col) = self.position()?;
            return Err(FpError::Syntax { line, col, message: format!("word longer than {MAX_WORD_LEN} letters") });
        }
        Ok(())
    }

    fn power(&mut self) -> Result<Word, FpError> {
        let mut w = self.atom()?;
        while self.eat_sym('^')? {
            w = self.exponent(w)?;
            self.check_len(&w)?;
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Word, FpError> {
        let t = self.lx.next()?;
        match &t.tok {
            Tok::Ident(name) => match self.gens.get(name) {
                Some(&g) => Ok(Word(vec![Letter::new(g, false)])),
                None => Err(FpError::UnknownGenerator { line: t.line, col: t.col, name: name.clone() }),
            },
            Tok::Int(1) => Ok(Word::identity()),
            Tok::Sym('(') => {
                let mut w = self.word()?;
                while self.eat_sym(',')? {
                    let v = self.word()?;
                    w = commutator(&w, &v);
                }
                self.expect_sym(')')?;
                Ok(w)
            }
            Tok::Sym('[') => {
                let mut w = self.word()?;
                self.expect_sym(',')?;
                loop {
                    let v = self.word()?;
                    w = commutator(&w, &v);
                    if !self.eat_sym(',')? {
                        break;
                    }
                }
                self.expect_sym(']')?;
                Ok(w)
            }
            other => Err(t.error(format!("expected a generator, `1`, `(` or `[`, found {other}"))),
        }
    }

    fn signed_int(&mut self) -> Result<i64, FpError> {
        let negative = self.eat_sym('-')?;
        let t = self.lx.next()?;
        match t.tok {
            Tok::Int(n) if n <= i32::MAX as u64 => Ok(if negative { -(n as i64) } else { n as i64 }),
            Tok::Int(_) => Err(t.error("exponent too large".into())),
            ref other => Err(t.error(format!("expected an exponent, found {other}"))),
        }
    }

    fn exponent(&mut self, base: Word) -> Result<Word, FpError> {
        match self.lx.peek()? {
            Tok::Sym('-') | Tok::Int(_) => {
                let (line, col) = self.position()?;
                let e = self.signed_int()?;
                if base.len().saturating_mul(e.unsigned_abs() as usize) > MAX_WORD_LEN {
                    return Err(FpError::Syntax { line, col, message: format!("word longer than {MAX_WORD_LEN} letters") });
                }
                Ok(base.pow(e))
            }
            Tok::Sym('(') => {
                self.lx.next()?;
                if matches!(self.lx.peek()?, Tok::Sym('-') | Tok::Int(_)) {
                    let e = self.signed_int()?;
                    self.expect_sym(')')?;
                    return Ok(base.pow(e));
                }
                let c = self.word()?;
                self.expect_sym(')')?;
                Ok(conjugate(&base, &c))
            }
            _ => {
                let c = self.atom()?;
                Ok(conjugate(&base, &c))
            }
        }
    }
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "group" | "gens" | "rels")
}

/// `u⁻¹v⁻¹uv`.
fn commutator(u: &Word, v: &Word) -> Word {
    u.inverse().concat(&v.inverse()).concat(u).concat(v)
}

/// `c⁻¹wc`.
fn conjugate(w: &Word, c: &Word) -> Word {
    c.inverse().concat(w).concat(c)
}
