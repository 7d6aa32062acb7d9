//! Line-oriented script language.
//!
//! ```text
//! ring zn 30
//! module znz 30
//! classify
//! rad1 <6>
//! ```
//!
//! Nested specs are bracketed: `ring product [zn 2] [zn 2]`,
//! `module quotient [znz 30] <10>`. Generator lists are written `<g1,g2>`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::harness::{CheckId, Claim, Instance};
use crate::module::ModuleSpec;
use crate::ring::RingSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Format {
    Text,
    Records,
    Dot,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Records => "records",
            Format::Dot => "dot",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Ring(RingSpec),
    Module(ModuleSpec),
    /// Every proper submodule, or only the one generated by the list.
    Classify(Option<Vec<String>>),
    Rad(Vec<String>),
    Rad1(Vec<String>),
    Multiplication,
    /// `None` runs every check.
    Suite(Option<Vec<CheckId>>),
    /// Without a module the triple is checked in `Z^k`.
    Witness {
        a: String,
        b: String,
        m: String,
        generators: Vec<String>,
    },
    Counterexample(Claim),
    EmitDot(String),
    Format(Format),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Plan {
    pub statements: Vec<Statement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Token {
    text: String,
    column: usize,
}

struct Line {
    number: usize,
    tokens: Vec<Token>,
    pos: usize,
    end_column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Splits on whitespace, keeping `[`/`]` as their own tokens and anything
/// inside `<...>` or `(...)` together.
fn tokenize(number: usize, text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c == '[' || c == ']' {
            tokens.push(Token {
                text: c.to_string(),
                column: start + 1,
            });
            i += 1;
            continue;
        }
        let mut depth = 0i32;
        let mut word = String::new();
        while i < chars.len() {
            let c = chars[i];
            if depth == 0 && (c.is_whitespace() || c == '[' || c == ']') {
                break;
            }
            match c {
                '<' | '(' => depth += 1,
                '>' | ')' => depth -= 1,
                _ => {}
            }
            if depth < 0 {
                return Err(syntax(number, i + 1, format!("unbalanced '{c}'")));
            }
            if !c.is_whitespace() {
                word.push(c);
            }
            i += 1;
        }
        if depth != 0 {
            return Err(syntax(number, start + 1, "unclosed bracket"));
        }
        tokens.push(Token {
            text: word,
            column: start + 1,
        });
    }
    Ok(tokens)
}

impl Line {
    fn new(number: usize, src: &str) -> Result<Self> {
        Ok(Line {
            number,
            tokens: tokenize(number, src)?,
            pos: 0,
            end_column: src.chars().count() + 1,
        })
    }

    fn column(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map_or(self.end_column, |t| t.column)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        syntax(self.number, self.column(), message)
    }

    fn peek(&self) -> Option<&str> {
        self.tokens.get(self.pos).map(|t| t.text.as_str())
    }

    fn next(&mut self, what: &str) -> Result<String> {
        match self.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.text.clone())
            }
            None => Err(self.error(format!("expected {what}"))),
        }
    }

    fn expect(&mut self, word: &str) -> Result<()> {
        if self.peek() == Some(word) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{word}'")))
        }
    }

    fn integer(&mut self, what: &str) -> Result<u64> {
        let column = self.column();
        let t = self.next(what)?;
        t.parse()
            .map_err(|_| syntax(self.number, column, format!("expected {what}, found '{t}'")))
    }

    fn done(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected '{t}'"))),
        }
    }

    fn at_end_or_close(&self) -> bool {
        matches!(self.peek(), None | Some("]"))
    }

    fn bracketed<T>(&mut self, f: impl Fn(&mut Self) -> Result<T>) -> Result<T> {
        self.expect("[")?;
        let v = f(self)?;
        self.expect("]")?;
        Ok(v)
    }

    fn ring_spec(&mut self) -> Result<RingSpec> {
        let column = self.column();
        let kind = self.next("ring kind")?;
        match kind.as_str() {
            "zn" => {
                let column = self.column();
                let n = self.integer("modulus")?;
                if n < 2 {
                    return Err(syntax(self.number, column, "modulus must be at least 2"));
                }
                Ok(RingSpec::Zn(n))
            }
            "integers" => Ok(RingSpec::Integers),
            "polyquot" => {
                let column = self.column();
                let modulus = self.integer("modulus")?;
                if modulus < 2 {
                    return Err(syntax(self.number, column, "modulus must be at least 2"));
                }
                let column = self.column();
                let mut coeffs = Vec::new();
                while !self.at_end_or_close() {
                    coeffs.push(self.integer("coefficient")?);
                }
                if coeffs.len() < 2 || coeffs.last() != Some(&1) {
                    return Err(syntax(
                        self.number,
                        column,
                        "polynomial must be monic of degree at least 1 (coefficients constant first, ending in 1)",
                    ));
                }
                Ok(RingSpec::PolyQuot { modulus, coeffs })
            }
            "product" => {
                let mut parts = vec![self.bracketed(Self::ring_spec)?];
                while self.peek() == Some("[") {
                    parts.push(self.bracketed(Self::ring_spec)?);
                }
                if parts.len() < 2 {
                    return Err(self.error("product needs at least two factors"));
                }
                Ok(RingSpec::Product(parts))
            }
            other => Err(syntax(self.number, column, format!("unknown ring kind '{other}'"))),
        }
    }

    fn module_spec(&mut self) -> Result<ModuleSpec> {
        let column = self.column();
        let kind = self.next("module kind")?;
        match kind.as_str() {
            "regular" => Ok(ModuleSpec::Regular),
            "znz" => {
                let column = self.column();
                let n = self.integer("modulus")?;
                if n < 2 {
                    return Err(syntax(self.number, column, "modulus must be at least 2"));
                }
                Ok(ModuleSpec::Znz(n))
            }
            "product" => {
                let mut parts = vec![self.bracketed(Self::module_spec)?];
                while self.peek() == Some("[") {
                    parts.push(self.bracketed(Self::module_spec)?);
                }
                if parts.len() < 2 {
                    return Err(self.error("product needs at least two factors"));
                }
                Ok(ModuleSpec::Product(parts))
            }
            "quotient" => {
                let base = Box::new(self.bracketed(Self::module_spec)?);
                let generators = self.generators()?;
                Ok(ModuleSpec::Quotient { base, generators })
            }
            other => Err(syntax(self.number, column, format!("unknown module kind '{other}'"))),
        }
    }

    fn generators(&mut self) -> Result<Vec<String>> {
        let column = self.column();
        let t = self.next("generator list <...>")?;
        let inner = t
            .strip_prefix('<')
            .and_then(|t| t.strip_suffix('>'))
            .ok_or_else(|| syntax(self.number, column, format!("expected generator list <...>, found '{t}'")))?;
        Ok(split_top_level(inner))
    }
}

/// Splits on commas outside parentheses.
fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.is_empty() || !out.is_empty() {
        out.push(cur);
    }
    out
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn statement(line: &mut Line) -> Result<Statement> {
    let column = line.column();
    let head = line.next("command")?;
    let st = match head.as_str() {
        "ring" => Statement::Ring(line.ring_spec()?),
        "module" => Statement::Module(line.module_spec()?),
        "classify" => Statement::Classify(match line.peek() {
            None => None,
            Some(_) => Some(line.generators()?),
        }),
        "rad" => Statement::Rad(line.generators()?),
        "rad1" => Statement::Rad1(line.generators()?),
        "multiplication" => Statement::Multiplication,
        "suite" => {
            let mut ids = Vec::new();
            while line.peek().is_some() {
                let column = line.column();
                let t = line.next("check id")?;
                if t == "all" && ids.is_empty() && line.peek().is_none() {
                    return Ok(Statement::Suite(None));
                }
                ids.push(t.parse::<CheckId>().map_err(|e| syntax(line.number, column, e.to_string()))?);
            }
            Statement::Suite(if ids.is_empty() { None } else { Some(ids) })
        }
        "witness" => {
            let a = line.next("scalar a")?;
            let b = line.next("scalar b")?;
            let m = line.next("element m")?;
            line.expect("in")?;
            let generators = line.generators()?;
            Statement::Witness { a, b, m, generators }
        }
        "counterexample" => {
            let column = line.column();
            let t = line.next("claim")?;
            Statement::Counterexample(t.parse().map_err(|e: Error| syntax(line.number, column, e.to_string()))?)
        }
        "emit" => {
            line.expect("dot")?;
            Statement::EmitDot(line.next("output path")?)
        }
        "format" => {
            let column = line.column();
            let t = line.next("format")?;
            Statement::Format(match t.as_str() {
                "text" => Format::Text,
                "records" => Format::Records,
                "dot" => Format::Dot,
                other => return Err(syntax(line.number, column, format!("unknown format '{other}'"))),
            })
        }
        other => return Err(syntax(line.number, column, format!("unknown command '{other}'"))),
    };
    line.done()?;
    Ok(st)
}

impl Plan {
    pub fn parse(text: &str) -> Result<Plan> {
        let mut statements = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let src = strip_comment(raw);
            if src.trim().is_empty() {
                continue;
            }
            let mut line = Line::new(i + 1, src)?;
            statements.push(statement(&mut line)?);
        }
        Ok(Plan { statements })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for st in &self.statements {
            out.push_str(&render_statement(st));
            out.push('\n');
        }
        out
    }
}

pub fn render_ring(spec: &RingSpec) -> String {
    match spec {
        RingSpec::Zn(n) => format!("zn {n}"),
        RingSpec::Integers => "integers".into(),
        RingSpec::PolyQuot { modulus, coeffs } => {
            let mut s = format!("polyquot {modulus}");
            for c in coeffs {
                let _ = write!(s, " {c}");
            }
            s
        }
        RingSpec::Product(parts) => {
            let mut s = "product".to_string();
            for p in parts {
                let _ = write!(s, " [{}]", render_ring(p));
            }
            s
        }
    }
}

pub fn render_module(spec: &ModuleSpec) -> String {
    match spec {
        ModuleSpec::Regular => "regular".into(),
        ModuleSpec::Znz(n) => format!("znz {n}"),
        ModuleSpec::Product(parts) => {
            let mut s = "product".to_string();
            for p in parts {
                let _ = write!(s, " [{}]", render_module(p));
            }
            s
        }
        ModuleSpec::Quotient { base, generators } => {
            format!("quotient [{}] {}", render_module(base), render_generators(generators))
        }
    }
}

pub fn render_generators(g: &[String]) -> String {
    format!("<{}>", g.join(","))
}

fn render_statement(st: &Statement) -> String {
    match st {
        Statement::Ring(r) => format!("ring {}", render_ring(r)),
        Statement::Module(m) => format!("module {}", render_module(m)),
        Statement::Classify(None) => "classify".into(),
        Statement::Classify(Some(g)) => format!("classify {}", render_generators(g)),
        Statement::Rad(g) => format!("rad {}", render_generators(g)),
        Statement::Rad1(g) => format!("rad1 {}", render_generators(g)),
        Statement::Multiplication => "multiplication".into(),
        Statement::Suite(None) => "suite".into(),
        Statement::Suite(Some(ids)) => {
            let names: Vec<&str> = ids.iter().map(|i| i.as_str()).collect();
            format!("suite {}", names.join(" "))
        }
        Statement::Witness { a, b, m, generators } => {
            format!("witness {a} {b} {m} in {}", render_generators(generators))
        }
        Statement::Counterexample(c) => format!("counterexample {c}"),
        Statement::EmitDot(p) => format!("emit dot {p}"),
        Statement::Format(f) => format!("format {}", f.as_str()),
    }
}

/// Instance family file: one `ring-spec | module-spec` per line, `#` comments.
pub fn parse_family(text: &str) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let src = strip_comment(raw);
        if src.trim().is_empty() {
            continue;
        }
        let bar = src
            .find('|')
            .ok_or_else(|| syntax(i + 1, 1, "expected 'ring-spec | module-spec'"))?;
        let mut ring = Line::new(i + 1, &src[..bar])?;
        let r = ring.ring_spec()?;
        ring.done()?;
        let pad: String = " ".repeat(bar + 1);
        let module_src = format!("{pad}{}", &src[bar + 1..]);
        let mut module = Line::new(i + 1, &module_src)?;
        let m = module.module_spec()?;
        module.done()?;
        out.push(Instance::new(r, m));
    }
    Ok(out)
}
