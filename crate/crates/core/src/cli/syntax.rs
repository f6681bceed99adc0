//! The script language: lexer, recursive-descent parser and printer.
//!
//! ```text
//! # binary trees and their parity
//! sig T = leaf:0 | node:2
//! group swap2 = pair:2 with swap: pair -> pair [1 0]
//! size K = plump:T
//! F = 1 + X*X
//! U = 1 + sym<swap2> X
//! L(X, Y) = 1 + X*Y
//! M = mu Y. L(X, Y)
//! alg parity for F on 2 = [0 1 0 0 1]
//! mu F size nat budget 5
//! cata F with parity at 3
//! enumerate T depth 2
//! ```
//!
//! Statements end at a newline. Names must be declared before they are used;
//! the parser reports undeclared or misused names as name errors.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(usize),
    Punct(&'static str),
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Punct(p) => write!(f, "`{p}`"),
            Tok::Newline => write!(f, "end of line"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const PUNCT: &[&str] = &[
    "->", "+", "*", "^", "(", ")", "<", ">", ",", ".", "=", ":", "|", "[", "]",
];

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (ln, text) in src.lines().enumerate() {
        let line = ln + 1;
        let chars: Vec<char> = text.chars().collect();
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            let col = k + 1;
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                k += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = k;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let digits: String = chars[start..k].iter().collect();
                let n = digits.parse().map_err(|_| Error::Syntax {
                    line,
                    col,
                    msg: format!("number {digits} is too large"),
                })?;
                out.push(Token {
                    tok: Tok::Num(n),
                    line,
                    col,
                });
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                let start = k;
                while k < chars.len()
                    && (chars[k].is_alphanumeric() || chars[k] == '_' || chars[k] == '\'')
                {
                    k += 1;
                }
                let word = chars[start..k].iter().collect();
                out.push(Token {
                    tok: Tok::Ident(word),
                    line,
                    col,
                });
                continue;
            }
            let rest: String = chars[k..chars.len().min(k + 2)].iter().collect();
            let Some(p) = PUNCT.iter().find(|p| rest.starts_with(**p)) else {
                return Err(Error::Syntax {
                    line,
                    col,
                    msg: format!("unexpected character `{c}`"),
                });
            };
            out.push(Token {
                tok: Tok::Punct(p),
                line,
                col,
            });
            k += p.len();
        }
        out.push(Token {
            tok: Tok::Newline,
            line,
            col: chars.len() + 1,
        });
    }
    let line = out.last().map_or(1, |t| t.line + 1);
    out.push(Token {
        tok: Tok::Eof,
        line,
        col: 1,
    });
    Ok(out)
}

const KEYWORDS: &[&str] = &[
    "sig",
    "group",
    "with",
    "size",
    "nat",
    "plump",
    "alg",
    "for",
    "on",
    "mu",
    "sym",
    "poly",
    "compose",
    "iterate",
    "cata",
    "free",
    "nu",
    "check",
    "enumerate",
    "budget",
    "depth",
    "at",
];

/// A functor expression as written, before names are resolved to values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(usize),
    /// A bound variable: a declared parameter or a `mu` variable.
    Var(String),
    /// A declared functor used at its own arity.
    Ref(String),
    /// A declared functor applied to arguments, `G(e, …)`.
    Apply(String, Vec<Expr>),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, usize),
    Sym(String, Box<Expr>),
    Poly(String, Box<Expr>),
    Mu(String, Box<Expr>),
    /// `compose(outer, inner)`; `outer` reads the outputs of `inner` as
    /// `X`, `Y`, `Z`.
    Compose(Box<Expr>, Box<Expr>),
    Pair(Vec<Expr>),
}

/// Variables visible in the outer argument of `compose`.
pub const COMPOSE_VARS: [&str; 3] = ["X", "Y", "Z"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SizeRef {
    Nat,
    /// `plump:<signature>`.
    Plump(String),
    /// A size declared with `size`.
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SizeSpec {
    Nat,
    Plump(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub src: String,
    pub dst: String,
    pub table: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Clauses {
    pub size: Option<SizeRef>,
    pub budget: Option<usize>,
    pub depth: Option<usize>,
    pub at: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Iterate,
    Mu,
    Cata { algebra: String },
    Free { on: usize },
    Nu,
    Check,
    Enumerate,
}

impl CommandKind {
    pub fn keyword(&self) -> &'static str {
        match self {
            CommandKind::Iterate => "iterate",
            CommandKind::Mu => "mu",
            CommandKind::Cata { .. } => "cata",
            CommandKind::Free { .. } => "free",
            CommandKind::Nu => "nu",
            CommandKind::Check => "check",
            CommandKind::Enumerate => "enumerate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub kind: CommandKind,
    /// The functor, or for `enumerate` the signature.
    pub target: String,
    pub clauses: Clauses,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Sig {
        name: String,
        ops: Vec<(String, usize)>,
    },
    Group {
        name: String,
        objects: Vec<(String, usize)>,
        arrows: Vec<ArrowDecl>,
    },
    Size {
        name: String,
        spec: SizeSpec,
    },
    Functor {
        name: String,
        /// `None` for the unary form `F = …`, whose variable is `X`.
        params: Option<Vec<String>>,
        body: Expr,
    },
    Alg {
        name: String,
        functor: String,
        carrier: usize,
        table: Vec<usize>,
    },
    Command(Command),
}

/// A parsed script. Equality ignores source positions.
#[derive(Clone, Debug)]
pub struct Script {
    statements: Vec<Statement>,
    lines: Vec<usize>,
}

impl PartialEq for Script {
    fn eq(&self, other: &Self) -> bool {
        self.statements == other.statements
    }
}

impl Eq for Script {}

impl Script {
    pub fn statements(&self) -> &[Statement] {
        &self.statements
    }

    /// Source line of each statement.
    pub fn lines(&self) -> &[usize] {
        &self.lines
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Statement)> {
        self.lines.iter().copied().zip(&self.statements)
    }

    pub fn commands(&self) -> impl Iterator<Item = &Command> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Command(c) => Some(c),
            _ => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Decl {
    Sig,
    Group,
    Size,
    Functor { arity: usize, outputs: usize },
    Alg,
}

impl Decl {
    fn what(&self) -> &'static str {
        match self {
            Decl::Sig => "a signature",
            Decl::Group => "a group",
            Decl::Size => "a size",
            Decl::Functor { .. } => "a functor",
            Decl::Alg => "an algebra",
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    decls: BTreeMap<String, Decl>,
}

/// Parses a script, checking that every name is declared before use.
pub fn parse_dsl(src: &str) -> Result<Script> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        decls: BTreeMap::new(),
    };
    let mut statements = Vec::new();
    let mut lines = Vec::new();
    loop {
        match p.peek().tok {
            Tok::Eof => break,
            Tok::Newline => {
                p.pos += 1;
            }
            _ => {
                lines.push(p.peek().line);
                statements.push(p.statement()?);
                p.end_of_statement()?;
            }
        }
    }
    Ok(Script { statements, lines })
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, t: &Token, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        })
    }

    fn name_err<T>(&self, t: &Token, msg: impl Into<String>) -> Result<T> {
        Err(Error::Name {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        })
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek().tok, Tok::Punct(q) if q == p)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == w)
    }

    fn expect_punct(&mut self, p: &str) -> Result<()> {
        if self.is_punct(p) {
            self.pos += 1;
            Ok(())
        } else {
            let t = self.peek().clone();
            self.syntax(&t, format!("expected `{p}`, found {}", t.tok))
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<()> {
        if self.is_word(w) {
            self.pos += 1;
            Ok(())
        } else {
            let t = self.peek().clone();
            self.syntax(&t, format!("expected `{w}`, found {}", t.tok))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let t = self.next();
        match t.tok {
            Tok::Num(n) => Ok(n),
            _ => self.syntax(&t, format!("expected a number, found {}", t.tok)),
        }
    }

    /// Any identifier that is not a keyword.
    fn ident(&mut self) -> Result<(String, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => Ok((s.clone(), t)),
            Tok::Ident(s) => self.syntax(&t, format!("`{s}` is a keyword")),
            _ => self.syntax(&t, format!("expected a name, found {}", t.tok)),
        }
    }

    fn declare(&mut self, name: &str, at: &Token, decl: Decl) -> Result<()> {
        if self.decls.contains_key(name) {
            return self.name_err(at, format!("`{name}` is already declared"));
        }
        self.decls.insert(name.to_string(), decl);
        Ok(())
    }

    /// Reads a name that must refer to a declaration of the given kind.
    fn reference(&mut self, want: Decl) -> Result<String> {
        let (name, t) = self.ident()?;
        match self.decls.get(&name) {
            None => self.name_err(&t, format!("`{name}` is not declared")),
            Some(d) if std::mem::discriminant(d) != std::mem::discriminant(&want) => self.name_err(
                &t,
                format!("`{name}` is {}, expected {}", d.what(), want.what()),
            ),
            Some(_) => Ok(name),
        }
    }

    fn end_of_statement(&mut self) -> Result<()> {
        let t = self.next();
        match t.tok {
            Tok::Newline | Tok::Eof => Ok(()),
            _ => self.syntax(&t, format!("expected end of line, found {}", t.tok)),
        }
    }

    fn statement(&mut self) -> Result<Statement> {
        let t = self.peek().clone();
        let Tok::Ident(word) = &t.tok else {
            return self.syntax(&t, format!("expected a statement, found {}", t.tok));
        };
        match word.as_str() {
            "sig" => self.sig_decl(),
            "group" => self.group_decl(),
            "size" => self.size_decl(),
            "alg" => self.alg_decl(),
            "iterate" | "mu" | "cata" | "free" | "nu" | "check" | "enumerate" => {
                self.command().map(Statement::Command)
            }
            _ => self.functor_decl(),
        }
    }

    fn arity_list(&mut self) -> Result<Vec<(String, usize)>> {
        let mut ops = Vec::new();
        loop {
            let (name, t) = self.ident()?;
            if ops.iter().any(|(n, _)| n == &name) {
                return self.name_err(&t, format!("`{name}` is listed twice"));
            }
            self.expect_punct(":")?;
            ops.push((name, self.number()?));
            if !self.is_punct("|") {
                return Ok(ops);
            }
            self.pos += 1;
        }
    }

    fn sig_decl(&mut self) -> Result<Statement> {
        self.expect_word("sig")?;
        let (name, t) = self.ident()?;
        self.expect_punct("=")?;
        let ops = self.arity_list()?;
        self.declare(&name, &t, Decl::Sig)?;
        Ok(Statement::Sig { name, ops })
    }

    fn group_decl(&mut self) -> Result<Statement> {
        self.expect_word("group")?;
        let (name, t) = self.ident()?;
        self.expect_punct("=")?;
        let objects = self.arity_list()?;
        let mut arrows = Vec::new();
        if self.is_word("with") {
            self.pos += 1;
            loop {
                let (arrow, _) = self.ident()?;
                self.expect_punct(":")?;
                let src = self.group_object(&objects)?;
                self.expect_punct("->")?;
                let dst = self.group_object(&objects)?;
                self.expect_punct("[")?;
                let mut table = Vec::new();
                while !self.is_punct("]") {
                    table.push(self.number()?);
                }
                self.pos += 1;
                arrows.push(ArrowDecl {
                    name: arrow,
                    src,
                    dst,
                    table,
                });
                if !self.is_punct(",") {
                    break;
                }
                self.pos += 1;
            }
        }
        self.declare(&name, &t, Decl::Group)?;
        Ok(Statement::Group {
            name,
            objects,
            arrows,
        })
    }

    fn group_object(&mut self, objects: &[(String, usize)]) -> Result<String> {
        let (name, t) = self.ident()?;
        if objects.iter().any(|(n, _)| n == &name) {
            Ok(name)
        } else {
            self.name_err(&t, format!("`{name}` is not an object of this group"))
        }
    }

    fn size_decl(&mut self) -> Result<Statement> {
        self.expect_word("size")?;
        let (name, t) = self.ident()?;
        self.expect_punct("=")?;
        let spec = match self.size_ref(false)? {
            SizeRef::Nat => SizeSpec::Nat,
            SizeRef::Plump(s) => SizeSpec::Plump(s),
            SizeRef::Named(_) => unreachable!("named sizes are not accepted here"),
        };
        self.declare(&name, &t, Decl::Size)?;
        Ok(Statement::Size { name, spec })
    }

    fn size_ref(&mut self, allow_named: bool) -> Result<SizeRef> {
        if self.is_word("nat") {
            self.pos += 1;
            return Ok(SizeRef::Nat);
        }
        if self.is_word("plump") {
            self.pos += 1;
            self.expect_punct(":")?;
            return Ok(SizeRef::Plump(self.reference(Decl::Sig)?));
        }
        if allow_named {
            return Ok(SizeRef::Named(self.reference(Decl::Size)?));
        }
        let t = self.peek().clone();
        self.syntax(
            &t,
            format!("expected `nat` or `plump:<signature>`, found {}", t.tok),
        )
    }

    fn alg_decl(&mut self) -> Result<Statement> {
        self.expect_word("alg")?;
        let (name, t) = self.ident()?;
        self.expect_word("for")?;
        let ft = self.peek().clone();
        let functor = self.reference(Decl::Functor {
            arity: 0,
            outputs: 0,
        })?;
        self.require_unary(&functor, &ft)?;
        self.expect_word("on")?;
        let carrier = self.number()?;
        self.expect_punct("=")?;
        self.expect_punct("[")?;
        let mut table = Vec::new();
        while !self.is_punct("]") {
            table.push(self.number()?);
        }
        self.pos += 1;
        self.declare(&name, &t, Decl::Alg)?;
        Ok(Statement::Alg {
            name,
            functor,
            carrier,
            table,
        })
    }

    fn require_unary(&self, name: &str, at: &Token) -> Result<()> {
        match self.decls.get(name) {
            Some(Decl::Functor { arity: 1, outputs: 1 }) => Ok(()),
            Some(Decl::Functor { arity, outputs }) => self.name_err(
                at,
                format!("`{name}` takes {arity} argument(s) and yields {outputs} set(s); a unary functor is needed"),
            ),
            _ => unreachable!("checked by reference"),
        }
    }

    fn command(&mut self) -> Result<Command> {
        let (word, _) = match self.next() {
            Token {
                tok: Tok::Ident(w), ..
            } => (w, ()),
            _ => unreachable!("dispatched on a keyword"),
        };
        let tt = self.peek().clone();
        let (kind, target) = if word == "enumerate" {
            (CommandKind::Enumerate, self.reference(Decl::Sig)?)
        } else {
            let f = self.reference(Decl::Functor {
                arity: 0,
                outputs: 0,
            })?;
            self.require_unary(&f, &tt)?;
            let kind = match word.as_str() {
                "iterate" => CommandKind::Iterate,
                "mu" => CommandKind::Mu,
                "nu" => CommandKind::Nu,
                "check" => CommandKind::Check,
                "cata" => {
                    self.expect_word("with")?;
                    CommandKind::Cata {
                        algebra: self.reference(Decl::Alg)?,
                    }
                }
                "free" => {
                    self.expect_word("on")?;
                    CommandKind::Free { on: self.number()? }
                }
                _ => unreachable!(),
            };
            (kind, f)
        };
        let mut clauses = Clauses::default();
        while let Tok::Ident(w) = &self.peek().tok {
            let t = self.peek().clone();
            let dup = match w.as_str() {
                "size" => {
                    self.pos += 1;
                    clauses.size.replace(self.size_ref(true)?).is_some()
                }
                "budget" => {
                    self.pos += 1;
                    clauses.budget.replace(self.number()?).is_some()
                }
                "depth" => {
                    self.pos += 1;
                    clauses.depth.replace(self.number()?).is_some()
                }
                "at" => {
                    self.pos += 1;
                    clauses.at.replace(self.number()?).is_some()
                }
                other => return self.syntax(&t, format!("unknown clause `{other}`")),
            };
            if dup {
                return self.syntax(&t, "clause given twice");
            }
        }
        Ok(Command {
            kind,
            target,
            clauses,
        })
    }

    fn functor_decl(&mut self) -> Result<Statement> {
        let (name, t) = self.ident()?;
        let params = if self.is_punct("(") {
            self.pos += 1;
            let mut ps = Vec::new();
            loop {
                let (p, pt) = self.ident()?;
                if ps.contains(&p) {
                    return self.name_err(&pt, format!("parameter `{p}` is listed twice"));
                }
                ps.push(p);
                if !self.is_punct(",") {
                    break;
                }
                self.pos += 1;
            }
            self.expect_punct(")")?;
            Some(ps)
        } else {
            None
        };
        self.expect_punct("=")?;
        let scope: Vec<String> = params.clone().unwrap_or_else(|| vec!["X".to_string()]);
        let body = self.expr(&scope)?;
        let decl = Decl::Functor {
            arity: scope.len(),
            outputs: self.outputs(&body),
        };
        self.declare(&name, &t, decl)?;
        Ok(Statement::Functor { name, params, body })
    }

    fn outputs(&self, e: &Expr) -> usize {
        match e {
            Expr::Pair(ps) => ps.iter().map(|p| self.outputs(p)).sum(),
            Expr::Ref(f) | Expr::Apply(f, _) => match self.decls.get(f) {
                Some(Decl::Functor { outputs, .. }) => *outputs,
                _ => 1,
            },
            Expr::Compose(outer, _) => self.outputs(outer),
            _ => 1,
        }
    }

    fn expr(&mut self, scope: &[String]) -> Result<Expr> {
        if self.is_word("mu") {
            self.pos += 1;
            let (var, _) = self.ident()?;
            self.expect_punct(".")?;
            let mut inner = scope.to_vec();
            inner.push(var.clone());
            let body = self.expr(&inner)?;
            return Ok(Expr::Mu(var, Box::new(body)));
        }
        let mut parts = vec![self.product(scope)?];
        while self.is_punct("+") {
            self.pos += 1;
            parts.push(self.product(scope)?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Expr::Sum(parts)
        })
    }

    fn product(&mut self, scope: &[String]) -> Result<Expr> {
        let mut parts = vec![self.power(scope)?];
        while self.is_punct("*") {
            self.pos += 1;
            parts.push(self.power(scope)?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Expr::Product(parts)
        })
    }

    fn power(&mut self, scope: &[String]) -> Result<Expr> {
        let base = self.atom(scope)?;
        if self.is_punct("^") {
            self.pos += 1;
            let n = self.number()?;
            return Ok(Expr::Power(Box::new(base), n));
        }
        Ok(base)
    }

    fn atom(&mut self, scope: &[String]) -> Result<Expr> {
        let t = self.next();
        match &t.tok {
            Tok::Num(n) => Ok(Expr::Const(*n)),
            Tok::Punct("(") => {
                let e = self.expr(scope)?;
                self.expect_punct(")")?;
                Ok(e)
            }
            Tok::Punct("<") => {
                let mut parts = vec![self.expr(scope)?];
                while self.is_punct(",") {
                    self.pos += 1;
                    parts.push(self.expr(scope)?);
                }
                self.expect_punct(">")?;
                Ok(Expr::Pair(parts))
            }
            Tok::Ident(w) if w == "sym" || w == "poly" => {
                self.expect_punct("<")?;
                let name = if w == "sym" {
                    self.reference(Decl::Group)?
                } else {
                    self.reference(Decl::Sig)?
                };
                self.expect_punct(">")?;
                let at = self.peek().clone();
                let arg = self.power_arg(scope)?;
                if self.outputs(&arg) != 1 {
                    return self.name_err(&at, "a container takes a single set");
                }
                Ok(if w == "sym" {
                    Expr::Sym(name, Box::new(arg))
                } else {
                    Expr::Poly(name, Box::new(arg))
                })
            }
            Tok::Ident(w) if w == "compose" => {
                self.expect_punct("(")?;
                let outer_vars: Vec<String> = COMPOSE_VARS.iter().map(|v| v.to_string()).collect();
                let outer = self.expr(&outer_vars)?;
                self.expect_punct(",")?;
                let inner = self.expr(scope)?;
                self.expect_punct(")")?;
                let width = self.outputs(&inner);
                let mut used = Vec::new();
                vars_of(&outer, &mut Vec::new(), &mut used);
                if let Some(v) = used
                    .iter()
                    .find(|v| !COMPOSE_VARS[..width.min(3)].contains(&v.as_str()))
                {
                    return self.name_err(
                        &t,
                        format!("`{v}` is not bound: the inner expression yields {width} set(s)"),
                    );
                }
                Ok(Expr::Compose(Box::new(outer), Box::new(inner)))
            }
            Tok::Ident(w) if KEYWORDS.contains(&w.as_str()) => {
                self.syntax(&t, format!("`{w}` is a keyword"))
            }
            Tok::Ident(name) => {
                if scope.contains(name) && !self.is_punct("(") {
                    return Ok(Expr::Var(name.clone()));
                }
                match self.decls.get(name).cloned() {
                    Some(Decl::Functor { arity, .. }) => {
                        if self.is_punct("(") {
                            self.pos += 1;
                            let mut args = vec![self.expr(scope)?];
                            while self.is_punct(",") {
                                self.pos += 1;
                                args.push(self.expr(scope)?);
                            }
                            self.expect_punct(")")?;
                            let given: usize = args.iter().map(|a| self.outputs(a)).sum();
                            if given != arity {
                                return self.name_err(
                                    &t,
                                    format!("`{name}` takes {arity} argument(s), given {given}"),
                                );
                            }
                            Ok(Expr::Apply(name.clone(), args))
                        } else if arity == scope.len() {
                            Ok(Expr::Ref(name.clone()))
                        } else {
                            self.name_err(
                                &t,
                                format!("`{name}` takes {arity} argument(s) here but {} are in scope; apply it explicitly", scope.len()),
                            )
                        }
                    }
                    Some(d) => self.name_err(
                        &t,
                        format!("`{name}` is {}, expected a functor or variable", d.what()),
                    ),
                    None => self.name_err(&t, format!("`{name}` is not declared")),
                }
            }
            _ => self.syntax(&t, format!("expected an expression, found {}", t.tok)),
        }
    }

    /// The argument of `sym<…>` / `poly<…>`: a single atom.
    fn power_arg(&mut self, scope: &[String]) -> Result<Expr> {
        self.atom(scope)
    }
}

/// Free variables of an expression, in order of first occurrence.
fn vars_of(e: &Expr, bound: &mut Vec<String>, out: &mut Vec<String>) {
    match e {
        Expr::Var(v) => {
            if !bound.contains(v) && !out.contains(v) {
                out.push(v.clone());
            }
        }
        Expr::Const(_) | Expr::Ref(_) => {}
        Expr::Apply(_, args) | Expr::Sum(args) | Expr::Product(args) | Expr::Pair(args) => {
            for a in args {
                vars_of(a, bound, out);
            }
        }
        Expr::Power(b, _) | Expr::Sym(_, b) | Expr::Poly(_, b) => vars_of(b, bound, out),
        Expr::Mu(v, b) => {
            bound.push(v.clone());
            vars_of(b, bound, out);
            bound.pop();
        }
        // the outer part has its own scope
        Expr::Compose(_, inner) => vars_of(inner, bound, out),
    }
}

// ---- printing ----

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Mu,
    Sum,
    Product,
    Power,
    Atom,
}

fn prec(e: &Expr) -> Prec {
    match e {
        Expr::Mu(..) => Prec::Mu,
        Expr::Sum(_) => Prec::Sum,
        Expr::Product(_) => Prec::Product,
        Expr::Power(..) => Prec::Power,
        _ => Prec::Atom,
    }
}

/// Writes `e`, parenthesized unless it binds tighter than `min`.
fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: Prec) -> fmt::Result {
    if prec(e) >= min {
        write!(f, "{e}")
    } else {
        write!(f, "({e})")
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, es: &[Expr], sep: &str, min: Prec) -> fmt::Result {
    for (k, e) in es.iter().enumerate() {
        if k > 0 {
            write!(f, "{sep}")?;
        }
        write_at(f, e, min)?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(n) => write!(f, "{n}"),
            Expr::Var(v) | Expr::Ref(v) => write!(f, "{v}"),
            Expr::Apply(g, args) => {
                write!(f, "{g}(")?;
                write_list(f, args, ", ", Prec::Mu)?;
                write!(f, ")")
            }
            // nested sums and products are kept apart by parentheses so that
            // printing and re-parsing gives back the same tree
            Expr::Sum(ps) => write_list(f, ps, " + ", Prec::Product),
            Expr::Product(ps) => write_list(f, ps, "*", Prec::Power),
            Expr::Power(b, n) => {
                write_at(f, b, Prec::Atom)?;
                write!(f, "^{n}")
            }
            Expr::Sym(g, a) => {
                write!(f, "sym<{g}> ")?;
                write_at(f, a, Prec::Atom)
            }
            Expr::Poly(s, a) => {
                write!(f, "poly<{s}> ")?;
                write_at(f, a, Prec::Atom)
            }
            Expr::Mu(v, b) => write!(f, "mu {v}. {b}"),
            Expr::Compose(o, i) => write!(f, "compose({o}, {i})"),
            Expr::Pair(ps) => {
                write!(f, "<")?;
                write_list(f, ps, ", ", Prec::Mu)?;
                write!(f, ">")
            }
        }
    }
}

fn write_arities(f: &mut fmt::Formatter<'_>, ops: &[(String, usize)]) -> fmt::Result {
    for (k, (n, a)) in ops.iter().enumerate() {
        if k > 0 {
            write!(f, " | ")?;
        }
        write!(f, "{n}:{a}")?;
    }
    Ok(())
}

fn write_table(f: &mut fmt::Formatter<'_>, table: &[usize]) -> fmt::Result {
    let cells: Vec<String> = table.iter().map(usize::to_string).collect();
    write!(f, "[{}]", cells.join(" "))
}

impl fmt::Display for SizeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SizeRef::Nat => write!(f, "nat"),
            SizeRef::Plump(s) => write!(f, "plump:{s}"),
            SizeRef::Named(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind.keyword(), self.target)?;
        match &self.kind {
            CommandKind::Cata { algebra } => write!(f, " with {algebra}")?,
            CommandKind::Free { on } => write!(f, " on {on}")?,
            _ => {}
        }
        let c = &self.clauses;
        if let Some(s) = &c.size {
            write!(f, " size {s}")?;
        }
        if let Some(b) = c.budget {
            write!(f, " budget {b}")?;
        }
        if let Some(d) = c.depth {
            write!(f, " depth {d}")?;
        }
        if let Some(a) = c.at {
            write!(f, " at {a}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Sig { name, ops } => {
                write!(f, "sig {name} = ")?;
                write_arities(f, ops)
            }
            Statement::Group {
                name,
                objects,
                arrows,
            } => {
                write!(f, "group {name} = ")?;
                write_arities(f, objects)?;
                for (k, a) in arrows.iter().enumerate() {
                    write!(
                        f,
                        "{}{}: {} -> {} ",
                        if k == 0 { " with " } else { ", " },
                        a.name,
                        a.src,
                        a.dst
                    )?;
                    write_table(f, &a.table)?;
                }
                Ok(())
            }
            Statement::Size { name, spec } => match spec {
                SizeSpec::Nat => write!(f, "size {name} = nat"),
                SizeSpec::Plump(s) => write!(f, "size {name} = plump:{s}"),
            },
            Statement::Functor { name, params, body } => {
                write!(f, "{name}")?;
                if let Some(ps) = params {
                    write!(f, "({})", ps.join(", "))?;
                }
                write!(f, " = {body}")
            }
            Statement::Alg {
                name,
                functor,
                carrier,
                table,
            } => {
                write!(f, "alg {name} for {functor} on {carrier} = ")?;
                write_table(f, table)
            }
            Statement::Command(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
