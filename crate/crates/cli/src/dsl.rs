//! Parser for the diagram expression language.
//!
//! ```text
//! morphism := coef? term { "+" coef? term }
//! term     := factor { ";" factor }      leftmost applied first
//! factor   := primary { "*" primary }    horizontal juxtaposition
//! primary  := atom | "(" morphism ")"
//! atom     := id[word] | m[a,b->c] | s[c->a,b] | u[path] | d[path]
//!           | funnel[word] | down[c] | up[c]
//! coef     := "{" scalar literal "}"
//! ```
//!
//! Labels inside brackets may contain any character except `,`, `]` and
//! whitespace; the strand `star` is the star object.

use std::fmt;

use dgrams_core::diagram::{d_path, funnel_cn, u_path, Cell, Diagram, DiagramError, Morphism, ObjectWord, Strand};
use dgrams_core::exactfield::parse_scalar;
use dgrams_core::repgraph::{Label, Path};
use thiserror::Error;

/// 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {msg}")]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

/// What the atoms are interpreted against.
#[derive(Clone, Copy, Debug)]
pub struct DslContext {
    /// Conductor of the coefficient field.
    pub conductor: u32,
    /// `Some(n)` in `C_n`, where `funnel[...]` is available.
    pub cyclic: Option<u32>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Plus,
    Semi,
    Star,
    LParen,
    RParen,
    Coef(String),
    Atom { name: String, body: String },
    End,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            pos: Pos { line: 1, col: 1 },
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    fn until(&mut self, close: char, start: Pos) -> Result<String, ParseError> {
        let mut out = String::new();
        loop {
            match self.bump() {
                Some(c) if c == close => return Ok(out),
                Some(c) => out.push(c),
                None => {
                    return Err(ParseError {
                        pos: start,
                        msg: format!("missing closing {close:?}"),
                    })
                }
            }
        }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, Pos)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
                self.bump();
            }
            let pos = self.pos;
            let Some(&c) = self.chars.peek() else {
                out.push((Tok::End, pos));
                return Ok(out);
            };
            let tok = match c {
                '+' | ';' | '*' | '(' | ')' => {
                    self.bump();
                    match c {
                        '+' => Tok::Plus,
                        ';' => Tok::Semi,
                        '*' => Tok::Star,
                        '(' => Tok::LParen,
                        _ => Tok::RParen,
                    }
                }
                '{' => {
                    self.bump();
                    Tok::Coef(self.until('}', pos)?)
                }
                c if c.is_ascii_alphabetic() => {
                    let mut name = String::new();
                    while self
                        .chars
                        .peek()
                        .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
                    {
                        name.push(self.bump().unwrap());
                    }
                    if self.chars.peek() != Some(&'[') {
                        return Err(ParseError {
                            pos,
                            msg: format!("expected '[' after {name:?}"),
                        });
                    }
                    self.bump();
                    let body = self.until(']', pos)?;
                    Tok::Atom { name, body }
                }
                other => {
                    return Err(ParseError {
                        pos,
                        msg: format!("unexpected character {other:?}"),
                    })
                }
            };
            out.push((tok, pos));
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    ctx: DslContext,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, pos: Pos, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos, msg: msg.into() })
    }

    fn lift(pos: Pos) -> impl Fn(DiagramError) -> ParseError {
        move |e| ParseError {
            pos,
            msg: e.to_string(),
        }
    }

    fn morphism(&mut self) -> Result<Morphism, ParseError> {
        let mut acc = self.scaled_term()?;
        while *self.peek() == Tok::Plus {
            let (_, pos) = self.next();
            let rhs = self.scaled_term()?;
            acc = acc.add(&rhs).map_err(Self::lift(pos))?;
        }
        Ok(acc)
    }

    fn scaled_term(&mut self) -> Result<Morphism, ParseError> {
        let coef = match self.peek().clone() {
            Tok::Coef(text) => {
                let (_, pos) = self.next();
                let c = parse_scalar(&text, self.ctx.conductor).map_err(|e| ParseError {
                    pos,
                    msg: format!("bad coefficient {text:?}: {e}"),
                })?;
                Some(c)
            }
            _ => None,
        };
        let t = self.term()?;
        Ok(match coef {
            Some(c) => t.scale(&c),
            None => t,
        })
    }

    fn term(&mut self) -> Result<Morphism, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Semi {
            let (_, pos) = self.next();
            let next = self.factor()?;
            acc = next.compose(&acc).map_err(Self::lift(pos))?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Morphism, ParseError> {
        let mut acc = self.primary()?;
        while *self.peek() == Tok::Star {
            self.next();
            let next = self.primary()?;
            acc = acc.tensor(&next);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Morphism, ParseError> {
        let (tok, pos) = self.next();
        match tok {
            Tok::LParen => {
                let m = self.morphism()?;
                match self.next() {
                    (Tok::RParen, _) => Ok(m),
                    (_, p) => self.err(p, "expected ')'"),
                }
            }
            Tok::Atom { name, body } => self.atom(&name, &body, pos),
            Tok::End => self.err(pos, "unexpected end of input"),
            other => self.err(pos, format!("unexpected {}", describe(&other))),
        }
    }

    fn atom(&self, name: &str, body: &str, pos: Pos) -> Result<Morphism, ParseError> {
        let m = self.ctx.conductor;
        let one = |d: Diagram| Ok(Morphism::from_diagram(d, m));
        match name {
            "id" => Ok(Morphism::identity(word(body, pos)?, m)),
            "m" => {
                let (ins, out) = arrow(body, pos)?;
                let ins = list(ins, pos)?;
                let [left, right] = two(ins, pos, "m[a,b->c]")?;
                one(Diagram::cell(Cell::merge(left, right, single(out, pos)?)))
            }
            "s" => {
                let (input, outs) = arrow(body, pos)?;
                let [left, right] = two(list(outs, pos)?, pos, "s[c->a,b]")?;
                one(Diagram::cell(Cell::split(single(input, pos)?, left, right)))
            }
            "u" => one(u_path(&path(body, pos)?).map_err(Self::lift(pos))?),
            "d" => one(d_path(&path(body, pos)?).map_err(Self::lift(pos))?),
            "funnel" => match self.ctx.cyclic {
                Some(n) => one(funnel_cn(&word(body, pos)?, n).map_err(Self::lift(pos))?),
                None => self.err(pos, "funnel[...] needs a cyclic-group context (--cn)"),
            },
            "down" => one(Diagram::cell(Cell::StarDown(label(body, pos)?))),
            "up" => one(Diagram::cell(Cell::StarUp(label(body, pos)?))),
            other => self.err(pos, format!("unknown generator {other:?}")),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Plus => "'+'".into(),
        Tok::Semi => "';'".into(),
        Tok::Star => "'*'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Coef(c) => format!("coefficient {{{c}}}"),
        Tok::Atom { name, body } => format!("{name}[{body}]"),
        Tok::End => "end of input".into(),
    }
}

fn bad(pos: Pos, msg: impl Into<String>) -> ParseError {
    ParseError { pos, msg: msg.into() }
}

fn label(text: &str, pos: Pos) -> Result<Label, ParseError> {
    let t = text.trim();
    if t.is_empty() || t.contains(char::is_whitespace) || t.contains(',') {
        return Err(bad(pos, format!("bad label {text:?}")));
    }
    Ok(Label::new(t))
}

fn strand(text: &str, pos: Pos) -> Result<Strand, ParseError> {
    if text.trim() == "star" {
        Ok(Strand::Star)
    } else {
        Ok(Strand::Node(label(text, pos)?))
    }
}

fn list(text: &str, pos: Pos) -> Result<Vec<Strand>, ParseError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|s| strand(s, pos)).collect()
}

fn single(text: &str, pos: Pos) -> Result<Strand, ParseError> {
    let v = list(text, pos)?;
    match <[Strand; 1]>::try_from(v) {
        Ok([s]) => Ok(s),
        Err(v) => Err(bad(pos, format!("expected one strand, found {}", v.len()))),
    }
}

fn two(v: Vec<Strand>, pos: Pos, shape: &str) -> Result<[Strand; 2], ParseError> {
    let n = v.len();
    <[Strand; 2]>::try_from(v).map_err(|_| bad(pos, format!("expected {shape}, found {n} strands")))
}

fn arrow(body: &str, pos: Pos) -> Result<(&str, &str), ParseError> {
    body.split_once("->")
        .ok_or_else(|| bad(pos, format!("missing '->' in {body:?}")))
}

fn word(body: &str, pos: Pos) -> Result<ObjectWord, ParseError> {
    Ok(ObjectWord(list(body, pos)?))
}

fn path(body: &str, pos: Pos) -> Result<Path, ParseError> {
    let labels = body.split(',').map(|s| label(s, pos)).collect::<Result<Vec<_>, _>>()?;
    Ok(Path { nodes: labels })
}

/// Parses a comma-separated object word such as `1,2,star`; the empty
/// string is the unit word.
pub fn parse_word(text: &str) -> Result<ObjectWord, ParseError> {
    word(text, Pos { line: 1, col: 1 })
}

/// Parses a morphism expression.
pub fn parse_dsl(text: &str, ctx: DslContext) -> Result<Morphism, ParseError> {
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser { toks, at: 0, ctx };
    let m = p.morphism()?;
    match p.peek() {
        Tok::End => Ok(m),
        other => {
            let msg = format!("unexpected {} after a complete expression", describe(other));
            p.err(p.pos(), msg)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dgrams_core::Scalar;

    const T: DslContext = DslContext {
        conductor: 24,
        cyclic: None,
    };
    const C5: DslContext = DslContext {
        conductor: 20,
        cyclic: Some(5),
    };

    #[test]
    fn single_merge() {
        let m = parse_dsl("m[1,1->2]", T).unwrap();
        let (d, c) = m.single().unwrap();
        assert!(c.is_one());
        assert_eq!(d.cell_count(), 1);
        assert_eq!(m.source(), &ObjectWord::from_labels(&["1", "1"]));
        assert_eq!(m.target(), &ObjectWord::from_labels(&["2"]));
    }

    #[test]
    fn bubble_reads_left_to_right() {
        let m = parse_dsl("s[3->1,2] ; m[1,2->3]", T).unwrap();
        assert_eq!(m.source(), &ObjectWord::from_labels(&["3"]));
        assert_eq!(m.target(), &ObjectWord::from_labels(&["3"]));
        assert_eq!(m.single().unwrap().0.slices().len(), 2);
    }

    #[test]
    fn long_path() {
        let m = parse_dsl("u[1,0,1,2,3]", T).unwrap();
        assert_eq!(m.source().len(), 5);
        assert_eq!(m.target(), &ObjectWord::from_labels(&["3"]));
    }

    #[test]
    fn precedence() {
        let m = parse_dsl("id[1] * m[1,1->2] ; m[1,2->3]", C5).unwrap();
        assert_eq!(m.source(), &ObjectWord::from_labels(&["1", "1", "1"]));
        assert_eq!(m.target(), &ObjectWord::from_labels(&["3"]));
        let sum = parse_dsl("id[1] * m[1,1->2] ; m[1,2->3] + {2} id[1] * m[1,1->2] ; m[1,2->3]", C5).unwrap();
        assert_eq!(sum.len(), 1);
        assert_eq!(sum.single().unwrap().1, &Scalar::from_int(20, 3));
    }

    #[test]
    fn coefficients_and_parentheses() {
        let m = parse_dsl("{1/2 + 1/2 z^6} (id[2] + s[2->1,1] ; m[1,1->2])", T).unwrap();
        assert_eq!(m.len(), 2);
        assert!(m.terms().all(|(_, c)| c == &parse_scalar("1/2 + 1/2 z^6", 24).unwrap()));
        let e = parse_dsl("(id[2] + m[1,1->2])", T).unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 8 });
    }

    #[test]
    fn round_trip() {
        let texts = [
            "m[1,1->2]",
            "s[3->1,2] ; m[1,2->3]",
            "u[1,0,1,2,3]",
            "d[1,2,3',2]",
            "{-1/3 z^2} m[1,1->2] * id[1] + {z} id[1] * m[1,1->2] ; id[1] * s[2->1,1] ; m[1,1->2] * id[1]",
            "id[]",
        ];
        for text in texts {
            let m = parse_dsl(text, T).unwrap();
            let again = parse_dsl(&m.to_dsl(), T).unwrap();
            assert_eq!(again, m, "{text} -> {}", m.to_dsl());
        }
        let f = parse_dsl("funnel[1,2,4]", C5).unwrap();
        assert_eq!(parse_dsl(&f.to_dsl(), C5).unwrap(), f);
    }

    #[test]
    fn star_cells() {
        let m = parse_dsl("down[1] ; up[1]", T).unwrap();
        assert_eq!(m.source(), &ObjectWord(vec![Strand::Star]));
        assert_eq!(m.target(), &ObjectWord(vec![Strand::Star]));
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_dsl("m[1,1->2] ;\n  q[1]", T).unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 3 });
        let e = parse_dsl("m[1,1->2", T).unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 1 });
        let e = parse_dsl("m[1,1->2] )", T).unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 11 });
        let e = parse_dsl("m[1,1->2] ; m[1,1->2]", T).unwrap_err();
        assert_eq!(e.pos.col, 11);
        let e = parse_dsl("funnel[1,2]", T).unwrap_err();
        assert!(e.msg.contains("--cn"));
        let e = parse_dsl("{1/0} id[1]", T).unwrap_err();
        assert!(e.msg.contains("coefficient"));
        assert!(parse_dsl("m[1->2]", T).is_err());
        assert!(parse_dsl("", T).is_err());
    }
}
