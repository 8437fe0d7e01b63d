use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{GroupError, Matrix, Word};

/// A finite presentation `<names | relators>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self, GroupError> {
        let mut seen = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if !is_name(n) {
                return Err(GroupError::BadGeneratorName(n.clone()));
            }
            if seen.insert(n.as_str(), i).is_some() {
                return Err(GroupError::DuplicateGenerator(n.clone()));
            }
        }
        if let Some(g) = relators.iter().filter_map(Word::max_generator).max() {
            if g >= names.len() {
                return Err(GroupError::GeneratorOutOfRange { index: g, count: names.len() });
            }
        }
        Ok(Presentation { names, relators })
    }

    /// Builds a presentation from generator names given as `&str`.
    pub fn with_names(names: &[&str], relators: Vec<Word>) -> Result<Self, GroupError> {
        Presentation::new(names.iter().map(|s| s.to_string()).collect(), relators)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Adds relators, giving a presentation of the quotient.
    pub fn with_relators<T: IntoIterator<Item = Word>>(&self, extra: T) -> Self {
        let mut p = self.clone();
        p.relators.extend(extra);
        p
    }

    /// Row `i` holds the exponent sums of relator `i`.
    pub fn exponent_matrix(&self) -> Matrix<i64> {
        let g = self.names.len();
        let rows = self
            .relators
            .iter()
            .map(|r| (0..g).map(|j| r.exponent_sum(j)).collect())
            .collect();
        Matrix::from_rows(rows, g)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.display(&self.names).to_string()
    }

    /// Parses one word over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word, GroupError> {
        let index = self.name_index();
        let toks = tokenize(text, 1)?;
        let mut p = Parser { toks: &toks, pos: 0, index: &index, line: 1 };
        let w = p.word()?;
        p.expect_end()?;
        Ok(w)
    }

    fn name_index(&self) -> HashMap<&str, usize> {
        self.names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators: {}", self.names.join(" "))?;
        for r in &self.relators {
            writeln!(f, "{}", r.display(&self.names))?;
        }
        Ok(())
    }
}

/// Text grammar:
///
/// ```text
/// # comment
/// generators: t x z
/// x^3 = (x^5 z^-1)^3 = z^3
/// t x t^-1 = x^-1 z x^-4 ; t z t^-1 x
/// ```
///
/// The first non-comment line lists the generators (the `generators:` prefix
/// is optional). Every later line holds relators separated by `;`. A relator
/// is a word or a chain `w1 = w2 = ...`, read as `w1 w2^-1`, `w2 w3^-1`, ...
/// Words are juxtaposed factors `atom` or `atom^k`, where an atom is a
/// generator, `1`, or a parenthesised word. `*` between factors is allowed.
impl FromStr for Presentation {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut names: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        for (ln, raw) in s.lines().enumerate() {
            let line_no = ln + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some(names) = names.as_ref() else {
                let list = line.strip_prefix("generators:").unwrap_or(line);
                let parsed: Vec<String> = list
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(str::to_string)
                    .collect();
                if parsed.is_empty() {
                    return Err(GroupError::Parse { line: line_no, message: "empty generator list".into() });
                }
                if let Some(bad) = parsed.iter().find(|n| !is_name(n)) {
                    return Err(GroupError::Parse {
                        line: line_no,
                        message: format!("invalid generator name '{bad}'"),
                    });
                }
                names = Some(parsed);
                continue;
            };
            let index: HashMap<&str, usize> =
                names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
            for piece in line.split(';').map(str::trim).filter(|p| !p.is_empty()) {
                let toks = tokenize(piece, line_no)?;
                let mut p = Parser { toks: &toks, pos: 0, index: &index, line: line_no };
                let mut sides = vec![p.word()?];
                while p.eat(&Token::Equals) {
                    sides.push(p.word()?);
                }
                p.expect_end()?;
                if sides.len() == 1 {
                    relators.push(sides.pop().unwrap());
                } else {
                    relators.extend(sides.windows(2).map(|w| w[0].equate(&w[1])));
                }
            }
        }
        let names = names.ok_or(GroupError::Parse { line: 0, message: "no generator line".into() })?;
        Presentation::new(names, relators)
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Name(String),
    Int(i64),
    Caret,
    Open,
    Close,
    Equals,
}

fn tokenize(s: &str, line: usize) -> Result<Vec<Token>, GroupError> {
    let err = |message: String| GroupError::Parse { line, message };
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() || c == '*' => i += 1,
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::Open);
                i += 1;
            }
            ')' => {
                out.push(Token::Close);
                i += 1;
            }
            '=' => {
                out.push(Token::Equals);
                i += 1;
            }
            '-' | '+' | '0'..='9' => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let v = text.parse::<i64>().map_err(|_| err(format!("bad integer '{text}'")))?;
                out.push(Token::Int(v));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                out.push(Token::Name(chars[start..i].iter().collect()));
            }
            other => return Err(err(format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    index: &'a HashMap<&'a str, usize>,
    line: usize,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> GroupError {
        GroupError::Parse { line: self.line, message: message.into() }
    }

    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_end(&self) -> Result<(), GroupError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
        }
    }

    fn word(&mut self) -> Result<Word, GroupError> {
        let mut w = Word::identity();
        let mut any = false;
        while matches!(self.peek(), Some(Token::Name(_) | Token::Open | Token::Int(_))) {
            let atom = self.atom()?;
            let f = if self.eat(&Token::Caret) {
                match self.peek().cloned() {
                    Some(Token::Int(k)) => {
                        self.pos += 1;
                        atom.pow(k)
                    }
                    _ => return Err(self.err("expected integer exponent after '^'")),
                }
            } else {
                atom
            };
            w = w.mul(&f);
            any = true;
        }
        if !any {
            return Err(self.err("expected a word"));
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Word, GroupError> {
        match self.peek().cloned() {
            Some(Token::Name(n)) => {
                self.pos += 1;
                self.index
                    .get(n.as_str())
                    .map(|&g| Word::generator(g))
                    .ok_or(GroupError::UnknownGenerator { line: self.line, name: n })
            }
            Some(Token::Int(1)) => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(Token::Open) => {
                self.pos += 1;
                let w = self.word()?;
                if !self.eat(&Token::Close) {
                    return Err(self.err("missing ')'"));
                }
                Ok(w)
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_chains_and_groups() {
        let p: Presentation = "# triangle group\ngenerators: a b\na^2 ; b^3\n(a b)^7 = 1\na b = b a = 1\n"
            .parse()
            .unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relators().len(), 5);
        assert_eq!(p.relators()[2], Word::from_syllables([(0, 1), (1, 1)]).pow(7));
        assert_eq!(p.relators()[3], Word::from_syllables([(0, 1), (1, 1), (0, -1), (1, -1)]));
        assert_eq!(p.relators()[4], Word::from_syllables([(1, 1), (0, 1)]));
    }

    #[test]
    fn round_trip() {
        let text = "x y z\nx^3 y^-1 z^-2\nx y x^-1 y^-1\n1\n";
        let p: Presentation = text.parse().unwrap();
        let back: Presentation = p.to_string().parse().unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn exponent_matrix_rows() {
        let p: Presentation = "x y\nx^3 y^-1 x\nx y x^-1 y^-1".parse().unwrap();
        let m = p.exponent_matrix();
        assert_eq!(m.row(0), &[4, -1]);
        assert_eq!(m.row(1), &[0, 0]);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            "a\nb".parse::<Presentation>(),
            Err(GroupError::UnknownGenerator { line: 2, .. })
        ));
        assert!(matches!("a a".parse::<Presentation>(), Err(GroupError::DuplicateGenerator(_))));
        assert!(matches!("a\na^".parse::<Presentation>(), Err(GroupError::Parse { .. })));
        assert!(matches!("a\n(a".parse::<Presentation>(), Err(GroupError::Parse { .. })));
        assert!("# nothing".parse::<Presentation>().is_err());
    }
}
