use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::ShelahError;

/// An atom of the hierarchy: a base atom, or the triple `(n, u, i)`.
///
/// A base atom has level 0; `(n, u, i)` has level `n + 1`, so it belongs to
/// `A_{n+1} ∖ A_n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ShelahAtom {
    Base(u32),
    Node { perm: ShelahPerm, tag: u8 },
}

/// A finite-support permutation of `A_n`, kept as its sorted non-trivial
/// `(atom, image)` pairs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShelahPerm {
    level: u32,
    pairs: Vec<(ShelahAtom, ShelahAtom)>,
}

impl ShelahAtom {
    pub fn node(perm: ShelahPerm, tag: u8) -> Result<Self, ShelahError> {
        if tag > 2 {
            return Err(ShelahError::BadTag(tag));
        }
        Ok(ShelahAtom::Node { perm, tag })
    }

    pub fn level(&self) -> u32 {
        match self {
            ShelahAtom::Base(_) => 0,
            ShelahAtom::Node { perm, .. } => perm.level + 1,
        }
    }

    /// The three atoms `(n, u, j)`, `j < 3`, sharing this atom's `(n, u)`.
    pub fn siblings(&self) -> Vec<ShelahAtom> {
        match self {
            ShelahAtom::Base(_) => vec![self.clone()],
            ShelahAtom::Node { perm, .. } => (0..3)
                .map(|tag| ShelahAtom::Node {
                    perm: perm.clone(),
                    tag,
                })
                .collect(),
        }
    }

    pub fn with_tag(&self, tag: u8) -> Option<ShelahAtom> {
        match self {
            ShelahAtom::Base(_) => None,
            ShelahAtom::Node { perm, .. } => Some(ShelahAtom::Node {
                perm: perm.clone(),
                tag,
            }),
        }
    }

    /// Largest base id occurring anywhere inside the atom.
    pub fn max_base(&self) -> Option<u32> {
        match self {
            ShelahAtom::Base(id) => Some(*id),
            ShelahAtom::Node { perm, .. } => {
                perm.pairs.iter().filter_map(|(a, _)| a.max_base()).max()
            }
        }
    }
}

impl ShelahPerm {
    pub fn identity(level: u32) -> Self {
        ShelahPerm {
            level,
            pairs: Vec::new(),
        }
    }

    /// Drops fixed points, sorts, and checks bijectivity on the support and
    /// that every atom has level at most `level`.
    pub fn new(level: u32, pairs: Vec<(ShelahAtom, ShelahAtom)>) -> Result<Self, ShelahError> {
        let mut pairs: Vec<_> = pairs.into_iter().filter(|(a, b)| a != b).collect();
        pairs.sort();
        let dom: BTreeSet<&ShelahAtom> = pairs.iter().map(|(a, _)| a).collect();
        let ran: BTreeSet<&ShelahAtom> = pairs.iter().map(|(_, b)| b).collect();
        if dom.len() != pairs.len() || dom != ran {
            return Err(ShelahError::BadPerm(format!(
                "pairs do not form a permutation of their support at level {level}"
            )));
        }
        if let Some(a) = dom.iter().find(|a| a.level() > level) {
            return Err(ShelahError::LevelTooHigh {
                atom: a.to_string(),
                level,
            });
        }
        Ok(ShelahPerm { level, pairs })
    }

    /// The cycle `t(0) -> t(1) -> .. -> t(0)` at the given level.
    pub fn cycle(level: u32, t: &[ShelahAtom]) -> Result<Self, ShelahError> {
        let pairs = t
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), t[(i + 1) % t.len()].clone()))
            .collect();
        Self::new(level, pairs)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn pairs(&self) -> &[(ShelahAtom, ShelahAtom)] {
        &self.pairs
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn mov(&self) -> impl Iterator<Item = &ShelahAtom> {
        self.pairs.iter().map(|(a, _)| a)
    }

    pub fn apply(&self, x: &ShelahAtom) -> ShelahAtom {
        match self.pairs.binary_search_by(|(a, _)| a.cmp(x)) {
            Ok(i) => self.pairs[i].1.clone(),
            Err(_) => x.clone(),
        }
    }

    /// `self ∘ other` on the larger of the two levels.
    pub fn compose(&self, other: &ShelahPerm) -> Result<ShelahPerm, ShelahError> {
        let support: BTreeSet<&ShelahAtom> = self.mov().chain(other.mov()).collect();
        let pairs = support
            .into_iter()
            .map(|a| (a.clone(), self.apply(&other.apply(a))))
            .collect();
        Self::new(self.level.max(other.level), pairs)
    }

    pub fn inverse(&self) -> ShelahPerm {
        let mut pairs: Vec<_> = self
            .pairs
            .iter()
            .map(|(a, b)| (b.clone(), a.clone()))
            .collect();
        pairs.sort();
        ShelahPerm {
            level: self.level,
            pairs,
        }
    }
}

impl fmt::Display for ShelahAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShelahAtom::Base(id) => write!(f, "(base {id})"),
            ShelahAtom::Node { perm, tag } => write!(f, "(node {} {perm} {tag})", perm.level),
        }
    }
}

impl fmt::Display for ShelahPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({a}→{b})")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for ShelahAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Debug for ShelahPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self, self.level)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Arrow,
    Word(String),
}

fn tokenize(s: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut Vec<Token>| {
        if !word.is_empty() {
            out.push(Token::Word(std::mem::take(word)));
        }
    };
    for c in s.chars() {
        match c {
            '(' | ')' | '→' => {
                flush(&mut word, &mut out);
                out.push(match c {
                    '(' => Token::Open,
                    ')' => Token::Close,
                    _ => Token::Arrow,
                });
            }
            c if c.is_whitespace() => flush(&mut word, &mut out),
            c => word.push(c),
        }
    }
    flush(&mut word, &mut out);
    out
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn next(&mut self) -> Result<Token, ShelahError> {
        let t = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| ShelahError::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, t: Token) -> Result<(), ShelahError> {
        let got = self.next()?;
        if got == t {
            Ok(())
        } else {
            Err(ShelahError::Parse(format!("expected {t:?}, found {got:?}")))
        }
    }

    fn number<T: FromStr>(&mut self) -> Result<T, ShelahError> {
        match self.next()? {
            Token::Word(w) => w
                .parse()
                .map_err(|_| ShelahError::Parse(format!("bad number {w:?}"))),
            t => Err(ShelahError::Parse(format!(
                "expected a number, found {t:?}"
            ))),
        }
    }

    fn atom(&mut self) -> Result<ShelahAtom, ShelahError> {
        self.expect(Token::Open)?;
        let atom = match self.next()? {
            Token::Word(w) if w == "base" => ShelahAtom::Base(self.number()?),
            Token::Word(w) if w == "node" => {
                let level = self.number()?;
                self.expect(Token::Open)?;
                let mut pairs = Vec::new();
                while self.tokens.get(self.pos) == Some(&Token::Open) {
                    self.pos += 1;
                    let a = self.atom()?;
                    self.expect(Token::Arrow)?;
                    let b = self.atom()?;
                    self.expect(Token::Close)?;
                    pairs.push((a, b));
                }
                self.expect(Token::Close)?;
                let tag = self.number()?;
                ShelahAtom::node(ShelahPerm::new(level, pairs)?, tag)?
            }
            t => return Err(ShelahError::Parse(format!("unexpected {t:?}"))),
        };
        self.expect(Token::Close)?;
        Ok(atom)
    }
}

impl FromStr for ShelahAtom {
    type Err = ShelahError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            tokens: tokenize(s),
            pos: 0,
        };
        let atom = p.atom()?;
        if p.pos != p.tokens.len() {
            return Err(ShelahError::Parse("trailing input".into()));
        }
        Ok(atom)
    }
}
