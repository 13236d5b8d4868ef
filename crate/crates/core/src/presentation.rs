//! Group presentations: generator names, words in free groups, finite
//! presentations, and the Baumslag–Solitar family `BS(m,n)`.
//!
//! The text grammar is `"<" gens "|" relators ">"` with comma-separated
//! generator names and relator words. A word is a juxtaposition of `name` and
//! `name^k` syllables (`k` a possibly negative, nonzero integer); `^` binds
//! tighter than juxtaposition. An uppercase token such as `T` abbreviates
//! `t^-1` when the lowercase name is a declared generator and the uppercase
//! one is not. Whitespace is insignificant between tokens.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Hard limit on the number of generators in one presentation.
pub const MAX_GENERATORS: usize = 64;

/// Hard limit on the letter length (sum of |exponent|) of a single word.
pub const MAX_WORD_LETTERS: u64 = 10_000;

/// A generator symbol: ASCII letters and digits, starting with a letter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorName(String);

impl GeneratorName {
    pub fn new(symbol: &str) -> Result<Self, PresentationError> {
        let mut chars = symbol.chars();
        let valid = match chars.next() {
            Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric()),
            _ => false,
        };
        if !valid {
            return Err(PresentationError::InvalidGeneratorName {
                name: symbol.to_owned(),
            });
        }
        Ok(GeneratorName(symbol.to_owned()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One `g^e` block of a word: a 0-based generator index and a nonzero exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    pub gen: usize,
    pub exp: i64,
}

/// A freely reduced word over the generators of some presentation.
///
/// Adjacent syllables always have distinct generator indices and no syllable
/// has a zero exponent; constructors enforce this by performing free
/// reduction.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Builds a word from raw `(generator, exponent)` pairs, freely reducing.
    ///
    /// Zero exponents contribute nothing. Exponents of adjacent equal
    /// generators are merged; cancelling blocks are removed.
    pub fn new<I>(syllables: I) -> Result<Self, PresentationError>
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        let mut reduced: Vec<Syllable> = Vec::new();
        for (gen, exp) in syllables {
            if exp == 0 {
                continue;
            }
            match reduced.last_mut() {
                Some(top) if top.gen == gen => {
                    let merged = top
                        .exp
                        .checked_add(exp)
                        .ok_or(PresentationError::ExponentOverflow)?;
                    if merged == 0 {
                        reduced.pop();
                    } else {
                        top.exp = merged;
                    }
                }
                _ => reduced.push(Syllable { gen, exp }),
            }
        }
        let word = Word { syllables: reduced };
        if word.letter_len() > MAX_WORD_LETTERS {
            return Err(PresentationError::WordTooLong {
                letters: word.letter_len(),
            });
        }
        Ok(word)
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Total letter length: the sum of |exponent| over all syllables.
    pub fn letter_len(&self) -> u64 {
        self.syllables.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    gen: s.gen,
                    exp: -s.exp,
                })
                .collect(),
        }
    }

    /// The cyclically reduced form: end syllables over the same generator are
    /// rotated together and merged until the first and last generators differ.
    pub fn cyclically_reduced(&self) -> Word {
        let mut syl = self.syllables.clone();
        loop {
            if syl.len() < 2 {
                return Word { syllables: syl };
            }
            let first = syl[0];
            let last = *syl.last().expect("len >= 2");
            if first.gen != last.gen {
                return Word { syllables: syl };
            }
            // Conjugate by first^-1: rotate the leading block onto the tail.
            let merged = first.exp + last.exp;
            syl.remove(0);
            if merged == 0 {
                syl.pop();
                // Interior neighbours may now match; re-reduce.
                syl = Word::new(syl.iter().map(|s| (s.gen, s.exp)))
                    .expect("reduction never grows a word")
                    .syllables;
            } else {
                syl.last_mut().expect("len >= 1").exp = merged;
            }
        }
    }

    /// Expands the word into table letters: generator `g` becomes letter `2g`,
    /// its inverse `2g + 1`, each repeated |exponent| times.
    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.syllables.iter().flat_map(|s| {
            let letter = if s.exp > 0 { 2 * s.gen } else { 2 * s.gen + 1 };
            core::iter::repeat(letter).take(s.exp.unsigned_abs() as usize)
        })
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|s| s.gen).max()
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, names: Option<&[GeneratorName]>) -> fmt::Result {
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match names {
                Some(names) => write!(f, "{}", names[s.gen])?,
                None => write!(f, "g{}", s.gen)?,
            }
            if s.exp != 1 {
                write!(f, "^{}", s.exp)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, None)
    }
}

/// A finite group presentation with freely and cyclically reduced relators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<GeneratorName>,
    relators: Vec<Word>,
    dropped_relators: usize,
}

impl GroupPresentation {
    /// Validates generators and relators and normalizes the relators.
    ///
    /// Relators that reduce to the empty word are dropped; the count of
    /// dropped relators is kept as a warning flag rather than an error.
    pub fn new(
        generators: Vec<GeneratorName>,
        relators: Vec<Word>,
    ) -> Result<Self, PresentationError> {
        if generators.is_empty() {
            return Err(PresentationError::NoGenerators);
        }
        if generators.len() > MAX_GENERATORS {
            return Err(PresentationError::TooManyGenerators {
                count: generators.len(),
            });
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(PresentationError::DuplicateGenerator {
                    name: g.as_str().to_owned(),
                });
            }
        }
        let mut reduced = Vec::new();
        let mut dropped = 0;
        for r in relators {
            if let Some(gen) = r.max_generator() {
                if gen >= generators.len() {
                    return Err(PresentationError::GeneratorIndexOutOfRange { index: gen });
                }
            }
            let r = r.cyclically_reduced();
            if r.is_empty() {
                dropped += 1;
            } else {
                reduced.push(r);
            }
        }
        Ok(GroupPresentation {
            generators,
            relators: reduced,
            dropped_relators: dropped,
        })
    }

    /// The standard two-generator presentation of `BS(m,n)`:
    /// generators `a, t` and the single relator `t a^m t^-1 a^-n`.
    pub fn baumslag_solitar(params: BsParams) -> Self {
        let a = GeneratorName::new("a").expect("valid name");
        let t = GeneratorName::new("t").expect("valid name");
        let relator = Word::new([(1, 1), (0, params.m()), (1, -1), (0, -params.n())])
            .expect("BS relator is short");
        GroupPresentation::new(alloc::vec![a, t], alloc::vec![relator])
            .expect("BS presentation is valid")
    }

    pub fn generators(&self) -> &[GeneratorName] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Number of relators discarded because they reduced to the empty word.
    pub fn dropped_relators(&self) -> usize {
        self.dropped_relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.as_str() == name)
    }

    /// Parses a presentation from the `"< gens | relators >"` grammar.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Parser::new(text).presentation()
    }

    /// Parses a single word over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word, ParseError> {
        let mut parser = Parser::new(text);
        let word = parser.word_over(&self.generators)?;
        parser.expect_end()?;
        Ok(word)
    }

    /// Renders a word with this presentation's generator names.
    pub fn display_word<'a>(&'a self, word: &'a Word) -> impl fmt::Display + 'a {
        struct D<'a> {
            pres: &'a GroupPresentation,
            word: &'a Word,
        }
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.word.fmt_with(f, Some(self.pres.generators()))
            }
        }
        D { pres: self, word }
    }
}

impl fmt::Display for GroupPresentation {
    /// Canonical form: `< a, t | t a^2 t^-1 a^-2 >`. Parsing the output gives
    /// back the same structure.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("< ")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(" | ")?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            r.fmt_with(f, Some(&self.generators))?;
        }
        if !self.relators.is_empty() {
            f.write_str(" ")?;
        }
        f.write_str(">")
    }
}

/// The parameter pair `(m, n)` of a Baumslag–Solitar group; both nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BsParams {
    m: i64,
    n: i64,
}

impl BsParams {
    pub fn new(m: i64, n: i64) -> Result<Self, PresentationError> {
        if m == 0 || n == 0 {
            return Err(PresentationError::ZeroBsParameter);
        }
        Ok(BsParams { m, n })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }
}

impl fmt::Display for BsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BS({},{})", self.m, self.n)
    }
}

/// Structural errors raised when building presentations programmatically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresentationError {
    NoGenerators,
    TooManyGenerators { count: usize },
    DuplicateGenerator { name: String },
    InvalidGeneratorName { name: String },
    GeneratorIndexOutOfRange { index: usize },
    WordTooLong { letters: u64 },
    ExponentOverflow,
    ZeroBsParameter,
}

impl fmt::Display for PresentationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationError::NoGenerators => write!(f, "presentation has no generators"),
            PresentationError::TooManyGenerators { count } => {
                write!(f, "{count} generators exceeds the limit of {MAX_GENERATORS}")
            }
            PresentationError::DuplicateGenerator { name } => {
                write!(f, "duplicate generator `{name}`")
            }
            PresentationError::InvalidGeneratorName { name } => {
                write!(f, "invalid generator name `{name}`")
            }
            PresentationError::GeneratorIndexOutOfRange { index } => {
                write!(f, "word refers to generator index {index} outside the presentation")
            }
            PresentationError::WordTooLong { letters } => {
                write!(f, "word has {letters} letters, exceeding the limit of {MAX_WORD_LETTERS}")
            }
            PresentationError::ExponentOverflow => write!(f, "syllable exponent overflow"),
            PresentationError::ZeroBsParameter => {
                write!(f, "Baumslag-Solitar parameters must be nonzero")
            }
        }
    }
}

impl core::error::Error for PresentationError {}

/// Parse errors carry the byte offset where the problem was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax { position: usize, expected: &'static str },
    DuplicateGenerator { position: usize, name: String },
    UnknownGenerator { position: usize, name: String },
    ZeroExponent { position: usize },
    Invalid { position: usize, source: PresentationError },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. }
            | ParseError::DuplicateGenerator { position, .. }
            | ParseError::UnknownGenerator { position, .. }
            | ParseError::ZeroExponent { position }
            | ParseError::Invalid { position, .. } => *position,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { position, expected } => {
                write!(f, "syntax error at byte {position}: expected {expected}")
            }
            ParseError::DuplicateGenerator { position, name } => {
                write!(f, "duplicate generator `{name}` at byte {position}")
            }
            ParseError::UnknownGenerator { position, name } => {
                write!(f, "unknown generator `{name}` at byte {position}")
            }
            ParseError::ZeroExponent { position } => {
                write!(f, "zero exponent literal at byte {position}")
            }
            ParseError::Invalid { position, source } => {
                write!(f, "invalid presentation at byte {position}: {source}")
            }
        }
    }
}

impl core::error::Error for ParseError {}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8, expected: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(expected))
        }
    }

    fn syntax(&self, expected: &'static str) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
            expected,
        }
    }

    fn name(&mut self) -> Result<(usize, &'a str), ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.bytes.get(self.pos) {
            Some(b) if b.is_ascii_alphabetic() => {}
            _ => return Err(self.syntax("generator name")),
        }
        while matches!(self.bytes.get(self.pos), Some(b) if b.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        let text = core::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii slice");
        Ok((start, text))
    }

    fn integer(&mut self) -> Result<(usize, i64), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let negative = if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let digits_start = self.pos;
        while matches!(self.bytes.get(self.pos), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.syntax("integer exponent"));
        }
        let text = core::str::from_utf8(&self.bytes[digits_start..self.pos]).expect("ascii");
        let mut value: i64 = 0;
        for c in text.bytes() {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as i64))
                .ok_or(ParseError::Invalid {
                    position: start,
                    source: PresentationError::ExponentOverflow,
                })?;
        }
        Ok((start, if negative { -value } else { value }))
    }

    fn presentation(&mut self) -> Result<GroupPresentation, ParseError> {
        self.eat(b'<', "`<`")?;
        let mut generators: Vec<GeneratorName> = Vec::new();
        loop {
            let (pos, name) = self.name()?;
            if generators.iter().any(|g| g.as_str() == name) {
                return Err(ParseError::DuplicateGenerator {
                    position: pos,
                    name: name.to_owned(),
                });
            }
            generators.push(GeneratorName::new(name).map_err(|source| ParseError::Invalid {
                position: pos,
                source,
            })?);
            if self.peek() == Some(b',') {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.eat(b'|', "`|`")?;
        let mut relators = Vec::new();
        if self.peek() != Some(b'>') {
            loop {
                relators.push(self.word_over(&generators)?);
                if self.peek() == Some(b',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.eat(b'>', "`>`")?;
        self.expect_end()?;
        let start = 0;
        GroupPresentation::new(generators, relators).map_err(|source| ParseError::Invalid {
            position: start,
            source,
        })
    }

    /// One nonempty word: `syllable+` where `syllable = name ("^" int)?`.
    fn word_over(&mut self, generators: &[GeneratorName]) -> Result<Word, ParseError> {
        let mut syllables: Vec<(usize, i64)> = Vec::new();
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_alphabetic() => {}
                _ if syllables.is_empty() => return Err(self.syntax("word")),
                _ => break,
            }
            let (pos, name) = self.name()?;
            let (gen, base_exp) = resolve_token(name, generators).ok_or_else(|| {
                ParseError::UnknownGenerator {
                    position: pos,
                    name: name.to_owned(),
                }
            })?;
            let exp = if self.peek() == Some(b'^') {
                self.pos += 1;
                let (epos, e) = self.integer()?;
                if e == 0 {
                    return Err(ParseError::ZeroExponent { position: epos });
                }
                base_exp.checked_mul(e).ok_or(ParseError::Invalid {
                    position: epos,
                    source: PresentationError::ExponentOverflow,
                })?
            } else {
                base_exp
            };
            syllables.push((gen, exp));
        }
        let start = self.pos;
        Word::new(syllables).map_err(|source| ParseError::Invalid {
            position: start,
            source,
        })
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        if self.peek().is_some() {
            return Err(self.syntax("end of input"));
        }
        Ok(())
    }
}

/// Resolves a word token against the generator list. A token matches a
/// declared name exactly, or — when it contains uppercase and the lowercased
/// form is declared while the token itself is not — denotes the inverse of
/// the lowercase generator.
fn resolve_token(token: &str, generators: &[GeneratorName]) -> Option<(usize, i64)> {
    if let Some(idx) = generators.iter().position(|g| g.as_str() == token) {
        return Some((idx, 1));
    }
    let lower = token.to_ascii_lowercase();
    if lower != token {
        if let Some(idx) = generators.iter().position(|g| g.as_str() == lower) {
            return Some((idx, -1));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::string::ToString;
    use alloc::vec;

    fn pres(text: &str) -> GroupPresentation {
        GroupPresentation::parse(text).expect("valid presentation")
    }

    #[test]
    fn parses_cyclic_group() {
        let p = pres("< a | a^5 >");
        assert_eq!(p.num_generators(), 1);
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0].syllables().len(), 1);
        assert_eq!(p.relators()[0].syllables()[0], Syllable { gen: 0, exp: 5 });
    }

    #[test]
    fn parses_bs_presentation() {
        let p = pres("< a, t | t a^2 t^-1 a^-2 >");
        assert_eq!(p.num_generators(), 2);
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0].syllables().len(), 4);
        assert_eq!(p, GroupPresentation::baumslag_solitar(BsParams::new(2, 2).unwrap()));
    }

    #[test]
    fn trivial_relator_is_dropped_with_flag() {
        let p = pres("< a | a^2 a^-2 >");
        assert_eq!(p.num_generators(), 1);
        assert!(p.relators().is_empty());
        assert_eq!(p.dropped_relators(), 1);
    }

    #[test]
    fn empty_relator_list() {
        let p = pres("< a, t | >");
        assert!(p.relators().is_empty());
        assert_eq!(p.dropped_relators(), 0);
    }

    #[test]
    fn uppercase_shorthand_is_inverse() {
        let p = pres("< a, t | T a T a >");
        // T = t^-1 since `t` is declared and `T` is not.
        let expected = pres("< a, t | t^-1 a t^-1 a >");
        assert_eq!(p.relators(), expected.relators());
    }

    #[test]
    fn uppercase_exact_match_wins() {
        let p = GroupPresentation::parse("< T | T^2 >").expect("T is a declared generator");
        assert_eq!(p.relators()[0].syllables()[0], Syllable { gen: 0, exp: 2 });
    }

    #[test]
    fn shorthand_combines_with_exponent() {
        let p = pres("< t | T^3 >");
        assert_eq!(p.relators()[0].syllables()[0], Syllable { gen: 0, exp: -3 });
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = GroupPresentation::parse("< a | a^ >").unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax {
                position: 8,
                expected: "integer exponent"
            }
        );
    }

    #[test]
    fn duplicate_generator_rejected() {
        let err = GroupPresentation::parse("< a, a | >").unwrap_err();
        assert!(matches!(err, ParseError::DuplicateGenerator { .. }));
    }

    #[test]
    fn unknown_generator_rejected() {
        let err = GroupPresentation::parse("< a | b >").unwrap_err();
        assert!(matches!(
            err,
            ParseError::UnknownGenerator { position: 6, .. }
        ));
    }

    #[test]
    fn zero_exponent_rejected() {
        let err = GroupPresentation::parse("< a | a^0 >").unwrap_err();
        assert!(matches!(err, ParseError::ZeroExponent { position: 8 }));
    }

    #[test]
    fn free_reduction_examples() {
        // a t t^-1 a -> a^2
        let w = Word::new([(0, 1), (1, 1), (1, -1), (0, 1)]).unwrap();
        assert_eq!(w.syllables(), &[Syllable { gen: 0, exp: 2 }]);
        // empty stays empty
        assert!(Word::new([]).unwrap().is_empty());
        // a^3 a^-1 -> a^2
        let w = Word::new([(0, 3), (0, -1)]).unwrap();
        assert_eq!(w.syllables(), &[Syllable { gen: 0, exp: 2 }]);
    }

    #[test]
    fn cyclic_reduction_rotates_and_merges() {
        // a t a  ~  t a^2
        let w = Word::new([(0, 1), (1, 1), (0, 1)]).unwrap().cyclically_reduced();
        assert_eq!(
            w.syllables(),
            &[Syllable { gen: 1, exp: 1 }, Syllable { gen: 0, exp: 2 }]
        );
        // a t t^-1 a^-1 -> empty (free reduction already kills it)
        let w = Word::new([(0, 1), (1, 1), (1, -1), (0, -1)]).unwrap();
        assert!(w.cyclically_reduced().is_empty());
        // t a t^-1 conjugate collapses to a
        let w = Word::new([(1, 1), (0, 1), (1, -1)]).unwrap().cyclically_reduced();
        assert_eq!(w.syllables(), &[Syllable { gen: 0, exp: 1 }]);
    }

    #[test]
    fn bs_presentation_examples() {
        let p = GroupPresentation::baumslag_solitar(BsParams::new(1, 2).unwrap());
        assert_eq!(p.to_string(), "< a, t | t a t^-1 a^-2 >");
        let p = GroupPresentation::baumslag_solitar(BsParams::new(2, -2).unwrap());
        assert_eq!(p.to_string(), "< a, t | t a^2 t^-1 a^2 >");
        let p = GroupPresentation::baumslag_solitar(BsParams::new(1, 1).unwrap());
        assert_eq!(p.to_string(), "< a, t | t a t^-1 a^-1 >");
    }

    #[test]
    fn pretty_print_round_trips() {
        for text in [
            "< a | a^5 >",
            "< a, t | t a^2 t^-1 a^-2 >",
            "< a, b | a^2, b^3, a b a b >",
            "< a, t | >",
        ] {
            let p = pres(text);
            let reparsed = pres(&format!("{p}"));
            assert_eq!(p, reparsed);
        }
    }

    #[test]
    fn letters_expand_exponents() {
        let w = Word::new([(1, 1), (0, -2)]).unwrap();
        let letters: Vec<usize> = w.letters().collect();
        assert_eq!(letters, vec![2, 1, 1]);
    }

    #[test]
    fn parse_word_over_presentation() {
        let p = pres("< a, t | >");
        let w = p.parse_word("a t^2").unwrap();
        assert_eq!(w.letter_len(), 3);
        assert!(p.parse_word("b").is_err());
    }

    #[test]
    fn generator_cap_enforced() {
        let gens: Vec<GeneratorName> = (0..65)
            .map(|i| GeneratorName::new(&format!("g{i}")).unwrap())
            .collect();
        let err = GroupPresentation::new(gens, vec![]).unwrap_err();
        assert!(matches!(err, PresentationError::TooManyGenerators { count: 65 }));
    }

    #[test]
    fn word_length_cap_enforced() {
        let err = Word::new([(0, 10_001)]).unwrap_err();
        assert!(matches!(err, PresentationError::WordTooLong { .. }));
    }

    #[test]
    fn bs_params_reject_zero() {
        assert!(BsParams::new(0, 1).is_err());
        assert!(BsParams::new(1, 0).is_err());
    }
}
