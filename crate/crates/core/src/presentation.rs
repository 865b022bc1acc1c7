//! Finite group presentations, free-group words and cohomology classes.
//!
//! Grammar: `< g1, g2, ... | w1, w2, ... >`. A word is a sequence of factors
//! `gen` or `gen^k` separated by whitespace or `*`; `^` binds tighter than
//! juxtaposition and `1` is the empty word. A relator `u = v` stands for
//! `u v^-1`. When every generator name is a single character, an unknown
//! identifier such as `aba` is read letter by letter.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::PresentationError;

/// A word in the free group, as syllables `(generator, exponent)`.
///
/// Exponents are never zero. Words built by [`FreeWord::reduced`] or
/// [`free_reduce`] are freely reduced: adjacent syllables use distinct generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FreeWord {
    letters: Vec<(usize, i64)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(g: usize) -> Self {
        FreeWord { letters: vec![(g, 1)] }
    }

    /// Keeps the spelling as given; zero exponents are dropped.
    pub fn raw(letters: impl IntoIterator<Item = (usize, i64)>) -> Self {
        FreeWord {
            letters: letters.into_iter().filter(|&(_, e)| e != 0).collect(),
        }
    }

    pub fn reduced(letters: impl IntoIterator<Item = (usize, i64)>) -> Self {
        free_reduce(&Self::raw(letters))
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of absolute exponents.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FreeWord { letters }
    }

    /// Product in the free group (reduced).
    pub fn mul(&self, other: &Self) -> Self {
        free_reduce(&self.concat(other))
    }

    /// Image in `Z^ngens` under abelianization.
    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut v = vec![0; ngens];
        for &(g, e) in &self.letters {
            v[g] += e;
        }
        v
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { w: self, names }
    }
}

struct WordDisplay<'a> {
    w: &'a FreeWord,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.w.is_identity() {
            return write!(f, "1");
        }
        for (k, &(g, e)) in self.w.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            let name = &self.names[g];
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Canonical freely reduced form: merges equal adjacent generators and drops
/// cancelled syllables.
pub fn free_reduce(w: &FreeWord) -> FreeWord {
    let mut stack: Vec<(usize, i64)> = Vec::with_capacity(w.letters.len());
    for &(g, e) in &w.letters {
        match stack.last_mut() {
            Some((top, te)) if *top == g => {
                *te += e;
                if *te == 0 {
                    stack.pop();
                }
            }
            _ => stack.push((g, e)),
        }
    }
    FreeWord { letters: stack }
}

/// Generators and freely reduced (not cyclically reduced) relators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<FreeWord>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<FreeWord>) -> Result<Self, PresentationError> {
        let mut seen = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if seen.insert(g.clone(), i).is_some() {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g >= generators.len() {
                    return Err(PresentationError::UnknownGenerator {
                        name: format!("#{g}"),
                        pos: 0,
                    });
                }
            }
        }
        Ok(Presentation {
            generators,
            relators: relators.iter().map(free_reduce).collect(),
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    /// `generators - relators`.
    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    /// Euler characteristic `1 - g + m` of the presentation 2-complex.
    pub fn euler_characteristic(&self) -> i64 {
        1 - self.deficiency()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// `m x g` matrix of relator exponent sums.
    pub fn exponent_sum_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| r.exponent_sums(self.num_generators()))
            .collect()
    }

    /// Primitive integer basis of the characters `Hom(pi, Q)`: the rational
    /// null space of the exponent-sum matrix, one vector per free column.
    pub fn character_basis(&self) -> Vec<Vec<BigInt>> {
        let g = self.num_generators();
        let rows: Vec<Vec<BigRational>> = self
            .exponent_sum_matrix()
            .into_iter()
            .map(|r| r.into_iter().map(|x| BigRational::from_integer(x.into())).collect())
            .collect();
        let (rref, pivots) = rref(rows, g);
        let free: Vec<usize> = (0..g).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![BigRational::zero(); g];
                v[fc] = BigRational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -rref[r][fc].clone();
                }
                primitive_integer_vector(&v)
            })
            .collect()
    }

    /// Rank of the abelianization, `b_1` of the presentation complex.
    pub fn first_betti_number(&self) -> usize {
        self.character_basis().len()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} |", self.generators.join(", "))?;
        for (k, r) in self.relators.iter().enumerate() {
            write!(f, "{}{}", if k == 0 { " " } else { ", " }, r.display(&self.generators))?;
        }
        write!(f, ">")
    }
}

impl FromStr for Presentation {
    type Err = PresentationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_presentation(s)
    }
}

/// Reduced row echelon form over `Q`; returns the matrix and its pivot columns.
pub(crate) fn rref(mut m: Vec<Vec<BigRational>>, cols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Scales a nonzero rational vector by a positive factor to a primitive integer vector.
pub(crate) fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, PresentationError> {
        Err(PresentationError::Syntax {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<(), PresentationError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            match self.peek() {
                Some(got) => self.syntax(format!("expected `{c}`, found `{got}`")),
                None => self.syntax(format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn ident(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return None,
        }
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.bump();
        }
        Some((start, &self.src[start..self.pos]))
    }

    fn integer(&mut self) -> Result<i64, PresentationError> {
        self.skip_ws();
        let paren = self.peek() == Some('(');
        if paren {
            self.bump();
            self.skip_ws();
        }
        let start = self.pos;
        if matches!(self.peek(), Some('-' | '+')) {
            self.bump();
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        let text = &self.src[start..self.pos];
        let Ok(v) = text.parse::<i64>() else {
            self.pos = start;
            return self.syntax("expected an integer exponent");
        };
        if paren {
            self.expect(')')?;
        }
        if v == 0 {
            return Err(PresentationError::ZeroExponent { pos: start });
        }
        Ok(v)
    }
}

/// Parses `< gens | relators >` into a validated presentation.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut p = Parser { src: text, pos: 0 };
    p.expect('<')?;
    let mut generators: Vec<String> = Vec::new();
    p.skip_ws();
    if p.peek() != Some('|') {
        loop {
            let Some((_, name)) = p.ident() else {
                return p.syntax("expected a generator name");
            };
            if generators.iter().any(|g| g == name) {
                return Err(PresentationError::DuplicateGenerator(name.to_string()));
            }
            generators.push(name.to_string());
            p.skip_ws();
            if p.peek() == Some(',') {
                p.bump();
            } else {
                break;
            }
        }
    }
    p.expect('|')?;
    let index: HashMap<&str, usize> = generators.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
    let single_letters = generators.iter().all(|g| g.len() == 1);
    let mut relators = Vec::new();
    p.skip_ws();
    if p.peek() != Some('>') {
        loop {
            let lhs = parse_word(&mut p, &index, single_letters)?;
            p.skip_ws();
            let w = if p.peek() == Some('=') {
                p.bump();
                let rhs = parse_word(&mut p, &index, single_letters)?;
                lhs.concat(&rhs.inverse())
            } else {
                lhs
            };
            relators.push(free_reduce(&w));
            p.skip_ws();
            if p.peek() == Some(',') {
                p.bump();
            } else {
                break;
            }
        }
    }
    p.expect('>')?;
    p.skip_ws();
    if p.peek().is_some() {
        return p.syntax("trailing input after `>`");
    }
    Presentation::new(generators, relators)
}

fn parse_word(
    p: &mut Parser<'_>,
    index: &HashMap<&str, usize>,
    single_letters: bool,
) -> Result<FreeWord, PresentationError> {
    let mut letters = Vec::new();
    let mut any = false;
    loop {
        p.skip_ws();
        match p.peek() {
            Some('*') if any => {
                p.bump();
                continue;
            }
            Some('1') => {
                p.bump();
                any = true;
                continue;
            }
            _ => {}
        }
        let Some((start, name)) = p.ident() else {
            break;
        };
        any = true;
        let mut gens: Vec<usize> = Vec::new();
        if let Some(&g) = index.get(name) {
            gens.push(g);
        } else if single_letters && name.chars().all(|c| index.contains_key(&*c.to_string())) {
            gens.extend(name.chars().map(|c| index[&*c.to_string()]));
        } else {
            return Err(PresentationError::UnknownGenerator {
                name: name.to_string(),
                pos: start,
            });
        }
        p.skip_ws();
        let exp = if p.peek() == Some('^') {
            p.bump();
            p.integer()?
        } else {
            1
        };
        let last = gens.len() - 1;
        for (k, g) in gens.into_iter().enumerate() {
            letters.push((g, if k == last { exp } else { 1 }));
        }
    }
    if !any {
        return p.syntax("expected a word");
    }
    Ok(FreeWord::raw(letters))
}

/// A nonzero class, given by `r >= 1` independent rational characters.
///
/// Rank 1 is an honest rational class. Higher rank encodes the kernel of an
/// irrational class as the joint kernel of the rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterClass {
    rows: Vec<Vec<BigRational>>,
    primitive: Vec<Vec<BigInt>>,
}

impl CharacterClass {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn num_generators(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    /// Rows scaled by positive factors to primitive integer vectors.
    pub fn primitive_rows(&self) -> &[Vec<BigInt>] {
        &self.primitive
    }

    /// The class `-xi`.
    pub fn negate(&self) -> Self {
        CharacterClass {
            rows: self.rows.iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
            primitive: self.primitive.iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
        }
    }

    /// `name=value,...` per row, rows joined by `; `.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        ClassDisplay { c: self, names }
    }

    /// Rows as strings, for reports.
    pub fn row_strings(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }
}

struct ClassDisplay<'a> {
    c: &'a CharacterClass,
    names: &'a [String],
}

impl fmt::Display for ClassDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.c.rows.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            for (j, (n, v)) in self.names.iter().zip(row).enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{n}={v}")?;
            }
        }
        Ok(())
    }
}

/// Checks that the rows vanish on every abelianized relator, are nonzero, and
/// are linearly independent; scales them to primitive integer rows.
pub fn validate_character(p: &Presentation, rows: Vec<Vec<BigRational>>) -> Result<CharacterClass, PresentationError> {
    let g = p.num_generators();
    if rows.is_empty() {
        return Err(PresentationError::ZeroClass);
    }
    for r in &rows {
        if r.len() != g {
            return Err(PresentationError::ShapeMismatch {
                expected: g,
                got: r.len(),
            });
        }
    }
    if rows.iter().any(|r| r.iter().all(Zero::is_zero)) {
        return Err(PresentationError::ZeroClass);
    }
    for (ri, rel) in p.relators().iter().enumerate() {
        let sums = rel.exponent_sums(g);
        for (row_i, row) in rows.iter().enumerate() {
            let value: BigRational = row
                .iter()
                .zip(&sums)
                .map(|(x, &e)| x * BigRational::from_integer(e.into()))
                .sum();
            if !value.is_zero() {
                return Err(PresentationError::RelatorNonvanishing {
                    relator: ri,
                    row: row_i,
                    value: value.to_string(),
                });
            }
        }
    }
    let (_, pivots) = rref(rows.clone(), g);
    if pivots.len() < rows.len() {
        return Err(PresentationError::DependentRows);
    }
    let primitive = rows.iter().map(|r| primitive_integer_vector(r)).collect();
    Ok(CharacterClass { rows, primitive })
}

/// Builds a class from integer rows (used by scans over the character lattice).
pub fn class_from_integer_rows(p: &Presentation, rows: &[Vec<BigInt>]) -> Result<CharacterClass, PresentationError> {
    validate_character(
        p,
        rows.iter()
            .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
            .collect(),
    )
}

fn parse_rational(s: &str) -> Result<BigRational, PresentationError> {
    BigRational::from_str(s.trim()).map_err(|_| PresentationError::MalformedValue(s.to_string()))
}

/// Parses one character row: either `a=1,b=-1/2` (missing generators are 0)
/// or a positional list `1,-1/2` with one value per generator.
pub fn parse_character_row(p: &Presentation, text: &str) -> Result<Vec<BigRational>, PresentationError> {
    let g = p.num_generators();
    let items: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let named = items.iter().filter(|s| s.contains('=')).count();
    if named == 0 {
        if items.len() != g {
            return Err(PresentationError::ShapeMismatch {
                expected: g,
                got: items.len(),
            });
        }
        return items.iter().map(|s| parse_rational(s)).collect();
    }
    if named != items.len() {
        return Err(PresentationError::MalformedValue(text.to_string()));
    }
    let mut row = vec![BigRational::zero(); g];
    for item in items {
        let (name, value) = item.split_once('=').expect("checked above");
        let name = name.trim();
        let idx = p
            .generator_index(name)
            .ok_or_else(|| PresentationError::UnknownGenerator {
                name: name.to_string(),
                pos: 0,
            })?;
        row[idx] = parse_rational(value)?;
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    fn bs12() -> Presentation {
        parse_presentation("<a,b | a b a^-1 = b^2>").unwrap()
    }

    #[test]
    fn parses_baumslag_solitar() {
        let p = bs12();
        assert_eq!(p.generators(), ["a", "b"]);
        assert_eq!(p.relators(), [FreeWord::raw([(0, 1), (1, 1), (0, -1), (1, -2)])]);
    }

    #[test]
    fn parses_free_group_and_commutator() {
        let f2 = parse_presentation("<a,b | >").unwrap();
        assert_eq!(f2.num_generators(), 2);
        assert!(f2.relators().is_empty());
        let z2 = parse_presentation("<a,b | a b a^-1 b^-1>").unwrap();
        assert_eq!(z2.relators()[0].letters(), [(0, 1), (1, 1), (0, -1), (1, -1)]);
    }

    #[test]
    fn accepts_star_juxtaposition_and_parenthesized_exponents() {
        let a = parse_presentation("<a,b | a*b*a^(-1)*b^-2>").unwrap();
        let b = parse_presentation("<a,b | aba^-1b^-2>").unwrap();
        assert_eq!(a, bs12());
        assert_eq!(b, bs12());
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(
            parse_presentation("<a,b | a c>"),
            Err(PresentationError::UnknownGenerator {
                name: "c".into(),
                pos: 9
            })
        );
        assert_eq!(
            parse_presentation("<a | a^0>"),
            Err(PresentationError::ZeroExponent { pos: 7 })
        );
        assert!(matches!(
            parse_presentation("<a | a"),
            Err(PresentationError::Syntax { pos: 6, .. })
        ));
        assert!(matches!(
            parse_presentation("<a, a | >"),
            Err(PresentationError::DuplicateGenerator(_))
        ));
    }

    #[test]
    fn free_reduction_examples() {
        let w = FreeWord::raw([(0, 1), (1, 1), (1, -1), (0, 1)]);
        assert_eq!(free_reduce(&w), FreeWord::raw([(0, 2)]));
        let w = FreeWord::raw([(0, 1), (0, -1)]);
        assert!(free_reduce(&w).is_identity());
        let w = FreeWord::raw([(0, 1), (1, 1), (0, -1), (1, -2)]);
        assert_eq!(free_reduce(&w), w);
    }

    #[test]
    fn relators_are_not_cyclically_reduced() {
        let p = parse_presentation("<a,b | a b a^-1>").unwrap();
        assert_eq!(p.relators()[0].letters().len(), 3);
    }

    #[test]
    fn character_validation() {
        let p = bs12();
        let c = validate_character(&p, vec![vec![q(1), q(0)]]).unwrap();
        assert_eq!(c.primitive_rows(), [vec![BigInt::from(1), BigInt::from(0)]]);
        assert!(matches!(
            validate_character(&p, vec![vec![q(0), q(1)]]),
            Err(PresentationError::RelatorNonvanishing { relator: 0, row: 0, .. })
        ));
        assert_eq!(
            validate_character(&p, vec![vec![q(0), q(0)]]),
            Err(PresentationError::ZeroClass)
        );
        let f2 = parse_presentation("<a,b|>").unwrap();
        assert_eq!(
            validate_character(&f2, vec![vec![q(1), q(2)], vec![q(2), q(4)]]),
            Err(PresentationError::DependentRows)
        );
        assert!(matches!(
            validate_character(&f2, vec![vec![q(1)]]),
            Err(PresentationError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn rational_rows_scale_to_primitive_integers() {
        let f2 = parse_presentation("<a,b|>").unwrap();
        let row = parse_character_row(&f2, "a=1/2, b=-3/4").unwrap();
        let c = validate_character(&f2, vec![row]).unwrap();
        assert_eq!(c.primitive_rows(), [vec![BigInt::from(2), BigInt::from(-3)]]);
        assert_eq!(parse_character_row(&f2, "1,-2").unwrap(), vec![q(1), q(-2)]);
        assert_eq!(parse_character_row(&f2, "b=2").unwrap(), vec![q(0), q(2)]);
        assert!(parse_character_row(&f2, "c=1").is_err());
        assert!(parse_character_row(&f2, "a=x").is_err());
    }

    #[test]
    fn character_basis_and_betti() {
        assert_eq!(bs12().character_basis(), vec![vec![BigInt::from(1), BigInt::from(0)]]);
        let trefoil = parse_presentation("<a,b | a^2 = b^3>").unwrap();
        assert_eq!(trefoil.character_basis(), vec![vec![BigInt::from(3), BigInt::from(2)]]);
        let finite = parse_presentation("<a,b | a^2 = b^3, a b a b^-1>").unwrap();
        assert_eq!(finite.first_betti_number(), 0);
        assert_eq!(parse_presentation("<a,b|>").unwrap().first_betti_number(), 2);
    }

    #[test]
    fn display_roundtrip() {
        let p = parse_presentation("<x, y | x y x^-1 = y^2, x^3>").unwrap();
        assert_eq!(p.to_string(), "<x, y | x y x^-1 y^-2, x^3>");
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
    }
}
