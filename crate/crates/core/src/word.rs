//! Diffeomorphism words of the four-puncture sphere.
//!
//! An orientation-preserving pseudo-Anosov diffeomorphism is encoded by a
//! word in the mapping-class-group generators L and R (both letters must
//! occur), optionally followed by the puncture permutations `.p1` / `.p2`.
//! The grammar accepts exponent blocks and parenthesised groups:
//!
//! ```text
//! LR          L^2R^3          (LR)^2.p1
//! ```
//!
//! Words are stored fully expanded so the block count k0 is structural.

use crate::error::{Error, Result};
use std::fmt;

/// One mapping-class-group generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    L,
    R,
}

impl Letter {
    /// Sign driving the trace formula: -1 for L, +1 for R.
    pub fn epsilon(self) -> i32 {
        match self {
            Letter::L => -1,
            Letter::R => 1,
        }
    }
}

/// A validated pseudo-Anosov word with permutation flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffeoWord {
    letters: Vec<Letter>,
    pub eps1: bool,
    pub eps2: bool,
}

/// Per-letter signs, cyclic with period k0 (index k0+1 is index 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonSignature(pub Vec<i32>);

impl EpsilonSignature {
    /// eps_k with 0-based k, cyclic.
    pub fn at(&self, k: usize) -> i32 {
        self.0[k % self.0.len()]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl DiffeoWord {
    pub fn new(letters: Vec<Letter>, eps1: bool, eps2: bool) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        if !letters.contains(&Letter::L) {
            return Err(Error::MissingLetter('L'));
        }
        if !letters.contains(&Letter::R) {
            return Err(Error::MissingLetter('R'));
        }
        Ok(DiffeoWord { letters, eps1, eps2 })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Number of elementary L/R moves (and tetrahedron pairs).
    pub fn k0(&self) -> usize {
        self.letters.len()
    }

    pub fn epsilon_signature(&self) -> EpsilonSignature {
        EpsilonSignature(self.letters.iter().map(|l| l.epsilon()).collect())
    }

    /// Exponent-compressed canonical rendering, e.g. `L^2R^3`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut i = 0;
        while i < self.letters.len() {
            let letter = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == letter {
                run += 1;
            }
            out.push(match letter {
                Letter::L => 'L',
                Letter::R => 'R',
            });
            if run > 1 {
                out.push_str(&format!("^{run}"));
            }
            i += run;
        }
        if self.eps1 {
            out.push_str(".p1");
        }
        if self.eps2 {
            out.push_str(".p2");
        }
        out
    }
}

impl fmt::Display for DiffeoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Parse a word from its textual form. See the module docs for the grammar.
pub fn parse_word(text: &str) -> Result<DiffeoWord> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut letters = Vec::new();
    parse_items(bytes, &mut pos, &mut letters, 0)?;
    let mut eps1 = false;
    let mut eps2 = false;
    while pos < bytes.len() {
        if bytes[pos] != b'.' {
            return Err(Error::Syntax {
                pos,
                msg: format!("unexpected character {:?}", bytes[pos] as char),
            });
        }
        let rest = &text[pos..];
        if rest.starts_with(".p1") {
            eps1 = true;
            pos += 3;
        } else if rest.starts_with(".p2") {
            eps2 = true;
            pos += 3;
        } else {
            return Err(Error::Syntax {
                pos,
                msg: "expected .p1 or .p2".into(),
            });
        }
    }
    DiffeoWord::new(letters, eps1, eps2)
}

fn parse_items(bytes: &[u8], pos: &mut usize, out: &mut Vec<Letter>, depth: usize) -> Result<()> {
    let start = *pos;
    loop {
        match bytes.get(*pos) {
            Some(b'L') | Some(b'R') => {
                let letter = if bytes[*pos] == b'L' { Letter::L } else { Letter::R };
                *pos += 1;
                let count = parse_exponent(bytes, pos)?.unwrap_or(1);
                out.extend(std::iter::repeat_n(letter, count));
            }
            Some(b'(') => {
                *pos += 1;
                let mut inner = Vec::new();
                parse_items(bytes, pos, &mut inner, depth + 1)?;
                if bytes.get(*pos) != Some(&b')') {
                    return Err(Error::Syntax {
                        pos: *pos,
                        msg: "unclosed group".into(),
                    });
                }
                *pos += 1;
                let count = parse_exponent(bytes, pos)?.unwrap_or(1);
                if inner.is_empty() {
                    return Err(Error::Syntax {
                        pos: *pos,
                        msg: "empty group".into(),
                    });
                }
                for _ in 0..count {
                    out.extend_from_slice(&inner);
                }
            }
            Some(b')') if depth > 0 => return Ok(()),
            Some(b'.') if depth == 0 => return Ok(()),
            None => {
                if depth > 0 {
                    return Err(Error::Syntax {
                        pos: *pos,
                        msg: "unclosed group".into(),
                    });
                }
                if *pos == start && out.is_empty() {
                    return Err(Error::EmptyWord);
                }
                return Ok(());
            }
            Some(&c) => {
                return Err(Error::Syntax {
                    pos: *pos,
                    msg: format!("unexpected character {:?}", c as char),
                })
            }
        }
    }
}

fn parse_exponent(bytes: &[u8], pos: &mut usize) -> Result<Option<usize>> {
    if bytes.get(*pos) != Some(&b'^') {
        return Ok(None);
    }
    *pos += 1;
    let digits_start = *pos;
    while matches!(bytes.get(*pos), Some(b'0'..=b'9')) {
        *pos += 1;
    }
    if *pos == digits_start {
        return Err(Error::Syntax {
            pos: *pos,
            msg: "expected a positive integer exponent".into(),
        });
    }
    let value: usize = std::str::from_utf8(&bytes[digits_start..*pos])
        .unwrap()
        .parse()
        .map_err(|_| Error::Syntax {
            pos: digits_start,
            msg: "exponent out of range".into(),
        })?;
    if value == 0 {
        return Err(Error::Syntax {
            pos: digits_start,
            msg: "exponent must be positive".into(),
        });
    }
    Ok(Some(value))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letters_of(text: &str) -> Vec<Letter> {
        parse_word(text).unwrap().letters().to_vec()
    }

    #[test]
    fn parses_plain_words() {
        use Letter::*;
        assert_eq!(letters_of("LR"), vec![L, R]);
        assert_eq!(letters_of("L^2R^3"), vec![L, L, R, R, R]);
        assert_eq!(letters_of("(LR)^2"), vec![L, R, L, R]);
        assert_eq!(letters_of("(L^2R)^2R"), vec![L, L, R, L, L, R, R]);
    }

    #[test]
    fn parses_permutation_flags() {
        let w = parse_word("LR.p1").unwrap();
        assert!(w.eps1 && !w.eps2);
        let w = parse_word("LR.p1.p2").unwrap();
        assert!(w.eps1 && w.eps2);
    }

    #[test]
    fn rejects_invalid_words() {
        assert!(matches!(parse_word(""), Err(Error::EmptyWord)));
        assert!(matches!(parse_word("RRR"), Err(Error::MissingLetter('L'))));
        assert!(matches!(parse_word("L^4"), Err(Error::MissingLetter('R'))));
        assert!(matches!(parse_word("LxR"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("L^0R"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("(LR"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("LR.p3"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn epsilon_signature_follows_letters() {
        assert_eq!(parse_word("LR").unwrap().epsilon_signature().0, vec![-1, 1]);
        assert_eq!(parse_word("LLR").unwrap().epsilon_signature().0, vec![-1, -1, 1]);
        assert_eq!(
            parse_word("RLRL").unwrap().epsilon_signature().0,
            vec![1, -1, 1, -1]
        );
        let eps = parse_word("LLR").unwrap().epsilon_signature();
        assert_eq!(eps.at(3), eps.at(0)); // cyclic
    }

    #[test]
    fn render_compresses_exponents() {
        assert_eq!(parse_word("LLRRR").unwrap().render(), "L^2R^3");
        assert_eq!(parse_word("(LR)^2").unwrap().render(), "LRLR");
        assert_eq!(parse_word("LR.p2").unwrap().render(), "LR.p2");
    }
}

#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    fn letters_strategy() -> impl Strategy<Value = Vec<Letter>> {
        proptest::collection::vec(prop_oneof![Just(Letter::L), Just(Letter::R)], 2..40)
            .prop_filter("needs both letters", |v| {
                v.contains(&Letter::L) && v.contains(&Letter::R)
            })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(letters in letters_strategy(), eps1: bool, eps2: bool) {
            let w = DiffeoWord::new(letters, eps1, eps2).unwrap();
            let back = parse_word(&w.render()).unwrap();
            prop_assert_eq!(back, w);
        }

        #[test]
        fn epsilon_signature_is_plus_minus_one(letters in letters_strategy()) {
            let w = DiffeoWord::new(letters, false, false).unwrap();
            let eps = w.epsilon_signature();
            prop_assert_eq!(eps.len(), w.k0());
            for (e, l) in eps.0.iter().zip(w.letters()) {
                prop_assert_eq!(*e, l.epsilon());
                prop_assert!(*e == 1 || *e == -1);
            }
        }
    }
}
