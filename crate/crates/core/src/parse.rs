//! Text form of chains.
//!
//! ```text
//! chain := op ( sep op )*
//! sep   := whitespace+ | "∘" | "o" | "."
//! op    := grad | ∇1 | nabla1 | curl | ∇2 | nabla2 | div | ∇3 | nabla3
//! ```
//!
//! Operator names are case-insensitive. The leftmost operator is the
//! outermost one.

use thiserror::Error;

use crate::operator::{Chain, Operator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {position}")]
pub struct ParseError {
    /// Character (not byte) offset into the input.
    pub position: usize,
    pub message: String,
}

fn lookup(word: &str) -> Option<Operator> {
    match word.to_lowercase().as_str() {
        "grad" | "∇1" | "nabla1" => Some(Operator::Grad),
        "curl" | "∇2" | "nabla2" => Some(Operator::Curl),
        "div" | "∇3" | "nabla3" => Some(Operator::Div),
        _ => None,
    }
}

fn is_separator(c: char) -> bool {
    c.is_whitespace() || c == '∘' || c == '.'
}

pub fn parse(text: &str) -> Result<Chain, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut ops = Vec::new();
    let mut i = 0;
    // A separator is required between operators; `expect_sep` is set after
    // each operator and cleared once one has been seen.
    let mut expect_sep = false;
    while i < chars.len() {
        let c = chars[i];
        if is_separator(c) {
            expect_sep = false;
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && !is_separator(chars[i]) {
            i += 1;
        }
        let word: String = chars[start..i].iter().collect();
        if word.eq_ignore_ascii_case("o") {
            if ops.is_empty() {
                return Err(ParseError {
                    position: start,
                    message: "composition separator before first operator".into(),
                });
            }
            expect_sep = false;
            continue;
        }
        if expect_sep {
            return Err(ParseError {
                position: start,
                message: "missing separator".into(),
            });
        }
        match lookup(&word) {
            Some(op) => ops.push(op),
            None => {
                return Err(ParseError {
                    position: start,
                    message: format!("unknown token {word:?}"),
                })
            }
        }
        expect_sep = true;
    }
    Chain::new(ops).ok_or_else(|| ParseError {
        position: 0,
        message: "empty expression".into(),
    })
}

/// Canonical text: lowercase names joined by single spaces.
pub fn format(chain: &Chain) -> String {
    chain.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use Operator::*;

    fn chain(ops: &[Operator]) -> Chain {
        Chain::new(ops.to_vec()).unwrap()
    }

    #[test]
    fn prose_order() {
        assert_eq!(parse("div curl grad").unwrap(), chain(&[Div, Curl, Grad]));
    }

    #[test]
    fn nabla_with_circle() {
        assert_eq!(parse("∇3 ∘ ∇1").unwrap(), chain(&[Div, Grad]));
        assert_eq!(parse("∇3∘∇1").unwrap(), chain(&[Div, Grad]));
    }

    #[test]
    fn other_separators_and_case() {
        assert_eq!(parse("DIV o Grad").unwrap(), chain(&[Div, Grad]));
        assert_eq!(parse("nabla2.nabla2").unwrap(), chain(&[Curl, Curl]));
        assert_eq!(parse("  curl\t\ncurl  ").unwrap(), chain(&[Curl, Curl]));
    }

    #[test]
    fn unknown_token_offset() {
        let err = parse("grad rot").unwrap_err();
        assert_eq!(err.position, 5);
        assert!(err.message.contains("\"rot\""), "{}", err.message);
    }

    #[test]
    fn offsets_count_characters() {
        let err = parse("∇3 ∘ foo").unwrap_err();
        assert_eq!(err.position, 5);
    }

    #[test]
    fn empty_input() {
        assert_eq!(parse("").unwrap_err().position, 0);
        assert!(parse("   ").is_err());
        assert!(parse("∘").is_err());
    }

    #[test]
    fn applied_arguments_rejected() {
        assert!(parse("div grad f").is_err());
        assert!(parse("curl curl f⃗").is_err());
    }

    #[test]
    fn misplaced_o() {
        assert!(parse("o grad").is_err());
        assert!(parse("gradcurl").is_err());
    }

    #[test]
    fn meaningless_chains_parse() {
        assert_eq!(parse("grad grad").unwrap(), chain(&[Grad, Grad]));
    }

    #[test]
    fn canonical_format() {
        assert_eq!(format(&chain(&[Div, Grad])), "div grad");
        assert_eq!(format(&chain(&[Curl, Curl, Curl])), "curl curl curl");
        assert_eq!(format(&parse("∇1").unwrap()), "grad");
    }

    #[test]
    fn round_trip_up_to_length_8() {
        for len in 1..=8 {
            for c in Chain::enumerate(len) {
                assert_eq!(parse(&format(&c)).unwrap(), c);
            }
        }
    }
}
