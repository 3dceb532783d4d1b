//! Lexeme scanner shared by the parser and the tokenizer.
//!
//! The tokenizer runs it only over the gaps of a node's span that no child
//! covers, so lexemes never straddle node boundaries.

use super::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexKind {
    Word,
    Number,
    Str,
    Char,
    Punct,
}

impl LexKind {
    /// Identifiers, keywords and literals.
    pub fn is_wordlike(self) -> bool {
        !matches!(self, LexKind::Punct)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lexeme {
    pub kind: LexKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub offset: usize,
    pub message: String,
}

const TWO_CHAR_PUNCT: &[&str] = &[
    "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=", "%=",
];

/// Scans `source[span]`. Unterminated strings and comments are errors.
pub fn lex(source: &str, span: Span) -> Result<Vec<Lexeme>, LexError> {
    scan(source, span, true)
}

/// Like [`lex`] but never fails: unterminated constructs run to the end of
/// the span.
pub fn lex_lenient(source: &str, span: Span) -> Vec<Lexeme> {
    scan(source, span, false).unwrap_or_default()
}

fn scan(source: &str, span: Span, strict: bool) -> Result<Vec<Lexeme>, LexError> {
    let bytes = source.as_bytes();
    let end = span.end;
    let mut i = span.start;
    let mut out = Vec::new();
    let unterminated = |offset: usize, what: &str| LexError {
        offset,
        message: format!("unterminated {}", what),
    };
    while i < end {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'/' && i + 1 < end && bytes[i + 1] == b'/' {
            while i < end && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        if c == b'/' && i + 1 < end && bytes[i + 1] == b'*' {
            let start = i;
            i += 2;
            loop {
                if i + 1 >= end {
                    if strict {
                        return Err(unterminated(start, "comment"));
                    }
                    i = end;
                    break;
                }
                if bytes[i] == b'*' && bytes[i + 1] == b'/' {
                    i += 2;
                    break;
                }
                i += 1;
            }
            continue;
        }
        let start = i;
        let kind = if c == b'"' || c == b'\'' {
            i += 1;
            let mut closed = false;
            while i < end {
                match bytes[i] {
                    b'\\' => i += 2,
                    b'\n' => break,
                    q if q == c => {
                        i += 1;
                        closed = true;
                        break;
                    }
                    _ => i += 1,
                }
            }
            i = i.min(end);
            if !closed && strict {
                return Err(unterminated(start, "literal"));
            }
            if c == b'"' {
                LexKind::Str
            } else {
                LexKind::Char
            }
        } else if c.is_ascii_digit() {
            while i < end && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'.' || bytes[i] == b'_') {
                i += 1;
            }
            LexKind::Number
        } else if c.is_ascii_alphabetic() || c == b'_' || c == b'$' || c >= 0x80 {
            while i < end
                && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'$' || bytes[i] >= 0x80)
            {
                i += 1;
            }
            LexKind::Word
        } else {
            if i + 2 <= end && TWO_CHAR_PUNCT.contains(&&source[i..i + 2]) {
                i += 2;
            } else {
                i += 1;
            }
            LexKind::Punct
        };
        out.push(Lexeme {
            kind,
            span: Span::new(start, i),
        });
    }
    Ok(out)
}
