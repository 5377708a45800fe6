use super::error::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(i64),
    Arrow,
    Semi,
    LBrack,
    RBrack,
    Interrupt,
    IntChoice,
    Par,
    LBrace,
    RBrace,
    Slash,
    Spec,
    Backslash,
    LArrow,
    Assign,
    LParen,
    RParen,
    Dot,
    DotDot,
    Bang,
    Quest,
    Tick,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    Star,
    Comma,
    At,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
    /// Byte offsets, used to decide whether two tokens touch.
    pub start: usize,
    pub end: usize,
}

pub(crate) fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut line_start = 0;
    let at = |k: usize| chars.get(k).map(|c| c.1);
    while i < chars.len() {
        let (off, c) = chars[i];
        let col = src[line_start..off].chars().count() + 1;
        if c == '\n' {
            line += 1;
            line_start = off + 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '-' && at(i + 1) == Some('-') {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            let mut v: i64 = 0;
            while let Some(d) = at(i).and_then(|c| c.to_digit(10)) {
                v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(d as i64))
                    .ok_or_else(|| ParseError::new(ParseErrorKind::Lex("integer literal too large".into()), line, col))?;
                i += 1;
            }
            Tok::Int(v)
        } else if c.is_alphabetic() || c == '_' {
            while at(i).is_some_and(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|c| c.1).collect();
            Tok::Ident(s)
        } else {
            let two = |a: char, b: char| c == a && at(i + 1) == Some(b);
            let (tok, len) = if c == '|' && at(i + 1) == Some('~') && at(i + 2) == Some('|') {
                (Tok::IntChoice, 3)
            } else if two('-', '>') {
                (Tok::Arrow, 2)
            } else if two('[', '>') {
                (Tok::Interrupt, 2)
            } else if two('|', '|') {
                (Tok::Par, 2)
            } else if two('<', '>') {
                (Tok::Spec, 2)
            } else if two('<', '-') {
                (Tok::LArrow, 2)
            } else if two('<', '=') {
                (Tok::Le, 2)
            } else if two('>', '=') {
                (Tok::Ge, 2)
            } else if two('!', '=') {
                (Tok::Ne, 2)
            } else if two(':', '=') {
                (Tok::Assign, 2)
            } else if two('.', '.') {
                (Tok::DotDot, 2)
            } else {
                let t = match c {
                    ';' => Tok::Semi,
                    '[' => Tok::LBrack,
                    ']' => Tok::RBrack,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '/' => Tok::Slash,
                    '\\' => Tok::Backslash,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '.' => Tok::Dot,
                    '!' => Tok::Bang,
                    '?' => Tok::Quest,
                    '✓' => Tok::Tick,
                    '=' => Tok::Eq,
                    '<' => Tok::Lt,
                    '>' => Tok::Gt,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    ',' => Tok::Comma,
                    '@' => Tok::At,
                    other => {
                        return Err(ParseError::new(
                            ParseErrorKind::Lex(format!("unexpected character {other:?}")),
                            line,
                            col,
                        ))
                    }
                };
                (t, 1)
            };
            i += len;
            tok
        };
        let end = chars.get(i).map_or(src.len(), |c| c.0);
        out.push(Token {
            tok,
            line,
            col,
            start: chars[start].0,
            end,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn operators_and_comments() {
        assert_eq!(
            toks("a -> b [] c |~| d -- trailing\n[> ||{x} <> <- := .."),
            vec![
                Tok::Ident("a".into()),
                Tok::Arrow,
                Tok::Ident("b".into()),
                Tok::LBrack,
                Tok::RBrack,
                Tok::Ident("c".into()),
                Tok::IntChoice,
                Tok::Ident("d".into()),
                Tok::Interrupt,
                Tok::Par,
                Tok::LBrace,
                Tok::Ident("x".into()),
                Tok::RBrace,
                Tok::Spec,
                Tok::LArrow,
                Tok::Assign,
                Tok::DotDot,
            ]
        );
    }

    #[test]
    fn positions_are_one_based() {
        let t = lex("P =\n  a").unwrap();
        assert_eq!((t[2].line, t[2].col), (2, 3));
        let err = lex("P = #").unwrap_err();
        assert_eq!((err.line, err.col), (1, 5));
    }
}
