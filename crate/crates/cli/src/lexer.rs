//! Tokenizer. Newlines are significant except inside square brackets;
//! `#` starts a comment running to the end of the line.

use crate::ast::Span;
use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(String),
    Str(String),
    Eq,
    Colon,
    Semi,
    Comma,
    Slash,
    Minus,
    Arrow,
    LeftArrow,
    Le,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Newline,
    Eof,
}

impl Tok {
    /// How the token is named in diagnostics.
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("`{s}`"),
            Tok::Str(s) => format!("{s:?}"),
            Tok::Newline => "newline".into(),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.symbol()),
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Tok::Eq => "=",
            Tok::Colon => ":",
            Tok::Semi => ";",
            Tok::Comma => ",",
            Tok::Slash => "/",
            Tok::Minus => "-",
            Tok::Arrow => "->",
            Tok::LeftArrow => "<-",
            Tok::Le => "<=",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            _ => "",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    let mut depth = 0usize;
    while let Some(&c) = chars.peek() {
        let span = Span { line, column };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        let tok = match c {
            '\n' => {
                bump(&mut chars);
                if depth > 0 {
                    continue;
                }
                Tok::Newline
            }
            c if c.is_whitespace() => {
                bump(&mut chars);
                continue;
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                        s.push(c);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                Tok::Ident(s)
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                    s.push(c);
                    bump(&mut chars);
                }
                Tok::Int(s)
            }
            '"' => {
                bump(&mut chars);
                let mut s = String::new();
                loop {
                    match bump(&mut chars) {
                        Some('"') => break,
                        Some('\n') | None => {
                            return Err(ParseError::new(span, "unterminated string", vec!["`\"`".into()]));
                        }
                        Some(c) => s.push(c),
                    }
                }
                Tok::Str(s)
            }
            '-' | '<' => {
                bump(&mut chars);
                match (c, chars.peek()) {
                    ('-', Some('>')) => {
                        bump(&mut chars);
                        Tok::Arrow
                    }
                    ('<', Some('-')) => {
                        bump(&mut chars);
                        Tok::LeftArrow
                    }
                    ('<', Some('=')) => {
                        bump(&mut chars);
                        Tok::Le
                    }
                    ('-', _) => Tok::Minus,
                    _ => {
                        return Err(ParseError::new(
                            span,
                            "unexpected character `<`",
                            vec!["`<-`".into(), "`<=`".into()],
                        ))
                    }
                }
            }
            _ => {
                bump(&mut chars);
                match c {
                    '=' => Tok::Eq,
                    ':' => Tok::Colon,
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    '/' => Tok::Slash,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '[' => {
                        depth += 1;
                        Tok::LBracket
                    }
                    ']' => {
                        depth = depth.saturating_sub(1);
                        Tok::RBracket
                    }
                    other => {
                        return Err(ParseError::new(span, &format!("unexpected character `{other}`"), vec![]));
                    }
                }
            }
        };
        out.push(Token { tok, span });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span { line, column },
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<Tok> {
        tokenize(text).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn arrows_and_comments() {
        assert_eq!(
            kinds("a <- b -> c <= -1/2 # note\n"),
            vec![
                Tok::Ident("a".into()),
                Tok::LeftArrow,
                Tok::Ident("b".into()),
                Tok::Arrow,
                Tok::Ident("c".into()),
                Tok::Le,
                Tok::Minus,
                Tok::Int("1".into()),
                Tok::Slash,
                Tok::Int("2".into()),
                Tok::Newline,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn brackets_swallow_newlines() {
        assert_eq!(kinds("[1,\n2]").iter().filter(|t| **t == Tok::Newline).count(), 0);
        assert_eq!(kinds("{\n}").iter().filter(|t| **t == Tok::Newline).count(), 1);
    }

    #[test]
    fn positions() {
        let toks = tokenize("group\n  Z2").unwrap();
        assert_eq!(toks[2].span, Span { line: 2, column: 3 });
    }

    #[test]
    fn bad_characters() {
        let e = tokenize("a $").unwrap_err();
        assert_eq!(e.span, Span { line: 1, column: 3 });
        assert!(tokenize("\"open").is_err());
    }
}
