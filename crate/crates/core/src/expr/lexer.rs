use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Token {
    Ident(String),
    Number(f64),
    Empty,
    Full,
    Pipe,
    Amp,
    Tilde,
    Star,
    LParen,
    RParen,
    Eof,
}

impl Token {
    pub(crate) fn describe(&self) -> String {
        match self {
            Token::Ident(name) => format!("identifier {name:?}"),
            Token::Number(x) => format!("number {x}"),
            Token::Empty => "EMPTY".into(),
            Token::Full => "FULL".into(),
            Token::Pipe => "'|'".into(),
            Token::Amp => "'&'".into(),
            Token::Tilde => "'~'".into(),
            Token::Star => "'*'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::Eof => "end of input".into(),
        }
    }
}

/// A token with its 1-based line and column.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Spanned {
    pub token: Token,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let start = (line, column);
        let simple = match c {
            '|' => Some(Token::Pipe),
            '&' => Some(Token::Amp),
            '~' => Some(Token::Tilde),
            '*' => Some(Token::Star),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            _ => None,
        };
        let (token, len) = if let Some(t) = simple {
            (t, 1)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let len = chars[i..]
                .iter()
                .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                .count();
            let word: String = chars[i..i + len].iter().collect();
            let t = match word.as_str() {
                "EMPTY" => Token::Empty,
                "FULL" => Token::Full,
                _ => Token::Ident(word),
            };
            (t, len)
        } else if c.is_ascii_digit() {
            let mut len = chars[i..].iter().take_while(|c| c.is_ascii_digit()).count();
            if chars.get(i + len) == Some(&'.') {
                let frac = chars[i + len + 1..]
                    .iter()
                    .take_while(|c| c.is_ascii_digit())
                    .count();
                if frac == 0 {
                    return Err(Error::Syntax {
                        line,
                        column: column + len + 1,
                        found: describe_char(chars.get(i + len + 1)),
                        expected: "digit".into(),
                    });
                }
                len += 1 + frac;
            }
            let lit: String = chars[i..i + len].iter().collect();
            let x: f64 = lit
                .parse()
                .expect("digits with optional fraction parse as f64");
            (Token::Number(x), len)
        } else {
            return Err(Error::Syntax {
                line,
                column,
                found: format!("character {c:?}"),
                expected: "identifier, number, operator or parenthesis".into(),
            });
        };
        out.push(Spanned {
            token,
            line: start.0,
            column: start.1,
        });
        i += len;
        column += len;
    }
    out.push(Spanned {
        token: Token::Eof,
        line,
        column,
    });
    Ok(out)
}

fn describe_char(c: Option<&char>) -> String {
    match c {
        Some(c) => format!("character {c:?}"),
        None => "end of input".into(),
    }
}
