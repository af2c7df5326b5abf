use super::{DslError, DslResult, Pos, KEYWORDS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Name(String),
    Keyword(&'static str),
    Colon,
    Dot,
    Eq,
    Tilde,
    Arrow,
    DoubleArrow,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Name(n) => format!("name `{n}`"),
            Tok::Keyword(k) => format!("keyword `{k}`"),
            Tok::Colon => "`:`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DoubleArrow => "`=>`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub(crate) fn is_bare_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, ':' | '.' | '=' | '~' | '#' | '"')
}

pub(crate) fn lex(text: &str) -> DslResult<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        let next = chars.get(i + 1).copied();
        let simple = match (c, next) {
            ('-', Some('>')) => Some((Tok::Arrow, 2)),
            ('=', Some('>')) => Some((Tok::DoubleArrow, 2)),
            (':', _) => Some((Tok::Colon, 1)),
            ('.', _) => Some((Tok::Dot, 1)),
            ('=', _) => Some((Tok::Eq, 1)),
            ('~', _) => Some((Tok::Tilde, 1)),
            _ => None,
        };
        if let Some((tok, len)) = simple {
            for _ in 0..len {
                bump!();
            }
            out.push(Token { tok, pos });
            continue;
        }
        if c == '"' {
            bump!();
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None | Some('\n') => {
                        return Err(DslError::Lex {
                            pos,
                            message: "unterminated quoted name".into(),
                        })
                    }
                    Some('"') => {
                        bump!();
                        break;
                    }
                    Some('\\') => {
                        bump!();
                        match chars.get(i) {
                            Some(&e @ ('"' | '\\')) => {
                                s.push(e);
                                bump!();
                            }
                            _ => {
                                return Err(DslError::Lex {
                                    pos: Pos { line, col },
                                    message: "only \\\" and \\\\ may be escaped".into(),
                                })
                            }
                        }
                    }
                    Some(&ch) => {
                        s.push(ch);
                        bump!();
                    }
                }
            }
            if s.is_empty() {
                return Err(DslError::Lex {
                    pos,
                    message: "empty quoted name".into(),
                });
            }
            out.push(Token {
                tok: Tok::Name(s),
                pos,
            });
            continue;
        }
        let mut s = String::new();
        while i < chars.len()
            && is_bare_char(chars[i])
            && !(chars[i] == '-' && chars.get(i + 1) == Some(&'>'))
        {
            s.push(chars[i]);
            bump!();
        }
        if s.is_empty() {
            return Err(DslError::Lex {
                pos,
                message: format!("unexpected character `{c}`"),
            });
        }
        let tok = match KEYWORDS.iter().find(|k| **k == s) {
            Some(k) => Tok::Keyword(k),
            None => Tok::Name(s),
        };
        out.push(Token { tok, pos });
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn arrows_split_names() {
        assert_eq!(
            toks("f : a->b # note"),
            vec![
                Tok::Name("f".into()),
                Tok::Colon,
                Tok::Name("a".into()),
                Tok::Arrow,
                Tok::Name("b".into()),
                Tok::Eof
            ]
        );
        assert_eq!(toks("id *: i")[1], Tok::Name("*".into()));
        assert_eq!(toks("F=>G")[1], Tok::DoubleArrow);
    }

    #[test]
    fn quoted_names_are_never_keywords() {
        assert_eq!(
            toks("\"id\" id")[..2],
            [Tok::Name("id".into()), Tok::Keyword("id")]
        );
        assert_eq!(toks(r#""a.\"b""#)[0], Tok::Name("a.\"b".into()));
        assert!(matches!(lex("\"open"), Err(DslError::Lex { .. })));
    }

    #[test]
    fn positions_are_one_based() {
        let t = lex("a\n  b").unwrap();
        assert_eq!((t[1].pos.line, t[1].pos.col), (2, 3));
    }
}
