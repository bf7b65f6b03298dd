use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Dot,
    Colon,
    At,
    Caret,
    Bang,
    Question,
    PiBang,
    Tilde,
    Implies,
    RevImplies,
    Iff,
    Equals,
    NotEquals,
    And,
    Or,
    Arrow,
    Lower(String),
    Upper(String),
    Dollar(String),
    Int(String),
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Lower(s) | Tok::Upper(s) | Tok::Dollar(s) | Tok::Int(s) => s.clone(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::LBrack => "[".into(),
            Tok::RBrack => "]".into(),
            Tok::Comma => ",".into(),
            Tok::Dot => ".".into(),
            Tok::Colon => ":".into(),
            Tok::At => "@".into(),
            Tok::Caret => "^".into(),
            Tok::Bang => "!".into(),
            Tok::Question => "?".into(),
            Tok::PiBang => "!>".into(),
            Tok::Tilde => "~".into(),
            Tok::Implies => "=>".into(),
            Tok::RevImplies => "<=".into(),
            Tok::Iff => "<=>".into(),
            Tok::Equals => "=".into(),
            Tok::NotEquals => "!=".into(),
            Tok::And => "&".into(),
            Tok::Or => "|".into(),
            Tok::Arrow => ">".into(),
        }
    }
}

pub fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = 1;
    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        match c {
            '\n' => {
                line += 1;
                i += 1;
            }
            c if c.is_whitespace() => i += 1,
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if next == Some('*') => {
                i += 2;
                while i + 1 < chars.len() && !(chars[i] == '*' && chars[i + 1] == '/') {
                    if chars[i] == '\n' {
                        line += 1;
                    }
                    i += 1;
                }
                if i + 1 >= chars.len() {
                    return Err(ParseError::syntax(line, "unterminated comment"));
                }
                i += 2;
            }
            '\'' => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i] != '\'' {
                    if chars[i] == '\\' {
                        i += 1;
                    }
                    i += 1;
                }
                if i >= chars.len() {
                    return Err(ParseError::syntax(line, "unterminated quoted name"));
                }
                i += 1;
                out.push((Tok::Lower(chars[start..i].iter().collect()), line));
            }
            '(' | ')' | '[' | ']' | ',' | '.' | ':' | '@' | '^' | '?' | '~' | '&' | '|' | '>' => {
                let t = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBrack,
                    ']' => Tok::RBrack,
                    ',' => Tok::Comma,
                    '.' => Tok::Dot,
                    ':' => Tok::Colon,
                    '@' => Tok::At,
                    '^' => Tok::Caret,
                    '?' => Tok::Question,
                    '~' => Tok::Tilde,
                    '&' => Tok::And,
                    '|' => Tok::Or,
                    _ => Tok::Arrow,
                };
                out.push((t, line));
                i += 1;
            }
            '!' => {
                let t = match next {
                    Some('>') => {
                        i += 1;
                        Tok::PiBang
                    }
                    Some('=') => {
                        i += 1;
                        Tok::NotEquals
                    }
                    _ => Tok::Bang,
                };
                out.push((t, line));
                i += 1;
            }
            '=' => {
                if next == Some('>') {
                    out.push((Tok::Implies, line));
                    i += 2;
                } else {
                    out.push((Tok::Equals, line));
                    i += 1;
                }
            }
            '<' => {
                if next == Some('=') && chars.get(i + 2) == Some(&'>') {
                    out.push((Tok::Iff, line));
                    i += 3;
                } else if next == Some('=') {
                    out.push((Tok::RevImplies, line));
                    i += 2;
                } else {
                    return Err(ParseError::syntax(line, "unexpected '<'"));
                }
            }
            c if c.is_alphanumeric() || c == '_' || c == '$' => {
                let start = i;
                i += 1;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let w: String = chars[start..i].iter().collect();
                let t = if c == '$' {
                    Tok::Dollar(w)
                } else if c.is_ascii_digit() {
                    Tok::Int(w)
                } else if c.is_uppercase() || c == '_' {
                    Tok::Upper(w)
                } else {
                    Tok::Lower(w)
                };
                out.push((t, line));
            }
            _ => return Err(ParseError::syntax(line, &format!("unexpected character '{}'", c))),
        }
    }
    Ok(out)
}
