//! Text syntax for simplices: `w=0011; phi=[0,1,3]; phi=[0,2]`.

use super::{BmSimplex, BmWord, ShapeError};

/// The grammar, in ISO EBNF.
pub const SIMPLEX_EBNF: &str = r#"simplex = ws , word , { ws , ";" , ws , map } , [ ws , ";" ] , ws ;
word    = "w" , ws , "=" , ws , bit , { bit } ;
map     = "phi" , ws , "=" , ws , "[" , ws , nat , { ws , "," , ws , nat } , ws , "]" ;
nat     = digit , { digit } ;
bit     = "0" | "1" ;
digit   = "0" | "1" | "2" | "3" | "4" | "5" | "6" | "7" | "8" | "9" ;
ws      = { " " | "\t" | "\r" | "\n" } ;
"#;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Digits(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ShapeError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while i < chars.len() && chars[i].1.is_ascii_alphanumeric() {
                s.push(chars[i].1);
                i += 1;
            }
            out.push((pos, Tok::Ident(s)));
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                s.push(chars[i].1);
                i += 1;
            }
            out.push((pos, Tok::Digits(s)));
        } else if "=;[],".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ShapeError::Parse { pos, token: c.to_string(), message: "unexpected character".into() });
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

fn show(t: &Tok) -> String {
    match t {
        Tok::Ident(s) | Tok::Digits(s) => s.clone(),
        Tok::Sym(c) => c.to_string(),
        Tok::End => "end of input".into(),
    }
}

impl Lexer {
    fn peek(&self) -> &(usize, Tok) {
        &self.toks[self.at]
    }

    fn next(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, message: &str) -> Result<T, ShapeError> {
        let (pos, t) = self.peek();
        Err(ShapeError::Parse { pos: *pos, token: show(t), message: message.into() })
    }

    fn sym(&mut self, c: char) -> Result<(), ShapeError> {
        if self.peek().1 == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            self.fail(&format!("expected '{c}'"))
        }
    }

    fn ident(&mut self, name: &str) -> Result<(), ShapeError> {
        if self.peek().1 == Tok::Ident(name.into()) {
            self.next();
            Ok(())
        } else {
            self.fail(&format!("expected '{name}'"))
        }
    }

    fn nat(&mut self) -> Result<usize, ShapeError> {
        match &self.peek().1 {
            Tok::Digits(d) => match d.parse() {
                Ok(v) => {
                    self.next();
                    Ok(v)
                }
                Err(_) => self.fail("number too large"),
            },
            _ => self.fail("expected a number"),
        }
    }
}

/// Parses the simplex syntax. Errors carry the byte offset and the
/// offending token.
pub fn parse_simplex(src: &str) -> Result<BmSimplex, ShapeError> {
    let mut lx = Lexer { toks: lex(src)?, at: 0 };
    lx.ident("w")?;
    lx.sym('=')?;
    let (pos, tok) = lx.peek().clone();
    let word = match &tok {
        Tok::Digits(d) => BmWord::parse(d).map_err(|e| ShapeError::Parse { pos, token: d.clone(), message: e.to_string() })?,
        _ => return lx.fail("expected a bit string"),
    };
    lx.next();
    let mut s = BmSimplex::vertex(word);
    loop {
        match lx.peek().1 {
            Tok::End => break,
            Tok::Sym(';') => {
                lx.next();
                if lx.peek().1 == Tok::End {
                    break;
                }
            }
            _ => return lx.fail("expected ';' or end of input"),
        }
        let start = lx.peek().0;
        lx.ident("phi")?;
        lx.sym('=')?;
        lx.sym('[')?;
        let mut phi = vec![lx.nat()?];
        while lx.peek().1 == Tok::Sym(',') {
            lx.next();
            phi.push(lx.nat()?);
        }
        lx.sym(']')?;
        s = s.push(phi.clone()).map_err(|e| ShapeError::Parse {
            pos: start,
            token: format!("{phi:?}"),
            message: e.to_string(),
        })?;
    }
    Ok(s)
}
