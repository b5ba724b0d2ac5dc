use super::{Expr, FunctionExpr, ParseError};
use crate::C64;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    /// Value, imaginary flag, and whether the literal is a plain digit string.
    Num(f64, bool, bool),
    Z,
    Func(Func),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    End,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Func {
    Pow,
    Exp,
    Sin,
    Cos,
}

fn err(position: usize, message: impl Into<String>) -> ParseError {
    ParseError { position: position + 1, message: message.into() }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let simple = match ch {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, start));
            i += 1;
            continue;
        }
        let digit_at = |k: usize| k < chars.len() && chars[k].is_ascii_digit();
        if ch.is_ascii_digit() || (ch == '.' && digit_at(i + 1)) {
            let mut plain = true;
            while digit_at(i) {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                plain = false;
                i += 1;
                while digit_at(i) {
                    i += 1;
                }
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let sign = i + 1 < chars.len() && (chars[i + 1] == '+' || chars[i + 1] == '-');
                let first = if sign { i + 2 } else { i + 1 };
                if digit_at(first) {
                    plain = false;
                    i = first;
                    while digit_at(i) {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let v: f64 = text.parse().map_err(|_| err(start, format!("invalid number '{text}'")))?;
            let imag = i < chars.len() && chars[i] == 'i' && !(i + 1 < chars.len() && chars[i + 1].is_alphanumeric());
            if imag {
                i += 1;
            }
            out.push((Tok::Num(v, imag, plain && !imag), start));
            continue;
        }
        if ch.is_alphabetic() {
            while i < chars.len() && chars[i].is_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let tok = match word.as_str() {
                "z" => Tok::Z,
                "pow" => Tok::Func(Func::Pow),
                "exp" => Tok::Func(Func::Exp),
                "sin" => Tok::Func(Func::Sin),
                "cos" => Tok::Func(Func::Cos),
                _ => return Err(err(start, format!("unknown identifier '{word}'"))),
            };
            out.push((tok, start));
            continue;
        }
        return Err(err(start, format!("unexpected character '{ch}'")));
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> ParseError {
        let found = match self.peek() {
            Tok::End => "end of input".to_string(),
            t => format!("{t:?}"),
        };
        err(self.offset(), format!("expected {what}, found {found}"))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            // A sign directly on a literal folds into the constant.
            if let (Tok::Num(v, imag, _), next) = (self.peek_at(1).clone(), self.peek_at(2)) {
                if *next != Tok::Caret {
                    self.bump();
                    self.bump();
                    return Ok(Expr::Const(literal(-v, imag)));
                }
            }
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let k = self.integer()?;
            return Ok(Expr::IntPow(Box::new(base), k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i32, ParseError> {
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Num(v, _, true) if v <= i32::MAX as f64 => {
                self.bump();
                Ok(if neg { -(v as i32) } else { v as i32 })
            }
            _ => Err(self.unexpected("integer exponent")),
        }
    }

    // "(" ["-"] number ("+"|"-") number "i" ")"; restores the position on mismatch.
    fn paren_complex(&mut self) -> Option<C64> {
        let save = self.pos;
        let mut attempt = || {
            if *self.peek() != Tok::LParen {
                return None;
            }
            self.bump();
            let sign = if *self.peek() == Tok::Minus {
                self.bump();
                -1.0
            } else {
                1.0
            };
            let re = match self.bump() {
                Tok::Num(v, false, _) => sign * v,
                _ => return None,
            };
            let isign = match self.bump() {
                Tok::Plus => 1.0,
                Tok::Minus => -1.0,
                _ => return None,
            };
            let im = match self.bump() {
                Tok::Num(v, true, _) => isign * v,
                _ => return None,
            };
            if self.bump() != Tok::RParen {
                return None;
            }
            Some(C64::new(re, im))
        };
        let r = attempt();
        if r.is_none() {
            self.pos = save;
        }
        r
    }

    fn complexnum(&mut self) -> Result<C64, ParseError> {
        if let Some(c) = self.paren_complex() {
            return Ok(c);
        }
        let sign = if *self.peek() == Tok::Minus {
            self.bump();
            -1.0
        } else {
            1.0
        };
        match self.peek().clone() {
            Tok::Num(v, imag, _) => {
                self.bump();
                Ok(literal(sign * v, imag))
            }
            _ => Err(self.unexpected("complex number")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(v, imag, _) => {
                self.bump();
                Ok(Expr::Const(literal(v, imag)))
            }
            Tok::Z => {
                self.bump();
                Ok(Expr::Var)
            }
            Tok::LParen => {
                if let Some(c) = self.paren_complex() {
                    return Ok(Expr::Const(c));
                }
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Func(func) => {
                self.bump();
                self.expect(Tok::LParen, "'('")?;
                let arg = self.expr()?;
                let e = match func {
                    Func::Pow => {
                        self.expect(Tok::Comma, "','")?;
                        let alpha = self.complexnum()?;
                        Expr::Pow(Box::new(arg), alpha)
                    }
                    Func::Exp => Expr::Exp(Box::new(arg)),
                    Func::Sin => Expr::Sin(Box::new(arg)),
                    Func::Cos => Expr::Cos(Box::new(arg)),
                };
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            _ => Err(self.unexpected("expression")),
        }
    }
}

fn literal(v: f64, imag: bool) -> C64 {
    if imag {
        C64::new(0.0, v)
    } else {
        C64::new(v, 0.0)
    }
}

/// Parses an expression in z. Grammar:
///
/// ```text
/// expr    := term (("+"|"-") term)*
/// term    := factor (("*"|"/") factor)*
/// factor  := "-" factor | atom ["^" integer]
/// atom    := number ["i"] | "(" ["-"] number ("+"|"-") number "i" ")"
///          | "z" | call | "(" expr ")"
/// call    := "pow" "(" expr "," complexnum ")" | ("exp"|"sin"|"cos") "(" expr ")"
/// ```
pub fn parse(src: &str) -> Result<FunctionExpr, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("end of input"));
    }
    Ok(FunctionExpr::from_ast(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_node() {
        let f = parse("pow(z-0, 1.5)").unwrap();
        assert_eq!(f.as_shifted_power(), Some((C64::new(0.0, 0.0), C64::new(1.5, 0.0))));
    }

    #[test]
    fn sum_of_exp_and_constant() {
        let f = parse("exp(2*z) + 3").unwrap();
        match f.ast() {
            Expr::Add(a, b) => {
                assert!(matches!(a.as_ref(), Expr::Exp(_)));
                assert_eq!(b.as_ref(), &Expr::Const(C64::new(3.0, 0.0)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unclosed_call_position() {
        let e = parse("pow(z-1,").unwrap_err();
        assert_eq!(e.position, 9);
        let e = parse("exp(z").unwrap_err();
        assert_eq!(e.position, 6);
        let e = parse("z + q").unwrap_err();
        assert_eq!(e.position, 5);
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse("(1-2i)").unwrap().ast(), &Expr::Const(C64::new(1.0, -2.0)));
        assert_eq!(parse("2.5i").unwrap().ast(), &Expr::Const(C64::new(0.0, 2.5)));
        assert_eq!(parse("pow(z, (0.5+1e-3i))").unwrap().eval(C64::new(1.0, 0.0)).unwrap(), C64::new(1.0, 0.0));
        assert_eq!(parse("pow(z, -0.5i)").unwrap().ast(), &Expr::Pow(Box::new(Expr::Var), C64::new(0.0, -0.5)));
    }

    #[test]
    fn integer_powers_and_signs() {
        let f = parse("-2^2").unwrap();
        assert_eq!(f.eval(C64::new(0.0, 0.0)).unwrap(), C64::new(-4.0, 0.0));
        let f = parse("(z+1)^-2").unwrap();
        assert_eq!(f.eval(C64::new(1.0, 0.0)).unwrap(), C64::new(0.25, 0.0));
        assert!(parse("z^2.5").is_err());
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(parse(" pow ( z - 0 , 2 ) ").unwrap(), parse("pow(z-0,2)").unwrap());
    }
}
