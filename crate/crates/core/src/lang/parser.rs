//! Recursive-descent parser for the identity language.
//!
//! ```text
//! expr     := ["+"|"-"] term (("+"|"-") term)*
//! term     := rational ["*"] chain | rational | chain
//! chain    := product ("@" product)*
//! product  := power (["*"] power)*          juxtaposition, left-normed
//! power    := factor ["^" n]                left-normed power
//! factor   := t<k> | "(" expr ")" | "[" expr "," expr "]"
//!           | "A(" expr "," expr "," expr ")" | "J(" ... ")"
//!           | "q{q=" rational "}(" expr "," expr ")"
//!           | name ["{q=" rational "}"] "(" expr ("," expr)* ")"
//! ```
//! A bare rational is only accepted when it is zero.

use num_rational::BigRational;
use num_traits::Zero;

use super::ast::Expr;
use super::macros::MacroTable;
use crate::error::{Error, Result};
use crate::term::parse_rational;

pub fn parse_with(text: &str, macros: &MacroTable) -> Result<Expr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        macros,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    macros: &'a MacroTable,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms: Vec<(BigRational, Expr)> = Vec::new();
        let mut sign = if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        };
        loop {
            let (c, e) = self.term()?;
            let c = if sign < 0 { -c } else { c };
            terms.push((c, e));
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                break;
            }
        }
        if terms.len() == 1 && terms[0].0 == BigRational::from_integer(1.into()) {
            return Ok(terms.pop().unwrap().1);
        }
        Ok(Expr::Sum(terms))
    }

    fn term(&mut self) -> Result<(BigRational, Expr)> {
        let one = BigRational::from_integer(1.into());
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let start = self.pos;
            let c = self.rational()?;
            self.eat(b'*');
            if self.starts_factor() {
                return Ok((c, self.chain()?));
            }
            if c.is_zero() {
                return Ok((one, Expr::Zero));
            }
            self.pos = start;
            return Err(self.error("a nonzero constant is not an algebra element"));
        }
        Ok((one, self.chain()?))
    }

    fn rational(&mut self) -> Result<BigRational> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos < self.src.len()
            && self.src[self.pos] == b'/'
            && self.src.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        parse_rational(text).map_err(|_| Error::Syntax {
            pos: start,
            msg: "expected a rational number".into(),
        })
    }

    fn signed_rational(&mut self) -> Result<BigRational> {
        let neg = self.eat(b'-');
        let q = self.rational()?;
        Ok(if neg { -q } else { q })
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c == b'(' || c == b'[' || c.is_ascii_alphabetic())
    }

    fn chain(&mut self) -> Result<Expr> {
        let mut e = self.product()?;
        while self.eat(b'@') {
            let rhs = self.product()?;
            e = Expr::star(e, rhs);
        }
        Ok(e)
    }

    fn product(&mut self) -> Result<Expr> {
        let mut e = self.power()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.power()?;
                e = Expr::mul(e, rhs);
            } else if self.starts_factor() {
                let rhs = self.power()?;
                e = Expr::mul(e, rhs);
            } else {
                break;
            }
        }
        Ok(e)
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.factor()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let n: usize = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::Syntax {
                pos: start,
                msg: "expected a positive exponent".into(),
            })?;
        let mut e = base.clone();
        for _ in 1..n {
            e = Expr::mul(e, base.clone());
        }
        Ok(e)
    }

    fn identifier(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        // `t<digits>` is always a variable, so `t1t2` splits into two factors.
        if self.src[self.pos] == b't' && self.src.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        } else {
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
        }
        String::from_utf8(self.src[start..self.pos].to_vec()).unwrap()
    }

    fn args(&mut self) -> Result<Vec<Expr>> {
        self.expect(b'(')?;
        let mut args = vec![self.expr()?];
        while self.eat(b',') {
            args.push(self.expr()?);
        }
        self.expect(b')')?;
        Ok(args)
    }

    fn fixed_args<const N: usize>(&mut self, what: &str) -> Result<[Expr; N]> {
        let args = self.args()?;
        let got = args.len();
        args.try_into().map_err(|_| Error::Arity {
            name: what.to_string(),
            expected: N,
            got,
        })
    }

    fn q_param(&mut self) -> Result<Option<BigRational>> {
        if !self.eat(b'{') {
            return Ok(None);
        }
        self.expect(b'q')?;
        self.expect(b'=')?;
        let q = self.signed_rational()?;
        self.expect(b'}')?;
        Ok(Some(q))
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b']')?;
                Ok(Expr::bracket(a, b))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.identifier();
                if let Some(k) = name.strip_prefix('t').and_then(|d| d.parse::<u32>().ok()) {
                    if !(1..=255).contains(&k) {
                        self.pos = start;
                        return Err(self.error("variable index must be in 1..=255"));
                    }
                    return Ok(Expr::Var(k as u8));
                }
                match name.as_str() {
                    "A" => {
                        let [a, b, c] = self.fixed_args::<3>("A")?;
                        Ok(Expr::assoc(a, b, c))
                    }
                    "J" => {
                        let [a, b, c] = self.fixed_args::<3>("J")?;
                        Ok(Expr::plus_assoc(a, b, c))
                    }
                    "q" => {
                        let q = self
                            .q_param()?
                            .ok_or_else(|| self.error("expected `{q=...}` after `q`"))?;
                        let [a, b] = self.fixed_args::<2>("q")?;
                        Ok(Expr::QMul(q, Box::new(a), Box::new(b)))
                    }
                    _ => {
                        let def = self
                            .macros
                            .get(&name)
                            .ok_or_else(|| Error::UnknownMacro(name.clone()))?;
                        let (arity, takes_q) = (def.arity, def.takes_q());
                        let q = self.q_param()?;
                        match (takes_q, &q) {
                            (true, None) => {
                                return Err(self.error(&format!("`{name}` needs a `{{q=...}}` parameter")))
                            }
                            (false, Some(_)) => {
                                return Err(self.error(&format!("`{name}` takes no parameter")))
                            }
                            _ => {}
                        }
                        let args = self.args()?;
                        if args.len() != arity {
                            return Err(Error::Arity {
                                name,
                                expected: arity,
                                got: args.len(),
                            });
                        }
                        Ok(Expr::Macro { name, q, args })
                    }
                }
            }
            Some(_) => Err(self.error("expected a factor")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
