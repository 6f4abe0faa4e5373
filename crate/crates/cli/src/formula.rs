//! Cost-formula text syntax: atoms `x <= INT`, operators `!` `&` `|` with
//! that precedence, and parentheses.

use parikh_core::CostFormula;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Not,
    And,
    Or,
    Open,
    Close,
    Var,
    Le,
    Int(u64),
}

pub fn parse_formula(text: &str) -> Result<CostFormula, String> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, at: 0 };
    let formula = parser.or_level()?;
    if parser.at != parser.tokens.len() {
        return Err(format!(
            "unexpected trailing input at token {}",
            parser.at + 1
        ));
    }
    Ok(formula)
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, String> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '!' => {
                tokens.push((i, Token::Not));
                i += 1;
            }
            '&' => {
                tokens.push((i, Token::And));
                i += 1;
            }
            '|' => {
                tokens.push((i, Token::Or));
                i += 1;
            }
            '(' => {
                tokens.push((i, Token::Open));
                i += 1;
            }
            ')' => {
                tokens.push((i, Token::Close));
                i += 1;
            }
            'x' => {
                tokens.push((i, Token::Var));
                i += 1;
            }
            '<' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    tokens.push((i, Token::Le));
                    i += 2;
                } else {
                    return Err(format!("column {}: expected `<=`", i + 1));
                }
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let value: u64 = text[start..i]
                    .parse()
                    .map_err(|_| format!("column {}: integer too large", start + 1))?;
                tokens.push((start, Token::Int(value)));
            }
            other => return Err(format!("column {}: unexpected {other:?}", i + 1)),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn advance(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.at).map(|(_, t)| t.clone());
        if token.is_some() {
            self.at += 1;
        }
        token
    }

    fn expect(&mut self, expected: Token, what: &str) -> Result<(), String> {
        match self.advance() {
            Some(found) if found == expected => Ok(()),
            Some(found) => Err(format!(
                "{}: expected {what}, found {found:?}",
                self.position()
            )),
            None => Err(format!("{}: expected {what}, found end", self.position())),
        }
    }

    fn position(&self) -> String {
        match self.tokens.get(self.at.saturating_sub(1)) {
            Some((column, _)) => format!("column {}", column + 1),
            None => "end of input".to_string(),
        }
    }

    fn or_level(&mut self) -> Result<CostFormula, String> {
        let mut left = self.and_level()?;
        while self.peek() == Some(&Token::Or) {
            self.advance();
            left = left.or(self.and_level()?);
        }
        Ok(left)
    }

    fn and_level(&mut self) -> Result<CostFormula, String> {
        let mut left = self.unary_level()?;
        while self.peek() == Some(&Token::And) {
            self.advance();
            left = left.and(self.unary_level()?);
        }
        Ok(left)
    }

    fn unary_level(&mut self) -> Result<CostFormula, String> {
        match self.peek() {
            Some(Token::Not) => {
                self.advance();
                Ok(self.unary_level()?.negate())
            }
            Some(Token::Open) => {
                self.advance();
                let inner = self.or_level()?;
                self.expect(Token::Close, "`)`")?;
                Ok(inner)
            }
            Some(Token::Var) => {
                self.advance();
                self.expect(Token::Le, "`<=`")?;
                match self.advance() {
                    Some(Token::Int(bound)) => Ok(CostFormula::le(bound)),
                    _ => Err(format!("{}: expected an integer bound", self.position())),
                }
            }
            _ => Err(format!("{}: expected an atom, `!` or `(`", self.position())),
        }
    }
}
