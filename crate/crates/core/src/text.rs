//! Byte cursor shared by the form and structure-equation parsers.

use alloc::string::{String, ToString};

use crate::error::Error;
use crate::scalar::{parse_rational, Rational};

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn set_pos(&mut self, pos: usize) {
        self.pos = pos;
    }

    pub fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    pub fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    pub fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: u8) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(alloc::format!("expected '{}'", c as char)))
        }
    }

    pub fn error(&self, msg: impl ToString) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    /// Optional leading sign; returns `true` for minus.
    pub fn sign(&mut self) -> Option<bool> {
        self.skip_ws();
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(false)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    pub fn digits(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    /// Unsigned number: `p`, `p/q` or `a.b`.
    pub fn number(&mut self) -> Result<Rational, Error> {
        self.skip_ws();
        let start = self.pos;
        let mut text = String::from(self.digits());
        if text.is_empty() {
            return Err(self.error("expected a number"));
        }
        if self.peek() == Some(b'.') {
            self.pos += 1;
            text.push('.');
            text.push_str(self.digits_raw());
        } else if self.peek_past_ws() == Some(b'/') {
            self.skip_ws();
            self.pos += 1;
            let den = self.digits();
            text.push('/');
            text.push_str(den);
        }
        parse_rational(&text).ok_or(Error::Parse { pos: start, msg: alloc::format!("invalid number '{text}'") })
    }

    fn digits_raw(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    pub fn peek_past_ws(&self) -> Option<u8> {
        self.src.as_bytes()[self.pos..].iter().copied().find(|c| !c.is_ascii_whitespace())
    }
}
