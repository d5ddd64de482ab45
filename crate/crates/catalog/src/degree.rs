//! Degree expressions: base problems with parameters, jumps, parallelization
//! wrappers and product lists, kept in a unique canonical form.

use std::fmt;

use crate::{CatalogError, Result};

/// Base problem names the catalog understands.
pub const BASE_NAMES: &[&str] = &[
    "RT", "SRT", "CRT", "CSRT", "BWT", "lim", "C", "K", "WKL", "KL", "COH", "min", "PA", "MLR",
    "DNC", "WWKL", "IVT", "CC", "CL", "LPO", "LLPO", "ACC", "D", "id",
];

/// A degree expression in canonical form.
///
/// Construct through [`Degree::parse`] or the smart constructors, which
/// normalize: jumps are summed, parallelization wrappers collapse, product
/// and coproduct lists are flattened and sorted, compositional products are
/// flattened but keep their order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    Base { name: String, params: Vec<String> },
    Jump(Box<Degree>, u32),
    /// Parallelization `f̂`.
    Hat(Box<Degree>),
    /// Finite parallelization `f^*`.
    Star(Box<Degree>),
    /// m-fold product `f^m`, m ≥ 2.
    Power(Box<Degree>, u32),
    Product(Vec<Degree>),
    Coproduct(Vec<Degree>),
    Compose(Vec<Degree>),
}

impl Degree {
    pub fn base(name: &str, params: &[&str]) -> Result<Degree> {
        let name = canonical_name(name)?;
        Ok(Degree::Base { name, params: params.iter().map(|p| canonical_param(p)).collect() })
    }

    pub fn jump(self, j: u32) -> Degree {
        match (self, j) {
            (d, 0) => d,
            (Degree::Jump(inner, a), b) => Degree::Jump(inner, a + b),
            (d, b) => Degree::Jump(Box::new(d), b),
        }
    }

    pub fn hat(self) -> Degree {
        match self {
            Degree::Hat(inner) | Degree::Star(inner) => Degree::Hat(inner),
            d => Degree::Hat(Box::new(d)),
        }
    }

    pub fn star(self) -> Degree {
        match self {
            d @ (Degree::Star(_) | Degree::Hat(_)) => d,
            d => Degree::Star(Box::new(d)),
        }
    }

    pub fn power(self, m: u32) -> Degree {
        if m == 1 {
            return self;
        }
        Degree::product(vec![self; m as usize])
    }

    pub fn product(items: Vec<Degree>) -> Degree {
        let mut flat = Vec::new();
        for d in items {
            match d {
                Degree::Product(xs) => flat.extend(xs),
                Degree::Power(x, m) => flat.extend(std::iter::repeat(*x).take(m as usize)),
                d => flat.push(d),
            }
        }
        flat.sort();
        let mut out: Vec<Degree> = Vec::new();
        let mut i = 0;
        while i < flat.len() {
            let mut j = i + 1;
            while j < flat.len() && flat[j] == flat[i] {
                j += 1;
            }
            let m = (j - i) as u32;
            out.push(if m == 1 { flat[i].clone() } else { Degree::Power(Box::new(flat[i].clone()), m) });
            i = j;
        }
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Degree::Product(out)
        }
    }

    pub fn coproduct(items: Vec<Degree>) -> Degree {
        let mut flat = Vec::new();
        for d in items {
            match d {
                Degree::Coproduct(xs) => flat.extend(xs),
                d => flat.push(d),
            }
        }
        flat.sort();
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            Degree::Coproduct(flat)
        }
    }

    pub fn compose(items: Vec<Degree>) -> Degree {
        let mut flat = Vec::new();
        for d in items {
            match d {
                Degree::Compose(xs) => flat.extend(xs),
                d => flat.push(d),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            Degree::Compose(flat)
        }
    }

    /// `id × self`, the degree whose reduction to `self` witnesses a cylinder.
    pub fn cylinder(&self) -> Degree {
        Degree::product(vec![Degree::Base { name: "id".into(), params: vec![] }, self.clone()])
    }

    pub fn parse(text: &str) -> Result<Degree> {
        let tokens = tokenize(text)?;
        let mut p = Parser { tokens, pos: 0, text };
        let d = p.compose()?;
        if p.pos != p.tokens.len() {
            return Err(p.error("trailing input"));
        }
        Ok(d)
    }

    fn precedence(&self) -> u8 {
        match self {
            Degree::Compose(_) => 0,
            Degree::Coproduct(_) => 1,
            Degree::Product(_) => 2,
            _ => 3,
        }
    }
}

impl serde::Serialize for Degree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Degree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Degree, D::Error> {
        let text = String::deserialize(d)?;
        Degree::parse(&text).map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Degree {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Degree> {
        Degree::parse(s)
    }
}

fn canonical_name(name: &str) -> Result<String> {
    let name = match name {
        "LIM" => "lim",
        "MIN" => "min",
        n => n,
    };
    if BASE_NAMES.contains(&name) {
        Ok(name.to_string())
    } else {
        Err(CatalogError::UnknownDegree(name.to_string()))
    }
}

fn canonical_param(p: &str) -> String {
    p.trim().replace('ℕ', "N").replace('ℝ', "R").replace(' ', "")
}

fn write_postfix_operand(f: &mut fmt::Formatter<'_>, d: &Degree) -> fmt::Result {
    if d.precedence() < 3 {
        write!(f, "({d})")
    } else {
        write!(f, "{d}")
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Base { name, params } => {
                write!(f, "{name}")?;
                match params.len() {
                    0 => Ok(()),
                    1 if params[0].chars().count() == 1 => write!(f, "_{}", params[0]),
                    _ => write!(f, "_{{{}}}", params.join(",")),
                }
            }
            Degree::Jump(d, j) => {
                write_postfix_operand(f, d)?;
                if *j <= 2 {
                    write!(f, "{}", "'".repeat(*j as usize))
                } else {
                    write!(f, "^({j})")
                }
            }
            Degree::Hat(d) => write!(f, "hat({d})"),
            Degree::Star(d) => {
                write_postfix_operand(f, d)?;
                write!(f, "^*")
            }
            Degree::Power(d, m) => {
                write_postfix_operand(f, d)?;
                write!(f, "^{m}")
            }
            Degree::Product(xs) | Degree::Coproduct(xs) | Degree::Compose(xs) => {
                let sep = match self {
                    Degree::Product(_) => " × ",
                    Degree::Coproduct(_) => " ⊔ ",
                    _ => " * ",
                };
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    if x.precedence() <= self.precedence() {
                        write!(f, "({x})")?;
                    } else {
                        write!(f, "{x}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Params(Vec<String>),
    Prime(u32),
    /// `^(n)` jump.
    JumpExp(u32),
    StarSuffix,
    PowerExp(u32),
    Times,
    Sqcup,
    Ast,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let err = |msg: &str| CatalogError::Parse { input: text.to_string(), message: msg.to_string() };
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '×' => {
                out.push(Tok::Times);
                i += 1;
            }
            '⊔' | '+' => {
                out.push(Tok::Sqcup);
                i += 1;
            }
            '*' | '∗' => {
                out.push(Tok::Ast);
                i += 1;
            }
            '\'' | '′' => {
                let mut n = 0;
                while i < chars.len() && (chars[i] == '\'' || chars[i] == '′') {
                    n += 1;
                    i += 1;
                }
                out.push(Tok::Prime(n));
            }
            '″' => {
                out.push(Tok::Prime(2));
                i += 1;
            }
            '^' => {
                i += 1;
                match chars.get(i) {
                    Some('*') | Some('∗') => {
                        out.push(Tok::StarSuffix);
                        i += 1;
                    }
                    Some('(') | Some('{') => {
                        let close = if chars[i] == '(' { ')' } else { '}' };
                        let start = i + 1;
                        let end = (start..chars.len()).find(|&k| chars[k] == close).ok_or_else(|| err("unclosed exponent"))?;
                        let inner: String = chars[start..end].iter().collect();
                        let inner = inner.trim().trim_start_matches('(').trim_end_matches(')');
                        let n = inner.parse::<u32>().map_err(|_| err("jump exponent must be a natural number"))?;
                        out.push(Tok::JumpExp(n));
                        i = end + 1;
                    }
                    Some(d) if d.is_ascii_digit() => {
                        let start = i;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                        let s: String = chars[start..i].iter().collect();
                        out.push(Tok::PowerExp(s.parse().map_err(|_| err("bad power"))?));
                    }
                    _ => return Err(err("expected `*`, `(n)` or a number after `^`")),
                }
            }
            '_' => {
                i += 1;
                if chars.get(i) == Some(&'{') {
                    let start = i + 1;
                    let mut depth = 1;
                    let mut k = start;
                    while k < chars.len() {
                        match chars[k] {
                            '{' => depth += 1,
                            '}' => {
                                depth -= 1;
                                if depth == 0 {
                                    break;
                                }
                            }
                            _ => {}
                        }
                        k += 1;
                    }
                    if k >= chars.len() {
                        return Err(err("unclosed parameter braces"));
                    }
                    let inner: String = chars[start..k].iter().collect();
                    out.push(Tok::Params(inner.split(',').map(canonical_param).collect()));
                    i = k + 1;
                } else {
                    let start = i;
                    while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '+') {
                        i += 1;
                        if chars[start] == '+' {
                            break;
                        }
                    }
                    if start == i {
                        return Err(err("empty parameter"));
                    }
                    out.push(Tok::Params(vec![canonical_param(&chars[start..i].iter().collect::<String>())]));
                }
            }
            c if c.is_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_alphanumeric() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if word == "x" {
                    out.push(Tok::Times);
                } else {
                    out.push(Tok::Ident(word));
                }
            }
            _ => return Err(err(&format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> CatalogError {
        CatalogError::Parse { input: self.text.to_string(), message: message.to_string() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn compose(&mut self) -> Result<Degree> {
        let mut items = vec![self.coproduct()?];
        while self.peek() == Some(&Tok::Ast) {
            self.pos += 1;
            items.push(self.coproduct()?);
        }
        Ok(Degree::compose(items))
    }

    fn coproduct(&mut self) -> Result<Degree> {
        let mut items = vec![self.product()?];
        while self.peek() == Some(&Tok::Sqcup) {
            self.pos += 1;
            items.push(self.product()?);
        }
        Ok(Degree::coproduct(items))
    }

    fn product(&mut self) -> Result<Degree> {
        let mut items = vec![self.postfix()?];
        while self.peek() == Some(&Tok::Times) {
            self.pos += 1;
            items.push(self.postfix()?);
        }
        Ok(Degree::product(items))
    }

    fn postfix(&mut self) -> Result<Degree> {
        let mut d = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::Prime(n)) => {
                    let n = *n;
                    d = d.jump(n);
                }
                Some(Tok::JumpExp(n)) => {
                    let n = *n;
                    d = d.jump(n);
                }
                Some(Tok::StarSuffix) => d = d.star(),
                Some(Tok::PowerExp(m)) => {
                    if *m == 0 {
                        return Err(self.error("power must be positive"));
                    }
                    let m = *m;
                    d = d.power(m);
                }
                _ => return Ok(d),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<Degree> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let d = self.compose()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(d)
            }
            Some(Tok::Ident(word)) if word == "hat" => {
                self.pos += 1;
                if self.peek() != Some(&Tok::LParen) {
                    return Err(self.error("expected `(` after hat"));
                }
                self.pos += 1;
                let d = self.compose()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(d.hat())
            }
            Some(Tok::Ident(word)) => {
                self.pos += 1;
                let name = canonical_name(&word)?;
                let params = match self.peek() {
                    Some(Tok::Params(ps)) => {
                        let ps = ps.clone();
                        self.pos += 1;
                        ps
                    }
                    _ => Vec::new(),
                };
                Ok(Degree::Base { name, params })
            }
            _ => Err(self.error("expected a degree")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Degree {
        Degree::parse(s).unwrap()
    }

    #[test]
    fn parses_and_prints_canonically() {
        assert_eq!(p("RT_{2,2}").to_string(), "RT_{2,2}");
        assert_eq!(p("lim^(2)"), p("lim''"));
        assert_eq!(p("WKL^(4)").to_string(), "WKL^(4)");
        assert_eq!(p("C_2'").to_string(), "C_2'");
        assert_eq!(p("RT_{1,ℕ}"), p("RT_{1,N}"));
        assert_eq!(p("lim_2").to_string(), "lim_2");
        assert_eq!(p("C_{2^N}").to_string(), "C_{2^N}");
        assert_ne!(p("CL_R"), p("BWT_R"));
        assert_eq!(p("RT_+"), Degree::base("RT", &["+"]).unwrap());
    }

    #[test]
    fn normalizes_wrappers_and_lists() {
        assert_eq!(p("hat(hat(C_2))"), p("hat(C_2)"));
        assert_eq!(p("hat(C_2^*)"), p("hat(C_2)"));
        assert_eq!(p("C_2^*^*"), p("C_2^*"));
        assert_eq!(p("(lim')'"), p("lim''"));
        assert_eq!(p("COH × SRT_{2,2}"), p("SRT_{2,2} x COH"));
        assert_eq!(p("COH ⊔ SRT_{2,2}"), p("SRT_{2,2} ⊔ COH"));
        assert_eq!(p("C_2 × C_2"), p("C_2^2"));
        assert_eq!(p("C_2 × C_2^2"), p("C_2^3"));
        assert_ne!(p("lim * COH"), p("COH * lim"));
        assert_eq!(p("(RT_{2,2} * lim) * COH"), p("RT_{2,2} * (lim * COH)"));
        assert_eq!(p("id × hat(RT_{1,2})"), p("hat(RT_{1,2})").cylinder());
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "RT_{2,2}",
            "SRT_{2,2} * COH",
            "(SRT_{2,2} × COH)'",
            "hat(CSRT_{3,2}')",
            "RT_{1,2}' × lim",
            "C_2^*",
            "(C_2 ⊔ lim)^*",
            "lim_2^(3)",
            "K_N''",
        ] {
            let d = p(s);
            assert_eq!(p(&d.to_string()), d, "{s}");
        }
    }

    #[test]
    fn rejects_unknown_names() {
        assert!(matches!(Degree::parse("FOO_{2,2}"), Err(CatalogError::UnknownDegree(_))));
        assert!(Degree::parse("RT_{2,2} ×").is_err());
        assert!(Degree::parse("hat(RT_{2,2}").is_err());
    }
}
