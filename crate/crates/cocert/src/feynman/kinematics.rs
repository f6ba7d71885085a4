//! Kinematic data for Symanzik polynomials: affine-linear forms in named
//! parameters, the momentum-product substitution table, and a small parser
//! for linear-form strings such as `-s/2 + t` or `m2 + s + t`.

use crate::rational::{format_rational, parse_rational, Rational};
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KinematicsError {
    #[error("cannot parse linear form `{0}`")]
    Parse(String),
    #[error("kinematic product k({0},{1}) is not defined")]
    Unresolved(usize, usize),
    #[error("conflicting entries for k({0},{1})")]
    Conflicting(usize, usize),
    #[error("momentum conservation fails on row {0}: sum is `{1}`")]
    MomentumConservation(usize, String),
    #[error("parameter `{0}` has no assigned value")]
    MissingParameter(String),
}

/// Affine-linear form `constant + sum coeff * param`. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearForm {
    pub constant: Rational,
    pub coeffs: BTreeMap<String, Rational>,
}

impl LinearForm {
    pub fn zero() -> Self {
        LinearForm::default()
    }

    pub fn constant(c: Rational) -> Self {
        LinearForm { constant: c, coeffs: BTreeMap::new() }
    }

    pub fn symbol(name: &str) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(name.to_string(), Rational::one());
        LinearForm { constant: Rational::zero(), coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.is_empty()
    }

    pub fn add_assign(&mut self, other: &LinearForm) {
        self.constant += &other.constant;
        for (name, c) in &other.coeffs {
            let entry = self.coeffs.entry(name.clone()).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                self.coeffs.remove(name);
            }
        }
    }

    pub fn scaled(&self, c: &Rational) -> LinearForm {
        if c.is_zero() {
            return LinearForm::zero();
        }
        LinearForm {
            constant: &self.constant * c,
            coeffs: self.coeffs.iter().map(|(n, x)| (n.clone(), x * c)).collect(),
        }
    }

    pub fn parameters(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(|s| s.as_str())
    }

    pub fn involves_any(&self, names: &BTreeSet<String>) -> bool {
        self.coeffs.keys().any(|n| names.contains(n))
    }

    pub fn evaluate(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational, KinematicsError> {
        let mut acc = self.constant.clone();
        for (name, c) in &self.coeffs {
            let v = assignment
                .get(name)
                .ok_or_else(|| KinematicsError::MissingParameter(name.clone()))?;
            acc += c * v;
        }
        Ok(acc)
    }

    /// Canonical rendering: parameters in name order, constant last.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (name, c) in &self.coeffs {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    out.push('-');
                }
                first = false;
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format_rational(&mag));
                out.push('*');
            }
            out.push_str(name);
        }
        if !self.constant.is_zero() {
            let (sign, mag) = if self.constant.is_negative() {
                ("-", -self.constant.clone())
            } else {
                ("+", self.constant.clone())
            };
            if first {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            out.push_str(&format_rational(&mag));
        }
        out
    }
}

/// Parses a linear-form string: signed terms, each a product/quotient chain
/// of rational literals and at most one parameter name, e.g. `-s/2 + 3*t - 1/4`.
pub fn parse_linear_form(input: &str) -> Result<LinearForm, KinematicsError> {
    #[derive(Debug, PartialEq)]
    enum Tok {
        Plus,
        Minus,
        Star,
        Slash,
        Num(Rational),
        Ident(String),
    }
    let err = || KinematicsError::Parse(input.to_string());
    let mut toks: Vec<Tok> = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '+' {
            toks.push(Tok::Plus);
            i += 1;
        } else if c == '-' {
            toks.push(Tok::Minus);
            i += 1;
        } else if c == '*' {
            toks.push(Tok::Star);
            i += 1;
        } else if c == '/' {
            toks.push(Tok::Slash);
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            toks.push(Tok::Num(parse_rational(&lit).map_err(|_| err())?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push(Tok::Ident(chars[start..i].iter().collect()));
        } else {
            return Err(err());
        }
    }
    if toks.is_empty() {
        return Err(err());
    }

    let mut form = LinearForm::zero();
    let mut pos = 0usize;
    while pos < toks.len() {
        let mut sign = Rational::one();
        while pos < toks.len() {
            match toks[pos] {
                Tok::Plus => pos += 1,
                Tok::Minus => {
                    sign = -sign;
                    pos += 1;
                }
                _ => break,
            }
        }
        if pos >= toks.len() {
            return Err(err());
        }
        let mut coef = sign;
        let mut name: Option<String> = None;
        let mut expect_factor = true;
        loop {
            if expect_factor {
                match toks.get(pos) {
                    Some(Tok::Num(r)) => {
                        coef *= r;
                        pos += 1;
                    }
                    Some(Tok::Ident(s)) => {
                        if name.is_some() {
                            return Err(err());
                        }
                        name = Some(s.clone());
                        pos += 1;
                    }
                    _ => return Err(err()),
                }
                expect_factor = false;
                // implicit multiplication: `2t`
                if let Some(Tok::Ident(s)) = toks.get(pos) {
                    if name.is_some() {
                        return Err(err());
                    }
                    name = Some(s.clone());
                    pos += 1;
                }
            } else {
                match toks.get(pos) {
                    Some(Tok::Star) => {
                        pos += 1;
                        expect_factor = true;
                    }
                    Some(Tok::Slash) => {
                        pos += 1;
                        match toks.get(pos) {
                            Some(Tok::Num(r)) if !r.is_zero() => {
                                coef /= r;
                                pos += 1;
                            }
                            _ => return Err(err()),
                        }
                    }
                    _ => break,
                }
            }
        }
        // terms must be separated by an explicit sign
        match toks.get(pos) {
            None | Some(Tok::Plus) | Some(Tok::Minus) => {}
            _ => return Err(err()),
        }
        let term = match name {
            Some(n) => LinearForm::symbol(&n).scaled(&coef),
            None => LinearForm::constant(coef),
        };
        form.add_assign(&term);
    }
    Ok(form)
}

/// Momentum-product substitution table `k_{ij} -> linear form`, symmetric in
/// the leg indices (1-based).
#[derive(Debug, Clone, Default)]
pub struct KinematicSpec {
    pub momentum_conservation: bool,
    table: BTreeMap<(usize, usize), LinearForm>,
}

impl KinematicSpec {
    pub fn new(
        momentum_conservation: bool,
        entries: impl IntoIterator<Item = ((usize, usize), LinearForm)>,
    ) -> Result<Self, KinematicsError> {
        let mut table = BTreeMap::new();
        for ((i, j), form) in entries {
            let key = (i.min(j), i.max(j));
            if let Some(prev) = table.get(&key) {
                if *prev != form {
                    return Err(KinematicsError::Conflicting(key.0, key.1));
                }
            }
            table.insert(key, form);
        }
        Ok(KinematicSpec { momentum_conservation, table })
    }

    pub fn lookup(&self, i: usize, j: usize) -> Result<&LinearForm, KinematicsError> {
        let key = (i.min(j), i.max(j));
        self.table.get(&key).ok_or(KinematicsError::Unresolved(key.0, key.1))
    }

    /// When the conservation flag is set, the row sums `sum_j k_ij` must
    /// vanish identically as linear forms.
    pub fn validate_conservation(&self, n_legs: usize) -> Result<(), KinematicsError> {
        if !self.momentum_conservation {
            return Ok(());
        }
        for i in 1..=n_legs {
            let mut row = LinearForm::zero();
            for j in 1..=n_legs {
                row.add_assign(self.lookup(i, j)?);
            }
            if !row.is_zero() {
                return Err(KinematicsError::MomentumConservation(i, row.render()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rational_from_i64 as q;

    #[test]
    fn parses_forms() {
        let f = parse_linear_form("-s/2 + t").unwrap();
        assert_eq!(f.coeffs.get("s"), Some(&(q(-1) / q(2))));
        assert_eq!(f.coeffs.get("t"), Some(&q(1)));
        assert!(f.constant.is_zero());

        let g = parse_linear_form("m2 + s + t").unwrap();
        assert_eq!(g.coeffs.len(), 3);

        let h = parse_linear_form("3 - 2*u").unwrap();
        assert_eq!(h.constant, q(3));
        assert_eq!(h.coeffs.get("u"), Some(&q(-2)));

        let z = parse_linear_form("s - s").unwrap();
        assert!(z.is_zero());

        assert!(parse_linear_form("s t").is_err());
        assert!(parse_linear_form("s*t").is_err());
        assert!(parse_linear_form("1/s").is_err());
        assert!(parse_linear_form("").is_err());
    }

    #[test]
    fn renders_deterministically() {
        let f = parse_linear_form("t - s/2 + 1").unwrap();
        assert_eq!(f.render(), "-1/2*s + t + 1");
        assert_eq!(parse_linear_form(&f.render()).unwrap(), f);
        assert_eq!(LinearForm::zero().render(), "0");
    }

    #[test]
    fn conservation_rows() {
        // s/2 on the off-diagonal pairs of a 2-leg system cannot conserve
        let bad = KinematicSpec::new(
            false,
            [((1, 2), parse_linear_form("s/2").unwrap()),
             ((1, 1), LinearForm::zero()),
             ((2, 2), LinearForm::zero())],
        )
        .unwrap();
        assert!(bad.validate_conservation(2).is_ok()); // flag off
        let strict = KinematicSpec::new(
            true,
            [((1, 2), parse_linear_form("s/2").unwrap()),
             ((1, 1), LinearForm::zero()),
             ((2, 2), LinearForm::zero())],
        )
        .unwrap();
        assert!(strict.validate_conservation(2).is_err());
        let ok = KinematicSpec::new(
            true,
            [((1, 2), parse_linear_form("s/2").unwrap()),
             ((1, 1), parse_linear_form("-s/2").unwrap()),
             ((2, 2), parse_linear_form("-s/2").unwrap())],
        )
        .unwrap();
        assert!(ok.validate_conservation(2).is_ok());
    }
}
