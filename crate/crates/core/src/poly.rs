//! Laurent polynomials with integer coefficients.
//!
//! [`LaurentQ`] lives in `Z[q, q^-1]` and carries brackets, Jones polynomials,
//! graded dimensions and Euler characteristics. [`PoincarePoly`] lives in
//! `Z[t^±1, q^±1]` and carries bigraded homology dimensions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A Laurent polynomial in `q`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentQ {
    terms: BTreeMap<i32, i64>,
}

impl LaurentQ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i32, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// `q + q^-1`, the graded dimension of the Frobenius algebra.
    pub fn q_plus_q_inv() -> Self {
        Self::from_terms([(1, 1), (-1, 1)])
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Multiplies by `q^shift`.
    pub fn shift(&self, shift: i32) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (e + shift, c)).collect() }
    }
}

impl fmt::Display for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in &self.terms {
            let mono = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            let mag = c.unsigned_abs();
            let body = match (mag, mono.is_empty()) {
                (_, true) => mag.to_string(),
                (1, false) => mono,
                (_, false) => format!("{mag} {mono}"),
            };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
                first = false;
            } else {
                write!(f, " {} {body}", if c < 0 { '-' } else { '+' })?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a LaurentQ> for &'a LaurentQ {
    type Output = LaurentQ;
    fn add(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentQ {
    type Output = LaurentQ;
    fn add(mut self, rhs: LaurentQ) -> LaurentQ {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentQ> for LaurentQ {
    fn add_assign(&mut self, rhs: &LaurentQ) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl<'a> Sub<&'a LaurentQ> for &'a LaurentQ {
    type Output = LaurentQ;
    fn sub(self, rhs: &LaurentQ) -> LaurentQ {
        self + &(-rhs)
    }
}

impl Neg for &LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        LaurentQ { terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect() }
    }
}

impl<'a> Mul<&'a LaurentQ> for &'a LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = LaurentQ::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: LaurentQ) -> LaurentQ {
        &self * &rhs
    }
}

/// A polynomial in `t^±1, q^±1`, keyed by `(t-exponent, q-exponent)`.
///
/// Iteration and display order is ascending `t`, then ascending `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "PoincareJson", try_from = "PoincareJson")]
pub struct PoincarePoly {
    terms: BTreeMap<(i32, i32), i64>,
}

#[derive(Serialize, Deserialize)]
struct PoincareJson {
    terms: Vec<(i32, i32, i64)>,
}

impl From<PoincarePoly> for PoincareJson {
    fn from(p: PoincarePoly) -> Self {
        PoincareJson { terms: p.terms().map(|((i, q), c)| (i, q, c)).collect() }
    }
}

impl TryFrom<PoincareJson> for PoincarePoly {
    type Error = String;
    fn try_from(j: PoincareJson) -> Result<Self, String> {
        let mut p = PoincarePoly::zero();
        for (i, q, c) in j.terms {
            if p.coeff(i, q) != 0 {
                return Err(format!("duplicate term t^{i} q^{q}"));
            }
            p.add_term(i, q, c);
        }
        Ok(p)
    }
}

impl PoincarePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i32, i64)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (i, q, c) in it {
            p.add_term(i, q, c);
        }
        p
    }

    pub fn add_term(&mut self, t_exp: i32, q_exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry((t_exp, q_exp)).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&(t_exp, q_exp));
        }
    }

    pub fn coeff(&self, t_exp: i32, q_exp: i32) -> i64 {
        self.terms.get(&(t_exp, q_exp)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients (total rank for a Poincaré polynomial).
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Substitutes `t = -1`.
    pub fn at_t_minus_one(&self) -> LaurentQ {
        let mut out = LaurentQ::zero();
        for ((i, q), c) in self.terms() {
            out.add_term(q, if i.rem_euclid(2) == 0 { c } else { -c });
        }
        out
    }

    /// Substitutes `q = 1`, keeping only the `t` grading.
    pub fn collapse_q(&self) -> PoincarePoly {
        let mut out = PoincarePoly::zero();
        for ((i, _), c) in self.terms() {
            out.add_term(i, 0, c);
        }
        out
    }

    /// Parses the canonical text form produced by `Display`, e.g.
    /// `"t^-2 q^-4 + t^-1 q^-2 + 1 + 2 t q"`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let mut p = PoincarePoly::zero();
        if s == "0" {
            return Ok(p);
        }
        let mut sign = 1i64;
        let mut pending = String::new();
        let flush = |chunk: &str, sign: i64, p: &mut PoincarePoly| -> Result<(), String> {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                return Err("empty term".into());
            }
            let (mut coeff, mut te, mut qe) = (1i64, 0i32, 0i32);
            for tok in chunk.split_whitespace() {
                if let Some(rest) = tok.strip_prefix('t') {
                    te = parse_exp(rest)?;
                } else if let Some(rest) = tok.strip_prefix('q') {
                    qe = parse_exp(rest)?;
                } else {
                    coeff = tok.parse().map_err(|_| format!("bad coefficient `{tok}`"))?;
                }
            }
            p.add_term(te, qe, sign * coeff);
            Ok(())
        };
        for tok in s.split_whitespace() {
            match tok {
                "+" | "-" => {
                    flush(&pending, sign, &mut p)?;
                    pending.clear();
                    sign = if tok == "-" { -1 } else { 1 };
                }
                _ => {
                    if pending.is_empty() && tok.starts_with('-') && tok.len() > 1 {
                        sign = -sign;
                        pending.push_str(&tok[1..]);
                    } else {
                        pending.push_str(tok);
                    }
                    pending.push(' ');
                }
            }
        }
        flush(&pending, sign, &mut p)?;
        Ok(p)
    }
}

fn parse_exp(rest: &str) -> Result<i32, String> {
    if rest.is_empty() {
        Ok(1)
    } else {
        rest.strip_prefix('^')
            .and_then(|e| e.parse().ok())
            .ok_or_else(|| format!("bad exponent `{rest}`"))
    }
}

impl fmt::Display for PoincarePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, q), &c) in &self.terms {
            let mut factors = Vec::new();
            match i {
                0 => {}
                1 => factors.push("t".to_string()),
                _ => factors.push(format!("t^{i}")),
            }
            match q {
                0 => {}
                1 => factors.push("q".to_string()),
                _ => factors.push(format!("q^{q}")),
            }
            let mag = c.unsigned_abs();
            let body = if factors.is_empty() {
                mag.to_string()
            } else if mag == 1 {
                factors.join(" ")
            } else {
                format!("{mag} {}", factors.join(" "))
            };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
                first = false;
            } else {
                write!(f, " {} {body}", if c < 0 { '-' } else { '+' })?;
            }
        }
        Ok(())
    }
}
