use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::Rational;

/// Dense univariate polynomial with exact rational coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`; trailing zeros are always trimmed,
/// so the zero polynomial has no coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPolynomial {
    coeffs: Vec<Rational>,
}

impl RatPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, exp: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); exp + 1];
        coeffs[exp] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| super::rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + super::to_f64(c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `self(inner(x))`, by Horner's scheme over polynomials.
    pub fn compose(&self, inner: &RatPolynomial) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * inner) + &Self::constant(c.clone())
        })
    }

    /// `self(x + c)`.
    pub fn translate(&self, c: &Rational) -> Self {
        self.compose(&Self::from_coeffs(vec![c.clone(), Rational::one()]))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// The unique polynomial of degree `< points.len()` through the given
    /// `(x, y)` pairs, via Newton divided differences. Abscissae must be distinct.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Self {
        let n = points.len();
        let mut table: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let dx = &points[i].0 - &points[i - level].0;
                table[i] = (&table[i] - &table[i - 1]) / dx;
            }
        }
        let mut result = Self::zero();
        for i in (0..n).rev() {
            let factor = Self::from_coeffs(vec![-points[i].0.clone(), Rational::one()]);
            result = &(&result * &factor) + &Self::constant(table[i].clone());
        }
        result
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Renders the polynomial in the variable `var`, e.g. `3 - 2*w + 1/2*w^2`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial term `{0}`")]
pub struct ParsePolyError(pub String);

impl FromStr for RatPolynomial {
    type Err = ParsePolyError;

    /// Parses the output of [`RatPolynomial::display_in`] for any
    /// alphabetic variable name, e.g. `"3 - 2*w + 1/2*w^2"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParsePolyError(s.to_string()));
        }
        // split into signed terms; a sign directly after '^' or '/' is not a separator
        let mut terms = Vec::new();
        let mut current = String::new();
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-')
                && !current.is_empty()
                && !matches!(prev, Some('^' | '/' | '*'))
            {
                terms.push(std::mem::take(&mut current));
            }
            current.push(ch);
            prev = Some(ch);
        }
        terms.push(current);

        let mut coeffs: Vec<Rational> = Vec::new();
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, term.strip_prefix('+').unwrap_or(&term)),
            };
            let (c, exp) = parse_term(body).ok_or_else(|| ParsePolyError(term.clone()))?;
            let c = if neg { -c } else { c };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, Rational::zero());
            }
            coeffs[exp] += c;
        }
        Ok(Self::from_coeffs(coeffs))
    }
}

fn parse_term(body: &str) -> Option<(Rational, usize)> {
    let var_start = body.find(|c: char| c.is_alphabetic());
    let Some(pos) = var_start else {
        return parse_rational(body).map(|c| (c, 0));
    };
    let (coeff_part, mono) = body.split_at(pos);
    let coeff = match coeff_part {
        "" => Rational::one(),
        _ => parse_rational(coeff_part.strip_suffix('*')?)?,
    };
    let exp = match mono.split_once('^') {
        None => 1,
        Some((_, e)) => e.parse().ok()?,
    };
    if !mono
        .chars()
        .take_while(|&c| c != '^')
        .all(char::is_alphanumeric)
    {
        return None;
    }
    Some((coeff, exp))
}

fn parse_rational(s: &str) -> Option<Rational> {
    if s.is_empty() {
        return None;
    }
    Rational::from_str(s).ok()
}

impl Add for &RatPolynomial {
    type Output = RatPolynomial;

    fn add(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPolynomial {
    type Output = RatPolynomial;

    fn sub(self, rhs: &RatPolynomial) -> RatPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPolynomial {
    type Output = RatPolynomial;

    fn mul(self, rhs: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RatPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPolynomial::from_coeffs(out)
    }
}

impl Neg for &RatPolynomial {
    type Output = RatPolynomial;

    fn neg(self) -> RatPolynomial {
        RatPolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for RatPolynomial {
    type Output = RatPolynomial;

    fn add(self, rhs: RatPolynomial) -> RatPolynomial {
        &self + &rhs
    }
}

impl Sub for RatPolynomial {
    type Output = RatPolynomial;

    fn sub(self, rhs: RatPolynomial) -> RatPolynomial {
        &self - &rhs
    }
}

impl Mul for RatPolynomial {
    type Output = RatPolynomial;

    fn mul(self, rhs: RatPolynomial) -> RatPolynomial {
        &self * &rhs
    }
}
