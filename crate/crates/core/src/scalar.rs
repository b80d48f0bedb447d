//! Exact scalar arithmetic in the ring generated over the rationals by the
//! imaginary unit and the square root of two.
//!
//! Every value is kept in the unique coordinate form
//! `a + b*sqrt2 + (c + d*sqrt2)*I` with arbitrary-precision rational
//! coordinates, so equality is decidable and every operation is exact.
//! There is no floating point anywhere in this module, and none is needed:
//! the ring is closed under addition, multiplication, complex conjugation
//! and inversion of nonzero elements.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision rational number, always in reduced canonical form
/// (gcd 1, positive denominator, zero as 0/1).
pub type Rational = BigRational;

/// Errors produced by scalar arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    /// Attempted to invert zero.
    #[error("division by zero")]
    DivisionByZero,
    /// The textual form could not be parsed.
    #[error("scalar parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

/// An element of the ring Q(i, sqrt2), stored as four rational coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactScalar {
    re_one: Rational,
    re_sqrt2: Rational,
    im_one: Rational,
    im_sqrt2: Rational,
}

impl ExactScalar {
    pub fn new(re_one: Rational, re_sqrt2: Rational, im_one: Rational, im_sqrt2: Rational) -> Self {
        Self { re_one, re_sqrt2, im_one, im_sqrt2 }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::one(), Rational::zero())
    }

    pub fn sqrt2() -> Self {
        Self::new(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    /// Convenience constructor for the rational `p/q`.
    ///
    /// Panics if `q` is zero.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::from_rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// The four rational coordinates, in the order
    /// (rational part, sqrt2 part, imaginary rational part, imaginary sqrt2 part).
    pub fn coords(&self) -> [&Rational; 4] {
        [&self.re_one, &self.re_sqrt2, &self.im_one, &self.im_sqrt2]
    }

    pub fn is_zero(&self) -> bool {
        self.re_one.is_zero()
            && self.re_sqrt2.is_zero()
            && self.im_one.is_zero()
            && self.im_sqrt2.is_zero()
    }

    /// True when the imaginary part vanishes.
    pub fn is_real(&self) -> bool {
        self.im_one.is_zero() && self.im_sqrt2.is_zero()
    }

    /// True for plain rationals (no sqrt2 and no imaginary part).
    pub fn is_rational(&self) -> bool {
        self.is_real() && self.re_sqrt2.is_zero()
    }

    /// Complex conjugation: fixes sqrt2, negates the imaginary part.
    pub fn conjugate(&self) -> Self {
        Self::new(
            self.re_one.clone(),
            self.re_sqrt2.clone(),
            -self.im_one.clone(),
            -self.im_sqrt2.clone(),
        )
    }

    /// Exact multiplicative inverse, rationalizing first the complex
    /// conjugate and then the sqrt2 conjugate.
    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // |z|^2 = x^2 + y^2 where x, y are the real and imaginary Q(sqrt2) parts.
        let (x0, x1) = (&self.re_one, &self.re_sqrt2);
        let (y0, y1) = (&self.im_one, &self.im_sqrt2);
        let two = Rational::from_integer(BigInt::from(2));
        let u = x0 * x0 + &two * x1 * x1 + y0 * y0 + &two * y1 * y1;
        let v = x0 * x1 + x1 * x0 + y0 * y1 + y1 * y0;
        // (u + v*sqrt2) is a nonzero real algebraic number; its norm u^2 - 2 v^2
        // over Q is nonzero because sqrt2 is irrational.
        let norm = &u * &u - &two * &v * &v;
        debug_assert!(!norm.is_zero());
        // 1/z = conj(z) * (u - v*sqrt2) / norm
        let f0 = u / &norm;
        let f1 = -(v / &norm);
        let conj = self.conjugate();
        let mul_q2 = |p0: &Rational, p1: &Rational| {
            (p0 * &f0 + &two * p1 * &f1, p0 * &f1 + p1 * &f0)
        };
        let (r0, r1) = mul_q2(&conj.re_one, &conj.re_sqrt2);
        let (i0, i1) = mul_q2(&conj.im_one, &conj.im_sqrt2);
        Ok(Self::new(r0, r1, i0, i1))
    }
}

impl std::ops::Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar::new(
            &self.re_one + &rhs.re_one,
            &self.re_sqrt2 + &rhs.re_sqrt2,
            &self.im_one + &rhs.im_one,
            &self.im_sqrt2 + &rhs.im_sqrt2,
        )
    }
}

impl std::ops::Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar::new(
            &self.re_one - &rhs.re_one,
            &self.re_sqrt2 - &rhs.re_sqrt2,
            &self.im_one - &rhs.im_one,
            &self.im_sqrt2 - &rhs.im_sqrt2,
        )
    }
}

impl std::ops::Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let two = Rational::from_integer(BigInt::from(2));
        // Multiply two Q(sqrt2) pairs: (x0 + x1 s)(y0 + y1 s) with s^2 = 2.
        let q2 = |x0: &Rational, x1: &Rational, y0: &Rational, y1: &Rational| {
            (x0 * y0 + &two * x1 * y1, x0 * y1 + x1 * y0)
        };
        let (rr0, rr1) = q2(&self.re_one, &self.re_sqrt2, &rhs.re_one, &rhs.re_sqrt2);
        let (ii0, ii1) = q2(&self.im_one, &self.im_sqrt2, &rhs.im_one, &rhs.im_sqrt2);
        let (ri0, ri1) = q2(&self.re_one, &self.re_sqrt2, &rhs.im_one, &rhs.im_sqrt2);
        let (ir0, ir1) = q2(&self.im_one, &self.im_sqrt2, &rhs.re_one, &rhs.re_sqrt2);
        ExactScalar::new(rr0 - ii0, rr1 - ii1, ri0 + ir0, ri1 + ir1)
    }
}

impl std::ops::Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(
            -self.re_one.clone(),
            -self.re_sqrt2.clone(),
            -self.im_one.clone(),
            -self.im_sqrt2.clone(),
        )
    }
}

macro_rules! forward_owned_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl std::ops::$trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl std::ops::$trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                std::ops::$trait::$method(&self, rhs)
            }
        }
        impl std::ops::$trait<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                std::ops::$trait::$method(self, &rhs)
            }
        }
    )*};
}

forward_owned_ops!(Add::add, Sub::sub, Mul::mul);

impl std::ops::Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        Self::zero()
    }
}

fn coeff_term(r: &Rational, symbol: &str) -> String {
    if r.is_one() {
        symbol.to_string()
    } else if (-r).is_one() {
        format!("-{symbol}")
    } else {
        format!("{r}*{symbol}")
    }
}

fn join_signed(parts: &[String]) -> String {
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        match p.strip_prefix('-') {
            Some(rest) => {
                out.push_str(" - ");
                out.push_str(rest);
            }
            None => {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
    }
    out
}

impl fmt::Display for ExactScalar {
    /// Canonical textual form: `a + b*sqrt2 + (c + d*sqrt2)*I` with rationals
    /// written `p/q`; zero parts are omitted and a zero value prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        if !self.re_one.is_zero() {
            parts.push(self.re_one.to_string());
        }
        if !self.re_sqrt2.is_zero() {
            parts.push(coeff_term(&self.re_sqrt2, "sqrt2"));
        }
        match (self.im_one.is_zero(), self.im_sqrt2.is_zero()) {
            (true, true) => {}
            (false, true) => parts.push(coeff_term(&self.im_one, "I")),
            (true, false) => parts.push(coeff_term(&self.im_sqrt2, "sqrt2*I")),
            (false, false) => {
                let inner =
                    join_signed(&[self.im_one.to_string(), coeff_term(&self.im_sqrt2, "sqrt2")]);
                parts.push(format!("({inner})*I"));
            }
        }
        f.write_str(&join_signed(&parts))
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactScalar({self})")
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Self { bytes: s.as_bytes(), pos: 0 }
    }

    fn err(&self, message: impl Into<String>) -> ScalarError {
        ScalarError::Parse { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_expr(&mut self) -> Result<ExactScalar, ScalarError> {
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                acc = acc + self.parse_term()?;
            } else if self.eat(b'-') {
                acc = acc - self.parse_term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_term(&mut self) -> Result<ExactScalar, ScalarError> {
        let mut acc = self.parse_factor()?;
        while self.eat(b'*') {
            acc = acc * self.parse_factor()?;
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<ExactScalar, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.parse_rational(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_alphanumeric())
                {
                    self.pos += 1;
                }
                match &self.bytes[start..self.pos] {
                    b"sqrt2" => Ok(ExactScalar::sqrt2()),
                    b"I" => Ok(ExactScalar::i()),
                    other => {
                        self.pos = start;
                        Err(self.err(format!(
                            "unknown symbol '{}'",
                            String::from_utf8_lossy(other)
                        )))
                    }
                }
            }
            _ => Err(self.err("expected a rational, 'sqrt2', 'I', or '('")),
        }
    }

    fn parse_rational(&mut self) -> Result<ExactScalar, ScalarError> {
        let numer = self.parse_digits()?;
        if self.eat(b'/') {
            let denom_pos = self.pos;
            self.skip_ws();
            let denom = self.parse_digits()?;
            if denom.is_zero() {
                self.pos = denom_pos;
                return Err(self.err("zero denominator"));
            }
            Ok(ExactScalar::from_rational(Rational::new(numer, denom)))
        } else {
            Ok(ExactScalar::from_rational(Rational::from_integer(numer)))
        }
    }

    fn parse_digits(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit string"))
    }
}

impl FromStr for ExactScalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let value = cur.parse_expr()?;
        cur.skip_ws();
        if cur.pos != cur.bytes.len() {
            return Err(cur.err("trailing input"));
        }
        Ok(value)
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    #[test]
    fn defining_relations() {
        assert_eq!(ExactScalar::i() * ExactScalar::i(), int(-1));
        assert_eq!(ExactScalar::sqrt2() * ExactScalar::sqrt2(), int(2));
        let golden = int(1) + ExactScalar::sqrt2();
        let conj2 = ExactScalar::sqrt2() - int(1);
        assert_eq!(golden * conj2, int(1));
    }

    #[test]
    fn conjugation() {
        let z = ExactScalar::new(
            Rational::new(1.into(), 2.into()),
            Rational::from_integer(3.into()),
            Rational::new((-2).into(), 5.into()),
            Rational::from_integer(7.into()),
        );
        let c = z.conjugate();
        assert_eq!(c.coords()[0], z.coords()[0]);
        assert_eq!(c.coords()[1], z.coords()[1]);
        assert_eq!(c.coords()[2], &-z.coords()[2].clone());
        assert_eq!(c.coords()[3], &-z.coords()[3].clone());
        assert_eq!(c.conjugate(), z);
        assert!(ExactScalar::sqrt2().conjugate() == ExactScalar::sqrt2());
        assert_eq!(ExactScalar::i().conjugate(), -ExactScalar::i());
    }

    #[test]
    fn inverses() {
        assert_eq!(
            (int(1) + ExactScalar::sqrt2()).inverse().unwrap(),
            int(-1) + ExactScalar::sqrt2()
        );
        assert_eq!(ExactScalar::i().inverse().unwrap(), -ExactScalar::i());
        let half = ExactScalar::ratio(1, 2);
        assert_eq!(
            (int(1) + ExactScalar::i()).inverse().unwrap(),
            (int(1) - ExactScalar::i()) * half
        );
        assert_eq!(ExactScalar::zero().inverse(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn display_forms() {
        assert_eq!(ExactScalar::zero().to_string(), "0");
        assert_eq!(int(1).to_string(), "1");
        assert_eq!(ExactScalar::ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(ExactScalar::sqrt2().to_string(), "sqrt2");
        assert_eq!((-ExactScalar::sqrt2()).to_string(), "-sqrt2");
        assert_eq!((ExactScalar::ratio(3, 2) * ExactScalar::sqrt2()).to_string(), "3/2*sqrt2");
        assert_eq!(ExactScalar::i().to_string(), "I");
        assert_eq!((-ExactScalar::i()).to_string(), "-I");
        assert_eq!((ExactScalar::ratio(1, 2) * ExactScalar::i()).to_string(), "1/2*I");
        assert_eq!((ExactScalar::sqrt2() * ExactScalar::i()).to_string(), "sqrt2*I");
        assert_eq!((int(1) + ExactScalar::sqrt2()).to_string(), "1 + sqrt2");
        assert_eq!((int(2) - ExactScalar::i()).to_string(), "2 - I");
        assert_eq!(
            ((int(1) + ExactScalar::sqrt2()) * ExactScalar::i()).to_string(),
            "(1 + sqrt2)*I"
        );
        assert_eq!(
            ((int(-1) + ExactScalar::sqrt2()) * ExactScalar::i()).to_string(),
            "(-1 + sqrt2)*I"
        );
        assert_eq!(
            (int(2) + (int(1) - ExactScalar::sqrt2()) * ExactScalar::i()).to_string(),
            "2 + (1 - sqrt2)*I"
        );
    }

    #[test]
    fn parse_forms() {
        let cases = [
            "0",
            "-7",
            "3/2 + sqrt2",
            "(1 + sqrt2)*I",
            "-I",
            "2 - 3/4*sqrt2*I",
            "1 - sqrt2 + (5 - 1/3*sqrt2)*I",
        ];
        for case in cases {
            let parsed: ExactScalar = case.parse().unwrap();
            assert_eq!(parsed.to_string(), case, "round trip through {case}");
        }
        let spaced: ExactScalar = "  2*I + 1/2 ".parse().unwrap();
        assert_eq!(spaced.to_string(), "1/2 + 2*I");
        assert!("5/0".parse::<ExactScalar>().is_err());
        assert!("1 +".parse::<ExactScalar>().is_err());
        assert!("sqrt3".parse::<ExactScalar>().is_err());
        assert!("1 1".parse::<ExactScalar>().is_err());
    }

    prop_compose! {
        fn arb_rational()(n in -24i64..=24, d in 1i64..=12) -> Rational {
            Rational::new(n.into(), d.into())
        }
    }

    prop_compose! {
        pub(crate) fn arb_scalar()(
            a in arb_rational(),
            b in arb_rational(),
            c in arb_rational(),
            d in arb_rational(),
        ) -> ExactScalar {
            ExactScalar::new(a, b, c, d)
        }
    }

    proptest! {
        #[test]
        fn ring_axioms(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
            prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
            prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
            prop_assert_eq!(&x + ExactScalar::zero(), x.clone());
            prop_assert_eq!(&x * ExactScalar::one(), x.clone());
            prop_assert_eq!(&x - &x, ExactScalar::zero());
        }

        #[test]
        fn conjugation_is_a_ring_involution(x in arb_scalar(), y in arb_scalar()) {
            prop_assert_eq!(x.conjugate().conjugate(), x.clone());
            prop_assert_eq!((&x * &y).conjugate(), x.conjugate() * y.conjugate());
            prop_assert_eq!((&x + &y).conjugate(), x.conjugate() + y.conjugate());
        }

        #[test]
        fn nonzero_elements_invert(x in arb_scalar()) {
            prop_assume!(!x.is_zero());
            prop_assert_eq!(x.inverse().unwrap() * &x, ExactScalar::one());
        }

        #[test]
        fn textual_round_trip(x in arb_scalar()) {
            let reparsed: ExactScalar = x.to_string().parse().unwrap();
            prop_assert_eq!(reparsed, x);
        }
    }
}
