//! Exact scalars: rational functions in a formal parameter `q` over the integers.
//!
//! A [`QRat`] is stored as a reduced fraction of two integer polynomials. The
//! denominator has a positive leading coefficient and shares no common factor with
//! the numerator, so structural equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense univariate integer polynomial, coefficients in ascending degree.
///
/// The zero polynomial has no coefficients; otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiplicity of the root `q = 0`.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.valuation() + 1 == self.coeffs.len()
    }

    fn shift_down(&self, k: usize) -> Poly {
        Poly::from_coeffs(self.coeffs[k..].to_vec())
    }

    fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    fn div_scalar_exact(&self, c: &BigInt) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|x| x / c).collect() }
    }

    /// Primitive part with positive leading coefficient.
    fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Pseudo-remainder of `self` by `d` (multiplies by a power of the leading coefficient).
    fn pseudo_rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let t = r[top].clone();
            if t.is_zero() {
                r.pop();
                continue;
            }
            for x in r.iter_mut() {
                *x *= &lc;
            }
            let off = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[off + i] -= &t * dc;
            }
            r.pop();
        }
        Poly::from_coeffs(r)
    }

    /// Exact quotient `self / d`; panics if the division is not exact over the integers.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        if d.is_one() {
            return self.clone();
        }
        let dd = d.degree().expect("division by zero polynomial");
        if self.is_zero() {
            return Poly::zero();
        }
        if d.coeffs.len() == 1 {
            return self.div_scalar_exact(&d.coeffs[0]);
        }
        let n = self.coeffs.len();
        assert!(n > dd, "inexact polynomial division");
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd];
        for i in (0..n - dd).rev() {
            let t = &r[i + dd];
            if t.is_zero() {
                continue;
            }
            let (qc, rem) = t.div_rem(lc);
            assert!(rem.is_zero(), "inexact polynomial division");
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= &qc * dc;
            }
            quot[i] = qc;
        }
        assert!(r.iter().all(|c| c.is_zero()), "inexact polynomial division");
        Poly::from_coeffs(quot)
    }

    /// Greatest common divisor in `Z[q]`, normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.primitive_with_content();
        }
        if other.is_zero() {
            return self.primitive_with_content();
        }
        let v = self.valuation().min(other.valuation());
        let cont = self.content().gcd(&other.content());
        let mut a = self.shift_down(self.valuation()).primitive();
        let mut b = other.shift_down(other.valuation()).primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        let g = loop {
            if b.degree() == Some(0) {
                break Poly::one();
            }
            if a == b {
                break a;
            }
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                break b;
            }
            a = b;
            b = r.primitive();
        };
        g.scale(&cont).shift_up(v)
    }

    fn primitive_with_content(&self) -> Poly {
        if self.leading().is_some_and(|l| l.is_negative()) {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if k == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }

    fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn is_bare_monomial(&self) -> bool {
        self.term_count() == 1 && !self.coeffs.last().unwrap().is_negative()
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, BigInt::zero());
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

/// Exact element of `Q(q)` in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: Poly,
    den: Poly,
}

impl QRat {
    /// Builds `num/den` and canonicalizes it. Panics on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return QRat::zero();
        }
        if den.is_one() {
            return QRat { num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        if den.leading().unwrap().is_negative() {
            num = -num;
            den = -den;
        }
        QRat { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        QRat { num: p, den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        QRat::from_poly(Poly::constant(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        QRat::from_poly(Poly::constant(n))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        QRat::new(Poly::constant(r.numer().clone()), Poly::constant(r.denom().clone()))
    }

    /// The formal parameter `q`.
    pub fn q() -> Self {
        QRat::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            QRat::from_poly(Poly::monomial(BigInt::one(), k as usize))
        } else {
            QRat { num: Poly::one(), den: Poly::monomial(BigInt::one(), (-k) as usize) }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Constant value if this element does not depend on `q`.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0) {
            let n = self.num.coeffs().first().cloned().unwrap_or_default();
            Some(BigRational::new(n, self.den.coeffs()[0].clone()))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<QRat> {
        if self.is_zero() {
            return Err(Error::Argument("inverse of zero".into()));
        }
        Ok(QRat::new(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, mut e: u32) -> QRat {
        let mut base = self.clone();
        let mut acc = QRat::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact value at `q = q0`.
    pub fn eval_at(&self, q0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval_rational(q0);
        if d.is_zero() {
            return Err(Error::Evaluation(format!("denominator {} vanishes at q = {q0}", PolyDisplay(&self.den))));
        }
        Ok(self.num.eval_rational(q0) / d)
    }

    /// Floating-point value at `q = q0`.
    pub fn eval_f64(&self, q0: f64) -> Result<f64> {
        let d = self.den.eval_f64(q0);
        if d == 0.0 {
            return Err(Error::Evaluation(format!("denominator {} vanishes at q = {q0}", PolyDisplay(&self.den))));
        }
        Ok(self.num.eval_f64(q0) / d)
    }

    /// Substitutes `q -> q^k` for `k >= 1`.
    pub fn subs_power(&self, k: usize) -> QRat {
        let spread = |p: &Poly| {
            let mut c = vec![BigInt::zero(); p.coeffs().len().saturating_sub(1) * k + 1];
            for (i, x) in p.coeffs().iter().enumerate() {
                c[i * k] = x.clone();
            }
            Poly::from_coeffs(c)
        };
        QRat::new(spread(&self.num), spread(&self.den))
    }
}

struct PolyDisplay<'a>(&'a Poly);

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_terms(f)
    }
}

impl Zero for QRat {
    fn zero() -> Self {
        QRat { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QRat {
    fn one() -> Self {
        QRat { num: Poly::one(), den: Poly::one() }
    }
}

impl Default for QRat {
    fn default() -> Self {
        QRat::zero()
    }
}

impl Add for &QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let n = &self.num + &rhs.num;
            if self.den.is_one() {
                return QRat::from_poly(n);
            }
            return QRat::new(n, self.den.clone());
        }
        if self.den.is_one() {
            return QRat::new(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        if rhs.den.is_one() {
            return QRat::new(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.div_exact(&g);
        let b = rhs.den.div_exact(&g);
        let n = &(&self.num * &b) + &(&rhs.num * &a);
        QRat::new(n, &a * &rhs.den)
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat { num: -self.num.clone(), den: self.den.clone() }
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat { num: -self.num, den: self.den }
    }
}

impl Sub for &QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        self + &(-rhs)
    }
}

impl Mul for &QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        if self.is_zero() || rhs.is_zero() {
            return QRat::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QRat::from_poly(&self.num * &rhs.num);
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n = &self.num.div_exact(&g1) * &rhs.num.div_exact(&g2);
        let d = &self.den.div_exact(&g2) * &rhs.den.div_exact(&g1);
        if d.leading().unwrap().is_negative() {
            QRat { num: -n, den: -d }
        } else {
            QRat { num: n, den: d }
        }
    }
}

impl Div for &QRat {
    type Output = QRat;
    fn div(self, rhs: &QRat) -> QRat {
        self * &rhs.inv().expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QRat {
            type Output = QRat;
            fn $m(self, rhs: QRat) -> QRat {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QRat> for QRat {
            type Output = QRat;
            fn $m(self, rhs: &QRat) -> QRat {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&QRat> for QRat {
    fn add_assign(&mut self, rhs: &QRat) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QRat> for QRat {
    fn sub_assign(&mut self, rhs: &QRat) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&QRat> for QRat {
    fn mul_assign(&mut self, rhs: &QRat) {
        *self = &*self * rhs;
    }
}

impl From<i64> for QRat {
    fn from(n: i64) -> Self {
        QRat::from_int(n)
    }
}

impl PartialOrd for QRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but fixed total order, used only to keep collections deterministic.
impl Ord for QRat {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.den.coeffs, &self.num.coeffs).cmp(&(&other.den.coeffs, &other.num.coeffs))
    }
}

impl fmt::Display for QRat {
    /// Ascending powers; the fraction is printed with a denominator whose lowest
    /// coefficient is positive, e.g. `(1-q^2)/(1-q^6)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = if self.den.coeffs[self.den.valuation()].is_negative() {
            (-self.num.clone(), -self.den.clone())
        } else {
            (self.num.clone(), self.den.clone())
        };
        let wrap = |p: &Poly, f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if p.term_count() > 1 {
                write!(f, "(")?;
                p.fmt_terms(f)?;
                write!(f, ")")
            } else {
                p.fmt_terms(f)
            }
        };
        if den.is_one() {
            return num.fmt_terms(f);
        }
        if num.term_count() > 1 {
            wrap(&num, f)?;
        } else {
            num.fmt_terms(f)?;
        }
        write!(f, "/")?;
        if den.is_bare_monomial() && den.coeffs.last().unwrap().is_one() {
            den.fmt_terms(f)
        } else {
            wrap(&den, f)
        }
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for QRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for QRat {
    type Err = Error;

    /// Parses expressions in `q` with integer literals, `+ - * / ^`, parentheses and
    /// implicit multiplication, e.g. `(1 - q^2)/(1 - q^6)` or `2q^-1`.
    fn from_str(s: &str) -> Result<QRat> {
        let mut p = Parser { chars: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
        let v = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!("unexpected trailing input in {s:?}")));
        }
        Ok(v)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<QRat> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<QRat> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(Error::Parse("division by zero".into()));
                    }
                    acc = acc / d;
                }
                Some(c) if c == 'q' || c == '(' || c.is_ascii_digit() => {
                    acc = acc * self.power()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<QRat> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<QRat> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let neg = match self.peek() {
                Some('-') => {
                    self.pos += 1;
                    true
                }
                Some('+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            let e = self.integer()?.to_u32().ok_or_else(|| Error::Parse("exponent too large".into()))?;
            let v = base.pow(e);
            return if neg { v.inv().map_err(|_| Error::Parse("negative power of zero".into())) } else { Ok(v) };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<QRat> {
        match self.peek() {
            Some('q') => {
                self.pos += 1;
                Ok(QRat::q())
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(QRat::from_bigint(self.integer()?)),
            other => Err(Error::Parse(format!("unexpected {other:?} at position {}", self.pos))),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected integer at position {start}")));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }
}

/// `(x; base)_n = prod_{i<n} (1 - base^i x)`.
pub fn poch(x: &QRat, base: &QRat, n: u32) -> QRat {
    let mut acc = QRat::one();
    let mut factor = x.clone();
    for _ in 0..n {
        acc = acc * (QRat::one() - &factor);
        factor = &factor * base;
    }
    acc
}

/// `(x; q)_n = prod_{i<n} (1 - q^i x)`.
pub fn qpoch(x: &QRat, n: u32) -> QRat {
    poch(x, &QRat::q(), n)
}

/// Gaussian binomial `[n choose k]` in the given base.
pub fn qbinom(n: u32, k: u32, base: &QRat) -> Result<QRat> {
    if k > n {
        return Err(Error::Argument(format!("q-binomial with k = {k} > n = {n}")));
    }
    let f = |m: u32| poch(base, base, m);
    Ok(f(n) / (f(k) * f(n - k)))
}
