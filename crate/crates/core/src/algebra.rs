//! Normal-form arithmetic in the polynomial *-algebras of SU_q(2), U_q(2), SO_q(3)
//! and their `q = 0` counterparts, together with coproduct, counit and antipode.
//!
//! Every element is a finite sum of normal monomials
//! `(a*)^r g^gp (g*)^gm a^s v^t` where `a` stands for alpha and `g` for gamma
//! (`a, c, v` in the U(2) presets).
//!
//! * Generic `q`: `min(r, s) = 0`. Products are reduced with the closed forms
//!   `a^m (a*)^m = prod_{j=1..m} (1 - q^{2j} x)` and
//!   `(a*)^m a^m = prod_{j=0..m-1} (1 - q^{-2j} x)` where `x = g* g`.
//! * `q = 0`: `min(gp, gm) = 0`, using `a a* = 1`, `a g = a g* = 0` and
//!   `g g* = g* g = 1 - a* a`.
//!
//! The SO presets reuse the SU arithmetic and only admit monomials of even total
//! degree `r + gp + gm + s`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::scalar::QRat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Preset {
    SUq2,
    Uq2,
    SOq3,
    SU02,
    U02,
    SO03,
}

impl Preset {
    pub const ALL: [Preset; 6] = [Preset::SUq2, Preset::Uq2, Preset::SOq3, Preset::SU02, Preset::U02, Preset::SO03];

    pub fn is_generic(self) -> bool {
        matches!(self, Preset::SUq2 | Preset::Uq2 | Preset::SOq3)
    }

    pub fn has_v(self) -> bool {
        matches!(self, Preset::Uq2 | Preset::U02)
    }

    pub fn is_so(self) -> bool {
        matches!(self, Preset::SOq3 | Preset::SO03)
    }

    /// The preset whose arithmetic is used: SO presets compute inside SU.
    pub fn ambient(self) -> Preset {
        match self {
            Preset::SOq3 => Preset::SUq2,
            Preset::SO03 => Preset::SU02,
            p => p,
        }
    }

    /// The even subalgebra preset of an SU preset.
    pub fn so_of(self) -> Result<Preset> {
        match self {
            Preset::SUq2 | Preset::SOq3 => Ok(Preset::SOq3),
            Preset::SU02 | Preset::SO03 => Ok(Preset::SO03),
            p => Err(Error::Argument(format!("{p} has no SO subalgebra"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::SUq2 => "SUq2",
            Preset::Uq2 => "Uq2",
            Preset::SOq3 => "SOq3",
            Preset::SU02 => "SU02",
            Preset::U02 => "U02",
            Preset::SO03 => "SO03",
        }
    }

    pub fn admits(self, m: &NCMonomial) -> bool {
        (self.has_v() || m.t == 0)
            && (!self.is_so() || m.total_degree() % 2 == 0)
            && if self.is_generic() { m.r.min(m.s) == 0 } else { m.gp.min(m.gm) == 0 }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Preset> {
        let k = s.to_ascii_lowercase().replace(['_', '-', '(', ')'], "");
        Ok(match k.as_str() {
            "suq2" => Preset::SUq2,
            "uq2" => Preset::Uq2,
            "soq3" => Preset::SOq3,
            "su02" => Preset::SU02,
            "u02" => Preset::U02,
            "so03" => Preset::SO03,
            _ => return Err(Error::Argument(format!("unknown preset {s:?}"))),
        })
    }
}

/// Algebra generators; `A`/`G` are alpha/gamma (or a/c), `V` is the central unitary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    A,
    AStar,
    G,
    GStar,
    V,
    VStar,
}

impl Gen {
    fn monomial(self) -> NCMonomial {
        let mut m = NCMonomial::one();
        match self {
            Gen::A => m.s = 1,
            Gen::AStar => m.r = 1,
            Gen::G => m.gp = 1,
            Gen::GStar => m.gm = 1,
            Gen::V => m.t = 1,
            Gen::VStar => m.t = -1,
        }
        m
    }
}

/// Parses a generator word such as `"a as g^2 gs v^-1"`. Accepted letters:
/// `a`/`alpha`, `as`, `g`/`c`/`gamma`, `gs`/`cs`, `v`, `vs`.
pub fn parse_word(s: &str) -> Result<Vec<Gen>> {
    let mut out = Vec::new();
    for tok in s.split(|c: char| c.is_whitespace() || c == '*' || c == '.').filter(|t| !t.is_empty()) {
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (n, e.parse::<i32>().map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?),
            None => (tok, 1),
        };
        let (g, gi) = match name {
            "a" | "alpha" => (Gen::A, None),
            "as" | "alphas" => (Gen::AStar, None),
            "g" | "c" | "gamma" => (Gen::G, None),
            "gs" | "cs" | "gammas" => (Gen::GStar, None),
            "v" => (Gen::V, Some(Gen::VStar)),
            "vs" => (Gen::VStar, Some(Gen::V)),
            "1" => continue,
            _ => return Err(Error::Argument(format!("unknown generator {name:?}"))),
        };
        if exp < 0 {
            let inv = gi.ok_or_else(|| Error::Argument(format!("negative power of {name:?}")))?;
            out.extend(std::iter::repeat_n(inv, (-exp) as usize));
        } else {
            out.extend(std::iter::repeat_n(g, exp as usize));
        }
    }
    Ok(out)
}

/// Normal monomial `(a*)^r g^gp (g*)^gm a^s v^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NCMonomial {
    pub r: u32,
    pub gp: u32,
    pub gm: u32,
    pub s: u32,
    pub t: i32,
}

impl NCMonomial {
    pub const fn new(r: u32, gp: u32, gm: u32, s: u32, t: i32) -> Self {
        NCMonomial { r, gp, gm, s, t }
    }

    pub const fn one() -> Self {
        NCMonomial::new(0, 0, 0, 0, 0)
    }

    pub fn is_one(&self) -> bool {
        *self == NCMonomial::one()
    }

    /// Degree in alpha, gamma and their adjoints (the v-power is not counted).
    pub fn total_degree(&self) -> u32 {
        self.r + self.gp + self.gm + self.s
    }

    /// `(gamma-degree, v-degree)`.
    pub fn degree(&self) -> (i32, i32) {
        (self.gp as i32 - self.gm as i32, self.t)
    }

    /// Alpha-degree `s - r`, the second torus grading.
    pub fn alpha_degree(&self) -> i32 {
        self.s as i32 - self.r as i32
    }

    pub fn star(&self) -> NCMonomial {
        NCMonomial::new(self.s, self.gm, self.gp, self.r, -self.t)
    }

    fn with_t(mut self, t: i32) -> Self {
        self.t = t;
        self
    }
}

impl fmt::Display for NCMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("as", self.r), ("g", self.gp), ("gs", self.gm), ("a", self.s)] {
            if e > 0 {
                parts.push(format!("{name}^{e}"));
            }
        }
        if self.t != 0 {
            parts.push(format!("v^{}", self.t));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

impl FromStr for NCMonomial {
    type Err = Error;
    /// Parses the plain-text syntax `"as^r g^a gs^b a^s v^t"`; letters must appear in
    /// normal order, each at most once; `"1"` is the unit.
    fn from_str(s: &str) -> Result<NCMonomial> {
        let mut m = NCMonomial::one();
        let mut last = 0;
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, exp) = tok.split_once('^').unwrap_or((tok, "1"));
            let rank = match name {
                "as" => 1,
                "g" | "c" => 2,
                "gs" | "cs" => 3,
                "a" => 4,
                "v" => 5,
                _ => return Err(Error::Parse(format!("unknown letter {name:?} in monomial {s:?}"))),
            };
            if rank <= last {
                return Err(Error::Parse(format!("letters out of normal order in {s:?}")));
            }
            last = rank;
            if rank == 5 {
                m.t = exp.parse().map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?;
            } else {
                let e: u32 = exp.parse().map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?;
                match rank {
                    1 => m.r = e,
                    2 => m.gp = e,
                    3 => m.gm = e,
                    _ => m.s = e,
                }
            }
        }
        Ok(m)
    }
}

/// Coefficients of a polynomial in `x = g* g`, lowest degree first.
type XPoly = Vec<QRat>;

fn xpoly_product(factors: impl Iterator<Item = QRat>) -> XPoly {
    // product of (1 - c_j x)
    let mut p: XPoly = vec![QRat::one()];
    for c in factors {
        let mut next = vec![QRat::zero(); p.len() + 1];
        for (i, a) in p.iter().enumerate() {
            next[i] += a;
            next[i + 1] -= &(a * &c);
        }
        p = next;
    }
    p
}

/// `a^m (a*)^m` as a polynomial in `x`.
fn alpha_alphastar(m: u32) -> XPoly {
    xpoly_product((1..=m).map(|j| QRat::q_pow(2 * j as i64)))
}

/// `(a*)^m a^m` as a polynomial in `x`.
fn alphastar_alpha(m: u32) -> XPoly {
    xpoly_product((0..m).map(|j| QRat::q_pow(-2 * j as i64)))
}

type Terms = Vec<(NCMonomial, QRat)>;

/// Product of two normal monomials at generic `q`.
fn mul_generic(m1: &NCMonomial, m2: &NCMonomial) -> Terms {
    let t = m1.t + m2.t;
    let m = m1.s.min(m2.r);
    let d1 = m2.r - m;
    let d2 = m1.s - m;
    let shift = d1.max(d2) as i64;
    let mut middle = alpha_alphastar(m);
    if shift > 0 {
        for (i, c) in middle.iter_mut().enumerate() {
            *c = &*c * &QRat::q_pow(2 * shift * i as i64);
        }
    }
    let pref = QRat::q_pow(d1 as i64 * (m1.gp + m1.gm) as i64 + d2 as i64 * (m2.gp + m2.gm) as i64);
    let big_r = m1.r + d1;
    let big_s = d2 + m2.s;
    let mut out = Vec::new();
    for (i, ci) in middle.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        let i = i as u32;
        let a = m1.gp + m2.gp + i;
        let b = m1.gm + m2.gm + i;
        let coef = ci * &pref;
        let mm = big_r.min(big_s);
        if mm == 0 {
            out.push((NCMonomial::new(big_r, a, b, big_s, t), coef));
        } else {
            let coef = &coef * &QRat::q_pow(-(mm as i64) * (a + b) as i64);
            for (j, dj) in alphastar_alpha(mm).iter().enumerate() {
                let j = j as u32;
                out.push((NCMonomial::new(big_r - mm, a + j, b + j, big_s - mm, t), &coef * dj));
            }
        }
    }
    out
}

/// Product of two normal monomials at `q = 0`.
fn mul_zero(m1: &NCMonomial, m2: &NCMonomial) -> Terms {
    let t = m1.t + m2.t;
    let m = m1.s.min(m2.r);
    let d1 = m2.r - m;
    let d2 = m1.s - m;
    if (d1 > 0 && m1.gp + m1.gm > 0) || (d2 > 0 && m2.gp + m2.gm > 0) {
        return Vec::new();
    }
    let big_r = m1.r + d1;
    let big_s = d2 + m2.s;
    let a = m1.gp + m2.gp;
    let b = m1.gm + m2.gm;
    if a > 0 && b > 0 {
        if a == b {
            return vec![
                (NCMonomial::new(big_r, 0, 0, big_s, t), QRat::one()),
                (NCMonomial::new(big_r + 1, 0, 0, big_s + 1, t), -QRat::one()),
            ];
        }
        let k = a.min(b);
        return vec![(NCMonomial::new(big_r, a - k, b - k, big_s, t), QRat::one())];
    }
    vec![(NCMonomial::new(big_r, a, b, big_s, t), QRat::one())]
}

fn mul_monomials(preset: Preset, m1: &NCMonomial, m2: &NCMonomial) -> Terms {
    if preset.is_generic() {
        mul_generic(m1, m2)
    } else {
        mul_zero(m1, m2)
    }
}

/// Noncommutative polynomial in normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NCPoly {
    preset: Preset,
    terms: BTreeMap<NCMonomial, QRat>,
}

impl NCPoly {
    pub fn zero(preset: Preset) -> Self {
        NCPoly { preset, terms: BTreeMap::new() }
    }

    pub fn one(preset: Preset) -> Self {
        NCPoly::constant(preset, QRat::one())
    }

    pub fn constant(preset: Preset, c: QRat) -> Self {
        NCPoly::zero(preset).plus_term(NCMonomial::one(), c)
    }

    /// A single normal monomial; fails if the monomial is not admissible in the preset.
    pub fn monomial(preset: Preset, m: NCMonomial) -> Result<Self> {
        NCPoly::term(preset, m, QRat::one())
    }

    pub fn term(preset: Preset, m: NCMonomial, c: QRat) -> Result<Self> {
        if !preset.admits(&m) {
            return Err(Error::Argument(format!("monomial {m} is not a normal monomial of {preset}")));
        }
        Ok(NCPoly::zero(preset).plus_term(m, c))
    }

    pub fn gen(preset: Preset, g: Gen) -> Result<Self> {
        normalize(&[g], preset)
    }

    pub fn preset(&self) -> Preset {
        self.preset
    }

    pub fn terms(&self) -> &BTreeMap<NCMonomial, QRat> {
        &self.terms
    }

    pub fn coeff(&self, m: &NCMonomial) -> QRat {
        self.terms.get(m).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total degree of a monomial, ignoring v.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    fn plus_term(mut self, m: NCMonomial, c: QRat) -> Self {
        add_term(&mut self.terms, m, c);
        self
    }

    /// Reinterprets the same monomials in another preset of the same regime, checking
    /// admissibility. Moving between SU and U identifies `alpha, gamma` with `a, c`.
    pub fn with_preset(&self, preset: Preset) -> Result<NCPoly> {
        if preset.is_generic() != self.preset.is_generic() {
            return Err(Error::Argument(format!("cannot move {} element to {preset}", self.preset)));
        }
        if let Some(m) = self.terms.keys().find(|m| !preset.admits(m)) {
            return Err(Error::Argument(format!("monomial {m} does not belong to {preset}")));
        }
        Ok(NCPoly { preset, terms: self.terms.clone() })
    }

    fn check_same(&self, other: &NCPoly) -> Result<()> {
        if self.preset != other.preset {
            return Err(Error::Argument(format!("preset mismatch: {} vs {}", self.preset, other.preset)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&mut out.terms, *m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QRat) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero(self.preset);
        }
        NCPoly { preset: self.preset, terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    /// Normal-form product.
    pub fn try_mul(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_same(other)?;
        let mut terms = BTreeMap::new();
        let amb = self.preset.ambient();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1 * c2;
                for (m, d) in mul_monomials(amb, m1, m2) {
                    add_term(&mut terms, m, &c * &d);
                }
            }
        }
        Ok(NCPoly { preset: self.preset, terms })
    }

    pub fn pow(&self, e: u32) -> NCPoly {
        let mut acc = NCPoly::one(self.preset);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The involution; coefficients are real so they are unchanged.
    pub fn star(&self) -> NCPoly {
        NCPoly { preset: self.preset, terms: self.terms.iter().map(|(m, c)| (m.star(), c.clone())).collect() }
    }

    pub fn counit(&self) -> QRat {
        let mut acc = QRat::zero();
        for (m, c) in &self.terms {
            if m.gp == 0 && m.gm == 0 {
                acc += c;
            }
        }
        acc
    }

    pub fn coproduct(&self) -> TensorPoly {
        let mut out = TensorPoly::zero(self.preset);
        for (m, c) in &self.terms {
            out.add_scaled(&monomial_coproduct(self.preset, m), c);
        }
        out
    }

    pub fn antipode(&self) -> Result<NCPoly> {
        if !self.preset.is_generic() {
            return Err(Error::Unsupported(format!("{} carries no antipode at q = 0", self.preset)));
        }
        let mut out = NCPoly::zero(self.preset);
        for (m, c) in &self.terms {
            out = &out + &monomial_antipode(self.preset, m).scale(c);
        }
        Ok(out)
    }

    /// Substitutes a rational value for `q` in every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&QRat) -> QRat) -> NCPoly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            add_term(&mut terms, *m, f(c));
        }
        NCPoly { preset: self.preset, terms }
    }

    /// Keeps the monomials accepted by the predicate.
    pub fn filter(&self, keep: impl Fn(&NCMonomial) -> bool) -> NCPoly {
        NCPoly {
            preset: self.preset,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Multiplies every monomial by `v^dt`.
    pub fn shift_v(&self, dt: i32) -> Result<NCPoly> {
        if dt != 0 && !self.preset.has_v() {
            return Err(Error::Argument(format!("{} has no generator v", self.preset)));
        }
        Ok(NCPoly { preset: self.preset, terms: self.terms.iter().map(|(m, c)| (m.with_t(m.t + dt), c.clone())).collect() })
    }
}

fn add_term(terms: &mut BTreeMap<NCMonomial, QRat>, m: NCMonomial, c: QRat) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = &*e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        self.try_add(rhs).expect("preset mismatch")
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self.try_add(&-rhs).expect("preset mismatch")
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&-QRat::one())
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        self.try_mul(rhs).expect("preset mismatch")
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let cs = c.to_string();
                let cs = if cs.contains(['+', '/']) || cs[1..].contains('-') { format!("({cs})") } else { cs };
                if m.is_one() {
                    cs
                } else if cs == "1" {
                    m.to_string()
                } else if cs == "-1" {
                    format!("-{m}")
                } else {
                    format!("{cs} {m}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.preset, self)
    }
}

/// JSON form of a polynomial: a list of `{monomial, coeff}` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub preset: Preset,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: String,
    pub coeff: QRat,
}

impl NCPoly {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            preset: self.preset,
            terms: self.terms.iter().map(|(m, c)| TermJson { monomial: m.to_string(), coeff: c.clone() }).collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<NCPoly> {
        let mut out = NCPoly::zero(j.preset);
        for t in &j.terms {
            out = out.try_add(&NCPoly::term(j.preset, t.monomial.parse()?, t.coeff.clone())?)?;
        }
        Ok(out)
    }
}

/// Normal form of a generator word.
pub fn normalize(word: &[Gen], preset: Preset) -> Result<NCPoly> {
    let amb = preset.ambient();
    let mut acc = NCPoly::one(amb);
    for g in word {
        if matches!(g, Gen::V | Gen::VStar) && !amb.has_v() {
            return Err(Error::Argument(format!("generator v does not exist in {preset}")));
        }
        acc = &acc * &NCPoly { preset: amb, terms: BTreeMap::from([(g.monomial(), QRat::one())]) };
    }
    acc.with_preset(preset)
}

/// Bilinear product with a preset check.
pub fn mul(x: &NCPoly, y: &NCPoly) -> Result<NCPoly> {
    x.try_mul(y)
}

/// Counit, an algebra character.
pub fn counit(x: &NCPoly) -> QRat {
    x.counit()
}

/// Element of the algebraic tensor square.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorPoly {
    preset: Preset,
    terms: BTreeMap<(NCMonomial, NCMonomial), QRat>,
}

impl TensorPoly {
    pub fn zero(preset: Preset) -> Self {
        TensorPoly { preset, terms: BTreeMap::new() }
    }

    pub fn elementary(preset: Preset, l: NCMonomial, r: NCMonomial, c: QRat) -> Self {
        let mut t = TensorPoly::zero(preset);
        t.add_term(l, r, c);
        t
    }

    pub fn preset(&self) -> Preset {
        self.preset
    }

    pub fn terms(&self) -> &BTreeMap<(NCMonomial, NCMonomial), QRat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, l: NCMonomial, r: NCMonomial, c: QRat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((l, r)).or_insert_with(QRat::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&(l, r));
        }
    }

    pub fn add_scaled(&mut self, other: &TensorPoly, c: &QRat) {
        for ((l, r), x) in &other.terms {
            self.add_term(*l, *r, x * c);
        }
    }

    /// Legwise product `(x1 ⊗ y1)(x2 ⊗ y2) = x1 x2 ⊗ y1 y2`.
    pub fn mul(&self, other: &TensorPoly) -> TensorPoly {
        let amb = self.preset.ambient();
        let mut out = TensorPoly::zero(self.preset);
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &other.terms {
                let c = c1 * c2;
                let left = mul_monomials(amb, l1, l2);
                if left.is_empty() {
                    continue;
                }
                let right = mul_monomials(amb, r1, r2);
                for (lm, lc) in &left {
                    let lc = &c * lc;
                    for (rm, rc) in &right {
                        out.add_term(*lm, *rm, &lc * rc);
                    }
                }
            }
        }
        out
    }

    pub fn star(&self) -> TensorPoly {
        let mut out = TensorPoly::zero(self.preset);
        for ((l, r), c) in &self.terms {
            out.add_term(l.star(), r.star(), c.clone());
        }
        out
    }

    /// Applies linear maps to each leg: `(f ⊗ g)`.
    pub fn map_legs(&self, f: impl Fn(&NCMonomial) -> NCPoly, g: impl Fn(&NCMonomial) -> NCPoly) -> TensorPoly {
        let mut out = TensorPoly::zero(self.preset);
        for ((l, r), c) in &self.terms {
            let fl = f(l);
            let gr = g(r);
            for (lm, lc) in fl.terms() {
                for (rm, rc) in gr.terms() {
                    out.add_term(*lm, *rm, &(c * lc) * rc);
                }
            }
        }
        out
    }

    /// `(phi ⊗ psi)(self)` for scalar-valued functionals on monomials.
    pub fn pair(&self, phi: impl Fn(&NCMonomial) -> Result<QRat>, psi: impl Fn(&NCMonomial) -> Result<QRat>) -> Result<QRat> {
        let mut acc = QRat::zero();
        for ((l, r), c) in &self.terms {
            let a = phi(l)?;
            if a.is_zero() {
                continue;
            }
            let b = psi(r)?;
            acc += &(&(c * &a) * &b);
        }
        Ok(acc)
    }

    /// `(f ⊗ id)(self)` for a scalar functional `f`.
    pub fn contract_left(&self, f: impl Fn(&NCMonomial) -> QRat) -> NCPoly {
        let mut terms = BTreeMap::new();
        for ((l, r), c) in &self.terms {
            add_term(&mut terms, *r, c * &f(l));
        }
        NCPoly { preset: self.preset, terms }
    }

    /// `(id ⊗ f)(self)` for a scalar functional `f`.
    pub fn contract_right(&self, f: impl Fn(&NCMonomial) -> QRat) -> NCPoly {
        let mut terms = BTreeMap::new();
        for ((l, r), c) in &self.terms {
            add_term(&mut terms, *l, c * &f(r));
        }
        NCPoly { preset: self.preset, terms }
    }

    /// Multiplication map `x ⊗ y -> x y` after applying `f ⊗ g`.
    pub fn multiply_legs(&self, f: impl Fn(&NCMonomial) -> NCPoly, g: impl Fn(&NCMonomial) -> NCPoly) -> NCPoly {
        let mut out = NCPoly::zero(self.preset);
        for ((l, r), c) in &self.terms {
            out = &out + &(&f(l) * &g(r)).scale(c);
        }
        out
    }
}

impl fmt::Debug for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|((l, r), c)| format!("({c}) [{l}]⊗[{r}]")).collect();
        write!(f, "{}", if parts.is_empty() { "0".to_string() } else { parts.join(" + ") })
    }
}

/// Triple tensor, used to compare the two iterated coproducts.
pub type Tensor3 = BTreeMap<(NCMonomial, NCMonomial, NCMonomial), QRat>;

fn add3(t: &mut Tensor3, key: (NCMonomial, NCMonomial, NCMonomial), c: QRat) {
    if c.is_zero() {
        return;
    }
    let e = t.entry(key).or_insert_with(QRat::zero);
    *e += &c;
    if e.is_zero() {
        t.remove(&key);
    }
}

/// `(Δ ⊗ id)(t)`.
pub fn coproduct_left(t: &TensorPoly) -> Tensor3 {
    let mut out = Tensor3::new();
    for ((l, r), c) in &t.terms {
        for ((a, b), d) in monomial_coproduct(t.preset, l).terms() {
            add3(&mut out, (*a, *b, *r), c * d);
        }
    }
    out
}

/// `(id ⊗ Δ)(t)`.
pub fn coproduct_right(t: &TensorPoly) -> Tensor3 {
    let mut out = Tensor3::new();
    for ((l, r), c) in &t.terms {
        for ((a, b), d) in monomial_coproduct(t.preset, r).terms() {
            add3(&mut out, (*l, *a, *b), c * d);
        }
    }
    out
}

fn m(r: u32, gp: u32, gm: u32, s: u32, t: i32) -> NCMonomial {
    NCMonomial::new(r, gp, gm, s, t)
}

/// Coproduct of a single generator in the ambient arithmetic of `preset`.
fn generator_coproduct(preset: Preset, g: Gen) -> TensorPoly {
    let amb = preset.ambient();
    let one = QRat::one();
    let mq = -QRat::q();
    let generic = amb.is_generic();
    let twisted = amb == Preset::Uq2;
    let a = m(0, 0, 0, 1, 0);
    let a_s = m(1, 0, 0, 0, 0);
    let g_ = m(0, 1, 0, 0, 0);
    let gs = m(0, 0, 1, 0, 0);
    let tv = |x: NCMonomial, dt: i32| if twisted { x.with_t(dt) } else { x };
    let mut t = TensorPoly::zero(preset);
    match g {
        Gen::A => {
            t.add_term(a, a, one);
            if generic {
                t.add_term(tv(gs, 1), g_, mq);
            }
        }
        Gen::AStar => {
            t.add_term(a_s, a_s, one);
            if generic {
                t.add_term(tv(g_, -1), gs, mq);
            }
        }
        Gen::G => {
            t.add_term(g_, a, one.clone());
            t.add_term(tv(a_s, 1), g_, one);
        }
        Gen::GStar => {
            t.add_term(gs, a_s, one.clone());
            t.add_term(tv(a, -1), gs, one);
        }
        Gen::V => t.add_term(m(0, 0, 0, 0, 1), m(0, 0, 0, 0, 1), one),
        Gen::VStar => t.add_term(m(0, 0, 0, 0, -1), m(0, 0, 0, 0, -1), one),
    }
    t
}

fn tensor_pow(preset: Preset, g: Gen, e: u32, acc: TensorPoly) -> TensorPoly {
    let d = generator_coproduct(preset, g);
    let mut acc = acc;
    for _ in 0..e {
        acc = acc.mul(&d);
    }
    acc
}

/// Coproduct of a normal monomial, as the product of generator coproducts.
pub fn monomial_coproduct(preset: Preset, mono: &NCMonomial) -> TensorPoly {
    let mut acc = TensorPoly::elementary(preset, NCMonomial::one(), NCMonomial::one(), QRat::one());
    acc = tensor_pow(preset, Gen::AStar, mono.r, acc);
    acc = tensor_pow(preset, Gen::G, mono.gp, acc);
    acc = tensor_pow(preset, Gen::GStar, mono.gm, acc);
    acc = tensor_pow(preset, Gen::A, mono.s, acc);
    if mono.t != 0 {
        let v = m(0, 0, 0, 0, mono.t);
        acc = acc.mul(&TensorPoly::elementary(preset, v, v, QRat::one()));
    }
    acc
}

/// Coproduct, the multiplicative *-homomorphic extension of the generator formulas.
pub fn coproduct(x: &NCPoly) -> TensorPoly {
    x.coproduct()
}

fn generator_antipode(preset: Preset, g: Gen) -> NCPoly {
    let amb = preset.ambient();
    let u = amb == Preset::Uq2;
    let mono = |x: NCMonomial, c: QRat| NCPoly { preset: amb, terms: BTreeMap::from([(x, c)]) };
    match g {
        Gen::A => mono(m(1, 0, 0, 0, 0), QRat::one()),
        Gen::AStar => mono(m(0, 0, 0, 1, 0), QRat::one()),
        Gen::G => mono(m(0, 1, 0, 0, if u { -1 } else { 0 }), -QRat::q()),
        Gen::GStar => mono(m(0, 0, 1, 0, if u { 1 } else { 0 }), -QRat::q_pow(-1)),
        Gen::V => mono(m(0, 0, 0, 0, -1), QRat::one()),
        Gen::VStar => mono(m(0, 0, 0, 0, 1), QRat::one()),
    }
}

/// Antipode of a monomial: `S` reverses the order of the factors.
fn monomial_antipode(preset: Preset, mono: &NCMonomial) -> NCPoly {
    let amb = preset.ambient();
    let mut acc = NCPoly::constant(amb, QRat::one()).shift_v(if amb.has_v() { -mono.t } else { 0 }).expect("v shift");
    let factors = [(Gen::A, mono.s), (Gen::GStar, mono.gm), (Gen::G, mono.gp), (Gen::AStar, mono.r)];
    for (g, e) in factors {
        let sg = generator_antipode(amb, g);
        for _ in 0..e {
            acc = &acc * &sg;
        }
    }
    NCPoly { preset, terms: acc.terms }
}

/// Antipode; unavailable at `q = 0`.
pub fn antipode(x: &NCPoly) -> Result<NCPoly> {
    x.antipode()
}

/// Involution.
pub fn star(x: &NCPoly) -> NCPoly {
    x.star()
}

/// `(gamma-degree, v-degree)` of a monomial.
pub fn degree(x: &NCMonomial) -> (i32, i32) {
    x.degree()
}

/// All normal monomials of the preset with `total_degree + |t| <= max_degree`.
pub fn monomials_up_to(preset: Preset, max_degree: u32) -> Vec<NCMonomial> {
    let mut out = Vec::new();
    let d = max_degree;
    for r in 0..=d {
        for gp in 0..=d - r {
            for gm in 0..=d - r - gp {
                for s in 0..=d - r - gp - gm {
                    let rest = (d - r - gp - gm - s) as i32;
                    let trange = if preset.has_v() { -rest..=rest } else { 0..=0 };
                    for t in trange {
                        let mono = NCMonomial::new(r, gp, gm, s, t);
                        if preset.admits(&mono) {
                            out.push(mono);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Memoized monomial coproducts for bulk checks.
#[derive(Default)]
pub struct CoproductCache {
    map: std::collections::HashMap<(Preset, NCMonomial), TensorPoly>,
}

impl CoproductCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, preset: Preset, mono: &NCMonomial) -> &TensorPoly {
        self.map.entry((preset, *mono)).or_insert_with(|| monomial_coproduct(preset, mono))
    }

    /// `(Δ ⊗ id)(t)` and `(id ⊗ Δ)(t)`.
    pub fn iterated(&mut self, t: &TensorPoly) -> (Tensor3, Tensor3) {
        let mut left = Tensor3::new();
        let mut right = Tensor3::new();
        for ((l, r), c) in &t.terms {
            for ((a, b), d) in self.get(t.preset, l).terms() {
                add3(&mut left, (*a, *b, *r), c * d);
            }
            for ((a, b), d) in self.get(t.preset, r).terms() {
                add3(&mut right, (*l, *a, *b), c * d);
            }
        }
        (left, right)
    }
}

fn counit_of(m: &NCMonomial) -> QRat {
    if m.gp == 0 && m.gm == 0 {
        QRat::one()
    } else {
        QRat::zero()
    }
}

/// Coassociativity on all basis monomials up to the given degree.
pub fn check_coassociativity(preset: Preset, max_degree: u32) -> CheckReport {
    let mut rep = CheckReport::new(format!("coassociativity {preset} deg<={max_degree}"));
    let mut cache = CoproductCache::new();
    for mono in monomials_up_to(preset, max_degree) {
        let d = cache.get(preset, &mono).clone();
        let (l, r) = cache.iterated(&d);
        rep.check(l == r, || format!("{mono}"));
    }
    rep
}

/// `(ε ⊗ id)Δ(x) = x = (id ⊗ ε)Δ(x)` on basis monomials.
pub fn check_counit_axiom(preset: Preset, max_degree: u32) -> CheckReport {
    let mut rep = CheckReport::new(format!("counit axiom {preset} deg<={max_degree}"));
    for mono in monomials_up_to(preset, max_degree) {
        let x = NCPoly::monomial(preset, mono).expect("admissible");
        let d = x.coproduct();
        rep.check(d.contract_left(counit_of) == x && d.contract_right(counit_of) == x, || format!("{mono}"));
    }
    rep
}

/// `m(S ⊗ id)Δ(x) = ε(x) 1 = m(id ⊗ S)Δ(x)` on basis monomials.
pub fn check_antipode_axiom(preset: Preset, max_degree: u32) -> CheckReport {
    let mut rep = CheckReport::new(format!("antipode axiom {preset} deg<={max_degree}"));
    if !preset.is_generic() {
        rep.note("no antipode at q = 0; skipped");
        return rep;
    }
    let s = |m: &NCMonomial| monomial_antipode(preset, m);
    let id = |m: &NCMonomial| NCPoly { preset, terms: BTreeMap::from([(*m, QRat::one())]) };
    for mono in monomials_up_to(preset, max_degree) {
        let x = NCPoly::monomial(preset, mono).expect("admissible");
        let d = x.coproduct();
        let e = NCPoly::constant(preset, x.counit());
        rep.check(d.multiply_legs(s, id) == e, || format!("m(S⊗id)Δ({mono})"));
        rep.check(d.multiply_legs(id, s) == e, || format!("m(id⊗S)Δ({mono})"));
    }
    rep
}

/// `Δ(x*) = (* ⊗ *)Δ(x)` on monomials and `Δ(xy) = Δ(x)Δ(y)` on pairs of monomials.
pub fn check_star_homomorphism(preset: Preset, max_degree: u32, pair_degree: u32) -> CheckReport {
    let mut rep = CheckReport::new(format!("coproduct *-homomorphism {preset}"));
    for mono in monomials_up_to(preset, max_degree) {
        let x = NCPoly::monomial(preset, mono).expect("admissible");
        rep.check(x.star().coproduct() == x.coproduct().star(), || format!("star at {mono}"));
    }
    let small = monomials_up_to(preset, pair_degree);
    for m1 in &small {
        for m2 in &small {
            let x = NCPoly::monomial(preset, *m1).expect("admissible");
            let y = NCPoly::monomial(preset, *m2).expect("admissible");
            rep.check((&x * &y).coproduct() == x.coproduct().mul(&y.coproduct()), || format!("product {m1} * {m2}"));
        }
    }
    rep
}

/// `S²(x) = q^{2 deg x} x` on basis monomials.
pub fn check_s_squared(preset: Preset, max_degree: u32) -> CheckReport {
    let mut rep = CheckReport::new(format!("S^2 grading {preset}"));
    if !preset.is_generic() {
        rep.note("no antipode at q = 0; skipped");
        return rep;
    }
    for mono in monomials_up_to(preset, max_degree) {
        let x = NCPoly::monomial(preset, mono).expect("admissible");
        let s2 = x.antipode().and_then(|y| y.antipode()).expect("generic preset");
        rep.check(s2 == x.scale(&QRat::q_pow(2 * mono.degree().0 as i64)), || format!("{mono}"));
    }
    rep
}

/// Conditional expectation onto the even filtration, tagged with the SO preset.
pub fn conditional_expectation(x: &NCPoly) -> Result<NCPoly> {
    let so = x.preset().so_of()?;
    x.filter(|m| m.total_degree() % 2 == 0).with_preset(so)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qr(s: &str) -> QRat {
        s.parse().unwrap()
    }

    fn w(p: Preset, s: &str) -> NCPoly {
        normalize(&parse_word(s).unwrap(), p).unwrap()
    }

    fn mono(p: Preset, s: &str) -> NCPoly {
        NCPoly::monomial(p, s.parse().unwrap()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let p = Preset::SUq2;
        assert_eq!(w(p, "a g"), mono(p, "g a").scale(&QRat::q()));
        let expected = &NCPoly::one(p) - &mono(p, "g gs").scale(&qr("q^2"));
        assert_eq!(w(p, "a as"), expected);
        assert_eq!(w(p, "as a"), &NCPoly::one(p) - &mono(p, "g gs"));
        assert!(w(Preset::U02, "a c").is_zero());
        assert!(w(Preset::U02, "a cs").is_zero());
        assert_eq!(w(Preset::U02, "a as"), NCPoly::one(Preset::U02));
        assert!(normalize(&parse_word("v").unwrap(), Preset::SUq2).is_err());
        assert!(parse_word("x").is_err());
    }

    #[test]
    fn normal_forms_are_fixed_points() {
        for p in Preset::ALL {
            for mo in monomials_up_to(p, 4) {
                let word = mono_word(&mo);
                let n = normalize(&word, p).unwrap();
                assert_eq!(n, NCPoly::monomial(p, mo).unwrap(), "{p} {mo}");
            }
        }
    }

    fn mono_word(m: &NCMonomial) -> Vec<Gen> {
        let mut w = Vec::new();
        w.extend(std::iter::repeat_n(Gen::AStar, m.r as usize));
        w.extend(std::iter::repeat_n(Gen::G, m.gp as usize));
        w.extend(std::iter::repeat_n(Gen::GStar, m.gm as usize));
        w.extend(std::iter::repeat_n(Gen::A, m.s as usize));
        let v = if m.t >= 0 { Gen::V } else { Gen::VStar };
        w.extend(std::iter::repeat_n(v, m.t.unsigned_abs() as usize));
        w
    }

    #[test]
    fn mul_examples() {
        let p = Preset::SUq2;
        let x = mono(p, "as^2 g gs^3");
        assert_eq!(&NCPoly::one(p) * &x, x);
        assert_eq!(&mono(p, "g") * &mono(p, "a"), mono(p, "g a"));
        let u = Preset::U02;
        for n in 0..4 {
            for k in 0..4 {
                let a = w(u, &format!("as^{n} a^{n}"));
                let b = w(u, &format!("as^{k} a^{k}"));
                let mx = n.max(k);
                assert_eq!(&a * &b, w(u, &format!("as^{mx} a^{mx}")));
            }
        }
        assert!(mul(&mono(Preset::SUq2, "a"), &mono(Preset::Uq2, "a")).is_err());
    }

    #[test]
    fn star_examples() {
        let p = Preset::SUq2;
        assert_eq!(mono(p, "a").star(), mono(p, "as"));
        assert_eq!(mono(p, "g").scale(&QRat::q()).star(), mono(p, "gs").scale(&QRat::q()));
        assert_eq!(w(p, "g a").star(), w(p, "as gs"));
    }

    #[test]
    fn coproduct_examples() {
        let p = Preset::SUq2;
        let d = coproduct(&mono(p, "g"));
        let mut e = TensorPoly::zero(p);
        e.add_term("g".parse().unwrap(), "a".parse().unwrap(), QRat::one());
        e.add_term("as".parse().unwrap(), "g".parse().unwrap(), QRat::one());
        assert_eq!(d, e);
        let one = coproduct(&NCPoly::one(p));
        assert_eq!(one, TensorPoly::elementary(p, NCMonomial::one(), NCMonomial::one(), QRat::one()));
        // closed form at q = 0
        let u = Preset::U02;
        for (r, k, s, l) in [(0, 2, 0, 0), (1, 3, 2, -1), (2, 1, 1, 3)] {
            let x = NCMonomial::new(r, k, 0, s, l);
            let mut e = TensorPoly::zero(u);
            for kap in 0..=k {
                e.add_term(NCMonomial::new(r + k - kap, kap, 0, s, l), NCMonomial::new(r, k - kap, 0, s + kap, l), QRat::one());
            }
            assert_eq!(monomial_coproduct(u, &x), e, "{x}");
        }
    }

    #[test]
    fn counit_examples() {
        let p = Preset::SUq2;
        assert!(counit(&mono(p, "a").try_mul(&mono(p, "gs")).unwrap()).is_zero());
        assert_eq!(counit(&w(p, "as^2 a^2")), QRat::one());
        assert_eq!(counit(&mono(Preset::Uq2, "v^-3")), QRat::one());
    }

    #[test]
    fn antipode_examples() {
        let p = Preset::SUq2;
        let g = mono(p, "g");
        assert_eq!(antipode(&g).unwrap(), g.scale(&-QRat::q()));
        assert_eq!(antipode(&antipode(&g).unwrap()).unwrap(), g.scale(&qr("q^2")));
        let c = mono(Preset::Uq2, "g");
        assert_eq!(antipode(&c).unwrap(), mono(Preset::Uq2, "g v^-1").scale(&-QRat::q()));
        assert!(matches!(antipode(&mono(Preset::SU02, "g")), Err(Error::Unsupported(_))));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree(&"g^2 gs".parse().unwrap()), (1, 0));
        assert_eq!(degree(&"as a".parse().unwrap()), (0, 0));
        assert_eq!(degree(&"as g".parse().unwrap()), (1, 0));
    }

    #[test]
    fn so_guard() {
        assert!(NCPoly::monomial(Preset::SOq3, "a".parse().unwrap()).is_err());
        assert!(NCPoly::monomial(Preset::SOq3, "as g".parse().unwrap()).is_ok());
        assert!(normalize(&parse_word("a").unwrap(), Preset::SOq3).is_err());
    }

    #[test]
    fn monomial_text_round_trip() {
        for s in ["1", "as^2 g^1", "g^1 gs^3 a^2 v^-1"] {
            let m: NCMonomial = s.parse().unwrap();
            assert_eq!(m.to_string().parse::<NCMonomial>().unwrap(), m);
        }
        assert!("a as".parse::<NCMonomial>().is_err());
    }
}
