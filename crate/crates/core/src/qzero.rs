//! The `q = 0` compact quantum semigroups U_0(2), SU_0(2) and SO_0(3).
//!
//! States are evaluation rules on normal monomials `(a*)^r c^k a^s v^l` (with
//! `c^{-k} = (c*)^k`); idempotency is checked by direct tensor expansion of the
//! coproduct. The classical shadow is the semigroup `M = U(1) × (Z_+ ∪ {∞})` with
//! `(z1, n1)(z2, n2) = (z1 z2, min(n1, n2))`, embedded through
//! `Θ^k_n ↦ (a*)^n a^n v^k`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{monomial_coproduct, NCMonomial, NCPoly, Preset};
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::scalar::QRat;
use crate::states::Lattice;

/// Fourier window used by [`pullback`].
pub const FOURIER_WINDOW: i64 = 12;
/// Levels `n <= PULLBACK_LEVELS` are resolved by [`pullback`]; deeper mass is merged into `∞`.
pub const PULLBACK_LEVELS: u32 = 8;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn reduce_angle(a: Rational64) -> Rational64 {
    a - a.floor()
}

/// Closed subgroups of `U(1)`, each carrying its Haar measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CircleKind {
    /// The cyclic group `Z_m` of `m`-th roots of unity, `m >= 1`.
    Cyclic(u32),
    Full,
}

impl CircleKind {
    pub fn haar(self) -> CircleMeasure {
        match self {
            CircleKind::Cyclic(m) => CircleMeasure::cyclic(m).expect("m >= 1"),
            CircleKind::Full => CircleMeasure::full(),
        }
    }

    /// `∫ z^k` against the Haar measure.
    pub fn fourier(self, k: i64) -> bool {
        match self {
            CircleKind::Cyclic(m) => k % m as i64 == 0,
            CircleKind::Full => k == 0,
        }
    }
}

impl fmt::Display for CircleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircleKind::Cyclic(m) => write!(f, "Z_{m}"),
            CircleKind::Full => f.write_str("U(1)"),
        }
    }
}

/// Finite positive measure on `U(1)`: a multiple of the Haar measure plus point
/// masses at rational angles `θ ∈ [0, 1)` (the point `e^{2πiθ}`).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CircleMeasure {
    haar: BigRational,
    atoms: BTreeMap<Rational64, BigRational>,
}

impl CircleMeasure {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn full() -> Self {
        CircleMeasure { haar: BigRational::one(), atoms: BTreeMap::new() }
    }

    pub fn point(angle: Rational64) -> Self {
        let mut atoms = BTreeMap::new();
        atoms.insert(reduce_angle(angle), BigRational::one());
        CircleMeasure { haar: BigRational::zero(), atoms }
    }

    /// Uniform probability on the `m`-th roots of unity.
    pub fn cyclic(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Argument("Z_m needs m >= 1".into()));
        }
        let atoms = (0..m as i64).map(|j| (Rational64::new(j, m as i64), rat(1, m as i64))).collect();
        Ok(CircleMeasure { haar: BigRational::zero(), atoms })
    }

    /// Builds a measure from its parts; masses must be nonnegative.
    pub fn from_parts(haar: BigRational, atoms: impl IntoIterator<Item = (Rational64, BigRational)>) -> Result<Self> {
        if haar.is_negative() {
            return Err(Error::Argument("negative Haar mass".into()));
        }
        let mut out = CircleMeasure { haar, atoms: BTreeMap::new() };
        for (a, w) in atoms {
            if w.is_negative() {
                return Err(Error::Argument(format!("negative mass at angle {a}")));
            }
            *out.atoms.entry(reduce_angle(a)).or_default() += w;
        }
        out.atoms.retain(|_, w| !w.is_zero());
        Ok(out)
    }

    pub fn haar_part(&self) -> &BigRational {
        &self.haar
    }

    pub fn atoms(&self) -> &BTreeMap<Rational64, BigRational> {
        &self.atoms
    }

    pub fn mass(&self) -> BigRational {
        self.atoms.values().fold(self.haar.clone(), |a, w| a + w)
    }

    pub fn is_zero(&self) -> bool {
        self.haar.is_zero() && self.atoms.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> CircleMeasure {
        if c.is_zero() {
            return CircleMeasure::zero();
        }
        CircleMeasure { haar: &self.haar * c, atoms: self.atoms.iter().map(|(a, w)| (*a, w * c)).collect() }
    }

    pub fn add(&self, other: &CircleMeasure) -> CircleMeasure {
        let mut out = self.clone();
        out.haar += &other.haar;
        for (a, w) in &other.atoms {
            *out.atoms.entry(*a).or_default() += w;
        }
        out.atoms.retain(|_, w| !w.is_zero());
        out
    }

    /// Convolution on `U(1)`; the Haar part absorbs everything it touches.
    pub fn convolve(&self, other: &CircleMeasure) -> CircleMeasure {
        let (ma, mb) = (self.mass() - &self.haar, other.mass() - &other.haar);
        let haar = &self.haar * &other.haar + &self.haar * &mb + &other.haar * &ma;
        let mut atoms: BTreeMap<Rational64, BigRational> = BTreeMap::new();
        for (x, wx) in &self.atoms {
            for (y, wy) in &other.atoms {
                *atoms.entry(reduce_angle(x + y)).or_default() += wx * wy;
            }
        }
        atoms.retain(|_, w| !w.is_zero());
        CircleMeasure { haar, atoms }
    }

    /// `∫ z^k dρ`.
    pub fn fourier(&self, k: i64) -> Complex64 {
        let mut acc = if k == 0 { Complex64::new(self.haar.to_f64().unwrap_or(f64::NAN), 0.0) } else { Complex64::zero() };
        for (a, w) in &self.atoms {
            let frac = reduce_angle(*a * Rational64::from_integer(k));
            let theta = 2.0 * std::f64::consts::PI * (*frac.numer() as f64 / *frac.denom() as f64);
            acc += Complex64::from_polar(w.to_f64().unwrap_or(f64::NAN), theta);
        }
        acc
    }

    /// If the measure is `c` times the Haar measure of a closed subgroup, returns both.
    pub fn as_scaled_haar(&self) -> Option<(CircleKind, BigRational)> {
        if self.is_zero() {
            return None;
        }
        if self.atoms.is_empty() {
            return Some((CircleKind::Full, self.haar.clone()));
        }
        if !self.haar.is_zero() {
            return None;
        }
        let m = self.atoms.len() as i64;
        let w = self.atoms.values().next()?.clone();
        let ok = self.atoms.iter().all(|(a, x)| *x == w && (*a * Rational64::from_integer(m)).is_integer());
        ok.then(|| (CircleKind::Cyclic(m as u32), w * BigRational::from_integer(m.into())))
    }

    /// The subgroup whose Haar measure this is, if any; these are exactly the
    /// idempotent probabilities on `U(1)`.
    pub fn idempotent_kind(&self) -> Option<CircleKind> {
        match self.as_scaled_haar() {
            Some((k, c)) if c.is_one() => Some(k),
            _ => None,
        }
    }
}

/// Second coordinate of `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Fin(u32),
    Inf,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Fin(n) => write!(f, "{n}"),
            Level::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Level> {
        match s.trim() {
            "inf" | "∞" => Ok(Level::Inf),
            t => t.parse().map(Level::Fin).map_err(|_| Error::Parse(format!("bad level {s:?}"))),
        }
    }
}

/// Probability measure `Σ_n ρ_n ⊗ δ_n` on `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MMeasure {
    atoms: BTreeMap<Level, CircleMeasure>,
}

impl MMeasure {
    /// Validates total mass 1; zero components are dropped.
    pub fn new(atoms: impl IntoIterator<Item = (Level, CircleMeasure)>) -> Result<Self> {
        let mut map: BTreeMap<Level, CircleMeasure> = BTreeMap::new();
        for (l, c) in atoms {
            let e = map.entry(l).or_default();
            *e = e.add(&c);
        }
        map.retain(|_, c| !c.is_zero());
        let total = map.values().fold(BigRational::zero(), |a, c| a + c.mass());
        if !total.is_one() {
            return Err(Error::Argument(format!("total mass is {total}, not 1")));
        }
        Ok(MMeasure { atoms: map })
    }

    /// `ρ ⊗ δ_n` for a probability `ρ`.
    pub fn product(rho: CircleMeasure, level: Level) -> Result<Self> {
        MMeasure::new([(level, rho)])
    }

    /// Point mass at the unit `(1, ∞)`.
    pub fn identity() -> Self {
        MMeasure::product(CircleMeasure::point(Rational64::zero()), Level::Inf).expect("unit mass")
    }

    /// Convex combination `Σ c_i μ_i`.
    pub fn mix(parts: &[(BigRational, MMeasure)]) -> Result<Self> {
        let mut atoms = Vec::new();
        for (c, mu) in parts {
            if c.is_negative() {
                return Err(Error::Argument("negative mixture weight".into()));
            }
            atoms.extend(mu.atoms.iter().map(|(l, r)| (*l, r.scale(c))));
        }
        MMeasure::new(atoms)
    }

    pub fn atoms(&self) -> &BTreeMap<Level, CircleMeasure> {
        &self.atoms
    }

    /// `∫ Θ^k_n dμ = Σ_{m >= n} ρ̂_m(k)`.
    pub fn integrate_theta(&self, k: i64, n: u32) -> Complex64 {
        self.atoms.range(Level::Fin(n)..).map(|(_, c)| c.fourier(k)).sum()
    }

    pub fn to_json(&self) -> MMeasureJson {
        MMeasureJson { atoms: self.atoms.iter().map(|(l, c)| AtomJson { level: l.to_string(), circle: CircleJson::from(c) }).collect() }
    }

    pub fn from_json(j: &MMeasureJson) -> Result<Self> {
        let mut atoms = Vec::new();
        for a in &j.atoms {
            atoms.push((a.level.parse()?, a.circle.to_measure()?));
        }
        MMeasure::new(atoms)
    }
}

impl fmt::Display for MMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .atoms
            .iter()
            .map(|(l, c)| match c.as_scaled_haar() {
                Some((k, w)) => format!("{w}·h_{k}⊗δ_{l}"),
                None => {
                    let mut terms: Vec<String> = c.atoms.iter().map(|(a, w)| format!("{w}·δ_{a}")).collect();
                    if !c.haar.is_zero() {
                        terms.insert(0, format!("{}·h_U(1)", c.haar));
                    }
                    format!("({})⊗δ_{l}", terms.join("+"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MMeasureJson {
    pub atoms: Vec<AtomJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomJson {
    pub level: String,
    pub circle: CircleJson,
}

/// Circle component; rationals are written as `"n/d"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CircleJson {
    Full { mass: String },
    Cyclic { m: u32, mass: String },
    Mixture { haar: String, points: Vec<PointJson> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub angle: String,
    pub mass: String,
}

fn parse_big(s: &str) -> Result<BigRational> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

impl From<&CircleMeasure> for CircleJson {
    fn from(c: &CircleMeasure) -> Self {
        match c.as_scaled_haar() {
            Some((CircleKind::Full, w)) => CircleJson::Full { mass: w.to_string() },
            Some((CircleKind::Cyclic(m), w)) => CircleJson::Cyclic { m, mass: w.to_string() },
            None => CircleJson::Mixture {
                haar: c.haar.to_string(),
                points: c.atoms.iter().map(|(a, w)| PointJson { angle: a.to_string(), mass: w.to_string() }).collect(),
            },
        }
    }
}

impl CircleJson {
    pub fn to_measure(&self) -> Result<CircleMeasure> {
        let m = match self {
            CircleJson::Full { mass } => CircleMeasure::full().scale(&parse_big(mass)?),
            CircleJson::Cyclic { m, mass } => CircleMeasure::cyclic(*m)?.scale(&parse_big(mass)?),
            CircleJson::Mixture { haar, points } => {
                let mut atoms = Vec::new();
                for p in points {
                    let a: Rational64 = p.angle.trim().parse().map_err(|_| Error::Parse(format!("bad angle {:?}", p.angle)))?;
                    atoms.push((a, parse_big(&p.mass)?));
                }
                CircleMeasure::from_parts(parse_big(haar)?, atoms)?
            }
        };
        if m.haar.is_negative() || m.atoms.values().any(|w| w.is_negative()) {
            return Err(Error::Argument("negative mass".into()));
        }
        Ok(m)
    }
}

/// Convolution on `M`: circle parts convolve, levels combine by `min`.
pub fn m_convolve(mu: &MMeasure, nu: &MMeasure) -> MMeasure {
    let mut atoms: BTreeMap<Level, CircleMeasure> = BTreeMap::new();
    for (l1, c1) in &mu.atoms {
        for (l2, c2) in &nu.atoms {
            let e = atoms.entry(*l1.min(l2)).or_default();
            *e = e.add(&c1.convolve(c2));
        }
    }
    atoms.retain(|_, c| !c.is_zero());
    MMeasure { atoms }
}

/// Direct test of `μ ⋆ μ = μ`.
pub fn m_is_idempotent_direct(mu: &MMeasure) -> bool {
    m_convolve(mu, mu) == *mu
}

/// Structural test: `μ` is idempotent iff `μ = ρ ⊗ δ_n` with `ρ` the Haar measure of
/// a closed subgroup of `U(1)`. Returns that canonical pair.
pub fn m_is_idempotent(mu: &MMeasure) -> Option<(CircleKind, Level)> {
    if mu.atoms.len() != 1 {
        return None;
    }
    let (l, c) = mu.atoms.iter().next()?;
    c.idempotent_kind().map(|k| (k, *l))
}

/// `E^k_n = (a*)^n a^n v^k` in U_0(2).
pub fn embed_theta(k: i32, n: u32) -> NCPoly {
    NCPoly::monomial(Preset::U02, NCMonomial::new(n, 0, 0, n, k)).expect("normal at q = 0")
}

/// Idempotent states of the `q = 0` catalogs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Q0Id {
    Counit,
    /// `Ψ_{0,∞}`: invariant under convolution but not faithful.
    InvariantState,
    /// Haar measure of a closed subgroup of `T^2` (U_0(2)).
    Torus(Lattice),
    /// `Ψ_{n,m} = ψ_n ⊗ φ_m`, `m = None` meaning `∞` (U_0(2)).
    PsiTensor { n: u32, m: Option<u32> },
    /// Haar state of `Z_n`, or of `U(1)` for `None` (SU_0(2), SO_0(3)).
    Phi(Option<u32>),
    /// `ψ_n((a*)^r c^k a^s) = 1` iff `k = 0` and `r = s <= n` (SU_0(2), SO_0(3)).
    Psi(u32),
}

fn fmt_inf(m: Option<u32>) -> String {
    m.map_or("inf".to_string(), |m| m.to_string())
}

fn parse_inf(s: &str) -> Result<Option<u32>> {
    match s.trim() {
        "inf" | "∞" => Ok(None),
        t => t.parse().map(Some).map_err(|_| Error::Parse(format!("bad parameter {s:?}"))),
    }
}

impl fmt::Display for Q0Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q0Id::Counit => f.write_str("counit"),
            Q0Id::InvariantState => f.write_str("invariant-state"),
            Q0Id::Torus(l) => write!(f, "torus:{l}"),
            Q0Id::PsiTensor { n, m } => write!(f, "psi-tensor:{n}:{}", fmt_inf(*m)),
            Q0Id::Phi(m) => write!(f, "phi:{}", fmt_inf(*m)),
            Q0Id::Psi(n) => write!(f, "psi:{n}"),
        }
    }
}

impl FromStr for Q0Id {
    type Err = Error;
    fn from_str(s: &str) -> Result<Q0Id> {
        let s = s.trim();
        let (head, rest) = s.split_once(':').unwrap_or((s, ""));
        let id = match head.to_ascii_lowercase().as_str() {
            "counit" => Q0Id::Counit,
            "invariant-state" => Q0Id::InvariantState,
            "torus" => Q0Id::Torus(rest.parse()?),
            "psi-tensor" => {
                let (n, m) = rest.split_once(':').ok_or_else(|| Error::Parse(format!("expected psi-tensor:n:m, got {s:?}")))?;
                let n = n.trim().parse().map_err(|_| Error::Parse(format!("bad n in {s:?}")))?;
                Q0Id::PsiTensor { n, m: parse_inf(m)? }
            }
            "phi" => Q0Id::Phi(parse_inf(rest)?),
            "psi" => Q0Id::Psi(rest.trim().parse().map_err(|_| Error::Parse(format!("bad n in {s:?}")))?),
            _ => return Err(Error::Parse(format!("unknown q = 0 state id {s:?}"))),
        };
        Ok(id)
    }
}

impl Q0Id {
    pub fn available(&self, preset: Preset) -> bool {
        match self {
            Q0Id::Counit => !preset.is_generic(),
            Q0Id::InvariantState | Q0Id::Torus(_) | Q0Id::PsiTensor { .. } => preset == Preset::U02,
            Q0Id::Phi(_) | Q0Id::Psi(_) => matches!(preset, Preset::SU02 | Preset::SO03),
        }
    }

    pub fn description(&self) -> String {
        match self {
            Q0Id::Counit => "counit".into(),
            Q0Id::InvariantState => "Ψ_{0,∞}, invariant under convolution but not faithful".into(),
            Q0Id::Torus(l) => format!("Haar state of the torus subgroup with annihilator {l}"),
            Q0Id::PsiTensor { n, m } => format!("ψ_{n} ⊗ φ_{}", fmt_inf(*m)),
            Q0Id::Phi(None) => "Haar state of the subgroup U(1)".into(),
            Q0Id::Phi(Some(n)) => format!("Haar state of the subgroup Z_{n} of U(1)"),
            Q0Id::Psi(n) => format!("ψ_{n}: 1 on (a*)^r a^r for r <= {n}, 0 elsewhere"),
        }
    }

    /// Canonical `(ρ, n)` of the pulled-back measure `φ ∘ j` on `M`.
    pub fn expected_pullback(&self) -> (CircleKind, Level) {
        match self {
            Q0Id::Counit | Q0Id::Phi(_) => (CircleKind::Cyclic(1), Level::Inf),
            Q0Id::InvariantState => (CircleKind::Full, Level::Fin(0)),
            Q0Id::Torus(l) => {
                let d = (1..=FOURIER_WINDOW).find(|&k| l.contains(0, k));
                (d.map_or(CircleKind::Full, |d| CircleKind::Cyclic(d as u32)), Level::Inf)
            }
            Q0Id::PsiTensor { n, m } => (m.map_or(CircleKind::Full, CircleKind::Cyclic), Level::Fin(*n)),
            Q0Id::Psi(n) => (CircleKind::Cyclic(1), Level::Fin(*n)),
        }
    }

    fn value(&self, m: &NCMonomial) -> bool {
        let k0 = m.gp == 0 && m.gm == 0;
        let circle = |g: Option<u32>, e: i64| g.map_or(e == 0, |g| e % g as i64 == 0);
        match self {
            Q0Id::Counit => k0,
            Q0Id::InvariantState => k0 && m.r == 0 && m.s == 0 && m.t == 0,
            Q0Id::Torus(l) => k0 && l.contains(m.s as i64 - m.r as i64, m.t as i64),
            Q0Id::PsiTensor { n, m: g } => k0 && m.r == m.s && m.r <= *n && circle(*g, m.t as i64),
            Q0Id::Phi(g) => k0 && circle(*g, m.s as i64 - m.r as i64),
            Q0Id::Psi(n) => k0 && m.r == m.s && m.r <= *n,
        }
    }
}

/// Representative catalog for a `q = 0` preset.
pub fn q0_catalog(preset: Preset) -> Vec<Q0Id> {
    let lat = |s: &str| s.parse::<Lattice>().expect("literal lattice");
    match preset {
        Preset::U02 => vec![
            Q0Id::Counit,
            Q0Id::InvariantState,
            Q0Id::Torus(lat("full")),
            Q0Id::Torus(lat("1,0")),
            Q0Id::Torus(lat("0,1")),
            Q0Id::Torus(lat("1,-1")),
            Q0Id::Torus(lat("2,0;0,3")),
            Q0Id::PsiTensor { n: 0, m: Some(2) },
            Q0Id::PsiTensor { n: 1, m: Some(1) },
            Q0Id::PsiTensor { n: 2, m: Some(3) },
            Q0Id::PsiTensor { n: 2, m: None },
        ],
        Preset::SU02 | Preset::SO03 => {
            let mut v = vec![Q0Id::Counit];
            v.extend((2..=6).map(|n| Q0Id::Phi(Some(n))));
            v.push(Q0Id::Phi(None));
            v.extend((0..=3).map(Q0Id::Psi));
            v
        }
        _ => Vec::new(),
    }
}

/// Evaluation rule of a `q = 0` state on normal monomials.
#[derive(Clone)]
pub enum Q0Rule {
    Catalog(Q0Id),
    /// Finitely supported values; unlisted monomials evaluate to 0.
    Table(BTreeMap<NCMonomial, QRat>),
    Custom { label: String, rule: Arc<dyn Fn(&NCMonomial) -> QRat + Send + Sync> },
}

impl fmt::Debug for Q0Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q0Rule::Catalog(id) => write!(f, "Catalog({id})"),
            Q0Rule::Table(t) => write!(f, "Table({} entries)", t.len()),
            Q0Rule::Custom { label, .. } => write!(f, "Custom({label})"),
        }
    }
}

/// A functional on a `q = 0` preset given monomial by monomial.
#[derive(Clone, Debug)]
pub struct Q0State {
    preset: Preset,
    rule: Q0Rule,
}

impl Q0State {
    pub fn new(preset: Preset, rule: Q0Rule) -> Result<Self> {
        if preset.is_generic() {
            return Err(Error::Argument(format!("{preset} is not a q = 0 preset")));
        }
        if let Q0Rule::Catalog(id) = &rule {
            check_params(id, preset)?;
        }
        Ok(Q0State { preset, rule })
    }

    pub fn custom(preset: Preset, label: impl Into<String>, rule: impl Fn(&NCMonomial) -> QRat + Send + Sync + 'static) -> Result<Self> {
        Q0State::new(preset, Q0Rule::Custom { label: label.into(), rule: Arc::new(rule) })
    }

    pub fn preset(&self) -> Preset {
        self.preset
    }

    pub fn rule(&self) -> &Q0Rule {
        &self.rule
    }

    pub fn catalog_id(&self) -> Option<Q0Id> {
        match &self.rule {
            Q0Rule::Catalog(id) => Some(*id),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match &self.rule {
            Q0Rule::Catalog(id) => id.to_string(),
            Q0Rule::Table(_) => "table".into(),
            Q0Rule::Custom { label, .. } => label.clone(),
        }
    }

    /// Value on a single normal monomial.
    pub fn value(&self, m: &NCMonomial) -> QRat {
        match &self.rule {
            Q0Rule::Catalog(id) => {
                if id.value(m) {
                    QRat::one()
                } else {
                    QRat::zero()
                }
            }
            Q0Rule::Table(t) => t.get(m).cloned().unwrap_or_else(QRat::zero),
            Q0Rule::Custom { rule, .. } => rule(m),
        }
    }

    pub fn evaluate(&self, x: &NCPoly) -> Result<QRat> {
        let p = x.preset();
        let compatible = p == self.preset || (self.preset == Preset::SO03 && p == Preset::SU02);
        if !compatible {
            return Err(Error::Argument(format!("state on {} cannot evaluate an element of {p}", self.preset)));
        }
        let mut acc = QRat::zero();
        for (m, c) in x.terms() {
            acc += &(c * &self.value(m));
        }
        Ok(acc)
    }

    /// Values on the bounded monomial set, as JSON.
    pub fn to_json(&self, bounds: Bounds) -> Q0StateJson {
        let values = q0_monomials(self.preset, bounds)
            .into_iter()
            .filter_map(|m| {
                let v = self.value(&m);
                (!v.is_zero()).then(|| Q0ValueJson { monomial: m.to_string(), value: v })
            })
            .collect();
        Q0StateJson { preset: self.preset.name().to_string(), catalog: self.catalog_id().map(|i| i.to_string()), bounds: bounds.to_string(), values }
    }

    /// Catalog ids are restored as catalog states, anything else as a table.
    pub fn from_json(j: &Q0StateJson) -> Result<Self> {
        let preset: Preset = j.preset.parse()?;
        if let Some(id) = &j.catalog {
            return q0_state_catalog(id.parse()?, preset);
        }
        let mut t = BTreeMap::new();
        for v in &j.values {
            let m: NCMonomial = v.monomial.parse()?;
            if !preset.admits(&m) {
                return Err(Error::Argument(format!("monomial {m} is not normal in {preset}")));
            }
            t.insert(m, v.value.clone());
        }
        Q0State::new(preset, Q0Rule::Table(t))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Q0StateJson {
    pub preset: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
    pub bounds: String,
    pub values: Vec<Q0ValueJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Q0ValueJson {
    pub monomial: String,
    pub value: QRat,
}

fn check_params(id: &Q0Id, preset: Preset) -> Result<()> {
    if !id.available(preset) {
        return Err(Error::Argument(format!("{id} is not available on {preset}")));
    }
    let bad = match id {
        Q0Id::PsiTensor { m: Some(0), .. } | Q0Id::Phi(Some(0)) => true,
        _ => false,
    };
    if bad {
        return Err(Error::Argument(format!("{id}: cyclic order must be >= 1")));
    }
    Ok(())
}

/// Builds a catalog state, checking that it exists on the preset.
pub fn q0_state_catalog(id: Q0Id, preset: Preset) -> Result<Q0State> {
    Q0State::new(preset, Q0Rule::Catalog(id))
}

/// Exponent box `r <= R`, `|k| <= K`, `s <= S`, `|l| <= L` for monomial sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub r: u32,
    pub k: u32,
    pub s: u32,
    pub l: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { r: 4, k: 3, s: 4, l: 4 }
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.r, self.k, self.s, self.l)
    }
}

impl FromStr for Bounds {
    type Err = Error;
    fn from_str(s: &str) -> Result<Bounds> {
        let v: Vec<u32> = s.split(',').map(|t| t.trim().parse::<u32>()).collect::<std::result::Result<_, _>>().map_err(|_| Error::Parse(format!("bad bounds {s:?}")))?;
        match v[..] {
            [r, k, s, l] => Ok(Bounds { r, k, s, l }),
            _ => Err(Error::Parse(format!("bounds need four values R,K,S,L, got {s:?}"))),
        }
    }
}

/// Normal monomials of a `q = 0` preset inside the bounds.
pub fn q0_monomials(preset: Preset, b: Bounds) -> Vec<NCMonomial> {
    let lmax = if preset.has_v() { b.l as i32 } else { 0 };
    let mut out = Vec::new();
    for r in 0..=b.r {
        for k in -(b.k as i32)..=b.k as i32 {
            let (gp, gm) = if k >= 0 { (k as u32, 0) } else { (0, (-k) as u32) };
            for s in 0..=b.s {
                for t in -lmax..=lmax {
                    let m = NCMonomial::new(r, gp, gm, s, t);
                    if preset.admits(&m) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

fn coproduct_preset(p: Preset) -> Preset {
    if p == Preset::SO03 {
        Preset::SU02
    } else {
        p
    }
}

/// `(φ ⊗ φ)(Δx) = φ(x)` on every monomial inside the bounds.
pub fn q0_is_idempotent(phi: &Q0State, bounds: Bounds) -> CheckReport {
    let mut rep = CheckReport::new(format!("q=0 idempotency of {} on {}", phi.label(), phi.preset));
    let cp = coproduct_preset(phi.preset);
    let monos = q0_monomials(phi.preset, bounds);
    for m in &monos {
        let d = monomial_coproduct(cp, m);
        let lhs = d.pair(|x| Ok(phi.value(x)), |y| Ok(phi.value(y))).expect("infallible");
        let rhs = phi.value(m);
        rep.check(lhs == rhs, || format!("{m}: (φ⊗φ)Δ = {lhs}, φ = {rhs}"));
    }
    rep.note(format!("{} monomials, bounds {bounds}", monos.len()));
    rep
}

/// `φ(x*) = φ(x)` (values are real) and `φ(1) = 1`.
pub fn q0_check_hermitian(phi: &Q0State, bounds: Bounds) -> CheckReport {
    let mut rep = CheckReport::new(format!("hermitian {}", phi.label()));
    rep.check(phi.value(&NCMonomial::one()).is_one(), || "φ(1) ≠ 1".into());
    for m in q0_monomials(phi.preset, bounds) {
        let (a, b) = (phi.value(&m), phi.value(&m.star()));
        rep.check(a == b, || format!("{m}: φ(x) = {a}, φ(x*) = {b}"));
    }
    rep
}

/// Checks `Ψ ⋆ f = f ⋆ Ψ = f(1) Ψ` on the bounded monomial set.
pub fn q0_invariance_check(psi: &Q0State, f: &Q0State, bounds: Bounds) -> Result<CheckReport> {
    if psi.preset != f.preset {
        return Err(Error::Argument("invariance check needs functionals on the same preset".into()));
    }
    let mut rep = CheckReport::new(format!("invariance of {} against {}", psi.label(), f.label()));
    let cp = coproduct_preset(psi.preset);
    let f1 = f.value(&NCMonomial::one());
    for m in q0_monomials(psi.preset, bounds) {
        let d = monomial_coproduct(cp, &m);
        let rhs = &f1 * &psi.value(&m);
        let left = d.pair(|x| Ok(psi.value(x)), |y| Ok(f.value(y))).expect("infallible");
        let right = d.pair(|x| Ok(f.value(x)), |y| Ok(psi.value(y))).expect("infallible");
        rep.check(left == rhs, || format!("{m}: (Ψ⋆f) = {left}, f(1)Ψ = {rhs}"));
        rep.check(right == rhs, || format!("{m}: (f⋆Ψ) = {right}, f(1)Ψ = {rhs}"));
    }
    Ok(rep)
}

/// For each sample `x` with `φ(x*x) = 0` checks `φ(xx*) = 0`.
pub fn q0_null_space_symmetry(phi: &Q0State, sample: &[NCPoly]) -> Result<CheckReport> {
    let mut rep = CheckReport::new(format!("null space symmetry of {}", phi.label()));
    for x in sample {
        let a = phi.evaluate(&x.star().try_mul(x)?)?;
        if a.is_zero() {
            let b = phi.evaluate(&x.try_mul(&x.star())?)?;
            rep.check(b.is_zero(), || format!("x = {x}: φ(x*x) = 0, φ(xx*) = {b}"));
        }
    }
    Ok(rep)
}

/// `φ` and `ψ` agree on every monomial of `φ`'s preset inside the bounds.
pub fn q0_states_agree(phi: &Q0State, psi: &Q0State, bounds: Bounds) -> bool {
    q0_monomials(phi.preset, bounds).iter().all(|m| phi.value(m) == psi.value(m))
}

/// Restriction of an SU_0(2) state to SO_0(3).
pub fn q0_restrict_to_so3(phi: &Q0State) -> Result<Q0State> {
    if phi.preset != Preset::SU02 {
        return Err(Error::Argument(format!("restriction to SO_0(3) needs an SU_0(2) state, got {}", phi.preset)));
    }
    Ok(Q0State { preset: Preset::SO03, rule: phi.rule.clone() })
}

/// Smallest eigenvalue of the Gram matrix `G_ij = φ(x_i* x_j)`; negative values
/// certify that `φ` is not positive.
pub fn q0_gram_min_eigenvalue(phi: &Q0State, sample: &[NCPoly]) -> Result<f64> {
    let n = sample.len();
    let mut g = nalgebra::DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let xs = sample[i].star();
        for j in 0..n {
            let v = as_rational(&phi.evaluate(&xs.try_mul(&sample[j])?)?)?;
            g[(i, j)] = v.to_f64().unwrap_or(f64::NAN);
        }
    }
    let sym = (&g + g.transpose()) * 0.5;
    Ok(sym.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min))
}

fn as_rational(x: &QRat) -> Result<BigRational> {
    x.as_constant().ok_or_else(|| Error::Precondition(format!("state value {x} is not a rational number")))
}

/// Recovers `ρ` from exact Fourier data `c(k)`, `0 <= k <= K`, as
/// `Σ_m β_m h_{Z_m} + β_∞ h_{U(1)}` by sieving over divisors.
fn circle_from_fourier(c: &[BigRational]) -> Result<CircleMeasure> {
    let kmax = c.len() - 1;
    let mut beta = vec![BigRational::zero(); kmax + 1];
    for k in 1..=kmax {
        let lower: BigRational = (1..k).filter(|d| k % d == 0).map(|d| beta[d].clone()).sum();
        beta[k] = &c[k] - lower;
    }
    let cyclic_mass: BigRational = beta.iter().skip(1).cloned().sum();
    let full = &c[0] - cyclic_mass;
    let mut out = CircleMeasure::full().scale(&full);
    for (m, b) in beta.iter().enumerate().skip(1) {
        if !b.is_zero() {
            out = out.add(&CircleMeasure::cyclic(m as u32)?.scale(b));
        }
    }
    if full.is_negative() || beta.iter().any(|b| b.is_negative()) {
        return Err(Error::Precondition("Fourier data on the window is not a positive combination of subgroup Haar measures".into()));
    }
    Ok(out)
}

/// The measure on `M` induced by `φ ∘ j`, recovered from the values
/// `φ((a*)^n a^n v^k)` for `n <= PULLBACK_LEVELS + 1` and `|k| <= FOURIER_WINDOW`.
/// Mass at deeper levels is reported at `∞`. For SU_0(2) and SO_0(3) only `k = 0`
/// is available and the circle part is trivial.
pub fn pullback(phi: &Q0State) -> Result<MMeasure> {
    let has_v = phi.preset.has_v();
    let kmax = if has_v { FOURIER_WINDOW } else { 0 };
    let value = |k: i64, n: u32| -> Result<BigRational> {
        let m = NCMonomial::new(n, 0, 0, n, k as i32);
        let (a, b) = (as_rational(&phi.value(&m))?, as_rational(&phi.value(&m.star()))?);
        if a != b {
            return Err(Error::Precondition(format!("φ({m}) ≠ φ({})", m.star())));
        }
        Ok(a)
    };
    let column = |n: u32| -> Result<Vec<BigRational>> { (0..=kmax).map(|k| value(k, n)).collect() };
    let mut atoms = Vec::new();
    let mut cur = column(0)?;
    for n in 0..=PULLBACK_LEVELS {
        let next = column(n + 1)?;
        let diff: Vec<BigRational> = cur.iter().zip(&next).map(|(a, b)| a - b).collect();
        atoms.push((Level::Fin(n), circle_from_fourier(&diff)?));
        cur = next;
    }
    atoms.push((Level::Inf, circle_from_fourier(&cur)?));
    if !has_v {
        for (_, c) in atoms.iter_mut() {
            *c = CircleMeasure::point(Rational64::zero()).scale(&c.mass());
        }
    }
    MMeasure::new(atoms)
}
