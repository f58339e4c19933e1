//! States on the generic-`q` presets as tables of transfer matrices.
//!
//! For spin `s` and v-offset `p` the block `N_{s,p}` has entries
//! `N[k,l] = w_l φ(ũ_{kl} v^{p+s+l})`, which is the unweighted matrix
//! `φ(u_{kl} v^{p+s+l})` conjugated by `W^{1/2}`. Hence convolution is the blockwise
//! matrix product and the diagonal holds the unweighted values. The SU and SO
//! presets only have `p = 0`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{monomials_up_to, NCMonomial, NCPoly, Preset};
use crate::corep::{element, expand, half, ElementKey, Spin};
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::report::CheckReport;
use crate::scalar::QRat;

/// Default v-truncation for U_q(2).
pub const DEFAULT_PMAX: u32 = 3;

/// Haar state on a single normal monomial of a generic-`q` preset.
pub fn haar_monomial(m: &NCMonomial) -> QRat {
    if m.r != 0 || m.s != 0 || m.gp != m.gm || m.t != 0 {
        return QRat::zero();
    }
    (QRat::one() - QRat::q_pow(2)) / (QRat::one() - QRat::q_pow(2 * m.gp as i64 + 2))
}

/// Haar state: `h((g* g)^n) = (1-q^2)/(1-q^{2n+2})`, zero off the torus-invariant part.
pub fn haar_value(x: &NCPoly) -> Result<QRat> {
    if !x.preset().is_generic() {
        return Err(Error::Unsupported(format!("no Haar state on {}", x.preset())));
    }
    let mut acc = QRat::zero();
    for (m, c) in x.terms() {
        let h = haar_monomial(m);
        if !h.is_zero() {
            acc += &(c * &h);
        }
    }
    Ok(acc)
}

/// Lattice in `Z^2` in Hermite normal form `{(a, b), (0, d)}`; it describes a closed
/// subgroup of the 2-torus through its annihilator (the characters trivial on it).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    a: i64,
    b: i64,
    d: i64,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl Lattice {
    /// Lattice generated by the given vectors.
    pub fn generated_by(gens: &[(i64, i64)]) -> Lattice {
        // (a, b): first row; collect second coordinates of the kernel part in d
        let (mut a, mut b, mut d) = (0i64, 0i64, 0i64);
        for &(x, y) in gens {
            if x == 0 {
                d = num_integer::gcd(d, y);
                continue;
            }
            if a == 0 {
                a = x;
                b = y;
                continue;
            }
            let (g, u, v) = ext_gcd(a, x);
            let (na, nb) = (g, u * b + v * y);
            // the combination (x/g)(a,b) - (a/g)(x,y) has zero first coordinate
            let rest = (x / g) * b - (a / g) * y;
            d = num_integer::gcd(d, rest);
            a = na;
            b = nb;
        }
        if a < 0 {
            a = -a;
            b = -b;
        }
        d = d.abs();
        if d > 0 {
            b = b.rem_euclid(d);
        }
        Lattice { a, b, d }
    }

    /// Annihilator of the full torus.
    pub fn zero() -> Lattice {
        Lattice { a: 0, b: 0, d: 0 }
    }

    /// Annihilator of the trivial subgroup.
    pub fn full() -> Lattice {
        Lattice { a: 1, b: 0, d: 1 }
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        let y = if self.a == 0 {
            if x != 0 {
                return false;
            }
            y
        } else {
            if x % self.a != 0 {
                return false;
            }
            y - (x / self.a) * self.b
        };
        if self.d == 0 {
            y == 0
        } else {
            y % self.d == 0
        }
    }

    pub fn generators(&self) -> Vec<(i64, i64)> {
        let mut g = Vec::new();
        if self.a != 0 {
            g.push((self.a, self.b));
        }
        if self.d != 0 {
            g.push((0, self.d));
        }
        g
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Lattice::zero() {
            return f.write_str("full");
        }
        if *self == Lattice::full() {
            return f.write_str("point");
        }
        let parts: Vec<String> = self.generators().iter().map(|(x, y)| format!("{x},{y}")).collect();
        f.write_str(&parts.join(";"))
    }
}

impl FromStr for Lattice {
    type Err = Error;
    /// `"full"`, `"point"` or generators `"a,b;c,d"`.
    fn from_str(s: &str) -> Result<Lattice> {
        match s {
            "full" => return Ok(Lattice::zero()),
            "point" | "trivial" => return Ok(Lattice::full()),
            _ => {}
        }
        let mut gens = Vec::new();
        for g in s.split(';') {
            let (x, y) = g.split_once(',').ok_or_else(|| Error::Argument(format!("bad lattice generator {g:?}")))?;
            let p = |t: &str| t.trim().parse::<i64>().map_err(|_| Error::Argument(format!("bad integer {t:?}")));
            gens.push((p(x)?, p(y)?));
        }
        Ok(Lattice::generated_by(&gens))
    }
}

/// Idempotent states of the generic-`q` catalogs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogId {
    Haar,
    Counit,
    /// Haar measure of the diagonal circle, pulled back along `j`.
    U1,
    /// Haar measure of `Z_n` in the diagonal circle.
    Zn(u32),
    /// Haar measure of a closed subgroup of the 2-torus (U_q(2) only).
    Torus(Lattice),
    /// Haar state of SU_q(2) pulled back to U_q(2).
    Suq2Embedded,
    /// Haar state of `SU_q(2) ⋊ Z_n` in U_q(2).
    Suq2SemidirectZn(u32),
}

impl CatalogId {
    pub fn available(&self, preset: Preset) -> bool {
        match self {
            CatalogId::Haar | CatalogId::Counit => preset.is_generic(),
            CatalogId::U1 | CatalogId::Zn(_) => matches!(preset, Preset::SUq2 | Preset::SOq3),
            CatalogId::Torus(_) | CatalogId::Suq2Embedded | CatalogId::Suq2SemidirectZn(_) => preset == Preset::Uq2,
        }
    }

    /// Diagonal value at spin `s`, index `k` (as `2k`) and offset `p`.
    pub fn diagonal(&self, spin: Spin, two_k: i32, p: i32) -> bool {
        let s = spin.twice();
        match *self {
            CatalogId::Haar => s == 0 && p == 0,
            CatalogId::Counit => true,
            CatalogId::U1 => two_k == 0,
            CatalogId::Zn(n) => two_k % n as i32 == 0,
            CatalogId::Torus(l) => l.contains(-two_k as i64, (p + (s as i32 + two_k) / 2) as i64),
            CatalogId::Suq2Embedded => s == 0,
            CatalogId::Suq2SemidirectZn(n) => s == 0 && p % n as i32 == 0,
        }
    }

    /// Source theorem of the classification this state belongs to.
    pub fn theorem(&self, preset: Preset) -> &'static str {
        match preset {
            Preset::Uq2 => "U_q(2) classification",
            Preset::SOq3 => "SO_q(3) classification",
            _ => "SU_q(2) classification",
        }
    }

    pub fn description(&self) -> String {
        match self {
            CatalogId::Haar => "Haar state".into(),
            CatalogId::Counit => "counit".into(),
            CatalogId::U1 => "Haar state of the subgroup U(1)".into(),
            CatalogId::Zn(n) => format!("Haar state of the subgroup Z_{n} of U(1)"),
            CatalogId::Torus(l) => format!("Haar state of the torus subgroup with annihilator {l}"),
            CatalogId::Suq2Embedded => "Haar state of SU_q(2) as a quantum subgroup".into(),
            CatalogId::Suq2SemidirectZn(n) => format!("Haar state of SU_q(2) x| Z_{n}"),
        }
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogId::Haar => f.write_str("haar"),
            CatalogId::Counit => f.write_str("counit"),
            CatalogId::U1 => f.write_str("u1"),
            CatalogId::Zn(n) => write!(f, "zn:{n}"),
            CatalogId::Torus(l) => write!(f, "torus:{l}"),
            CatalogId::Suq2Embedded => f.write_str("suq2-embedded"),
            CatalogId::Suq2SemidirectZn(n) => write!(f, "suq2-semidirect:{n}"),
        }
    }
}

impl FromStr for CatalogId {
    type Err = Error;
    fn from_str(s: &str) -> Result<CatalogId> {
        let s = s.trim();
        let (head, arg) = s.split_once(':').map(|(h, a)| (h, Some(a))).unwrap_or((s, None));
        let n = |a: Option<&str>| -> Result<u32> {
            let v: u32 = a
                .ok_or_else(|| Error::Argument(format!("{head} needs a parameter")))?
                .parse()
                .map_err(|_| Error::Argument(format!("bad parameter in {s:?}")))?;
            if v == 0 {
                return Err(Error::Argument("n must be at least 1".into()));
            }
            Ok(v)
        };
        Ok(match head {
            "haar" => CatalogId::Haar,
            "counit" => CatalogId::Counit,
            "u1" | "so2" => CatalogId::U1,
            "zn" => CatalogId::Zn(n(arg)?),
            "torus" => CatalogId::Torus(arg.unwrap_or("full").parse()?),
            "suq2-embedded" => CatalogId::Suq2Embedded,
            "suq2-semidirect" | "semidirect" => CatalogId::Suq2SemidirectZn(n(arg)?),
            _ => return Err(Error::Argument(format!("unknown state id {s:?}"))),
        })
    }
}

/// Representative catalog for each generic preset, pairwise distinct at spin 3 and
/// `|p| <= 3`.
pub fn catalog(preset: Preset) -> Vec<CatalogId> {
    let t = |s: &str| CatalogId::Torus(s.parse().expect("lattice"));
    match preset {
        Preset::SUq2 => {
            let mut v = vec![CatalogId::Haar, CatalogId::Counit, CatalogId::U1];
            v.extend((2..=6).map(CatalogId::Zn));
            v
        }
        Preset::SOq3 => vec![CatalogId::Haar, CatalogId::Counit, CatalogId::U1, CatalogId::Zn(4), CatalogId::Zn(6)],
        Preset::Uq2 => vec![
            CatalogId::Haar,
            CatalogId::Counit,
            t("full"),
            t("1,0"),
            t("0,1"),
            t("1,1"),
            t("1,-1"),
            t("2,0;0,3"),
            t("1,0;0,2"),
            CatalogId::Suq2Embedded,
            CatalogId::Suq2SemidirectZn(2),
            CatalogId::Suq2SemidirectZn(3),
        ],
        _ => Vec::new(),
    }
}

/// How blocks outside the stored truncation are produced.
#[derive(Clone, Debug, PartialEq)]
pub enum StateSource {
    Catalog(CatalogId),
    Convolution(Box<StateTable>, Box<StateTable>),
    Restricted(Box<StateTable>),
    AdHoc,
}

/// A state given by its transfer matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct StateTable {
    pub preset: Preset,
    pub smax: Spin,
    pub pmax: u32,
    blocks: BTreeMap<(u32, i32), QMatrix>,
    pub source: StateSource,
}

fn p_range(preset: Preset, pmax: u32) -> std::ops::RangeInclusive<i32> {
    if preset.has_v() {
        -(pmax as i32)..=pmax as i32
    } else {
        0..=0
    }
}

fn spins(preset: Preset, smax: Spin) -> impl Iterator<Item = Spin> {
    smax.up_to().filter(move |s| preset != Preset::SOq3 || s.is_integer())
}

impl StateTable {
    fn assemble(preset: Preset, smax: Spin, pmax: u32, source: StateSource, f: impl Fn(Spin, i32) -> Result<QMatrix>) -> Result<Self> {
        let pmax = if preset.has_v() { pmax } else { 0 };
        let mut blocks = BTreeMap::new();
        for s in spins(preset, smax) {
            for p in p_range(preset, pmax) {
                blocks.insert((s.twice(), p), f(s, p)?);
            }
        }
        Ok(StateTable { preset, smax, pmax, blocks, source })
    }

    /// Ad-hoc table; missing blocks within the truncation are zero.
    pub fn from_blocks(preset: Preset, smax: Spin, pmax: u32, given: BTreeMap<(u32, i32), QMatrix>) -> Result<Self> {
        if !preset.is_generic() {
            return Err(Error::Argument(format!("state tables need a generic-q preset, got {preset}")));
        }
        for ((s, p), m) in &given {
            let spin = Spin(*s);
            if *s > smax.twice() || !p_range(preset, pmax).contains(p) || (preset == Preset::SOq3 && !spin.is_integer()) {
                return Err(Error::Argument(format!("block ({}, {p}) outside the truncation", spin)));
            }
            if m.nrows() != spin.dim() || m.ncols() != spin.dim() {
                return Err(Error::Argument(format!("block ({}, {p}) must be {}x{}", spin, spin.dim(), spin.dim())));
            }
        }
        let t = StateTable::assemble(preset, smax, pmax, StateSource::AdHoc, |s, p| {
            Ok(given.get(&(s.twice(), p)).cloned().unwrap_or_else(|| QMatrix::zeros(s.dim(), s.dim())))
        })?;
        if t.blocks[&(0, 0)] != QMatrix::identity(1) {
            return Err(Error::Argument("unitality fails: block (0, 0) must be (1)".into()));
        }
        Ok(t)
    }

    pub fn blocks(&self) -> &BTreeMap<(u32, i32), QMatrix> {
        &self.blocks
    }

    pub fn catalog_id(&self) -> Option<CatalogId> {
        match self.source {
            StateSource::Catalog(id) => Some(id),
            _ => None,
        }
    }

    /// Block `N_{s,p}`, generated on demand outside the stored truncation.
    pub fn block(&self, spin: Spin, p: i32) -> Result<QMatrix> {
        if !self.preset.has_v() && p != 0 {
            return Ok(QMatrix::zeros(spin.dim(), spin.dim()));
        }
        if self.preset == Preset::SOq3 && !spin.is_integer() {
            return Err(Error::Argument(format!("SOq3 has no spin {spin}")));
        }
        if let Some(b) = self.blocks.get(&(spin.twice(), p)) {
            return Ok(b.clone());
        }
        match &self.source {
            StateSource::Catalog(id) => Ok(catalog_block(*id, spin, p)),
            StateSource::Convolution(a, b) => Ok(&a.block(spin, p)? * &b.block(spin, p)?),
            StateSource::Restricted(a) => a.block(spin, p),
            StateSource::AdHoc => Err(Error::Unavailable(format!("block ({spin}, {p}) lies outside the ad-hoc table"))),
        }
    }

    /// `φ(ũ_{kl} v^r)` for a basis element.
    pub fn element_value(&self, key: &ElementKey) -> Result<QRat> {
        let spin = key.spin();
        let (j, l) = match (spin.position(key.two_k), spin.position(key.two_l)) {
            (Some(j), Some(l)) => (j, l),
            _ => return Err(Error::Argument(format!("bad basis element {key}"))),
        };
        let p = if self.preset.has_v() { key.p() } else { 0 };
        let b = self.block(spin, p)?;
        let w = crate::corep::build_corep(spin, Preset::SUq2)?.weights[l].clone();
        Ok(&b[(j, l)] / &w)
    }

    /// `φ(x)` via the expansion of `x` in matrix elements.
    pub fn evaluate(&self, x: &NCPoly) -> Result<QRat> {
        if x.preset() != self.preset {
            return Err(Error::Argument(format!("element of {} evaluated on a {} state", x.preset(), self.preset)));
        }
        let y = if self.preset == Preset::SOq3 { x.with_preset(Preset::SUq2)? } else { x.clone() };
        let limit = Spin(self.smax.twice().max(y.total_degree()));
        let exp = expand(&y, limit)?;
        let mut acc = QRat::zero();
        for (k, c) in &exp.coeffs {
            acc += &(c * &self.element_value(k)?);
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> StateJson {
        StateJson {
            preset: self.preset,
            smax: self.smax,
            pmax: self.pmax,
            blocks: self.blocks.iter().map(|((s, p), m)| BlockJson { s: Spin(*s), p: *p, matrix: m.clone() }).collect(),
            catalog: self.catalog_id().map(|c| c.to_string()),
        }
    }

    pub fn from_json(j: &StateJson) -> Result<StateTable> {
        let mut given = BTreeMap::new();
        for b in &j.blocks {
            if given.insert((b.s.twice(), b.p), b.matrix.clone()).is_some() {
                return Err(Error::Argument(format!("duplicate block ({}, {})", b.s, b.p)));
            }
        }
        StateTable::from_blocks(j.preset, j.smax, j.pmax, given)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub preset: Preset,
    pub smax: Spin,
    #[serde(default)]
    pub pmax: u32,
    pub blocks: Vec<BlockJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockJson {
    pub s: Spin,
    pub p: i32,
    pub matrix: QMatrix,
}

fn catalog_block(id: CatalogId, spin: Spin, p: i32) -> QMatrix {
    QMatrix::diagonal(
        (0..spin.dim())
            .map(|j| if id.diagonal(spin, spin.two_k(j), p) { QRat::one() } else { QRat::zero() })
            .collect(),
    )
}

/// Haar state table.
pub fn haar_state(preset: Preset, smax: Spin, pmax: u32) -> Result<StateTable> {
    state_from_catalog(CatalogId::Haar, preset, smax, pmax)
}

/// Catalog state table.
pub fn state_from_catalog(id: CatalogId, preset: Preset, smax: Spin, pmax: u32) -> Result<StateTable> {
    if !id.available(preset) {
        return Err(Error::Argument(format!("state {id} is not available on {preset}")));
    }
    StateTable::assemble(preset, smax, pmax, StateSource::Catalog(id), |s, p| Ok(catalog_block(id, s, p)))
}

/// Convolution `(φ ⊗ ψ) ∘ Δ`, blockwise matrix product.
pub fn convolve(phi: &StateTable, psi: &StateTable) -> Result<StateTable> {
    if phi.preset != psi.preset || phi.smax != psi.smax || phi.pmax != psi.pmax {
        return Err(Error::Argument("convolution needs equal presets and truncations".into()));
    }
    let source = StateSource::Convolution(Box::new(phi.clone()), Box::new(psi.clone()));
    StateTable::assemble(phi.preset, phi.smax, phi.pmax, source, |s, p| Ok(&phi.blocks[&(s.twice(), p)] * &psi.blocks[&(s.twice(), p)]))
}

/// Convolution evaluated through the coproduct: `(φ ⊗ ψ)(Δx)`.
pub fn convolve_on(phi: &StateTable, psi: &StateTable, x: &NCPoly) -> Result<QRat> {
    let mut cache_a: HashMap<NCMonomial, QRat> = HashMap::new();
    let mut cache_b: HashMap<NCMonomial, QRat> = HashMap::new();
    let p = x.preset();
    let mut acc = QRat::zero();
    for ((l, r), c) in x.coproduct().terms() {
        let a = match cache_a.get(l) {
            Some(v) => v.clone(),
            None => {
                let v = phi.evaluate(&NCPoly::monomial(p, *l)?)?;
                cache_a.insert(*l, v.clone());
                v
            }
        };
        if a.is_zero() {
            continue;
        }
        let b = match cache_b.get(r) {
            Some(v) => v.clone(),
            None => {
                let v = psi.evaluate(&NCPoly::monomial(p, *r)?)?;
                cache_b.insert(*r, v.clone());
                v
            }
        };
        acc += &(&(c * &a) * &b);
    }
    Ok(acc)
}

/// Evaluation shortcut.
pub fn evaluate(phi: &StateTable, x: &NCPoly) -> Result<QRat> {
    phi.evaluate(x)
}

fn witness(s: Spin, p: i32, j: usize, l: usize) -> String {
    format!("s={s} p={p} k={} l={}", half(s.two_k(j)), half(s.two_k(l)))
}

/// `N^2 = N` on every stored block.
pub fn is_idempotent(phi: &StateTable) -> CheckReport {
    let mut rep = CheckReport::new("idempotent");
    for ((s, p), n) in &phi.blocks {
        let sq = n * n;
        let spin = Spin(*s);
        for j in 0..spin.dim() {
            for l in 0..spin.dim() {
                rep.check(sq[(j, l)] == n[(j, l)], || witness(spin, *p, j, l));
            }
        }
    }
    rep
}

/// Iterates over the basis elements `ũ_{kl} v^{p+s+l}` covered by the table.
fn basis_keys(phi: &StateTable) -> Vec<ElementKey> {
    let mut out = Vec::new();
    for &(s, p) in phi.blocks.keys() {
        let spin = Spin(s);
        for j in 0..spin.dim() {
            for l in 0..spin.dim() {
                let two_l = spin.two_k(l);
                let r = if phi.preset.has_v() { p + (s as i32 + two_l) / 2 } else { 0 };
                out.push(ElementKey { two_s: s, two_k: spin.two_k(j), two_l, r });
            }
        }
    }
    out
}

/// `φ ∘ S = φ` on every basis element within the truncation.
pub fn antipode_invariant(phi: &StateTable) -> CheckReport {
    let mut rep = CheckReport::new("antipode invariant");
    let mut skipped = 0;
    for key in basis_keys(phi) {
        let res = element(&key, phi.preset).and_then(|x| {
            let sx = x.antipode()?;
            Ok((phi.element_value(&key)?, phi.evaluate(&sx)?))
        });
        match res {
            Ok((a, b)) => rep.check(a == b, || format!("{key}: φ = {a}, φ∘S = {b}")),
            Err(Error::Unavailable(_)) => skipped += 1,
            Err(e) => rep.fail(format!("{key}: {e}")),
        }
    }
    if skipped > 0 {
        rep.note(format!("{skipped} elements skipped: S maps them outside the ad-hoc table"));
    }
    rep
}

/// `φ(x*) = φ(x)` (coefficients are real) on every basis element.
pub fn check_hermitian(phi: &StateTable) -> CheckReport {
    let mut rep = CheckReport::new("hermitian");
    let mut skipped = 0;
    for key in basis_keys(phi) {
        let res = element(&key, phi.preset).and_then(|x| Ok((phi.evaluate(&x)?, phi.evaluate(&x.star())?)));
        match res {
            Ok((a, b)) => rep.check(a == b, || format!("{key}: φ(x) = {a}, φ(x*) = {b}")),
            Err(Error::Unavailable(_)) => skipped += 1,
            Err(e) => rep.fail(format!("{key}: {e}")),
        }
    }
    if skipped > 0 {
        rep.note(format!("{skipped} elements skipped outside the ad-hoc table"));
    }
    rep
}

/// Off-diagonal vanishing and 0/1 diagonal entries.
pub fn diagonal_predicate(phi: &StateTable) -> CheckReport {
    let mut rep = CheckReport::new("diagonal 0/1 blocks");
    for ((s, p), n) in &phi.blocks {
        let spin = Spin(*s);
        for j in 0..spin.dim() {
            for l in 0..spin.dim() {
                let x = &n[(j, l)];
                let ok = if j == l { x.is_zero() || x.is_one() } else { x.is_zero() };
                rep.check(ok, || format!("{}: {x}", witness(spin, *p, j, l)));
            }
        }
    }
    rep
}

/// `N_s[0,0]` for `u^(s)_{00}` with no v-factor (`p = -s` in U_q(2)).
fn centre_value(phi: &StateTable, s: u32) -> Result<QRat> {
    let spin = Spin(2 * s);
    let p = if phi.preset.has_v() { -(s as i32) } else { 0 };
    Ok(phi.block(spin, p)?[(s as usize, s as usize)].clone())
}

/// The three structural conclusions that idempotent states satisfy.
pub fn lemma_predicates(phi: &StateTable) -> CheckReport {
    let mut rep = CheckReport::new("lemma predicates");
    rep.absorb(diagonal_predicate(phi));
    let smax_int = phi.smax.twice() / 2;
    if smax_int == 0 {
        rep.note("truncation below spin 1; (b) and (c) vacuous");
        return rep;
    }
    let hyp = match centre_value(phi, 1) {
        Ok(v) => v.is_zero(),
        Err(e) => {
            rep.fail(format!("u^(1)_00: {e}"));
            return rep;
        }
    };
    if !hyp {
        rep.note("(b) hypothesis false: φ(u^(1)_00) = 1");
        return rep;
    }
    for s in 1..=smax_int {
        match centre_value(phi, s) {
            Ok(v) => rep.check(v.is_zero(), || format!("(b) φ(u^({s})_00) = {v}")),
            Err(e) => rep.fail(format!("(b) s={s}: {e}")),
        }
    }
    for ((s, p), n) in &phi.blocks {
        if *s > 0 {
            rep.check(n.is_zero(), || format!("(c) block s={} p={p} nonzero", Spin(*s)));
        }
    }
    rep.note("(b) and (c) hold with hypothesis φ(u^(1)_00) = 0");
    rep
}

/// For each sample `x` with `φ(x* x) = 0`, require `φ(x x*) = 0`.
pub fn null_space_symmetry(phi: &StateTable, sample: &[NCPoly]) -> Result<CheckReport> {
    let mut rep = CheckReport::new("null space symmetry");
    for x in sample {
        let a = phi.evaluate(&(&x.star() * x))?;
        if a.is_zero() {
            let b = phi.evaluate(&(x * &x.star()))?;
            rep.check(b.is_zero(), || format!("x = {x}: φ(x*x) = 0, φ(xx*) = {b}"));
        }
    }
    Ok(rep)
}

/// With `φ(g* g) = 0`, checks `φ(x g) = φ(g x) = φ(x g*) = φ(g* x) = 0` on the sample.
pub fn mult_domain_check(phi: &StateTable, sample: &[NCPoly]) -> Result<CheckReport> {
    let p = phi.preset;
    let amb = if p == Preset::SOq3 { return Err(Error::Argument("SOq3 does not contain gamma".into())) } else { p };
    let g = NCPoly::monomial(amb, NCMonomial::new(0, 1, 0, 0, 0))?;
    let gs = g.star();
    let v = phi.evaluate(&(&gs * &g))?;
    if !v.is_zero() {
        return Err(Error::Argument(format!("precondition fails: φ(c*c) = {v}, not 0")));
    }
    let mut rep = CheckReport::new("multiplicative domain");
    for x in sample {
        for (name, y) in [("xc", x * &g), ("cx", &g * x), ("xc*", x * &gs), ("c*x", &gs * x)] {
            let val = phi.evaluate(&y)?;
            rep.check(val.is_zero(), || format!("{name} with x = {x}: {val}"));
        }
    }
    Ok(rep)
}

/// Restricts an SU_q(2) state to SO_q(3) (integer-spin blocks).
pub fn restrict_to_so3(phi: &StateTable) -> Result<StateTable> {
    if phi.preset != Preset::SUq2 {
        return Err(Error::Argument(format!("restriction needs an SUq2 state, got {}", phi.preset)));
    }
    let source = StateSource::Restricted(Box::new(phi.clone()));
    StateTable::assemble(Preset::SOq3, phi.smax, 0, source, |s, p| Ok(phi.blocks[&(s.twice(), p)].clone()))
}

/// The section `φ ↦ φ ∘ E` from SO_q(3) states back to SU_q(2).
pub fn extend_from_so3(phi: &StateTable) -> Result<StateTable> {
    if phi.preset != Preset::SOq3 {
        return Err(Error::Argument(format!("extension needs an SOq3 state, got {}", phi.preset)));
    }
    let mut given = BTreeMap::new();
    for s in phi.smax.up_to() {
        let b = if s.is_integer() { phi.blocks[&(s.twice(), 0)].clone() } else { QMatrix::zeros(s.dim(), s.dim()) };
        given.insert((s.twice(), 0), b);
    }
    StateTable::from_blocks(Preset::SUq2, phi.smax, 0, given)
}

/// Blockwise equality.
pub fn tables_equal(a: &StateTable, b: &StateTable) -> bool {
    a.preset == b.preset && a.blocks == b.blocks
}

/// `(h ⊗ id)Δ(x) = h(x) 1 = (id ⊗ h)Δ(x)` on basis monomials.
pub fn check_haar_invariance(preset: Preset, max_degree: u32) -> CheckReport {
    let mut rep = CheckReport::new(format!("Haar invariance {preset} deg<={max_degree}"));
    for m in monomials_up_to(preset, max_degree) {
        let x = NCPoly::monomial(preset, m).expect("admissible");
        let d = x.coproduct();
        let h = NCPoly::constant(preset, haar_monomial(&m));
        rep.check(d.contract_left(haar_monomial) == h, || format!("left at {m}"));
        rep.check(d.contract_right(haar_monomial) == h, || format!("right at {m}"));
    }
    rep
}

/// Solves the invariance system `(h ⊗ id)Δ(x) = h(x) 1`, `h(1) = 1` on the monomial
/// space of degree at most `max_degree` and compares with the closed form.
pub fn haar_uniqueness(preset: Preset, max_degree: u32) -> CheckReport {
    let mut rep = CheckReport::new(format!("Haar uniqueness {preset} deg<={max_degree}"));
    let monos = monomials_up_to(preset, max_degree);
    let index: HashMap<NCMonomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let n = monos.len();
    let mut rows: Vec<Vec<QRat>> = Vec::new();
    let mut unit = vec![QRat::zero(); n];
    unit[index[&NCMonomial::one()]] = QRat::one();
    rows.push(unit);
    let mut rhs = vec![QRat::one()];
    for m in &monos {
        let d = NCPoly::monomial(preset, *m).expect("admissible").coproduct();
        let mut eqs: BTreeMap<NCMonomial, Vec<QRat>> = BTreeMap::new();
        for ((l, r), c) in d.terms() {
            let Some(&i) = index.get(l) else {
                rep.fail(format!("left leg {l} of Δ({m}) outside the monomial space"));
                continue;
            };
            let row = eqs.entry(*r).or_insert_with(|| vec![QRat::zero(); n]);
            row[i] += c;
        }
        let one_row = eqs.entry(NCMonomial::one()).or_insert_with(|| vec![QRat::zero(); n]);
        one_row[index[m]] -= &QRat::one();
        for (_, row) in eqs {
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
                rhs.push(QRat::zero());
            }
        }
    }
    rep.note(format!("{} unknowns, {} equations", n, rows.len()));
    match QMatrix::from_rows(rows).solve(&rhs) {
        None => rep.fail("system inconsistent"),
        Some((x, free)) => {
            rep.check(free == 0, || format!("{free} free parameters"));
            for (m, v) in monos.iter().zip(&x) {
                let h = haar_monomial(m);
                rep.check(*v == h, || format!("h({m}) = {v}, expected {h}"));
            }
        }
    }
    rep
}

/// Numerical positivity diagnostic: smallest eigenvalue of the Gram matrix
/// `φ(m_i* m_j)` over monomials of degree at most `degree`, at `q = q0`.
pub fn gram_min_eigenvalue(phi: &StateTable, degree: u32, q0: f64) -> Result<f64> {
    let p = phi.preset;
    let monos: Vec<NCMonomial> = monomials_up_to(p, degree);
    let xs: Vec<NCPoly> = monos.iter().map(|m| NCPoly::monomial(p, *m)).collect::<Result<_>>()?;
    let n = xs.len();
    let mut g = nalgebra::DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let xi = xs[i].star();
        for j in i..n {
            let v = phi.evaluate(&(&xi * &xs[j]))?.eval_f64(q0)?;
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    let eig = nalgebra::SymmetricEigen::new(g);
    Ok(eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qr(s: &str) -> QRat {
        s.parse().unwrap()
    }

    #[test]
    fn lattice_membership() {
        let l: Lattice = "2,0;0,3".parse().unwrap();
        assert!(l.contains(4, 9));
        assert!(!l.contains(1, 0));
        let l = Lattice::generated_by(&[(2, 1), (4, 0)]);
        assert!(l.contains(0, 2));
        assert!(!l.contains(0, 1));
        assert!(l.contains(2, 1));
        assert!(Lattice::full().contains(5, -3));
        assert!(!Lattice::zero().contains(0, 1));
        assert_eq!(Lattice::generated_by(&[(1, 0), (0, 1)]), Lattice::full());
    }

    #[test]
    fn catalog_examples() {
        let s3 = Spin(6);
        let z2 = state_from_catalog(CatalogId::Zn(2), Preset::SUq2, s3, 0).unwrap();
        assert!(z2.block(Spin(1), 0).unwrap().is_zero());
        assert_eq!(z2.block(Spin(2), 0).unwrap(), QMatrix::identity(3));
        let u1 = state_from_catalog(CatalogId::U1, Preset::SUq2, s3, 0).unwrap();
        assert_eq!(u1.block(Spin(2), 0).unwrap(), QMatrix::diagonal(vec![QRat::zero(), QRat::one(), QRat::zero()]));
        let z3 = state_from_catalog(CatalogId::Zn(3), Preset::SUq2, s3, 0).unwrap();
        let d = |v: [i64; 4]| QMatrix::diagonal(v.iter().map(|&x| QRat::from_int(x)).collect());
        assert_eq!(z3.block(Spin(3), 0).unwrap(), d([1, 0, 0, 1]));
        assert!(state_from_catalog(CatalogId::Suq2Embedded, Preset::SUq2, s3, 0).is_err());
    }

    #[test]
    fn haar_evaluations() {
        let h = haar_state(Preset::SUq2, Spin(6), 0).unwrap();
        let x = NCPoly::monomial(Preset::SUq2, "g gs".parse().unwrap()).unwrap();
        assert_eq!(h.evaluate(&x).unwrap(), qr("1/(1+q^2)"));
        let aa = crate::algebra::normalize(&crate::algebra::parse_word("as a").unwrap(), Preset::SUq2).unwrap();
        assert_eq!(h.evaluate(&aa).unwrap(), qr("q^2/(1+q^2)"));
        let u1 = state_from_catalog(CatalogId::U1, Preset::SUq2, Spin(6), 0).unwrap();
        assert!(u1.evaluate(&x).unwrap().is_zero());
    }
}
