//! Irreducible corepresentations of SU_q(2) and U_q(2) in rationalized form.
//!
//! The unitary matrix `u^(s)` involves square roots of q-binomials. We store instead
//! `ũ_{kl} = u_{kl} / sqrt(w_k w_l)` together with the weight vector `w`, so that
//!
//! * `Δ(ũ_{kl}) = Σ_m w_m ũ_{km} ⊗ ũ_{ml}`,
//! * `Σ_m w_m ũ*_{mk} ũ_{ml} = δ_{kl} / w_k`.
//!
//! The matrices come from the left coaction on the quantum plane spanned by
//! `e_j = g^j a^{2s-j}`: writing `Δ(e_j) = Σ_k C_{jk} ⊗ e_k`, the matrix `C` is a
//! corepresentation equal to `W^{-1/2} u W^{1/2}`, and `ũ = C W^{-1}`.
//! Row and column `j` correspond to the index `k = j - s`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{NCMonomial, NCPoly, Preset, TensorPoly};
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::report::CheckReport;
use crate::scalar::{qbinom, QRat};
use crate::states::haar_value;

/// Default spin truncation.
pub const DEFAULT_SMAX: Spin = Spin(6);

/// A non-negative half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Spin(pub u32);

impl Spin {
    pub fn from_twice(two_s: u32) -> Spin {
        Spin(two_s)
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// All spins `0, 1/2, ..., self`.
    pub fn up_to(self) -> impl Iterator<Item = Spin> {
        (0..=self.0).map(Spin)
    }

    /// Twice the index `k = j - s` for matrix position `j`.
    pub fn two_k(self, j: usize) -> i32 {
        2 * j as i32 - self.0 as i32
    }

    /// Matrix position of the index with `2k = two_k`.
    pub fn position(self, two_k: i32) -> Option<usize> {
        let j = two_k + self.0 as i32;
        (j >= 0 && j % 2 == 0 && j / 2 <= self.0 as i32).then_some((j / 2) as usize)
    }
}

/// Writes `n/2` as `"n/2"` or an integer.
pub fn half(n: i32) -> String {
    if n % 2 == 0 {
        (n / 2).to_string()
    } else {
        format!("{n}/2")
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&half(self.0 as i32))
    }
}

impl FromStr for Spin {
    type Err = Error;
    /// Accepts `"3/2"`, `"1.5"` or `"2"`.
    fn from_str(s: &str) -> Result<Spin> {
        let s = s.trim();
        let bad = || Error::Argument(format!("invalid spin {s:?}"));
        if let Some(n) = s.strip_suffix("/2") {
            let n: u32 = n.parse().map_err(|_| bad())?;
            return Ok(Spin(n));
        }
        if let Some((i, f)) = s.split_once('.') {
            let i: u32 = i.parse().map_err(|_| bad())?;
            return match f.trim_end_matches('0') {
                "" => Ok(Spin(2 * i)),
                "5" => Ok(Spin(2 * i + 1)),
                _ => Err(bad()),
            };
        }
        s.parse::<u32>().map(|n| Spin(2 * n)).map_err(|_| bad())
    }
}

impl From<Spin> for String {
    fn from(s: Spin) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for Spin {
    type Error = Error;
    fn try_from(s: String) -> Result<Spin> {
        s.parse()
    }
}

/// Rationalized corepresentation of spin `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedCorep {
    pub spin: Spin,
    pub preset: Preset,
    /// v-offset `p` for the U(2) presets: entry `(k, l)` carries `v^{p+s+l}`.
    pub p: Option<i32>,
    pub entries: Vec<Vec<NCPoly>>,
    pub weights: Vec<QRat>,
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<WeightedCorep>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<WeightedCorep>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The comodule matrix `C` on `span{g^j a^{n-j}}` for `n = 2s`.
fn comodule_matrix(n: u32) -> Vec<Vec<NCPoly>> {
    let p = Preset::SUq2;
    let mono = |r, gp, gm, s| NCPoly::monomial(p, NCMonomial::new(r, gp, gm, s, 0)).expect("normal monomial");
    let mut c = vec![vec![NCPoly::one(p)]];
    let (a, a_s, g, gs) = (mono(0, 0, 0, 1), mono(1, 0, 0, 0), mono(0, 1, 0, 0), mono(0, 0, 1, 0));
    let mq = -QRat::q();
    for m in 1..=n as usize {
        let mut next = vec![vec![NCPoly::zero(p); m + 1]; m + 1];
        for k in 0..=m {
            let qk = QRat::q_pow(k as i64);
            let prev = |j: usize, k: usize| if k < m { Some(&c[j][k]) } else { None };
            let prev_shift = |j: usize, k: usize| if k >= 1 { Some(&c[j][k - 1]) } else { None };
            // j = 0: e_0 = a e'_0
            let mut x = NCPoly::zero(p);
            if let Some(y) = prev(0, k) {
                x = &x + &(&a * y).scale(&qk);
            }
            if let Some(y) = prev_shift(0, k) {
                x = &x + &(&gs * y).scale(&mq);
            }
            next[0][k] = x;
            // j >= 1: e_j = g e'_{j-1}
            for j in 1..=m {
                let mut x = NCPoly::zero(p);
                if let Some(y) = prev(j - 1, k) {
                    x = &x + &(&g * y).scale(&qk);
                }
                if let Some(y) = prev_shift(j - 1, k) {
                    x = &x + &(&a_s * y);
                }
                next[j][k] = x;
            }
        }
        c = next;
    }
    c
}

/// Solves `Σ_m w_m C*_{m0} C_{m0} = 1` for the weights with `w_0 = 1`.
fn solve_weights(c: &[Vec<NCPoly>]) -> Result<Vec<QRat>> {
    let n = c.len();
    let cols: Vec<NCPoly> = (0..n).map(|m| &c[m][0].star() * &c[m][0]).collect();
    let mut monos: Vec<NCMonomial> = cols.iter().flat_map(|x| x.terms().keys().copied()).collect();
    monos.sort();
    monos.dedup();
    let a = QMatrix::from_rows(monos.iter().map(|mo| cols.iter().map(|x| x.coeff(mo)).collect()).collect());
    let b: Vec<QRat> = monos.iter().map(|mo| if mo.is_one() { QRat::one() } else { QRat::zero() }).collect();
    match a.solve(&b) {
        Some((w, 0)) => Ok(w),
        Some((_, free)) => Err(Error::Evaluation(format!("weight system underdetermined ({free} free)"))),
        None => Err(Error::Evaluation("weight system inconsistent".into())),
    }
}

fn build_su(spin: Spin) -> Result<WeightedCorep> {
    let c = comodule_matrix(spin.twice());
    let weights = solve_weights(&c)?;
    let entries = c
        .iter()
        .map(|row| row.iter().zip(&weights).map(|(x, w)| x.scale(&w.inv().expect("nonzero weight"))).collect())
        .collect();
    Ok(WeightedCorep { spin, preset: Preset::SUq2, p: None, entries, weights })
}

/// The spin-`s` corepresentation of SU_q(2); SO_q(3) accepts integer spins only.
pub fn build_corep(spin: Spin, preset: Preset) -> Result<WeightedCorep> {
    match preset {
        Preset::SUq2 => {}
        Preset::SOq3 if spin.is_integer() => {}
        Preset::SOq3 => return Err(Error::Argument(format!("SOq3 has no half-integer spin {spin}"))),
        Preset::Uq2 => return build_ucorep(spin, 0),
        p => return Err(Error::Unsupported(format!("no corepresentations are built for {p}"))),
    }
    let base = cached_su(spin)?;
    let mut out = (*base).clone();
    if preset == Preset::SOq3 {
        out.preset = preset;
        for row in &mut out.entries {
            for x in row.iter_mut() {
                *x = x.with_preset(preset)?;
            }
        }
    }
    Ok(out)
}

fn cached_su(spin: Spin) -> Result<Arc<WeightedCorep>> {
    if let Some(c) = cache().read().expect("corep cache").get(&spin.twice()) {
        return Ok(c.clone());
    }
    let built = Arc::new(build_su(spin)?);
    cache().write().expect("corep cache").entry(spin.twice()).or_insert_with(|| built.clone());
    Ok(built)
}

/// `v^(s,p)`: entry `(k, l)` is `ũ_{kl} v^{p+s+l}` in the U_q(2) preset.
pub fn build_ucorep(spin: Spin, p: i32) -> Result<WeightedCorep> {
    let base = cached_su(spin)?;
    let mut entries = Vec::with_capacity(spin.dim());
    for row in &base.entries {
        let mut out = Vec::with_capacity(row.len());
        for (l, x) in row.iter().enumerate() {
            out.push(x.with_preset(Preset::Uq2)?.shift_v(p + l as i32)?);
        }
        entries.push(out);
    }
    Ok(WeightedCorep { spin, preset: Preset::Uq2, p: Some(p), entries, weights: base.weights.clone() })
}

impl WeightedCorep {
    pub fn dim(&self) -> usize {
        self.spin.dim()
    }

    /// Entry at matrix positions `(j, l)`.
    pub fn entry(&self, j: usize, l: usize) -> &NCPoly {
        &self.entries[j][l]
    }

    /// Entry by twice the indices `(2k, 2l)`.
    pub fn entry_by_index(&self, two_k: i32, two_l: i32) -> Option<&NCPoly> {
        Some(&self.entries[self.spin.position(two_k)?][self.spin.position(two_l)?])
    }

    /// `Δ(ũ_{kl}) = Σ_m w_m ũ_{km} ⊗ ũ_{ml}`.
    pub fn check_corep_identity(&self) -> CheckReport {
        let mut rep = CheckReport::new(format!("weighted corep identity s={}", self.spin));
        let n = self.dim();
        for k in 0..n {
            for l in 0..n {
                let mut rhs = TensorPoly::zero(self.preset);
                for m in 0..n {
                    for ((a, b), c1) in legs(&self.entries[k][m], &self.entries[m][l]) {
                        rhs.add_term(a, b, &c1 * &self.weights[m]);
                    }
                }
                rep.check(self.entries[k][l].coproduct() == rhs, || format!("({k},{l})"));
            }
        }
        rep
    }

    /// Both weighted unitarity identities.
    pub fn check_unitarity(&self) -> CheckReport {
        let mut rep = CheckReport::new(format!("weighted unitarity s={}", self.spin));
        let n = self.dim();
        let p = self.preset;
        for k in 0..n {
            for l in 0..n {
                let expected = if k == l { NCPoly::constant(p, self.weights[k].inv().expect("weight")) } else { NCPoly::zero(p) };
                let mut cols = NCPoly::zero(p);
                let mut rows = NCPoly::zero(p);
                for m in 0..n {
                    let w = &self.weights[m];
                    cols = &cols + &(&self.entries[m][k].star() * &self.entries[m][l]).scale(w);
                    rows = &rows + &(&self.entries[k][m] * &self.entries[l][m].star()).scale(w);
                }
                rep.check(cols == expected, || format!("column identity ({k},{l})"));
                rep.check(rows == expected, || format!("row identity ({k},{l})"));
            }
        }
        rep
    }

    /// Gamma-degree `k - l`, the corner normalization and `w_{-s} = 1`.
    pub fn check_shape(&self) -> CheckReport {
        let mut rep = CheckReport::new(format!("entry shape s={}", self.spin));
        let n = self.dim();
        for k in 0..n {
            for l in 0..n {
                let x = &self.entries[k][l];
                let d = k as i32 - l as i32;
                let e = -(self.spin.two_k(k) + self.spin.two_k(l)) / 2;
                rep.check(!x.is_zero(), || format!("zero entry ({k},{l})"));
                for m in x.terms().keys() {
                    rep.check(m.degree().0 == d && m.alpha_degree() == e, || format!("entry ({k},{l}) monomial {m}"));
                }
            }
        }
        let corner = NCMonomial::new(0, 0, 0, self.spin.twice(), 0);
        let corner_entry = &self.entries[0][0];
        let found = corner_entry.terms().iter().find(|(m, _)| m.gp == 0 && m.gm == 0 && m.s == corner.s && m.r == 0);
        rep.check(found.map(|(_, c)| c.is_one()).unwrap_or(false), || "corner leading term".into());
        rep.check(self.weights[0].is_one(), || "w_{-s} != 1".into());
        rep
    }

    /// Weights agree with `[2s choose j]_{q^2}`.
    pub fn check_weights_are_qbinomials(&self) -> CheckReport {
        let mut rep = CheckReport::new(format!("weights are q-binomials s={}", self.spin));
        let q2 = QRat::q_pow(2);
        for (j, w) in self.weights.iter().enumerate() {
            let b = qbinom(self.spin.twice(), j as u32, &q2).expect("j <= 2s");
            rep.check(*w == b, || format!("w_{j} = {w}, expected {b}"));
        }
        rep
    }

    pub fn to_json(&self) -> CorepJson {
        CorepJson {
            spin: self.spin,
            preset: self.preset,
            p: self.p,
            weights: self.weights.clone(),
            entries: self
                .entries
                .iter()
                .enumerate()
                .flat_map(|(j, row)| {
                    row.iter().enumerate().map(move |(l, x)| EntryJson {
                        k: half(self.spin.two_k(j)),
                        l: half(self.spin.two_k(l)),
                        terms: x.to_json().terms,
                    })
                })
                .collect(),
        }
    }
}

fn legs(x: &NCPoly, y: &NCPoly) -> Vec<((NCMonomial, NCMonomial), QRat)> {
    let mut out = Vec::new();
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            out.push(((*a, *b), ca * cb));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorepJson {
    pub spin: Spin,
    pub preset: Preset,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<i32>,
    pub weights: Vec<QRat>,
    pub entries: Vec<EntryJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryJson {
    pub k: String,
    pub l: String,
    pub terms: Vec<crate::algebra::TermJson>,
}

/// Key of a matrix element `ũ^(s)_{kl} v^r`: `(2s, 2k, 2l, r)`; `r = 0` for SU.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElementKey {
    pub two_s: u32,
    pub two_k: i32,
    pub two_l: i32,
    pub r: i32,
}

impl ElementKey {
    pub fn spin(&self) -> Spin {
        Spin(self.two_s)
    }

    /// The `p` with `r = p + s + l` (integer since `s + l` is).
    pub fn p(&self) -> i32 {
        self.r - (self.two_s as i32 + self.two_l) / 2
    }
}

impl fmt::Display for ElementKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u^({})_({},{})", half(self.two_s as i32), half(self.two_k), half(self.two_l))?;
        if self.r != 0 {
            write!(f, " v^{}", self.r)?;
        }
        Ok(())
    }
}

/// Coefficients of an element in the basis `{ũ^(s)_{kl} v^r}`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CorepExpansion {
    pub preset: Option<Preset>,
    pub coeffs: BTreeMap<ElementKey, QRat>,
}

impl CorepExpansion {
    fn add(&mut self, key: ElementKey, c: QRat) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(key).or_insert_with(QRat::zero);
        *e += &c;
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn max_spin(&self) -> Spin {
        Spin(self.coeffs.keys().map(|k| k.two_s).max().unwrap_or(0))
    }
}

/// The SU matrix element `ũ^(s)_{kl}`.
pub fn su_element(two_s: u32, two_k: i32, two_l: i32) -> Result<NCPoly> {
    let c = cached_su(Spin(two_s))?;
    c.entry_by_index(two_k, two_l)
        .cloned()
        .ok_or_else(|| Error::Argument(format!("index ({}, {}) outside spin {}", half(two_k), half(two_l), half(two_s as i32))))
}

/// The basis element for `key` in `preset`.
pub fn element(key: &ElementKey, preset: Preset) -> Result<NCPoly> {
    let x = su_element(key.two_s, key.two_k, key.two_l)?;
    let x = x.with_preset(preset)?;
    if key.r != 0 {
        x.shift_v(key.r)
    } else {
        Ok(x)
    }
}

/// Expands `x` in matrix elements of spin at most `smax`.
pub fn expand(x: &NCPoly, smax: Spin) -> Result<CorepExpansion> {
    let preset = x.preset();
    if !preset.is_generic() {
        return Err(Error::Unsupported(format!("no corepresentation basis for {preset}")));
    }
    // group by (gamma-degree, alpha-degree, v-power)
    let mut blocks: BTreeMap<(i32, i32, i32), BTreeMap<u32, QRat>> = BTreeMap::new();
    for (m, c) in x.terms() {
        let idx = m.gp.min(m.gm);
        blocks.entry((m.degree().0, m.alpha_degree(), m.t)).or_default().insert(idx, c.clone());
    }
    let mut out = CorepExpansion { preset: Some(preset), coeffs: BTreeMap::new() };
    let mut needed: u32 = 0;
    let mut shortfall = false;
    for ((d, e, t), mut coeffs) in blocks {
        // ũ_{kl} with k - l = d, k + l = -e; spin s has top index m = s - s0
        let two_k = d - e;
        let two_l = -d - e;
        let two_s0 = (d.abs() + e.abs()) as u32;
        let top = *coeffs.keys().max().expect("nonempty block");
        let need = two_s0 + 2 * top;
        needed = needed.max(need);
        if need > smax.twice() {
            shortfall = true;
            continue;
        }
        for m in (0..=top).rev() {
            let c = coeffs.remove(&m).unwrap_or_else(QRat::zero);
            if c.is_zero() {
                continue;
            }
            let two_s = two_s0 + 2 * m;
            let u = su_element(two_s, two_k, two_l)?;
            let lead_mono = lead_monomial(d, e, m);
            let lead = u.coeff(&lead_mono);
            let a = &c * &lead.inv().map_err(|_| Error::Evaluation(format!("vanishing leading coefficient for spin {}", half(two_s as i32))))?;
            for (mono, uc) in u.terms() {
                let mi = mono.gp.min(mono.gm);
                if mi < m {
                    let e = coeffs.entry(mi).or_insert_with(QRat::zero);
                    *e -= &(&a * uc);
                }
            }
            let r = if preset.has_v() { t } else { 0 };
            out.add(ElementKey { two_s, two_k, two_l, r }, a);
        }
    }
    if shortfall {
        return Err(Error::Truncation { needed: format!("increase S_max to at least {}", half(needed as i32)) });
    }
    Ok(out)
}

fn lead_monomial(d: i32, e: i32, m: u32) -> NCMonomial {
    let (r, s) = if e >= 0 { (0, e as u32) } else { ((-e) as u32, 0) };
    let (gp, gm) = if d >= 0 { (m + d as u32, m) } else { (m, m + (-d) as u32) };
    NCMonomial::new(r, gp, gm, s, 0)
}

/// Re-assembles an element from its expansion.
pub fn reassemble(exp: &CorepExpansion, preset: Preset) -> Result<NCPoly> {
    let mut out = NCPoly::zero(preset);
    for (k, c) in &exp.coeffs {
        out = out.try_add(&element(k, preset)?.scale(c))?;
    }
    Ok(out)
}

/// Haar pairings `h(ũ^(s)*_{kl} ũ^(s')_{k'l'})`, rescaled by `w_k w_l` when the indices
/// coincide so that they reproduce the unitary pairings. Rows are `(k, l)` and columns
/// `(k', l')` in row-major order.
pub fn orthogonality_table(s: Spin, s2: Spin) -> Result<QMatrix> {
    let a = cached_su(s)?;
    let b = cached_su(s2)?;
    let (n, m) = (a.dim(), b.dim());
    let mut t = QMatrix::zeros(n * n, m * m);
    for k in 0..n {
        for l in 0..n {
            let x = a.entries[k][l].star();
            for k2 in 0..m {
                for l2 in 0..m {
                    let mut v = haar_value(&(&x * &b.entries[k2][l2]))?;
                    if s == s2 && k == k2 && l == l2 {
                        v = &v * &(&a.weights[k] * &a.weights[l]);
                    }
                    t[(k * n + l, k2 * m + l2)] = v;
                }
            }
        }
    }
    Ok(t)
}

/// `q^{2(s-k)} (1-q^2) / (1-q^{2(2s+1)})`.
pub fn orthogonality_constant(spin: Spin, two_k: i32) -> QRat {
    let s2 = spin.twice() as i64;
    let num = QRat::q_pow(s2 - two_k as i64) * (QRat::one() - QRat::q_pow(2));
    num / (QRat::one() - QRat::q_pow(2 * (s2 + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qr(s: &str) -> QRat {
        s.parse().unwrap()
    }

    fn mono(s: &str) -> NCPoly {
        NCPoly::monomial(Preset::SUq2, s.parse().unwrap()).unwrap()
    }

    #[test]
    fn spin_parsing() {
        assert_eq!("3/2".parse::<Spin>().unwrap(), Spin(3));
        assert_eq!("1.5".parse::<Spin>().unwrap(), Spin(3));
        assert_eq!("2".parse::<Spin>().unwrap(), Spin(4));
        assert!("1/3".parse::<Spin>().is_err());
        assert_eq!(Spin(5).to_string(), "5/2");
    }

    #[test]
    fn small_spins() {
        let u0 = build_corep(Spin(0), Preset::SUq2).unwrap();
        assert_eq!(u0.entries, vec![vec![NCPoly::one(Preset::SUq2)]]);
        let u = build_corep(Spin(1), Preset::SUq2).unwrap();
        assert_eq!(u.weights, vec![QRat::one(), QRat::one()]);
        assert_eq!(u.entries[0][0], mono("a"));
        assert_eq!(u.entries[0][1], mono("gs").scale(&-QRat::q()));
        assert_eq!(u.entries[1][0], mono("g"));
        assert_eq!(u.entries[1][1], mono("as"));
        let u1 = build_corep(Spin(2), Preset::SUq2).unwrap();
        assert_eq!(u1.weights, vec![QRat::one(), qr("1+q^2"), QRat::one()]);
        assert_eq!(u1.entries[0][1], mono("gs a").scale(&-QRat::q()));
        assert_eq!(u1.entries[2][0], mono("g^2"));
        let mid = (&NCPoly::one(Preset::SUq2) - &mono("g gs").scale(&qr("1+q^2"))).scale(&qr("1/(1+q^2)"));
        assert_eq!(u1.entries[1][1], mid);
    }

    #[test]
    fn ucorep_v_powers() {
        let v = build_ucorep(Spin(0), 5).unwrap();
        assert_eq!(v.entries[0][0], NCPoly::monomial(Preset::Uq2, NCMonomial::new(0, 0, 0, 0, 5)).unwrap());
        let v = build_ucorep(Spin(1), 0).unwrap();
        assert_eq!(v.entries[0][1].terms().keys().next().unwrap().t, 1);
        assert_eq!(v.entries[1][0].terms().keys().next().unwrap().t, 0);
        let v = build_ucorep(Spin(2), -1).unwrap();
        for row in &v.entries {
            for (l, x) in row.iter().enumerate() {
                assert!(x.terms().keys().all(|m| m.t == l as i32 - 1));
            }
        }
    }

    #[test]
    fn expand_examples() {
        let p = Preset::SUq2;
        let e = expand(&NCPoly::one(p), Spin(6)).unwrap();
        assert_eq!(e.coeffs.len(), 1);
        assert_eq!(e.coeffs[&ElementKey { two_s: 0, two_k: 0, two_l: 0, r: 0 }], QRat::one());
        let e = expand(&mono("a"), Spin(6)).unwrap();
        assert_eq!(e.coeffs[&ElementKey { two_s: 1, two_k: -1, two_l: -1, r: 0 }], QRat::one());
        let e = expand(&mono("g gs"), Spin(6)).unwrap();
        assert_eq!(e.coeffs[&ElementKey { two_s: 0, two_k: 0, two_l: 0, r: 0 }], qr("1/(1+q^2)"));
        assert_eq!(e.coeffs[&ElementKey { two_s: 2, two_k: 0, two_l: 0, r: 0 }], -QRat::one());
        assert!(matches!(expand(&mono("g^3"), Spin(2)), Err(Error::Truncation { .. })));
    }

    #[test]
    fn orthogonality_small() {
        let t = orthogonality_table(Spin(0), Spin(0)).unwrap();
        assert_eq!(t, QMatrix::identity(1));
        let t = orthogonality_table(Spin(2), Spin(2)).unwrap();
        assert_eq!(t[(4, 4)], qr("q^2(1-q^2)/(1-q^6)"));
        assert!(orthogonality_table(Spin(1), Spin(2)).unwrap().is_zero());
    }
}
