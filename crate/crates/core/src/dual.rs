//! The discrete dual `⊕_s M_{2s+1}` of SU_q(2), truncated at a maximal spin, with
//! group-like projections of idempotent states and their compressed block algebras.
//!
//! Blocks are indexed by twice the spin and written in the matrix-unit basis
//! `e^(s)_{kl}`, positions `0..2s+1` matching [`crate::corep`]. The projection of
//! an idempotent state `φ` has blocks `P_s = diag(φ(u^(s)_{kk}))`, the projection
//! onto vectors fixed by the underlying subgroup.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Preset;
use crate::corep::{orthogonality_constant, orthogonality_table, Spin};
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::report::CheckReport;
use crate::scalar::QRat;
use crate::states::{CatalogId, StateTable};

/// Element of the truncated dual: one square block per spin `s <= smax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualElement {
    smax: Spin,
    blocks: BTreeMap<u32, QMatrix>,
}

impl DualElement {
    pub fn zeros(smax: Spin) -> Self {
        DualElement { smax, blocks: smax.up_to().map(|s| (s.twice(), QMatrix::zeros(s.dim(), s.dim()))).collect() }
    }

    pub fn identity(smax: Spin) -> Self {
        DualElement { smax, blocks: smax.up_to().map(|s| (s.twice(), QMatrix::identity(s.dim()))).collect() }
    }

    /// Matrix unit `e^(s)_{kl}` at positions `(k, l)`.
    pub fn matrix_unit(smax: Spin, spin: Spin, k: usize, l: usize) -> Result<Self> {
        if spin > smax || k >= spin.dim() || l >= spin.dim() {
            return Err(Error::Argument(format!("no matrix unit ({k},{l}) at spin {spin} below {smax}")));
        }
        let mut out = DualElement::zeros(smax);
        out.blocks.get_mut(&spin.twice()).expect("block")[(k, l)] = QRat::one();
        Ok(out)
    }

    /// Builds an element from blocks; missing spins are zero.
    pub fn from_blocks(smax: Spin, blocks: BTreeMap<u32, QMatrix>) -> Result<Self> {
        let mut out = DualElement::zeros(smax);
        for (two_s, m) in blocks {
            let spin = Spin(two_s);
            if spin > smax || m.nrows() != spin.dim() || m.ncols() != spin.dim() {
                return Err(Error::Argument(format!("block at spin {spin} has shape {}x{}", m.nrows(), m.ncols())));
            }
            out.blocks.insert(two_s, m);
        }
        Ok(out)
    }

    pub fn smax(&self) -> Spin {
        self.smax
    }

    pub fn blocks(&self) -> &BTreeMap<u32, QMatrix> {
        &self.blocks
    }

    pub fn block(&self, spin: Spin) -> Option<&QMatrix> {
        self.blocks.get(&spin.twice())
    }

    pub fn mul(&self, other: &DualElement) -> Result<DualElement> {
        self.same_truncation(other)?;
        let blocks = self.blocks.iter().map(|(s, a)| (*s, a * &other.blocks[s])).collect();
        Ok(DualElement { smax: self.smax, blocks })
    }

    /// Blockwise adjoint; entries lie in `Q(q)` with `q` real, so this is the transpose.
    pub fn star(&self) -> DualElement {
        DualElement { smax: self.smax, blocks: self.blocks.iter().map(|(s, a)| (*s, a.transpose())).collect() }
    }

    pub fn is_hermitian(&self) -> bool {
        self.star() == *self
    }

    pub fn is_idempotent(&self) -> bool {
        self.blocks.values().all(|a| &(a * a) == a)
    }

    fn same_truncation(&self, other: &DualElement) -> Result<()> {
        if self.smax != other.smax {
            return Err(Error::Argument(format!("truncations differ: {} vs {}", self.smax, other.smax)));
        }
        Ok(())
    }

    pub fn to_json(&self) -> DualJson {
        DualJson { blocks: self.blocks.iter().map(|(s, m)| DualBlockJson { s: Spin(*s).to_string(), matrix: m.clone() }).collect() }
    }

    pub fn from_json(j: &DualJson) -> Result<Self> {
        let mut blocks = BTreeMap::new();
        let mut smax = Spin(0);
        for b in &j.blocks {
            let s: Spin = b.s.parse()?;
            smax = smax.max(s);
            blocks.insert(s.twice(), b.matrix.clone());
        }
        DualElement::from_blocks(smax, blocks)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualJson {
    pub blocks: Vec<DualBlockJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualBlockJson {
    pub s: String,
    pub matrix: QMatrix,
}

/// Group-like projection of a catalog idempotent on SU_q(2), truncated at the
/// table's `smax`.
pub fn grouplike_projection(phi: &StateTable) -> Result<DualElement> {
    if phi.preset != Preset::SUq2 {
        return Err(Error::Argument(format!("group-like projections are built for SUq2 states, got {}", phi.preset)));
    }
    if phi.catalog_id().is_none() {
        return Err(Error::Argument("group-like projection needs a catalog state".into()));
    }
    let mut blocks = BTreeMap::new();
    for s in phi.smax.up_to() {
        let n = phi.block(s, 0)?;
        blocks.insert(s.twice(), QMatrix::diagonal((0..s.dim()).map(|j| n[(j, j)].clone()).collect()));
    }
    DualElement::from_blocks(phi.smax, blocks)
}

/// True iff every block is a scalar matrix, i.e. the element is central.
pub fn is_central(p: &DualElement) -> bool {
    p.blocks.values().all(QMatrix::is_scalar)
}

/// Sizes of the compressed corners `P_s M_{2s+1} P_s ≅ M_{rank P_s}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompressedBlocks {
    pub central: bool,
    /// `(spin, rank)` for every spin up to the truncation, including zero ranks.
    pub ranks: Vec<(String, usize)>,
    /// Nonzero ranks in increasing spin order.
    pub sizes: Vec<usize>,
}

impl CompressedBlocks {
    /// Number of compressed blocks of size `d`.
    pub fn multiplicity(&self, d: usize) -> usize {
        self.sizes.iter().filter(|&&x| x == d).count()
    }
}

pub fn compress_blocks(p: &DualElement) -> Result<CompressedBlocks> {
    if !p.is_idempotent() || !p.is_hermitian() {
        return Err(Error::Argument("compression needs a hermitian idempotent".into()));
    }
    let ranks: Vec<(String, usize)> = p.blocks.iter().map(|(s, m)| (Spin(*s).to_string(), m.rank())).collect();
    let sizes = ranks.iter().map(|(_, r)| *r).filter(|&r| r > 0).collect();
    Ok(CompressedBlocks { central: is_central(p), ranks, sizes })
}

/// `p² = p`, `p* = p`, and the diagonal of `p` equals the diagonal of `φ`'s table.
pub fn check_grouplike(p: &DualElement, phi: &StateTable) -> Result<CheckReport> {
    let mut rep = CheckReport::new("group-like projection");
    for (two_s, m) in &p.blocks {
        let s = Spin(*two_s);
        rep.check(&(m * m) == m, || format!("s={s}: P² ≠ P"));
        rep.check(m.transpose() == *m, || format!("s={s}: P* ≠ P"));
        if s <= phi.smax {
            let n = phi.block(s, 0)?;
            for j in 0..s.dim() {
                rep.check(m[(j, j)] == n[(j, j)], || format!("s={s}, position {j}: P = {}, φ = {}", m[(j, j)], n[(j, j)]));
            }
        }
    }
    Ok(rep)
}

/// Rank of the spin-`s` block of the `Z_n` projection: `#{k : |k| <= s, 2k ≡ 0 mod n}`.
pub fn zn_block_rank(n: u32, spin: Spin) -> usize {
    (0..spin.dim()).filter(|&j| spin.two_k(j).rem_euclid(n as i32) == 0).count()
}

/// Multiplicity of `M_d` in the compressed dual of a catalog idempotent, read off
/// the direct-sum descriptions; `None` means infinitely many copies.
pub fn hypergroup_multiplicity(id: CatalogId, d: usize) -> Result<Option<usize>> {
    if d == 0 {
        return Ok(Some(0));
    }
    let m = match id {
        CatalogId::Haar => Some(usize::from(d == 1)),
        CatalogId::Counit => Some(1),
        CatalogId::U1 => {
            if d == 1 {
                None
            } else {
                Some(0)
            }
        }
        CatalogId::Zn(n) if n % 2 == 0 => Some(if d % 2 == 1 { (n / 2) as usize } else { 0 }),
        CatalogId::Zn(n) => Some(n as usize),
        other => return Err(Error::Argument(format!("{other} is not an SUq2 catalog state"))),
    };
    Ok(m)
}

fn catalog_rank(id: CatalogId, spin: Spin) -> usize {
    (0..spin.dim()).filter(|&j| id.diagonal(spin, spin.two_k(j), 0)).count()
}

/// Compares the compressed block sizes of `p_φ` with the direct-sum formula.
/// Sizes all of whose occurrences lie below the truncation must match exactly;
/// the others may only be undercounted.
pub fn check_block_sizes(phi: &StateTable) -> Result<CheckReport> {
    let id = phi.catalog_id().ok_or_else(|| Error::Argument("block sizes need a catalog state".into()))?;
    let p = grouplike_projection(phi)?;
    let c = compress_blocks(&p)?;
    let mut rep = CheckReport::new(format!("compressed blocks of {id}"));
    let horizon = Spin(4 * phi.smax.twice() + 16);
    let mut tail = Vec::new();
    for two_s in phi.smax.twice() + 1..=horizon.twice() {
        tail.push(catalog_rank(id, Spin(two_s)));
    }
    let max = c.sizes.iter().copied().max().unwrap_or(0);
    for d in 1..=max {
        let seen = c.multiplicity(d);
        let complete = tail.iter().all(|&r| r == 0 || r > d);
        match hypergroup_multiplicity(id, d)? {
            Some(m) if complete => rep.check(seen == m, || format!("M_{d}: {seen} copies, formula gives {m}")),
            Some(m) => rep.check(seen <= m, || format!("M_{d}: {seen} copies exceed formula's {m}")),
            None => {}
        }
    }
    if let CatalogId::Zn(n) = id {
        if n % 2 == 0 && n > 2 {
            let h = (n / 2) as u32;
            for s in phi.smax.up_to().filter(|s| s.is_integer()) {
                let s_int = s.twice() / 2;
                let ceil_rank = 2 * s_int.div_ceil(h) as usize + 1;
                let floor_rank = 2 * (s_int / h) as usize + 1;
                if ceil_rank != floor_rank {
                    rep.note(format!("s={s}: summation bound ⌈s/n⌉ would give rank {ceil_rank}; the table gives {floor_rank}"));
                }
            }
        }
    }
    Ok(rep)
}

/// Checks `⟨e^(s)_{kl}, u^(s')_{k'l'}⟩ = δ_{ss'} δ_{kk'} δ_{ll'}` for `s, s' <= smax`,
/// where `e^(s)_{kl} = h((u^(s)_{kl})* ·) / (q^{2(s-k)}(1-q²)/(1-q^{2(2s+1)}))`.
pub fn check_dual_pairing(smax: Spin) -> Result<CheckReport> {
    let mut rep = CheckReport::new(format!("dual pairing up to spin {smax}"));
    for s in smax.up_to() {
        for s2 in smax.up_to() {
            let t = orthogonality_table(s, s2)?;
            let n = s.dim();
            for row in 0..t.nrows() {
                let inv = orthogonality_constant(s, s.two_k(row / n)).inv()?;
                for col in 0..t.ncols() {
                    let v = &t[(row, col)] * &inv;
                    let expected = if s == s2 && row == col { QRat::one() } else { QRat::zero() };
                    rep.check(v == expected, || format!("s={s}, s'={s2}, ({row},{col}): {v}"));
                }
            }
        }
    }
    if rep.passed && rep.witnesses.is_empty() {
        rep.note(format!("{} spin pairs", smax.up_to().count().pow(2)));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_units_multiply() {
        let s = Spin(2);
        let e01 = DualElement::matrix_unit(s, s, 0, 1).unwrap();
        let e12 = DualElement::matrix_unit(s, s, 1, 2).unwrap();
        assert_eq!(e01.mul(&e12).unwrap(), DualElement::matrix_unit(s, s, 0, 2).unwrap());
        assert!(e12.mul(&e01).unwrap().blocks().values().all(QMatrix::is_zero));
        assert_eq!(e01.star(), DualElement::matrix_unit(s, s, 1, 0).unwrap());
        assert!(DualElement::matrix_unit(s, Spin(3), 0, 0).is_err());
    }

    #[test]
    fn zn_ranks() {
        assert_eq!(zn_block_rank(4, Spin(4)), 3);
        assert_eq!(zn_block_rank(4, Spin(2)), 1);
        assert_eq!(zn_block_rank(3, Spin(3)), 2);
        assert_eq!(zn_block_rank(3, Spin(1)), 0);
    }
}
