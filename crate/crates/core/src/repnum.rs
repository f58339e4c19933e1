//! Floating-point oracle: the representations `π_θ` of SU_q(2) on `ℓ²(Z_+)`,
//! truncated to `N` basis vectors, and a numeric Haar state built from them.
//!
//! `π_θ(α) e_n = sqrt(1 - q^{2n}) e_{n-1}` (zero for `n = 0`) and
//! `π_θ(γ) e_n = e^{iθ} q^n e_n`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::{NCMonomial, NCPoly, Preset};
use crate::error::{Error, Result};
use crate::report::CheckReport;

pub type CMatrix = DMatrix<Complex64>;

/// Default number of θ samples for [`numeric_haar`].
pub const DEFAULT_THETA_GRID: usize = 64;

fn check_q0(q0: f64) -> Result<()> {
    if !q0.is_finite() || q0 == 0.0 || q0.abs() >= 1.0 {
        return Err(Error::Argument(format!("numeric representations need 0 < |q0| < 1, got {q0}")));
    }
    Ok(())
}

/// `π_θ` restricted to `span{e_0, …, e_{N-1}}`.
#[derive(Clone, Debug)]
pub struct TruncatedRep {
    pub q0: f64,
    pub theta: f64,
    pub alpha: CMatrix,
    pub gamma: CMatrix,
}

impl TruncatedRep {
    pub fn new(q0: f64, theta: f64, n: usize) -> Result<Self> {
        check_q0(q0)?;
        if n < 2 {
            return Err(Error::Argument(format!("truncation dimension must be at least 2, got {n}")));
        }
        let mut alpha = CMatrix::zeros(n, n);
        let mut gamma = CMatrix::zeros(n, n);
        let phase = Complex64::from_polar(1.0, theta);
        for j in 0..n {
            if j > 0 {
                alpha[(j - 1, j)] = Complex64::new((1.0 - q0.powi(2 * j as i32)).sqrt(), 0.0);
            }
            gamma[(j, j)] = phase * q0.powi(j as i32);
        }
        Ok(TruncatedRep { q0, theta, alpha, gamma })
    }

    pub fn dim(&self) -> usize {
        self.alpha.nrows()
    }
}

/// Relation residuals, as operator norms.
#[derive(Clone, Debug, PartialEq)]
pub struct Residuals {
    /// `(relation, norm on span{e_0..e_{N-2}})`.
    pub interior: Vec<(&'static str, f64)>,
    /// `(relation, norm on the full truncated space)`; nonzero values are edge effects.
    pub full: Vec<(&'static str, f64)>,
}

impl Residuals {
    pub fn max_interior(&self) -> f64 {
        self.interior.iter().map(|r| r.1).fold(0.0, f64::max)
    }

    pub fn max_full(&self) -> f64 {
        self.full.iter().map(|r| r.1).fold(0.0, f64::max)
    }
}

fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().max()
}

/// Residuals of `α*α + γ*γ = 1`, `αα* + q²γ*γ = 1`, `γ*γ = γγ*`, `αγ = qγα`, `αγ* = qγ*α`.
pub fn relation_residuals(rep: &TruncatedRep) -> Residuals {
    let n = rep.dim();
    let (a, g) = (&rep.alpha, &rep.gamma);
    let (a_s, g_s) = (a.adjoint(), g.adjoint());
    let id = CMatrix::identity(n, n);
    let q = Complex64::new(rep.q0, 0.0);
    let rels: Vec<(&'static str, CMatrix)> = vec![
        ("a*a + g*g - 1", &a_s * a + &g_s * g - &id),
        ("aa* + q^2 g*g - 1", a * &a_s + &g_s * g * (q * q) - &id),
        ("g*g - gg*", &g_s * g - g * &g_s),
        ("ag - q ga", a * g - g * a * q),
        ("ag* - q g*a", a * &g_s - &g_s * a * q),
    ];
    let interior = rels.iter().map(|(name, m)| (*name, op_norm(&m.columns(0, n - 1).into_owned()))).collect();
    let full = rels.iter().map(|(name, m)| (*name, op_norm(m))).collect();
    Residuals { interior, full }
}

/// Eigenvalues of `π(γ*γ)` against `{q0^{2n} : n < N}` and the contraction bound.
pub fn spectrum_check(rep: &TruncatedRep) -> CheckReport {
    let mut out = CheckReport::new(format!("spectrum of π(g*g) at q0 = {}", rep.q0));
    let m = rep.gamma.adjoint() * &rep.gamma;
    let mut eig: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    let mut expected: Vec<f64> = (0..rep.dim()).map(|j| rep.q0.powi(2 * j as i32)).collect();
    expected.sort_by(|x, y| y.total_cmp(x));
    for (j, (e, x)) in eig.iter().zip(&expected).enumerate() {
        out.check((e - x).abs() <= 1e-12, || format!("eigenvalue {j}: {e} vs q0^(2n) = {x}"));
    }
    let radius = eig.iter().fold(0.0f64, |a, e| a.max(e.abs()));
    out.check(radius <= 1.0 + 1e-12, || format!("spectral radius {radius} exceeds 1"));
    out.check(eig.iter().all(|e| *e >= -1e-12), || "negative eigenvalue".into());
    out
}

/// `⟨e_n, π_θ(m) e_n⟩` for a normal monomial, applied factor by factor on the
/// untruncated space.
fn diagonal_element(m: &NCMonomial, q0: f64, theta: f64, n: usize) -> Complex64 {
    if m.r != m.s {
        return Complex64::new(0.0, 0.0);
    }
    let mut idx = n as i64;
    let mut c = 1.0;
    for _ in 0..m.s {
        if idx == 0 {
            return Complex64::new(0.0, 0.0);
        }
        c *= (1.0 - q0.powi(2 * idx as i32)).sqrt();
        idx -= 1;
    }
    c *= q0.powi(idx as i32).powi((m.gp + m.gm) as i32);
    for _ in 0..m.r {
        c *= (1.0 - q0.powi(2 * (idx + 1) as i32)).sqrt();
        idx += 1;
    }
    Complex64::from_polar(c, theta * (m.gp as f64 - m.gm as f64))
}

/// Geometric tail `q0^{2N}` of the Jackson weights beyond `N` terms.
pub fn jackson_tail(q0: f64, n: usize) -> f64 {
    q0.abs().powi(2 * n as i32)
}

/// `(1 - q0²) Σ_{n<N} q0^{2n} ⟨e_n, π_θ(x) e_n⟩`, averaged over `grid` equally spaced θ.
pub fn numeric_haar(x: &NCPoly, q0: f64, n: usize, grid: usize) -> Result<Complex64> {
    check_q0(q0)?;
    if !matches!(x.preset(), Preset::SUq2 | Preset::SOq3) {
        return Err(Error::Argument(format!("numeric Haar state is defined on SUq2, got {}", x.preset())));
    }
    if grid == 0 || n == 0 {
        return Err(Error::Argument("grid and truncation must be positive".into()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, c) in x.terms() {
        let coeff = c.eval_f64(q0)?;
        let mut mono = Complex64::new(0.0, 0.0);
        for g in 0..grid {
            let theta = 2.0 * std::f64::consts::PI * g as f64 / grid as f64;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                s += diagonal_element(m, q0, theta, j) * q0.powi(2 * j as i32);
            }
            mono += s;
        }
        acc += mono * coeff * (1.0 - q0 * q0) / grid as f64;
    }
    Ok(acc)
}

/// The one-dimensional representation `ρ_θ`: `α ↦ e^{iθ}`, `γ ↦ 0`.
pub fn rho_eval(x: &NCPoly, q0: f64, theta: f64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, c) in x.terms() {
        if m.gp == 0 && m.gm == 0 {
            acc += Complex64::from_polar(c.eval_f64(q0)?, theta * m.alpha_degree() as f64);
        }
    }
    Ok(acc)
}
