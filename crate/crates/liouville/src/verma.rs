//! Exact Verma-module layer: Virasoro words reduced against a highest-weight
//! vector, with coefficients polynomial in the weight and the central charge.
//!
//! Basis monomials are `L_{-ν}|Δ⟩ = L_{-ν_k}⋯L_{-ν_1}|Δ⟩` for non-increasing
//! `ν`; the innermost generator carries the largest index. Reduction moves
//! positive generators rightward with
//! `[L_n, L_m] = (n-m) L_{n+m} + (c/12)(n^3-n) δ_{n,-m}` until they hit the
//! highest-weight rules `L_{n>0}|Δ⟩ = 0`, `L_0|Δ⟩ = Δ|Δ⟩`.

use crate::partitions::{enumerate, YoungDiagram};
use crate::poly::{PolyDC, TermRecord};
use nalgebra::DMatrix;
use num_complex::Complex64;
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

/// Finite linear combination of basis monomials `L_{-ν}|Δ⟩` with `PolyDC`
/// coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VermaVector {
    terms: BTreeMap<YoungDiagram, PolyDC>,
}

impl VermaVector {
    pub fn zero() -> Self {
        VermaVector::default()
    }

    /// The basis monomial `L_{-ν}|Δ⟩` with coefficient 1.
    pub fn basis(diagram: YoungDiagram) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(diagram, PolyDC::one());
        VermaVector { terms }
    }

    /// The highest-weight vector itself.
    pub fn highest_weight() -> Self {
        VermaVector::basis(YoungDiagram::empty())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&YoungDiagram, &PolyDC)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, diagram: &YoungDiagram) -> PolyDC {
        self.terms.get(diagram).cloned().unwrap_or_else(PolyDC::zero)
    }

    pub fn add_assign(&mut self, rhs: &VermaVector) {
        for (d, c) in &rhs.terms {
            let entry = self.terms.entry(d.clone()).or_insert_with(PolyDC::zero);
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(d);
            }
        }
    }

    pub fn add_scaled(&mut self, rhs: &VermaVector, factor: &PolyDC) {
        if factor.is_zero() {
            return;
        }
        for (d, c) in &rhs.terms {
            let entry = self.terms.entry(d.clone()).or_insert_with(PolyDC::zero);
            *entry += &(c * factor);
            if entry.is_zero() {
                self.terms.remove(d);
            }
        }
    }

    pub fn scale(&self, factor: &PolyDC) -> VermaVector {
        let mut out = VermaVector::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn sub(&self, rhs: &VermaVector) -> VermaVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &PolyDC::from_int(-1));
        out
    }
}

type GenKey = (i64, YoungDiagram);

static GEN_CACHE: Lazy<Mutex<HashMap<GenKey, Arc<VermaVector>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Normal form of `L_n · L_{-ν}|Δ⟩` in the canonical basis.
fn apply_to_monomial(n: i64, diagram: &YoungDiagram) -> Arc<VermaVector> {
    let key = (n, diagram.clone());
    if let Some(hit) = GEN_CACHE.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let result = Arc::new(reduce(n, diagram));
    GEN_CACHE
        .lock()
        .unwrap()
        .insert(key, result.clone());
    result
}

fn reduce(n: i64, diagram: &YoungDiagram) -> VermaVector {
    if diagram.is_empty() {
        return match n.cmp(&0) {
            std::cmp::Ordering::Greater => VermaVector::zero(),
            std::cmp::Ordering::Equal => {
                VermaVector::highest_weight().scale(&PolyDC::weight())
            }
            std::cmp::Ordering::Less => {
                VermaVector::basis(YoungDiagram::empty().append((-n) as u32).unwrap())
            }
        };
    }
    let m = i64::from(diagram.last_part().unwrap());
    if n < 0 && -n <= m {
        // creation in canonical position
        return VermaVector::basis(diagram.append((-n) as u32).unwrap());
    }
    // L_n L_{-m} = L_{-m} L_n + (n+m) L_{n-m} + (c/12)(n^3-n) δ_{n,m}
    let rest = diagram.drop_last();
    let mut out = apply_l(-m, &apply_to_monomial(n, &rest));
    out.add_scaled(&apply_to_monomial(n - m, &rest), &PolyDC::from_int(n + m));
    if n == m {
        let central = &PolyDC::charge().scale_int(n * n * n - n) * &PolyDC::from_ratio(1, 12);
        out.add_scaled(&VermaVector::basis(rest), &central);
    }
    out
}

/// Applies `L_n` to a vector, returning the normal-form expansion.
pub fn apply_l(n: i64, vec: &VermaVector) -> VermaVector {
    let mut out = VermaVector::zero();
    for (diagram, coeff) in vec.terms() {
        out.add_scaled(&apply_to_monomial(n, diagram), coeff);
    }
    out
}

/// Applies the word `L_ν = L_{ν_k}⋯L_{ν_1}` (innermost = largest part first).
pub fn apply_word(diagram: &YoungDiagram, vec: &VermaVector) -> VermaVector {
    let mut state = vec.clone();
    for &part in diagram.parts().iter().rev() {
        state = apply_l(i64::from(part), &state);
    }
    state
}

/// Matrix of `L_n` from level `from_level` to level `from_level - n`:
/// row `ν ∈ 𝒯_{from}`, column `ν'`, entry the coefficient of `ν'` in
/// `L_n L_{-ν}|Δ⟩`. Empty when the target level is negative.
pub fn ell_matrix(n: i64, from_level: u32) -> Vec<Vec<PolyDC>> {
    let to_level = i64::from(from_level) - n;
    if to_level < 0 {
        return Vec::new();
    }
    let rows = enumerate(from_level);
    let cols = enumerate(to_level as u32);
    rows.iter()
        .map(|nu| {
            let image = apply_l(n, &VermaVector::basis(nu.clone()));
            cols.iter().map(|nu2| image.coefficient(nu2)).collect()
        })
        .collect()
}

/// Level-graded Gram matrix of the canonical basis: entry `(ν, ν')` is the
/// coefficient of `|Δ⟩` in `L_ν L_{-ν'}|Δ⟩`.
#[derive(Clone, Debug)]
pub struct ShapovalovMatrix {
    pub level: u32,
    pub order: Vec<YoungDiagram>,
    pub entries: Vec<Vec<PolyDC>>,
}

static SHAPOVALOV_CACHE: Lazy<Mutex<HashMap<u32, Arc<ShapovalovMatrix>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

pub fn shapovalov(level: u32) -> Arc<ShapovalovMatrix> {
    if let Some(hit) = SHAPOVALOV_CACHE.lock().unwrap().get(&level) {
        return hit.clone();
    }
    let order = enumerate(level);
    let vacuum = YoungDiagram::empty();
    let entries: Vec<Vec<PolyDC>> = order
        .iter()
        .map(|nu| {
            order
                .iter()
                .map(|nu2| {
                    apply_word(nu, &VermaVector::basis(nu2.clone())).coefficient(&vacuum)
                })
                .collect()
        })
        .collect();
    let result = Arc::new(ShapovalovMatrix {
        level,
        order,
        entries,
    });
    SHAPOVALOV_CACHE
        .lock()
        .unwrap()
        .insert(level, result.clone());
    result
}

/// Entrywise evaluation of a `PolyDC` matrix.
pub fn evaluate(entries: &[Vec<PolyDC>], weight: Complex64, charge: Complex64) -> DMatrix<Complex64> {
    let rows = entries.len();
    let cols = entries.first().map_or(0, |r| r.len());
    DMatrix::from_fn(rows, cols, |i, j| entries[i][j].evaluate(weight, charge))
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum VermaError {
    #[error("Shapovalov matrix at level {level} is singular at the given weight (|det| = {det:.3e}, threshold {threshold:.3e})")]
    Singular { level: u32, det: f64, threshold: f64 },
}

/// Inverse of the evaluated Gram matrix together with a condition-number
/// estimate (product of infinity norms). Fails when the determinant falls
/// under the scale-aware cutoff `1e-10 · maxnorm^size`, which signals a
/// degenerate weight.
pub fn shapovalov_inverse(
    level: u32,
    weight: Complex64,
    charge: Complex64,
) -> Result<(DMatrix<Complex64>, f64), VermaError> {
    let m = shapovalov(level);
    let a = evaluate(&m.entries, weight, charge);
    let size = a.nrows();
    if size == 0 {
        return Ok((a, 1.0));
    }
    let maxnorm = a.iter().map(|z| z.norm()).fold(0.0f64, f64::max).max(1e-300);
    let threshold = 1e-10 * maxnorm.powi(size as i32);
    let lu = a.clone().lu();
    let det = lu.determinant().norm();
    if det < threshold {
        return Err(VermaError::Singular {
            level,
            det,
            threshold,
        });
    }
    let inv = lu
        .try_inverse()
        .ok_or(VermaError::Singular {
            level,
            det,
            threshold,
        })?;
    let norm_inf = |m: &DMatrix<Complex64>| {
        (0..m.nrows())
            .map(|i| m.row(i).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0f64, f64::max)
    };
    let cond = norm_inf(&a) * norm_inf(&inv);
    Ok((inv, cond))
}

/// Δ_α = (α/2)(Q − α/2).
pub fn weight_of_alpha(alpha: Complex64, q: f64) -> Complex64 {
    (alpha / 2.0) * (Complex64::new(q, 0.0) - alpha / 2.0)
}

/// Scale-adjusted determinant magnitude of the evaluated Gram matrix:
/// `|det| / maxnorm^size`, so the degeneracy cutoff is dimensionless.
pub fn scaled_det(level: u32, weight: Complex64, charge: Complex64) -> f64 {
    let m = shapovalov(level);
    let a = evaluate(&m.entries, weight, charge);
    if a.nrows() == 0 {
        return 1.0;
    }
    let maxnorm = a.iter().map(|z| z.norm()).fold(0.0f64, f64::max).max(1e-300);
    let size = a.nrows() as i32;
    let det = a.lu().determinant().norm();
    det / maxnorm.powi(size)
}

/// Degenerate weights `α = Q ± (r·γ/2 + s·2/γ)` with `r·s ≤ level`, at which
/// the level-`level` Gram determinant vanishes. Each returned value is
/// checked against the determinant before being reported.
pub fn degeneracy_scan(level: u32, gamma: f64) -> Vec<Complex64> {
    assert!(level >= 1, "degeneracy scan needs level >= 1");
    let q = gamma / 2.0 + 2.0 / gamma;
    let charge = Complex64::new(1.0 + 6.0 * q * q, 0.0);
    let mut out = Vec::new();
    for r in 1..=level {
        for s in 1..=level {
            if r * s > level {
                continue;
            }
            let shift = f64::from(r) * gamma / 2.0 + f64::from(s) * 2.0 / gamma;
            for alpha in [Complex64::new(q - shift, 0.0), Complex64::new(q + shift, 0.0)] {
                let delta = weight_of_alpha(alpha, q);
                let d = scaled_det(level, delta, charge);
                assert!(
                    d < 1e-10,
                    "expected degenerate weight at alpha={alpha}, scaled det={d:.3e}"
                );
                if !out.iter().any(|a: &Complex64| (a - alpha).norm() < 1e-12) {
                    out.push(alpha);
                }
            }
        }
    }
    out
}

/// Max-norm residual of the adjoint relation between `L_n` and `L_{-n}` with
/// respect to the Gram form at `α = Q + iP`: with `M(n)` the level-`level`
/// matrix of `L_n` and `F_k` the evaluated Gram matrices,
/// `‖ M(n) F_{level-n} − F_level M(-n)ᵀ ‖_max`.
pub fn adjoint_residual(n: u32, level: u32, p: f64, gamma: f64) -> f64 {
    assert!(level >= n, "need level >= n");
    let q = gamma / 2.0 + 2.0 / gamma;
    let charge = Complex64::new(1.0 + 6.0 * q * q, 0.0);
    let delta = weight_of_alpha(Complex64::new(q, p), q);
    let lower = level - n;

    let m_down = evaluate(&ell_matrix(i64::from(n), level), delta, charge);
    let m_up = evaluate(&ell_matrix(-i64::from(n), lower), delta, charge);
    let f_low = evaluate(&shapovalov(lower).entries, delta, charge);
    let f_high = evaluate(&shapovalov(level).entries, delta, charge);
    if m_down.nrows() == 0 || f_low.nrows() == 0 {
        return 0.0;
    }
    let lhs = &m_down * &f_low;
    let rhs = &f_high * m_up.transpose();
    (lhs - rhs).iter().map(|z| z.norm()).fold(0.0f64, f64::max)
}

/// Serialized form of a level-graded `PolyDC` matrix. `entries` is row-major
/// over cells; each cell is the list of monomial records of that entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub level: u32,
    pub order: Vec<YoungDiagram>,
    pub entries: Vec<Vec<TermRecord>>,
}

impl MatrixRecord {
    pub fn from_shapovalov(m: &ShapovalovMatrix) -> Self {
        MatrixRecord {
            level: m.level,
            order: m.order.clone(),
            entries: m
                .entries
                .iter()
                .flat_map(|row| row.iter().map(|p| p.to_records()))
                .collect(),
        }
    }

    pub fn to_entries(&self) -> Result<Vec<Vec<PolyDC>>, String> {
        let n = self.order.len();
        if self.entries.len() != n * n {
            return Err(format!(
                "expected {} cells, found {}",
                n * n,
                self.entries.len()
            ));
        }
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                row.push(PolyDC::from_records(&self.entries[i * n + j])?);
            }
            rows.push(row);
        }
        Ok(rows)
    }
}
