//! Points of the Grassmannian `G_q(k, n)`: subspaces of `F_q^n` in reduced
//! row echelon canonical form, the subspace and injection metrics, duality,
//! the right `GL_n` action, and exhaustive enumeration.

use std::cmp::Ordering;
use std::fmt;

use num::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;

/// Default cap on how many subspaces an enumeration may produce.
pub const ENUMERATION_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubspaceError {
    #[error("spanning matrix is zero")]
    ZeroMatrix,
    #[error("enumerating G_{q}({k},{n}) needs {count} subspaces, over the budget of {budget}")]
    BudgetExceeded { q: u64, k: usize, n: usize, count: u128, budget: u128 },
    #[error("bad subspace data: {0}")]
    BadData(String),
}

/// A subspace of `F_q^n`, stored as the unique RREF basis matrix. The RREF
/// form makes equality, ordering and hashing canonical.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    mat: Matrix,
}

impl Subspace {
    /// The row space of a nonzero matrix.
    pub fn from_rows(m: &Matrix) -> Result<Subspace, SubspaceError> {
        if m.is_zero() {
            return Err(SubspaceError::ZeroMatrix);
        }
        let (red, pivots) = m.rref();
        let rows: Vec<usize> = (0..pivots.len()).collect();
        let cols: Vec<usize> = (0..m.cols()).collect();
        Ok(Subspace { mat: red.submatrix(&rows, &cols) })
    }

    /// The zero subspace of `F_q^n` (a 0-row basis).
    pub fn trivial(field: &Field, n: usize) -> Subspace {
        Subspace { mat: Matrix::zeros(field, 0, n) }
    }

    /// The standard subspace spanned by the first `k` unit vectors.
    pub fn standard(field: &Field, k: usize, n: usize) -> Subspace {
        assert!(k <= n);
        let mut m = Matrix::zeros(field, k, n);
        for i in 0..k {
            m[(i, i)] = field.one();
        }
        Subspace { mat: m }
    }

    pub(crate) fn from_rref_unchecked(mat: Matrix) -> Subspace {
        Subspace { mat }
    }

    pub fn field(&self) -> &Field {
        self.mat.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.mat.cols()
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    /// The canonical (RREF) basis matrix, `dim x ambient_dim`.
    pub fn basis(&self) -> &Matrix {
        &self.mat
    }

    pub fn contains_vector(&self, v: &[FieldElement]) -> bool {
        assert_eq!(v.len(), self.ambient_dim());
        if v.iter().all(|e| e.is_zero()) {
            return true;
        }
        let vm = Matrix::new(self.field(), 1, v.len(), v.to_vec());
        self.mat.stack(&vm).rank() == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.intersection_dim(other) == other.dim()
    }

    /// `dim(U ∩ V)` via the rank of the stacked bases.
    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        assert_eq!(self.ambient_dim(), other.ambient_dim(), "ambient spaces differ");
        assert!(self.field() == other.field(), "fields differ");
        let sum_dim = self.mat.stack(&other.mat).rank();
        self.dim() + other.dim() - sum_dim
    }

    /// Subspace distance `d_S(U, V) = dim U + dim V - 2 dim(U ∩ V)`.
    pub fn d_subspace(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - 2 * self.intersection_dim(other)
    }

    /// Injection distance `d_I(U, V) = max(dim U, dim V) - dim(U ∩ V)`.
    pub fn d_injection(&self, other: &Subspace) -> usize {
        self.dim().max(other.dim()) - self.intersection_dim(other)
    }

    /// Orthogonal complement under the standard dot product.
    pub fn dual(&self) -> Subspace {
        let n = self.ambient_dim();
        if self.dim() == 0 {
            return Subspace::standard(self.field(), n, n);
        }
        let kernel = self.mat.kernel();
        if kernel.is_empty() {
            return Subspace::trivial(self.field(), n);
        }
        let data: Vec<FieldElement> = kernel.iter().flatten().cloned().collect();
        let rows = Matrix::new(self.field(), kernel.len(), n, data);
        Subspace::from_rows(&rows).expect("kernel basis is nonzero")
    }

    /// Right action `U . A = rowspace(U A)` for invertible `A`.
    pub fn act(&self, a: &Matrix) -> Subspace {
        assert!(a.is_invertible(), "the acting matrix must be invertible");
        assert_eq!(a.rows(), self.ambient_dim());
        if self.dim() == 0 {
            return self.clone();
        }
        Subspace::from_rows(&self.mat.mat_mul(a)).expect("action preserves dimension")
    }

    /// JSON form `{"n":…,"k":…,"rows":[[…]]}`; entries are coordinate vectors
    /// for extension fields and plain integers for prime fields.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<serde_json::Value>> = (0..self.dim())
            .map(|i| {
                self.mat
                    .row(i)
                    .iter()
                    .map(|e| {
                        if self.field().degree() == 1 {
                            serde_json::json!(e.coeffs()[0])
                        } else {
                            serde_json::json!(e.to_string())
                        }
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({ "n": self.ambient_dim(), "k": self.dim(), "rows": rows })
    }

    pub fn from_json(field: &Field, value: &serde_json::Value) -> Result<Subspace, SubspaceError> {
        #[derive(Deserialize, Serialize)]
        struct Raw {
            n: usize,
            k: usize,
            rows: Vec<Vec<serde_json::Value>>,
        }
        let raw: Raw = serde_json::from_value(value.clone())
            .map_err(|e| SubspaceError::BadData(e.to_string()))?;
        if raw.rows.len() != raw.k || raw.rows.iter().any(|r| r.len() != raw.n) {
            return Err(SubspaceError::BadData("row shape does not match n/k".into()));
        }
        let mut data = Vec::with_capacity(raw.k * raw.n);
        for row in &raw.rows {
            for v in row {
                let e = match v {
                    serde_json::Value::Number(x) => {
                        let x = x.as_u64().ok_or_else(|| SubspaceError::BadData("negative entry".into()))?;
                        field.from_int(x)
                    }
                    serde_json::Value::String(s) => field
                        .parse_element(s)
                        .map_err(|e| SubspaceError::BadData(e.to_string()))?,
                    _ => return Err(SubspaceError::BadData("entry must be number or string".into())),
                };
                data.push(e);
            }
        }
        let m = Matrix::new(field, raw.k, raw.n, data);
        Subspace::from_rows(&m)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of F^{}: ", self.dim(), self.ambient_dim())?;
        let rows: Vec<String> = (0..self.dim())
            .map(|i| {
                self.mat
                    .row(i)
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join("")
            })
            .collect();
        write!(f, "[{}])", rows.join(" | "))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    /// Order by ambient dimension, then dimension, then lexicographically on
    /// the flattened RREF coordinates.
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |s: &Subspace| (s.ambient_dim(), s.dim());
        key(self).cmp(&key(other)).then_with(|| {
            for i in 0..self.dim() {
                for (a, b) in self.mat.row(i).iter().zip(other.mat.row(i)) {
                    match a.coeffs().cmp(b.coeffs()) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
            }
            Ordering::Equal
        })
    }
}

impl std::hash::Hash for Subspace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient_dim().hash(state);
        self.dim().hash(state);
        for i in 0..self.dim() {
            for e in self.mat.row(i) {
                e.coeffs().hash(state);
            }
        }
    }
}

/// The distance function in use on the Grassmannian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Subspace,
    Injection,
}

impl Metric {
    pub fn distance(&self, u: &Subspace, v: &Subspace) -> usize {
        match self {
            Metric::Subspace => u.d_subspace(v),
            Metric::Injection => u.d_injection(v),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Metric::Subspace => "subspace",
            Metric::Injection => "injection",
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "subspace" => Ok(Metric::Subspace),
            "injection" => Ok(Metric::Injection),
            other => Err(format!("unknown metric {other:?} (expected subspace|injection)")),
        }
    }
}

/// Gaussian binomial `[a choose b]_q`: the number of b-dimensional subspaces
/// of `F_q^a`.
pub fn gaussian_binomial(a: usize, b: usize, q: u64) -> BigUint {
    assert!(b <= a, "gaussian binomial needs 0 <= b <= a");
    let q = BigUint::from(q);
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..b {
        num *= q.pow((a - i) as u32) - 1u32;
        den *= q.pow((b - i) as u32) - 1u32;
    }
    debug_assert!((&num % &den) == BigUint::from(0u32));
    num / den
}

/// Every point of `G_q(k, n)` exactly once, ordered lexicographically by the
/// flattened RREF coordinates. Enumerations above the budget are rejected.
pub fn enumerate_grassmannian(field: &Field, k: usize, n: usize) -> Result<Vec<Subspace>, SubspaceError> {
    enumerate_grassmannian_with_budget(field, k, n, ENUMERATION_BUDGET)
}

pub fn enumerate_grassmannian_with_budget(
    field: &Field,
    k: usize,
    n: usize,
    budget: u128,
) -> Result<Vec<Subspace>, SubspaceError> {
    assert!(k <= n, "subspace dimension exceeds ambient dimension");
    let q = field.order();
    let count_big = gaussian_binomial(n, k, q);
    let count: u128 = count_big
        .try_into()
        .map_err(|_| SubspaceError::BudgetExceeded { q, k, n, count: u128::MAX, budget })?;
    if count > budget {
        return Err(SubspaceError::BudgetExceeded { q, k, n, count, budget });
    }
    if k == 0 {
        return Ok(vec![Subspace::trivial(field, n)]);
    }
    let elems: Vec<FieldElement> = field.elements().collect();
    let mut out: Vec<Subspace> = Vec::with_capacity(count as usize);
    for pivots in combinations(n, k) {
        // free cells of the RREF pattern: right of the row's pivot, not in a
        // pivot column
        let mut free_cells = Vec::new();
        for (r, &p) in pivots.iter().enumerate() {
            for c in p + 1..n {
                if !pivots.contains(&c) {
                    free_cells.push((r, c));
                }
            }
        }
        let combos = (elems.len() as u128).pow(free_cells.len() as u32);
        for mut idx in 0..combos {
            let mut m = Matrix::zeros(field, k, n);
            for (r, &p) in pivots.iter().enumerate() {
                m[(r, p)] = field.one();
            }
            for &(r, c) in &free_cells {
                m[(r, c)] = elems[(idx % elems.len() as u128) as usize].clone();
                idx /= elems.len() as u128;
            }
            out.push(Subspace::from_rref_unchecked(m));
        }
    }
    debug_assert_eq!(out.len() as u128, count);
    out.sort();
    Ok(out)
}

/// All k-subsets of `{0, .., n-1}` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).combinations(k).collect()
}
