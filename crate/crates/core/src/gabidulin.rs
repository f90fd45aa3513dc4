//! Gabidulin rank-metric codes, their lifting into the Grassmannian, and
//! the linear block codes extracted from the lifted codewords: the row
//! expansion `C^L`, the restricted Pluecker code `C^p`, and the extended
//! parity matrix acting on full Pluecker vectors.

use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::pluecker::{lex_position, multiindices, MultiIndex};
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GabidulinError {
    #[error("need 1 <= k <= ell, got k = {k}, ell = {ell}")]
    BadLength { k: usize, ell: usize },
    #[error("need 1 <= delta <= k, got delta = {delta}, k = {k}")]
    BadDesignedDistance { delta: usize, k: usize },
    #[error("evaluation points must be {k} elements linearly independent over the prime field")]
    BadEvaluationPoints { k: usize },
    #[error("basis matrices must share a shape and be linearly independent")]
    BadBasis,
    #[error("bad code description: {0}")]
    BadSpec(String),
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
}

/// A Gabidulin code of length `k <= ell` over `F_{q^ell}`, evaluating the
/// linearized monomials of Frobenius degree `0..=k-delta` at independent
/// points `g`. Codewords expand to `k x ell` matrices over `F_q` of rank
/// distance at least `delta` apart.
#[derive(Debug, Clone)]
pub struct GabidulinCode {
    field: Field,
    base: Field,
    k: usize,
    delta: usize,
    g: Vec<FieldElement>,
}

impl GabidulinCode {
    /// `field` is the extension `F_{q^ell}`; `g` defaults to the powers
    /// `(1, alpha, ..., alpha^{k-1})` of the field generator.
    pub fn new(
        field: &Field,
        k: usize,
        delta: usize,
        g: Option<Vec<FieldElement>>,
    ) -> Result<GabidulinCode, GabidulinError> {
        let ell = field.degree();
        if k < 1 || k > ell {
            return Err(GabidulinError::BadLength { k, ell });
        }
        if delta < 1 || delta > k {
            return Err(GabidulinError::BadDesignedDistance { delta, k });
        }
        let g = g.unwrap_or_else(|| (0..k).map(|i| field.alpha().pow(i as u64)).collect());
        let base = field.base_field();
        let ok = g.len() == k
            && g.iter().all(|e| e.field() == field)
            && coordinate_matrix(&base, &g).rank() == k;
        if !ok {
            return Err(GabidulinError::BadEvaluationPoints { k });
        }
        Ok(GabidulinCode { field: field.clone(), base, k, delta, g })
    }

    /// The extension field `F_{q^ell}` the code lives over.
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// The prime field `F_q` of the matrix entries.
    pub fn base_field(&self) -> &Field {
        &self.base
    }

    pub fn q(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn ell(&self) -> usize {
        self.field.degree()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Ambient dimension of the lifted codewords.
    pub fn n(&self) -> usize {
        self.k + self.ell()
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Dimension over `F_{q^ell}`.
    pub fn dimension(&self) -> usize {
        self.k - self.delta + 1
    }

    pub fn g(&self) -> &[FieldElement] {
        &self.g
    }

    /// The Moore-style generator matrix: row `i` holds `g_j^{q^i}` for
    /// `i = 0, ..., k - delta`.
    pub fn generator_matrix(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.dimension(), self.k, |i, j| self.g[j].frobenius(i))
    }

    pub fn message_count(&self) -> u128 {
        (self.field.order() as u128)
            .checked_pow(self.dimension() as u32)
            .expect("message space too large to index")
    }

    /// Message vectors in a fixed order: digits over the canonical element
    /// order, first coordinate least significant.
    pub fn message_at(&self, index: u128) -> Vec<FieldElement> {
        assert!(index < self.message_count(), "message index out of range");
        let elems: Vec<FieldElement> = self.field.elements().collect();
        let q = self.field.order() as u128;
        let mut idx = index;
        (0..self.dimension())
            .map(|_| {
                let d = (idx % q) as usize;
                idx /= q;
                elems[d].clone()
            })
            .collect()
    }

    /// `message * G`, a vector of length `k` over `F_{q^ell}`.
    pub fn encode(&self, message: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(message.len(), self.dimension(), "message has wrong length");
        let gen = self.generator_matrix();
        (0..self.k)
            .map(|j| {
                let mut acc = self.field.zero();
                for (i, m) in message.iter().enumerate() {
                    acc = acc.add(&m.mul(&gen[(i, j)]));
                }
                acc
            })
            .collect()
    }

    /// The codeword as a `k x ell` matrix over `F_q`: row `i` is the
    /// coordinate vector of the `i`-th entry of the encoded vector.
    pub fn codeword_matrix(&self, message: &[FieldElement]) -> Matrix {
        let c = self.encode(message);
        coordinate_matrix(&self.base, &c)
    }

    /// Canonical JSON description. `modulus` and `g` are always included
    /// even when they match the defaults.
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q(),
            "ell": self.ell(),
            "k": self.k,
            "delta": self.delta,
            "modulus": self.field.modulus(),
            "g": self.g.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        })
    }

    /// Parse the JSON description `{q, ell, k, delta, modulus?, g?}`.
    pub fn from_json(value: &Value) -> Result<GabidulinCode, GabidulinError> {
        let get = |key: &str| {
            value
                .get(key)
                .and_then(Value::as_u64)
                .ok_or_else(|| GabidulinError::BadSpec(format!("missing integer field '{key}'")))
        };
        let q = get("q")?;
        let ell = get("ell")? as usize;
        let k = get("k")? as usize;
        let delta = get("delta")? as usize;
        let modulus: Option<Vec<u64>> = match value.get("modulus") {
            None | Some(Value::Null) => None,
            Some(v) => Some(
                v.as_array()
                    .and_then(|a| a.iter().map(Value::as_u64).collect())
                    .ok_or_else(|| GabidulinError::BadSpec("modulus must be an integer array".into()))?,
            ),
        };
        let field = Field::extension(q, ell, modulus.as_deref())?;
        let g: Option<Vec<FieldElement>> = match value.get("g") {
            None | Some(Value::Null) => None,
            Some(v) => {
                let strs = v
                    .as_array()
                    .and_then(|a| a.iter().map(Value::as_str).collect::<Option<Vec<_>>>())
                    .ok_or_else(|| GabidulinError::BadSpec("g must be an array of element strings".into()))?;
                let parsed: Result<Vec<FieldElement>, _> =
                    strs.iter().map(|s| field.parse_element(s)).collect();
                Some(parsed?)
            }
        };
        GabidulinCode::new(&field, k, delta, g)
    }
}

/// Rows are the coordinate vectors of the given extension-field elements.
fn coordinate_matrix(base: &Field, elems: &[FieldElement]) -> Matrix {
    let ell = if elems.is_empty() { 0 } else { elems[0].field().degree() };
    Matrix::from_fn(base, elems.len(), ell, |i, j| base.from_int(elems[i].coeffs()[j]))
}

/// The lifting `rs[ I_k | A ]` of a `k x ell` matrix over `F_q`.
pub fn lift(a: &Matrix) -> Subspace {
    let k = a.rows();
    let id = Matrix::identity(a.field(), k);
    Subspace::from_rows(&id.hstack(a)).expect("lifted matrix has full rank")
}

/// Rank distance between two matrices of the same shape.
pub fn rank_distance(a: &Matrix, b: &Matrix) -> usize {
    a.sub(b).rank()
}

/// An `F_q`-linear space of `k x ell` matrices given by a basis; the
/// Gabidulin codes induce one via their `F_q`-basis of messages.
#[derive(Clone)]
pub struct LinearRankCode {
    base: Field,
    k: usize,
    ell: usize,
    basis: Vec<Matrix>,
}

impl LinearRankCode {
    pub fn new(
        base: &Field,
        k: usize,
        ell: usize,
        basis: Vec<Matrix>,
    ) -> Result<LinearRankCode, GabidulinError> {
        let shapes_ok = basis
            .iter()
            .all(|m| m.field() == base && m.rows() == k && m.cols() == ell);
        if !shapes_ok {
            return Err(GabidulinError::BadBasis);
        }
        let flat = flatten_all(base, &basis, k * ell);
        if flat.rank() != basis.len() {
            return Err(GabidulinError::BadBasis);
        }
        Ok(LinearRankCode { base: base.clone(), k, ell, basis })
    }

    /// The `F_q`-basis obtained by encoding the messages
    /// `alpha^j e_i` in a fixed order (`i` outer, `j` inner).
    pub fn from_gabidulin(code: &GabidulinCode) -> LinearRankCode {
        let field = code.field();
        let mut basis = Vec::new();
        for i in 0..code.dimension() {
            for j in 0..code.ell() {
                let mut message = vec![field.zero(); code.dimension()];
                message[i] = field.alpha().pow(j as u64);
                basis.push(code.codeword_matrix(&message));
            }
        }
        LinearRankCode::new(code.base_field(), code.k(), code.ell(), basis)
            .expect("encoded basis messages stay independent")
    }

    pub fn base_field(&self) -> &Field {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Dimension over `F_q`.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn codeword_count(&self) -> u128 {
        (self.base.order() as u128)
            .checked_pow(self.dimension() as u32)
            .expect("code too large to index")
    }

    /// Linear combination of the basis with digit coefficients, first basis
    /// element least significant.
    pub fn codeword_at(&self, index: u128) -> Matrix {
        assert!(index < self.codeword_count(), "codeword index out of range");
        let q = self.base.order() as u128;
        let mut acc = Matrix::zeros(&self.base, self.k, self.ell);
        let mut idx = index;
        for b in &self.basis {
            let d = (idx % q) as u64;
            idx /= q;
            if d != 0 {
                let c = self.base.from_int(d);
                acc = acc.add(&Matrix::from_fn(&self.base, self.k, self.ell, |i, j| {
                    b[(i, j)].mul(&c)
                }));
            }
        }
        acc
    }

    pub fn codewords(&self) -> Vec<Matrix> {
        let count = self.codeword_count();
        assert!(count <= 1 << 24, "code too large to enumerate");
        crate::exec::map_indexed(count as usize, |i| self.codeword_at(i as u128))
    }

    /// Minimum rank over the nonzero codewords, by enumeration.
    pub fn min_rank_distance(&self) -> usize {
        self.codewords()
            .iter()
            .skip(1)
            .map(Matrix::rank)
            .min()
            .expect("code has nonzero codewords")
    }

    pub fn contains(&self, a: &Matrix) -> bool {
        if a.field() != &self.base || a.rows() != self.k || a.cols() != self.ell {
            return false;
        }
        let flat = flatten_all(&self.base, &self.basis, self.k * self.ell);
        let with = flat.stack(&flatten_all(&self.base, std::slice::from_ref(a), self.k * self.ell));
        with.rank() == self.dimension()
    }
}

fn flatten_all(base: &Field, mats: &[Matrix], width: usize) -> Matrix {
    Matrix::from_fn(base, mats.len(), width, |i, j| {
        let cols = mats[i].cols();
        mats[i][(j / cols, j % cols)].clone()
    })
}

/// Entries of a codeword matrix in `C^L` order: row by row from bottom to
/// top, left to right within a row.
pub fn matrix_to_cl(a: &Matrix) -> Vec<FieldElement> {
    let (k, ell) = (a.rows(), a.cols());
    let mut v = Vec::with_capacity(k * ell);
    for i in (0..k).rev() {
        for j in 0..ell {
            v.push(a[(i, j)].clone());
        }
    }
    v
}

/// The qualifying indices: `I` with `|I| = k` and `|I ∩ [k]| = k - 1`, in
/// lexicographic order. These are the Pluecker coordinates of a lifting
/// that read off single matrix entries.
pub fn qualifying_indices(k: usize, ell: usize) -> Vec<MultiIndex> {
    let n = k + ell;
    multiindices(n, k)
        .into_iter()
        .filter(|i| i.entries().iter().filter(|&&e| e <= k).count() == k - 1)
        .collect()
}

/// Entries of a codeword matrix in `C^p` order: the Pluecker coordinates
/// of the lifting at the qualifying indices, each equal to a signed matrix
/// entry. With `I = [k] \ {s} ∪ {t}` the coordinate is
/// `(-1)^{k-s} A_{s, t-k}`.
pub fn matrix_to_cp(a: &Matrix) -> Vec<FieldElement> {
    let (k, ell) = (a.rows(), a.cols());
    qualifying_indices(k, ell)
        .iter()
        .map(|idx| {
            let s = (1..=k)
                .find(|e| !idx.entries().contains(e))
                .expect("qualifying index misses one element of [k]");
            let t = *idx.entries().iter().find(|&&e| e > k).expect("qualifying index has a tail");
            let entry = &a[(s - 1, t - k - 1)];
            if (k - s) % 2 == 0 {
                entry.clone()
            } else {
                entry.neg()
            }
        })
        .collect()
}

/// The block codes attached to a linear rank-metric code: generator and
/// parity-check matrices of `C^L` and `C^p`, both parity checks in RREF so
/// they are canonical.
#[derive(Clone)]
pub struct BlockCodeView {
    base: Field,
    k: usize,
    ell: usize,
    qualifying: Vec<MultiIndex>,
    gl: Matrix,
    hl: Matrix,
    gp: Matrix,
    hp: Matrix,
}

impl BlockCodeView {
    pub fn new(code: &LinearRankCode) -> BlockCodeView {
        let base = code.base_field().clone();
        let (k, ell) = (code.k(), code.ell());
        let gl = rows_from(&base, code.basis(), matrix_to_cl);
        let gp = rows_from(&base, code.basis(), matrix_to_cp);
        BlockCodeView {
            hl: parity_of(&gl),
            hp: parity_of(&gp),
            qualifying: qualifying_indices(k, ell),
            base,
            k,
            ell,
            gl,
            gp,
        }
    }

    pub fn generator_cl(&self) -> &Matrix {
        &self.gl
    }

    pub fn parity_cl(&self) -> &Matrix {
        &self.hl
    }

    pub fn generator_cp(&self) -> &Matrix {
        &self.gp
    }

    pub fn parity_cp(&self) -> &Matrix {
        &self.hp
    }

    pub fn qualifying(&self) -> &[MultiIndex] {
        &self.qualifying
    }

    /// Scatter the columns of the `C^p` parity check into a matrix over
    /// all `C(n, k)` Pluecker positions, zero elsewhere. Lifted codewords
    /// are annihilated by every row.
    pub fn extend_hp(&self) -> Matrix {
        let n = self.k + self.ell;
        let width = multiindices(n, self.k).len();
        let mut out = Matrix::zeros(&self.base, self.hp.rows(), width);
        for (c, idx) in self.qualifying.iter().enumerate() {
            let target = lex_position(idx);
            for r in 0..self.hp.rows() {
                out[(r, target)] = self.hp[(r, c)].clone();
            }
        }
        out
    }
}

fn rows_from(base: &Field, basis: &[Matrix], f: impl Fn(&Matrix) -> Vec<FieldElement>) -> Matrix {
    let rows: Vec<Vec<FieldElement>> = basis.iter().map(f).collect();
    let width = rows.first().map_or(0, Vec::len);
    Matrix::from_fn(base, rows.len(), width, |i, j| rows[i][j].clone())
}

/// RREF parity-check matrix of the row-space code of `g`.
fn parity_of(g: &Matrix) -> Matrix {
    let kernel = g.kernel();
    let stacked = Matrix::from_fn(g.field(), kernel.len(), g.cols(), |i, j| kernel[i][j].clone());
    stacked.rref().0
}

/// A lifted Gabidulin code with its derived block codes cached.
#[derive(Clone)]
pub struct LiftedCode {
    code: GabidulinCode,
    rank_code: LinearRankCode,
    view: BlockCodeView,
    hbar: Matrix,
}

impl LiftedCode {
    pub fn new(code: GabidulinCode) -> LiftedCode {
        let rank_code = LinearRankCode::from_gabidulin(&code);
        let view = BlockCodeView::new(&rank_code);
        let hbar = view.extend_hp();
        LiftedCode { code, rank_code, view, hbar }
    }

    pub fn code(&self) -> &GabidulinCode {
        &self.code
    }

    pub fn rank_code(&self) -> &LinearRankCode {
        &self.rank_code
    }

    pub fn view(&self) -> &BlockCodeView {
        &self.view
    }

    pub fn base_field(&self) -> &Field {
        self.code.base_field()
    }

    pub fn n(&self) -> usize {
        self.code.n()
    }

    pub fn k(&self) -> usize {
        self.code.k()
    }

    /// The extended parity rows over all Pluecker positions.
    pub fn hbar(&self) -> &Matrix {
        &self.hbar
    }

    pub fn codeword_count(&self) -> u128 {
        self.code.message_count()
    }

    /// The lifted codeword of the message with the given index.
    pub fn codeword(&self, index: u128) -> Subspace {
        lift(&self.code.codeword_matrix(&self.code.message_at(index)))
    }

    /// All lifted codewords, in message-index order.
    pub fn codewords(&self) -> Vec<Subspace> {
        let count = self.codeword_count();
        assert!(count <= 1 << 24, "code too large to enumerate");
        crate::exec::map_indexed(count as usize, |i| self.codeword(i as u128))
    }

    /// Membership test: the RREF basis must be a lifting `[ I_k | A ]`
    /// with `A` in the rank-metric code.
    pub fn contains(&self, u: &Subspace) -> bool {
        let k = self.k();
        if u.ambient_dim() != self.n() || u.dim() != k || u.field() != self.base_field() {
            return false;
        }
        let b = u.basis();
        let id = Matrix::identity(self.base_field(), k);
        let cols: Vec<usize> = (0..k).collect();
        let rows: Vec<usize> = (0..k).collect();
        if b.submatrix(&rows, &cols) != id {
            return false;
        }
        let tail: Vec<usize> = (k..self.n()).collect();
        self.rank_code.contains(&b.submatrix(&rows, &tail))
    }
}
