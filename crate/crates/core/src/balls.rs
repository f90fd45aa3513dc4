//! Balls in the Grassmannian described by linear equations in Pluecker
//! coordinates, and a rational parametrization of the same balls.
//!
//! Around a center `R` of dimension `k'`, the set of `k`-dimensional
//! subspaces within a given radius is a Schubert-type variety: after moving
//! `R` to standard position, membership says exactly that every Pluecker
//! coordinate beyond a componentwise bound vanishes. Pulling those unit
//! conditions back through the compound matrix of the standardizing
//! transform yields one linear equation per forbidden index.

use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::pluecker::{
    binomial, lex_position, multiindices, phi_bar, plucker_embed, MultiIndex, PlueckerVector,
};
use crate::subspace::{Metric, Subspace};

/// Coarse classification of a ball before any equations are written down.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallRegime {
    /// No `k`-dimensional subspace lies within the radius.
    Empty,
    /// Every `k`-dimensional subspace lies within the radius.
    Everything,
    /// A proper nonempty subset; the interesting case.
    Proper,
}

/// Largest usable radius: the subspace distance between a `k`- and a
/// `k'`-dimensional space always has the parity of `k + k'`, so an
/// off-parity radius is worth one less. The injection distance takes all
/// integer values, so it passes through.
pub fn effective_radius(metric: Metric, k: usize, k_prime: usize, radius: usize) -> usize {
    match metric {
        Metric::Subspace => radius.saturating_sub((k + k_prime + radius) % 2),
        Metric::Injection => radius,
    }
}

/// Classify the ball of the given radius around a `k_prime`-dimensional
/// center, intersected with the Grassmannian of `k`-dimensional subspaces
/// of an `n`-dimensional ambient space.
pub fn ball_regime(metric: Metric, n: usize, k: usize, k_prime: usize, radius: usize) -> BallRegime {
    assert!(k <= n && k_prime <= n, "dimensions exceed the ambient space");
    if radius < k.abs_diff(k_prime) {
        return BallRegime::Empty;
    }
    let r = effective_radius(metric, k, k_prime, radius);
    let full = match metric {
        Metric::Subspace => r >= (k + k_prime).min(2 * n - (k + k_prime)),
        Metric::Injection => r >= k.max(k_prime).min(n - k.min(k_prime)),
    };
    if full {
        BallRegime::Everything
    } else {
        BallRegime::Proper
    }
}

/// Smallest intersection dimension a member of the ball can have with the
/// center. Only meaningful in the proper regime, where it lies in
/// `1..=min(k, k_prime)`.
fn minimum_intersection(metric: Metric, k: usize, k_prime: usize, radius: usize) -> usize {
    let r = effective_radius(metric, k, k_prime, radius);
    match metric {
        Metric::Subspace => (k + k_prime - r) / 2,
        Metric::Injection => k.max(k_prime) - r,
    }
}

/// The componentwise-largest multi-index a member of the ball may realize
/// once the center is in standard position: membership is equivalent to
/// `I ⪯ bound` for the pivot index `I`, i.e. to the vanishing of every
/// coordinate at an index not below the bound.
pub fn bruhat_bound(n: usize, k: usize, k_prime: usize, metric: Metric, radius: usize) -> MultiIndex {
    assert_eq!(
        ball_regime(metric, n, k, k_prime, radius),
        BallRegime::Proper,
        "bound tuple exists only for proper balls"
    );
    let s = minimum_intersection(metric, k, k_prime, radius);
    debug_assert!(s >= 1 && s <= k.min(k_prime));
    let mut entries: Vec<usize> = (k_prime - s + 1..=k_prime).collect();
    entries.extend(n - (k - s) + 1..=n);
    MultiIndex::new(entries, n).unwrap()
}

/// The indices whose coordinates must vanish: everything not componentwise
/// below the bound, in lexicographic order.
pub fn forbidden_indices(
    n: usize,
    k: usize,
    k_prime: usize,
    metric: Metric,
    radius: usize,
) -> Vec<MultiIndex> {
    let bound = bruhat_bound(n, k, k_prime, metric, radius);
    multiindices(n, k)
        .into_iter()
        .filter(|i| !i.bruhat_leq(&bound))
        .collect()
}

/// Closed-form count of the forbidden indices, hence of the equations
/// describing a proper ball.
pub fn theta_count(n: usize, k: usize, k_prime: usize, metric: Metric, radius: usize) -> usize {
    assert_eq!(
        ball_regime(metric, n, k, k_prime, radius),
        BallRegime::Proper,
        "equation count applies to proper balls"
    );
    let s = minimum_intersection(metric, k, k_prime, radius);
    (0..s)
        .map(|l| binomial(n - k_prime, k - l) * binomial(k_prime, l))
        .sum()
}

/// An invertible matrix whose right action moves the center into standard
/// position: its first `dim` rows are the RREF basis of the center, padded
/// below by the unit rows at the non-pivot columns in ascending order.
pub fn standardizing_transform(center: &Subspace) -> Matrix {
    let field = center.field();
    let n = center.ambient_dim();
    let basis = center.basis();
    let (_, pivots) = basis.rref();
    let mut a = basis.clone();
    if a.rows() == 0 {
        a = Matrix::zeros(field, 0, n);
    }
    for j in 0..n {
        if !pivots.contains(&j) {
            let mut row = Matrix::zeros(field, 1, n);
            row[(0, j)] = field.one();
            a = a.stack(&row);
        }
    }
    debug_assert!(a.is_invertible());
    a
}

/// The linear system cutting a ball out of Pluecker space.
#[derive(Clone)]
pub struct BallEquations {
    field: Field,
    n: usize,
    k: usize,
    variables: Vec<MultiIndex>,
    forbidden: Vec<MultiIndex>,
    coeffs: Matrix,
    transform: Matrix,
}

/// Result of writing down ball equations: degenerate regimes carry no
/// system.
#[derive(Clone)]
pub enum BallOutcome {
    Empty,
    Everything,
    Equations(BallEquations),
}

impl BallEquations {
    /// Coefficient matrix, one row per forbidden index, columns in the
    /// lexicographic order of `variables()`. Every equation is homogeneous.
    pub fn coefficients(&self) -> &Matrix {
        &self.coeffs
    }

    /// Lexicographically ordered coordinate indices labelling the columns.
    pub fn variables(&self) -> &[MultiIndex] {
        &self.variables
    }

    /// The forbidden indices, one per row of the system.
    pub fn forbidden_indices(&self) -> &[MultiIndex] {
        &self.forbidden
    }

    /// The standardizing transform used to pull the equations back.
    pub fn transform(&self) -> &Matrix {
        &self.transform
    }

    pub fn is_satisfied_by(&self, x: &PlueckerVector) -> bool {
        assert_eq!(x.ambient(), self.n);
        assert_eq!(x.k(), self.k);
        (0..self.coeffs.rows()).all(|r| {
            let mut acc = self.field.zero();
            for c in 0..self.coeffs.cols() {
                acc = acc.add(&self.coeffs[(r, c)].mul(&x.coords()[c]));
            }
            acc.is_zero()
        })
    }

    /// Membership test through the embedding; false for subspaces of the
    /// wrong dimension.
    pub fn contains(&self, u: &Subspace) -> bool {
        u.dim() == self.k && self.is_satisfied_by(&plucker_embed(u))
    }

    /// Text form: a header naming the variables in lexicographic order,
    /// then one coefficient row per equation.
    pub fn to_text(&self) -> String {
        let vars: Vec<String> = self.variables.iter().map(|i| format!("x_({i})")).collect();
        format!("# variables: {}\n{}", vars.join(" "), self.coeffs.to_text())
    }
}

/// Write down the linear equations describing the radius-`radius` ball
/// around `center`, intersected with `G(dim_k, n)`.
pub fn ball_equations(
    center: &Subspace,
    metric: Metric,
    radius: usize,
    dim_k: usize,
) -> BallOutcome {
    let field = center.field();
    let n = center.ambient_dim();
    let k_prime = center.dim();
    assert!(dim_k >= 1 && dim_k <= n, "need 1 <= dim_k <= n");
    match ball_regime(metric, n, dim_k, k_prime, radius) {
        BallRegime::Empty => BallOutcome::Empty,
        BallRegime::Everything => BallOutcome::Everything,
        BallRegime::Proper => {
            let a = standardizing_transform(center);
            let variables = multiindices(n, dim_k);
            let forbidden = forbidden_indices(n, dim_k, k_prime, metric, radius);
            let coeffs = if a == Matrix::identity(field, n) {
                // standard center: each equation pins one coordinate to zero
                Matrix::from_fn(field, forbidden.len(), variables.len(), |r, c| {
                    if lex_position(&forbidden[r]) == c {
                        field.one()
                    } else {
                        field.zero()
                    }
                })
            } else {
                let m = phi_bar(&a.inverse().unwrap(), dim_k);
                Matrix::from_fn(field, forbidden.len(), variables.len(), |r, c| {
                    m[(c, lex_position(&forbidden[r]))].clone()
                })
            };
            BallOutcome::Equations(BallEquations {
                field: field.clone(),
                n,
                k: dim_k,
                variables,
                forbidden,
                coeffs,
                transform: a,
            })
        }
    }
}

/// A rational parametrization of a nonempty ball: with the standardizing
/// transform `A` of the center split into blocks at its dimension, every
/// member of the ball is the row space of `[V1 | X Y] A` for a free
/// `k x k'` matrix `V1` and a rank factorization `X Y` (`k x nu` times
/// `nu x (n - k')`), and every full-rank choice lands inside the ball.
#[derive(Clone)]
pub struct RationalBallParam {
    field: Field,
    n: usize,
    k: usize,
    k_prime: usize,
    nu: usize,
    transform: Matrix,
}

impl RationalBallParam {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn center_dim(&self) -> usize {
        self.k_prime
    }

    /// Rank budget for the off-center block `V2 = X Y`.
    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn transform(&self) -> &Matrix {
        &self.transform
    }

    /// Block of `A`: rows `0..k'`, columns `0..k'`.
    pub fn r1(&self) -> Matrix {
        let rows: Vec<usize> = (0..self.k_prime).collect();
        self.transform.submatrix(&rows, &rows)
    }

    /// Block of `A`: rows `0..k'`, columns `k'..n`.
    pub fn r2(&self) -> Matrix {
        let rows: Vec<usize> = (0..self.k_prime).collect();
        let cols: Vec<usize> = (self.k_prime..self.n).collect();
        self.transform.submatrix(&rows, &cols)
    }

    /// Block of `A`: rows `k'..n`, columns `0..k'`.
    pub fn r3(&self) -> Matrix {
        let rows: Vec<usize> = (self.k_prime..self.n).collect();
        let cols: Vec<usize> = (0..self.k_prime).collect();
        self.transform.submatrix(&rows, &cols)
    }

    /// Block of `A`: rows `k'..n`, columns `k'..n`.
    pub fn r4(&self) -> Matrix {
        let idx: Vec<usize> = (self.k_prime..self.n).collect();
        self.transform.submatrix(&idx, &idx)
    }

    /// Free entries in `(V1, X, Y)`.
    pub fn unknown_count(&self) -> usize {
        self.k * self.k_prime + (self.k + (self.n - self.k_prime)) * self.nu
    }

    /// Candidate basis matrix `[V1 | V2] A`; callers decide what to do when
    /// it is rank-deficient.
    pub fn assemble(&self, v1: &Matrix, v2: &Matrix) -> Matrix {
        assert_eq!((v1.rows(), v1.cols()), (self.k, self.k_prime), "V1 shape");
        assert_eq!((v2.rows(), v2.cols()), (self.k, self.n - self.k_prime), "V2 shape");
        v1.hstack(v2).mat_mul(&self.transform)
    }

    /// `assemble` with the off-center block given in factored form.
    pub fn assemble_factored(&self, v1: &Matrix, x: &Matrix, y: &Matrix) -> Matrix {
        assert_eq!((x.rows(), x.cols()), (self.k, self.nu), "X shape");
        assert_eq!((y.rows(), y.cols()), (self.nu, self.n - self.k_prime), "Y shape");
        self.assemble(v1, &x.mat_mul(y))
    }

    /// Enumerate every assignment of `(V1, X, Y)`, keep the full-rank
    /// assemblies, and return the distinct subspaces they span. Exhausts
    /// the ball exactly. The entry order is row-major `V1`, then `X`, then
    /// `Y`, first entry least significant.
    pub fn enumerate_candidates(&self) -> Vec<Subspace> {
        let q = self.field.order() as u128;
        let count = self.unknown_count() as u32;
        let total = q
            .checked_pow(count)
            .filter(|&t| t <= 1 << 24)
            .unwrap_or_else(|| panic!("parametrization too large to enumerate: {q}^{count} assignments"));
        let elems: Vec<FieldElement> = self.field.elements().collect();
        let found = crate::exec::filter_map_indexed(total as usize, |idx| {
            let mut digits = idx as u128;
            let mut next = || {
                let d = (digits % q) as usize;
                digits /= q;
                elems[d].clone()
            };
            let v1 = Matrix::from_fn(&self.field, self.k, self.k_prime, |_, _| next());
            let x = Matrix::from_fn(&self.field, self.k, self.nu, |_, _| next());
            let y = Matrix::from_fn(&self.field, self.nu, self.n - self.k_prime, |_, _| next());
            let u = self.assemble_factored(&v1, &x, &y);
            if u.rank() == self.k {
                Some(Subspace::from_rows(&u).unwrap())
            } else {
                None
            }
        });
        let set: std::collections::BTreeSet<Subspace> = found.into_iter().collect();
        set.into_iter().collect()
    }
}

/// Build the rational parametrization of the ball around `center`; `None`
/// exactly when the ball is empty. For a full ball the rank budget is
/// clamped to the trivially sufficient value.
pub fn rational_param(
    center: &Subspace,
    metric: Metric,
    radius: usize,
    dim_k: usize,
) -> Option<RationalBallParam> {
    let n = center.ambient_dim();
    let k = dim_k;
    let k_prime = center.dim();
    assert!(k >= 1 && k <= n, "need 1 <= dim_k <= n");
    if ball_regime(metric, n, k, k_prime, radius) == BallRegime::Empty {
        return None;
    }
    let r = effective_radius(metric, k, k_prime, radius);
    let nu_raw = match metric {
        Metric::Subspace => (k + r - k_prime) / 2,
        Metric::Injection => (k + r) - k.max(k_prime),
    };
    let nu = nu_raw.min(k).min(n - k_prime);
    Some(RationalBallParam {
        field: center.field().clone(),
        n,
        k,
        k_prime,
        nu,
        transform: standardizing_transform(center),
    })
}
