//! List decoding of lifted Gabidulin codes: the Pluecker-coordinate
//! decoder (parity rows, ball equations, the lifting pin, and the shuffle
//! relations solved by eliminate-then-enumerate), the rational-
//! parametrization decoder (enumerate one factor, solve linearly for the
//! rest), a brute-force oracle, and the worst-case list-size bounds.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::rational::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

use crate::balls::{ball_equations, rational_param, BallOutcome};
use crate::field::{Field, FieldElement};
use crate::gabidulin::{matrix_to_cl, LiftedCode};
use crate::linalg::{solve_affine, Matrix};
use crate::pluecker::{
    multiindices, plucker_inverse, shuffle_relations, MultiIndex, PlueckerVector, ShuffleRelation,
};
use crate::subspace::{Metric, Subspace};

pub use crate::subspace::gaussian_binomial;

/// Enumeration ceiling: no solve may walk more than `2^24` assignments.
pub const BUDGET_BITS: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error(
        "enumeration budget exceeded: {free_vars} free variables over a field \
         of order {q}, budget 2^{BUDGET_BITS}"
    )]
    BudgetExceeded { free_vars: usize, q: u64, candidates: u128 },
    #[error(
        "bound parameters outside the stated range t < delta <= k <= n/2 \
         (t = {t}, delta = {delta}, k = {k}, n = {n})"
    )]
    BadBoundParameters { t: usize, delta: usize, k: usize, n: usize },
}

/// `q^cells` when it fits the budget, the explicit error otherwise.
fn budgeted_count(q: u64, cells: usize) -> Result<u128, DecodeError> {
    let err = || DecodeError::BudgetExceeded {
        free_vars: cells,
        q,
        candidates: (q as u128).checked_pow(cells as u32).unwrap_or(u128::MAX),
    };
    let candidates = (q as u128).checked_pow(cells as u32).ok_or_else(err)?;
    if candidates > 1 << BUDGET_BITS {
        return Err(err());
    }
    Ok(candidates)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DecodeMethod {
    Plucker,
    Rational,
    Oracle,
}

impl DecodeMethod {
    pub fn name(&self) -> &'static str {
        match self {
            DecodeMethod::Plucker => "plucker",
            DecodeMethod::Rational => "rational",
            DecodeMethod::Oracle => "oracle",
        }
    }
}

impl std::str::FromStr for DecodeMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<DecodeMethod, String> {
        match s {
            "plucker" => Ok(DecodeMethod::Plucker),
            "rational" => Ok(DecodeMethod::Rational),
            "oracle" => Ok(DecodeMethod::Oracle),
            other => Err(format!("unknown decode method '{other}'")),
        }
    }
}

/// The decoder output: the codewords within the radius, as a set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeList {
    method: DecodeMethod,
    metric: Metric,
    radius: usize,
    codewords: Vec<Subspace>,
}

impl DecodeList {
    fn new(method: DecodeMethod, metric: Metric, radius: usize, set: BTreeSet<Subspace>) -> DecodeList {
        DecodeList { method, metric, radius, codewords: set.into_iter().collect() }
    }

    pub fn method(&self) -> DecodeMethod {
        self.method
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Sorted, duplicate-free.
    pub fn codewords(&self) -> &[Subspace] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn contains(&self, u: &Subspace) -> bool {
        self.codewords.binary_search(u).is_ok()
    }

    /// The set part only; two lists agree when these agree.
    pub fn as_set(&self) -> &[Subspace] {
        &self.codewords
    }

    pub fn to_json(&self) -> Value {
        let codewords: Vec<Value> = self
            .codewords
            .iter()
            .map(|u| {
                let rows: Vec<Value> = (0..u.dim())
                    .map(|i| {
                        u.basis()
                            .row(i)
                            .iter()
                            .map(|e| {
                                if e.field().degree() == 1 {
                                    json!(e.coeffs()[0])
                                } else {
                                    json!(e.to_string())
                                }
                            })
                            .collect()
                    })
                    .collect();
                json!(rows)
            })
            .collect();
        json!({
            "method": self.method.name(),
            "metric": self.metric.name(),
            "radius": self.radius,
            "codewords": codewords,
        })
    }
}

/// Where a linear row of the mixed system came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowOrigin {
    ParityCheck,
    Ball,
    Pin,
}

/// The linear-plus-bilinear system of Algorithm 1: parity rows of the
/// extended `H^p`, ball equations, the pin `x_{1..k} = 1`, and the shuffle
/// relations as bilinear side constraints. Variables are the Pluecker
/// coordinates in lexicographic index order.
#[derive(Clone)]
pub struct MixedSystem {
    field: Field,
    n: usize,
    k: usize,
    rows: Matrix,
    rhs: Vec<FieldElement>,
    origins: Vec<RowOrigin>,
    shuffles: Vec<ShuffleRelation>,
}

/// Degenerate radii carry no system.
pub enum SystemOutcome {
    Empty,
    System(MixedSystem),
}

impl MixedSystem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn variables(&self) -> Vec<MultiIndex> {
        multiindices(self.n, self.k)
    }

    pub fn rows(&self) -> &Matrix {
        &self.rows
    }

    pub fn rhs(&self) -> &[FieldElement] {
        &self.rhs
    }

    pub fn origins(&self) -> &[RowOrigin] {
        &self.origins
    }

    pub fn shuffles(&self) -> &[ShuffleRelation] {
        &self.shuffles
    }

    /// The system with one linear row removed; relaxing a sound system can
    /// only grow its solution set.
    pub fn without_row(&self, drop: usize) -> MixedSystem {
        let keep: Vec<usize> = (0..self.rows.rows()).filter(|&r| r != drop).collect();
        let cols: Vec<usize> = (0..self.rows.cols()).collect();
        MixedSystem {
            field: self.field.clone(),
            n: self.n,
            k: self.k,
            rows: self.rows.submatrix(&keep, &cols),
            rhs: keep.iter().map(|&r| self.rhs[r].clone()).collect(),
            origins: keep.iter().map(|&r| self.origins[r]).collect(),
            shuffles: self.shuffles.clone(),
        }
    }
}

/// Assemble the Algorithm-1 system for a received word. `Empty` when the
/// ball contains no `k`-dimensional subspace; a full ball contributes no
/// ball rows.
pub fn build_mixed_system(
    code: &LiftedCode,
    received: &Subspace,
    metric: Metric,
    radius: usize,
) -> SystemOutcome {
    let field = code.base_field();
    let (n, k) = (code.n(), code.k());
    assert_eq!(received.ambient_dim(), n, "received word lives in the wrong space");
    assert!(received.field() == field, "received word over the wrong field");
    let ball_rows = match ball_equations(received, metric, radius, k) {
        BallOutcome::Empty => return SystemOutcome::Empty,
        BallOutcome::Everything => None,
        BallOutcome::Equations(eqs) => Some(eqs.coefficients().clone()),
    };
    let mut rows = code.hbar().clone();
    let mut origins = vec![RowOrigin::ParityCheck; rows.rows()];
    if let Some(ball) = ball_rows {
        origins.extend(std::iter::repeat(RowOrigin::Ball).take(ball.rows()));
        rows = rows.stack(&ball);
    }
    let mut pin = Matrix::zeros(field, 1, rows.cols());
    pin[(0, 0)] = field.one();
    rows = rows.stack(&pin);
    origins.push(RowOrigin::Pin);
    let mut rhs = vec![field.zero(); rows.rows() - 1];
    rhs.push(field.one());
    SystemOutcome::System(MixedSystem {
        field: field.clone(),
        n,
        k,
        rows,
        rhs,
        origins,
        shuffles: shuffle_relations(n, k),
    })
}

/// Eliminate the linear rows, enumerate the free variables, keep the
/// assignments satisfying every shuffle relation.
pub fn solve_mixed(sys: &MixedSystem) -> Result<Vec<PlueckerVector>, DecodeError> {
    let sols = solve_affine(&sys.rows, &sys.rhs);
    if sols.is_empty() {
        return Ok(Vec::new());
    }
    let count = budgeted_count(sys.field.order(), sols.dimension())?;
    let out = crate::exec::filter_map_indexed(count as usize, |i| {
        let coords = sols.solution_at(i as u128);
        // the zero assignment is not a projective point; it only arises
        // when the pin row has been removed
        let x = PlueckerVector::from_coords(&sys.field, sys.n, sys.k, coords).ok()?;
        if sys.shuffles.iter().all(|rel| rel.evaluate(&x).is_zero()) {
            Some(x)
        } else {
            None
        }
    });
    Ok(out)
}

/// Algorithm 1: list decoding in Pluecker coordinates.
pub fn list_decode_plucker(
    code: &LiftedCode,
    received: &Subspace,
    metric: Metric,
    radius: usize,
) -> Result<DecodeList, DecodeError> {
    let set: BTreeSet<Subspace> = match build_mixed_system(code, received, metric, radius) {
        SystemOutcome::Empty => BTreeSet::new(),
        SystemOutcome::System(sys) => solve_mixed(&sys)?
            .iter()
            .map(|x| {
                let u = plucker_inverse(x).expect("solutions satisfy the shuffle relations");
                debug_assert!(code.contains(&u), "decoded a non-codeword");
                debug_assert!(metric.distance(received, &u) <= radius, "decoded outside the ball");
                u
            })
            .collect(),
    };
    Ok(DecodeList::new(DecodeMethod::Plucker, metric, radius, set))
}

/// One solution of Algorithm 2: the parameter assignment and the assembled
/// basis `[V1 | X Y] A`, whose left block is the identity.
#[derive(Clone)]
pub struct RationalSolution {
    pub v1: Matrix,
    pub x: Matrix,
    pub y: Matrix,
    pub basis: Matrix,
}

/// Algorithm 2, step 2: enumerate the smaller factor of `V2 = X Y` (ties
/// broken toward `X`), and for each assignment solve the linear system in
/// the remaining unknowns imposed by the identity block and the `H^L`
/// parity rows on the right block. Solutions arrive in enumeration order.
pub fn rational_solutions(
    code: &LiftedCode,
    received: &Subspace,
    metric: Metric,
    radius: usize,
) -> Result<Vec<RationalSolution>, DecodeError> {
    let (n, k) = (code.n(), code.k());
    assert_eq!(received.ambient_dim(), n, "received word lives in the wrong space");
    let Some(param) = rational_param(received, metric, radius, k) else {
        return Ok(Vec::new());
    };
    let field = code.base_field().clone();
    let q = field.order();
    let k_prime = received.dim();
    let nu = param.nu();
    let x_cells = k * nu;
    let y_cells = nu * (n - k_prime);
    let enumerate_x = x_cells <= y_cells;
    let outer_cells = x_cells.min(y_cells);
    let inner_cells = x_cells.max(y_cells);
    let unknown_cells = k * k_prime + inner_cells;
    let outer_count = budgeted_count(q, outer_cells)?;
    let hl = code.view().parity_cl();
    let elems: Vec<FieldElement> = field.elements().collect();

    let fill = |cells: &[FieldElement], rows: usize, cols: usize, offset: usize| {
        Matrix::from_fn(&field, rows, cols, |i, j| cells[offset + i * cols + j].clone())
    };
    // split an unknown vector into (V1, X, Y), with the enumerated factor
    // substituted from the outer assignment
    let split = |outer: &[FieldElement], unknowns: &[FieldElement]| {
        let v1 = fill(unknowns, k, k_prime, 0);
        let (x, y) = if enumerate_x {
            (fill(outer, k, nu, 0), fill(unknowns, nu, n - k_prime, k * k_prime))
        } else {
            (fill(unknowns, k, nu, k * k_prime), fill(outer, nu, n - k_prime, 0))
        };
        (v1, x, y)
    };
    let constraints = |u: &Matrix| {
        let mut c = Vec::with_capacity(k * k + hl.rows());
        for i in 0..k {
            for j in 0..k {
                let target = if i == j { field.one() } else { field.zero() };
                c.push(u[(i, j)].sub(&target));
            }
        }
        let all: Vec<usize> = (0..k).collect();
        let tail: Vec<usize> = (k..n).collect();
        let cl = matrix_to_cl(&u.submatrix(&all, &tail));
        for r in 0..hl.rows() {
            let mut acc = field.zero();
            for (c_idx, entry) in cl.iter().enumerate() {
                acc = acc.add(&hl[(r, c_idx)].mul(entry));
            }
            c.push(acc);
        }
        c
    };

    let per_outer = crate::exec::map_indexed(outer_count as usize, |outer_idx| {
        let mut idx = outer_idx as u128;
        let outer: Vec<FieldElement> = (0..outer_cells)
            .map(|_| {
                let d = (idx % q as u128) as usize;
                idx /= q as u128;
                elems[d].clone()
            })
            .collect();
        let eval = |unknowns: &[FieldElement]| {
            let (v1, x, y) = split(&outer, unknowns);
            let u = param.assemble_factored(&v1, &x, &y);
            let c = constraints(&u);
            (u, c)
        };
        // the constraints are affine in the unknowns: probe the zero vector
        // and the unit vectors to recover matrix and offset
        let zero_unknowns = vec![field.zero(); unknown_cells];
        let (_, c0) = eval(&zero_unknowns);
        let mut cols = Vec::with_capacity(unknown_cells);
        for j in 0..unknown_cells {
            let mut probe = zero_unknowns.clone();
            probe[j] = field.one();
            let (_, cj) = eval(&probe);
            cols.push(cj.iter().zip(&c0).map(|(a, b)| a.sub(b)).collect::<Vec<_>>());
        }
        let mat = Matrix::from_fn(&field, c0.len(), unknown_cells, |i, j| cols[j][i].clone());
        let rhs: Vec<FieldElement> = c0.iter().map(FieldElement::neg).collect();
        let sols = solve_affine(&mat, &rhs);
        if sols.is_empty() {
            return Ok(Vec::new());
        }
        let inner_count = budgeted_count(q, sols.dimension())?;
        let mut found = Vec::new();
        for i in 0..inner_count {
            let unknowns = sols.solution_at(i);
            let (v1, x, y) = split(&outer, &unknowns);
            let basis = param.assemble_factored(&v1, &x, &y);
            debug_assert!(constraints(&basis).iter().all(FieldElement::is_zero));
            found.push(RationalSolution { v1, x, y, basis });
        }
        Ok(found)
    });
    let mut out = Vec::new();
    for batch in per_outer {
        out.extend(batch?);
    }
    Ok(out)
}

/// Algorithm 2: list decoding through the rational parametrization.
pub fn list_decode_rational(
    code: &LiftedCode,
    received: &Subspace,
    metric: Metric,
    radius: usize,
) -> Result<DecodeList, DecodeError> {
    let set: BTreeSet<Subspace> = rational_solutions(code, received, metric, radius)?
        .iter()
        .map(|sol| {
            let u = Subspace::from_rows(&sol.basis).expect("identity block forces full rank");
            debug_assert!(code.contains(&u), "assembled a non-codeword");
            debug_assert!(metric.distance(received, &u) <= radius, "assembled outside the ball");
            u
        })
        .collect();
    Ok(DecodeList::new(DecodeMethod::Rational, metric, radius, set))
}

/// Dispatch on the method name.
pub fn list_decode(
    code: &LiftedCode,
    received: &Subspace,
    method: DecodeMethod,
    metric: Metric,
    radius: usize,
) -> Result<DecodeList, DecodeError> {
    match method {
        DecodeMethod::Plucker => list_decode_plucker(code, received, metric, radius),
        DecodeMethod::Rational => list_decode_rational(code, received, metric, radius),
        DecodeMethod::Oracle => Ok(oracle_list_decode(code, received, metric, radius)),
    }
}

/// Ground truth: enumerate the code and filter by distance.
pub fn oracle_list_decode(
    code: &LiftedCode,
    received: &Subspace,
    metric: Metric,
    radius: usize,
) -> DecodeList {
    let set: BTreeSet<Subspace> = code
        .codewords()
        .into_iter()
        .filter(|u| metric.distance(received, u) <= radius)
        .collect();
    DecodeList::new(DecodeMethod::Oracle, metric, radius, set)
}

/// The worst-case list-size lower bound and its asymptotics.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    /// Exact value of `[k t]_q / q^{(n-k)(delta-t-1)}`; the raw quotient,
    /// no rounding.
    pub lower_bound: BigRational,
    /// Exponent `-t^2 + nt - (n-k)(delta-1)` of the asymptotic form.
    pub asymptotic_exponent: i64,
    /// Smallest rank radius (at `epsilon = 0`) from which the list size
    /// grows exponentially in `n`.
    pub threshold_radius: f64,
}

impl BoundReport {
    pub fn to_json(&self) -> Value {
        json!({
            "lower_bound": {
                "numerator": self.lower_bound.numer().to_string(),
                "denominator": self.lower_bound.denom().to_string(),
            },
            "asymptotic_exponent": self.asymptotic_exponent,
            "threshold_radius": self.threshold_radius,
        })
    }
}

/// Lower bound on the worst-case list size of an `(n, k, delta)` lifted
/// Gabidulin code over `F_q` at the given radius. The subspace radius
/// enters through `t = floor(radius / 2)`, the injection radius directly.
/// Valid in the stated range `t < delta <= k <= n/2`.
pub fn list_size_lower_bound(
    metric: Metric,
    radius: usize,
    n: usize,
    k: usize,
    delta: usize,
    q: u64,
) -> Result<BoundReport, DecodeError> {
    let t = match metric {
        Metric::Subspace => radius / 2,
        Metric::Injection => radius,
    };
    if !(t < delta && delta <= k && 2 * k <= n) {
        return Err(DecodeError::BadBoundParameters { t, delta, k, n });
    }
    let gauss = BigInt::from(gaussian_binomial(k, t, q));
    let power = num::pow(BigInt::from(q), (n - k) * (delta - t - 1));
    let lower_bound = BigRational::new(gauss, power);
    let (nf, kf, df, tf) = (n as i64, k as i64, delta as i64, t as i64);
    let asymptotic_exponent = -tf * tf + nf * tf - (nf - kf) * (df - 1);
    let (nf, kf, df) = (n as f64, k as f64, delta as f64);
    let threshold_radius = (nf - (nf * (nf - 4.0 * df) + 4.0 * kf * df + 4.0 * kf).sqrt()) / 2.0;
    Ok(BoundReport { lower_bound, asymptotic_exponent, threshold_radius })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gabidulin::GabidulinCode;

    fn worked_code() -> LiftedCode {
        let f4 = Field::extension(2, 2, None).unwrap();
        let g = vec![f4.alpha(), f4.one()];
        LiftedCode::new(GabidulinCode::new(&f4, 2, 2, Some(g)).unwrap())
    }

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn space(rows: &[&[u64]]) -> Subspace {
        Subspace::from_rows(&Matrix::from_ints(&f2(), rows)).unwrap()
    }

    fn row_ints(m: &Matrix, r: usize) -> Vec<u64> {
        m.row(r).iter().map(|e| e.coeffs()[0]).collect()
    }

    #[test]
    fn worked_decoding_first_received_word() {
        let code = worked_code();
        let r1 = space(&[&[1, 0, 1, 0], &[0, 0, 0, 1]]);
        let SystemOutcome::System(sys) = build_mixed_system(&code, &r1, Metric::Subspace, 2)
        else {
            panic!("expected a system");
        };
        assert_eq!(
            sys.origins(),
            &[RowOrigin::ParityCheck, RowOrigin::ParityCheck, RowOrigin::Ball, RowOrigin::Pin]
        );
        assert_eq!(row_ints(sys.rows(), 2), vec![1, 0, 0, 1, 0, 0]);
        let solutions = solve_mixed(&sys).unwrap();
        let texts: BTreeSet<String> = solutions.iter().map(|x| x.to_text()).collect();
        let expected: BTreeSet<String> =
            ["1:1:1:1:0:1", "1:0:1:1:1:1"].iter().map(|s| s.to_string()).collect();
        assert_eq!(texts, expected);
        let list = list_decode_plucker(&code, &r1, Metric::Subspace, 2).unwrap();
        assert_eq!(
            list.codewords(),
            &[
                space(&[&[1, 0, 1, 0], &[0, 1, 1, 1]]),
                space(&[&[1, 0, 1, 1], &[0, 1, 0, 1]]),
            ]
        );
    }

    #[test]
    fn worked_decoding_second_received_word() {
        let code = worked_code();
        let r2 = space(&[&[1, 0, 0, 1], &[0, 1, 1, 1]]);
        let SystemOutcome::System(sys) = build_mixed_system(&code, &r2, Metric::Subspace, 2)
        else {
            panic!("expected a system");
        };
        // the five-term ball equation and the single shuffle relation
        assert_eq!(row_ints(sys.rows(), 2), vec![1, 1, 0, 1, 1, 1]);
        assert_eq!(sys.shuffles().len(), 1);
        let solutions = solve_mixed(&sys).unwrap();
        // project onto (x13, x14, x23, x24) as in the worked example
        let mut projected: Vec<Vec<u64>> = solutions
            .iter()
            .map(|x| x.coords()[1..5].iter().map(|e| e.coeffs()[0]).collect())
            .collect();
        projected.sort();
        assert_eq!(projected, vec![vec![0, 1, 1, 1], vec![1, 0, 0, 1], vec![1, 1, 1, 0]]);
        let list = list_decode_plucker(&code, &r2, Metric::Subspace, 2).unwrap();
        assert_eq!(list.len(), 3);
        assert!(list.contains(&space(&[&[1, 0, 0, 1], &[0, 1, 1, 0]])));
        assert!(list.contains(&space(&[&[1, 0, 1, 1], &[0, 1, 0, 1]])));
        assert!(list.contains(&space(&[&[1, 0, 1, 0], &[0, 1, 1, 1]])));
    }

    #[test]
    fn degenerate_radii() {
        let code = worked_code();
        // an empty ball: dim-1 received word, radius 0 cannot reach dim 2
        let thin = space(&[&[0, 1, 1, 1]]);
        assert!(matches!(
            build_mixed_system(&code, &thin, Metric::Subspace, 0),
            SystemOutcome::Empty
        ));
        assert!(list_decode_plucker(&code, &thin, Metric::Subspace, 0).unwrap().is_empty());
        assert!(list_decode_rational(&code, &thin, Metric::Subspace, 0).unwrap().is_empty());
        // a full ball: radius 4 covers all of G_2(2,4), so no ball rows and
        // the decoder returns the entire code
        let r2 = space(&[&[1, 0, 0, 1], &[0, 1, 1, 1]]);
        let SystemOutcome::System(sys) = build_mixed_system(&code, &r2, Metric::Subspace, 4)
        else {
            panic!("expected a system");
        };
        assert!(!sys.origins().contains(&RowOrigin::Ball));
        let list = list_decode_plucker(&code, &r2, Metric::Subspace, 4).unwrap();
        assert_eq!(list.len(), 4);
        let rational = list_decode_rational(&code, &r2, Metric::Subspace, 4).unwrap();
        assert_eq!(rational.codewords(), list.codewords());
    }

    #[test]
    fn radius_zero_at_a_codeword() {
        let code = worked_code();
        let cw = space(&[&[1, 0, 0, 1], &[0, 1, 1, 0]]);
        for metric in [Metric::Subspace, Metric::Injection] {
            let list = list_decode_plucker(&code, &cw, metric, 0).unwrap();
            assert_eq!(list.codewords(), std::slice::from_ref(&cw));
        }
    }

    #[test]
    fn worked_rational_parameter_solutions() {
        let code = worked_code();
        let r2 = space(&[&[1, 0, 0, 1], &[0, 1, 1, 1]]);
        let sols = rational_solutions(&code, &r2, Metric::Subspace, 2).unwrap();
        let mut tuples: Vec<(u64, u64, u64, u64)> = sols
            .iter()
            .map(|s| {
                (
                    s.x[(0, 0)].coeffs()[0],
                    s.x[(1, 0)].coeffs()[0],
                    s.y[(0, 0)].coeffs()[0],
                    s.y[(0, 1)].coeffs()[0],
                )
            })
            .collect();
        tuples.sort();
        assert_eq!(tuples, vec![(0, 1, 0, 1), (1, 0, 1, 1), (1, 1, 1, 0)]);
        // the identity constraint pins V1 = I for this received word
        for s in &sols {
            assert_eq!(s.v1, Matrix::identity(&f2(), 2));
        }
        let list = list_decode_rational(&code, &r2, Metric::Subspace, 2).unwrap();
        assert_eq!(list.len(), 3);
    }

    #[test]
    fn worked_rational_dim_one_received_word() {
        let code = worked_code();
        let thin = space(&[&[0, 1, 1, 1]]);
        let sols = rational_solutions(&code, &thin, Metric::Subspace, 1).unwrap();
        assert_eq!(sols.len(), 1);
        let s = &sols[0];
        let tuple = (
            s.x[(0, 0)].coeffs()[0],
            s.x[(1, 0)].coeffs()[0],
            s.y[(0, 0)].coeffs()[0],
            s.y[(0, 1)].coeffs()[0],
            s.y[(0, 2)].coeffs()[0],
        );
        assert_eq!(tuple, (1, 0, 1, 1, 0));
        let list = list_decode_rational(&code, &thin, Metric::Subspace, 1).unwrap();
        assert_eq!(list.codewords(), &[space(&[&[1, 0, 1, 0], &[0, 1, 1, 1]])]);
    }

    #[test]
    fn three_decoders_agree_on_a_sample() {
        let code = worked_code();
        let received = [
            space(&[&[1, 0, 1, 0], &[0, 0, 0, 1]]),
            space(&[&[1, 0, 0, 1], &[0, 1, 1, 1]]),
            space(&[&[0, 1, 1, 1]]),
            space(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 1]]),
        ];
        for r in &received {
            for metric in [Metric::Subspace, Metric::Injection] {
                for radius in 0..=4 {
                    let oracle = oracle_list_decode(&code, r, metric, radius);
                    let p = list_decode_plucker(&code, r, metric, radius).unwrap();
                    let q = list_decode_rational(&code, r, metric, radius).unwrap();
                    assert_eq!(p.as_set(), oracle.as_set(), "{r:?} {metric:?} r={radius}");
                    assert_eq!(q.as_set(), oracle.as_set(), "{r:?} {metric:?} r={radius}");
                }
            }
        }
    }

    #[test]
    fn removing_a_linear_row_never_shrinks_the_solution_set() {
        let code = worked_code();
        let r2 = space(&[&[1, 0, 0, 1], &[0, 1, 1, 1]]);
        let SystemOutcome::System(sys) = build_mixed_system(&code, &r2, Metric::Subspace, 2)
        else {
            panic!("expected a system");
        };
        let full: BTreeSet<String> =
            solve_mixed(&sys).unwrap().iter().map(|x| x.to_text()).collect();
        for drop in 0..sys.rows().rows() {
            let relaxed = sys.without_row(drop);
            let bigger: BTreeSet<String> =
                solve_mixed(&relaxed).unwrap().iter().map(|x| x.to_text()).collect();
            assert!(bigger.is_superset(&full), "dropping row {drop} lost solutions");
        }
    }

    #[test]
    fn inconsistent_linear_system_yields_no_solutions() {
        let f = f2();
        let rows = Matrix::from_ints(&f, &[&[1, 0], &[1, 0]]);
        let rhs = vec![f.zero(), f.one()];
        let sys = MixedSystem {
            field: f.clone(),
            n: 2,
            k: 1,
            rows,
            rhs,
            origins: vec![RowOrigin::Ball, RowOrigin::Pin],
            shuffles: Vec::new(),
        };
        assert!(solve_mixed(&sys).unwrap().is_empty());
    }

    #[test]
    fn budget_error_names_the_count() {
        let f = f2();
        // 30 completely free variables blow the 24-bit budget
        let sys = MixedSystem {
            field: f.clone(),
            n: 30,
            k: 1,
            rows: Matrix::zeros(&f, 0, 30),
            rhs: Vec::new(),
            origins: Vec::new(),
            shuffles: Vec::new(),
        };
        let err = solve_mixed(&sys).unwrap_err();
        assert_eq!(
            err,
            DecodeError::BudgetExceeded { free_vars: 30, q: 2, candidates: 1 << 30 }
        );
        assert!(err.to_string().contains("30 free variables"));
    }

    #[test]
    fn decode_list_json_shape() {
        let code = worked_code();
        let r1 = space(&[&[1, 0, 1, 0], &[0, 0, 0, 1]]);
        let list = list_decode_plucker(&code, &r1, Metric::Subspace, 2).unwrap();
        let v = list.to_json();
        assert_eq!(v["method"], "plucker");
        assert_eq!(v["metric"], "subspace");
        assert_eq!(v["radius"], 2);
        assert_eq!(v["codewords"][0][0], serde_json::json!([1, 0, 1, 0]));
        assert_eq!(v["codewords"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn bound_report_worked_values() {
        let b = list_size_lower_bound(Metric::Subspace, 2, 4, 2, 2, 2).unwrap();
        assert_eq!(b.lower_bound, BigRational::from(BigInt::from(3)));
        assert_eq!(b.asymptotic_exponent, 1);
        assert!((b.threshold_radius - (4.0 - 8f64.sqrt()) / 2.0).abs() < 1e-12);
        assert_eq!(b.to_json()["lower_bound"]["numerator"], "3");
        assert_eq!(b.to_json()["lower_bound"]["denominator"], "1");
        // the injection bound at t = 1 coincides here
        let bi = list_size_lower_bound(Metric::Injection, 1, 4, 2, 2, 2).unwrap();
        assert_eq!(bi.lower_bound, b.lower_bound);
        // t = 0 gives the trivial bound 1
        let b0 = list_size_lower_bound(Metric::Subspace, 0, 4, 2, 2, 2).unwrap();
        assert_eq!(b0.lower_bound, BigRational::new(BigInt::from(1), BigInt::from(4)));
    }

    #[test]
    fn bound_when_t_equals_delta_minus_one() {
        // [k delta-1]_q with no q-power correction
        let b = list_size_lower_bound(Metric::Injection, 1, 8, 3, 2, 2).unwrap();
        assert_eq!(
            b.lower_bound,
            BigRational::from(BigInt::from(gaussian_binomial(3, 1, 2)))
        );
    }

    #[test]
    fn bound_rejects_out_of_range_parameters() {
        // t = delta
        assert!(list_size_lower_bound(Metric::Subspace, 4, 4, 2, 2, 2).is_err());
        // delta > k
        assert!(list_size_lower_bound(Metric::Subspace, 2, 4, 2, 3, 2).is_err());
        // k > n/2
        assert!(list_size_lower_bound(Metric::Subspace, 2, 4, 3, 2, 2).is_err());
    }
}
