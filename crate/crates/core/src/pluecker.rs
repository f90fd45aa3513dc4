//! The Pluecker embedding of the Grassmannian: multi-indices and the Bruhat
//! order, projective coordinate vectors of maximal minors, the quadratic
//! shuffle relations cutting out the image, inversion back to a subspace,
//! and the compound matrix carrying the right `GL_n` action.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::subspace::{combinations, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlueckerError {
    #[error("multi-index {entries:?} is not strictly increasing within 1..={n}")]
    BadMultiIndex { entries: Vec<usize>, n: usize },
    #[error("coordinate vector has length {got}, expected C({n},{k}) = {expected}")]
    BadLength { n: usize, k: usize, got: usize, expected: usize },
    #[error("coordinate vector is zero")]
    ZeroVector,
    #[error("coordinates violate a shuffle relation; not a point of the Grassmannian")]
    ShuffleViolation,
    #[error("cannot parse Pluecker vector: {0}")]
    BadText(String),
}

/// A strictly increasing tuple of column indices in `1..=n`, identifying one
/// Pluecker coordinate (equivalently, one maximal minor).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    entries: Vec<usize>,
    n: usize,
}

impl MultiIndex {
    pub fn new(entries: Vec<usize>, n: usize) -> Result<MultiIndex, PlueckerError> {
        let increasing = entries.windows(2).all(|w| w[0] < w[1]);
        let in_range = entries.iter().all(|&e| e >= 1 && e <= n);
        if !increasing || !in_range {
            return Err(PlueckerError::BadMultiIndex { entries, n });
        }
        Ok(MultiIndex { entries, n })
    }

    /// 1-based entries.
    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// 0-based entries, for matrix indexing.
    pub fn zero_based(&self) -> Vec<usize> {
        self.entries.iter().map(|&e| e - 1).collect()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Componentwise (Bruhat) comparison: `self ⪯ other` iff every entry of
    /// `self` is at most the matching entry of `other`.
    pub fn bruhat_leq(&self, other: &MultiIndex) -> bool {
        assert_eq!(self.len(), other.len(), "Bruhat order compares equal lengths");
        self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    /// Lexicographic order on the entry tuples.
    fn cmp(&self, other: &Self) -> Ordering {
        self.entries.cmp(&other.entries)
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

/// All multi-indices of length `k` in `1..=n`, lexicographically ordered.
pub fn multiindices(n: usize, k: usize) -> Vec<MultiIndex> {
    combinations(n, k)
        .into_iter()
        .map(|c| MultiIndex { entries: c.into_iter().map(|e| e + 1).collect(), n })
        .collect()
}

/// Position of `idx` in the lexicographic list `multiindices(n, k)`.
pub fn lex_position(idx: &MultiIndex) -> usize {
    // combinatorial rank of the 0-based combination
    let n = idx.n;
    let k = idx.len();
    let mut rank = 0usize;
    let mut prev = 0usize; // next candidate entry, 0-based
    for (pos, &e) in idx.zero_based().iter().enumerate() {
        for skipped in prev..e {
            rank += binomial(n - skipped - 1, k - pos - 1);
        }
        prev = e + 1;
    }
    rank
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// A normalized point of projective Pluecker space: the vector of all
/// `C(n,k)` maximal minors in lexicographic index order, scaled so the first
/// nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq)]
pub struct PlueckerVector {
    field: Field,
    n: usize,
    k: usize,
    coords: Vec<FieldElement>,
}

impl PlueckerVector {
    /// Normalize raw coordinates; rejects the zero vector and wrong lengths.
    pub fn from_coords(
        field: &Field,
        n: usize,
        k: usize,
        coords: Vec<FieldElement>,
    ) -> Result<PlueckerVector, PlueckerError> {
        let expected = binomial(n, k);
        if coords.len() != expected {
            return Err(PlueckerError::BadLength { n, k, got: coords.len(), expected });
        }
        let Some(first) = coords.iter().find(|c| !c.is_zero()) else {
            return Err(PlueckerError::ZeroVector);
        };
        let inv = first.inverse().unwrap();
        let coords = coords.iter().map(|c| c.mul(&inv)).collect();
        Ok(PlueckerVector { field: field.clone(), n, k, coords })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn coordinate(&self, idx: &MultiIndex) -> &FieldElement {
        assert_eq!(idx.ambient(), self.n);
        assert_eq!(idx.len(), self.k);
        &self.coords[lex_position(idx)]
    }

    /// Colon-separated text form, e.g. `1:1:0:0:1:1`.
    pub fn to_text(&self) -> String {
        self.coords
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(":")
    }

    pub fn parse_text(field: &Field, n: usize, k: usize, text: &str) -> Result<PlueckerVector, PlueckerError> {
        let coords: Result<Vec<FieldElement>, _> = text
            .trim()
            .split(':')
            .map(|tok| field.parse_element(tok))
            .collect();
        let coords = coords.map_err(|e| PlueckerError::BadText(e.to_string()))?;
        PlueckerVector::from_coords(field, n, k, coords)
    }

    /// Check all shuffle relations for `(n, k)`.
    pub fn satisfies_shuffle_relations(&self) -> bool {
        shuffle_relations(self.n, self.k)
            .iter()
            .all(|rel| rel.evaluate(self).is_zero())
    }
}

impl fmt::Debug for PlueckerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_text())
    }
}

/// The Pluecker embedding: all maximal minors of the canonical basis matrix,
/// normalized projectively.
pub fn plucker_embed(u: &Subspace) -> PlueckerVector {
    let k = u.dim();
    let n = u.ambient_dim();
    assert!(k >= 1, "the embedding needs a positive-dimensional subspace");
    let rows: Vec<usize> = (0..k).collect();
    let coords: Vec<FieldElement> = multiindices(n, k)
        .iter()
        .map(|idx| u.basis().minor(&rows, &idx.zero_based()))
        .collect();
    PlueckerVector::from_coords(u.field(), n, k, coords).expect("a basis has a nonzero maximal minor")
}

/// Invert the embedding: reconstruct the subspace whose Pluecker vector is
/// `x`. Rejects vectors violating the shuffle relations.
pub fn plucker_inverse(x: &PlueckerVector) -> Result<Subspace, PlueckerError> {
    if !x.satisfies_shuffle_relations() {
        return Err(PlueckerError::ShuffleViolation);
    }
    let indices = multiindices(x.n, x.k);
    let lead = x
        .coords
        .iter()
        .position(|c| !c.is_zero())
        .expect("normalized vector is nonzero");
    let pivot = &indices[lead];
    // Row r of the representative: entry at column j is (up to the sign of
    // sorting j into pivot∖{i_r}) the coordinate at (pivot∖{i_r}) ∪ {j}.
    let mut m = Matrix::zeros(&x.field, x.k, x.n);
    for r in 0..x.k {
        let keep: Vec<usize> = pivot
            .entries()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != r)
            .map(|(_, &e)| e)
            .collect();
        for j in 1..=x.n {
            if keep.contains(&j) {
                continue;
            }
            let mut merged = keep.clone();
            let pos = merged.partition_point(|&e| e < j);
            merged.insert(pos, j);
            let idx = MultiIndex::new(merged, x.n).unwrap();
            let coord = x.coordinate(&idx);
            // moving j from sorted slot pos to row slot r costs (pos - r) swaps
            let value = if (pos as i64 - r as i64) % 2 == 0 {
                coord.clone()
            } else {
                coord.neg()
            };
            m[(r, j - 1)] = value;
        }
    }
    let sub = Subspace::from_rows(&m).map_err(|_| PlueckerError::ShuffleViolation)?;
    if sub.dim() != x.k || &plucker_embed(&sub) != x {
        return Err(PlueckerError::ShuffleViolation);
    }
    Ok(sub)
}

/// One quadratic shuffle relation: a signed sum of coordinate products
/// `sum_t c_t * x_{left_t} x_{right_t} = 0` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleRelation {
    terms: Vec<(i64, MultiIndex, MultiIndex)>,
}

impl ShuffleRelation {
    pub fn terms(&self) -> &[(i64, MultiIndex, MultiIndex)] {
        &self.terms
    }

    pub fn evaluate(&self, x: &PlueckerVector) -> FieldElement {
        let field = x.field();
        let q = field.characteristic();
        let mut acc = field.zero();
        for (c, left, right) in &self.terms {
            let c_mod = c.rem_euclid(q as i64) as u64;
            if c_mod == 0 {
                continue;
            }
            let coeff = field.from_int(c_mod);
            acc = acc.add(&coeff.mul(&x.coordinate(left).mul(x.coordinate(right))));
        }
        acc
    }
}

/// Generate the shuffle relations for `G(k, n)`, deduplicated up to overall
/// sign and monomial order, leading coefficient positive. For `k = 1` or
/// `k = n` there are none.
pub fn shuffle_relations(n: usize, k: usize) -> Vec<ShuffleRelation> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    if k == 0 || k + 1 > n {
        return out;
    }
    let heads = multiindices(n, k + 1);
    let tails = multiindices(n, k - 1);
    for head in &heads {
        for tail in &tails {
            // sum over positions l in the head: sign (-1)^(l-1), minor of the
            // head with slot l removed, times the minor (head_l, tail) sorted
            let mut terms: Vec<(i64, MultiIndex, MultiIndex)> = Vec::new();
            for (l, &j) in head.entries().iter().enumerate() {
                if tail.entries().contains(&j) {
                    continue; // repeated column: the minor vanishes
                }
                let left: Vec<usize> = head
                    .entries()
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != l)
                    .map(|(_, &e)| e)
                    .collect();
                let mut right = tail.entries().to_vec();
                let pos = right.partition_point(|&e| e < j);
                right.insert(pos, j);
                let mut sign = if l % 2 == 0 { 1i64 } else { -1 };
                if pos % 2 == 1 {
                    sign = -sign;
                }
                terms.push((
                    sign,
                    MultiIndex::new(left, n).unwrap(),
                    MultiIndex::new(right, n).unwrap(),
                ));
            }
            if let Some(rel) = canonicalize(terms) {
                let key: Vec<(i64, Vec<usize>, Vec<usize>)> = rel
                    .terms
                    .iter()
                    .map(|(c, a, b)| (*c, a.entries().to_vec(), b.entries().to_vec()))
                    .collect();
                if seen.insert(key) {
                    out.push(rel);
                }
            }
        }
    }
    out
}

/// Combine like monomials, sort them, fix the leading sign to `+`. Returns
/// `None` when everything cancels.
fn canonicalize(terms: Vec<(i64, MultiIndex, MultiIndex)>) -> Option<ShuffleRelation> {
    use std::collections::BTreeMap;
    let mut combined: BTreeMap<(Vec<usize>, Vec<usize>), (i64, MultiIndex, MultiIndex)> =
        BTreeMap::new();
    for (c, a, b) in terms {
        // the monomial x_a x_b is unordered; store with the lex-smaller first
        let (a, b) = if a.entries() <= b.entries() { (a, b) } else { (b, a) };
        let key = (a.entries().to_vec(), b.entries().to_vec());
        combined
            .entry(key)
            .and_modify(|slot| slot.0 += c)
            .or_insert((c, a, b));
    }
    let terms: Vec<(i64, MultiIndex, MultiIndex)> = combined
        .into_values()
        .filter(|(c, _, _)| *c != 0)
        .collect();
    if terms.is_empty() {
        return None;
    }
    let flip = terms[0].0 < 0;
    let terms = terms
        .into_iter()
        .map(|(c, a, b)| (if flip { -c } else { c }, a, b))
        .collect();
    Some(ShuffleRelation { terms })
}

/// The compound matrix of `A` for exterior degree `k`: the `C(n,k) x C(n,k)`
/// matrix whose entry at (row set I, column set J) is the minor of `A` with
/// rows I and columns J. It carries the `GL_n` action to Pluecker space:
/// `phi(U A) = phi(U) phi_bar(A)`. The input must be invertible.
pub fn phi_bar(a: &Matrix, k: usize) -> Matrix {
    assert_eq!(a.rows(), a.cols(), "compound matrix of a square matrix only");
    assert!(a.is_invertible(), "compound matrix requires an invertible input");
    let n = a.rows();
    let indices = multiindices(n, k);
    let m = indices.len();
    Matrix::from_fn(a.field(), m, m, |i, j| {
        a.minor(&indices[i].zero_based(), &indices[j].zero_based())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::enumerate_grassmannian;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn space(field: &Field, rows: &[&[u64]]) -> Subspace {
        Subspace::from_rows(&Matrix::from_ints(field, rows)).unwrap()
    }

    fn pv(field: &Field, n: usize, k: usize, text: &str) -> PlueckerVector {
        PlueckerVector::parse_text(field, n, k, text).unwrap()
    }

    #[test]
    fn multiindex_validation_and_lex_order() {
        assert!(MultiIndex::new(vec![1, 3, 4], 6).is_ok());
        assert!(MultiIndex::new(vec![1, 1, 4], 6).is_err());
        assert!(MultiIndex::new(vec![3, 1], 6).is_err());
        assert!(MultiIndex::new(vec![1, 7], 6).is_err());

        let list = multiindices(4, 2);
        let entries: Vec<Vec<usize>> = list.iter().map(|i| i.entries().to_vec()).collect();
        assert_eq!(
            entries,
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]
        );
        for (p, idx) in list.iter().enumerate() {
            assert_eq!(lex_position(idx), p);
        }
        assert_eq!(multiindices(6, 3).len(), 20);
    }

    #[test]
    fn bruhat_comparisons() {
        let mk = |e: &[usize]| MultiIndex::new(e.to_vec(), 7).unwrap();
        assert!(mk(&[1, 2, 7]).bruhat_leq(&mk(&[2, 3, 7])));
        assert!(!mk(&[2, 3, 7]).bruhat_leq(&mk(&[1, 2, 7])));
        // incomparable pair
        assert!(!mk(&[1, 5, 6]).bruhat_leq(&mk(&[2, 3, 7])));
        assert!(!mk(&[2, 3, 7]).bruhat_leq(&mk(&[1, 5, 6])));
        // reflexivity
        assert!(mk(&[1, 4, 5]).bruhat_leq(&mk(&[1, 4, 5])));
    }

    #[test]
    fn embedding_reproduces_worked_table() {
        let f = f2();
        let rows: [(&[&[u64]], &str); 4] = [
            (&[&[1, 0, 0, 0], &[0, 1, 0, 0]], "1:0:0:0:0:0"),
            (&[&[1, 0, 0, 1], &[0, 1, 1, 0]], "1:1:0:0:1:1"),
            (&[&[1, 0, 1, 1], &[0, 1, 0, 1]], "1:0:1:1:1:1"),
            (&[&[1, 0, 1, 0], &[0, 1, 1, 1]], "1:1:1:1:0:1"),
        ];
        for (basis, expect) in rows {
            let u = space(&f, basis);
            assert_eq!(plucker_embed(&u).to_text(), expect);
        }
    }

    #[test]
    fn embedding_is_injective_and_representative_independent() {
        let f = f2();
        let points = enumerate_grassmannian(&f, 2, 4).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for u in &points {
            let x = plucker_embed(u);
            assert!(seen.insert(x.to_text()), "embedding collided on {u:?}");
        }
        // a non-RREF representative of the same subspace embeds identically
        let u = space(&f, &[&[1, 1, 1, 1], &[0, 1, 1, 0]]);
        let v = space(&f, &[&[1, 0, 0, 1], &[0, 1, 1, 0]]);
        assert_eq!(u, v);
        assert_eq!(plucker_embed(&u), plucker_embed(&v));
    }

    #[test]
    fn inverse_round_trips_all_points() {
        let f = f2();
        for (k, n) in [(1, 4), (2, 4), (3, 4), (2, 5)] {
            for u in enumerate_grassmannian(&f, k, n).unwrap() {
                assert_eq!(plucker_inverse(&plucker_embed(&u)).unwrap(), u);
            }
        }
        let f3 = Field::prime(3).unwrap();
        for u in enumerate_grassmannian(&f3, 2, 4).unwrap() {
            assert_eq!(plucker_inverse(&plucker_embed(&u)).unwrap(), u);
        }
    }

    #[test]
    fn inverse_on_table_vector() {
        let f = f2();
        let x = pv(&f, 4, 2, "1:1:1:1:0:1");
        let u = plucker_inverse(&x).unwrap();
        assert_eq!(u, space(&f, &[&[1, 0, 1, 0], &[0, 1, 1, 1]]));
    }

    #[test]
    fn inverse_rejects_shuffle_violations() {
        let f = f2();
        // x12 x34 + x13 x24 + x14 x23 = 1 for this vector
        let x = pv(&f, 4, 2, "1:0:0:0:0:1");
        assert_eq!(plucker_inverse(&x).unwrap_err(), PlueckerError::ShuffleViolation);
    }

    #[test]
    fn normalization_and_zero_rejection() {
        let f3 = Field::prime(3).unwrap();
        let coords: Vec<_> = [0, 2, 1, 0, 2, 2].iter().map(|&v| f3.from_int(v)).collect();
        let x = PlueckerVector::from_coords(&f3, 4, 2, coords).unwrap();
        // scaled by 2^{-1} = 2 so the first nonzero becomes 1
        assert_eq!(x.to_text(), "0:1:2:0:1:1");
        let zeros = vec![f3.zero(); 6];
        assert_eq!(
            PlueckerVector::from_coords(&f3, 4, 2, zeros).unwrap_err(),
            PlueckerError::ZeroVector
        );
        let short = vec![f3.one(); 5];
        assert!(matches!(
            PlueckerVector::from_coords(&f3, 4, 2, short),
            Err(PlueckerError::BadLength { expected: 6, got: 5, .. })
        ));
    }

    #[test]
    fn shuffle_relation_for_g24() {
        let rels = shuffle_relations(4, 2);
        assert_eq!(rels.len(), 1);
        let terms: Vec<(i64, Vec<usize>, Vec<usize>)> = rels[0]
            .terms()
            .iter()
            .map(|(c, a, b)| (*c, a.entries().to_vec(), b.entries().to_vec()))
            .collect();
        assert_eq!(
            terms,
            vec![
                (1, vec![1, 2], vec![3, 4]),
                (-1, vec![1, 3], vec![2, 4]),
                (1, vec![1, 4], vec![2, 3]),
            ]
        );
    }

    #[test]
    fn shuffle_relation_counts() {
        assert_eq!(shuffle_relations(5, 2).len(), 5);
        assert!(shuffle_relations(4, 1).is_empty());
        assert!(shuffle_relations(4, 4).is_empty());
        // never more than C(n,k+1) * C(n,k-1) raw pairs
        let rels = shuffle_relations(5, 3);
        assert!(rels.len() <= binomial(5, 4) * binomial(5, 2));
    }

    #[test]
    fn vanishing_locus_matches_grassmannian() {
        // normalized vectors satisfying every relation are exactly the
        // embedded points
        for (q, n, k) in [(2u64, 4usize, 2usize), (2, 5, 2), (3, 4, 2), (3, 5, 2)] {
            let field = Field::prime(q).unwrap();
            let rels = shuffle_relations(n, k);
            let dim = binomial(n, k);
            let elems: Vec<FieldElement> = field.elements().collect();
            let mut satisfying = 0u64;
            let total = (q as u128).pow(dim as u32);
            for mut i in 0..total {
                let mut coords = Vec::with_capacity(dim);
                for _ in 0..dim {
                    coords.push(elems[(i % q as u128) as usize].clone());
                    i /= q as u128;
                }
                let Ok(x) = PlueckerVector::from_coords(&field, n, k, coords.clone()) else {
                    continue;
                };
                // count only normalized representatives to count projective points
                if coords != x.coords {
                    continue;
                }
                if rels.iter().all(|r| r.evaluate(&x).is_zero()) {
                    satisfying += 1;
                }
            }
            let expected: u64 = crate::subspace::gaussian_binomial(n, k, q).try_into().unwrap();
            assert_eq!(satisfying, expected, "vanishing locus mismatch for q={q} ({k},{n})");
        }
    }

    #[test]
    fn embedded_points_satisfy_relations() {
        let f = f2();
        for u in enumerate_grassmannian(&f, 2, 5).unwrap() {
            assert!(plucker_embed(&u).satisfies_shuffle_relations());
        }
    }

    #[test]
    fn phi_bar_carries_the_action() {
        let f = f2();
        let a = Matrix::from_ints(
            &f,
            &[&[1, 0, 0, 1], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 1, 0, 0]],
        );
        let ab = phi_bar(&a, 2);
        for u in enumerate_grassmannian(&f, 2, 4).unwrap() {
            let lhs = plucker_embed(&u.act(&a));
            let raw = Matrix::new(&f, 1, 6, plucker_embed(&u).coords().to_vec());
            let rhs_raw = raw.mat_mul(&ab);
            let rhs = PlueckerVector::from_coords(&f, 4, 2, rhs_raw.row(0).to_vec()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn phi_bar_multiplicative_and_inverts() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let f3 = Field::prime(3).unwrap();
        let mut rng = StdRng::seed_from_u64(5);
        let mut random_invertible = || loop {
            let m = Matrix::from_fn(&f3, 4, 4, |_, _| f3.from_int(rng.gen_range(0..3)));
            if m.is_invertible() {
                return m;
            }
        };
        for _ in 0..10 {
            let a = random_invertible();
            let b = random_invertible();
            assert_eq!(phi_bar(&a.mat_mul(&b), 2), phi_bar(&a, 2).mat_mul(&phi_bar(&b, 2)));
            assert_eq!(
                phi_bar(&a.inverse().unwrap(), 2),
                phi_bar(&a, 2).inverse().unwrap()
            );
        }
    }

    #[test]
    fn phi_bar_worked_column() {
        // the last column of phi_bar(A1^{-1}) in the worked decoding example
        let f = f2();
        let a1_inv = Matrix::from_ints(
            &f,
            &[&[1, 0, 0, 1], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 1, 0, 0]],
        );
        let m = phi_bar(&a1_inv, 2);
        let last: Vec<u64> = (0..6).map(|i| m[(i, 5)].coeffs()[0]).collect();
        assert_eq!(last, vec![1, 0, 0, 1, 0, 0]);
    }

    #[test]
    #[should_panic(expected = "invertible")]
    fn phi_bar_rejects_singular() {
        let f = f2();
        let _ = phi_bar(&Matrix::zeros(&f, 3, 3), 2);
    }

    #[test]
    fn pluecker_text_roundtrip() {
        let f = f2();
        let x = pv(&f, 4, 2, "1:1:0:0:1:1");
        assert_eq!(x.to_text(), "1:1:0:0:1:1");
        assert!(PlueckerVector::parse_text(&f, 4, 2, "1:2:0").is_err());
    }
}
