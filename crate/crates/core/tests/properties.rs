//! Randomized property tests. Structured inputs (fields, matrices,
//! subspaces) are drawn from seeded generators so every failure replays;
//! the exhaustive counterparts of these properties live in the acceptance
//! suite.

use grasscode::balls::effective_radius;
use grasscode::channel::transmit_with_rng;
use grasscode::field::{Field, FieldElement};
use grasscode::gabidulin::GabidulinCode;
use grasscode::linalg::{solve_affine, Matrix};
use grasscode::pluecker::{phi_bar, plucker_embed, plucker_inverse, PlueckerVector};
use grasscode::subspace::{gaussian_binomial, Metric, Subspace};
use num::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// The small fields the random suites draw from.
fn field(choice: usize) -> Field {
    match choice % 5 {
        0 => Field::prime(2).unwrap(),
        1 => Field::prime(3).unwrap(),
        2 => Field::prime(5).unwrap(),
        3 => Field::extension(2, 2, None).unwrap(),
        _ => Field::extension(3, 2, None).unwrap(),
    }
}

fn random_matrix(field: &Field, rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    let elems: Vec<FieldElement> = field.elements().collect();
    Matrix::from_fn(field, rows, cols, |_, _| elems[rng.gen_range(0..elems.len())].clone())
}

fn random_invertible(field: &Field, n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let m = random_matrix(field, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

fn random_subspace(field: &Field, dim: usize, n: usize, rng: &mut impl Rng) -> Subspace {
    loop {
        if let Ok(u) = Subspace::from_rows(&random_matrix(field, dim, n, rng)) {
            if u.dim() == dim {
                return u;
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms(choice in 0usize..5, ia in 0usize..9, ib in 0usize..9, ic in 0usize..9) {
        let f = field(choice);
        let elems: Vec<FieldElement> = f.elements().collect();
        let (a, b, c) = (
            &elems[ia % elems.len()],
            &elems[ib % elems.len()],
            &elems[ic % elems.len()],
        );
        prop_assert_eq!(a.add(b), b.add(a));
        prop_assert_eq!(a.mul(b), b.mul(a));
        prop_assert_eq!(a.add(&b.add(c)), a.add(b).add(c));
        prop_assert_eq!(a.mul(&b.mul(c)), a.mul(b).mul(c));
        prop_assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
        prop_assert_eq!(a.sub(a), f.zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inverse().unwrap()), f.one());
        }
        // the Frobenius x -> x^q is a field automorphism fixing the prime field
        let q = f.characteristic();
        prop_assert_eq!(a.add(b).frobenius(1), a.frobenius(1).add(&b.frobenius(1)));
        prop_assert_eq!(a.mul(b).frobenius(1), a.frobenius(1).mul(&b.frobenius(1)));
        prop_assert_eq!(f.one().frobenius(1), f.one());
        prop_assert_eq!(a.frobenius(1), a.pow(q));
    }

    #[test]
    fn linalg_identities(choice in 0usize..5, n in 1usize..=4, seed: u64) {
        let f = field(choice);
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let a = random_matrix(&f, n, n, &mut rng);
        let b = random_matrix(&f, n, n, &mut rng);
        prop_assert_eq!(a.det().mul(&b.det()), a.mat_mul(&b).det());
        prop_assert_eq!(a.transpose().det(), a.det());
        if let Some(inv) = a.inverse() {
            prop_assert_eq!(a.mat_mul(&inv), Matrix::identity(&f, n));
            prop_assert_eq!(inv.mat_mul(&a), Matrix::identity(&f, n));
        } else {
            prop_assert!(a.det().is_zero());
        }
        // RREF is idempotent, rank-preserving, and row-space-preserving
        let (r, pivots) = a.rref();
        prop_assert_eq!(&r.rref().0, &r);
        prop_assert_eq!(pivots.len(), a.rank());
        prop_assert_eq!(a.stack(&r).rank(), a.rank());
        // kernel vectors really annihilate
        for v in a.kernel() {
            let prod = Matrix::new(&f, 1, n, v).mat_mul(&a.transpose());
            prop_assert!(prod.is_zero());
        }
    }

    #[test]
    fn affine_solutions_are_exact(
        choice in 0usize..5,
        rows in 1usize..=3,
        cols in 1usize..=4,
        seed: u64,
    ) {
        let f = field(choice);
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let a = random_matrix(&f, rows, cols, &mut rng);
        let x0: Vec<FieldElement> = (0..cols)
            .map(|_| {
                let elems: Vec<FieldElement> = f.elements().collect();
                elems[rng.gen_range(0..elems.len())].clone()
            })
            .collect();
        let b_mat = Matrix::new(&f, 1, cols, x0.clone()).mat_mul(&a.transpose());
        let b: Vec<FieldElement> = b_mat.row(0).to_vec();
        let sols = solve_affine(&a, &b);
        prop_assert!(!sols.is_empty());
        prop_assert_eq!(
            BigUint::from(sols.len()),
            BigUint::from(f.order()).pow(sols.dimension() as u32)
        );
        let mut seen_x0 = false;
        for x in sols.iter() {
            let axt = Matrix::new(&f, 1, cols, x.clone()).mat_mul(&a.transpose());
            prop_assert_eq!(axt.row(0), &b[..]);
            seen_x0 |= x == x0;
        }
        prop_assert!(seen_x0, "the planted solution was not enumerated");
    }

    #[test]
    fn metric_axioms(
        choice in 0usize..2,
        n in 3usize..=6,
        da in 1usize..=3,
        db in 1usize..=3,
        dc in 1usize..=3,
        seed: u64,
    ) {
        let f = field(choice);
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let u = random_subspace(&f, da.min(n), n, &mut rng);
        let v = random_subspace(&f, db.min(n), n, &mut rng);
        let w = random_subspace(&f, dc.min(n), n, &mut rng);
        for metric in [Metric::Subspace, Metric::Injection] {
            prop_assert_eq!(metric.distance(&u, &v), metric.distance(&v, &u));
            prop_assert_eq!(metric.distance(&u, &u), 0);
            prop_assert_eq!(metric.distance(&u, &v) == 0, u == v);
            prop_assert!(
                metric.distance(&u, &w) <= metric.distance(&u, &v) + metric.distance(&v, &w)
            );
            prop_assert_eq!(metric.distance(&u, &v), metric.distance(&u.dual(), &v.dual()));
        }
        // parity of d_S and the identity tying the two metrics together
        let (ds, di) = (u.d_subspace(&v), u.d_injection(&v));
        let (ku, kv) = (u.dim(), v.dim());
        prop_assert_eq!(ds % 2, (ku + kv) % 2);
        prop_assert_eq!(ds, 2 * di + ku + kv - 2 * ku.max(kv));
    }

    #[test]
    fn distances_are_action_invariant(
        choice in 0usize..2,
        n in 3usize..=5,
        da in 1usize..=3,
        db in 1usize..=3,
        seed: u64,
    ) {
        let f = field(choice);
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let u = random_subspace(&f, da.min(n), n, &mut rng);
        let v = random_subspace(&f, db.min(n), n, &mut rng);
        let t = random_invertible(&f, n, &mut rng);
        for metric in [Metric::Subspace, Metric::Injection] {
            prop_assert_eq!(
                metric.distance(&u.act(&t), &v.act(&t)),
                metric.distance(&u, &v)
            );
        }
    }

    #[test]
    fn effective_radius_keeps_subspace_balls(
        n in 3usize..=6,
        da in 1usize..=3,
        db in 1usize..=3,
        radius in 0usize..=7,
        seed: u64,
    ) {
        let f = field(0);
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let u = random_subspace(&f, da.min(n), n, &mut rng);
        let v = random_subspace(&f, db.min(n), n, &mut rng);
        // dropping the radius to matching parity never changes membership
        let eff = effective_radius(Metric::Subspace, u.dim(), v.dim(), radius);
        prop_assert!(eff <= radius);
        prop_assert_eq!(u.d_subspace(&v) <= radius, u.d_subspace(&v) <= eff);
    }

    #[test]
    fn plucker_roundtrips(choice in 0usize..2, n in 2usize..=6, k in 1usize..=3, seed: u64) {
        let f = field(choice);
        let k = k.min(n);
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let u = random_subspace(&f, k, n, &mut rng);
        let x = plucker_embed(&u);
        prop_assert!(x.satisfies_shuffle_relations());
        prop_assert_eq!(plucker_inverse(&x).unwrap(), u);
        // the text form parses back to the same point
        let again = PlueckerVector::parse_text(&f, n, k, &x.to_text()).unwrap();
        prop_assert_eq!(again, x);
    }

    #[test]
    fn compound_matrices_multiply(
        choice in 0usize..2,
        n in 2usize..=5,
        k in 1usize..=4,
        seed: u64,
    ) {
        let f = field(choice);
        let k = k.min(n);
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let a = random_invertible(&f, n, &mut rng);
        let b = random_invertible(&f, n, &mut rng);
        let (pa, pb) = (phi_bar(&a, k), phi_bar(&b, k));
        prop_assert_eq!(phi_bar(&a.mat_mul(&b), k), pa.mat_mul(&pb));
        prop_assert_eq!(phi_bar(&a.inverse().unwrap(), k), pa.inverse().unwrap());
    }

    #[test]
    fn compound_matrices_carry_the_action(
        choice in 0usize..2,
        n in 3usize..=5,
        k in 1usize..=3,
        seed: u64,
    ) {
        let f = field(choice);
        let k = k.min(n - 1);
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let u = random_subspace(&f, k, n, &mut rng);
        let a = random_invertible(&f, n, &mut rng);
        let x = plucker_embed(&u);
        let raw = Matrix::new(&f, 1, x.coords().len(), x.coords().to_vec());
        let moved = raw.mat_mul(&phi_bar(&a, k));
        let expected = PlueckerVector::from_coords(&f, n, k, moved.row(0).to_vec()).unwrap();
        prop_assert_eq!(plucker_embed(&u.act(&a)), expected);
    }

    #[test]
    fn gaussian_binomials_recur(n in 1usize..=12, k in 0usize..=12, q in 2u64..=5) {
        let k = k.min(n);
        prop_assert_eq!(gaussian_binomial(n, k, q), gaussian_binomial(n, n - k, q));
        if k >= 1 && k <= n - 1 {
            let lhs = gaussian_binomial(n, k, q);
            let rhs = BigUint::from(q).pow(k as u32) * gaussian_binomial(n - 1, k, q)
                + gaussian_binomial(n - 1, k - 1, q);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn lifted_codewords_have_spread_distance(ell in 2usize..=3, index in 0u128..64, seed: u64) {
        // liftings of an MRD code with delta = k form a spread-like code:
        // distinct codewords intersect trivially
        let f = Field::extension(2, ell, None).unwrap();
        let code = grasscode::gabidulin::LiftedCode::new(
            GabidulinCode::new(&f, 2, 2, None).unwrap(),
        );
        let count = code.codeword_count();
        let a = code.codeword(index % count);
        let b = code.codeword(seed as u128 % count);
        if a != b {
            prop_assert_eq!(a.intersection_dim(&b), 0);
            prop_assert_eq!(a.d_subspace(&b), 4);
        }
        prop_assert!(code.contains(&a));
    }

    #[test]
    fn channel_outputs_stay_near_the_input(
        deletions in 0usize..=2,
        insertions in 0usize..=2,
        seed: u64,
    ) {
        let f = Field::prime(2).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let v = random_subspace(&f, 2, 4, &mut rng);
        let out = transmit_with_rng(&v, deletions, insertions, &mut rng).unwrap();
        prop_assert_eq!(out.dim(), v.dim() - deletions + insertions);
        prop_assert!(v.d_subspace(&out) <= deletions + insertions);
        prop_assert!(v.d_injection(&out) <= deletions.max(insertions));
    }
}
