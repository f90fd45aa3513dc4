//! Finite fields `F_q` (q prime) and their extensions `F_{q^l}`.
//!
//! Elements of `F_{q^l}` are stored in the power basis `1, a, ..., a^(l-1)`
//! of a root `a` of the modulus polynomial, i.e. as coefficient vectors
//! `(l0, ..., l_{l-1})` over `F_q`. A prime field is the degenerate case
//! `l = 1`. The coordinate map between an element and its coefficient
//! vector is therefore the identity on the stored representation.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Errors from field construction and text parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {q} is not prime (divisible by {divisor})")]
    CompositeCharacteristic { q: u64, divisor: u64 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus must be monic of degree {expected}, got degree {got}")]
    BadModulusDegree { expected: usize, got: usize },
    #[error("modulus is reducible: divisible by {factor}")]
    ReducibleModulus { factor: String },
    #[error("cannot parse {input:?} as an element of F_{{{q}^{ell}}}")]
    BadElement { input: String, q: u64, ell: usize },
}

#[derive(Debug)]
struct FieldRepr {
    q: u64,
    ell: usize,
    /// Monic modulus, coefficients constant-term first, length `ell + 1`.
    modulus: Vec<u64>,
    /// The prime subfield, populated for proper extensions.
    base: Option<Field>,
}

/// A finite field handle. Cheap to clone; two handles denote the same field
/// when their characteristic, degree and modulus coincide.
#[derive(Clone)]
pub struct Field(Arc<FieldRepr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.q == other.0.q
                && self.0.ell == other.0.ell
                && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.ell == 1 {
            write!(f, "F_{}", self.0.q)
        } else {
            write!(f, "F_{{{}^{}}}", self.0.q, self.0.ell)
        }
    }
}

impl Field {
    /// The prime field `F_q`.
    pub fn prime(q: u64) -> Result<Field, FieldError> {
        Field::extension(q, 1, None)
    }

    /// The extension field `F_{q^ell}` for a given modulus, or the default
    /// modulus when `None`: the lexicographically smallest monic irreducible
    /// polynomial of degree `ell`, coefficients compared constant-term first.
    /// (For `ell = 1` the default is `x - 1`, so that `alpha = 1`.)
    pub fn extension(q: u64, ell: usize, modulus: Option<&[u64]>) -> Result<Field, FieldError> {
        if let Some(d) = smallest_divisor(q) {
            return Err(FieldError::CompositeCharacteristic { q, divisor: d });
        }
        if ell == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let modulus = match modulus {
            Some(m) => {
                let m: Vec<u64> = m.iter().map(|&c| c % q).collect();
                if m.len() != ell + 1 || m[ell] != 1 {
                    return Err(FieldError::BadModulusDegree {
                        expected: ell,
                        got: m.len().saturating_sub(1),
                    });
                }
                if let Some(factor) = find_factor(&m, q) {
                    return Err(FieldError::ReducibleModulus {
                        factor: poly_to_string(&factor),
                    });
                }
                m
            }
            None => default_modulus(q, ell),
        };
        let base = if ell > 1 { Some(Field::prime(q)?) } else { None };
        Ok(Field(Arc::new(FieldRepr { q, ell, modulus, base })))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.q
    }

    pub fn degree(&self) -> usize {
        self.0.ell
    }

    /// Field size `q^ell` (desk scale; panics on overflow).
    pub fn order(&self) -> u64 {
        (0..self.0.ell).fold(1u64, |acc, _| acc.checked_mul(self.0.q).expect("field too large"))
    }

    /// Modulus coefficients, constant-term first.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// The prime subfield (self for `ell = 1`).
    pub fn base_field(&self) -> Field {
        self.0.base.clone().unwrap_or_else(|| self.clone())
    }

    pub fn zero(&self) -> FieldElement {
        self.from_coeffs(&vec![0; self.0.ell])
    }

    pub fn one(&self) -> FieldElement {
        let mut c = vec![0; self.0.ell];
        c[0] = 1;
        self.from_coeffs(&c)
    }

    /// The power-basis generator: the residue of `x` modulo the modulus.
    /// For `ell = 1` this is the root of the linear modulus.
    pub fn alpha(&self) -> FieldElement {
        if self.0.ell == 1 {
            let q = self.0.q;
            // root of x + c0 is -c0
            self.from_coeffs(&[(q - self.0.modulus[0]) % q])
        } else {
            let mut c = vec![0; self.0.ell];
            c[1] = 1;
            self.from_coeffs(&c)
        }
    }

    /// Element from an integer, reduced mod q (prime-field embedding).
    pub fn from_int(&self, v: u64) -> FieldElement {
        let mut c = vec![0; self.0.ell];
        c[0] = v % self.0.q;
        self.from_coeffs(&c)
    }

    /// Element from its power-basis coordinates `(l0, ..., l_{ell-1})`;
    /// coordinates are reduced mod q. This is the inverse coordinate map.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        assert_eq!(coeffs.len(), self.0.ell, "coordinate vector has wrong length");
        FieldElement {
            field: self.clone(),
            coeffs: coeffs.iter().map(|&c| c % self.0.q).collect(),
        }
    }

    /// All field elements in lexicographic coordinate order
    /// (`(0,..,0), (1,0,..), ..., (q-1,...,q-1)` with the first coordinate
    /// least significant).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let q = self.0.q;
        let ell = self.0.ell;
        (0..self.order()).map(move |mut i| {
            let mut c = vec![0; ell];
            for slot in c.iter_mut() {
                *slot = i % q;
                i /= q;
            }
            self.from_coeffs(&c)
        })
    }

    /// Parse the digit-string form: `l0 l1 ... l_{ell-1}` concatenated,
    /// e.g. `"01"` for `alpha` in `F_4`. Prime fields accept multi-digit
    /// values (`"12"` in `F_13`).
    pub fn parse_element(&self, s: &str) -> Result<FieldElement, FieldError> {
        let bad = || FieldError::BadElement {
            input: s.to_string(),
            q: self.0.q,
            ell: self.0.ell,
        };
        let s = s.trim();
        if self.0.ell == 1 {
            let v: u64 = s.parse().map_err(|_| bad())?;
            if v >= self.0.q {
                return Err(bad());
            }
            return Ok(self.from_int(v));
        }
        if s.chars().count() != self.0.ell {
            return Err(bad());
        }
        let mut coeffs = Vec::with_capacity(self.0.ell);
        for ch in s.chars() {
            let d = ch.to_digit(10).ok_or_else(bad)? as u64;
            if d >= self.0.q {
                return Err(bad());
            }
            coeffs.push(d);
        }
        Ok(self.from_coeffs(&coeffs))
    }
}

/// An element of a [`Field`], stored as its power-basis coordinate vector.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Power-basis coordinates over `F_q` (the coordinate map).
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_same_field(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "mixing elements of {:?} and {:?}",
            self.field,
            other.field
        );
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.check_same_field(other);
        let q = self.field.0.q;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % q)
            .collect();
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElement {
        let q = self.field.0.q;
        let coeffs = self.coeffs.iter().map(|&a| (q - a) % q).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.check_same_field(other);
        let q = self.field.0.q;
        let prod = poly_mul(&self.coeffs, &other.coeffs, q);
        let red = poly_rem(&prod, &self.field.0.modulus, q);
        let mut coeffs = vec![0; self.field.0.ell];
        coeffs[..red.len()].copy_from_slice(&red);
        FieldElement { field: self.field.clone(), coeffs }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        let q = self.field.0.q;
        // Extended Euclid in F_q[x]: s*self + t*modulus = gcd (a unit).
        let (g, s) = poly_half_ext_gcd(&self.coeffs, &self.field.0.modulus, q);
        debug_assert_eq!(g.len(), 1);
        let scale = int_inverse(g[0], q);
        let inv = poly_scale(&s, scale, q);
        let mut coeffs = vec![0; self.field.0.ell];
        coeffs[..inv.len()].copy_from_slice(&inv);
        Some(FieldElement { field: self.field.clone(), coeffs })
    }

    pub fn div(&self, other: &FieldElement) -> FieldElement {
        self.mul(&other.inverse().expect("division by zero"))
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The Frobenius power `e^(q^i)`. The Frobenius has order `ell`, so `i`
    /// is reduced mod `ell` first; each step is the q-power map.
    pub fn frobenius(&self, i: usize) -> FieldElement {
        let steps = i % self.field.0.ell;
        let q = self.field.0.q;
        let mut e = self.clone();
        for _ in 0..steps {
            e = e.pow(q);
        }
        e
    }
}

impl fmt::Display for FieldElement {
    /// Digit-string form, `l0...l_{ell-1}`; plain decimal for prime fields.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.0.ell == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        for &c in &self.coeffs {
            debug_assert!(c < 10, "digit-string form needs q <= 10");
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::add(self, rhs)
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::sub(self, rhs)
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::mul(self, rhs)
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

fn smallest_divisor(q: u64) -> Option<u64> {
    if q < 2 {
        return Some(q);
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return Some(d);
        }
        d += 1;
    }
    None
}

fn int_inverse(a: u64, q: u64) -> u64 {
    // extended Euclid over the integers
    let (mut r0, mut r1) = (q as i128, (a % q) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let qq = r0 / r1;
        (r0, r1) = (r1, r0 - qq * r1);
        (s0, s1) = (s1, s0 - qq * s1);
    }
    assert_eq!(r0, 1, "not invertible mod {q}");
    (s0.rem_euclid(q as i128)) as u64
}

// Polynomial helpers over F_q; coefficient vectors are constant-term first
// and kept trimmed (no trailing zeros; the zero polynomial is `[]`).

fn poly_trim(mut p: Vec<u64>) -> Vec<u64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let a = poly_trim(a.to_vec());
    let b = poly_trim(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % q;
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + q - y) % q;
    }
    poly_trim(out)
}

fn poly_scale(a: &[u64], s: u64, q: u64) -> Vec<u64> {
    poly_trim(a.iter().map(|&c| c * s % q).collect())
}

/// Division with remainder; returns `(quotient, remainder)`.
fn poly_divmod(a: &[u64], b: &[u64], q: u64) -> (Vec<u64>, Vec<u64>) {
    let b = poly_trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let lead_inv = int_inverse(b[b.len() - 1], q);
    let mut rem = poly_trim(a.to_vec());
    let mut quo = vec![0u64; a.len().saturating_sub(b.len()) + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem[rem.len() - 1] * lead_inv % q;
        quo[shift] = c;
        let mut sub = vec![0u64; shift];
        sub.extend(poly_scale(&b, c, q));
        // the leading term cancels exactly, so `rem` strictly shrinks
        rem = poly_sub(&rem, &sub, q);
    }
    (poly_trim(quo), rem)
}

fn poly_rem(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    poly_divmod(a, b, q).1
}

/// Extended Euclid returning `(gcd, s)` with `s*a = gcd (mod m)`.
fn poly_half_ext_gcd(a: &[u64], m: &[u64], q: u64) -> (Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (m.to_vec(), poly_trim(a.to_vec()));
    let (mut s0, mut s1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (quo, rem) = poly_divmod(&r0, &r1, q);
        let s_next = poly_sub(&s0, &poly_mul(&quo, &s1, q), q);
        (r0, r1) = (r1, rem);
        (s0, s1) = (s1, s_next);
    }
    (r0, poly_rem(&s0, m, q))
}

fn poly_to_string(p: &[u64]) -> String {
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match i {
            0 => format!("{c}"),
            1 if c == 1 => "x".to_string(),
            1 => format!("{c}x"),
            _ if c == 1 => format!("x^{i}"),
            _ => format!("{c}x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Search for a monic factor of degree in `1..=deg/2`; `None` if irreducible.
fn find_factor(m: &[u64], q: u64) -> Option<Vec<u64>> {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (0..d).fold(1u64, |acc, _| acc * q);
        for mut i in 0..count {
            let mut cand = vec![0u64; d + 1];
            cand[d] = 1;
            for slot in cand.iter_mut().take(d) {
                *slot = i % q;
                i /= q;
            }
            if poly_rem(m, &cand, q).is_empty() {
                return Some(cand);
            }
        }
    }
    None
}

/// Lexicographically smallest monic irreducible of degree `ell`, coefficient
/// lists compared constant-term first. Degree 1 is special-cased to `x - 1`
/// so that the power-basis generator of a prime field is 1.
fn default_modulus(q: u64, ell: usize) -> Vec<u64> {
    if ell == 1 {
        return vec![q - 1, 1];
    }
    let mut coeffs = vec![0u64; ell];
    loop {
        let mut m = coeffs.clone();
        m.push(1);
        if find_factor(&m, q).is_none() {
            return m;
        }
        // odometer with the constant term most significant
        let mut pos = ell - 1;
        loop {
            coeffs[pos] += 1;
            if coeffs[pos] < q {
                break;
            }
            coeffs[pos] = 0;
            assert!(pos > 0, "no irreducible polynomial found");
            pos -= 1;
        }
    }
}
