//! Exact arithmetic in small finite fields `GF(p^f)` and dense matrices of
//! dimension at most 4 over them.
//!
//! Fields are represented in a polynomial basis: an element is its vector of
//! coefficients modulo a fixed monic irreducible modulus. All operations go
//! through the [`FiniteField`] object, so two elements can only meet inside a
//! field that validates them; there is no global field registry.

use thiserror::Error;

/// Hard cap on the field order. Everything downstream enumerates explicitly,
/// so there is no use for larger fields.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("field order {p}^{f} exceeds the enumeration cap 2^20")]
    FieldTooLarge { p: u64, f: u32 },
    #[error("theta is only defined on GF(2^e) with e odd")]
    ThetaUndefined,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("element does not belong to this field")]
    ForeignElement,
}

/// A finite field `GF(p^f)` with a fixed monic irreducible modulus.
///
/// The modulus is the lexicographically smallest irreducible choice
/// (coefficients compared constant term first), which pins down every
/// derived enumeration bit-exactly across runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    f: u32,
    /// Monic modulus of degree `f`, coefficients low degree first, length `f+1`.
    modulus: Vec<u64>,
}

/// An element of a [`FiniteField`], as coefficients in the polynomial basis.
///
/// Coefficient vectors always have length `f` with entries in `[0, p)`.
/// Equality is coefficient equality; operations are only defined through the
/// owning field, which checks the representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial arithmetic over GF(p), coefficients low degree first.
mod poly {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        debug_assert_eq!(m[dm], 1, "modulus must be monic");
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for i in 0..=dm {
                let idx = shift + i;
                let sub = (lead * m[i]) % p;
                r[idx] = (r[idx] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// True when `m` (monic) is divisible by some monic polynomial of degree
    /// in `1..=m.degree()/2`. Exhaustive trial division; fields are tiny.
    pub fn has_small_factor(m: &[u64], p: u64) -> bool {
        let deg = m.len() - 1;
        for d in 1..=(deg / 2) {
            // all monic divisor candidates of degree d
            let count = p.pow(d as u32);
            for code in 0..count {
                let mut cand = Vec::with_capacity(d + 1);
                let mut c = code;
                for _ in 0..d {
                    cand.push(c % p);
                    c /= p;
                }
                cand.push(1);
                if rem(m, &cand, p).is_empty() {
                    return true;
                }
            }
        }
        false
    }
}

/// Builds `GF(p^f)` with the lexicographically smallest monic irreducible
/// modulus. For `f = 1` the modulus is `x`.
pub fn field_create(p: u64, f: u32) -> Result<FiniteField, AlgebraError> {
    if !is_prime(p) {
        return Err(AlgebraError::CompositeCharacteristic(p));
    }
    if f == 0 || (p as f64).powi(f as i32) > MAX_FIELD_ORDER as f64 {
        return Err(AlgebraError::FieldTooLarge { p, f });
    }
    if f == 1 {
        return Ok(FiniteField { p, f, modulus: vec![0, 1] });
    }
    // Candidates ordered lexicographically on (c_0, c_1, ..., c_{f-1}).
    let mut tail = vec![0u64; f as usize];
    loop {
        let mut modulus = tail.clone();
        modulus.push(1);
        if !poly::has_small_factor(&modulus, p) {
            return Ok(FiniteField { p, f, modulus });
        }
        // odometer increment on the last coordinate, carrying leftwards,
        // which steps through tuples in lex order
        let mut i = f as usize;
        loop {
            if i == 0 {
                unreachable!("irreducible polynomials of every degree exist");
            }
            i -= 1;
            tail[i] += 1;
            if tail[i] < p {
                break;
            }
            tail[i] = 0;
        }
    }
}

impl FiniteField {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.f)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.f as usize] }
    }

    pub fn one(&self) -> FieldElement {
        let mut coeffs = vec![0; self.f as usize];
        coeffs[0] = 1;
        FieldElement { coeffs }
    }

    /// The basis element `x` (for `f = 1`, this is the residue `p > 1 ? 1 : 0`
    /// shifted away; callers should not request it on prime fields).
    pub fn gen_x(&self) -> FieldElement {
        let mut coeffs = vec![0; self.f as usize];
        if self.f > 1 {
            coeffs[1] = 1;
        } else {
            coeffs[0] = 1;
        }
        FieldElement { coeffs }
    }

    /// Element with index `k` in the canonical enumeration: `k` written in
    /// base `p`, least significant digit as the constant coefficient. The
    /// induced order is the numeric order used for every "first element
    /// found" rule.
    pub fn element(&self, k: u64) -> FieldElement {
        debug_assert!(k < self.order());
        let mut coeffs = vec![0; self.f as usize];
        let mut k = k;
        for c in coeffs.iter_mut() {
            *c = k % self.p;
            k /= self.p;
        }
        FieldElement { coeffs }
    }

    /// Inverse of [`FiniteField::element`].
    pub fn index_of(&self, a: &FieldElement) -> u64 {
        let mut k = 0;
        for &c in a.coeffs.iter().rev() {
            k = k * self.p + c;
        }
        k
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(|k| self.element(k))
    }

    fn check(&self, a: &FieldElement) {
        assert_eq!(a.coeffs.len(), self.f as usize, "element from a different field");
        debug_assert!(a.coeffs.iter().all(|&c| c < self.p));
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.check(a);
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let prod = poly::mul(&a.coeffs, &b.coeffs, self.p);
        let mut r = poly::rem(&prod, &self.modulus, self.p);
        r.resize(self.f as usize, 0);
        FieldElement { coeffs: r }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, AlgebraError> {
        if self.is_zero(a) {
            return Err(AlgebraError::SingularMatrix);
        }
        // a^(q-2) = a^{-1} in GF(q)
        Ok(self.pow(a, self.order() - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &FieldElement) -> u64 {
        assert!(!self.is_zero(a));
        let mut x = a.clone();
        let mut n = 1;
        let one = self.one();
        while x != one {
            x = self.mul(&x, a);
            n += 1;
        }
        n
    }
}

/// First element (in the canonical enumeration) of multiplicative order
/// `p^f - 1`.
pub fn primitive_element(field: &FiniteField) -> FieldElement {
    let target = field.order() - 1;
    for k in 1..field.order() {
        let a = field.element(k);
        if field.multiplicative_order(&a) == target {
            return a;
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic");
}

/// The square-root-of-Frobenius map `x -> x^(2^((e+1)/2))` on `GF(2^e)`,
/// `e` odd. Applying it twice squares the argument.
pub fn frobenius_theta(field: &FiniteField, x: &FieldElement) -> Result<FieldElement, AlgebraError> {
    if field.characteristic() != 2 || field.degree() % 2 == 0 {
        return Err(AlgebraError::ThetaUndefined);
    }
    let e = field.degree() as u64;
    Ok(field.pow(x, 1u64 << ((e + 1) / 2)))
}

/// A small dense matrix over a finite field. Dimension is capped at 4; the
/// group constructions need nothing bigger.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallMatrix {
    n: usize,
    entries: Vec<FieldElement>,
}

impl SmallMatrix {
    pub fn new(n: usize, entries: Vec<FieldElement>) -> Self {
        assert!((2..=4).contains(&n), "matrix dimension must be 2..=4");
        assert_eq!(entries.len(), n * n);
        SmallMatrix { n, entries }
    }

    pub fn identity(field: &FiniteField, n: usize) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(if i == j { field.one() } else { field.zero() });
            }
        }
        SmallMatrix::new(n, entries)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, field: &FiniteField, rhs: &SmallMatrix) -> SmallMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = field.zero();
                for k in 0..n {
                    acc = field.add(&acc, &field.mul(self.at(i, k), rhs.at(k, j)));
                }
                entries.push(acc);
            }
        }
        SmallMatrix { n, entries }
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, field: &FiniteField, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|j| {
                let mut acc = field.zero();
                for (i, vi) in v.iter().enumerate() {
                    acc = field.add(&acc, &field.mul(vi, self.at(i, j)));
                }
                acc
            })
            .collect()
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self, field: &FiniteField) -> Result<SmallMatrix, AlgebraError> {
        let n = self.n;
        let mut a = self.clone();
        let mut b = SmallMatrix::identity(field, n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !field.is_zero(a.at(r, col)))
                .ok_or(AlgebraError::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    let x = a.at(pivot, j).clone();
                    let y = a.at(col, j).clone();
                    a.set(pivot, j, y);
                    a.set(col, j, x);
                    let x = b.at(pivot, j).clone();
                    let y = b.at(col, j).clone();
                    b.set(pivot, j, y);
                    b.set(col, j, x);
                }
            }
            let inv = field.inv(a.at(col, col))?;
            for j in 0..n {
                a.set(col, j, field.mul(a.at(col, j), &inv));
                b.set(col, j, field.mul(b.at(col, j), &inv));
            }
            for r in 0..n {
                if r == col || field.is_zero(a.at(r, col)) {
                    continue;
                }
                let factor = a.at(r, col).clone();
                for j in 0..n {
                    let av = field.sub(a.at(r, j), &field.mul(&factor, a.at(col, j)));
                    a.set(r, j, av);
                    let bv = field.sub(b.at(r, j), &field.mul(&factor, b.at(col, j)));
                    b.set(r, j, bv);
                }
            }
        }
        Ok(b)
    }

    pub fn is_invertible(&self, field: &FiniteField) -> bool {
        self.inverse(field).is_ok()
    }

    /// Canonical byte encoding: row-major element indices. Used for hashing
    /// and ordering when matrices serve as group elements.
    pub fn encode(&self, field: &FiniteField) -> Vec<u32> {
        self.entries.iter().map(|e| field.index_of(e) as u32).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_modulus_is_x() {
        let f = field_create(3, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 3);
    }

    #[test]
    fn gf8_modulus_is_smallest_irreducible_cubic() {
        let f = field_create(2, 3).unwrap();
        // x^3 + x + 1
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn gf9_modulus() {
        let f = field_create(3, 2).unwrap();
        // x^2 + 1: x^2 and x^2 + x and x^2 + 2x precede it but are reducible
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn composite_characteristic_rejected() {
        assert_eq!(
            field_create(6, 1).unwrap_err(),
            AlgebraError::CompositeCharacteristic(6)
        );
        assert!(matches!(
            field_create(2, 21).unwrap_err(),
            AlgebraError::FieldTooLarge { .. }
        ));
    }

    #[test]
    fn primitive_elements() {
        let f3 = field_create(3, 1).unwrap();
        assert_eq!(f3.index_of(&primitive_element(&f3)), 2);

        let f8 = field_create(2, 3).unwrap();
        // the modulus root x itself
        assert_eq!(f8.index_of(&primitive_element(&f8)), 2);

        let f9 = field_create(3, 2).unwrap();
        let g = primitive_element(&f9);
        assert_eq!(f9.multiplicative_order(&g), 8);
        // nothing smaller generates
        for k in 1..f9.index_of(&g) {
            assert_ne!(f9.multiplicative_order(&f9.element(k)), 8);
        }
    }

    #[test]
    fn theta_squares_when_applied_twice() {
        for e in [3u32, 5] {
            let f = field_create(2, e).unwrap();
            for a in f.elements() {
                let t = frobenius_theta(&f, &a).unwrap();
                let tt = frobenius_theta(&f, &t).unwrap();
                assert_eq!(tt, f.mul(&a, &a));
            }
        }
    }

    #[test]
    fn theta_undefined_cases() {
        let f = field_create(2, 4).unwrap();
        assert_eq!(
            frobenius_theta(&f, &f.one()).unwrap_err(),
            AlgebraError::ThetaUndefined
        );
        let f = field_create(3, 3).unwrap();
        assert_eq!(
            frobenius_theta(&f, &f.one()).unwrap_err(),
            AlgebraError::ThetaUndefined
        );
    }

    #[test]
    fn theta_gf8_values() {
        let f = field_create(2, 3).unwrap();
        let zero = f.zero();
        let one = f.one();
        assert_eq!(frobenius_theta(&f, &zero).unwrap(), zero);
        assert_eq!(frobenius_theta(&f, &one).unwrap(), one);
        let x = f.element(2);
        assert_eq!(frobenius_theta(&f, &x).unwrap(), f.pow(&x, 4));
    }

    #[test]
    fn random_algebra_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for (p, f) in [(2, 3), (3, 2), (5, 1), (7, 2), (2, 5)] {
            let field = field_create(p, f).unwrap();
            let q = field.order();
            for _ in 0..1000 {
                let a = field.element(rng.gen_range(0..q));
                let b = field.element(rng.gen_range(0..q));
                let c = field.element(rng.gen_range(0..q));
                // distributivity and associativity
                assert_eq!(
                    field.mul(&a, &field.add(&b, &c)),
                    field.add(&field.mul(&a, &b), &field.mul(&a, &c))
                );
                assert_eq!(
                    field.mul(&field.mul(&a, &b), &c),
                    field.mul(&a, &field.mul(&b, &c))
                );
                if !field.is_zero(&a) {
                    assert_eq!(field.mul(&a, &field.inv(&a).unwrap()), field.one());
                }
            }
        }
    }

    #[test]
    fn matrix_inverse_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for n in 2..=4usize {
            let field = field_create(5, 1).unwrap();
            let mut done = 0;
            while done < 1000 {
                let entries: Vec<_> = (0..n * n)
                    .map(|_| field.element(rng.gen_range(0..5)))
                    .collect();
                let m = SmallMatrix::new(n, entries);
                if let Ok(inv) = m.inverse(&field) {
                    assert_eq!(m.mul(&field, &inv), SmallMatrix::identity(&field, n));
                    done += 1;
                }
            }
        }
    }
}
