//! `Sz(q)` as permutations of its ovoid in `PG(3, q)`.
//!
//! The ovoid is the point set `{(1:0:0:0)} u {(a^(theta+2) + ab + b^theta :
//! b : a : 1)}` over `GF(q)`. It is preserved by the lower unitriangular
//! maps, the torus diagonals, and the coordinate-reversing involution; those
//! generate the full group. Every generator is checked pointwise against the
//! ovoid before it is accepted, and consumers re-validate the closed group's
//! order and class data, so a transcription slip cannot survive silently.
//!
//! This module is the provenance of the shipped `sz8.grp` fixture: the file
//! is the output of [`sz_fixture_text`] at `e = 3`.

use crate::algebra::{field_create, frobenius_theta, primitive_element, FieldElement, FiniteField, SmallMatrix};
use crate::perm::{write_group_file, Permutation};

use super::SuzukiError;

struct Ovoid {
    field: FiniteField,
    /// Canonical projective 4-tuples (field element indices), sorted.
    points: Vec<[u64; 4]>,
}

impl Ovoid {
    fn theta(&self, x: &FieldElement) -> FieldElement {
        frobenius_theta(&self.field, x).expect("characteristic 2, odd degree")
    }

    fn new(e: u32) -> Result<Ovoid, SuzukiError> {
        if e % 2 == 0 {
            return Err(SuzukiError::BadExponent(e));
        }
        let field = field_create(2, e)?;
        let mut ovoid = Ovoid { field, points: Vec::new() };
        let f = &ovoid.field;
        let mut points = vec![[1u64, 0, 0, 0]];
        for ai in 0..f.order() {
            for bi in 0..f.order() {
                let a = f.element(ai);
                let b = f.element(bi);
                // a^(theta+2) + a b + b^theta
                let head = f.add(
                    &f.mul(&ovoid.theta(&a), &f.mul(&a, &a)),
                    &f.add(&f.mul(&a, &b), &ovoid.theta(&b)),
                );
                points.push([f.index_of(&head), f.index_of(&b), f.index_of(&a), 1]);
            }
        }
        points.sort_unstable();
        points.dedup();
        debug_assert_eq!(points.len() as u64, f.order() * f.order() + 1);
        ovoid.points = points;
        Ok(ovoid)
    }

    fn normalize(&self, v: &[FieldElement]) -> [u64; 4] {
        let f = &self.field;
        let last = v
            .iter()
            .rposition(|x| !f.is_zero(x))
            .expect("projective point is nonzero");
        let scale = f.inv(&v[last]).expect("nonzero entry");
        let mut out = [0u64; 4];
        for (o, x) in out.iter_mut().zip(v.iter()) {
            *o = f.index_of(&f.mul(x, &scale));
        }
        out
    }

    fn point_index(&self, key: &[u64; 4]) -> Option<u16> {
        self.points.binary_search(key).ok().map(|i| i as u16)
    }

    /// The permutation a matrix induces on the ovoid (acting on row
    /// vectors); errors if the image ever leaves the ovoid.
    fn permutation_of(&self, m: &SmallMatrix) -> Result<Permutation, SuzukiError> {
        let f = &self.field;
        let mut images = Vec::with_capacity(self.points.len());
        for key in &self.points {
            let v: Vec<FieldElement> = key.iter().map(|&i| f.element(i)).collect();
            let image = m.apply_row(f, &v);
            let norm = self.normalize(&image);
            let Some(idx) = self.point_index(&norm) else {
                return Err(SuzukiError::InadmissibleParameters(
                    "matrix does not preserve the ovoid".into(),
                ));
            };
            images.push(idx);
        }
        Ok(Permutation::from_images(images)?)
    }
}

/// Degree `q^2 + 1` permutation generators of `Sz(q)` on its ovoid:
/// two unipotent maps, the torus generator, and the reversing involution.
pub fn sz_ovoid_generators(e: u32) -> Result<(usize, Vec<Permutation>), SuzukiError> {
    let ovoid = Ovoid::new(e)?;
    let f = &ovoid.field;
    let theta_half_exp = 1u64 << ((e - 1) / 2); // square root of the twist exponent

    let unipotent = |a: &FieldElement, b: &FieldElement| -> SmallMatrix {
        let th_a = ovoid.theta(a);
        let mut m = SmallMatrix::identity(f, 4);
        m.set(1, 0, a.clone());
        m.set(2, 0, b.clone());
        m.set(2, 1, th_a.clone());
        // a^(2+theta) + a b + b^theta
        m.set(
            3,
            0,
            f.add(
                &f.mul(&f.mul(a, a), &th_a),
                &f.add(&f.mul(a, b), &ovoid.theta(b)),
            ),
        );
        // a^(1+theta) + b
        m.set(3, 1, f.add(&f.mul(a, &th_a), b));
        m.set(3, 2, a.clone());
        m
    };

    let torus = |k: &FieldElement| -> SmallMatrix {
        let k_half = f.pow(k, theta_half_exp);
        let k1 = f.mul(k, &k_half);
        let k1_inv = f.inv(&k1).expect("unit");
        let k_half_inv = f.inv(&k_half).expect("unit");
        let mut m = SmallMatrix::identity(f, 4);
        m.set(0, 0, k1);
        m.set(1, 1, k_half);
        m.set(2, 2, k_half_inv);
        m.set(3, 3, k1_inv);
        m
    };

    let mut reversal = SmallMatrix::identity(f, 4);
    for i in 0..4 {
        for j in 0..4 {
            reversal.set(i, j, if i + j == 3 { f.one() } else { f.zero() });
        }
    }

    let mut mats = vec![
        unipotent(&f.one(), &f.zero()),
        unipotent(&f.zero(), &f.one()),
    ];
    if f.order() > 2 {
        mats.push(torus(&primitive_element(f)));
    }
    mats.push(reversal);

    let gens = mats
        .iter()
        .map(|m| ovoid.permutation_of(m))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((ovoid.points.len(), gens))
}

/// The generator-file text for `Sz(2^e)` on its ovoid. `sz8.grp` is this
/// output at `e = 3`.
pub fn sz_fixture_text(e: u32) -> Result<String, SuzukiError> {
    let (degree, gens) = sz_ovoid_generators(e)?;
    Ok(write_group_file(degree, &gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::GroupTable;

    #[test]
    fn smallest_case_is_frobenius_of_order_20() {
        // Sz(2) on 5 points
        let (degree, gens) = sz_ovoid_generators(1).unwrap();
        assert_eq!(degree, 5);
        let t = GroupTable::close_group(degree, &gens).unwrap();
        assert_eq!(t.order(), 20);
    }

    #[test]
    fn sz8_order_and_classes() {
        let (degree, gens) = sz_ovoid_generators(3).unwrap();
        assert_eq!(degree, 65);
        let t = GroupTable::close_group(degree, &gens).unwrap();
        assert_eq!(t.order(), 29120);
        super::super::verify_sz_table(&t, 3).unwrap();
    }
}
