//! The Borel subgroup `Q:K` of `Sz(q)` as an explicit enumerated group.
//!
//! Elements are triples `(alpha, beta, kappa)` with `alpha, beta` in `F_q`
//! and `kappa` a unit, multiplying by the two-parameter unipotent law
//! `(a,b)(a1,b1) = (a+a1, a a1^theta + b + b1)` twisted by the torus action
//! `(a,b)^kappa = (a kappa, b kappa^(1+theta))`. The group is realized as a
//! permutation group via its regular representation, so all the generic
//! machinery applies to it.

use std::sync::Arc;

use crate::algebra::{field_create, frobenius_theta, primitive_element, FieldElement, FiniteField};
use crate::perm::{GroupTable, Permutation};

use super::{SuzukiError, SzParameters};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Triple {
    alpha: FieldElement,
    beta: FieldElement,
    kappa: FieldElement,
}

/// The enumerated Borel group together with its distinguished subsets.
pub struct BorelGroup {
    pub params: SzParameters,
    pub table: Arc<GroupTable>,
    /// The Sylow 2-subgroup `Q = {(alpha, beta)}`, as element indices.
    pub q_indices: Vec<u32>,
    /// The torus `K`, cyclic of order `q - 1`.
    pub k_indices: Vec<u32>,
    /// `Z(Q) = {(0, beta)}`: the identity plus the `q - 1` involutions.
    pub center_indices: Vec<u32>,
    /// The element `(1, 1)` of `Q`; it has order 4.
    pub unipotent_one_one: u32,
}

struct BorelArith {
    field: FiniteField,
    q: u64,
}

impl BorelArith {
    fn theta(&self, x: &FieldElement) -> FieldElement {
        frobenius_theta(&self.field, x).expect("characteristic 2, odd degree")
    }

    fn one_plus_theta(&self, x: &FieldElement) -> FieldElement {
        self.field.mul(x, &self.theta(x))
    }

    fn mult(&self, x: &Triple, y: &Triple) -> Triple {
        let f = &self.field;
        // pull y's unipotent part through x's torus part
        let kx_inv = f.inv(&x.kappa).expect("kappa is a unit");
        let a2 = f.mul(&y.alpha, &kx_inv);
        let b2 = f.mul(&y.beta, &self.one_plus_theta(&kx_inv));
        let alpha = f.add(&x.alpha, &a2);
        let beta = f.add(&f.mul(&x.alpha, &self.theta(&a2)), &f.add(&x.beta, &b2));
        Triple { alpha, beta, kappa: f.mul(&x.kappa, &y.kappa) }
    }

    fn point_of(&self, t: &Triple) -> usize {
        let f = &self.field;
        let a = f.index_of(&t.alpha);
        let b = f.index_of(&t.beta);
        let k = f.index_of(&t.kappa);
        debug_assert!(k >= 1);
        (((a * self.q) + b) * (self.q - 1) + (k - 1)) as usize
    }

    fn triple_of(&self, point: usize) -> Triple {
        let f = &self.field;
        let k = point as u64 % (self.q - 1) + 1;
        let rest = point as u64 / (self.q - 1);
        let b = rest % self.q;
        let a = rest / self.q;
        Triple { alpha: f.element(a), beta: f.element(b), kappa: f.element(k) }
    }
}

/// Builds the order `q^2 (q - 1)` Borel group for `q = 2^e`.
///
/// Only `e = 3` is supported at group level: the regular representation of
/// the `e = 5` group would need half a gigabyte of image vectors.
pub fn sz_borel_group(e: u32) -> Result<BorelGroup, SuzukiError> {
    let params = SzParameters::new(e)?;
    if e != 3 {
        return Err(SuzukiError::InadmissibleParameters(format!(
            "borel group enumeration supports e = 3 only, got e = {}",
            e
        )));
    }
    let field = field_create(2, e)?;
    let q = field.order();
    let arith = BorelArith { field, q };
    let n = (q * q * (q - 1)) as usize;

    // generators: an additive basis of alpha-parts plus the torus generator
    let f = &arith.field;
    let mut gens_t: Vec<Triple> = (0..e)
        .map(|j| Triple {
            alpha: f.element(1 << j),
            beta: f.zero(),
            kappa: f.one(),
        })
        .collect();
    gens_t.push(Triple { alpha: f.zero(), beta: f.zero(), kappa: primitive_element(f) });

    let perm_of = |g: &Triple| -> Permutation {
        let images: Vec<u16> = (0..n)
            .map(|p| arith.point_of(&arith.mult(&arith.triple_of(p), g)) as u16)
            .collect();
        Permutation::from_images(images).expect("right multiplication permutes the group")
    };
    let gen_perms: Vec<Permutation> = gens_t.iter().map(perm_of).collect();
    let table = GroupTable::close_group(n, &gen_perms)?;
    if table.order() != n {
        return Err(SuzukiError::InadmissibleParameters(format!(
            "generators produced a group of order {}, expected {}",
            table.order(),
            n
        )));
    }

    let index_of_triple = |t: &Triple| -> u32 {
        let perm = perm_of(t);
        table.index_of_perm(perm.images()).expect("element of the closed group")
    };

    let mut q_indices = Vec::new();
    let mut center_indices = Vec::new();
    for a in 0..q {
        for b in 0..q {
            let t = Triple { alpha: f.element(a), beta: f.element(b), kappa: f.one() };
            let idx = index_of_triple(&t);
            if a == 0 {
                center_indices.push(idx);
            }
            q_indices.push(idx);
        }
    }
    q_indices.sort_unstable();
    center_indices.sort_unstable();
    let k_indices: Vec<u32> = {
        let mut v: Vec<u32> = (1..q)
            .map(|k| {
                index_of_triple(&Triple {
                    alpha: f.zero(),
                    beta: f.zero(),
                    kappa: f.element(k),
                })
            })
            .collect();
        v.sort_unstable();
        v
    };
    let unipotent_one_one =
        index_of_triple(&Triple { alpha: f.one(), beta: f.one(), kappa: f.one() });

    Ok(BorelGroup {
        params,
        table,
        q_indices,
        k_indices,
        center_indices,
        unipotent_one_one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::close_indices;

    #[test]
    fn borel_e3_structure() {
        let b = sz_borel_group(3).unwrap();
        let t = &b.table;
        assert_eq!(t.order(), 448);
        assert_eq!(b.q_indices.len(), 64);
        assert_eq!(b.k_indices.len(), 7);
        assert_eq!(b.center_indices.len(), 8);

        // Z(Q) is the identity plus the 7 involutions of Q; the other 56
        // elements of Q have order 4
        let mut involutions = 0;
        let mut order4 = 0;
        for &x in &b.q_indices {
            match t.element_order(x) {
                1 => {}
                2 => involutions += 1,
                4 => order4 += 1,
                o => panic!("unexpected order {} in Q", o),
            }
        }
        assert_eq!(involutions, 7);
        assert_eq!(order4, 56);
        for &x in &b.center_indices {
            assert!(t.element_order(x) <= 2);
        }

        // every element order divides 4 or q - 1
        for i in 0..t.order() as u32 {
            let o = t.element_order(i) as u64;
            assert!(4 % o == 0 || 7 % o == 0, "order {}", o);
        }
    }

    #[test]
    fn subgroup_generated_by_one_one() {
        let b = sz_borel_group(3).unwrap();
        let h = close_indices(&b.table, &[b.unipotent_one_one], 8).unwrap();
        // <(1,1)> = {id, (1,1), (0,1), (1,0)}: order 4, inside Q
        assert_eq!(h.len(), 4);
        assert_eq!(b.table.element_order(b.unipotent_one_one), 4);
        for &x in &h {
            assert!(b.q_indices.binary_search(&x).is_ok());
        }
    }

    #[test]
    fn k_is_cyclic_complement() {
        let b = sz_borel_group(3).unwrap();
        // K contains the identity (kappa = 1) and is cyclic of order 7
        assert!(b.k_indices.contains(&0));
        let orders: Vec<u32> =
            b.k_indices.iter().map(|&x| b.table.element_order(x)).collect();
        assert!(orders.iter().any(|&o| o == 7));
        let closed = close_indices(&b.table, &b.k_indices, 8).unwrap();
        assert_eq!(closed, b.k_indices);
    }
}
