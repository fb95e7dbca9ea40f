//! Full group enumeration with canonical indexing and conjugacy classes.

use std::collections::{HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{PermError, Permutation};

/// Enumeration cap for permutation-image storage.
pub const PERM_ELEMENT_CAP: usize = 1 << 20;
/// Enumeration cap for packed affine storage. Slightly above 2^20 to admit
/// the degree-870 affine groups of order 1,412,880.
pub const AFFINE_ELEMENT_CAP: usize = 2_000_000;

/// An affine map `x -> M x + v` on `GF(p)^2`, entries as residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineMap {
    /// Row-major 2x2 matrix.
    pub m: [u64; 4],
    /// Translation part.
    pub v: [u64; 2],
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap { m: [1, 0, 0, 1], v: [0, 0] }
    }

    /// `self` then `rhs`: x -> rhs.m (self.m x + self.v) + rhs.v.
    fn compose(&self, rhs: &AffineMap, p: u64) -> AffineMap {
        let a = &rhs.m;
        let b = &self.m;
        let m = [
            (a[0] * b[0] + a[1] * b[2]) % p,
            (a[0] * b[1] + a[1] * b[3]) % p,
            (a[2] * b[0] + a[3] * b[2]) % p,
            (a[2] * b[1] + a[3] * b[3]) % p,
        ];
        let v = [
            (a[0] * self.v[0] + a[1] * self.v[1] + rhs.v[0]) % p,
            (a[2] * self.v[0] + a[3] * self.v[1] + rhs.v[1]) % p,
        ];
        AffineMap { m, v }
    }

    fn inverse(&self, p: u64) -> Option<AffineMap> {
        let det = (self.m[0] * self.m[3] % p + p - self.m[1] * self.m[2] % p) % p;
        if det == 0 {
            return None;
        }
        let det_inv = mod_inv(det, p)?;
        let m = [
            self.m[3] * det_inv % p,
            (p - self.m[1]) % p * det_inv % p,
            (p - self.m[2]) % p * det_inv % p,
            self.m[0] * det_inv % p,
        ];
        let v = [
            (p - (m[0] * self.v[0] + m[1] * self.v[1]) % p) % p,
            (p - (m[2] * self.v[0] + m[3] * self.v[1]) % p) % p,
        ];
        Some(AffineMap { m, v })
    }

    /// Packed key; the identity packs to 0, so ascending key order puts the
    /// identity first.
    fn pack(&self, p: u64) -> u32 {
        let d = [
            (self.m[0] + p - 1) % p,
            self.m[1],
            self.m[2],
            (self.m[3] + p - 1) % p,
            self.v[0],
            self.v[1],
        ];
        let mut key: u64 = 0;
        for &x in d.iter().rev() {
            key = key * p + x;
        }
        key as u32
    }

    fn unpack(mut key: u64, p: u64) -> AffineMap {
        let mut d = [0u64; 6];
        for slot in d.iter_mut() {
            *slot = key % p;
            key /= p;
        }
        AffineMap {
            m: [(d[0] + 1) % p, d[1], d[2], (d[3] + 1) % p],
            v: [d[4], d[5]],
        }
    }
}

fn mod_inv(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    // p is prime in all uses
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    Some(result)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StoreKind {
    Perm,
    Affine,
}

#[derive(Debug)]
enum Store {
    /// Image vectors, flattened; element `i` occupies
    /// `flat[i*degree..(i+1)*degree]`. Rows are sorted lexicographically,
    /// which places the identity at index 0.
    Perm { degree: usize, flat: Vec<u16> },
    /// Packed affine maps over `GF(p)^2` in ascending key order; the packing
    /// sends the identity to key 0.
    Affine { p: u64, keys: Vec<u32> },
}

/// A fully enumerated finite group.
///
/// Elements are indexed `0..order` in a canonical order determined only by
/// the element set, never by the generator list. All per-element data
/// (inverse, order, conjugacy class) is precomputed.
#[derive(Debug)]
pub struct GroupTable {
    store: Store,
    generators: Vec<u32>,
    inverse_of: Vec<u32>,
    order_of: Vec<u32>,
    class_of: Vec<u32>,
    class_reps: Vec<u32>,
    class_sizes: Vec<u64>,
    inverse_class: Vec<u32>,
    tensor: OnceLock<Arc<ClassTensor>>,
}

impl GroupTable {
    /// Breadth-first closure of permutation generators, then canonical
    /// indexing and class computation.
    pub fn close_group(degree: usize, generators: &[Permutation]) -> Result<Arc<GroupTable>, PermError> {
        for g in generators {
            if g.degree() != degree {
                return Err(PermError::InvalidGenerator(degree));
            }
        }
        let identity = Permutation::identity(degree);
        let mut set: HashSet<Permutation> = HashSet::new();
        let mut queue: VecDeque<Permutation> = VecDeque::new();
        set.insert(identity.clone());
        queue.push_back(identity);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = x.compose(g);
                if !set.contains(&y) {
                    if set.len() + 1 > PERM_ELEMENT_CAP {
                        return Err(PermError::GroupTooLarge(PERM_ELEMENT_CAP));
                    }
                    set.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elems: Vec<Permutation> = set.into_iter().collect();
        elems.sort();
        let n = elems.len();
        let mut flat = Vec::with_capacity(n * degree);
        for e in &elems {
            flat.extend_from_slice(e.images());
        }
        let store = Store::Perm { degree, flat };
        let gen_indices = generators
            .iter()
            .map(|g| store_index(&store, &encode_perm(g)).expect("generator in closure"))
            .collect();
        Ok(Self::finish(store, gen_indices))
    }

    /// Closure of affine generators over `GF(p)^2` (p prime, p <= 31).
    pub fn close_affine(p: u64, generators: &[AffineMap]) -> Result<Arc<GroupTable>, PermError> {
        assert!(p >= 2 && p <= 31, "packed affine store supports p <= 31");
        for g in generators {
            if g.inverse(p).is_none() {
                return Err(PermError::InvalidGenerator(p as usize));
            }
        }
        let mut set: HashSet<u32> = HashSet::new();
        let mut queue: VecDeque<AffineMap> = VecDeque::new();
        set.insert(AffineMap::identity().pack(p));
        queue.push_back(AffineMap::identity());
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = x.compose(g, p);
                if set.insert(y.pack(p)) {
                    if set.len() > AFFINE_ELEMENT_CAP {
                        return Err(PermError::GroupTooLarge(AFFINE_ELEMENT_CAP));
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut keys: Vec<u32> = set.into_iter().collect();
        keys.sort_unstable();
        let store = Store::Affine { p, keys };
        let gen_indices = generators
            .iter()
            .map(|g| {
                let key = g.pack(p);
                store_index_key(&store, key).expect("generator in closure")
            })
            .collect();
        Ok(Self::finish(store, gen_indices))
    }

    fn finish(store: Store, generators: Vec<u32>) -> Arc<GroupTable> {
        let n = store_len(&store);
        let mut table = GroupTable {
            store,
            generators,
            inverse_of: Vec::new(),
            order_of: Vec::new(),
            class_of: Vec::new(),
            class_reps: Vec::new(),
            class_sizes: Vec::new(),
            inverse_class: Vec::new(),
            tensor: OnceLock::new(),
        };
        debug_assert!(table.is_identity(0), "canonical order must start at the identity");
        table.inverse_of = (0..n as u32).map(|i| table.compute_inverse(i)).collect();
        table.order_of = table.compute_orders();
        table.compute_classes();
        table.spot_check_closure();
        Arc::new(table)
    }

    pub fn order(&self) -> usize {
        store_len(&self.store)
    }

    pub fn kind(&self) -> StoreKind {
        match self.store {
            Store::Perm { .. } => StoreKind::Perm,
            Store::Affine { .. } => StoreKind::Affine,
        }
    }

    /// Acting degree for permutation stores.
    pub fn degree(&self) -> Option<usize> {
        match &self.store {
            Store::Perm { degree, .. } => Some(*degree),
            Store::Affine { .. } => None,
        }
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn perm_images(&self, i: u32) -> &[u16] {
        match &self.store {
            Store::Perm { degree, flat } => {
                let d = *degree;
                &flat[i as usize * d..(i as usize + 1) * d]
            }
            Store::Affine { .. } => panic!("perm_images on affine store"),
        }
    }

    pub fn affine_of(&self, i: u32) -> Option<AffineMap> {
        match &self.store {
            Store::Affine { p, keys } => Some(AffineMap::unpack(keys[i as usize] as u64, *p)),
            Store::Perm { .. } => None,
        }
    }

    pub fn is_identity(&self, i: u32) -> bool {
        match &self.store {
            Store::Perm { degree, flat } => {
                let row = &flat[i as usize * degree..(i as usize + 1) * degree];
                row.iter().enumerate().all(|(k, &x)| k as u16 == x)
            }
            Store::Affine { keys, .. } => keys[i as usize] == 0,
        }
    }

    /// Product "first `a`, then `b`".
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.store {
            Store::Perm { degree, flat } => {
                let d = *degree;
                let ra = &flat[a as usize * d..(a as usize + 1) * d];
                let rb = &flat[b as usize * d..(b as usize + 1) * d];
                let mut buf = vec![0u16; d];
                for (o, &x) in buf.iter_mut().zip(ra.iter()) {
                    *o = rb[x as usize];
                }
                store_index(&self.store, &buf).expect("closure violated")
            }
            Store::Affine { p, keys } => {
                let x = AffineMap::unpack(keys[a as usize] as u64, *p);
                let y = AffineMap::unpack(keys[b as usize] as u64, *p);
                let z = x.compose(&y, *p);
                store_index_key(&self.store, z.pack(*p)).expect("closure violated")
            }
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse_of[a as usize]
    }

    /// Conjugate `x^g = g^{-1} x g`.
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn element_order(&self, i: u32) -> u32 {
        self.order_of[i as usize]
    }

    pub fn n_classes(&self) -> usize {
        self.class_reps.len()
    }

    pub fn class_of(&self, i: u32) -> u32 {
        self.class_of[i as usize]
    }

    pub fn class_rep(&self, c: u32) -> u32 {
        self.class_reps[c as usize]
    }

    pub fn class_size(&self, c: u32) -> u64 {
        self.class_sizes[c as usize]
    }

    /// The class of the inverses of class `c`.
    pub fn inverse_class_of(&self, c: u32) -> u32 {
        self.inverse_class[c as usize]
    }

    /// Members of class `c`, ascending.
    pub fn class_members(&self, c: u32) -> Vec<u32> {
        (0..self.order() as u32).filter(|&i| self.class_of(i) == c).collect()
    }

    /// Index of the permutation with the given image vector, if present.
    pub fn index_of_perm(&self, images: &[u16]) -> Option<u32> {
        store_index(&self.store, images)
    }

    pub fn index_of_affine(&self, map: &AffineMap) -> Option<u32> {
        match &self.store {
            Store::Affine { p, .. } => store_index_key(&self.store, map.pack(*p)),
            Store::Perm { .. } => None,
        }
    }

    fn compute_inverse(&self, i: u32) -> u32 {
        match &self.store {
            Store::Perm { degree, flat } => {
                let d = *degree;
                let row = &flat[i as usize * d..(i as usize + 1) * d];
                let mut inv = vec![0u16; d];
                for (k, &x) in row.iter().enumerate() {
                    inv[x as usize] = k as u16;
                }
                store_index(&self.store, &inv).expect("closure violated: inverse missing")
            }
            Store::Affine { p, keys } => {
                let x = AffineMap::unpack(keys[i as usize] as u64, *p);
                let y = x.inverse(*p).expect("group elements are invertible");
                store_index_key(&self.store, y.pack(*p)).expect("closure violated: inverse missing")
            }
        }
    }

    fn compute_orders(&self) -> Vec<u32> {
        match &self.store {
            Store::Perm { degree, flat } => {
                let d = *degree;
                (0..self.order())
                    .map(|i| {
                        let row = &flat[i * d..(i + 1) * d];
                        perm_order(row) as u32
                    })
                    .collect()
            }
            Store::Affine { p, keys } => {
                // Cache (order, sum of powers) per linear part: the order of
                // (v, M) is ord(M) if (sum_{i<ord} M^i) v = 0 and ord * p
                // otherwise.
                let p = *p;
                let mut cache: std::collections::HashMap<[u64; 4], (u32, [u64; 4])> =
                    std::collections::HashMap::new();
                keys.iter()
                    .map(|&key| {
                        let a = AffineMap::unpack(key as u64, p);
                        let (ord, s) = *cache.entry(a.m).or_insert_with(|| {
                            let mut pow = a.m;
                            let mut sum = [1u64, 0, 0, 1]; // I = M^0
                            let mut k = 1u32;
                            while pow != [1, 0, 0, 1] {
                                for (si, pi) in sum.iter_mut().zip(pow.iter()) {
                                    *si = (*si + *pi) % p;
                                }
                                pow = mat_mul(&pow, &a.m, p);
                                k += 1;
                            }
                            (k, sum)
                        });
                        let tv0 = (s[0] * a.v[0] + s[1] * a.v[1]) % p;
                        let tv1 = (s[2] * a.v[0] + s[3] * a.v[1]) % p;
                        if tv0 == 0 && tv1 == 0 {
                            ord
                        } else {
                            ord * p as u32
                        }
                    })
                    .collect()
            }
        }
    }

    /// Conjugacy classes as conjugation orbits under the generators, started
    /// from the smallest unassigned index. Class 0 is the identity class.
    fn compute_classes(&mut self) {
        let n = self.order();
        const UNSET: u32 = u32::MAX;
        let mut class_of = vec![UNSET; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for start in 0..n as u32 {
            if class_of[start as usize] != UNSET {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(start);
            let mut size = 0u64;
            let mut stack = vec![start];
            class_of[start as usize] = c;
            size += 1;
            while let Some(x) = stack.pop() {
                for &g in &self.generators {
                    let y = self.conj(x, g);
                    if class_of[y as usize] == UNSET {
                        class_of[y as usize] = c;
                        size += 1;
                        stack.push(y);
                    }
                }
            }
            sizes.push(size);
        }
        self.class_of = class_of;
        self.class_reps = reps;
        self.class_sizes = sizes;
        self.inverse_class = self
            .class_reps
            .iter()
            .map(|&r| self.class_of[self.inverse_of[r as usize] as usize])
            .collect();
        debug_assert_eq!(self.class_sizes.iter().sum::<u64>(), n as u64);
        debug_assert_eq!(self.class_sizes[0], 1);
    }

    /// Closure sanity: 10^4 random products must resolve to table indices
    /// (the `mul` lookups panic otherwise).
    fn spot_check_closure(&self) {
        let n = self.order() as u32;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let trials = 10_000.min(n as usize * 4);
        for _ in 0..trials {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            let _ = self.mul(a, b);
        }
    }

    /// Class-multiplication structure counts, computed once per table.
    /// `counts[c][j][i] = #{s in class c : class(s^{-1} z_j) = i}` with `z_j`
    /// the representative of class `j`.
    pub fn class_tensor(&self) -> Arc<ClassTensor> {
        self.tensor
            .get_or_init(|| {
                let k = self.n_classes();
                let n = self.order();
                let per_j: Vec<Vec<u32>> = (0..k as u32)
                    .into_par_iter()
                    .map(|j| {
                        let zj = self.class_rep(j);
                        let mut local = vec![0u32; k * k]; // [c][i]
                        for s in 0..n as u32 {
                            let c = self.class_of(s) as usize;
                            let t = self.mul(self.inv(s), zj);
                            let i = self.class_of(t) as usize;
                            local[c * k + i] += 1;
                        }
                        local
                    })
                    .collect();
                let mut counts = vec![0u32; k * k * k];
                for (j, local) in per_j.iter().enumerate() {
                    for c in 0..k {
                        for i in 0..k {
                            counts[(c * k + j) * k + i] = local[c * k + i];
                        }
                    }
                }
                Arc::new(ClassTensor { k, counts })
            })
            .clone()
    }
}

/// `counts[(c*k + j)*k + i]`: how many elements of class `c` carry the
/// representative of class `j` into class `i` by left division.
#[derive(Debug)]
pub struct ClassTensor {
    k: usize,
    counts: Vec<u32>,
}

impl ClassTensor {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn count(&self, c: usize, j: usize, i: usize) -> u32 {
        self.counts[(c * self.k + j) * self.k + i]
    }
}

fn mat_mul(a: &[u64; 4], b: &[u64; 4], p: u64) -> [u64; 4] {
    [
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    ]
}

fn perm_order(row: &[u16]) -> u64 {
    let n = row.len();
    let mut seen = vec![false; n];
    let mut ord: u64 = 1;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len: u64 = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = row[x] as usize;
            len += 1;
        }
        ord = num_integer::lcm(ord, len);
    }
    ord
}

fn encode_perm(p: &Permutation) -> Vec<u16> {
    p.images().to_vec()
}

fn store_len(store: &Store) -> usize {
    match store {
        Store::Perm { degree, flat } => flat.len() / degree,
        Store::Affine { keys, .. } => keys.len(),
    }
}

fn store_index(store: &Store, images: &[u16]) -> Option<u32> {
    match store {
        Store::Perm { degree, flat } => {
            let d = *degree;
            debug_assert_eq!(images.len(), d);
            let n = flat.len() / d;
            let mut lo = 0usize;
            let mut hi = n;
            while lo < hi {
                let mid = (lo + hi) / 2;
                let row = &flat[mid * d..(mid + 1) * d];
                match row.cmp(images) {
                    std::cmp::Ordering::Less => lo = mid + 1,
                    std::cmp::Ordering::Greater => hi = mid,
                    std::cmp::Ordering::Equal => return Some(mid as u32),
                }
            }
            None
        }
        Store::Affine { .. } => panic!("image lookup on affine store"),
    }
}

fn store_index_key(store: &Store, key: u32) -> Option<u32> {
    match store {
        Store::Affine { keys, .. } => keys.binary_search(&key).ok().map(|i| i as u32),
        Store::Perm { .. } => panic!("key lookup on perm store"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_3() {
        let g = Permutation::from_images(vec![1, 2, 0]).unwrap();
        let t = GroupTable::close_group(3, &[g]).unwrap();
        assert_eq!(t.order(), 3);
        assert_eq!(t.n_classes(), 3);
        assert!(t.is_identity(0));
    }

    #[test]
    fn a5_from_two_generators() {
        let a = Permutation::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3]]).unwrap();
        let t = GroupTable::close_group(5, &[a, b]).unwrap();
        assert_eq!(t.order(), 60);
        assert_eq!(t.n_classes(), 5);
        let mut sizes: Vec<u64> = (0..5).map(|c| t.class_size(c)).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
    }

    #[test]
    fn rebuild_with_permuted_generators_is_identical() {
        let a = Permutation::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3]]).unwrap();
        let t1 = GroupTable::close_group(5, &[a.clone(), b.clone()]).unwrap();
        let t2 = GroupTable::close_group(5, &[b, a]).unwrap();
        assert_eq!(t1.order(), t2.order());
        for i in 0..t1.order() as u32 {
            assert_eq!(t1.perm_images(i), t2.perm_images(i));
            assert_eq!(t1.class_of(i), t2.class_of(i));
        }
    }

    #[test]
    fn class_conjugation_closure_and_centralizer_orders() {
        let a = Permutation::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(5, &[vec![0, 1], vec![2, 3]]).unwrap();
        let t = GroupTable::close_group(5, &[a, b]).unwrap();
        let n = t.order() as u64;
        for c in 0..t.n_classes() as u32 {
            let rep = t.class_rep(c);
            // |x^G| * |C_G(x)| = |G| by direct centralizer scan
            let cent = (0..t.order() as u32)
                .filter(|&g| t.mul(rep, g) == t.mul(g, rep))
                .count() as u64;
            assert_eq!(t.class_size(c) * cent, n);
            // conjugating members by generators stays in the class
            for m in t.class_members(c) {
                for &g in t.generators() {
                    assert_eq!(t.class_of(t.conj(m, g)), c);
                }
            }
        }
    }

    #[test]
    fn affine_store_agl_2_3() {
        // AGL(2,3) = 3^2 : GL(2,3), order 9 * 48 = 432
        let gens = [
            AffineMap { m: [1, 0, 0, 1], v: [1, 0] },
            AffineMap { m: [1, 0, 0, 1], v: [0, 1] },
            AffineMap { m: [0, 2, 1, 0], v: [0, 0] },
            AffineMap { m: [2, 1, 2, 0], v: [0, 0] },
        ];
        let t = GroupTable::close_affine(3, &gens).unwrap();
        assert_eq!(t.order(), 432);
        assert!(t.is_identity(0));
        for i in 0..t.order() as u32 {
            assert!(t.is_identity(t.mul(i, t.inv(i))));
        }
    }

    #[test]
    fn cap_enforced() {
        // Sym(9) has order 362880 < cap, Sym(10) overflows the perm cap
        let a = Permutation::from_cycles(10, &[(0..10).collect::<Vec<u16>>()]).unwrap();
        let b = Permutation::from_cycles(10, &[vec![0, 1]]).unwrap();
        assert!(matches!(
            GroupTable::close_group(10, &[a, b]),
            Err(PermError::GroupTooLarge(_))
        ));
    }
}
