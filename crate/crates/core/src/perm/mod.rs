//! Permutations, fully enumerated finite groups, conjugacy classes, coset
//! actions, and deterministic subgroup search.
//!
//! Everything downstream (derangement profiles, spectra, solvers,
//! constructions) runs over a [`GroupTable`]: a deduplicated, canonically
//! ordered element list with conjugacy-class data. Element indices are the
//! universal currency; index 0 is always the identity.

mod action;
mod io;
mod search;
mod table;

pub use action::{coset_action, natural_action, ActionKind, TransitiveAction};
pub use io::{parse_group_file, write_group_file};
pub use search::{close_indices, find_subgroup, subgroup_conjugacy_classes, SubgroupShape};
pub use table::{AffineMap, ClassTensor, GroupTable, StoreKind, AFFINE_ELEMENT_CAP, PERM_ELEMENT_CAP};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PermError {
    #[error("generator is not a bijection on {0} points")]
    InvalidGenerator(usize),
    #[error("group closure exceeded the cap of {0} elements")]
    GroupTooLarge(usize),
    #[error("the given element set is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("no subgroup of order {order} matches the requested shape")]
    NoSuchSubgroup { order: u64 },
    #[error("target order {order} does not divide the group order {group}")]
    OrderDoesNotDivide { order: u64, group: u64 },
    #[error("action is not transitive")]
    NotTransitive,
    #[error("operation requires a permutation-store group")]
    NotAPermStore,
    #[error("group too large for this operation: |G| = {0}")]
    TooLargeForOperation(usize),
    #[error("group file: {0}")]
    Parse(String),
}

/// A permutation of `{0, .., n-1}` as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u16).collect() }
    }

    /// Validates that `images` is a bijection.
    pub fn from_images(images: Vec<u16>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if (i as usize) >= n || seen[i as usize] {
                return Err(PermError::InvalidGenerator(n));
            }
            seen[i as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn from_cycles(n: usize, cycles: &[Vec<u16>]) -> Result<Self, PermError> {
        let mut images: Vec<u16> = (0..n as u16).collect();
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                let y = c[(k + 1) % c.len()];
                if x as usize >= n {
                    return Err(PermError::InvalidGenerator(n));
                }
                images[x as usize] = y;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u16 == x)
    }

    /// `self` then `rhs`: `(self * rhs)(x) = rhs(self(x))`.
    pub fn compose(&self, rhs: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), rhs.degree());
        Permutation {
            images: self.images.iter().map(|&x| rhs.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u16;
        }
        Permutation { images }
    }

    /// Order as lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.images.len();
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
                x = self.images[x] as usize;
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }
}
