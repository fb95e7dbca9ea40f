//! Deterministic builders for the worked example families: each returns the
//! action, the distinguished subsets, and the expected quantities, and every
//! distinguished subset is re-verified by the derangement-module predicates
//! before the output is handed over.

mod agl;
mod product;
mod psl;
mod psu;
mod szborel;
mod table2;

pub use agl::{build_affine_tower, build_agl1_sharply_transitive};
pub use product::build_product_action;
pub use psl::{build_psl2_even, build_psl2_odd_semiregular, psl2_even_group, Psl2OddCase};
pub use psu::build_psu3_example;
pub use szborel::build_suzuki_borel_example;
pub use table2::{build_table2, table2_row_spec, Table2Row};

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::Ratio;
use thiserror::Error;

use crate::derangement::Radical;
use crate::perm::TransitiveAction;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error(transparent)]
    Perm(#[from] crate::perm::PermError),
    #[error(transparent)]
    Derangement(#[from] crate::derangement::DerangementError),
    #[error(transparent)]
    Suzuki(#[from] crate::suzuki::SuzukiError),
}

/// A value the construction promises, checked by tests and the acceptance
/// suite.
#[derive(Debug, Clone, PartialEq)]
pub enum Expected {
    Count(u64),
    /// An exact `sqrt(num/den)`.
    Rho(Radical),
    Ratio(Ratio<u64>),
    Float(f64),
}

impl Expected {
    pub fn rho(num: u64, den: u64) -> Expected {
        Expected::Rho(Radical::from_square(num, den))
    }
}

/// A built example: the transitive action, named element-index subsets, and
/// the expected quantities keyed by name.
pub struct ConstructionOutput {
    pub name: String,
    pub action: Arc<TransitiveAction>,
    pub named_subsets: BTreeMap<String, Vec<u32>>,
    pub expected: BTreeMap<String, Expected>,
}

impl ConstructionOutput {
    pub fn subset(&self, name: &str) -> &[u32] {
        self.named_subsets
            .get(name)
            .unwrap_or_else(|| panic!("construction has no subset named '{}'", name))
    }

    pub fn expect_count(&self, key: &str) -> u64 {
        match self.expected.get(key) {
            Some(Expected::Count(n)) => *n,
            other => panic!("expected count at '{}', found {:?}", key, other),
        }
    }

    pub fn expect_rho(&self, key: &str) -> Radical {
        match self.expected.get(key) {
            Some(Expected::Rho(r)) => *r,
            other => panic!("expected radical at '{}', found {:?}", key, other),
        }
    }
}
