//! Truncation bounds shared by every exhaustive checker.

use crate::labels::{atom_pool, FiniteSet, Label};

/// A label pool and a size bound. Checkers quantify over every subset of the
/// pool of size at most `max_size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub pool: Vec<Label>,
    pub max_size: usize,
}

impl Bounds {
    /// `pool_size` atoms `a, b, c, ...`.
    pub fn atoms(pool_size: usize, max_size: usize) -> Bounds {
        Bounds {
            pool: atom_pool(pool_size),
            max_size,
        }
    }

    pub fn with_pool(pool: Vec<Label>, max_size: usize) -> Bounds {
        let set = FiniteSet::new(pool);
        Bounds {
            pool: set.as_slice().to_vec(),
            max_size,
        }
    }

    pub fn pool_set(&self) -> FiniteSet {
        FiniteSet::new(self.pool.iter().cloned())
    }

    /// Subsets of the pool of size at most `max_size`, by size then lexicographically.
    pub fn sets(&self) -> Vec<FiniteSet> {
        self.pool_set().subsets_up_to(self.max_size)
    }

    pub fn sets_of_size(&self, k: usize) -> Vec<FiniteSet> {
        self.sets().into_iter().filter(|s| s.len() == k).collect()
    }

    pub fn with_max_size(&self, max_size: usize) -> Bounds {
        Bounds {
            pool: self.pool.clone(),
            max_size,
        }
    }
}
