//! Wild-case verification engine over mixed-characteristic local fields:
//! truncated p-adic arithmetic, Eisenstein enumeration of totally ramified
//! extensions, etale-algebra assembly, and the mass-formula checks.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use thiserror::Error;

pub mod cache;
pub mod enumerate;
pub mod etale;
pub mod ext;
pub mod wpoly;
pub mod zq;

pub use enumerate::{enumerate_extensions, serre_mass_check, Inventory, LocalFieldExt, SerreCheck};
pub use etale::{
    bhargava_check, enumerate_etale_algebras, per_partition_mass, wild_hilb_mass, EtaleAlgebra,
    MassCheck, PadicField,
};
pub use ext::{panayi_root_count, ExtCtx};
pub use wpoly::{poly_disc_valuation, trace_form_disc_valuation};
pub use zq::{build_unramified, ZqCtx};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PadicError {
    /// A computed residue is 0 mod `p^N`, so the requested valuation is not
    /// determined at the working precision; retry with larger `N`.
    #[error("result not determined at working precision; raise N and retry")]
    Indeterminate,
    /// The precision ladder ran out (or a computation consumed the digits).
    #[error("working precision exhausted")]
    PrecisionExhausted,
    #[error("enumeration budget exceeded: {needed} candidate tuples > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("corrupt cache file: {0}")]
    CorruptCache(String),
    #[error("cache I/O error: {0}")]
    Io(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Default cap on the number of Eisenstein coefficient tuples enumerated for
/// one `(base, e)`; large enough for every degree-3 target.
pub const DEFAULT_TUPLE_BUDGET: u128 = 1 << 24;

/// Budget enabled by the `--slow` flag; admits the degree-4 enumeration
/// over Q_2.
pub const SLOW_TUPLE_BUDGET: u128 = 1 << 31;

/// Shared access point for extension inventories: an in-memory memo over an
/// optional on-disk cache, in front of the enumerator.
pub struct Catalog {
    budget: u128,
    cache_dir: Option<PathBuf>,
    memo: Mutex<HashMap<(u64, u32, u32), Arc<Inventory>>>,
    pub(crate) fields_memo: Mutex<HashMap<(u64, u32), Arc<Vec<etale::PadicField>>>>,
    /// Enumerations and cache writes run one at a time; concurrent callers
    /// of the same key wait and then hit the memo.
    compute_lock: Mutex<()>,
}

impl Catalog {
    pub fn new(budget: u128, cache_dir: Option<PathBuf>) -> Catalog {
        Catalog {
            budget,
            cache_dir,
            memo: Mutex::new(HashMap::new()),
            fields_memo: Mutex::new(HashMap::new()),
            compute_lock: Mutex::new(()),
        }
    }

    /// Memo-only catalog with the default budget.
    pub fn in_memory() -> Catalog {
        Catalog::new(DEFAULT_TUPLE_BUDGET, None)
    }

    pub fn budget(&self) -> u128 {
        self.budget
    }

    /// The complete inventory of totally ramified degree-`e` extensions of
    /// the unramified degree-`f` base over `Q_p`. Cache hits skip the
    /// enumeration.
    pub fn extensions(&self, p: u64, f: u32, e: u32) -> Result<Arc<Inventory>, PadicError> {
        let key = (p, f, e);
        if let Some(inv) = self.memo.lock().unwrap().get(&key) {
            return Ok(inv.clone());
        }
        let _guard = self.compute_lock.lock().unwrap();
        if let Some(inv) = self.memo.lock().unwrap().get(&key) {
            return Ok(inv.clone());
        }
        if let Some(dir) = &self.cache_dir {
            if let Some(inv) = cache::cache_load(dir, p, f, e)? {
                let inv = Arc::new(inv);
                self.memo.lock().unwrap().insert(key, inv.clone());
                return Ok(inv);
            }
        }
        let inv = Arc::new(enumerate_extensions(p, f, e, self.budget)?);
        if let Some(dir) = &self.cache_dir {
            cache::cache_store(dir, &inv)?;
        }
        self.memo.lock().unwrap().insert(key, inv.clone());
        Ok(inv)
    }
}
