//! Shared fixtures for the criterion benches.

use std::sync::Arc;

use isoclinic_core::catalog;
use isoclinic_core::FiniteGroup;

pub fn fixture(name: &str) -> Arc<FiniteGroup> {
    Arc::clone(&catalog::find_entry(name).expect("fixture exists").group)
}
