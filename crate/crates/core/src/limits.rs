//! Capacity caps shared by every finite computation.
//!
//! `TILEKIT_CAP` may lower the fundamental-domain cap; values above the
//! built-in default are ignored.

use std::sync::OnceLock;

use crate::error::{Result, TileError};

/// Default cap on the number of points of any finite domain (2^24).
pub const DEFAULT_DOMAIN_CAP: u64 = 1 << 24;

static DOMAIN_CAP: OnceLock<u64> = OnceLock::new();

pub fn domain_cap() -> u64 {
    *DOMAIN_CAP.get_or_init(|| {
        std::env::var("TILEKIT_CAP")
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .map_or(DEFAULT_DOMAIN_CAP, |v| v.clamp(1, DEFAULT_DOMAIN_CAP))
    })
}

pub(crate) fn check_domain(what: &'static str, needed: u128) -> Result<usize> {
    let cap = domain_cap();
    if needed > u128::from(cap) {
        return Err(TileError::CapacityExceeded { what, needed, cap });
    }
    Ok(needed as usize)
}
