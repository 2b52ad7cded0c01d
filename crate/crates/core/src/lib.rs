//! Exact classification of Klein four symmetric pairs of holomorphic type for
//! the Hermitian real form E7(-25).
//!
//! Two independent routes produce the final table: brute-force enumeration of
//! toral configurations up to the Weyl group ([`weylorbit`]), and a replay of
//! a case analysis over abstract labeled 2-groups ([`labeledgroups`]).
//! [`reconcile`] compares them.

// Matrix code indexes rows and columns together; iterator rewrites read worse.
#![allow(clippy::needless_range_loop)]

pub mod chevalley;
pub mod cli;
pub mod f2;
pub mod labeledgroups;
pub mod realform;
pub mod reconcile;
pub mod rootsys;
pub mod toral;
pub mod weylorbit;

/// Node numbering used in every emitted table.
pub const NUMBERING_NOTE: &str =
    "Bourbaki numbering: E7 chain 1-3-4-5-6-7 with node 2 attached to node 4; E6 is the same without node 7";

/// Any failure from the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    RootSystem(#[from] rootsys::RootSystemError),
    #[error(transparent)]
    Toral(#[from] toral::ToralError),
    #[error(transparent)]
    Orbit(#[from] weylorbit::OrbitError),
    #[error(transparent)]
    Chevalley(#[from] chevalley::ChevalleyError),
    #[error(transparent)]
    Labeled(#[from] labeledgroups::LabeledError),
    #[error(transparent)]
    RealForm(#[from] realform::RealFormError),
    #[error(transparent)]
    Reconcile(#[from] reconcile::ReconcileError),
}

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "K4HOL_THREADS";

/// Configure the global rayon pool from `K4HOL_THREADS` if set. Has no
/// effect once the pool exists; returns the thread count in use.
pub fn init_thread_pool() -> usize {
    let requested = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    if let Some(n) = requested {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    rayon::current_num_threads()
}
