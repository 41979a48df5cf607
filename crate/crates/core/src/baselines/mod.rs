//! Reference and comparison algorithms.

mod affinity;
mod bruteforce;
mod heap;
mod rac;

pub use affinity::{affinity, scc, RoundsResult, SccParams};
pub use bruteforce::{exact_bruteforce, exact_bruteforce_until, BruteForce, Candidate, Step};
pub use heap::{exact_heap, seqhac, seqhac_observed};
pub use rac::{rac, RacResult};
