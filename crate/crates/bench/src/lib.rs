//! Inputs shared by the benchmarks.

use cremona_core::corpus::lookup;
use cremona_core::rees::RationalMap;

pub fn corpus_map(name: &str) -> RationalMap {
    lookup(name).expect("corpus entry").rational_map().expect("corpus maps parse")
}
