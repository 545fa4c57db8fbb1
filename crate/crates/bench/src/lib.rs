//! Inputs shared by the benchmarks.

use horochow::catalog::Variety;
use horochow::{Partition, Poly};

/// All pairs of partitions of weight exactly `w` each.
pub fn partition_pairs(w: u32) -> Vec<(Partition, Partition)> {
    let ps = Partition::all_of_weight(w);
    ps.iter().flat_map(|a| ps.iter().map(move |b| (a.clone(), b.clone()))).collect()
}

pub fn variety(name: &str) -> Variety {
    Variety::builtin(name).expect("builtin variety")
}

/// `(h + s)^n` in the generators of a two-generator ring.
pub fn binomial_power(n: u32) -> Poly {
    let x = &Poly::var(2, 0) + &Poly::var(2, 1);
    x.pow(n)
}
