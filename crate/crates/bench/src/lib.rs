//! Fixed workloads shared by the benchmarks, so that every run measures the
//! same inputs.

use dgrams_core::diagram::random::random_cn_diagram;
use dgrams_core::diagram::{Diagram, Morphism};
use dgrams_core::exactfield::parse_scalar;
use dgrams_core::repgraph::Path;
use dgrams_core::Scalar;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Two dense elements of the 24th cyclotomic field.
pub fn dense_scalars() -> (Scalar, Scalar) {
    let a = parse_scalar("1/2 + 1/3 z - 2/5 z^2 + 7/3 z^3 + z^5 - 1/7 z^6 + 3 z^7", 24).unwrap();
    let b = parse_scalar("-1 + 2/3 z + 5/4 z^2 - z^4 + 1/9 z^6 + 2 z^7", 24).unwrap();
    (a, b)
}

/// A random `C_n^irr` diagram with `cells` merge and split cells.
pub fn cn_workload(n: u32, cells: usize, seed: u64) -> Morphism {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d: Diagram = random_cn_diagram(&mut rng, n, cells);
    Morphism::from_diagram(d, 4 * n)
}

/// The length-4 walk `1 -> 0 -> 1 -> 2 -> 3` on the binary tetrahedral graph.
pub fn long_path() -> Path {
    Path::new(&["1", "0", "1", "2", "3"])
}
