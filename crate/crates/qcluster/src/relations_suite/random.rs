use std::sync::Arc;

use rand::Rng;

use crate::error::Result;
use crate::lie_data::Rat;
use crate::mutation_engine::Direction;
use crate::qtorus::{LatticeVector, Torus};
use crate::seed_quiver::{ClusterSeed, Node};

/// A random seed with 2..=`max_nodes` nodes, multipliers in `{1, 1/2}`,
/// at least one unfrozen node, and skew form entries `c · max(d_i, d_j)`
/// with `|c| ≤ 2`.
pub fn random_seed(rng: &mut impl Rng, max_nodes: usize) -> Result<ClusterSeed> {
    let n = rng.gen_range(2..=max_nodes.max(2));
    let mixed = rng.gen_bool(0.5);
    let half = Rat::new(1, 2);
    let unfrozen = rng.gen_range(0..n);
    let nodes: Vec<Node> = (0..n)
        .map(|i| {
            let d = if mixed && rng.gen_bool(0.4) { half } else { Rat::from_integer(1) };
            let frozen = i != unfrozen && rng.gen_bool(0.25);
            Node::new(format!("v{}", i + 1), frozen, d)
        })
        .collect();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = rng.gen_range(-2i64..=2);
            if c != 0 {
                entries.push((i, j, Rat::from_integer(c) * nodes[i].d.max(nodes[j].d)));
            }
        }
    }
    ClusterSeed::from_skew_form(nodes, &entries)
}

/// A random torus on three generators with a monomial pair `(λ, η)` whose
/// commutation exponent `m = -(λ, η)/d` satisfies `|m| ≤ max_m`.
pub fn random_oracle_pair(
    rng: &mut impl Rng,
    max_m: i64,
) -> (Arc<Torus>, LatticeVector, LatticeVector, Rat, Direction) {
    let d = if rng.gen_bool(0.5) { Rat::from_integer(1) } else { Rat::new(1, 2) };
    let n = 3;
    let mut form = vec![vec![Rat::from_integer(0); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let c = Rat::from_integer(rng.gen_range(-2i64..=2)) * d;
            form[i][j] = c;
            form[j][i] = -c;
        }
    }
    let labels = (1..=n).map(|i| format!("x{i}")).collect();
    let torus = Torus::new(labels, form, vec![d; n]);
    let vec3 = |rng: &mut dyn rand::RngCore| LatticeVector::from_pairs((0..n).map(|i| (i, rng.gen_range(-2i64..=2))));
    loop {
        let lambda = vec3(rng);
        let eta = vec3(rng);
        if eta.is_zero() {
            continue;
        }
        let m = -torus.pairing(&lambda, &eta) / d;
        if m.is_integer() && m.to_integer().abs() <= max_m {
            let direction = if rng.gen_bool(0.5) { Direction::G } else { Direction::GStar };
            return (torus, lambda, eta, d, direction);
        }
    }
}
