//! Seeded random oracle machines and symmetric lemma instances.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::IteratorRandom;
use rand::Rng;

use crate::natpoly::NatPoly;
use crate::polyenc::machine::{OracleMachine, OracleTree};
use crate::polyenc::poly::MultilinearPoly;
use crate::word::{Domain, Word};

/// The first `m` nonempty binary strings in shortlex order.
pub fn binary_universe(m: usize) -> Vec<Word> {
    let d = Domain::binary(0);
    (1..)
        .flat_map(|len| d.words_of_length(len))
        .take(m)
        .collect()
}

/// A tree of depth at most `depth` mixing choices and queries; no string is
/// queried twice on a path.
pub fn random_oracle_tree<R: Rng>(rng: &mut R, universe: &[Word], depth: usize) -> OracleTree {
    fn go<R: Rng>(rng: &mut R, universe: &[Word], depth: usize, asked: &mut BTreeSet<Word>) -> OracleTree {
        if depth == 0 || rng.gen_bool(0.2) {
            return if rng.gen_bool(0.5) {
                OracleTree::accept()
            } else {
                OracleTree::reject()
            };
        }
        let fresh = universe.iter().filter(|w| !asked.contains(*w)).choose(rng).cloned();
        match fresh {
            Some(w) if rng.gen_bool(0.6) => {
                asked.insert(w.clone());
                let yes = go(rng, universe, depth - 1, asked);
                let no = go(rng, universe, depth - 1, asked);
                asked.remove(&w);
                OracleTree::query(w, yes, no)
            }
            _ => OracleTree::choice(go(rng, universe, depth - 1, asked), go(rng, universe, depth - 1, asked)),
        }
    }
    go(rng, universe, depth, &mut BTreeSet::new())
}

/// A machine on the single input `0` with a universe of `m` strings and
/// time bound `depth`.
pub fn random_oracle_machine<R: Rng>(rng: &mut R, m: usize, depth: usize) -> OracleMachine {
    let universe = binary_universe(m);
    let tree = random_oracle_tree(rng, &universe, depth);
    OracleMachine::new(
        "random",
        NatPoly::constant(depth as u64),
        universe,
        BTreeMap::from([(Word::from("0"), tree)]),
    )
    .expect("depth within bound")
}

/// A symmetric instance for the prime-divisor lemma: `Σ_{1≤k<p} c_k e_k`
/// over `n` variables, which vanishes at the origin and is constant on
/// every weight-`p` slice.
pub fn symmetric_instance<R: Rng>(rng: &mut R, n: usize, p: usize) -> MultilinearPoly {
    let mut coeffs = vec![0i64; p];
    for c in coeffs.iter_mut().skip(1) {
        *c = rng.gen_range(-3..=3);
    }
    MultilinearPoly::symmetric(n, &coeffs).expect("valid symmetric polynomial")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn universe_order() {
        let u: Vec<String> = binary_universe(4).iter().map(|w| w.to_string()).collect();
        assert_eq!(u, ["0", "1", "00", "01"]);
    }

    #[test]
    fn random_machines_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let m = random_oracle_machine(&mut rng, 6, 6);
            assert!(m.valid_paths(&Word::from("0")).is_ok());
        }
    }
}
