//! Exhaustive enumeration in small symmetric groups.

use num_integer::Integer;

use super::{CycleType, Permutation};

/// Partitions of n as non-increasing part lists.
pub fn partitions(n: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn lcm_u64(parts: &[u64]) -> u64 {
    parts.iter().fold(1, |a, &b| a.lcm(&b))
}

/// Cycle types in S_n whose order is exactly d.
pub fn cycle_types_of_order(n: u64, d: u64) -> Vec<CycleType> {
    partitions(n)
        .into_iter()
        .filter(|p| lcm_u64(p) == d)
        .map(CycleType::new)
        .collect()
}

/// All of S_n in lexicographic order of image lists.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![Permutation {
        images: cur.clone(),
    }];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Permutation {
            images: cur.clone(),
        });
    }
}

fn small_order(p: &Permutation) -> u64 {
    lcm_u64(p.cycle_type().parts())
}

/// Commuting pairs are conjugation invariant, so x ranges over one
/// representative per cycle type of order d1 and y over all of S_n.
pub(super) fn commuting_pair_exists(n: usize, d1: u64, d2: u64) -> bool {
    let reps: Vec<Permutation> = cycle_types_of_order(n as u64, d1)
        .iter()
        .map(|t| {
            let lengths: Vec<usize> = t.parts().iter().map(|&p| p as usize).collect();
            Permutation::from_cycle_lengths(n, &lengths).expect("partition of n")
        })
        .collect();
    if reps.is_empty() {
        return false;
    }
    all_permutations(n)
        .iter()
        .filter(|y| small_order(y) == d2)
        .any(|y| reps.iter().any(|x| x.commutes_with(y)))
}
